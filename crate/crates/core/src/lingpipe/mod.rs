//! Rule-based linguistic annotation: sentence segmentation, tokenization,
//! part-of-speech tagging, subject/object labeling and lemmatization.

mod deps;
mod lemma;
mod segment;
mod tagger;
mod tokenize;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::textnorm::TextError;
use crate::Resources;

pub use deps::{dep_lite, DepOptions};
pub use lemma::{lemmatize, ExceptionTable};
pub use segment::{segment_sentences, segment_spans, Abbreviations};
pub use tagger::pos_tag;
pub use tokenize::{tokenize, tokenize_spans, TokenSpan};

/// Word classes. `Part` is only used for infinitival "to".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PosTag {
    Noun,
    Propn,
    Verb,
    Aux,
    Adj,
    Adv,
    Pron,
    Det,
    Adp,
    Conj,
    Num,
    Part,
    Intj,
    Punct,
    X,
}

impl PosTag {
    pub const ALL: [PosTag; 15] = [
        PosTag::Noun,
        PosTag::Propn,
        PosTag::Verb,
        PosTag::Aux,
        PosTag::Adj,
        PosTag::Adv,
        PosTag::Pron,
        PosTag::Det,
        PosTag::Adp,
        PosTag::Conj,
        PosTag::Num,
        PosTag::Part,
        PosTag::Intj,
        PosTag::Punct,
        PosTag::X,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::Noun => "NOUN",
            PosTag::Propn => "PROPN",
            PosTag::Verb => "VERB",
            PosTag::Aux => "AUX",
            PosTag::Adj => "ADJ",
            PosTag::Adv => "ADV",
            PosTag::Pron => "PRON",
            PosTag::Det => "DET",
            PosTag::Adp => "ADP",
            PosTag::Conj => "CONJ",
            PosTag::Num => "NUM",
            PosTag::Part => "PART",
            PosTag::Intj => "INTJ",
            PosTag::Punct => "PUNCT",
            PosTag::X => "X",
        }
    }

    /// Tags that can head a noun phrase.
    pub fn is_nominal(self) -> bool {
        matches!(self, PosTag::Noun | PosTag::Propn | PosTag::Pron)
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownTag(pub String);

impl FromStr for PosTag {
    type Err = UnknownTag;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PosTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| UnknownTag(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum DepLabel {
    Nsubj,
    Dobj,
    #[default]
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub index: usize,
    pub text: String,
    pub lemma: String,
    pub pos: PosTag,
    pub dep: DepLabel,
    pub sentence_index: usize,
    /// Whether a space followed the token in the sentence text.
    #[serde(default)]
    pub space_after: bool,
}

/// A verb together with the subject and object `dep_lite` attached to it.
/// Indices point into the sentence's token list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub verb: usize,
    pub finite: bool,
    pub subject: Option<usize>,
    pub object: Option<usize>,
    /// The verb is a participle after a form of "be".
    #[serde(default)]
    pub passive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedSentence {
    pub text: String,
    pub tokens: Vec<Token>,
    #[serde(default)]
    pub clauses: Vec<Clause>,
}

impl TaggedSentence {
    /// Rebuilds the sentence text from tokens and their spacing.
    pub fn reconstruct(&self) -> String {
        let mut out = String::new();
        for t in &self.tokens {
            out.push_str(&t.text);
            if t.space_after {
                out.push(' ');
            }
        }
        out.truncate(out.trim_end().len());
        out
    }
}

/// Runs segmentation, tokenization, tagging, lemmatization and dependency
/// labeling over normalized text.
pub fn analyze(
    text: &str,
    resources: &Resources,
    options: DepOptions,
) -> Result<Vec<TaggedSentence>, TextError> {
    let sentences = segment_sentences(text, &resources.abbreviations)?;
    Ok(sentences
        .into_iter()
        .enumerate()
        .map(|(si, sentence)| annotate_sentence(&sentence, si, resources, options))
        .collect())
}

/// Annotates a single sentence.
pub fn annotate_sentence(
    sentence: &str,
    sentence_index: usize,
    resources: &Resources,
    options: DepOptions,
) -> TaggedSentence {
    let spans = tokenize_spans(sentence, &resources.abbreviations);
    let words: Vec<String> = spans.iter().map(|s| s.text.clone()).collect();
    let tags = pos_tag(&words, resources);
    let tokens = spans
        .into_iter()
        .zip(tags)
        .enumerate()
        .map(|(index, (span, pos))| {
            let lemma = lemmatize(&span.text, pos, &resources.lexicon, &resources.exceptions);
            Token {
                index,
                text: span.text,
                lemma,
                pos,
                dep: DepLabel::None,
                sentence_index,
                space_after: span.space_after,
            }
        })
        .collect();
    let tagged = TaggedSentence {
        text: sentence.to_string(),
        tokens,
        clauses: Vec::new(),
    };
    dep_lite(tagged, options)
}
