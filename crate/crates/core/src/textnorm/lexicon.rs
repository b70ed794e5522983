use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::lingpipe::PosTag;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LexiconError {
    #[error("lexicon line {line}: {reason}")]
    Malformed { line: usize, reason: String },
}

/// Word list used for spelling correction, tagging and lemma validation.
///
/// Open-class words carry their possible tags, most frequent first.
/// Closed-class words (determiners, pronouns, prepositions, conjunctions,
/// auxiliaries, ...) map to exactly one tag.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: BTreeSet<String>,
    frequencies: HashMap<String, u64>,
    closed_class: HashMap<String, PosTag>,
    tags: HashMap<String, Vec<PosTag>>,
}

fn check_word(word: &str, line: usize) -> Result<(), LexiconError> {
    let malformed = |reason: &str| LexiconError::Malformed {
        line,
        reason: format!("{reason}: {word:?}"),
    };
    if word.is_empty() {
        return Err(malformed("empty word"));
    }
    if word.chars().any(char::is_whitespace) {
        return Err(malformed("word contains whitespace"));
    }
    if word.chars().any(char::is_uppercase) {
        return Err(malformed("word is not lowercase"));
    }
    Ok(())
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
}

impl Lexicon {
    /// Parses `word<TAB>frequency[<TAB>TAG,TAG...]` lines and
    /// `word<TAB>TAG` closed-class lines. Lines starting with `#` are comments.
    pub fn parse(frequencies: &str, closed_class: &str) -> Result<Self, LexiconError> {
        let mut lexicon = Lexicon::default();
        for (line, text) in content_lines(frequencies) {
            let mut cols = text.split('\t');
            let word = cols.next().unwrap_or_default();
            check_word(word, line)?;
            let freq = cols
                .next()
                .ok_or_else(|| LexiconError::Malformed {
                    line,
                    reason: "missing frequency column".into(),
                })?
                .trim()
                .parse::<u64>()
                .map_err(|e| LexiconError::Malformed {
                    line,
                    reason: format!("bad frequency: {e}"),
                })?;
            let mut tags = Vec::new();
            if let Some(col) = cols.next() {
                for name in col.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    let tag = name.parse::<PosTag>().map_err(|_| LexiconError::Malformed {
                        line,
                        reason: format!("unknown tag {name:?}"),
                    })?;
                    if !tags.contains(&tag) {
                        tags.push(tag);
                    }
                }
            }
            lexicon.entries.insert(word.to_string());
            lexicon.frequencies.insert(word.to_string(), freq);
            if !tags.is_empty() {
                lexicon.tags.insert(word.to_string(), tags);
            }
        }
        for (line, text) in content_lines(closed_class) {
            let (word, tag) = text.split_once('\t').ok_or_else(|| LexiconError::Malformed {
                line,
                reason: "expected word<TAB>TAG".into(),
            })?;
            check_word(word, line)?;
            let tag = tag.trim().parse::<PosTag>().map_err(|_| LexiconError::Malformed {
                line,
                reason: format!("unknown tag {tag:?}"),
            })?;
            lexicon.entries.insert(word.to_string());
            lexicon.closed_class.insert(word.to_string(), tag);
        }
        Ok(lexicon)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Case-insensitive membership.
    pub fn contains(&self, word: &str) -> bool {
        if word.chars().any(char::is_uppercase) {
            self.entries.contains(&word.to_lowercase())
        } else {
            self.entries.contains(word)
        }
    }

    pub fn frequency(&self, word: &str) -> u64 {
        self.frequencies.get(word).copied().unwrap_or(0)
    }

    pub fn closed_class(&self, word: &str) -> Option<PosTag> {
        self.closed_class.get(word).copied()
    }

    /// Open-class tags for a lowercase word, most frequent first.
    pub fn tags(&self, word: &str) -> &[PosTag] {
        self.tags.get(word).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn primary_tag(&self, word: &str) -> Option<PosTag> {
        self.tags(word).first().copied()
    }

    pub fn has_tag(&self, word: &str, tag: PosTag) -> bool {
        self.tags(word).contains(&tag) || self.closed_class(word) == Some(tag)
    }

    /// All entries in lexicographic order.
    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(String::as_str)
    }

    pub fn closed_class_words(&self) -> impl Iterator<Item = (&str, PosTag)> {
        self.closed_class.iter().map(|(w, t)| (w.as_str(), *t))
    }

    pub fn frequency_keys(&self) -> impl Iterator<Item = &str> {
        self.frequencies.keys().map(String::as_str)
    }
}
