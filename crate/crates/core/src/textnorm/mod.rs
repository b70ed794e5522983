//! Text normalization and dictionary-based spelling correction.

mod distance;
mod lexicon;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lingpipe::{segment_spans, Abbreviations, PosTag};

pub use distance::{bounded_distance, damerau_levenshtein};
pub use lexicon::{Lexicon, LexiconError};

/// Largest edit distance at which a lexicon word is offered as a correction.
pub const MAX_CORRECTION_DISTANCE: usize = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TextError {
    #[error("input is empty after normalization")]
    EmptyInput,
}

/// One spelling fix. `offset` counts characters from the start of the text
/// that was corrected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Replacement {
    pub original: String,
    pub corrected: String,
    pub offset: usize,
}

/// Audit trail of a [`correct_spelling`] run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrectionReport {
    pub replacements: Vec<Replacement>,
    /// Unknown words left alone: presumed proper nouns, acronyms, or words
    /// with no lexicon entry close enough.
    pub untouched_unknown: Vec<String>,
}

fn map_char(c: char) -> Option<&'static str> {
    Some(match c {
        '\u{2018}' | '\u{2019}' | '\u{201A}' | '\u{201B}' | '\u{2032}' => "'",
        '\u{201C}' | '\u{201D}' | '\u{201E}' | '\u{201F}' | '\u{2033}' | '\u{00AB}' | '\u{00BB}' => "\"",
        '\u{2010}' | '\u{2011}' | '\u{2012}' | '\u{2013}' | '\u{2014}' | '\u{2015}' | '\u{2212}' => "-",
        '\u{2026}' => "...",
        _ => return None,
    })
}

/// Maps typographic quotes and dashes to ASCII, collapses whitespace and
/// makes sure the text ends with sentence-final punctuation.
pub fn normalize_text(raw: &str) -> Result<String, TextError> {
    let mut out = String::with_capacity(raw.len() + 1);
    let mut pending_space = false;
    for c in raw.chars() {
        if c.is_whitespace() {
            pending_space = !out.is_empty();
            continue;
        }
        if pending_space {
            out.push(' ');
            pending_space = false;
        }
        match map_char(c) {
            Some(s) => out.push_str(s),
            None => out.push(c),
        }
    }
    if out.is_empty() {
        return Err(TextError::EmptyInput);
    }
    let last = out
        .chars()
        .rev()
        .find(|c| !matches!(c, '"' | '\'' | ')' | ']'))
        .unwrap_or(' ');
    if !matches!(last, '.' | '!' | '?') {
        out.push('.');
    }
    Ok(out)
}

struct WordSpan {
    start: usize,
    end: usize,
    sentence_initial: bool,
}

/// Alphabetic runs, allowing a single apostrophe between letters
/// ("customer's", "don't").
fn word_spans(sentence: &str, base: usize, out: &mut Vec<WordSpan>) {
    let bytes: Vec<(usize, char)> = sentence.char_indices().collect();
    let mut i = 0;
    let mut first = true;
    while i < bytes.len() {
        if !bytes[i].1.is_alphabetic() {
            i += 1;
            continue;
        }
        let start = bytes[i].0;
        let mut j = i;
        while j < bytes.len() {
            let c = bytes[j].1;
            let inner_apostrophe = c == '\'' && j > i && j + 1 < bytes.len() && bytes[j + 1].1.is_alphabetic();
            if c.is_alphabetic() || inner_apostrophe {
                j += 1;
            } else {
                break;
            }
        }
        // digits glued to letters ("3rd", "mp3") are not words
        let glued = (i > 0 && bytes[i - 1].1.is_ascii_digit())
            || (j < bytes.len() && bytes[j].1.is_ascii_digit());
        let end = bytes.get(j).map_or(sentence.len(), |b| b.0);
        if !glued {
            out.push(WordSpan {
                start: base + start,
                end: base + end,
                sentence_initial: first,
            });
        }
        first = false;
        i = j;
    }
}

fn best_candidate<'a>(word: &str, lexicon: &'a Lexicon) -> Option<&'a str> {
    let mut best: Option<(usize, u64, &str)> = None;
    for cand in lexicon.words() {
        let Some(d) = bounded_distance(word, cand, MAX_CORRECTION_DISTANCE) else {
            continue;
        };
        let key = (d, lexicon.frequency(cand), cand);
        best = match best {
            None => Some(key),
            Some(b) => {
                // distance ascending, frequency descending, lexicographic ascending
                let better = key.0 < b.0
                    || (key.0 == b.0 && (key.1 > b.1 || (key.1 == b.1 && key.2 < b.2)));
                Some(if better { key } else { b })
            }
        };
    }
    best.map(|b| b.2)
}

fn match_case(original: &str, corrected: &str) -> String {
    let upper_first = original.chars().next().is_some_and(char::is_uppercase);
    if !upper_first {
        return corrected.to_string();
    }
    let mut chars = corrected.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

enum Decision {
    Known,
    Replace(String),
    Untouched,
}

/// Part before an apostrophe suffix, which is what gets corrected
/// ("custmer's" corrects as "custmer").
fn core_of(word: &str) -> &str {
    word.split('\'').next().unwrap_or(word)
}

fn decide(word: &str, sentence_initial: bool, lexicon: &Lexicon) -> Decision {
    if lexicon.contains(word) {
        return Decision::Known;
    }
    let core = core_of(word);
    if core.len() != word.len() && lexicon.contains(core) {
        return Decision::Known;
    }
    let mut chars = core.chars();
    let first_upper = chars.next().is_some_and(char::is_uppercase);
    let acronym = core.chars().count() > 1 && core.chars().all(char::is_uppercase);
    if acronym || (first_upper && !sentence_initial) {
        return Decision::Untouched;
    }
    match best_candidate(&core.to_lowercase(), lexicon) {
        Some(c) => {
            let fixed = match_case(core, c);
            Decision::Replace(format!("{fixed}{}", &word[core.len()..]))
        }
        None => Decision::Untouched,
    }
}

fn is_finite_verb_like(word: &str, lexicon: &Lexicon) -> bool {
    let lower = word.to_lowercase();
    matches!(lexicon.closed_class(&lower), Some(PosTag::Aux))
        || lexicon.primary_tag(&lower) == Some(PosTag::Verb)
}

/// Replaces misspelled words with their closest lexicon entry.
///
/// Words are left alone when they are in the lexicon, when they are
/// capitalized anywhere but the start of a sentence (presumed proper nouns),
/// when they are all-caps acronyms, or when no entry lies within
/// [`MAX_CORRECTION_DISTANCE`]. A capitalized unknown word that opens a
/// sentence and is directly followed by a verb or auxiliary is also kept:
/// a bare singular subject is characteristic of a name ("Alice schedules
/// the appointment").
pub fn correct_spelling(
    text: &str,
    lexicon: &Lexicon,
    abbreviations: &Abbreviations,
) -> (String, CorrectionReport) {
    let mut spans = Vec::new();
    for range in segment_spans(text, abbreviations) {
        word_spans(&text[range.clone()], range.start, &mut spans);
    }

    let mut decisions: Vec<Decision> = spans
        .iter()
        .map(|s| decide(&text[s.start..s.end], s.sentence_initial, lexicon))
        .collect();

    // Sentence-initial capitalized words whose successor (after correction)
    // is a verb are treated as names.
    for i in 0..spans.len() {
        let word = &text[spans[i].start..spans[i].end];
        let initial_upper = spans[i].sentence_initial
            && word.chars().next().is_some_and(char::is_uppercase);
        // a possessive is a modifier, not a subject
        if word.contains('\'') || !initial_upper || !matches!(decisions[i], Decision::Replace(_)) {
            continue;
        }
        let Some(next) = spans.get(i + 1).filter(|n| !n.sentence_initial) else {
            continue;
        };
        let next_word = match &decisions[i + 1] {
            Decision::Replace(w) => w.as_str(),
            _ => &text[next.start..next.end],
        };
        if is_finite_verb_like(next_word, lexicon) {
            decisions[i] = Decision::Untouched;
        }
    }

    let mut out = String::with_capacity(text.len());
    let mut report = CorrectionReport::default();
    let mut last = 0;
    for (span, decision) in spans.iter().zip(decisions) {
        let word = &text[span.start..span.end];
        match decision {
            Decision::Known => {}
            Decision::Untouched => report.untouched_unknown.push(word.to_string()),
            Decision::Replace(fixed) => {
                out.push_str(&text[last..span.start]);
                out.push_str(&fixed);
                last = span.end;
                report.replacements.push(Replacement {
                    original: word.to_string(),
                    corrected: fixed,
                    offset: text[..span.start].chars().count(),
                });
            }
        }
    }
    out.push_str(&text[last..]);
    (out, report)
}
