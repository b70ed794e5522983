use std::collections::HashSet;
use std::ops::Range;

use crate::textnorm::TextError;

/// Lowercase abbreviations, each including its final period ("mr.", "e.g.").
#[derive(Debug, Clone, Default)]
pub struct Abbreviations {
    set: HashSet<String>,
}

impl Abbreviations {
    pub fn parse(text: &str) -> Self {
        let set = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_lowercase)
            .collect();
        Abbreviations { set }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.set.contains(&word.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }
}

fn is_terminal(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_closer(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']')
}

/// Byte ranges of the sentences in `text`, trimmed of surrounding
/// whitespace. Splits after `.`, `!` or `?` (plus any closing quotes or
/// brackets) when followed by whitespace and an uppercase letter, or by the
/// end of the text. A period ending a known abbreviation never splits.
pub fn segment_spans(text: &str, abbreviations: &Abbreviations) -> Vec<Range<usize>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut spans = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if !is_terminal(c) {
            i += 1;
            continue;
        }
        let mut j = i + 1;
        while j < chars.len() && (is_terminal(chars[j].1) || is_closer(chars[j].1)) {
            j += 1;
        }
        let end = chars.get(j).map_or(text.len(), |x| x.0);
        let boundary = if j == chars.len() {
            true
        } else if chars[j].1.is_whitespace() {
            let next = chars[j..].iter().find(|(_, c)| !c.is_whitespace());
            next.is_some_and(|(_, c)| c.is_uppercase() || matches!(c, '"' | '\'' | '('))
        } else {
            false
        };
        let abbreviation = c == '.' && j == i + 1 && {
            let word_start = text[..pos]
                .rfind(char::is_whitespace)
                .map_or(0, |p| p + 1);
            let word = text[word_start..=pos].trim_start_matches(['"', '\'', '(']);
            abbreviations.contains(word)
        };
        if boundary && !(abbreviation && j < chars.len()) {
            push_trimmed(text, start..end, &mut spans);
            start = end;
        }
        i = j;
    }
    push_trimmed(text, start..text.len(), &mut spans);
    spans
}

fn push_trimmed(text: &str, range: Range<usize>, out: &mut Vec<Range<usize>>) {
    let slice = &text[range.clone()];
    let lead = slice.len() - slice.trim_start().len();
    let trail = slice.len() - slice.trim_end().len();
    if lead + trail < slice.len() {
        out.push(range.start + lead..range.end - trail);
    }
}

/// Splits normalized text into sentences.
pub fn segment_sentences(
    text: &str,
    abbreviations: &Abbreviations,
) -> Result<Vec<String>, TextError> {
    let spans = segment_spans(text, abbreviations);
    if spans.is_empty() {
        return Err(TextError::EmptyInput);
    }
    Ok(spans.into_iter().map(|r| text[r].to_string()).collect())
}
