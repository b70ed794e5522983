use super::segment::Abbreviations;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenSpan {
    pub text: String,
    /// Byte offset in the sentence.
    pub start: usize,
    pub space_after: bool,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric()
}

/// Splits a chunk (no whitespace) into leading punctuation, the core word,
/// a possessive `'s`, and trailing punctuation.
fn split_chunk<'a>(chunk: &'a str, abbreviations: &Abbreviations, out: &mut Vec<(usize, &'a str)>) {
    if abbreviations.contains(chunk) {
        out.push((0, chunk));
        return;
    }
    let mut lead = Vec::new();
    let mut rest = chunk;
    let mut offset = 0;
    // leading punctuation, runs of the same character kept together
    while let Some(c) = rest.chars().next().filter(|c| !is_word_char(*c)) {
        let run = rest.len() - rest.trim_start_matches(c).len();
        lead.push((offset, &rest[..run]));
        offset += run;
        rest = &rest[run..];
    }
    let mut trail = Vec::new();
    while let Some(c) = rest.chars().next_back().filter(|c| !is_word_char(*c)) {
        if abbreviations.contains(rest) {
            break;
        }
        let keep = rest.trim_end_matches(c).len();
        trail.push((offset + keep, &rest[keep..]));
        rest = &rest[..keep];
    }
    out.extend(lead);
    if !rest.is_empty() {
        let possessive = ["'s", "'S"]
            .iter()
            .find(|p| rest.len() > p.len() && rest.ends_with(*p));
        match possessive {
            Some(p) => {
                let cut = rest.len() - p.len();
                out.push((offset, &rest[..cut]));
                out.push((offset + cut, &rest[cut..]));
            }
            None => out.push((offset, rest)),
        }
    }
    out.extend(trail.into_iter().rev());
}

/// Tokens with their offsets and trailing-space flags.
pub fn tokenize_spans(sentence: &str, abbreviations: &Abbreviations) -> Vec<TokenSpan> {
    let mut spans: Vec<TokenSpan> = Vec::new();
    let mut pieces = Vec::new();
    let mut idx = 0;
    for chunk in sentence.split(char::is_whitespace) {
        let start = idx;
        idx += chunk.len() + 1;
        if chunk.is_empty() {
            continue;
        }
        pieces.clear();
        split_chunk(chunk, abbreviations, &mut pieces);
        let n = pieces.len();
        for (k, (off, text)) in pieces.iter().enumerate() {
            let abs = start + off;
            let end = abs + text.len();
            let space_after = k + 1 == n && sentence[end..].starts_with(char::is_whitespace);
            spans.push(TokenSpan {
                text: text.to_string(),
                start: abs,
                space_after,
            });
        }
    }
    spans
}

/// Splits a sentence on whitespace, separating leading/trailing punctuation
/// and possessive `'s`. Hyphenated words and known abbreviations stay whole.
pub fn tokenize(sentence: &str, abbreviations: &Abbreviations) -> Vec<String> {
    tokenize_spans(sentence, abbreviations)
        .into_iter()
        .map(|s| s.text)
        .collect()
}
