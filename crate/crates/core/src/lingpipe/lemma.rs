use std::collections::HashMap;

use super::PosTag;
use crate::textnorm::Lexicon;

/// Irregular forms keyed by (lowercase word, tag).
#[derive(Debug, Clone, Default)]
pub struct ExceptionTable {
    map: HashMap<(String, PosTag), String>,
}

impl ExceptionTable {
    /// Parses `word<TAB>pos<TAB>lemma` lines. Errors carry the line number.
    pub fn parse(text: &str) -> Result<Self, (usize, String)> {
        let mut map = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            let [word, pos, lemma] = cols[..] else {
                return Err((i + 1, "expected word<TAB>pos<TAB>lemma".into()));
            };
            let pos = pos
                .parse::<PosTag>()
                .map_err(|_| (i + 1, format!("unknown tag {pos:?}")))?;
            if word.is_empty() || lemma.is_empty() {
                return Err((i + 1, "empty field".into()));
            }
            map.insert((word.to_lowercase(), pos), lemma.to_lowercase());
        }
        Ok(ExceptionTable { map })
    }

    pub fn get(&self, word: &str, pos: PosTag) -> Option<&str> {
        self.map.get(&(word.to_string(), pos)).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Rule outputs must be lexicon words of the right class that are not
/// themselves irregular inflections ("hides" is not "hid" + "es").
#[derive(Clone, Copy)]
struct Check<'a> {
    lexicon: &'a Lexicon,
    exceptions: &'a ExceptionTable,
}

fn valid(candidate: &str, pos: PosTag, check: Check<'_>) -> bool {
    !candidate.is_empty()
        && check.lexicon.has_tag(candidate, pos)
        && check.exceptions.get(candidate, pos).is_none()
}

fn undouble(stem: &str) -> Option<&str> {
    let b = stem.as_bytes();
    (b.len() >= 2 && b[b.len() - 1] == b[b.len() - 2] && !b[b.len() - 1].is_ascii_digit())
        .then(|| &stem[..stem.len() - 1])
}

/// Validated stem for a stripped suffix: the plain stem, then the stem with a
/// doubled final consonant undone ("stopp" -> "stop"), then with a restored
/// final "e" ("chang" -> "change").
fn restore(stem: &str, pos: PosTag, check: Check<'_>) -> Option<String> {
    if valid(stem, pos, check) {
        return Some(stem.to_string());
    }
    if let Some(u) = undouble(stem) {
        if valid(u, pos, check) {
            return Some(u.to_string());
        }
    }
    let with_e = format!("{stem}e");
    valid(&with_e, pos, check).then_some(with_e)
}

fn strip<'a>(word: &'a str, suffix: &str) -> Option<&'a str> {
    word.strip_suffix(suffix).filter(|s| !s.is_empty())
}

fn noun_lemma(w: &str, check: Check<'_>) -> Option<String> {
    if let Some(stem) = strip(w, "ies") {
        let c = format!("{stem}y");
        if valid(&c, PosTag::Noun, check) {
            return Some(c);
        }
    }
    if let Some(stem) = strip(w, "es") {
        if ["s", "x", "z", "ch", "sh"].iter().any(|e| stem.ends_with(e))
            && valid(stem, PosTag::Noun, check)
        {
            return Some(stem.to_string());
        }
    }
    if let Some(stem) = strip(w, "s") {
        if !stem.ends_with('s') && valid(stem, PosTag::Noun, check) {
            return Some(stem.to_string());
        }
    }
    None
}

fn verb_lemma(w: &str, check: Check<'_>) -> Option<String> {
    if let Some(stem) = strip(w, "ies") {
        let c = format!("{stem}y");
        if valid(&c, PosTag::Verb, check) {
            return Some(c);
        }
    }
    if let Some(stem) = strip(w, "ing") {
        if let Some(l) = restore(stem, PosTag::Verb, check) {
            return Some(l);
        }
        if let Some(stem) = strip(w, "ying") {
            // "tying" -> "tie"
            let c = format!("{stem}ie");
            if valid(&c, PosTag::Verb, check) {
                return Some(c);
            }
        }
    }
    if let Some(stem) = strip(w, "ied") {
        let c = format!("{stem}y");
        if valid(&c, PosTag::Verb, check) {
            return Some(c);
        }
    }
    if let Some(stem) = strip(w, "ed") {
        if let Some(l) = restore(stem, PosTag::Verb, check) {
            return Some(l);
        }
    }
    if let Some(stem) = strip(w, "es") {
        if valid(stem, PosTag::Verb, check) {
            return Some(stem.to_string());
        }
    }
    if let Some(stem) = strip(w, "s") {
        if !stem.ends_with('s') && valid(stem, PosTag::Verb, check) {
            return Some(stem.to_string());
        }
    }
    None
}

fn adj_lemma(w: &str, check: Check<'_>) -> Option<String> {
    if let Some(stem) = strip(w, "iest").or_else(|| strip(w, "ier")) {
        let c = format!("{stem}y");
        if valid(&c, PosTag::Adj, check) {
            return Some(c);
        }
    }
    for suffix in ["est", "er"] {
        if let Some(stem) = strip(w, suffix) {
            if let Some(l) = restore(stem, PosTag::Adj, check) {
                return Some(l);
            }
        }
    }
    None
}

/// Root form of a word.
///
/// Irregular forms come from the exception table. Otherwise an ordered list
/// of suffix rules for the word's class is tried, and a rule only applies
/// when its output is a lexicon word carrying that class. Anything else is
/// returned lowercased.
pub fn lemmatize(token: &str, pos: PosTag, lexicon: &Lexicon, exceptions: &ExceptionTable) -> String {
    let w = token.to_lowercase();
    if let Some(l) = exceptions.get(&w, pos) {
        return l.to_string();
    }
    let check = Check { lexicon, exceptions };
    let ruled = match pos {
        PosTag::Noun => noun_lemma(&w, check),
        PosTag::Verb => verb_lemma(&w, check),
        PosTag::Adj => adj_lemma(&w, check),
        _ => None,
    };
    ruled.unwrap_or(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Resources;

    fn lem(w: &str, pos: PosTag) -> String {
        let r = Resources::bundled();
        lemmatize(w, pos, &r.lexicon, &r.exceptions)
    }

    #[test]
    fn word_and_lemma_rows() {
        assert_eq!(lem("Buys", PosTag::Verb), "buy");
        assert_eq!(lem("Better", PosTag::Adj), "good");
        assert_eq!(lem("changing", PosTag::Verb), "change");
    }

    #[test]
    fn regular_rules() {
        assert_eq!(lem("schedules", PosTag::Verb), "schedule");
        assert_eq!(lem("checks", PosTag::Verb), "check");
        assert_eq!(lem("scheduled", PosTag::Verb), "schedule");
        assert_eq!(lem("stopping", PosTag::Verb), "stop");
        assert_eq!(lem("submitted", PosTag::Verb), "submit");
        assert_eq!(lem("applies", PosTag::Verb), "apply");
        assert_eq!(lem("applied", PosTag::Verb), "apply");
        assert_eq!(lem("using", PosTag::Verb), "use");
        assert_eq!(lem("calling", PosTag::Verb), "call");
        assert_eq!(lem("boxes", PosTag::Noun), "box");
        assert_eq!(lem("categories", PosTag::Noun), "category");
        assert_eq!(lem("classes", PosTag::Noun), "class");
        assert_eq!(lem("notes", PosTag::Noun), "note");
        assert_eq!(lem("bigger", PosTag::Adj), "big");
        assert_eq!(lem("later", PosTag::Adj), "late");
        assert_eq!(lem("hides", PosTag::Verb), "hide");
    }

    #[test]
    fn irregular_forms() {
        assert_eq!(lem("went", PosTag::Verb), "go");
        assert_eq!(lem("bought", PosTag::Verb), "buy");
        assert_eq!(lem("made", PosTag::Verb), "make");
        assert_eq!(lem("children", PosTag::Noun), "child");
        assert_eq!(lem("is", PosTag::Aux), "be");
    }

    #[test]
    fn unvalidated_rule_output_falls_back() {
        assert_eq!(lem("status", PosTag::Noun), "status");
        assert_eq!(lem("Zorbing", PosTag::Verb), "zorbing");
        assert_eq!(lem("process", PosTag::Verb), "process");
    }

    #[test]
    fn idempotent_over_bundled_lexicon() {
        let r = Resources::bundled();
        for w in r.lexicon.words() {
            for &pos in r.lexicon.tags(w) {
                let once = lem(w, pos);
                assert_eq!(lem(&once, pos), once, "{w}/{pos}");
            }
        }
    }
}
