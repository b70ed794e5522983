use super::lemma::lemmatize;
use super::PosTag;
use crate::Resources;

const SUFFIX_RULES: &[(&str, PosTag)] = &[
    ("ly", PosTag::Adv),
    ("tion", PosTag::Noun),
    ("ment", PosTag::Noun),
    ("ness", PosTag::Noun),
    ("ity", PosTag::Noun),
    ("ize", PosTag::Verb),
    ("ise", PosTag::Verb),
    ("ous", PosTag::Adj),
    ("ful", PosTag::Adj),
    ("able", PosTag::Adj),
    ("ive", PosTag::Adj),
];

/// Subject pronouns; a following noun/verb-ambiguous word reads as a verb.
const SUBJECT_PRONOUNS: &[&str] = &["i", "you", "we", "they", "he", "she", "it", "who"];

fn is_number(word: &str) -> bool {
    word.chars().any(|c| c.is_ascii_digit())
        && word
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | ',' | '%' | '$'))
}

fn initial_tag(word: &str, sentence_initial: bool, resources: &Resources) -> PosTag {
    if !word.chars().any(char::is_alphanumeric) {
        return PosTag::Punct;
    }
    if is_number(word) {
        return PosTag::Num;
    }
    if word == "'s" || word == "'S" {
        return PosTag::X;
    }
    let lower = word.to_lowercase();
    let lexicon = &resources.lexicon;
    if let Some(tag) = lexicon.closed_class(&lower) {
        return tag;
    }
    if let Some(tag) = lexicon.primary_tag(&lower) {
        return tag;
    }
    if let Some((_, tag)) = SUFFIX_RULES
        .iter()
        .find(|(suffix, _)| lower.len() > suffix.len() + 1 && lower.ends_with(suffix))
    {
        return *tag;
    }
    if !sentence_initial && word.chars().next().is_some_and(char::is_uppercase) {
        return PosTag::Propn;
    }
    PosTag::Noun
}

struct Ctx<'a> {
    words: &'a [String],
    lower: Vec<String>,
    resources: &'a Resources,
}

impl Ctx<'_> {
    fn base_form_verb(&self, i: usize) -> bool {
        let r = self.resources;
        lemmatize(&self.lower[i], PosTag::Verb, &r.lexicon, &r.exceptions) == self.lower[i]
    }

    fn singular_noun(&self, i: usize) -> bool {
        let r = self.resources;
        lemmatize(&self.lower[i], PosTag::Noun, &r.lexicon, &r.exceptions) == self.lower[i]
    }

    fn can_be(&self, i: usize, tag: PosTag) -> bool {
        self.resources.lexicon.has_tag(&self.lower[i], tag)
    }
}

/// Tags tokens by precedence: closed-class table, the lexicon's most
/// frequent tag, suffix heuristics, capitalization (PROPN), then NOUN.
/// Context repairs follow:
///
/// 1. a VERB inside a determiner-headed noun phrase becomes NOUN: directly
///    after the determiner or an adjective/numeral, or a base-form verb
///    directly after a singular noun, or after any noun when the phrase
///    follows a verb ("an oil change", "a car repair shop", "reviews the
///    sales report");
/// 2. "to" directly before a base-form VERB becomes PART;
/// 3. a noun/verb-ambiguous NOUN after an auxiliary or a subject pronoun
///    becomes VERB ("can order", "they book");
/// 4. a noun/verb-ambiguous VERB directly after a verb, preposition,
///    adjective or numeral becomes NOUN ("read books", "for orders",
///    "new books").
pub fn pos_tag(tokens: &[String], resources: &Resources) -> Vec<PosTag> {
    let first_word = tokens
        .iter()
        .position(|t| t.chars().any(char::is_alphanumeric));
    let mut tags: Vec<PosTag> = tokens
        .iter()
        .enumerate()
        .map(|(i, t)| initial_tag(t, Some(i) == first_word, resources))
        .collect();
    let ctx = Ctx {
        words: tokens,
        lower: tokens.iter().map(|t| t.to_lowercase()).collect(),
        resources,
    };

    // 1. determiner-headed noun phrases
    let mut in_np = false;
    let mut np_is_object = false;
    for i in 0..tags.len() {
        match tags[i] {
            PosTag::Det => {
                in_np = true;
                np_is_object = i > 0 && tags[i - 1] == PosTag::Verb;
            }
            PosTag::Adj | PosTag::Num | PosTag::Noun | PosTag::Propn if in_np => {}
            PosTag::Verb if in_np => {
                let prev = tags[i - 1];
                let after_modifier = matches!(prev, PosTag::Det | PosTag::Adj | PosTag::Num);
                // "customers buy" agrees as subject and verb; after a verb
                // the phrase is an object, so "sales report" is a compound
                let compound = prev == PosTag::Noun
                    && (np_is_object || ctx.singular_noun(i - 1))
                    && ctx.base_form_verb(i)
                    && ctx.can_be(i, PosTag::Noun);
                if after_modifier || compound {
                    tags[i] = PosTag::Noun;
                } else {
                    in_np = false;
                }
            }
            _ => in_np = false,
        }
    }

    // 2. infinitival "to"
    for i in 0..tags.len().saturating_sub(1) {
        if ctx.lower[i] == "to" && tags[i + 1] == PosTag::Verb && ctx.base_form_verb(i + 1) {
            tags[i] = PosTag::Part;
        }
    }

    // 3. verbs after auxiliaries and subject pronouns
    for i in 1..tags.len() {
        let after_aux = tags[i - 1] == PosTag::Aux;
        let after_subject =
            tags[i - 1] == PosTag::Pron && SUBJECT_PRONOUNS.contains(&ctx.lower[i - 1].as_str());
        if (after_aux || after_subject) && tags[i] == PosTag::Noun && ctx.can_be(i, PosTag::Verb) {
            tags[i] = PosTag::Verb;
        }
    }

    // 4. nouns after verbs, prepositions and modifiers
    for i in 1..tags.len() {
        if tags[i] == PosTag::Verb
            && matches!(tags[i - 1], PosTag::Verb | PosTag::Adp | PosTag::Adj | PosTag::Num)
            && ctx.can_be(i, PosTag::Noun)
        {
            tags[i] = PosTag::Noun;
        }
    }

    debug_assert_eq!(tags.len(), ctx.words.len());
    tags
}
