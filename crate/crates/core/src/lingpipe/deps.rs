use serde::{Deserialize, Serialize};

use super::{Clause, DepLabel, PosTag, TaggedSentence, Token};

/// Options for [`dep_lite`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepOptions {
    /// Also attach direct objects to infinitives ("to make an appointment").
    /// Off by default: only finite verbs get clauses with objects.
    pub include_infinitives: bool,
}

const COORDINATORS: &[&str] = &["and", "or", "but", "then", "&"];

const BE_FORMS: &[&str] = &["be", "is", "are", "was", "were", "been", "being", "am"];

/// A maximal run of determiner / adjective / numeral / noun tokens
/// (possessive `'s` included). A determiner after a noun starts a new run.
#[derive(Debug, Clone, Copy)]
struct NounPhrase {
    start: usize,
    head: Option<usize>,
}

struct NounPhrases {
    member: Vec<Option<usize>>,
    phrases: Vec<NounPhrase>,
}

impl NounPhrases {
    fn build(tokens: &[Token]) -> Self {
        let mut member = vec![None; tokens.len()];
        let mut phrases: Vec<NounPhrase> = Vec::new();
        let mut open = false;
        for (i, t) in tokens.iter().enumerate() {
            if t.pos == PosTag::Pron {
                phrases.push(NounPhrase { start: i, head: Some(i) });
                member[i] = Some(phrases.len() - 1);
                open = false;
                continue;
            }
            let continues = open
                && match t.pos {
                    PosTag::Det => phrases.last().is_some_and(|p| p.head.is_none()),
                    PosTag::Adj | PosTag::Num | PosTag::Noun | PosTag::Propn => true,
                    PosTag::X => t.text.eq_ignore_ascii_case("'s"),
                    _ => false,
                };
            if !continues {
                open = matches!(
                    t.pos,
                    PosTag::Det | PosTag::Adj | PosTag::Num | PosTag::Noun | PosTag::Propn
                );
                if !open {
                    continue;
                }
                phrases.push(NounPhrase { start: i, head: None });
            }
            let p = phrases.len() - 1;
            member[i] = Some(p);
            if matches!(t.pos, PosTag::Noun | PosTag::Propn) {
                phrases[p].head = Some(i);
            }
        }
        NounPhrases { member, phrases }
    }

    fn phrase(&self, token: usize) -> Option<&NounPhrase> {
        self.member.get(token).copied().flatten().map(|p| &self.phrases[p])
    }

    /// Head of the phrase containing `token`.
    fn head(&self, token: usize) -> Option<usize> {
        self.phrase(token).and_then(|p| p.head)
    }

    fn is_head(&self, token: usize) -> bool {
        self.head(token) == Some(token)
    }

    fn start(&self, token: usize) -> Option<usize> {
        self.phrase(token).map(|p| p.start)
    }
}

fn is_finite(tokens: &[Token], i: usize) -> bool {
    if tokens[i].pos != PosTag::Verb {
        return false;
    }
    match i.checked_sub(1).map(|p| &tokens[p]) {
        Some(prev) if prev.pos == PosTag::Part => false,
        // gerund after a preposition ("by using")
        Some(prev) if prev.pos == PosTag::Adp => !tokens[i].text.to_lowercase().ends_with("ing"),
        _ => true,
    }
}

fn is_passive(tokens: &[Token], verb: usize) -> bool {
    let text = tokens[verb].text.to_lowercase();
    let participle = text.ends_with("ed") || (tokens[verb].lemma != text && !text.ends_with('s') && !text.ends_with("ing"));
    if !participle {
        return false;
    }
    tokens[..verb]
        .iter()
        .rev()
        .find(|t| t.pos != PosTag::Adv)
        .is_some_and(|t| t.pos == PosTag::Aux && BE_FORMS.contains(&t.text.to_lowercase().as_str()))
}

/// Object of the verb at `verb`: the head of a noun phrase that starts right
/// after it (adverbs may intervene). Prepositions, particles, conjunctions,
/// other verbs and punctuation end the search.
fn find_object(tokens: &[Token], nps: &NounPhrases, verb: usize, consumed: &[bool]) -> Option<usize> {
    let mut j = verb + 1;
    while j < tokens.len() && tokens[j].pos == PosTag::Adv {
        j += 1;
    }
    if nps.start(j) != Some(j) {
        return None;
    }
    let head = nps.head(j)?;
    (!consumed[head] && tokens[head].pos.is_nominal()).then_some(head)
}

/// Labels nominal subjects and direct objects.
///
/// The sentence is cut into clause segments at finite verbs (verbs not
/// introduced by infinitival "to"). A clause's subject is the nearest noun
/// phrase head to the left of its verb that no earlier clause consumed,
/// skipping phrases governed by a preposition; if a coordinating
/// conjunction comes first, the clause shares the previous clause's subject
/// and no new label is added. The object is the head of the noun phrase
/// directly following the verb.
pub fn dep_lite(mut sentence: TaggedSentence, options: DepOptions) -> TaggedSentence {
    let tokens = &mut sentence.tokens;
    for t in tokens.iter_mut() {
        t.dep = DepLabel::None;
    }
    let nps = NounPhrases::build(tokens);
    let finite: Vec<usize> = (0..tokens.len()).filter(|&i| is_finite(tokens, i)).collect();
    let mut consumed = vec![false; tokens.len()];
    let mut clauses = Vec::new();
    let mut prev_verb: Option<usize> = None;

    for &verb in &finite {
        let lower = prev_verb.map_or(0, |v| v + 1);
        let mut subject = None;
        let mut j = verb;
        while j > lower {
            j -= 1;
            let t = &tokens[j];
            if t.pos == PosTag::Conj && COORDINATORS.contains(&t.text.to_lowercase().as_str()) {
                break;
            }
            if !nps.is_head(j) || consumed[j] {
                continue;
            }
            let start = nps.start(j).unwrap_or(j);
            let governed = start > 0 && tokens[start - 1].pos == PosTag::Adp;
            if governed {
                continue;
            }
            subject = Some(j);
            break;
        }
        if let Some(s) = subject {
            consumed[s] = true;
        }
        let object = find_object(tokens, &nps, verb, &consumed);
        if let Some(o) = object {
            consumed[o] = true;
        }
        clauses.push(Clause {
            verb,
            finite: true,
            subject,
            object,
            passive: is_passive(tokens, verb),
        });
        prev_verb = Some(verb);
    }

    if options.include_infinitives {
        for i in 1..tokens.len() {
            if tokens[i].pos == PosTag::Verb && tokens[i - 1].pos == PosTag::Part {
                let object = find_object(tokens, &nps, i, &consumed);
                if let Some(o) = object {
                    consumed[o] = true;
                }
                clauses.push(Clause {
                    verb: i,
                    finite: false,
                    subject: None,
                    object,
                    passive: false,
                });
            }
        }
        clauses.sort_by_key(|c| c.verb);
    }

    for c in &clauses {
        if let Some(s) = c.subject {
            tokens[s].dep = DepLabel::Nsubj;
        }
        if let Some(o) = c.object {
            tokens[o].dep = DepLabel::Dobj;
        }
    }
    sentence.clauses = clauses;
    sentence
}
