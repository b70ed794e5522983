//! Actor and use case extraction from annotated sentences.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lingpipe::{PosTag, TaggedSentence};

pub const DEFAULT_SYSTEM_NAME: &str = "System";

/// Position of a token in the document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Location {
    pub sentence: usize,
    pub token: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UseCase {
    pub verb_lemma: String,
    pub object_lemma: String,
    /// `"<verb_lemma> <object_lemma>"`.
    pub phrase: String,
    /// Verb position for extracted use cases; `None` when added by hand.
    pub source: Option<Location>,
}

impl UseCase {
    pub fn new(verb_lemma: &str, object_lemma: &str, source: Option<Location>) -> Self {
        let verb_lemma = verb_lemma.to_lowercase();
        let object_lemma = object_lemma.to_lowercase();
        UseCase {
            phrase: format!("{verb_lemma} {object_lemma}"),
            verb_lemma,
            object_lemma,
            source,
        }
    }

    /// Builds a use case from free text: the first word is the verb, the
    /// rest the object. Needs at least two words.
    pub fn from_phrase(phrase: &str) -> Option<Self> {
        let words: Vec<&str> = phrase.split_whitespace().collect();
        let (verb, object) = words.split_first()?;
        if object.is_empty() {
            return None;
        }
        Some(UseCase::new(verb, &object.join(" "), None))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Actor {
    pub name: String,
    pub key: String,
    pub first_seen: Option<Location>,
}

impl Actor {
    pub fn new(name: &str, first_seen: Option<Location>) -> Self {
        Actor {
            name: name.to_string(),
            key: actor_key(name),
            first_seen,
        }
    }

    /// Actor named after a lemma, title-cased for display.
    pub fn from_lemma(lemma: &str, first_seen: Option<Location>) -> Self {
        let mut chars = lemma.chars();
        let name: String = match chars.next() {
            Some(c) => c.to_uppercase().chain(chars).collect(),
            None => String::new(),
        };
        Actor::new(&name, first_seen)
    }
}

pub fn actor_key(name: &str) -> String {
    name.trim().to_lowercase()
}

/// Actors in first-seen order, each owning an ordered list of use cases.
/// `associations` keeps the same key order as `actors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UseCaseModel {
    pub system_name: String,
    pub actors: Vec<Actor>,
    pub associations: IndexMap<String, Vec<UseCase>>,
}

impl Default for UseCaseModel {
    fn default() -> Self {
        UseCaseModel::new(DEFAULT_SYSTEM_NAME)
    }
}

impl UseCaseModel {
    pub fn new(system_name: &str) -> Self {
        UseCaseModel {
            system_name: system_name.to_string(),
            actors: Vec::new(),
            associations: IndexMap::new(),
        }
    }

    pub fn actor(&self, key: &str) -> Option<&Actor> {
        self.actors.iter().find(|a| a.key == key)
    }

    pub fn actor_index(&self, key: &str) -> Option<usize> {
        self.actors.iter().position(|a| a.key == key)
    }

    pub fn use_cases(&self, key: &str) -> &[UseCase] {
        self.associations.get(key).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Appends an actor unless its key exists. Returns whether it was added.
    pub fn add_actor(&mut self, actor: Actor) -> bool {
        if self.actor(&actor.key).is_some() {
            return false;
        }
        self.associations.insert(actor.key.clone(), Vec::new());
        self.actors.push(actor);
        true
    }

    /// Appends a use case to an actor's list unless the phrase is already
    /// there. Returns whether it was added.
    pub fn add_use_case(&mut self, key: &str, use_case: UseCase) -> bool {
        match self.associations.get_mut(key) {
            Some(list) if !list.iter().any(|u| u.phrase == use_case.phrase) => {
                list.push(use_case);
                true
            }
            _ => false,
        }
    }

    /// Every (actor key, use case) pair in model order.
    pub fn iter_associations(&self) -> impl Iterator<Item = (&str, &UseCase)> {
        self.associations
            .iter()
            .flat_map(|(k, list)| list.iter().map(move |u| (k.as_str(), u)))
    }

    /// Checks key uniqueness, key/name agreement, association totality and
    /// per-actor phrase uniqueness.
    pub fn validate(&self) -> Result<(), String> {
        if self.actors.len() != self.associations.len() {
            return Err("actor list and association map differ in size".into());
        }
        for (actor, (key, list)) in self.actors.iter().zip(&self.associations) {
            if actor.key != *key {
                return Err(format!("association key {key:?} out of order"));
            }
            if actor.key != actor_key(&actor.name) {
                return Err(format!("actor key {:?} does not match name", actor.key));
            }
            for (i, u) in list.iter().enumerate() {
                if list[..i].iter().any(|o| o.phrase == u.phrase) {
                    return Err(format!("duplicate phrase {:?} under {key:?}", u.phrase));
                }
            }
        }
        Ok(())
    }
}

/// `(actor_count, use_case_count)`.
pub fn model_stats(model: &UseCaseModel) -> (usize, usize) {
    (
        model.actors.len(),
        model.associations.values().map(Vec::len).sum(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum ExtractError {
    #[error("use case {phrase:?} at sentence {}, token {} appears before any actor", location.sentence, location.token)]
    UnassignedUseCase { phrase: String, location: Location },
    #[error("no actors found")]
    NoActorsFound,
}

impl ExtractError {
    pub fn code(&self) -> &'static str {
        match self {
            ExtractError::UnassignedUseCase { .. } => "unassigned_use_case",
            ExtractError::NoActorsFound => "no_actors_found",
        }
    }

    pub fn location(&self) -> Option<Location> {
        match self {
            ExtractError::UnassignedUseCase { location, .. } => Some(*location),
            ExtractError::NoActorsFound => None,
        }
    }
}

/// Non-fatal findings about the extraction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractNote {
    pub message: String,
    pub location: Location,
}

/// Builds the model: non-pronoun subjects become (or re-activate) actors and
/// every clause with a verb and an object adds a use case to the active
/// actor. Pronoun subjects leave the active actor unchanged.
pub fn extract_model(sentences: &[TaggedSentence]) -> Result<UseCaseModel, ExtractError> {
    extract_model_with_notes(sentences, DEFAULT_SYSTEM_NAME).map(|(m, _)| m)
}

/// [`extract_model`] plus notes about passive clauses, whose grammatical
/// subject is usually not the acting party.
pub fn extract_model_with_notes(
    sentences: &[TaggedSentence],
    system_name: &str,
) -> Result<(UseCaseModel, Vec<ExtractNote>), ExtractError> {
    let mut model = UseCaseModel::new(system_name);
    let mut notes = Vec::new();
    let mut active: Option<String> = None;
    let mut unassigned: Option<ExtractError> = None;

    for (si, sentence) in sentences.iter().enumerate() {
        let tokens = &sentence.tokens;
        for clause in &sentence.clauses {
            let verb_loc = Location {
                sentence: si,
                token: clause.verb,
            };
            if let Some(s) = clause.subject {
                let subject = &tokens[s];
                if matches!(subject.pos, PosTag::Noun | PosTag::Propn) {
                    let actor = Actor::from_lemma(
                        &subject.lemma,
                        Some(Location {
                            sentence: si,
                            token: s,
                        }),
                    );
                    active = Some(actor.key.clone());
                    model.add_actor(actor);
                    if clause.passive {
                        notes.push(ExtractNote {
                            message: format!(
                                "passive clause: {:?} may not be the acting party of {:?}",
                                subject.text, tokens[clause.verb].text
                            ),
                            location: verb_loc,
                        });
                    }
                }
            }
            let Some(o) = clause.object else { continue };
            let use_case = UseCase::new(&tokens[clause.verb].lemma, &tokens[o].lemma, Some(verb_loc));
            match &active {
                Some(key) => {
                    model.add_use_case(key, use_case);
                }
                None => {
                    unassigned.get_or_insert(ExtractError::UnassignedUseCase {
                        phrase: use_case.phrase,
                        location: verb_loc,
                    });
                }
            }
        }
    }

    if model.actors.is_empty() {
        return Err(ExtractError::NoActorsFound);
    }
    if let Some(err) = unassigned {
        return Err(err);
    }
    Ok((model, notes))
}
