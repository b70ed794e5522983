//! Undoable manual edits of a use case model.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extract::{actor_key, Actor, UseCase, UseCaseModel};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum EditCommand {
    AddActor { name: String },
    RemoveActor { key: String },
    RenameActor { key: String, new_name: String },
    AddUseCase { actor: String, phrase: String },
    RemoveUseCase { actor: String, phrase: String },
    RenameUseCase { actor: String, old_phrase: String, new_phrase: String },
    ReassignUseCase { phrase: String, from: String, to: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum EditError {
    #[error("unknown actor {key:?}")]
    UnknownActor { key: String },
    #[error("actor {actor:?} has no use case {phrase:?}")]
    UnknownUseCase { actor: String, phrase: String },
    #[error("actor {key:?} already exists")]
    DuplicateActor { key: String },
    #[error("actor {actor:?} already has use case {phrase:?}")]
    DuplicateUseCase { actor: String, phrase: String },
    #[error("{field} must not be empty")]
    EmptyField { field: String },
    #[error("use case {phrase:?} needs a verb and an object")]
    InvalidPhrase { phrase: String },
    #[error("nothing to undo")]
    NothingToUndo,
}

impl EditError {
    pub fn code(&self) -> &'static str {
        match self {
            EditError::UnknownActor { .. } => "unknown_actor",
            EditError::UnknownUseCase { .. } => "unknown_use_case",
            EditError::DuplicateActor { .. } => "duplicate_actor",
            EditError::DuplicateUseCase { .. } => "duplicate_use_case",
            EditError::EmptyField { .. } => "empty_field",
            EditError::InvalidPhrase { .. } => "invalid_phrase",
            EditError::NothingToUndo => "nothing_to_undo",
        }
    }
}

/// How to revert one applied edit. Entries record positions, so undoing
/// restores the exact previous order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum UndoEntry {
    RemoveLastActor,
    RestoreActor { index: usize, actor: Actor, use_cases: Vec<UseCase> },
    RestoreActorName { index: usize, actor: Actor },
    RemoveLastUseCase { actor: String },
    InsertUseCase { actor: String, index: usize, use_case: UseCase },
    ReplaceUseCase { actor: String, index: usize, use_case: UseCase },
    MoveBack { from: String, index: usize, to: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Session {
    pub model: UseCaseModel,
    pub revision: u64,
    pub undo_stack: Vec<UndoEntry>,
}

fn nonempty(value: &str, field: &str) -> Result<(), EditError> {
    if value.trim().is_empty() {
        return Err(EditError::EmptyField {
            field: field.to_string(),
        });
    }
    Ok(())
}

fn normalize_phrase(phrase: &str) -> String {
    phrase
        .split_whitespace()
        .map(str::to_lowercase)
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_phrase(phrase: &str) -> Result<UseCase, EditError> {
    nonempty(phrase, "phrase")?;
    UseCase::from_phrase(phrase).ok_or_else(|| EditError::InvalidPhrase {
        phrase: phrase.trim().to_string(),
    })
}

/// Replaces the association key at `index`, keeping its position.
fn rekey(model: &mut UseCaseModel, index: usize, new_key: &str) {
    let entries: Vec<(String, Vec<UseCase>)> = model.associations.drain(..).collect();
    model.associations = entries
        .into_iter()
        .enumerate()
        .map(|(i, (k, v))| if i == index { (new_key.to_string(), v) } else { (k, v) })
        .collect();
}

impl Session {
    pub fn new(model: UseCaseModel) -> Self {
        Session {
            model,
            revision: 0,
            undo_stack: Vec::new(),
        }
    }

    fn actor_index(&self, key: &str) -> Result<usize, EditError> {
        let key = actor_key(key);
        self.model
            .actor_index(&key)
            .ok_or(EditError::UnknownActor { key })
    }

    fn use_case_index(&self, actor: &str, phrase: &str) -> Result<usize, EditError> {
        let phrase = normalize_phrase(phrase);
        self.model
            .use_cases(actor)
            .iter()
            .position(|u| u.phrase == phrase)
            .ok_or(EditError::UnknownUseCase {
                actor: actor.to_string(),
                phrase,
            })
    }

    fn list(&mut self, key: &str) -> &mut Vec<UseCase> {
        self.model.associations.get_mut(key).expect("validated actor key")
    }

    /// Applies `cmd`, increments the revision and records how to undo it.
    /// On error the session is unchanged.
    pub fn apply_edit(&mut self, cmd: &EditCommand) -> Result<(), EditError> {
        let entry = match cmd {
            EditCommand::AddActor { name } => {
                nonempty(name, "name")?;
                let actor = Actor::new(name.trim(), None);
                if self.model.actor(&actor.key).is_some() {
                    return Err(EditError::DuplicateActor { key: actor.key });
                }
                self.model.add_actor(actor);
                UndoEntry::RemoveLastActor
            }
            EditCommand::RemoveActor { key } => {
                nonempty(key, "key")?;
                let index = self.actor_index(key)?;
                let actor = self.model.actors.remove(index);
                let (_, use_cases) = self
                    .model
                    .associations
                    .shift_remove_index(index)
                    .expect("associations mirror actors");
                UndoEntry::RestoreActor {
                    index,
                    actor,
                    use_cases,
                }
            }
            EditCommand::RenameActor { key, new_name } => {
                nonempty(key, "key")?;
                nonempty(new_name, "new_name")?;
                let index = self.actor_index(key)?;
                let renamed = Actor {
                    first_seen: self.model.actors[index].first_seen,
                    ..Actor::new(new_name.trim(), None)
                };
                if renamed.key != self.model.actors[index].key && self.model.actor(&renamed.key).is_some() {
                    return Err(EditError::DuplicateActor { key: renamed.key });
                }
                rekey(&mut self.model, index, &renamed.key);
                let old = std::mem::replace(&mut self.model.actors[index], renamed);
                UndoEntry::RestoreActorName { index, actor: old }
            }
            EditCommand::AddUseCase { actor, phrase } => {
                nonempty(actor, "actor")?;
                let use_case = parse_phrase(phrase)?;
                let key = self.model.actors[self.actor_index(actor)?].key.clone();
                if self.model.use_cases(&key).iter().any(|u| u.phrase == use_case.phrase) {
                    return Err(EditError::DuplicateUseCase {
                        actor: key,
                        phrase: use_case.phrase,
                    });
                }
                self.list(&key).push(use_case);
                UndoEntry::RemoveLastUseCase { actor: key }
            }
            EditCommand::RemoveUseCase { actor, phrase } => {
                nonempty(actor, "actor")?;
                nonempty(phrase, "phrase")?;
                let key = self.model.actors[self.actor_index(actor)?].key.clone();
                let index = self.use_case_index(&key, phrase)?;
                let use_case = self.list(&key).remove(index);
                UndoEntry::InsertUseCase {
                    actor: key,
                    index,
                    use_case,
                }
            }
            EditCommand::RenameUseCase {
                actor,
                old_phrase,
                new_phrase,
            } => {
                nonempty(actor, "actor")?;
                nonempty(old_phrase, "old_phrase")?;
                let renamed = parse_phrase(new_phrase)?;
                let key = self.model.actors[self.actor_index(actor)?].key.clone();
                let index = self.use_case_index(&key, old_phrase)?;
                let clash = self
                    .model
                    .use_cases(&key)
                    .iter()
                    .enumerate()
                    .any(|(i, u)| i != index && u.phrase == renamed.phrase);
                if clash {
                    return Err(EditError::DuplicateUseCase {
                        actor: key,
                        phrase: renamed.phrase,
                    });
                }
                let old = std::mem::replace(&mut self.list(&key)[index], renamed);
                UndoEntry::ReplaceUseCase {
                    actor: key,
                    index,
                    use_case: old,
                }
            }
            EditCommand::ReassignUseCase { phrase, from, to } => {
                nonempty(phrase, "phrase")?;
                nonempty(from, "from")?;
                nonempty(to, "to")?;
                let from_key = self.model.actors[self.actor_index(from)?].key.clone();
                let to_key = self.model.actors[self.actor_index(to)?].key.clone();
                let index = self.use_case_index(&from_key, phrase)?;
                let moving = self.model.use_cases(&from_key)[index].phrase.clone();
                if self.model.use_cases(&to_key).iter().any(|u| u.phrase == moving) {
                    return Err(EditError::DuplicateUseCase {
                        actor: to_key,
                        phrase: moving,
                    });
                }
                let use_case = self.list(&from_key).remove(index);
                self.list(&to_key).push(use_case);
                UndoEntry::MoveBack {
                    from: to_key,
                    index,
                    to: from_key,
                }
            }
        };
        self.undo_stack.push(entry);
        self.revision += 1;
        Ok(())
    }

    /// Reverts the most recent edit.
    pub fn undo(&mut self) -> Result<(), EditError> {
        let entry = self.undo_stack.pop().ok_or(EditError::NothingToUndo)?;
        match entry {
            UndoEntry::RemoveLastActor => {
                self.model.actors.pop();
                self.model.associations.pop();
            }
            UndoEntry::RestoreActor {
                index,
                actor,
                use_cases,
            } => {
                self.model
                    .associations
                    .shift_insert(index, actor.key.clone(), use_cases);
                self.model.actors.insert(index, actor);
            }
            UndoEntry::RestoreActorName { index, actor } => {
                rekey(&mut self.model, index, &actor.key);
                self.model.actors[index] = actor;
            }
            UndoEntry::RemoveLastUseCase { actor } => {
                self.list(&actor).pop();
            }
            UndoEntry::InsertUseCase {
                actor,
                index,
                use_case,
            } => self.list(&actor).insert(index, use_case),
            UndoEntry::ReplaceUseCase {
                actor,
                index,
                use_case,
            } => self.list(&actor)[index] = use_case,
            UndoEntry::MoveBack { from, index, to } => {
                let use_case = self.list(&from).pop().expect("moved use case is last");
                self.list(&to).insert(index, use_case);
            }
        }
        self.revision -= 1;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::render;
    use proptest::prelude::*;

    fn car_repair() -> UseCaseModel {
        let mut m = UseCaseModel::default();
        m.add_actor(Actor::new("Customer", None));
        m.add_actor(Actor::new("Receptionist", None));
        m.add_use_case("customer", UseCase::new("call", "shop", None));
        m.add_use_case("receptionist", UseCase::new("check", "availability", None));
        m.add_use_case("receptionist", UseCase::new("schedule", "appointment", None));
        m
    }

    fn json(m: &UseCaseModel) -> String {
        serde_json::to_string(m).unwrap()
    }

    fn phrases(m: &UseCaseModel, key: &str) -> Vec<String> {
        m.use_cases(key).iter().map(|u| u.phrase.clone()).collect()
    }

    #[test]
    fn reassign_moves_use_case() {
        let mut s = Session::new(car_repair());
        s.apply_edit(&EditCommand::ReassignUseCase {
            phrase: "schedule appointment".into(),
            from: "receptionist".into(),
            to: "customer".into(),
        })
        .unwrap();
        assert_eq!(phrases(&s.model, "customer"), ["call shop", "schedule appointment"]);
        assert_eq!(phrases(&s.model, "receptionist"), ["check availability"]);
        assert_eq!(crate::extract::model_stats(&s.model), (2, 3));
        assert_eq!(s.revision, 1);
    }

    #[test]
    fn duplicate_actor_rejected() {
        let mut s = Session::new(car_repair());
        let err = s
            .apply_edit(&EditCommand::AddActor {
                name: "Customer".into(),
            })
            .unwrap_err();
        assert_eq!(err, EditError::DuplicateActor { key: "customer".into() });
        assert_eq!(err.code(), "duplicate_actor");
        assert_eq!(s.revision, 0);
    }

    #[test]
    fn rename_shows_in_diagram() {
        let mut s = Session::new(car_repair());
        s.apply_edit(&EditCommand::RenameActor {
            key: "customer".into(),
            new_name: "Client".into(),
        })
        .unwrap();
        let out = render(&s.model);
        assert!(out.contains("actor \"Client\""));
        assert!(!out.contains("Customer"));
        assert_eq!(s.model.actors[0].key, "client");
        assert_eq!(s.model.associations.get_index(0).unwrap().0, "client");
    }

    #[test]
    fn undo_fresh_session() {
        assert_eq!(Session::new(car_repair()).undo(), Err(EditError::NothingToUndo));
    }

    #[test]
    fn remove_actor_then_undo_restores_order() {
        let before = car_repair();
        let mut s = Session::new(before.clone());
        s.apply_edit(&EditCommand::RemoveActor {
            key: "receptionist".into(),
        })
        .unwrap();
        assert!(s.model.actor("receptionist").is_none());
        assert_eq!(s.model.associations.len(), 1);
        s.undo().unwrap();
        assert_eq!(phrases(&s.model, "receptionist"), ["check availability", "schedule appointment"]);
        assert_eq!(json(&s.model), json(&before));
        assert_eq!(s.revision, 0);
    }

    #[test]
    fn validation_errors() {
        let mut s = Session::new(car_repair());
        let cases = [
            (
                EditCommand::AddActor { name: "  ".into() },
                EditError::EmptyField { field: "name".into() },
            ),
            (
                EditCommand::AddUseCase {
                    actor: "customer".into(),
                    phrase: "login".into(),
                },
                EditError::InvalidPhrase { phrase: "login".into() },
            ),
            (
                EditCommand::RemoveUseCase {
                    actor: "customer".into(),
                    phrase: "buy product".into(),
                },
                EditError::UnknownUseCase {
                    actor: "customer".into(),
                    phrase: "buy product".into(),
                },
            ),
            (
                EditCommand::ReassignUseCase {
                    phrase: "call shop".into(),
                    from: "customer".into(),
                    to: "customer".into(),
                },
                EditError::DuplicateUseCase {
                    actor: "customer".into(),
                    phrase: "call shop".into(),
                },
            ),
            (
                EditCommand::RemoveActor { key: "mechanic".into() },
                EditError::UnknownActor { key: "mechanic".into() },
            ),
        ];
        for (cmd, err) in cases {
            assert_eq!(s.apply_edit(&cmd), Err(err));
        }
        assert_eq!(s.revision, 0);
        assert_eq!(s.model, car_repair());
    }

    #[test]
    fn command_json_shape() {
        let cmd: EditCommand =
            serde_json::from_str(r#"{"type":"RenameActor","key":"customer","new_name":"Client"}"#).unwrap();
        assert_eq!(
            cmd,
            EditCommand::RenameActor {
                key: "customer".into(),
                new_name: "Client".into()
            }
        );
    }

    pub(crate) fn arb_command() -> impl Strategy<Value = EditCommand> {
        let name = prop::sample::select(vec!["Customer", "Receptionist", "Mechanic", "client", " "]);
        let phrase = prop::sample::select(vec![
            "call shop", "check availability", "schedule appointment", "pay bill", "Pay  Bill", "x",
        ]);
        prop_oneof![
            name.clone().prop_map(|n| EditCommand::AddActor { name: n.into() }),
            name.clone().prop_map(|k| EditCommand::RemoveActor { key: k.into() }),
            (name.clone(), name.clone()).prop_map(|(k, n)| EditCommand::RenameActor {
                key: k.into(),
                new_name: n.into()
            }),
            (name.clone(), phrase.clone()).prop_map(|(a, p)| EditCommand::AddUseCase {
                actor: a.into(),
                phrase: p.into()
            }),
            (name.clone(), phrase.clone()).prop_map(|(a, p)| EditCommand::RemoveUseCase {
                actor: a.into(),
                phrase: p.into()
            }),
            (name.clone(), phrase.clone(), phrase.clone()).prop_map(|(a, o, n)| {
                EditCommand::RenameUseCase {
                    actor: a.into(),
                    old_phrase: o.into(),
                    new_phrase: n.into(),
                }
            }),
            (phrase, name.clone(), name).prop_map(|(p, f, t)| EditCommand::ReassignUseCase {
                phrase: p.into(),
                from: f.into(),
                to: t.into()
            }),
        ]
    }

    proptest! {
        #[test]
        fn apply_then_undo_is_identity(
            setup in prop::collection::vec(arb_command(), 0..8),
            cmd in arb_command(),
        ) {
            let mut s = Session::new(car_repair());
            for c in &setup {
                let _ = s.apply_edit(c);
            }
            let before = json(&s.model);
            let rev = s.revision;
            if s.apply_edit(&cmd).is_ok() {
                prop_assert_eq!(s.revision, rev + 1);
                s.model.validate().unwrap();
                s.undo().unwrap();
                prop_assert_eq!(s.revision, rev);
            } else {
                prop_assert_eq!(s.revision, rev);
            }
            prop_assert_eq!(json(&s.model), before);
            prop_assert!(s.undo_stack.len() as u64 <= s.revision);
        }
    }
}
