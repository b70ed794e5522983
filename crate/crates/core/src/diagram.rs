//! PlantUML emission for use case models.

use std::collections::HashSet;
use std::fmt::Write as _;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::extract::{actor_key, Actor, UseCase, UseCaseModel, DEFAULT_SYSTEM_NAME};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AliasMap {
    pub actor_aliases: IndexMap<String, String>,
    /// Keyed by (actor key, phrase), in model order.
    pub usecase_aliases: IndexMap<(String, String), String>,
}

impl AliasMap {
    pub fn actor(&self, key: &str) -> Option<&str> {
        self.actor_aliases.get(key).map(String::as_str)
    }

    pub fn use_case(&self, key: &str, phrase: &str) -> Option<&str> {
        self.usecase_aliases
            .get(&(key.to_string(), phrase.to_string()))
            .map(String::as_str)
    }
}

fn base_alias(name: &str) -> String {
    let mut chars = name.chars().filter(|c| c.is_alphanumeric());
    match (chars.next(), chars.next()) {
        (Some(a), Some(b)) => a.to_uppercase().chain(b.to_lowercase()).collect(),
        (Some(a), None) => a.to_uppercase().collect(),
        _ => "A".to_string(),
    }
}

/// Actor aliases are the first two letters of the display name ("Cu");
/// collisions get the smallest free integer suffix from 2. Use cases are
/// numbered UC1..UCn in model order.
pub fn make_aliases(model: &UseCaseModel) -> AliasMap {
    let mut map = AliasMap::default();
    let mut taken: HashSet<String> = HashSet::new();
    let mut k = 0;
    for (key, u) in model.iter_associations() {
        k += 1;
        let alias = format!("UC{k}");
        taken.insert(alias.clone());
        map.usecase_aliases
            .insert((key.to_string(), u.phrase.clone()), alias);
    }
    for actor in &model.actors {
        let base = base_alias(&actor.name);
        let mut alias = base.clone();
        let mut n = 2;
        while taken.contains(&alias) {
            alias = format!("{base}{n}");
            n += 1;
        }
        taken.insert(alias.clone());
        map.actor_aliases.insert(actor.key.clone(), alias);
    }
    map
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

/// PlantUML source for `model`. Body lines are indented four spaces and use
/// case lines six, newline-terminated.
///
/// Panics if `aliases` does not cover the model; use [`make_aliases`].
pub fn emit_plantuml(model: &UseCaseModel, aliases: &AliasMap) -> String {
    let mut out = String::from("@startuml\n    left to right direction\n");
    for actor in &model.actors {
        let alias = aliases.actor(&actor.key).expect("alias for every actor");
        writeln!(out, "    actor {} as {alias}", quote(&actor.name)).unwrap();
    }
    if model.system_name == DEFAULT_SYSTEM_NAME {
        out.push_str("    rectangle {\n");
    } else {
        writeln!(out, "    rectangle {} {{", quote(&model.system_name)).unwrap();
    }
    for (key, u) in model.iter_associations() {
        let alias = aliases.use_case(key, &u.phrase).expect("alias for every use case");
        writeln!(out, "      usecase {} as {alias}", quote(&u.phrase)).unwrap();
    }
    out.push_str("    }\n");
    for (key, u) in model.iter_associations() {
        let a = aliases.actor(key).expect("alias for every actor");
        let uc = aliases.use_case(key, &u.phrase).expect("alias for every use case");
        writeln!(out, "    {a} --> {uc}").unwrap();
    }
    out.push_str("@enduml\n");
    out
}

/// [`make_aliases`] followed by [`emit_plantuml`].
pub fn render(model: &UseCaseModel) -> String {
    emit_plantuml(model, &make_aliases(model))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

fn unquote(s: &str) -> Option<(String, &str)> {
    let rest = s.strip_prefix('"')?;
    let mut out = String::new();
    let mut chars = rest.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if c == '"' {
            if chars.peek().is_some_and(|&(_, n)| n == '"') {
                chars.next();
                out.push('"');
            } else {
                return Some((out, &rest[i + 1..]));
            }
        } else {
            out.push(c);
        }
    }
    None
}

/// Reads back what [`emit_plantuml`] writes. Source locations are not part
/// of the diagram and come back as `None`.
pub fn read_plantuml(text: &str) -> Result<UseCaseModel, ParseError> {
    let mut model = UseCaseModel::default();
    let mut actor_by_alias: IndexMap<String, String> = IndexMap::new();
    let mut uc_by_alias: IndexMap<String, String> = IndexMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |reason: &str| ParseError {
            line: i + 1,
            reason: reason.to_string(),
        };
        if let Some(rest) = line.strip_prefix("actor ") {
            let (name, tail) = unquote(rest).ok_or_else(|| err("bad actor name"))?;
            let alias = tail.trim().strip_prefix("as ").ok_or_else(|| err("missing alias"))?;
            actor_by_alias.insert(alias.trim().to_string(), actor_key(&name));
            model.add_actor(Actor::new(&name, None));
        } else if let Some(rest) = line.strip_prefix("usecase ") {
            let (phrase, tail) = unquote(rest).ok_or_else(|| err("bad use case phrase"))?;
            let alias = tail.trim().strip_prefix("as ").ok_or_else(|| err("missing alias"))?;
            uc_by_alias.insert(alias.trim().to_string(), phrase);
        } else if let Some(rest) = line.strip_prefix("rectangle ") {
            if rest != "{" {
                let (name, _) = unquote(rest).ok_or_else(|| err("bad system name"))?;
                model.system_name = name;
            }
        } else if let Some((a, uc)) = line.split_once(" --> ") {
            let key = actor_by_alias.get(a).ok_or_else(|| err("undeclared actor alias"))?;
            let phrase = uc_by_alias.get(uc).ok_or_else(|| err("undeclared use case alias"))?;
            let u = UseCase::from_phrase(phrase).ok_or_else(|| err("use case needs two words"))?;
            let list = model.associations.get_mut(key).expect("declared actor");
            list.push(u);
        }
    }
    Ok(model)
}
