//! Line-oriented model editor.

use std::io::{self, BufRead, Write};
use std::path::PathBuf;

use storyuml_core::diagram::render;
use storyuml_core::project::save_project;
use storyuml_core::{EditCommand, PipelineResult, Session};

const HELP: &str = "\
commands (quote arguments containing spaces):
  add-actor NAME
  remove-actor KEY
  rename-actor KEY NEW_NAME
  add-use-case ACTOR PHRASE
  remove-use-case ACTOR PHRASE
  rename-use-case ACTOR OLD_PHRASE NEW_PHRASE
  reassign PHRASE FROM TO
  undo
  model        list actors and use cases
  show         print the PlantUML source
  save [PATH]  write the project file
  help
  quit
";

/// Parses one editor line into an edit command. `Ok(None)` means the line
/// is not an edit.
pub fn parse_edit(words: &[String]) -> Result<Option<EditCommand>, String> {
    let arity = |n: usize| {
        if words.len() == n + 1 {
            Ok(())
        } else {
            Err(format!("{} takes {n} argument(s)", words[0]))
        }
    };
    let w = |i: usize| words[i].clone();
    let cmd = match words.first().map(String::as_str) {
        Some("add-actor") => {
            arity(1)?;
            EditCommand::AddActor { name: w(1) }
        }
        Some("remove-actor") => {
            arity(1)?;
            EditCommand::RemoveActor { key: w(1) }
        }
        Some("rename-actor") => {
            arity(2)?;
            EditCommand::RenameActor {
                key: w(1),
                new_name: w(2),
            }
        }
        Some("add-use-case") => {
            arity(2)?;
            EditCommand::AddUseCase {
                actor: w(1),
                phrase: w(2),
            }
        }
        Some("remove-use-case") => {
            arity(2)?;
            EditCommand::RemoveUseCase {
                actor: w(1),
                phrase: w(2),
            }
        }
        Some("rename-use-case") => {
            arity(3)?;
            EditCommand::RenameUseCase {
                actor: w(1),
                old_phrase: w(2),
                new_phrase: w(3),
            }
        }
        Some("reassign") => {
            arity(3)?;
            EditCommand::ReassignUseCase {
                phrase: w(1),
                from: w(2),
                to: w(3),
            }
        }
        _ => return Ok(None),
    };
    Ok(Some(cmd))
}

fn print_model(session: &Session, out: &mut dyn Write) -> io::Result<()> {
    if session.model.actors.is_empty() {
        writeln!(out, "(no actors)")?;
    }
    for actor in &session.model.actors {
        writeln!(out, "{} [{}]", actor.name, actor.key)?;
        for u in session.model.use_cases(&actor.key) {
            writeln!(out, "  - {}", u.phrase)?;
        }
    }
    Ok(())
}

pub fn run(
    result: PipelineResult,
    mut session: Session,
    mut path: Option<PathBuf>,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> io::Result<()> {
    for d in &result.diagnostics {
        writeln!(out, "note[{}]: {}", d.code, d.message)?;
    }
    print_model(&session, out)?;
    writeln!(out, "type `help` for commands")?;
    let mut line = String::new();
    loop {
        write!(out, "edit[{}]> ", session.revision)?;
        out.flush()?;
        line.clear();
        if input.read_line(&mut line)? == 0 {
            writeln!(out)?;
            return Ok(());
        }
        let Some(words) = shlex::split(line.trim()) else {
            writeln!(out, "error: unbalanced quotes")?;
            continue;
        };
        if words.is_empty() {
            continue;
        }
        match parse_edit(&words) {
            Err(msg) => writeln!(out, "error: {msg}")?,
            Ok(Some(cmd)) => match session.apply_edit(&cmd) {
                Ok(()) => out.write_all(render(&session.model).as_bytes())?,
                Err(e) => writeln!(out, "error[{}]: {e}", e.code())?,
            },
            Ok(None) => match words[0].as_str() {
                "undo" => match session.undo() {
                    Ok(()) => out.write_all(render(&session.model).as_bytes())?,
                    Err(e) => writeln!(out, "error[{}]: {e}", e.code())?,
                },
                "model" => print_model(&session, out)?,
                "show" => out.write_all(render(&session.model).as_bytes())?,
                "save" => {
                    if let Some(p) = words.get(1) {
                        path = Some(PathBuf::from(p));
                    }
                    match &path {
                        Some(p) => match save_project(&result, &session, p) {
                            Ok(()) => writeln!(out, "saved {}", p.display())?,
                            Err(e) => writeln!(out, "error: {e}")?,
                        },
                        None => writeln!(out, "error: save needs a path")?,
                    }
                }
                "help" => out.write_all(HELP.as_bytes())?,
                "quit" | "exit" => return Ok(()),
                other => writeln!(out, "error: unknown command {other:?}; type `help`")?,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(line: &str) -> Vec<String> {
        shlex::split(line).unwrap()
    }

    #[test]
    fn parses_quoted_arguments() {
        assert_eq!(
            parse_edit(&words("reassign 'schedule appointment' receptionist customer")),
            Ok(Some(EditCommand::ReassignUseCase {
                phrase: "schedule appointment".into(),
                from: "receptionist".into(),
                to: "customer".into(),
            }))
        );
        assert_eq!(parse_edit(&words("show")), Ok(None));
        assert!(parse_edit(&words("rename-actor customer")).is_err());
    }
}
