use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::PipelineResult;
use crate::editsession::Session;

pub const PROJECT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ProjectError {
    #[error("project file version {found} is not supported (expected {expected})")]
    VersionMismatch { found: u64, expected: u32 },
    #[error("malformed project file: {0}")]
    MalformedFile(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl ProjectError {
    pub fn code(&self) -> &'static str {
        match self {
            ProjectError::VersionMismatch { .. } => "version_mismatch",
            ProjectError::MalformedFile(_) => "malformed_file",
            ProjectError::Io { .. } => "io_error",
        }
    }
}

/// On-disk layout of a project.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectFile {
    pub schema_version: u32,
    pub result: PipelineResult,
    pub session: Session,
}

pub fn project_to_json(result: &PipelineResult, session: &Session) -> String {
    #[derive(Serialize)]
    struct Borrowed<'a> {
        schema_version: u32,
        result: &'a PipelineResult,
        session: &'a Session,
    }
    serde_json::to_string_pretty(&Borrowed {
        schema_version: PROJECT_SCHEMA_VERSION,
        result,
        session,
    })
    .expect("project serializes")
}

pub fn project_from_json(text: &str) -> Result<(PipelineResult, Session), ProjectError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| ProjectError::MalformedFile(e.to_string()))?;
    let version = value
        .get("schema_version")
        .and_then(serde_json::Value::as_u64)
        .ok_or_else(|| ProjectError::MalformedFile("missing schema_version".into()))?;
    if version != u64::from(PROJECT_SCHEMA_VERSION) {
        return Err(ProjectError::VersionMismatch {
            found: version,
            expected: PROJECT_SCHEMA_VERSION,
        });
    }
    let file: ProjectFile =
        serde_json::from_value(value).map_err(|e| ProjectError::MalformedFile(e.to_string()))?;
    Ok((file.result, file.session))
}

/// Writes the project next to `path` and renames it into place, so readers
/// never see a partial file.
pub fn save_project(result: &PipelineResult, session: &Session, path: &Path) -> Result<(), ProjectError> {
    let io = |source| ProjectError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    let mut file = fs::File::create(&tmp).map_err(io)?;
    file.write_all(project_to_json(result, session).as_bytes())
        .and_then(|()| file.sync_all())
        .map_err(io)?;
    drop(file);
    fs::rename(&tmp, path).map_err(io)
}

pub fn load_project(path: &Path) -> Result<(PipelineResult, Session), ProjectError> {
    let text = fs::read_to_string(path).map_err(|source| ProjectError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    project_from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::project::{run_pipeline, Pipeline};

    fn sample() -> (PipelineResult, Session) {
        let r = run_pipeline(
            "A customer calls a car repair shop. The receptionist checks the availability.",
            &Pipeline::default(),
        )
        .unwrap();
        let s = Session::new(r.filtered_model.clone());
        (r, s)
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.json");
        let (r, mut s) = sample();
        s.apply_edit(&crate::EditCommand::AddActor { name: "Mechanic".into() })
            .unwrap();
        save_project(&r, &s, &path).unwrap();
        assert_eq!(load_project(&path).unwrap(), (r, s));
    }

    #[test]
    fn version_and_truncation_errors() {
        let (r, s) = sample();
        let text = project_to_json(&r, &s);
        let bumped = text.replacen("\"schema_version\": 1", "\"schema_version\": 2", 1);
        assert!(matches!(
            project_from_json(&bumped),
            Err(ProjectError::VersionMismatch { found: 2, expected: 1 })
        ));
        assert!(matches!(
            project_from_json(&text[..text.len() - 10]),
            Err(ProjectError::MalformedFile(_))
        ));
        assert!(matches!(project_from_json("{}"), Err(ProjectError::MalformedFile(_))));
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load_project(Path::new("/nonexistent/storyuml/p.json")).unwrap_err();
        assert_eq!(err.code(), "io_error");
    }
}
