use std::fs;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use thiserror::Error;

use crate::lingpipe::{Abbreviations, ExceptionTable};
use crate::textnorm::{Lexicon, LexiconError};

const LEXICON_TSV: &str = include_str!("../data/lexicon.tsv");
const CLOSED_CLASS_TSV: &str = include_str!("../data/closed_class.tsv");
const EXCEPTIONS_TSV: &str = include_str!("../data/exceptions.tsv");
const ABBREVIATIONS_TXT: &str = include_str!("../data/abbreviations.txt");

/// File names looked up inside a resource directory.
pub const LEXICON_FILE: &str = "lexicon.tsv";
pub const CLOSED_CLASS_FILE: &str = "closed_class.tsv";
pub const EXCEPTIONS_FILE: &str = "exceptions.tsv";
pub const ABBREVIATIONS_FILE: &str = "abbreviations.txt";

#[derive(Debug, Error)]
pub enum ResourceError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error("{file}:{line}: {reason}")]
    Malformed {
        file: String,
        line: usize,
        reason: String,
    },
}

/// Immutable language data shared by every stage: the lexicon, the
/// lemmatizer's irregular forms and the sentence splitter's abbreviations.
#[derive(Debug, Clone)]
pub struct Resources {
    pub lexicon: Lexicon,
    pub exceptions: ExceptionTable,
    pub abbreviations: Abbreviations,
}

impl Resources {
    /// The data files compiled into the library.
    pub fn bundled() -> &'static Resources {
        static BUNDLED: OnceLock<Resources> = OnceLock::new();
        BUNDLED.get_or_init(|| {
            Resources::parse(LEXICON_TSV, CLOSED_CLASS_TSV, EXCEPTIONS_TSV, ABBREVIATIONS_TXT)
                .expect("bundled language data is well formed")
        })
    }

    pub fn parse(
        lexicon: &str,
        closed_class: &str,
        exceptions: &str,
        abbreviations: &str,
    ) -> Result<Self, ResourceError> {
        let lexicon = Lexicon::parse(lexicon, closed_class)?;
        let exceptions = ExceptionTable::parse(exceptions).map_err(|(line, reason)| {
            ResourceError::Malformed {
                file: EXCEPTIONS_FILE.to_string(),
                line,
                reason,
            }
        })?;
        let abbreviations = Abbreviations::parse(abbreviations);
        Ok(Resources {
            lexicon,
            exceptions,
            abbreviations,
        })
    }

    /// Loads the four data files from `dir`.
    pub fn load_dir(dir: &Path) -> Result<Self, ResourceError> {
        let read = |name: &str| {
            let path = dir.join(name);
            fs::read_to_string(&path).map_err(|source| ResourceError::Io { path, source })
        };
        Resources::parse(
            &read(LEXICON_FILE)?,
            &read(CLOSED_CLASS_FILE)?,
            &read(EXCEPTIONS_FILE)?,
            &read(ABBREVIATIONS_FILE)?,
        )
    }
}
