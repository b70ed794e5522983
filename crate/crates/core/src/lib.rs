//! Turns an English user story into a use case model and PlantUML source.
//!
//! The pipeline runs in stages, each in its own module:
//!
//! 1. [`textnorm`] normalizes the raw text and fixes misspelled words by
//!    dictionary lookup.
//! 2. [`lingpipe`] segments sentences, tokenizes, tags parts of speech,
//!    labels subjects and direct objects, and lemmatizes.
//! 3. [`extract`] turns subjects into actors and verb/object pairs into use
//!    cases, associating each use case with the most recent actor.
//! 4. [`classifier`] drops phrases a multinomial Naive Bayes model does not
//!    consider genuine use cases.
//! 5. [`diagram`] emits PlantUML.
//!
//! [`editsession`] provides undoable manual edits of the resulting model and
//! [`project`] wires the stages together, persists projects and scores the
//! extraction against an annotated corpus.

pub mod classifier;
pub mod diagram;
pub mod editsession;
pub mod extract;
pub mod lingpipe;
pub mod project;
mod resources;
pub mod textnorm;

pub use resources::{Resources, ResourceError};

pub use classifier::{ConfusionMatrix, LabeledPhrase, Metrics, NbModel};
pub use diagram::{emit_plantuml, make_aliases, AliasMap};
pub use editsession::{EditCommand, Session};
pub use extract::{extract_model, Actor, UseCase, UseCaseModel};
pub use lingpipe::{DepLabel, PosTag, TaggedSentence, Token};
pub use project::{run_pipeline, Pipeline, PipelineConfig, PipelineResult};
pub use textnorm::{correct_spelling, normalize_text, CorrectionReport, Lexicon};
