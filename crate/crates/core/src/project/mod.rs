//! Pipeline orchestration, project files and corpus evaluation.

mod corpus;
mod persist;

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classifier::{self, ClassifierError, NbModel};
use crate::diagram;
use crate::extract::{self, Location, UseCase, UseCaseModel, DEFAULT_SYSTEM_NAME};
use crate::lingpipe::{self, DepOptions, TaggedSentence};
use crate::textnorm::{self, CorrectionReport, TextError};
use crate::{ResourceError, Resources};

pub use corpus::{
    evaluate_corpus, evaluate_corpus_detailed, load_corpus, CorpusError, ExtractionReport, GoldStory,
    StoryOutcome, BUNDLED_CORPUS,
};
pub use persist::{
    load_project, project_from_json, project_to_json, save_project, ProjectError, ProjectFile,
    PROJECT_SCHEMA_VERSION,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    /// Directory holding replacement language data files; bundled data when unset.
    pub lexicon_dir: Option<PathBuf>,
    /// Trained classifier file; when unset the bundled seed data is used.
    pub model_path: Option<PathBuf>,
    pub alpha: f64,
    pub filter: bool,
    pub include_infinitives: bool,
    pub system_name: String,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            lexicon_dir: None,
            model_path: None,
            alpha: classifier::DEFAULT_ALPHA,
            filter: true,
            include_infinitives: false,
            system_name: DEFAULT_SYSTEM_NAME.to_string(),
        }
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Resource(#[from] ResourceError),
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Clone)]
enum SharedResources {
    Bundled(&'static Resources),
    Loaded(Arc<Resources>),
}

/// A configured pipeline: language data plus, when filtering, a trained
/// classifier. Cheap to clone and safe to share between threads.
#[derive(Clone)]
pub struct Pipeline {
    pub config: PipelineConfig,
    resources: SharedResources,
    model: Option<Arc<NbModel>>,
}

impl fmt::Debug for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Pipeline")
            .field("config", &self.config)
            .field("has_model", &self.model.is_some())
            .finish()
    }
}

impl Default for Pipeline {
    fn default() -> Self {
        Pipeline::from_config(PipelineConfig::default()).expect("bundled data loads")
    }
}

impl Pipeline {
    pub fn from_config(config: PipelineConfig) -> Result<Self, PipelineError> {
        let resources = match &config.lexicon_dir {
            Some(dir) => SharedResources::Loaded(Arc::new(Resources::load_dir(dir)?)),
            None => SharedResources::Bundled(Resources::bundled()),
        };
        let model = match (&config.model_path, config.filter) {
            (Some(path), _) => {
                let text = fs::read_to_string(path).map_err(|source| PipelineError::Io {
                    path: path.clone(),
                    source,
                })?;
                Some(Arc::new(NbModel::from_json(&text)?))
            }
            (None, true) => Some(Arc::new(classifier::train(
                &classifier::bundled_seed_dataset(),
                config.alpha,
            )?)),
            (None, false) => None,
        };
        Ok(Pipeline {
            config,
            resources,
            model,
        })
    }

    /// A pipeline using `model` for filtering.
    pub fn with_model(mut self, model: NbModel) -> Self {
        self.model = Some(Arc::new(model));
        self
    }

    pub fn resources(&self) -> &Resources {
        match &self.resources {
            SharedResources::Bundled(r) => r,
            SharedResources::Loaded(r) => r,
        }
    }

    pub fn model(&self) -> Option<&NbModel> {
        self.model.as_deref()
    }

    pub fn run(&self, story: &str) -> Result<PipelineResult, TextError> {
        run_pipeline(story, self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Info,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: String,
    pub message: String,
    pub location: Option<Location>,
}

impl Diagnostic {
    fn new(severity: Severity, code: &str, message: String, location: Option<Location>) -> Self {
        Diagnostic {
            severity,
            code: code.to_string(),
            message,
            location,
        }
    }
}

/// Every intermediate product of one pipeline run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineResult {
    pub story: String,
    pub corrected_text: String,
    pub report: CorrectionReport,
    pub sentences: Vec<TaggedSentence>,
    pub raw_model: UseCaseModel,
    pub filtered_model: UseCaseModel,
    pub dropped: Vec<(String, UseCase)>,
    pub plantuml: String,
    pub diagnostics: Vec<Diagnostic>,
}

impl PipelineResult {
    pub fn has_errors(&self) -> bool {
        self.diagnostics.iter().any(|d| d.severity == Severity::Error)
    }
}

/// Runs normalization, spelling correction, analysis, extraction, filtering
/// and emission. Extraction failures are reported as error diagnostics next
/// to an empty model; only empty input fails.
pub fn run_pipeline(story: &str, pipeline: &Pipeline) -> Result<PipelineResult, TextError> {
    let config = &pipeline.config;
    let resources = pipeline.resources();
    let mut diagnostics = Vec::new();

    let normalized = textnorm::normalize_text(story)?;
    let (corrected_text, report) =
        textnorm::correct_spelling(&normalized, &resources.lexicon, &resources.abbreviations);
    for r in &report.replacements {
        diagnostics.push(Diagnostic::new(
            Severity::Info,
            "spelling_corrected",
            format!("{:?} corrected to {:?} at character {}", r.original, r.corrected, r.offset),
            None,
        ));
    }
    for w in &report.untouched_unknown {
        diagnostics.push(Diagnostic::new(
            Severity::Warning,
            "unknown_word",
            format!("{w:?} is not in the lexicon and was left unchanged"),
            None,
        ));
    }

    let options = DepOptions {
        include_infinitives: config.include_infinitives,
    };
    let sentences = lingpipe::analyze(&corrected_text, resources, options)?;

    let raw_model = match extract::extract_model_with_notes(&sentences, &config.system_name) {
        Ok((model, notes)) => {
            for n in notes {
                diagnostics.push(Diagnostic::new(
                    Severity::Warning,
                    "passive_clause",
                    n.message,
                    Some(n.location),
                ));
            }
            model
        }
        Err(e) => {
            diagnostics.push(Diagnostic::new(Severity::Error, e.code(), e.to_string(), e.location()));
            UseCaseModel::new(&config.system_name)
        }
    };

    let (filtered_model, dropped) = match (config.filter, pipeline.model()) {
        (true, Some(model)) => classifier::filter_model(model, &raw_model),
        _ => (raw_model.clone(), Vec::new()),
    };
    for (key, u) in &dropped {
        diagnostics.push(Diagnostic::new(
            Severity::Info,
            "use_case_dropped",
            format!("{:?} of {key:?} classified as not a use case", u.phrase),
            u.source,
        ));
    }

    let plantuml = diagram::render(&filtered_model);
    Ok(PipelineResult {
        story: story.to_string(),
        corrected_text,
        report,
        sentences,
        raw_model,
        filtered_model,
        dropped,
        plantuml,
        diagnostics,
    })
}

/// Whether every association of `sub` also exists in `full`.
pub fn is_sub_model(sub: &UseCaseModel, full: &UseCaseModel) -> bool {
    sub.iter_associations()
        .all(|(k, u)| full.use_cases(k).iter().any(|f| f == u))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SINGLE_USE_CASE_BLOCK: &str = "@startuml
    left to right direction
    actor \"Customer\" as Cu
    rectangle {
      usecase \"buy product\" as UC1
    }
    Cu --> UC1
@enduml
";

    const CAR_REPAIR: &str = "A customer calls a car repair shop to make an appointment for an \
        oil change. The receptionist checks the availability of the mechanic and schedules the \
        appointment for the next available time slot.";

    fn unfiltered() -> Pipeline {
        Pipeline::from_config(PipelineConfig {
            filter: false,
            ..PipelineConfig::default()
        })
        .unwrap()
    }

    #[test]
    fn single_sentence_story() {
        let r = run_pipeline("A customer buys a product.", &unfiltered()).unwrap();
        assert_eq!(r.plantuml, SINGLE_USE_CASE_BLOCK);
        assert_eq!(r.raw_model, r.filtered_model);
        assert!(r.diagnostics.is_empty());
    }

    #[test]
    fn car_repair_story() {
        let r = run_pipeline(CAR_REPAIR, &unfiltered()).unwrap();
        assert_eq!(extract::model_stats(&r.filtered_model), (2, 3));
        assert_eq!(r.plantuml.matches(" --> ").count(), 3);
    }

    #[test]
    fn pronoun_story_gives_diagnostic() {
        let r = run_pipeline("He buys a product.", &unfiltered()).unwrap();
        assert!(r.filtered_model.actors.is_empty());
        assert_eq!(r.diagnostics.len(), 1);
        assert_eq!(r.diagnostics[0].code, "no_actors_found");
        assert!(r.has_errors());
    }

    #[test]
    fn empty_story_fails() {
        assert_eq!(run_pipeline(" \n ", &unfiltered()), Err(TextError::EmptyInput));
    }

    #[test]
    fn filtered_is_sub_model_and_deterministic() {
        let p = Pipeline::default();
        let a = run_pipeline(CAR_REPAIR, &p).unwrap();
        let b = run_pipeline(CAR_REPAIR, &p).unwrap();
        assert!(is_sub_model(&a.filtered_model, &a.raw_model));
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn named_system() {
        let p = Pipeline::from_config(PipelineConfig {
            filter: false,
            system_name: "Garage".into(),
            ..PipelineConfig::default()
        })
        .unwrap();
        let r = run_pipeline("A customer buys a product.", &p).unwrap();
        assert!(r.plantuml.contains("    rectangle \"Garage\" {\n"));
    }

    #[test]
    fn config_defaults_from_json() {
        let c: PipelineConfig = serde_json::from_str(r#"{"filter": false}"#).unwrap();
        assert_eq!(c.alpha, 1.0);
        assert!(!c.filter);
        assert_eq!(c.system_name, "System");
    }
}
