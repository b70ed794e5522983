//! Python bindings. Structured results cross the boundary as plain dicts
//! and lists built from the JSON form of the Rust types.

use std::path::PathBuf;

use pyo3::create_exception;
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;
use storyuml_core::classifier::{self, ClassifierError};
use storyuml_core::diagram::render;
use storyuml_core::editsession::{EditCommand, EditError};
use storyuml_core::lingpipe::{lemmatize as lemmatize_word, tokenize as tokenize_sentence};
use storyuml_core::project::{self, load_corpus, ProjectError, BUNDLED_CORPUS};
use storyuml_core::{LabeledPhrase, PipelineConfig, PipelineResult, PosTag, Resources, UseCaseModel};

create_exception!(storyuml, StoryUmlError, pyo3::exceptions::PyException);
create_exception!(storyuml, EditRejected, StoryUmlError);

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn from_py<T: DeserializeOwned>(value: &Bound<'_, PyAny>) -> PyResult<T> {
    let py = value.py();
    let text: String = py.import("json")?.call_method1("dumps", (value,))?.extract()?;
    serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn edit_err(e: EditError) -> PyErr {
    EditRejected::new_err((e.code(), e.to_string()))
}

fn project_err(e: ProjectError) -> PyErr {
    match e {
        ProjectError::Io { .. } => PyOSError::new_err(e.to_string()),
        _ => StoryUmlError::new_err((e.code(), e.to_string())),
    }
}

fn classifier_err(e: ClassifierError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// The full analysis pipeline with its resources loaded once.
#[pyclass(name = "Pipeline", frozen)]
struct PyPipeline {
    inner: storyuml_core::Pipeline,
}

#[pymethods]
impl PyPipeline {
    #[new]
    #[pyo3(signature = (*, filter=true, model_path=None, lexicon_dir=None, alpha=1.0, include_infinitives=false, system_name=None))]
    fn new(
        filter: bool,
        model_path: Option<PathBuf>,
        lexicon_dir: Option<PathBuf>,
        alpha: f64,
        include_infinitives: bool,
        system_name: Option<String>,
    ) -> PyResult<Self> {
        let mut config = PipelineConfig {
            filter,
            model_path,
            lexicon_dir,
            alpha,
            include_infinitives,
            ..PipelineConfig::default()
        };
        if let Some(name) = system_name {
            config.system_name = name;
        }
        let inner = storyuml_core::Pipeline::from_config(config).map_err(|e| StoryUmlError::new_err(e.to_string()))?;
        Ok(PyPipeline { inner })
    }

    /// Runs every stage and returns the result as a dict.
    fn run(&self, py: Python<'_>, story: &str) -> PyResult<Py<PyAny>> {
        let result = self.inner.run(story).map_err(|e| PyValueError::new_err(e.to_string()))?;
        to_py(py, &result)
    }

    /// PlantUML text for `story`.
    fn generate(&self, story: &str) -> PyResult<String> {
        let result = self.inner.run(story).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(result.plantuml)
    }

    /// An edit session over the filtered model of `story`.
    fn session(&self, story: &str) -> PyResult<PySession> {
        let result = self.inner.run(story).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PySession {
            inner: storyuml_core::Session::new(result.filtered_model),
        })
    }

    /// Extraction report over an NDJSON gold corpus (the bundled one by default).
    #[pyo3(signature = (corpus_path=None))]
    fn evaluate_corpus(&self, py: Python<'_>, corpus_path: Option<PathBuf>) -> PyResult<Py<PyAny>> {
        let text = match corpus_path {
            Some(p) => std::fs::read_to_string(&p).map_err(|e| PyOSError::new_err(format!("{}: {e}", p.display())))?,
            None => BUNDLED_CORPUS.to_string(),
        };
        let corpus = load_corpus(&text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        to_py(py, &project::evaluate_corpus(&corpus, &self.inner))
    }

    #[getter]
    fn has_model(&self) -> bool {
        self.inner.model().is_some()
    }

    fn __repr__(&self) -> String {
        format!(
            "Pipeline(filter={}, include_infinitives={})",
            self.inner.config.filter, self.inner.config.include_infinitives
        )
    }
}

/// Multinomial Naive Bayes phrase classifier.
#[pyclass(name = "Classifier", frozen)]
struct PyClassifier {
    inner: storyuml_core::NbModel,
}

#[pymethods]
impl PyClassifier {
    /// Trains on `(phrase, label)` pairs, or on the bundled seed data if none are given.
    #[staticmethod]
    #[pyo3(signature = (rows=None, alpha=1.0))]
    fn train(rows: Option<Vec<(String, bool)>>, alpha: f64) -> PyResult<Self> {
        let data: Vec<LabeledPhrase> = match rows {
            Some(rows) => rows.iter().map(|(p, l)| LabeledPhrase::new(p, *l)).collect(),
            None => classifier::bundled_seed_dataset(),
        };
        let inner = classifier::train(&data, alpha).map_err(classifier_err)?;
        Ok(PyClassifier { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = storyuml_core::NbModel::from_json(text).map_err(classifier_err)?;
        Ok(PyClassifier { inner })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    /// Returns `(keep, log_keep, log_drop)`.
    fn predict(&self, phrase: &str) -> (bool, f64, f64) {
        let p = classifier::predict(&self.inner, phrase);
        (p.label, p.log_posteriors.keep, p.log_posteriors.drop)
    }

    /// Confusion counts and metrics on `(phrase, label)` pairs.
    fn evaluate(&self, py: Python<'_>, rows: Vec<(String, bool)>) -> PyResult<Py<PyAny>> {
        let data: Vec<LabeledPhrase> = rows.iter().map(|(p, l)| LabeledPhrase::new(p, *l)).collect();
        let (cm, m) = classifier::evaluate(&self.inner, &data).map_err(classifier_err)?;
        to_py(py, &serde_json::json!({ "confusion": cm, "metrics": m }))
    }

    #[getter]
    fn vocabulary(&self) -> Vec<String> {
        self.inner.vocabulary.iter().cloned().collect()
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha
    }
}

/// An editable use case model with undo.
#[pyclass(name = "Session")]
struct PySession {
    inner: storyuml_core::Session,
}

#[pymethods]
impl PySession {
    /// Starts from a model dict (as found under `filtered_model`), or an empty model.
    #[new]
    #[pyo3(signature = (model=None))]
    fn new(model: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let model: UseCaseModel = match model {
            Some(m) => from_py(m)?,
            None => UseCaseModel::default(),
        };
        model.validate().map_err(PyValueError::new_err)?;
        Ok(PySession {
            inner: storyuml_core::Session::new(model),
        })
    }

    /// Applies a command dict such as `{"type": "AddActor", "name": "Clerk"}`.
    fn apply_edit(&mut self, command: &Bound<'_, PyAny>) -> PyResult<u64> {
        let cmd: EditCommand = from_py(command)?;
        self.inner.apply_edit(&cmd).map_err(edit_err)?;
        Ok(self.inner.revision)
    }

    fn undo(&mut self) -> PyResult<u64> {
        self.inner.undo().map_err(edit_err)?;
        Ok(self.inner.revision)
    }

    #[getter]
    fn revision(&self) -> u64 {
        self.inner.revision
    }

    #[getter]
    fn model(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner.model)
    }

    fn plantuml(&self) -> String {
        render(&self.inner.model)
    }
}

/// PlantUML for `story` using the default pipeline settings.
#[pyfunction]
#[pyo3(signature = (story, *, filter=true, system_name=None))]
fn generate(story: &str, filter: bool, system_name: Option<String>) -> PyResult<String> {
    PyPipeline::new(filter, None, None, classifier::DEFAULT_ALPHA, false, system_name)?.generate(story)
}

#[pyfunction]
fn tokenize(sentence: &str) -> Vec<String> {
    tokenize_sentence(sentence, &Resources::bundled().abbreviations)
}

/// Lemma of `word` read as part of speech `pos` (NOUN, VERB, ADJ, ...).
#[pyfunction]
fn lemmatize(word: &str, pos: &str) -> PyResult<String> {
    let tag: PosTag = pos.parse().map_err(|e: storyuml_core::lingpipe::UnknownTag| PyValueError::new_err(e.0))?;
    let r = Resources::bundled();
    Ok(lemmatize_word(word, tag, &r.lexicon, &r.exceptions))
}

/// Accuracy, precision, recall and F1 from confusion counts.
#[pyfunction]
fn metrics(py: Python<'_>, tp: u64, fp: u64, fn_: u64, tn: u64) -> PyResult<Py<PyAny>> {
    let m = classifier::metrics(&storyuml_core::ConfusionMatrix::new(tp, fp, fn_, tn)).map_err(classifier_err)?;
    to_py(py, &m)
}

/// Writes a pipeline result dict and session to a project file.
#[pyfunction]
fn save_project(path: PathBuf, result: &Bound<'_, PyAny>, session: &PySession) -> PyResult<()> {
    let result: PipelineResult = from_py(result)?;
    project::save_project(&result, &session.inner, &path).map_err(project_err)
}

/// Reads a project file back as `(result, session)`.
#[pyfunction]
fn load_project(py: Python<'_>, path: PathBuf) -> PyResult<(Py<PyAny>, PySession)> {
    let (result, session) = project::load_project(&path).map_err(project_err)?;
    Ok((to_py(py, &result)?, PySession { inner: session }))
}

#[pymodule]
fn storyuml(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPipeline>()?;
    m.add_class::<PyClassifier>()?;
    m.add_class::<PySession>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(tokenize, m)?)?;
    m.add_function(wrap_pyfunction!(lemmatize, m)?)?;
    m.add_function(wrap_pyfunction!(metrics, m)?)?;
    m.add_function(wrap_pyfunction!(save_project, m)?)?;
    m.add_function(wrap_pyfunction!(load_project, m)?)?;
    m.add("StoryUmlError", m.py().get_type::<StoryUmlError>())?;
    m.add("EditRejected", m.py().get_type::<EditRejected>())?;
    m.add("PROJECT_SCHEMA_VERSION", project::PROJECT_SCHEMA_VERSION)?;
    Ok(())
}
