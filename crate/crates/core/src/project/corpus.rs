use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{run_pipeline, Pipeline};

/// Annotated stories bundled with the library, one JSON record per line.
pub const BUNDLED_CORPUS: &str = include_str!("../../data/gold_corpus.ndjson");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldStory {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub story: String,
    /// Lowercase actor keys.
    pub actors: Vec<String>,
    /// Lowercase "verb object" phrases over lemmas.
    pub use_cases: Vec<String>,
}

impl GoldStory {
    fn validate(&self) -> Result<(), String> {
        if self.story.trim().is_empty() {
            return Err("empty story".into());
        }
        for (field, list) in [("actors", &self.actors), ("use_cases", &self.use_cases)] {
            if list.is_empty() {
                return Err(format!("{field} is empty"));
            }
            let set: BTreeSet<&String> = list.iter().collect();
            if set.len() != list.len() {
                return Err(format!("{field} has duplicates"));
            }
            if let Some(bad) = list.iter().find(|v| v.to_lowercase() != **v || v.trim().is_empty()) {
                return Err(format!("{field} entry {bad:?} must be nonempty lowercase"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("corpus line {line}: {reason}")]
pub struct CorpusError {
    pub line: usize,
    pub reason: String,
}

/// Parses line-delimited JSON records; blank lines are skipped.
pub fn load_corpus(text: &str) -> Result<Vec<GoldStory>, CorpusError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let err = |reason: String| CorpusError { line: i + 1, reason };
        let story: GoldStory = serde_json::from_str(line).map_err(|e| err(e.to_string()))?;
        story.validate().map_err(err)?;
        out.push(story);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtractionReport {
    pub story_count: usize,
    pub actual_actors: usize,
    pub actual_use_cases: usize,
    pub identified_actors: usize,
    pub identified_use_cases: usize,
    pub actor_pct: f64,
    pub use_case_pct: f64,
}

/// What the pipeline found for one story, next to the gold annotation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoryOutcome {
    pub id: Option<String>,
    pub extracted_actors: Vec<String>,
    pub extracted_use_cases: Vec<String>,
    pub matched_actors: usize,
    pub matched_use_cases: usize,
}

fn pct(identified: usize, actual: usize) -> f64 {
    if actual == 0 {
        0.0
    } else {
        100.0 * identified as f64 / actual as f64
    }
}

/// Runs the pipeline over each story and counts exact matches: actors by
/// key, use cases by phrase regardless of the actor they were assigned to.
pub fn evaluate_corpus(corpus: &[GoldStory], pipeline: &Pipeline) -> ExtractionReport {
    evaluate_corpus_detailed(corpus, pipeline).0
}

pub fn evaluate_corpus_detailed(
    corpus: &[GoldStory],
    pipeline: &Pipeline,
) -> (ExtractionReport, Vec<StoryOutcome>) {
    let mut outcomes = Vec::with_capacity(corpus.len());
    let (mut actual_actors, mut actual_use_cases) = (0, 0);
    let (mut identified_actors, mut identified_use_cases) = (0, 0);
    for gold in corpus {
        let (actors, use_cases) = match run_pipeline(&gold.story, pipeline) {
            Ok(r) => {
                let m = &r.filtered_model;
                let actors: BTreeSet<String> = m.actors.iter().map(|a| a.key.clone()).collect();
                let use_cases: BTreeSet<String> =
                    m.iter_associations().map(|(_, u)| u.phrase.clone()).collect();
                (actors, use_cases)
            }
            Err(_) => Default::default(),
        };
        let gold_actors: BTreeSet<&String> = gold.actors.iter().collect();
        let gold_use_cases: BTreeSet<&String> = gold.use_cases.iter().collect();
        let matched_actors = actors.iter().filter(|a| gold_actors.contains(a)).count();
        let matched_use_cases = use_cases.iter().filter(|u| gold_use_cases.contains(u)).count();
        actual_actors += gold_actors.len();
        actual_use_cases += gold_use_cases.len();
        identified_actors += matched_actors;
        identified_use_cases += matched_use_cases;
        outcomes.push(StoryOutcome {
            id: gold.id.clone(),
            extracted_actors: actors.into_iter().collect(),
            extracted_use_cases: use_cases.into_iter().collect(),
            matched_actors,
            matched_use_cases,
        });
    }
    let report = ExtractionReport {
        story_count: corpus.len(),
        actual_actors,
        actual_use_cases,
        identified_actors,
        identified_use_cases,
        actor_pct: pct(identified_actors, actual_actors),
        use_case_pct: pct(identified_use_cases, actual_use_cases),
    };
    (report, outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::project::PipelineConfig;

    fn unfiltered() -> Pipeline {
        Pipeline::from_config(PipelineConfig {
            filter: false,
            ..PipelineConfig::default()
        })
        .unwrap()
    }

    #[test]
    fn perfect_single_story() {
        let corpus = load_corpus(
            r#"{"story": "A customer buys a product.", "actors": ["customer"], "use_cases": ["buy product"]}"#,
        )
        .unwrap();
        let r = evaluate_corpus(&corpus, &unfiltered());
        assert_eq!((r.actor_pct, r.use_case_pct), (100.0, 100.0));
        assert_eq!(r.story_count, 1);
    }

    #[test]
    fn misses_are_counted() {
        let corpus = vec![GoldStory {
            id: None,
            story: "He buys a product.".into(),
            actors: vec!["customer".into()],
            use_cases: vec!["buy product".into(), "pay bill".into()],
        }];
        let r = evaluate_corpus(&corpus, &unfiltered());
        assert_eq!((r.identified_actors, r.actual_actors), (0, 1));
        assert_eq!((r.identified_use_cases, r.actual_use_cases), (0, 2));
        assert_eq!(r.actor_pct, 0.0);
    }

    #[test]
    fn rejects_bad_records() {
        let e = load_corpus("\n{\"story\": \"x\", \"actors\": [], \"use_cases\": [\"a b\"]}").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(load_corpus(r#"{"story": "x", "actors": ["A"], "use_cases": ["a b"]}"#).is_err());
        assert!(load_corpus(r#"{"story": "x", "actors": ["a", "a"], "use_cases": ["a b"]}"#).is_err());
        assert!(load_corpus("not json").is_err());
    }

    #[test]
    fn bundled_corpus_loads() {
        let corpus = load_corpus(BUNDLED_CORPUS).unwrap();
        assert_eq!(corpus.len(), 8);
    }
}
