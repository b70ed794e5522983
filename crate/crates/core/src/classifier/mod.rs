//! Multinomial Naive Bayes keep/drop filter for extracted use case phrases,
//! plus confusion-matrix metrics.

mod dataset;
mod metrics;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extract::{UseCase, UseCaseModel};

pub use dataset::{bundled_seed_dataset, parse_dataset, write_dataset, SEED_DATASET_CSV};
pub use metrics::{metrics, ConfusionMatrix, Metrics};

pub const DEFAULT_ALPHA: f64 = 1.0;

/// Version written into model files by [`NbModel::to_json`].
pub const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifierError {
    #[error("training data must contain both genuine and non-genuine phrases")]
    DegenerateDataset,
    #[error("smoothing constant must be positive, got {0}")]
    InvalidAlpha(f64),
    #[error("{metric} is undefined: zero denominator")]
    UndefinedMetric { metric: &'static str },
    #[error("test set is empty")]
    EmptyTestSet,
    #[error("dataset line {line}: {reason}")]
    MalformedDataset { line: usize, reason: String },
    #[error("model file: {0}")]
    MalformedModel(String),
    #[error("model file version {found} is not supported (expected {expected})")]
    VersionMismatch { found: u32, expected: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledPhrase {
    pub phrase: String,
    /// `true` for a genuine use case.
    pub label: bool,
}

impl LabeledPhrase {
    pub fn new(phrase: &str, label: bool) -> Self {
        LabeledPhrase {
            phrase: phrase.to_string(),
            label,
        }
    }
}

/// Counts for one class.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub docs: u64,
    pub token_counts: BTreeMap<String, u64>,
    pub total_tokens: u64,
}

/// Lowercase whitespace-separated unigrams.
pub fn features(phrase: &str) -> impl Iterator<Item = String> + '_ {
    phrase.split_whitespace().map(str::to_lowercase)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NbModel {
    pub alpha: f64,
    /// Counts for genuine use cases.
    pub keep: ClassCounts,
    /// Counts for non-use-cases.
    pub drop: ClassCounts,
    pub vocabulary: BTreeSet<String>,
}

/// Per-class scores. From [`predict`] these are unnormalized joint log
/// probabilities; [`ClassScores::normalized`] turns them into log posteriors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassScores {
    pub keep: f64,
    pub drop: f64,
}

impl ClassScores {
    pub fn normalized(self) -> ClassScores {
        let m = self.keep.max(self.drop);
        let log_z = m + ((self.keep - m).exp() + (self.drop - m).exp()).ln();
        ClassScores {
            keep: self.keep - log_z,
            drop: self.drop - log_z,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub label: bool,
    pub log_posteriors: ClassScores,
}

/// Trains on `dataset` with Laplace/Lidstone smoothing constant `alpha`.
pub fn train(dataset: &[LabeledPhrase], alpha: f64) -> Result<NbModel, ClassifierError> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(ClassifierError::InvalidAlpha(alpha));
    }
    let mut keep = ClassCounts::default();
    let mut drop = ClassCounts::default();
    let mut vocabulary = BTreeSet::new();
    for row in dataset {
        let class = if row.label { &mut keep } else { &mut drop };
        class.docs += 1;
        for token in features(&row.phrase) {
            *class.token_counts.entry(token.clone()).or_default() += 1;
            class.total_tokens += 1;
            vocabulary.insert(token);
        }
    }
    if keep.docs == 0 || drop.docs == 0 {
        return Err(ClassifierError::DegenerateDataset);
    }
    Ok(NbModel {
        alpha,
        keep,
        drop,
        vocabulary,
    })
}

impl NbModel {
    fn class_score(&self, class: &ClassCounts, tokens: &[String]) -> f64 {
        let total_docs = (self.keep.docs + self.drop.docs) as f64;
        let denom = class.total_tokens as f64 + self.alpha * self.vocabulary.len() as f64;
        let mut score = (class.docs as f64 / total_docs).ln();
        for t in tokens {
            if !self.vocabulary.contains(t) {
                continue;
            }
            let count = class.token_counts.get(t).copied().unwrap_or(0) as f64;
            score += ((count + self.alpha) / denom).ln();
        }
        score
    }

    /// Serializes counts, alpha and the format version as JSON.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct File<'a> {
            format_version: u32,
            #[serde(flatten)]
            model: &'a NbModel,
        }
        serde_json::to_string_pretty(&File {
            format_version: MODEL_FORMAT_VERSION,
            model: self,
        })
        .expect("model serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ClassifierError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| ClassifierError::MalformedModel(e.to_string()))?;
        let found = value
            .get("format_version")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| ClassifierError::MalformedModel("missing format_version".into()))?;
        if found != u64::from(MODEL_FORMAT_VERSION) {
            return Err(ClassifierError::VersionMismatch {
                found: u32::try_from(found).unwrap_or(u32::MAX),
                expected: MODEL_FORMAT_VERSION,
            });
        }
        let model: NbModel =
            serde_json::from_value(value).map_err(|e| ClassifierError::MalformedModel(e.to_string()))?;
        if model.keep.docs == 0 || model.drop.docs == 0 || model.alpha.is_nan() || model.alpha <= 0.0 {
            return Err(ClassifierError::MalformedModel("model is not trained".into()));
        }
        Ok(model)
    }
}

/// Scores both classes and picks the larger; ties keep the phrase.
/// Tokens outside the vocabulary are ignored.
pub fn predict(model: &NbModel, phrase: &str) -> Prediction {
    let tokens: Vec<String> = features(phrase).collect();
    let keep = model.class_score(&model.keep, &tokens);
    let drop = model.class_score(&model.drop, &tokens);
    Prediction {
        label: keep >= drop,
        log_posteriors: ClassScores { keep, drop },
    }
}

/// Removes use cases the model labels as non-genuine. Actors stay, even if
/// left without use cases. Returns the dropped pairs in model order.
pub fn filter_model(model: &NbModel, ucm: &UseCaseModel) -> (UseCaseModel, Vec<(String, UseCase)>) {
    let mut out = ucm.clone();
    let mut dropped = Vec::new();
    for (key, list) in out.associations.iter_mut() {
        list.retain(|u| {
            let keep = predict(model, &u.phrase).label;
            if !keep {
                dropped.push((key.clone(), u.clone()));
            }
            keep
        });
    }
    (out, dropped)
}

/// Confusion matrix of `model`'s predictions over `test`, genuine use cases
/// being the positive class.
pub fn confusion(model: &NbModel, test: &[LabeledPhrase]) -> ConfusionMatrix {
    let mut cm = ConfusionMatrix::default();
    for row in test {
        match (predict(model, &row.phrase).label, row.label) {
            (true, true) => cm.tp += 1,
            (true, false) => cm.fp += 1,
            (false, true) => cm.fn_ += 1,
            (false, false) => cm.tn += 1,
        }
    }
    cm
}

pub fn evaluate(
    model: &NbModel,
    test: &[LabeledPhrase],
) -> Result<(ConfusionMatrix, Metrics), ClassifierError> {
    if test.is_empty() {
        return Err(ClassifierError::EmptyTestSet);
    }
    let cm = confusion(model, test);
    let m = metrics(&cm)?;
    Ok((cm, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn toy() -> Vec<LabeledPhrase> {
        vec![
            LabeledPhrase::new("buy product", true),
            LabeledPhrase::new("place order", true),
            LabeledPhrase::new("cancel order", true),
            LabeledPhrase::new("repair shop", false),
            LabeledPhrase::new("time slot", false),
            LabeledPhrase::new("oil change", false),
        ]
    }

    #[test]
    fn two_row_training() {
        let m = train(
            &[
                LabeledPhrase::new("buy product", true),
                LabeledPhrase::new("repair shop", false),
            ],
            1.0,
        )
        .unwrap();
        let vocab: Vec<&str> = m.vocabulary.iter().map(String::as_str).collect();
        assert_eq!(vocab, ["buy", "product", "repair", "shop"]);
        assert_eq!((m.keep.docs, m.drop.docs), (1, 1));
        assert_eq!((m.keep.total_tokens, m.drop.total_tokens), (2, 2));
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(train(&[], 1.0), Err(ClassifierError::DegenerateDataset));
        assert_eq!(
            train(&[LabeledPhrase::new("buy product", true)], 1.0),
            Err(ClassifierError::DegenerateDataset)
        );
        assert_eq!(train(&toy(), 0.0), Err(ClassifierError::InvalidAlpha(0.0)));
    }

    #[test]
    fn oov_phrase_with_equal_priors_is_kept() {
        let m = train(&toy(), 1.0).unwrap();
        let p = predict(&m, "zzz qqq");
        assert!(p.label);
        assert_eq!(p.log_posteriors.keep, p.log_posteriors.drop);
    }

    #[test]
    fn toy_predictions() {
        let m = train(&toy(), 1.0).unwrap();
        assert!(predict(&m, "cancel product").label);
        assert!(!predict(&m, "oil slot").label);
    }

    #[test]
    fn filter_drops_oil_change() {
        let m = train(&toy(), 1.0).unwrap();
        let mut ucm = UseCaseModel::default();
        ucm.add_actor(crate::extract::Actor::new("Customer", None));
        ucm.add_use_case("customer", UseCase::new("buy", "product", None));
        ucm.add_use_case("customer", UseCase::new("oil", "change", None));
        let (filtered, dropped) = filter_model(&m, &ucm);
        assert_eq!(filtered.use_cases("customer").len(), 1);
        assert_eq!(dropped.len(), 1);
        assert_eq!(dropped[0].1.phrase, "oil change");
        assert_eq!(filtered.actors, ucm.actors);
    }

    #[test]
    fn model_file_round_trip_and_version_check() {
        let m = train(&toy(), 0.5).unwrap();
        let text = m.to_json();
        assert_eq!(NbModel::from_json(&text).unwrap(), m);
        let bumped = text.replace("\"format_version\": 1", "\"format_version\": 9");
        assert_eq!(
            NbModel::from_json(&bumped),
            Err(ClassifierError::VersionMismatch {
                found: 9,
                expected: 1
            })
        );
        assert!(matches!(
            NbModel::from_json(&text[..text.len() / 2]),
            Err(ClassifierError::MalformedModel(_))
        ));
    }

    #[test]
    fn prediction_consistent_set_has_no_errors() {
        let m = train(&toy(), 1.0).unwrap();
        let consistent: Vec<LabeledPhrase> = toy()
            .into_iter()
            .map(|r| LabeledPhrase::new(&r.phrase, predict(&m, &r.phrase).label))
            .collect();
        let cm = confusion(&m, &consistent);
        assert_eq!((cm.fp, cm.fn_), (0, 0));
    }

    #[test]
    fn single_item_evaluation() {
        let m = train(&toy(), 1.0).unwrap();
        let cm = confusion(&m, &[LabeledPhrase::new("buy product", true)]);
        assert_eq!((cm.tp, cm.fp, cm.fn_, cm.tn), (1, 0, 0, 0));
        let cm = confusion(&m, &[LabeledPhrase::new("oil change", false)]);
        assert_eq!((cm.tp, cm.fp, cm.fn_, cm.tn), (0, 0, 0, 1));
        assert_eq!(
            evaluate(&m, &[LabeledPhrase::new("oil change", false)]),
            Err(ClassifierError::UndefinedMetric { metric: "precision" })
        );
        assert_eq!(evaluate(&m, &[]), Err(ClassifierError::EmptyTestSet));
    }

    proptest::proptest! {
        #[test]
        fn posteriors_normalize(phrase in "[a-z ]{0,20}") {
            let m = train(&toy(), 1.0).unwrap();
            let p = predict(&m, &phrase).log_posteriors.normalized();
            let total = p.keep.exp() + p.drop.exp();
            proptest::prop_assert!((total - 1.0).abs() < 1e-9);
        }

        #[test]
        fn duplicating_rows_keeps_labels(phrase in proptest::sample::select(vec![
            "buy product", "cancel shop", "oil order", "time change", "place slot", "unknown words",
        ])) {
            let m1 = train(&toy(), 1.0).unwrap();
            let doubled: Vec<LabeledPhrase> = toy().into_iter().chain(toy()).collect();
            let m2 = train(&doubled, 1.0).unwrap();
            proptest::prop_assert_eq!(predict(&m1, phrase).label, predict(&m2, phrase).label);
        }
    }
}
