use serde::{Deserialize, Serialize};

use super::ClassifierError;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

fn ratio(num: u64, den: u64, metric: &'static str) -> Result<f64, ClassifierError> {
    if den == 0 {
        return Err(ClassifierError::UndefinedMetric { metric });
    }
    Ok(num as f64 / den as f64)
}

impl ConfusionMatrix {
    pub fn new(tp: u64, fp: u64, fn_: u64, tn: u64) -> Self {
        ConfusionMatrix { tp, fp, fn_, tn }
    }

    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.fn_ + self.tn
    }

    pub fn accuracy(&self) -> Result<f64, ClassifierError> {
        ratio(self.tp + self.tn, self.total(), "accuracy")
    }

    pub fn precision(&self) -> Result<f64, ClassifierError> {
        ratio(self.tp, self.tp + self.fp, "precision")
    }

    pub fn recall(&self) -> Result<f64, ClassifierError> {
        ratio(self.tp, self.tp + self.fn_, "recall")
    }

    /// Harmonic mean of precision and recall. Undefined when either is, or
    /// when both are zero.
    pub fn f1(&self) -> Result<f64, ClassifierError> {
        let p = self.precision()?;
        let r = self.recall()?;
        if p + r == 0.0 {
            return Err(ClassifierError::UndefinedMetric { metric: "f1" });
        }
        Ok(2.0 * p * r / (p + r))
    }
}

/// All four metrics; fails on the first undefined one.
pub fn metrics(cm: &ConfusionMatrix) -> Result<Metrics, ClassifierError> {
    Ok(Metrics {
        accuracy: cm.accuracy()?,
        precision: cm.precision()?,
        recall: cm.recall()?,
        f1: cm.f1()?,
    })
}
