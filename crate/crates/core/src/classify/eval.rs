//! Confusion counting and macro-averaged precision/recall.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ClassifyError;

/// Per-class confusion counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub true_pos: usize,
    pub false_pos: usize,
    pub false_neg: usize,
}

impl ClassCounts {
    /// TP/(TP+FP), undefined (None) when the class was never predicted.
    pub fn precision(&self) -> Option<f64> {
        let denom = self.true_pos + self.false_pos;
        (denom > 0).then(|| self.true_pos as f64 / denom as f64)
    }

    /// TP/(TP+FN), undefined (None) when the class never occurs.
    pub fn recall(&self) -> Option<f64> {
        let denom = self.true_pos + self.false_neg;
        (denom > 0).then(|| self.true_pos as f64 / denom as f64)
    }
}

/// Macro-averaged model quality. Classes whose precision (or recall) is
/// undefined are skipped from the corresponding mean.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub precision: f64,
    pub recall: f64,
    pub accuracy: f64,
    pub per_class: BTreeMap<String, ClassCounts>,
}

/// Compare predicted labels against actual labels (equal, non-zero
/// lengths required).
pub fn evaluate(predicted: &[String], actual: &[String]) -> Result<EvalReport, ClassifyError> {
    if predicted.len() != actual.len() {
        return Err(ClassifyError::argument(format!(
            "predicted and actual label lists must have equal length ({} vs {})",
            predicted.len(),
            actual.len()
        )));
    }
    if predicted.is_empty() {
        return Err(ClassifyError::argument("label lists must be non-empty"));
    }

    let mut per_class: BTreeMap<String, ClassCounts> = BTreeMap::new();
    let mut correct = 0usize;
    for (p, a) in predicted.iter().zip(actual) {
        per_class.entry(p.clone()).or_default();
        per_class.entry(a.clone()).or_default();
        if p == a {
            correct += 1;
            per_class.get_mut(p).unwrap().true_pos += 1;
        } else {
            per_class.get_mut(p).unwrap().false_pos += 1;
            per_class.get_mut(a).unwrap().false_neg += 1;
        }
    }

    let mean = |values: Vec<f64>| -> f64 {
        if values.is_empty() {
            0.0
        } else {
            values.iter().sum::<f64>() / values.len() as f64
        }
    };
    let precision = mean(per_class.values().filter_map(ClassCounts::precision).collect());
    let recall = mean(per_class.values().filter_map(ClassCounts::recall).collect());

    Ok(EvalReport {
        precision,
        recall,
        accuracy: correct as f64 / predicted.len() as f64,
        per_class,
    })
}
