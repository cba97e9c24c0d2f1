//! ARFF parsing, Naive Bayes and kNN classification, and model evaluation.

mod arff;
mod eval;
mod knn;
mod nb;

pub use arff::{
    arff_to_string, parse_arff, parse_arff_str, write_arff, ArffAttribute, ArffDataset, ArffValue,
    AttrKind,
};
pub use eval::{evaluate, ClassCounts, EvalReport};
pub use knn::knn_predict;
pub use nb::{predict_nb, train_nb, NbModel};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path} line {line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{0}")]
    Argument(String),
    #[error("{0}")]
    State(String),
}

impl ClassifyError {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        ClassifyError::Argument(msg.into())
    }

    pub(crate) fn state(msg: impl Into<String>) -> Self {
        ClassifyError::State(msg.into())
    }
}

/// One classified test instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub index: usize,
    pub label: String,
    pub confidence: f64,
}
