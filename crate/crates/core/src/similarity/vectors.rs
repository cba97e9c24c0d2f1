//! Numeric-vector metrics, vector files and the batch modes.

use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::strings::{dice_sets, jaccard_sets};
use super::SimilarityError;

/// An ordered list of finite real numbers, dimension >= 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericVector(pub Vec<f64>);

impl NumericVector {
    pub fn new(values: Vec<f64>) -> Result<Self, SimilarityError> {
        if values.is_empty() {
            return Err(SimilarityError::argument("vector dimension must be >= 1"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(SimilarityError::argument("vector entries must be finite"));
        }
        Ok(NumericVector(values))
    }

    /// Parse a comma-separated decimal list, e.g. `1,2.5,3`.
    pub fn parse(text: &str) -> Result<Self, SimilarityError> {
        let values: Result<Vec<f64>, _> = text
            .split(',')
            .map(|part| part.trim().parse::<f64>())
            .collect();
        match values {
            Ok(values) => NumericVector::new(values),
            Err(_) => Err(SimilarityError::argument(format!(
                "cannot parse vector from {text:?}"
            ))),
        }
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    fn support(&self) -> HashSet<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, _)| i)
            .collect()
    }
}

impl fmt::Display for NumericVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Vectors loaded from a file: one comma-separated vector per line,
/// all of the same dimension.
#[derive(Debug, Clone)]
pub struct VectorFile {
    vectors: Vec<NumericVector>,
    source: PathBuf,
}

impl VectorFile {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, SimilarityError> {
        let path = path.as_ref();
        let raw = std::fs::read_to_string(path).map_err(|source| SimilarityError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut vectors: Vec<NumericVector> = Vec::new();
        for (lineno, line) in raw.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let vector = NumericVector::parse(line).map_err(|e| SimilarityError::VectorFile {
                path: path.display().to_string(),
                line: lineno + 1,
                message: e.to_string(),
            })?;
            if let Some(first) = vectors.first() {
                if vector.dim() != first.dim() {
                    return Err(SimilarityError::VectorFile {
                        path: path.display().to_string(),
                        line: lineno + 1,
                        message: format!(
                            "dimension {} does not match first vector dimension {}",
                            vector.dim(),
                            first.dim()
                        ),
                    });
                }
            }
            vectors.push(vector);
        }
        Ok(VectorFile {
            vectors,
            source: path.to_path_buf(),
        })
    }

    pub fn from_vectors(vectors: Vec<NumericVector>) -> Result<Self, SimilarityError> {
        if let Some(first) = vectors.first() {
            if let Some(bad) = vectors.iter().find(|v| v.dim() != first.dim()) {
                return Err(SimilarityError::argument(format!(
                    "mixed dimensions: {} vs {}",
                    bad.dim(),
                    first.dim()
                )));
            }
        }
        Ok(VectorFile {
            vectors,
            source: PathBuf::new(),
        })
    }

    pub fn vectors(&self) -> &[NumericVector] {
        &self.vectors
    }

    pub fn source(&self) -> &Path {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// One scored pair produced by the batch modes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarityResult {
    pub left: String,
    pub right: String,
    pub score: f64,
}

/// Cosine of the angle between two equal-dimension vectors; zero when
/// either norm is zero.
pub fn cosine_vec(a: &NumericVector, b: &NumericVector) -> Result<f64, SimilarityError> {
    check_dims(a, b)?;
    let dot: f64 = a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum();
    let na: f64 = a.0.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.0.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return Ok(0.0);
    }
    Ok(dot / (na * nb))
}

/// Euclidean distance between two equal-dimension vectors.
pub fn euclidean(a: &NumericVector, b: &NumericVector) -> Result<f64, SimilarityError> {
    check_dims(a, b)?;
    Ok(a.0
        .iter()
        .zip(&b.0)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt())
}

/// Jaccard similarity of the nonzero supports of two vectors.
pub fn jaccard_vec(a: &NumericVector, b: &NumericVector) -> Result<f64, SimilarityError> {
    check_dims(a, b)?;
    Ok(jaccard_sets(&a.support(), &b.support()))
}

/// Dice similarity of the nonzero supports of two vectors.
pub fn dice_vec(a: &NumericVector, b: &NumericVector) -> Result<f64, SimilarityError> {
    check_dims(a, b)?;
    Ok(dice_sets(&a.support(), &b.support()))
}

fn check_dims(a: &NumericVector, b: &NumericVector) -> Result<(), SimilarityError> {
    if a.dim() != b.dim() {
        return Err(SimilarityError::argument(format!(
            "dimension mismatch: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(())
}

/// Metrics usable in the batch vector modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BatchMetric {
    Cosine,
    Euclidean,
    Dice,
    Jaccard,
}

impl BatchMetric {
    fn apply(&self, a: &NumericVector, b: &NumericVector) -> Result<f64, SimilarityError> {
        match self {
            BatchMetric::Cosine => cosine_vec(a, b),
            BatchMetric::Euclidean => euclidean(a, b),
            BatchMetric::Dice => dice_vec(a, b),
            BatchMetric::Jaccard => jaccard_vec(a, b),
        }
    }
}

impl FromStr for BatchMetric {
    type Err = SimilarityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cosine" => Ok(BatchMetric::Cosine),
            "euclidean" => Ok(BatchMetric::Euclidean),
            "dice" => Ok(BatchMetric::Dice),
            "jaccard" => Ok(BatchMetric::Jaccard),
            other => Err(SimilarityError::argument(format!(
                "unknown batch metric {other:?} (expected cosine, euclidean, dice or jaccard)"
            ))),
        }
    }
}

impl fmt::Display for BatchMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            BatchMetric::Cosine => "cosine",
            BatchMetric::Euclidean => "euclidean",
            BatchMetric::Dice => "dice",
            BatchMetric::Jaccard => "jaccard",
        };
        f.write_str(name)
    }
}

/// The three batch shapes: one pair, one vector against a file, or every
/// unordered pair within a file.
#[derive(Debug, Clone, Copy)]
pub enum BatchInput<'a> {
    VectorVector(&'a NumericVector, &'a NumericVector),
    VectorVectors(&'a NumericVector, &'a VectorFile),
    VectorsAllPairs(&'a VectorFile),
}

/// Run `metric` over the batch input, in file order.
pub fn batch_vector(
    metric: BatchMetric,
    input: BatchInput<'_>,
) -> Result<Vec<SimilarityResult>, SimilarityError> {
    let pair = |a: &NumericVector, b: &NumericVector| -> Result<SimilarityResult, SimilarityError> {
        Ok(SimilarityResult {
            left: a.to_string(),
            right: b.to_string(),
            score: metric.apply(a, b)?,
        })
    };
    match input {
        BatchInput::VectorVector(a, b) => Ok(vec![pair(a, b)?]),
        BatchInput::VectorVectors(a, file) => {
            file.vectors().iter().map(|row| pair(a, row)).collect()
        }
        BatchInput::VectorsAllPairs(file) => {
            let rows = file.vectors();
            let mut out = Vec::new();
            for i in 0..rows.len() {
                for j in (i + 1)..rows.len() {
                    out.push(pair(&rows[i], &rows[j])?);
                }
            }
            Ok(out)
        }
    }
}
