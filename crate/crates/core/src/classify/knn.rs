//! k-nearest-neighbour classification: Euclidean distance over numeric
//! attributes, 0/1 mismatch for nominal ones, majority vote among the k
//! nearest training rows.

use super::arff::{ArffDataset, ArffValue};
use super::{ClassifyError, Prediction};

/// Classify each test instance by majority vote among its `k` nearest
/// training instances. Distance ties prefer the lower training-row index;
/// vote ties prefer the earlier declared class. Confidence is the winning
/// vote fraction.
pub fn knn_predict(
    train: &ArffDataset,
    test: &ArffDataset,
    k: usize,
) -> Result<Vec<Prediction>, ClassifyError> {
    if k < 1 || k > train.instances.len() {
        return Err(ClassifyError::argument(format!(
            "k must be in 1..={}, got {k}",
            train.instances.len()
        )));
    }
    if test.attributes.len() != train.attributes.len() {
        return Err(ClassifyError::argument(format!(
            "test file declares {} attributes, training file {}",
            test.attributes.len(),
            train.attributes.len()
        )));
    }
    let classes: Vec<String> = train.class_values()?.to_vec();
    let class_index = train.class_index();

    let mut out = Vec::with_capacity(test.instances.len());
    for (index, row) in test.instances.iter().enumerate() {
        let mut neighbours: Vec<(f64, usize)> = train
            .instances
            .iter()
            .enumerate()
            .map(|(i, train_row)| Ok((distance(row, train_row, class_index)?, i)))
            .collect::<Result<_, ClassifyError>>()?;
        neighbours.sort_by(|a, b| {
            a.0.partial_cmp(&b.0)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then_with(|| a.1.cmp(&b.1))
        });

        let mut votes = vec![0usize; classes.len()];
        for (_, train_idx) in neighbours.iter().take(k) {
            let label = train.class_of(*train_idx).ok_or_else(|| {
                ClassifyError::state("training row is missing its class label")
            })?;
            let c = classes
                .iter()
                .position(|v| v == label)
                .ok_or_else(|| ClassifyError::state(format!("undeclared class {label:?}")))?;
            votes[c] += 1;
        }
        let best = votes
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then_with(|| b.0.cmp(&a.0)))
            .map(|(i, _)| i)
            .unwrap_or(0);
        out.push(Prediction {
            index,
            label: classes[best].clone(),
            confidence: votes[best] as f64 / k as f64,
        });
    }
    Ok(out)
}

/// Squared contributions: `(a-b)^2` for numerics, 1 for differing
/// nominals; the class column is excluded.
fn distance(a: &[ArffValue], b: &[ArffValue], class_index: usize) -> Result<f64, ClassifyError> {
    let mut sum = 0.0;
    for (i, (va, vb)) in a.iter().zip(b).enumerate() {
        if i == class_index {
            continue;
        }
        sum += match (va, vb) {
            (ArffValue::Numeric(x), ArffValue::Numeric(y)) => (x - y) * (x - y),
            (ArffValue::Nominal(x), ArffValue::Nominal(y)) => {
                if x == y {
                    0.0
                } else {
                    1.0
                }
            }
            _ => {
                return Err(ClassifyError::argument(
                    "mismatched or missing attribute values in distance computation",
                ))
            }
        };
    }
    Ok(sum.sqrt())
}
