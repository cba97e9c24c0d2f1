//! Naive Bayes with Laplace add-one smoothing for nominal attributes and
//! per-class Gaussians for numeric attributes, computed in log space.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::arff::{ArffAttribute, ArffDataset, ArffValue, AttrKind};
use super::{ClassifyError, Prediction};

const VARIANCE_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, Serialize, Deserialize)]
enum AttrModel {
    /// per-class value counts and the class totals the counts smooth over.
    Nominal {
        counts: Vec<HashMap<String, usize>>,
        value_count: usize,
    },
    /// per-class (mean, variance).
    Gaussian { params: Vec<(f64, f64)> },
}

/// A trained model: class priors plus one per-attribute model.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NbModel {
    classes: Vec<String>,
    class_counts: Vec<usize>,
    total: usize,
    attributes: Vec<ArffAttribute>,
    models: Vec<AttrModel>,
}

impl NbModel {
    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    /// Log of the unnormalized posterior of each class for one instance
    /// (prior times likelihood product), class declaration order.
    pub fn log_posteriors(&self, row: &[ArffValue]) -> Result<Vec<f64>, ClassifyError> {
        if row.len() != self.attributes.len() {
            return Err(ClassifyError::argument(format!(
                "instance has {} values, model expects {}",
                row.len(),
                self.attributes.len()
            )));
        }
        let mut logs = Vec::with_capacity(self.classes.len());
        for (c, _) in self.classes.iter().enumerate() {
            let mut log_p = (self.class_counts[c] as f64 / self.total as f64).ln();
            for (a, model) in self.models.iter().enumerate() {
                match (&row[a], model) {
                    (ArffValue::Missing, _) => {} // class column of test rows
                    (ArffValue::Nominal(v), AttrModel::Nominal { counts, value_count }) => {
                        let count = counts[c].get(v).copied().unwrap_or(0);
                        let likelihood = (count as f64 + 1.0)
                            / (self.class_counts[c] as f64 + *value_count as f64);
                        log_p += likelihood.ln();
                    }
                    (ArffValue::Numeric(x), AttrModel::Gaussian { params }) => {
                        let (mean, var) = params[c];
                        let var = var.max(VARIANCE_FLOOR);
                        log_p += -0.5 * (2.0 * std::f64::consts::PI * var).ln()
                            - (x - mean) * (x - mean) / (2.0 * var);
                    }
                    _ => {
                        return Err(ClassifyError::argument(
                            "instance value kind does not match the attribute",
                        ))
                    }
                }
            }
            logs.push(log_p);
        }
        Ok(logs)
    }
}

/// Train on a dataset whose last attribute is the nominal class.
pub fn train_nb(train: &ArffDataset) -> Result<NbModel, ClassifyError> {
    if train.instances.is_empty() {
        return Err(ClassifyError::state("cannot train on an empty dataset"));
    }
    let classes: Vec<String> = train.class_values()?.to_vec();
    let class_index = train.class_index();
    let class_of = |row: &[ArffValue]| -> Result<usize, ClassifyError> {
        let label = row[class_index]
            .as_nominal()
            .ok_or_else(|| ClassifyError::state("training row is missing its class label"))?;
        classes
            .iter()
            .position(|c| c == label)
            .ok_or_else(|| ClassifyError::state(format!("undeclared class {label:?}")))
    };

    let mut class_counts = vec![0usize; classes.len()];
    for row in &train.instances {
        class_counts[class_of(row)?] += 1;
    }

    let mut models = Vec::new();
    for (a, attr) in train.attributes.iter().enumerate() {
        if a == class_index {
            break;
        }
        match &attr.kind {
            AttrKind::Nominal(values) => {
                let mut counts = vec![HashMap::new(); classes.len()];
                for row in &train.instances {
                    let c = class_of(row)?;
                    if let ArffValue::Nominal(v) = &row[a] {
                        *counts[c].entry(v.clone()).or_insert(0) += 1;
                    }
                }
                models.push(AttrModel::Nominal {
                    counts,
                    value_count: values.len(),
                });
            }
            AttrKind::Numeric => {
                let mut params = Vec::with_capacity(classes.len());
                for c in 0..classes.len() {
                    let xs: Vec<f64> = train
                        .instances
                        .iter()
                        .filter(|row| class_of(row).map(|i| i == c).unwrap_or(false))
                        .filter_map(|row| row[a].as_numeric())
                        .collect();
                    let n = xs.len().max(1) as f64;
                    let mean = xs.iter().sum::<f64>() / n;
                    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
                    params.push((mean, var.max(VARIANCE_FLOOR)));
                }
                models.push(AttrModel::Gaussian { params });
            }
        }
    }

    // The class attribute itself contributes nothing beyond the prior.
    let attributes = train.attributes.clone();
    let mut models_full = models;
    debug_assert_eq!(models_full.len(), class_index);
    // Pad a placeholder so attribute indexes line up with rows.
    models_full.push(AttrModel::Nominal {
        counts: vec![HashMap::new(); classes.len()],
        value_count: classes.len().max(1),
    });

    Ok(NbModel {
        classes,
        class_counts,
        total: train.instances.len(),
        attributes,
        models: models_full,
    })
}

/// Classify every test instance; the test class column may be `?`.
pub fn predict_nb(model: &NbModel, test: &ArffDataset) -> Result<Vec<Prediction>, ClassifyError> {
    if test.attributes.len() != model.attributes.len() {
        return Err(ClassifyError::argument(format!(
            "test file declares {} attributes, model was trained with {}",
            test.attributes.len(),
            model.attributes.len()
        )));
    }
    let class_index = test.class_index();
    let mut out = Vec::with_capacity(test.instances.len());
    for (index, row) in test.instances.iter().enumerate() {
        // Ignore any provided class label during scoring.
        let mut masked = row.clone();
        masked[class_index] = ArffValue::Missing;
        let logs = model.log_posteriors(&masked)?;
        let (best, confidence) = normalize(&logs);
        out.push(Prediction {
            index,
            label: model.classes[best].clone(),
            confidence,
        });
    }
    Ok(out)
}

/// Softmax the log posteriors; ties keep the earliest declared class.
fn normalize(logs: &[f64]) -> (usize, f64) {
    let max = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logs.iter().map(|l| (l - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    let mut best = 0;
    for (i, l) in logs.iter().enumerate() {
        if *l > logs[best] {
            best = i;
        }
    }
    (best, exps[best] / sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::parse_arff_str;

    const WEATHER: &str = "\
@RELATION weather
@ATTRIBUTE outlook {sunny,rainy}
@ATTRIBUTE play {yes,no}
@DATA
sunny,yes
sunny,yes
rainy,no
rainy,no
sunny,no
";

    #[test]
    fn smoothed_posterior_example() {
        let train = parse_arff_str(WEATHER).unwrap();
        let model = train_nb(&train).unwrap();
        let test = parse_arff_str(
            "@RELATION weather\n@ATTRIBUTE outlook {sunny,rainy}\n@ATTRIBUTE play {yes,no}\n@DATA\nsunny,?\n",
        )
        .unwrap();

        // P(yes)*P(sunny|yes) = 0.4 * 3/4 = 0.30, P(no)*P(sunny|no) = 0.6 * 2/5 = 0.24
        let mut row = test.instances[0].clone();
        row[1] = ArffValue::Missing;
        let logs = model.log_posteriors(&row).unwrap();
        assert!((logs[0] - (0.4f64 * 0.75).ln()).abs() < 1e-9);
        assert!((logs[1] - (0.6f64 * 0.4).ln()).abs() < 1e-9);

        let preds = predict_nb(&model, &test).unwrap();
        assert_eq!(preds[0].label, "yes");
        assert!((preds[0].confidence - 0.30 / 0.54).abs() < 1e-9);
    }

    #[test]
    fn posterior_vector_sums_to_one() {
        let train = parse_arff_str(WEATHER).unwrap();
        let model = train_nb(&train).unwrap();
        let row = vec![ArffValue::Nominal("rainy".into()), ArffValue::Missing];
        let logs = model.log_posteriors(&row).unwrap();
        let max = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let sum: f64 = logs.iter().map(|l| (l - max).exp()).sum();
        let normalized: f64 = logs.iter().map(|l| (l - max).exp() / sum).sum();
        assert!((normalized - 1.0).abs() < 1e-9);
    }

    #[test]
    fn single_class_training_is_certain() {
        let train = parse_arff_str(
            "@RELATION r\n@ATTRIBUTE a {x,y}\n@ATTRIBUTE c {only}\n@DATA\nx,only\ny,only\n",
        )
        .unwrap();
        let model = train_nb(&train).unwrap();
        let test = parse_arff_str(
            "@RELATION r\n@ATTRIBUTE a {x,y}\n@ATTRIBUTE c {only}\n@DATA\ny,?\n",
        )
        .unwrap();
        let preds = predict_nb(&model, &test).unwrap();
        assert_eq!(preds[0].label, "only");
        assert!((preds[0].confidence - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unseen_value_stays_finite_via_smoothing() {
        let train = parse_arff_str(
            "@RELATION r\n@ATTRIBUTE a {x,y,z}\n@ATTRIBUTE c {p,q}\n@DATA\nx,p\ny,q\n",
        )
        .unwrap();
        let model = train_nb(&train).unwrap();
        let row = vec![ArffValue::Nominal("z".into()), ArffValue::Missing];
        let logs = model.log_posteriors(&row).unwrap();
        assert!(logs.iter().all(|l| l.is_finite()));
    }

    #[test]
    fn uniform_data_gives_uniform_posteriors() {
        let train = parse_arff_str(
            "@RELATION r\n@ATTRIBUTE a {x,y}\n@ATTRIBUTE c {p,q}\n@DATA\nx,p\ny,p\nx,q\ny,q\n",
        )
        .unwrap();
        let model = train_nb(&train).unwrap();
        let row = vec![ArffValue::Nominal("x".into()), ArffValue::Missing];
        let logs = model.log_posteriors(&row).unwrap();
        assert!((logs[0] - logs[1]).abs() < 1e-12);
        let test = parse_arff_str(
            "@RELATION r\n@ATTRIBUTE a {x,y}\n@ATTRIBUTE c {p,q}\n@DATA\nx,?\n",
        )
        .unwrap();
        let preds = predict_nb(&model, &test).unwrap();
        assert_eq!(preds[0].label, "p"); // declaration-order tie break
        assert!((preds[0].confidence - 0.5).abs() < 1e-12);
    }

    #[test]
    fn gaussian_attributes() {
        let train = parse_arff_str(
            "@RELATION r\n@ATTRIBUTE t NUMERIC\n@ATTRIBUTE c {low,high}\n@DATA\n1,low\n2,low\n10,high\n11,high\n",
        )
        .unwrap();
        let model = train_nb(&train).unwrap();
        let test = parse_arff_str(
            "@RELATION r\n@ATTRIBUTE t NUMERIC\n@ATTRIBUTE c {low,high}\n@DATA\n1.6,?\n10.4,?\n",
        )
        .unwrap();
        let preds = predict_nb(&model, &test).unwrap();
        assert_eq!(preds[0].label, "low");
        assert_eq!(preds[1].label, "high");
    }

    #[test]
    fn empty_training_is_state_error() {
        let train = parse_arff_str("@RELATION r\n@ATTRIBUTE c {p,q}\n@DATA\n").unwrap();
        assert!(matches!(train_nb(&train), Err(ClassifyError::State(_))));
    }
}
