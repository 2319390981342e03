//! Confusion-matrix metrics with class 1 as the positive class.

use serde::Serialize;

use crate::classifier::Class;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport {
    pub tp: usize,
    pub tn: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    /// `TN / (TN + FP)`
    pub specificity: f64,
    /// `TP / (TP + FN)`
    pub sensitivity: f64,
    /// `TP / (TP + FP)`
    pub precision: f64,
    pub accuracy: f64,
    pub misclassification_rate: f64,
    /// Metrics whose denominator was zero; their value is NaN.
    pub undefined: Vec<&'static str>,
}

impl MetricsReport {
    pub fn total(&self) -> usize {
        self.tp + self.tn + self.fp + self.fn_
    }

    pub fn is_defined(&self, metric: &str) -> bool {
        !self.undefined.contains(&metric)
    }
}

pub fn evaluate(predicted: &[Class], truth: &[Class]) -> Result<MetricsReport> {
    if predicted.len() != truth.len() {
        return Err(Error::DimensionMismatch {
            expected: truth.len(),
            found: predicted.len(),
        });
    }
    let (mut tp, mut tn, mut fp, mut fn_) = (0, 0, 0, 0);
    for (p, t) in predicted.iter().zip(truth) {
        match (p, t) {
            (Class::First, Class::First) => tp += 1,
            (Class::Second, Class::Second) => tn += 1,
            (Class::First, Class::Second) => fp += 1,
            (Class::Second, Class::First) => fn_ += 1,
        }
    }
    let mut undefined = Vec::new();
    let mut ratio = |name: &'static str, num: usize, den: usize| {
        if den == 0 {
            undefined.push(name);
            f64::NAN
        } else {
            num as f64 / den as f64
        }
    };
    let specificity = ratio("specificity", tn, tn + fp);
    let sensitivity = ratio("sensitivity", tp, tp + fn_);
    let precision = ratio("precision", tp, tp + fp);
    let accuracy = ratio("accuracy", tp + tn, tp + tn + fp + fn_);
    let misclassification_rate = 1.0 - accuracy;
    Ok(MetricsReport {
        tp,
        tn,
        fp,
        fn_,
        specificity,
        sensitivity,
        precision,
        accuracy,
        misclassification_rate,
        undefined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Class::{First as A, Second as B};

    #[test]
    fn perfect_classification() {
        let m = evaluate(&[A, A, B, B], &[A, A, B, B]).unwrap();
        assert_eq!(
            (m.specificity, m.sensitivity, m.precision, m.accuracy),
            (1.0, 1.0, 1.0, 1.0)
        );
        assert_eq!(m.misclassification_rate, 0.0);
        assert!(m.undefined.is_empty());
    }

    #[test]
    fn total_inversion() {
        let m = evaluate(&[B, B, A, A], &[A, A, B, B]).unwrap();
        assert_eq!((m.tp, m.tn, m.fp, m.fn_), (0, 0, 2, 2));
        assert_eq!(
            (m.specificity, m.sensitivity, m.precision, m.accuracy),
            (0.0, 0.0, 0.0, 0.0)
        );
        assert_eq!(m.misclassification_rate, 1.0);
    }

    #[test]
    fn mixed_counts() {
        let m = evaluate(&[A, B, A, A, B], &[A, A, B, A, B]).unwrap();
        assert_eq!((m.tp, m.tn, m.fp, m.fn_), (2, 1, 1, 1));
        assert_eq!(m.total(), 5);
        assert_eq!(m.sensitivity, 2.0 / 3.0);
        assert_eq!(m.specificity, 0.5);
        assert_eq!(m.precision, 2.0 / 3.0);
        assert_eq!(m.accuracy, 0.6);
    }

    #[test]
    fn zero_denominators_are_flagged() {
        let m = evaluate(&[B, B], &[B, B]).unwrap();
        assert!(m.sensitivity.is_nan() && m.precision.is_nan());
        assert_eq!(m.undefined, vec!["sensitivity", "precision"]);
        assert!(m.is_defined("specificity"));
        assert_eq!(m.accuracy, 1.0);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(evaluate(&[A], &[A, B]).is_err());
    }
}
