//! Binary-classification metrics (accuracy, F1, rank-based AUC) and
//! multi-seed aggregation. The positive class is the Hamiltonian label.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricsError {
    #[error("labels and predictions have different lengths ({labels} vs {preds})")]
    LengthMismatch { labels: usize, preds: usize },
    #[error("metric undefined on empty input")]
    Empty,
    #[error("AUC undefined: only one class present")]
    SingleClass,
}

/// Confusion counts on the positive class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Confusion {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    pub fn_: usize,
}

pub fn confusion(labels: &[bool], preds: &[bool]) -> Result<Confusion, MetricsError> {
    check_lengths(labels, preds)?;
    let mut c = Confusion::default();
    for (&l, &p) in labels.iter().zip(preds) {
        match (l, p) {
            (true, true) => c.tp += 1,
            (false, true) => c.fp += 1,
            (false, false) => c.tn += 1,
            (true, false) => c.fn_ += 1,
        }
    }
    Ok(c)
}

pub fn accuracy(labels: &[bool], preds: &[bool]) -> Result<f64, MetricsError> {
    let c = confusion(labels, preds)?;
    Ok((c.tp + c.tn) as f64 / labels.len() as f64)
}

/// F1 on the positive class: 2PR/(P+R), with 0 when the denominator is 0.
pub fn f1(labels: &[bool], preds: &[bool]) -> Result<f64, MetricsError> {
    let c = confusion(labels, preds)?;
    let denom = 2 * c.tp + c.fp + c.fn_;
    if denom == 0 {
        return Ok(0.0);
    }
    Ok(2.0 * c.tp as f64 / denom as f64)
}

/// AUC in the Mann-Whitney rank form: the probability that a random positive
/// scores above a random negative, counting ties as one half. Requires both
/// classes to be present.
pub fn auc(labels: &[bool], scores: &[f64]) -> Result<f64, MetricsError> {
    if labels.len() != scores.len() {
        return Err(MetricsError::LengthMismatch {
            labels: labels.len(),
            preds: scores.len(),
        });
    }
    if labels.is_empty() {
        return Err(MetricsError::Empty);
    }
    let pos = labels.iter().filter(|&&l| l).count();
    let neg = labels.len() - pos;
    if pos == 0 || neg == 0 {
        return Err(MetricsError::SingleClass);
    }

    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by(|&i, &j| scores[i].partial_cmp(&scores[j]).unwrap().then(i.cmp(&j)));

    // Average ranks over tied score groups, then sum positive ranks.
    let mut rank_sum_pos = 0.0f64;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j < order.len() && scores[order[j]] == scores[order[i]] {
            j += 1;
        }
        let avg_rank = (i + 1 + j) as f64 / 2.0;
        for &idx in &order[i..j] {
            if labels[idx] {
                rank_sum_pos += avg_rank;
            }
        }
        i = j;
    }
    let p = pos as f64;
    Ok((rank_sum_pos - p * (p + 1.0) / 2.0) / (p * neg as f64))
}

/// Mean and population standard deviation of one metric over seeds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricSummary {
    pub mean: f64,
    pub std: f64,
}

pub fn summarize(values: &[f64]) -> Result<MetricSummary, MetricsError> {
    if values.is_empty() {
        return Err(MetricsError::Empty);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    Ok(MetricSummary {
        mean,
        std: var.sqrt(),
    })
}

/// One seed's evaluation against a test set.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedMetrics {
    pub seed: u64,
    pub auc: f64,
    pub accuracy: f64,
    pub f1: f64,
    pub confusion: Confusion,
}

impl SeedMetrics {
    pub fn compute(
        seed: u64,
        labels: &[bool],
        preds: &[bool],
        scores: &[f64],
    ) -> Result<SeedMetrics, MetricsError> {
        Ok(SeedMetrics {
            seed,
            auc: auc(labels, scores)?,
            accuracy: accuracy(labels, preds)?,
            f1: f1(labels, preds)?,
            confusion: confusion(labels, preds)?,
        })
    }
}

/// Aggregated metrics over several seeds: mean and population standard
/// deviation per metric, plus the raw per-seed values.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub auc: MetricSummary,
    pub accuracy: MetricSummary,
    pub f1: MetricSummary,
    pub per_seed: Vec<SeedMetrics>,
}

pub fn aggregate(per_seed: &[SeedMetrics]) -> Result<EvalReport, MetricsError> {
    if per_seed.is_empty() {
        return Err(MetricsError::Empty);
    }
    let col = |f: fn(&SeedMetrics) -> f64| per_seed.iter().map(f).collect::<Vec<_>>();
    Ok(EvalReport {
        auc: summarize(&col(|m| m.auc))?,
        accuracy: summarize(&col(|m| m.accuracy))?,
        f1: summarize(&col(|m| m.f1))?,
        per_seed: per_seed.to_vec(),
    })
}

fn check_lengths(labels: &[bool], preds: &[bool]) -> Result<(), MetricsError> {
    if labels.len() != preds.len() {
        return Err(MetricsError::LengthMismatch {
            labels: labels.len(),
            preds: preds.len(),
        });
    }
    if labels.is_empty() {
        return Err(MetricsError::Empty);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn perfect_predictions() {
        let labels = [true, false, true, false];
        assert_eq!(f1(&labels, &labels).unwrap(), 1.0);
        assert_eq!(accuracy(&labels, &labels).unwrap(), 1.0);
    }

    #[test]
    fn all_positive_predictions_on_half_positive_labels() {
        let labels = [true, true, false, false];
        let preds = [true; 4];
        assert_eq!(accuracy(&labels, &preds).unwrap(), 0.5);
        let got = f1(&labels, &preds).unwrap();
        assert!((got - 2.0 / 3.0).abs() < 1e-12, "f1 = {got}");
    }

    #[test]
    fn zero_denominator_gives_zero_f1() {
        let labels = [true, true, false];
        let preds = [false, false, false];
        assert_eq!(f1(&labels, &preds).unwrap(), 0.0);
    }

    #[test]
    fn auc_worked_example() {
        // Positives score 0.9 and 0.4; negatives 0.6 and 0.1. Three of the
        // four positive-negative pairs are ordered correctly.
        let labels = [true, true, false, false];
        let scores = [0.9, 0.4, 0.6, 0.1];
        assert!((auc(&labels, &scores).unwrap() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn auc_all_ties_is_half() {
        let labels = [true, false, true, false, false];
        let scores = [0.3; 5];
        assert_eq!(auc(&labels, &scores).unwrap(), 0.5);
    }

    #[test]
    fn auc_perfect_separation() {
        let labels = [false, false, true, true];
        let scores = [0.1, 0.2, 0.8, 0.9];
        assert_eq!(auc(&labels, &scores).unwrap(), 1.0);
    }

    #[test]
    fn auc_single_class_is_error() {
        assert_eq!(
            auc(&[true, true], &[0.1, 0.2]),
            Err(MetricsError::SingleClass)
        );
    }

    #[test]
    fn length_mismatch_is_error() {
        assert!(matches!(
            f1(&[true], &[true, false]),
            Err(MetricsError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn summary_examples() {
        let s = summarize(&[0.8, 0.6]).unwrap();
        assert!((s.mean - 0.7).abs() < 1e-12);
        assert!((s.std - 0.1).abs() < 1e-12);
        let single = summarize(&[0.9]).unwrap();
        assert_eq!(single.std, 0.0);
        let equal = summarize(&[0.5; 5]).unwrap();
        assert_eq!(equal.std, 0.0);
    }

    fn arb_scored() -> impl Strategy<Value = (Vec<bool>, Vec<f64>)> {
        proptest::collection::vec((any::<bool>(), 0.0f64..1.0), 2..60).prop_filter_map(
            "need both classes",
            |pairs| {
                let labels: Vec<bool> = pairs.iter().map(|p| p.0).collect();
                let scores: Vec<f64> = pairs.iter().map(|p| p.1).collect();
                (labels.iter().any(|&l| l) && labels.iter().any(|&l| !l))
                    .then_some((labels, scores))
            },
        )
    }

    proptest! {
        #[test]
        fn auc_invariant_under_monotone_transform((labels, scores) in arb_scored()) {
            let base = auc(&labels, &scores).unwrap();
            let transformed: Vec<f64> = scores.iter().map(|s| (3.0 * s + 1.0).exp()).collect();
            prop_assert!((auc(&labels, &transformed).unwrap() - base).abs() < 1e-9);
        }

        #[test]
        fn auc_complement_with_negated_scores((labels, scores) in arb_scored()) {
            // With continuous random scores ties have probability zero.
            let a = auc(&labels, &scores).unwrap();
            let negated: Vec<f64> = scores.iter().map(|s| -s).collect();
            let b = auc(&labels, &negated).unwrap();
            prop_assert!((a + b - 1.0).abs() < 1e-9);
        }

        #[test]
        fn accuracy_and_f1_permutation_invariant(
            (labels, scores) in arb_scored(),
            seed in any::<u64>(),
        ) {
            let preds: Vec<bool> = scores.iter().map(|&s| s >= 0.5).collect();
            let base_f1 = f1(&labels, &preds).unwrap();
            let base_acc = accuracy(&labels, &preds).unwrap();
            let mut idx: Vec<usize> = (0..labels.len()).collect();
            crate::rng::SplitMix64::new(seed).shuffle(&mut idx);
            let plabels: Vec<bool> = idx.iter().map(|&i| labels[i]).collect();
            let ppreds: Vec<bool> = idx.iter().map(|&i| preds[i]).collect();
            prop_assert!((f1(&plabels, &ppreds).unwrap() - base_f1).abs() < 1e-12);
            prop_assert!((accuracy(&plabels, &ppreds).unwrap() - base_acc).abs() < 1e-12);
        }
    }
}
