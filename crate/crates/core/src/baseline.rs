//! Feature-oblivious baseline: predicts from the class prior estimated on
//! training labels, ignoring the instance entirely.

use crate::rng::SplitMix64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BaselineError {
    #[error("cannot fit a prior on empty labels")]
    EmptyLabels,
}

/// Class prior over {negative, positive}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prior {
    pub p_positive: f64,
}

/// Estimates the positive-class prior as the fraction of true labels.
pub fn fit_prior(labels: &[bool]) -> Result<Prior, BaselineError> {
    if labels.is_empty() {
        return Err(BaselineError::EmptyLabels);
    }
    let positives = labels.iter().filter(|&&l| l).count();
    Ok(Prior {
        p_positive: positives as f64 / labels.len() as f64,
    })
}

/// Draws `count` independent predictions: true with probability `p_positive`.
///
/// Every score is the constant `p_positive`; with the tie-counting AUC this
/// pins the baseline's AUC at exactly 0.5.
pub fn predict(prior: &Prior, count: usize, seed: u64) -> (Vec<bool>, Vec<f64>) {
    let mut rng = SplitMix64::stream(seed, 0x5052_494f_52); // "PRIOR"
    let labels = (0..count).map(|_| rng.next_f64() < prior.p_positive).collect();
    let scores = vec![prior.p_positive; count];
    (labels, scores)
}
