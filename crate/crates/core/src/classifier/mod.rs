//! Compact convolutional classifier over rendered graph images, trained from
//! scratch in double precision.
//!
//! The architecture is fixed: three 3x3 conv + ReLU + 2x2 maxpool blocks
//! (3->8->16->32 channels), global average pooling, and a 32->2 affine head.
//! Everything is deterministic given a seed: initialization, batch order,
//! and every reduction happens in a fixed order.

mod checkpoint;
mod model;
mod train;

pub use checkpoint::{load_checkpoint, save_checkpoint};
pub use model::{loss_and_grad, softmax2, Model, PARAM_COUNT};
pub use train::{
    history_csv, train, EarlyStopper, EpochStats, StopDecision, TrainConfig, TrainOutcome,
};

use crate::raster::Image;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifierError {
    #[error("tensor shape {got:?} does not match expected {expected}")]
    ShapeMismatch { expected: String, got: Vec<usize> },
    #[error("image {width}x{height} is not divisible by downsample factor {factor}")]
    BadDownsample { width: u32, height: u32, factor: usize },
    #[error("{which} split is empty")]
    EmptySplit { which: &'static str },
    #[error("{images} images but {labels} labels")]
    LabelMismatch { images: usize, labels: usize },
    #[error("invalid training config: {reason}")]
    BadConfig { reason: String },
    #[error("malformed checkpoint at line {line}: {reason}")]
    BadCheckpoint { line: usize, reason: String },
}

/// Dense row-major tensor of f64 values.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    shape: Vec<usize>,
    data: Vec<f64>,
}

impl Tensor {
    pub fn new(shape: Vec<usize>, data: Vec<f64>) -> Tensor {
        assert_eq!(shape.iter().product::<usize>(), data.len());
        debug_assert!(data.iter().all(|v| v.is_finite()));
        Tensor { shape, data }
    }

    pub fn zeros(shape: Vec<usize>) -> Tensor {
        let len = shape.iter().product();
        Tensor {
            shape,
            data: vec![0.0; len],
        }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }
}

/// Converts an RGB image into a normalized `3 x (h/d) x (w/d)` tensor:
/// channels scaled to [0,1], average-pooled by the downsample factor, then
/// shifted to [-1,1] by the fixed mean 0.5 and scale 0.5.
pub fn preprocess(img: &Image, downsample: usize) -> Result<Tensor, ClassifierError> {
    let (w, h) = (img.width() as usize, img.height() as usize);
    if downsample == 0 || w % downsample != 0 || h % downsample != 0 {
        return Err(ClassifierError::BadDownsample {
            width: img.width(),
            height: img.height(),
            factor: downsample,
        });
    }
    let (ow, oh) = (w / downsample, h / downsample);
    let mut data = vec![0.0f64; 3 * oh * ow];
    let pixels = img.pixels();
    let inv = 1.0 / (255.0 * (downsample * downsample) as f64);
    for c in 0..3 {
        for oy in 0..oh {
            for ox in 0..ow {
                let mut acc = 0.0f64;
                for dy in 0..downsample {
                    let y = oy * downsample + dy;
                    let row = y * w;
                    for dx in 0..downsample {
                        let x = ox * downsample + dx;
                        acc += pixels[(row + x) * 3 + c] as f64;
                    }
                }
                data[c * oh * ow + oy * ow + ox] = (acc * inv - 0.5) / 0.5;
            }
        }
    }
    Ok(Tensor::new(vec![3, oh, ow], data))
}

/// Runs the model over a set of images: scores are the softmax probability of
/// the positive class, labels are `score >= 0.5`.
pub fn predict(model: &Model, images: &[Tensor]) -> Result<(Vec<bool>, Vec<f64>), ClassifierError> {
    let scores: Vec<f64> = images
        .par_iter()
        .map(|x| model.forward(x).map(|logits| softmax2(logits)[1]))
        .collect::<Result<_, _>>()?;
    let labels = scores.iter().map(|&s| s >= 0.5).collect();
    Ok((labels, scores))
}
