//! Model parameters, forward pass, and analytic gradients.
//!
//! Parameters live in one flat array with a fixed layout so the optimizer,
//! checkpoints, and gradient checks all see the same indexing:
//!
//! | offset | size | content            |
//! |--------|------|--------------------|
//! | 0      | 216  | conv1 weights 8x3x3x3 |
//! | 216    | 8    | conv1 bias         |
//! | 224    | 1152 | conv2 weights 16x8x3x3 |
//! | 1376   | 16   | conv2 bias         |
//! | 1392   | 4608 | conv3 weights 32x16x3x3 |
//! | 6000   | 32   | conv3 bias         |
//! | 6032   | 64   | head weights 2x32  |
//! | 6096   | 2    | head bias          |

use super::{ClassifierError, Tensor};
use crate::rng::SplitMix64;
use rayon::prelude::*;

/// Channel counts per stage: input, then the three conv blocks.
pub const CHANNELS: [usize; 4] = [3, 8, 16, 32];
pub const CLASSES: usize = 2;

const C1W: usize = 0;
const C1B: usize = C1W + CHANNELS[1] * CHANNELS[0] * 9;
const C2W: usize = C1B + CHANNELS[1];
const C2B: usize = C2W + CHANNELS[2] * CHANNELS[1] * 9;
const C3W: usize = C2B + CHANNELS[2];
const C3B: usize = C3W + CHANNELS[3] * CHANNELS[2] * 9;
const FCW: usize = C3B + CHANNELS[3];
const FCB: usize = FCW + CLASSES * CHANNELS[3];

/// Total number of trainable parameters.
pub const PARAM_COUNT: usize = FCB + CLASSES;

/// The classifier: a parameter vector plus the fixed architecture above.
/// Accepts square inputs with side divisible by 8 (canonically 3x56x56).
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    params: Vec<f64>,
}

impl Model {
    /// He-uniform initialization of all weights, zero biases.
    pub fn init(seed: u64) -> Model {
        let mut rng = SplitMix64::stream(seed, 0x4d4f_4445_4c); // "MODEL"
        let mut params = vec![0.0f64; PARAM_COUNT];
        let spans = [
            (C1W, C1B, CHANNELS[0] * 9),
            (C2W, C2B, CHANNELS[1] * 9),
            (C3W, C3B, CHANNELS[2] * 9),
            (FCW, FCB, CHANNELS[3]),
        ];
        for (start, end, fan_in) in spans {
            let limit = (6.0 / fan_in as f64).sqrt();
            for p in &mut params[start..end] {
                *p = rng.next_range_f64(-limit, limit);
            }
        }
        Model { params }
    }

    pub fn from_params(params: Vec<f64>) -> Result<Model, ClassifierError> {
        if params.len() != PARAM_COUNT {
            return Err(ClassifierError::BadConfig {
                reason: format!(
                    "expected {PARAM_COUNT} parameters, got {}",
                    params.len()
                ),
            });
        }
        Ok(Model { params })
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn params_mut(&mut self) -> &mut [f64] {
        &mut self.params
    }

    /// Logits for one input tensor.
    pub fn forward(&self, x: &Tensor) -> Result<[f64; 2], ClassifierError> {
        let side = check_input(x)?;
        Ok(run_forward(&self.params, x.data(), side).logits)
    }
}

fn check_input(x: &Tensor) -> Result<usize, ClassifierError> {
    let shape = x.shape();
    let ok = shape.len() == 3
        && shape[0] == CHANNELS[0]
        && shape[1] == shape[2]
        && shape[1] >= 8
        && shape[1] % 8 == 0;
    if !ok {
        return Err(ClassifierError::ShapeMismatch {
            expected: "3 x S x S with S a positive multiple of 8".into(),
            got: shape.to_vec(),
        });
    }
    Ok(shape[1])
}

/// Numerically stable softmax over two logits; components sum to 1.
pub fn softmax2(logits: [f64; 2]) -> [f64; 2] {
    let m = logits[0].max(logits[1]);
    let e0 = (logits[0] - m).exp();
    let e1 = (logits[1] - m).exp();
    let z = e0 + e1;
    [e0 / z, e1 / z]
}

struct ForwardState {
    /// Post-ReLU conv maps, one per block.
    relu: [Vec<f64>; 3],
    /// Pooled maps, one per block.
    pooled: [Vec<f64>; 3],
    /// Argmax index (0..4) of each pooling window.
    pool_arg: [Vec<u8>; 3],
    /// Global average over the last pooled map.
    gap: Vec<f64>,
    logits: [f64; 2],
}

fn run_forward(params: &[f64], input: &[f64], side: usize) -> ForwardState {
    let mut relu: [Vec<f64>; 3] = Default::default();
    let mut pooled: [Vec<f64>; 3] = Default::default();
    let mut pool_arg: [Vec<u8>; 3] = Default::default();
    let specs = [(C1W, C1B), (C2W, C2B), (C3W, C3B)];
    let mut current: &[f64] = input;
    let mut s = side;
    for block in 0..3 {
        let (in_ch, out_ch) = (CHANNELS[block], CHANNELS[block + 1]);
        let (wofs, bofs) = specs[block];
        let mut conv = vec![0.0f64; out_ch * s * s];
        conv3x3_forward(
            current,
            in_ch,
            s,
            &params[wofs..wofs + out_ch * in_ch * 9],
            &params[bofs..bofs + out_ch],
            out_ch,
            &mut conv,
        );
        for v in &mut conv {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        let half = s / 2;
        let mut pool = vec![0.0f64; out_ch * half * half];
        let mut arg = vec![0u8; out_ch * half * half];
        maxpool2_forward(&conv, out_ch, s, &mut pool, &mut arg);
        relu[block] = conv;
        pooled[block] = pool;
        pool_arg[block] = arg;
        current = &pooled[block];
        s = half;
    }

    let area = s * s;
    let gap: Vec<f64> = (0..CHANNELS[3])
        .map(|c| pooled[2][c * area..(c + 1) * area].iter().sum::<f64>() / area as f64)
        .collect();
    let mut logits = [0.0f64; 2];
    for (k, logit) in logits.iter_mut().enumerate() {
        let row = &params[FCW + k * CHANNELS[3]..FCW + (k + 1) * CHANNELS[3]];
        *logit = params[FCB + k]
            + row.iter().zip(&gap).map(|(w, g)| w * g).sum::<f64>();
    }
    ForwardState {
        relu,
        pooled,
        pool_arg,
        gap,
        logits,
    }
}

fn conv3x3_forward(
    input: &[f64],
    in_ch: usize,
    side: usize,
    weights: &[f64],
    bias: &[f64],
    out_ch: usize,
    output: &mut [f64],
) {
    let area = side * side;
    for o in 0..out_ch {
        let out_plane = &mut output[o * area..(o + 1) * area];
        out_plane.fill(bias[o]);
        for i in 0..in_ch {
            let in_plane = &input[i * area..(i + 1) * area];
            let w = &weights[(o * in_ch + i) * 9..(o * in_ch + i + 1) * 9];
            for ky in 0..3usize {
                for kx in 0..3usize {
                    let wv = w[ky * 3 + kx];
                    if wv == 0.0 {
                        continue;
                    }
                    let (dy, dx) = (ky as isize - 1, kx as isize - 1);
                    let y_lo = (-dy).max(0) as usize;
                    let y_hi = (side as isize - dy).min(side as isize) as usize;
                    let x_lo = (-dx).max(0) as usize;
                    let x_hi = (side as isize - dx).min(side as isize) as usize;
                    for y in y_lo..y_hi {
                        let src_row = ((y as isize + dy) as usize) * side;
                        let dst_row = y * side;
                        for x in x_lo..x_hi {
                            out_plane[dst_row + x] +=
                                wv * in_plane[src_row + (x as isize + dx) as usize];
                        }
                    }
                }
            }
        }
    }
}

fn maxpool2_forward(input: &[f64], ch: usize, side: usize, output: &mut [f64], argmax: &mut [u8]) {
    let half = side / 2;
    for c in 0..ch {
        let plane = &input[c * side * side..(c + 1) * side * side];
        for y in 0..half {
            for x in 0..half {
                let base = (2 * y) * side + 2 * x;
                let candidates = [plane[base], plane[base + 1], plane[base + side], plane[base + side + 1]];
                let mut best = 0usize;
                for k in 1..4 {
                    if candidates[k] > candidates[best] {
                        best = k;
                    }
                }
                output[c * half * half + y * half + x] = candidates[best];
                argmax[c * half * half + y * half + x] = best as u8;
            }
        }
    }
}

fn maxpool2_backward(
    d_out: &[f64],
    argmax: &[u8],
    ch: usize,
    side: usize,
    d_input: &mut [f64],
) {
    let half = side / 2;
    d_input.fill(0.0);
    for c in 0..ch {
        for y in 0..half {
            for x in 0..half {
                let idx = c * half * half + y * half + x;
                let a = argmax[idx] as usize;
                let base = c * side * side + (2 * y) * side + 2 * x;
                let offset = match a {
                    0 => 0,
                    1 => 1,
                    2 => side,
                    _ => side + 1,
                };
                d_input[base + offset] += d_out[idx];
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn conv3x3_backward(
    input: &[f64],
    in_ch: usize,
    side: usize,
    weights: &[f64],
    out_ch: usize,
    d_conv: &[f64],
    d_weights: &mut [f64],
    d_bias: &mut [f64],
    mut d_input: Option<&mut [f64]>,
) {
    let area = side * side;
    if let Some(di) = d_input.as_deref_mut() {
        di.fill(0.0);
    }
    for o in 0..out_ch {
        let d_plane = &d_conv[o * area..(o + 1) * area];
        d_bias[o] += d_plane.iter().sum::<f64>();
        for i in 0..in_ch {
            let in_plane = &input[i * area..(i + 1) * area];
            let dw = &mut d_weights[(o * in_ch + i) * 9..(o * in_ch + i + 1) * 9];
            for ky in 0..3usize {
                for kx in 0..3usize {
                    let (dy, dx) = (ky as isize - 1, kx as isize - 1);
                    let y_lo = (-dy).max(0) as usize;
                    let y_hi = (side as isize - dy).min(side as isize) as usize;
                    let x_lo = (-dx).max(0) as usize;
                    let x_hi = (side as isize - dx).min(side as isize) as usize;
                    let mut acc = 0.0f64;
                    for y in y_lo..y_hi {
                        let src_row = ((y as isize + dy) as usize) * side;
                        let dst_row = y * side;
                        for x in x_lo..x_hi {
                            acc += d_plane[dst_row + x] * in_plane[src_row + (x as isize + dx) as usize];
                        }
                    }
                    dw[ky * 3 + kx] += acc;
                }
            }
            if let Some(di) = d_input.as_deref_mut() {
                let di_plane = &mut di[i * area..(i + 1) * area];
                let w = &weights[(o * in_ch + i) * 9..(o * in_ch + i + 1) * 9];
                for ky in 0..3usize {
                    for kx in 0..3usize {
                        let wv = w[ky * 3 + kx];
                        if wv == 0.0 {
                            continue;
                        }
                        let (dy, dx) = (ky as isize - 1, kx as isize - 1);
                        let y_lo = (-dy).max(0) as usize;
                        let y_hi = (side as isize - dy).min(side as isize) as usize;
                        let x_lo = (-dx).max(0) as usize;
                        let x_hi = (side as isize - dx).min(side as isize) as usize;
                        for y in y_lo..y_hi {
                            let src_row = ((y as isize + dy) as usize) * side;
                            let dst_row = y * side;
                            for x in x_lo..x_hi {
                                di_plane[src_row + (x as isize + dx) as usize] +=
                                    wv * d_plane[dst_row + x];
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Loss and gradient of one sample. `label` is the class index (1 = positive).
fn sample_loss_grad(params: &[f64], x: &[f64], side: usize, label: usize) -> (f64, Vec<f64>) {
    let state = run_forward(params, x, side);
    let probs = softmax2(state.logits);
    let loss = -probs[label].max(f64::MIN_POSITIVE).ln();

    let mut grads = vec![0.0f64; PARAM_COUNT];
    let mut d_logits = probs;
    d_logits[label] -= 1.0;

    // Head.
    let s3 = side / 8;
    let area3 = s3 * s3;
    let mut d_gap = vec![0.0f64; CHANNELS[3]];
    for k in 0..CLASSES {
        grads[FCB + k] += d_logits[k];
        for c in 0..CHANNELS[3] {
            grads[FCW + k * CHANNELS[3] + c] += d_logits[k] * state.gap[c];
            d_gap[c] += d_logits[k] * params[FCW + k * CHANNELS[3] + c];
        }
    }

    // Global average pool.
    let mut d_pool3 = vec![0.0f64; CHANNELS[3] * area3];
    for c in 0..CHANNELS[3] {
        let g = d_gap[c] / area3 as f64;
        d_pool3[c * area3..(c + 1) * area3].fill(g);
    }

    // Walk the blocks backwards.
    let specs = [(C1W, C1B), (C2W, C2B), (C3W, C3B)];
    let mut d_pool = d_pool3;
    for block in (0..3).rev() {
        let (in_ch, out_ch) = (CHANNELS[block], CHANNELS[block + 1]);
        let (wofs, bofs) = specs[block];
        let conv_side = side >> block;
        let mut d_conv = vec![0.0f64; out_ch * conv_side * conv_side];
        maxpool2_backward(&d_pool, &state.pool_arg[block], out_ch, conv_side, &mut d_conv);
        // ReLU mask from the stored post-activation map.
        for (d, &v) in d_conv.iter_mut().zip(&state.relu[block]) {
            if v <= 0.0 {
                *d = 0.0;
            }
        }
        let block_input: &[f64] = if block == 0 { x } else { &state.pooled[block - 1] };
        let (dw, db) = {
            let (head, tail) = grads.split_at_mut(bofs);
            (&mut head[wofs..], &mut tail[..out_ch])
        };
        let mut d_input = if block > 0 {
            Some(vec![0.0f64; in_ch * conv_side * conv_side])
        } else {
            None
        };
        conv3x3_backward(
            block_input,
            in_ch,
            conv_side,
            &params[wofs..wofs + out_ch * in_ch * 9],
            out_ch,
            &d_conv,
            dw,
            db,
            d_input.as_deref_mut(),
        );
        if let Some(di) = d_input {
            d_pool = di;
        }
    }

    (loss, grads)
}

/// Mean cross-entropy loss and flat gradient over a batch.
///
/// Per-sample passes run in parallel; the reduction over samples is a fixed
/// sequential sum, so results are bit-identical regardless of thread count.
pub fn loss_and_grad(
    model: &Model,
    images: &[Tensor],
    labels: &[bool],
) -> Result<(f64, Vec<f64>), ClassifierError> {
    if images.is_empty() {
        return Err(ClassifierError::EmptySplit { which: "batch" });
    }
    if images.len() != labels.len() {
        return Err(ClassifierError::LabelMismatch {
            images: images.len(),
            labels: labels.len(),
        });
    }
    for x in images {
        check_input(x)?;
    }
    let per_sample: Vec<(f64, Vec<f64>)> = images
        .par_iter()
        .zip(labels.par_iter())
        .map(|(x, &label)| {
            sample_loss_grad(model.params(), x.data(), x.shape()[1], usize::from(label))
        })
        .collect();
    let scale = 1.0 / images.len() as f64;
    let mut loss = 0.0f64;
    let mut grads = vec![0.0f64; PARAM_COUNT];
    for (l, g) in &per_sample {
        loss += l;
        for (acc, v) in grads.iter_mut().zip(g) {
            *acc += v;
        }
    }
    loss *= scale;
    for g in &mut grads {
        *g *= scale;
    }
    Ok((loss, grads))
}
