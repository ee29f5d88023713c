//! Training loop: Adam with per-epoch exponential learning-rate decay,
//! validation-F1 early stopping with patience, best-checkpoint selection.

use super::model::{loss_and_grad, Model, PARAM_COUNT};
use super::{predict, ClassifierError, Tensor};
use crate::metrics;
use crate::rng::SplitMix64;

/// Training hyperparameters. Defaults: lr 0.001 with per-epoch multiplier
/// exp(-0.09), at most 200 epochs, early stop after 8 epochs without a
/// validation-F1 improvement, batches of 32, 4x input downsampling.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub learning_rate: f64,
    /// Decay rate lambda; the learning rate is multiplied by exp(-lambda)
    /// after each epoch.
    pub lr_decay: f64,
    pub max_epochs: usize,
    pub patience: usize,
    pub batch_size: usize,
    /// Average-pooling factor applied to images before the network.
    pub downsample: usize,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            learning_rate: 0.001,
            lr_decay: 0.09,
            max_epochs: 200,
            patience: 8,
            batch_size: 32,
            downsample: 4,
            seed: 0,
        }
    }
}

impl TrainConfig {
    fn validate(&self) -> Result<(), ClassifierError> {
        if self.batch_size == 0 {
            return Err(ClassifierError::BadConfig {
                reason: "batch_size must be at least 1".into(),
            });
        }
        if self.patience == 0 || self.patience >= self.max_epochs {
            return Err(ClassifierError::BadConfig {
                reason: format!(
                    "patience must satisfy 1 <= patience < max_epochs (got {} vs {})",
                    self.patience, self.max_epochs
                ),
            });
        }
        Ok(())
    }
}

/// One row of the training history.
#[derive(Debug, Clone, PartialEq)]
pub struct EpochStats {
    /// 1-based epoch index.
    pub epoch: usize,
    pub train_loss: f64,
    pub val_f1: f64,
    /// Learning rate used during this epoch.
    pub lr: f64,
}

/// Result of a training run: the best checkpoint (not the last), the full
/// per-epoch history, and where the best validation F1 occurred.
#[derive(Debug, Clone)]
pub struct TrainOutcome {
    pub model: Model,
    pub history: Vec<EpochStats>,
    pub best_epoch: usize,
    pub stopped_early: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopDecision {
    Improved,
    Continue,
    Stop,
}

/// Patience-based early stopping on a metric where larger is better. Only a
/// strict improvement resets the counter.
#[derive(Debug, Clone)]
pub struct EarlyStopper {
    patience: usize,
    best: Option<f64>,
    best_epoch: usize,
    since_improvement: usize,
}

impl EarlyStopper {
    pub fn new(patience: usize) -> EarlyStopper {
        assert!(patience >= 1, "patience must be at least 1");
        EarlyStopper {
            patience,
            best: None,
            best_epoch: 0,
            since_improvement: 0,
        }
    }

    pub fn observe(&mut self, epoch: usize, value: f64) -> StopDecision {
        match self.best {
            Some(best) if value <= best => {
                self.since_improvement += 1;
                if self.since_improvement >= self.patience {
                    StopDecision::Stop
                } else {
                    StopDecision::Continue
                }
            }
            _ => {
                self.best = Some(value);
                self.best_epoch = epoch;
                self.since_improvement = 0;
                StopDecision::Improved
            }
        }
    }

    pub fn best_epoch(&self) -> usize {
        self.best_epoch
    }

    pub fn best_value(&self) -> Option<f64> {
        self.best
    }
}

struct Adam {
    m: Vec<f64>,
    v: Vec<f64>,
    t: u64,
    beta1: f64,
    beta2: f64,
    eps: f64,
}

impl Adam {
    fn new() -> Adam {
        Adam {
            m: vec![0.0; PARAM_COUNT],
            v: vec![0.0; PARAM_COUNT],
            t: 0,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
        }
    }

    fn step(&mut self, params: &mut [f64], grads: &[f64], lr: f64) {
        self.t += 1;
        let bc1 = 1.0 - self.beta1.powi(self.t as i32);
        let bc2 = 1.0 - self.beta2.powi(self.t as i32);
        for k in 0..params.len() {
            let g = grads[k];
            self.m[k] = self.beta1 * self.m[k] + (1.0 - self.beta1) * g;
            self.v[k] = self.beta2 * self.v[k] + (1.0 - self.beta2) * g * g;
            let m_hat = self.m[k] / bc1;
            let v_hat = self.v[k] / bc2;
            params[k] -= lr * m_hat / (v_hat.sqrt() + self.eps);
        }
    }
}

/// Trains a fresh model and returns the checkpoint with the best validation
/// F1 seen. Fully deterministic in `(inputs, config)`.
pub fn train(
    train_images: &[Tensor],
    train_labels: &[bool],
    val_images: &[Tensor],
    val_labels: &[bool],
    cfg: &TrainConfig,
) -> Result<TrainOutcome, ClassifierError> {
    cfg.validate()?;
    if train_images.is_empty() {
        return Err(ClassifierError::EmptySplit { which: "train" });
    }
    if val_images.is_empty() {
        return Err(ClassifierError::EmptySplit { which: "validation" });
    }
    if train_images.len() != train_labels.len() {
        return Err(ClassifierError::LabelMismatch {
            images: train_images.len(),
            labels: train_labels.len(),
        });
    }
    if val_images.len() != val_labels.len() {
        return Err(ClassifierError::LabelMismatch {
            images: val_images.len(),
            labels: val_labels.len(),
        });
    }

    let mut model = Model::init(cfg.seed);
    let mut adam = Adam::new();
    let mut shuffle_rng = SplitMix64::stream(cfg.seed, 0x5348_5546); // "SHUF"
    let mut stopper = EarlyStopper::new(cfg.patience);
    let mut best_params: Vec<f64> = model.params().to_vec();
    let mut history = Vec::new();
    let mut stopped_early = false;

    let mut order: Vec<usize> = (0..train_images.len()).collect();
    for epoch in 1..=cfg.max_epochs {
        let lr = cfg.learning_rate * (-cfg.lr_decay * (epoch - 1) as f64).exp();
        shuffle_rng.shuffle(&mut order);
        let mut loss_sum = 0.0f64;
        for batch in order.chunks(cfg.batch_size) {
            let images: Vec<Tensor> = batch.iter().map(|&i| train_images[i].clone()).collect();
            let labels: Vec<bool> = batch.iter().map(|&i| train_labels[i]).collect();
            let (loss, grads) = loss_and_grad(&model, &images, &labels)?;
            adam.step(model.params_mut(), &grads, lr);
            loss_sum += loss * batch.len() as f64;
        }
        let train_loss = loss_sum / train_images.len() as f64;

        let (preds, _) = predict(&model, val_images)?;
        let val_f1 = metrics::f1(val_labels, &preds).expect("validation split is nonempty");
        history.push(EpochStats {
            epoch,
            train_loss,
            val_f1,
            lr,
        });
        match stopper.observe(epoch, val_f1) {
            StopDecision::Improved => best_params = model.params().to_vec(),
            StopDecision::Continue => {}
            StopDecision::Stop => {
                stopped_early = true;
                break;
            }
        }
    }

    Ok(TrainOutcome {
        model: Model::from_params(best_params)?,
        history,
        best_epoch: stopper.best_epoch(),
        stopped_early,
    })
}

/// History as CSV with the fixed header `epoch,train_loss,val_f1,lr`.
pub fn history_csv(history: &[EpochStats]) -> String {
    let mut out = String::from("epoch,train_loss,val_f1,lr\n");
    for row in history {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.epoch, row.train_loss, row.val_f1, row.lr
        ));
    }
    out
}
