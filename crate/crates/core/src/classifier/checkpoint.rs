//! Versioned text checkpoints: a header describing the architecture plus the
//! flat parameter array as hex-encoded f64 bits, which round-trips exactly.

use super::model::{Model, PARAM_COUNT};
use super::ClassifierError;

const MAGIC: &str = "vnsolve-checkpoint v1";
const ARCH: &str = "conv3x3x8/pool-conv3x3x16/pool-conv3x3x32/pool-gap-fc2";

pub fn save_checkpoint(model: &Model) -> String {
    let mut out = String::with_capacity(PARAM_COUNT * 17 + 128);
    out.push_str(MAGIC);
    out.push('\n');
    out.push_str("arch ");
    out.push_str(ARCH);
    out.push('\n');
    out.push_str(&format!("params {PARAM_COUNT}\n"));
    for p in model.params() {
        out.push_str(&format!("{:016x}\n", p.to_bits()));
    }
    out
}

pub fn load_checkpoint(text: &str) -> Result<Model, ClassifierError> {
    let mut lines = text.lines().enumerate();
    let expect = |got: Option<(usize, &str)>, want: &str| -> Result<(), ClassifierError> {
        match got {
            Some((_, line)) if line == want => Ok(()),
            Some((idx, line)) => Err(ClassifierError::BadCheckpoint {
                line: idx + 1,
                reason: format!("expected {want:?}, found {line:?}"),
            }),
            None => Err(ClassifierError::BadCheckpoint {
                line: 0,
                reason: "checkpoint is empty".into(),
            }),
        }
    };
    expect(lines.next(), MAGIC)?;
    expect(lines.next(), &format!("arch {ARCH}"))?;
    expect(lines.next(), &format!("params {PARAM_COUNT}"))?;
    let mut params = Vec::with_capacity(PARAM_COUNT);
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let bits = u64::from_str_radix(line, 16).map_err(|e| ClassifierError::BadCheckpoint {
            line: idx + 1,
            reason: format!("bad parameter encoding: {e}"),
        })?;
        params.push(f64::from_bits(bits));
    }
    if params.len() != PARAM_COUNT {
        return Err(ClassifierError::BadCheckpoint {
            line: 0,
            reason: format!("expected {PARAM_COUNT} parameters, found {}", params.len()),
        });
    }
    Model::from_params(params)
}
