//! Declarative experiment configs: an INI-style text file with `[section]`
//! headers and `key = value` lines drives the whole pipeline. `--set
//! section.key=value` overrides individual entries, and `[sweep <name>]`
//! sections declare parameter grids.

use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};

use vnsolve_core::classifier::TrainConfig;
use vnsolve_core::dataset::{SplitSpec, SyntheticSpec};
use vnsolve_core::layout::{LayoutKind, LayoutSpec};
use vnsolve_core::oracle::DEFAULT_EXPANSION_BUDGET;
use vnsolve_core::raster::{ColorScheme, RenderSpec};

#[derive(Debug)]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "config line {}: {}", self.line, self.message)
        } else {
            write!(f, "config: {}", self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

fn err(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError {
        line,
        message: message.into(),
    }
}

/// Parsed but untyped config: sections of `(key, value, line)` in file order.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    sections: Vec<(String, Vec<(String, String, usize)>)>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<RawConfig, ConfigError> {
        let mut raw = RawConfig::default();
        let mut current: Option<usize> = None;
        for (idx, line_raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = line_raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
                continue;
            }
            if let Some(stripped) = line.strip_prefix('[') {
                let name = stripped
                    .strip_suffix(']')
                    .ok_or_else(|| err(line_no, "unclosed section header"))?
                    .trim()
                    .to_string();
                if name.is_empty() {
                    return Err(err(line_no, "empty section name"));
                }
                raw.sections.push((name, Vec::new()));
                current = Some(raw.sections.len() - 1);
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(line_no, format!("expected `key = value`, found {line:?}")))?;
            let section = current.ok_or_else(|| err(line_no, "key outside any [section]"))?;
            raw.sections[section].1.push((
                key.trim().to_string(),
                value.trim().to_string(),
                line_no,
            ));
        }
        Ok(raw)
    }

    /// Applies a `section.key=value` override, creating the entry if needed.
    pub fn set(&mut self, dotted_key: &str, value: &str) -> Result<(), ConfigError> {
        let (section, key) = dotted_key.split_once('.').ok_or_else(|| {
            err(
                0,
                format!("override {dotted_key:?} must look like section.key"),
            )
        })?;
        let entry = self
            .sections
            .iter_mut()
            .find(|(name, _)| name == section);
        let items = match entry {
            Some((_, items)) => items,
            None => {
                self.sections.push((section.to_string(), Vec::new()));
                &mut self.sections.last_mut().unwrap().1
            }
        };
        if let Some(slot) = items.iter_mut().find(|(k, _, _)| k == key) {
            slot.1 = value.to_string();
        } else {
            items.push((key.to_string(), value.to_string(), 0));
        }
        Ok(())
    }

    fn section(&self, name: &str) -> Option<&[(String, String, usize)]> {
        self.sections
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, items)| items.as_slice())
    }

    fn get(&self, section: &str, key: &str) -> Option<(&str, usize)> {
        self.section(section)?
            .iter()
            .find(|(k, _, _)| k == key)
            .map(|(_, v, line)| (v.as_str(), *line))
    }
}

fn parse_value<T: std::str::FromStr>(
    raw: &RawConfig,
    section: &str,
    key: &str,
    default: T,
) -> Result<T, ConfigError> {
    match raw.get(section, key) {
        None => Ok(default),
        Some((text, line)) => text.parse().map_err(|_| {
            err(
                line,
                format!(
                    "{section}.{key}: cannot parse {text:?} as {}",
                    std::any::type_name::<T>()
                ),
            )
        }),
    }
}

fn parse_list<T: std::str::FromStr>(
    text: &str,
    line: usize,
    what: &str,
) -> Result<Vec<T>, ConfigError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| err(line, format!("{what}: cannot parse {s:?}")))
        })
        .collect()
}

/// How the corpus is produced.
#[derive(Debug, Clone, PartialEq)]
pub enum CorpusSettings {
    Synthetic(SyntheticSpec),
    Ingest {
        files: Vec<PathBuf>,
        oracle_budget: u64,
    },
}

/// One named sweep: an ordered list of `(section.key, values)` axes.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub name: String,
    pub axes: Vec<(String, Vec<String>)>,
}

impl Sweep {
    /// Cross product in file order, each combo as `(dotted_key, value)` pairs.
    pub fn combos(&self) -> Vec<Vec<(String, String)>> {
        let mut out: Vec<Vec<(String, String)>> = vec![Vec::new()];
        for (key, values) in &self.axes {
            let mut next = Vec::with_capacity(out.len() * values.len());
            for combo in &out {
                for v in values {
                    let mut c = combo.clone();
                    c.push((key.clone(), v.clone()));
                    next.push(c);
                }
            }
            out = next;
        }
        out
    }
}

/// Fully validated experiment configuration.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub out_dir: PathBuf,
    pub seeds: Vec<u64>,
    pub corpus: CorpusSettings,
    pub layout: LayoutSpec,
    pub render: RenderSpec,
    pub split: SplitSpec,
    pub train: TrainConfig,
    pub sweeps: Vec<Sweep>,
}

const KNOWN_SECTIONS: [&str; 6] = ["experiment", "corpus", "layout", "render", "split", "train"];
const KNOWN_KEYS: [(&str, &[&str]); 6] = [
    ("experiment", &["out_dir", "seeds"]),
    (
        "corpus",
        &[
            "mode",
            "files",
            "n_min",
            "n_max",
            "size",
            "positive_fraction",
            "density_min",
            "density_max",
            "seed",
            "oracle_budget",
        ],
    ),
    ("layout", &["kind", "a", "b", "r", "seed"]),
    (
        "render",
        &[
            "width",
            "height",
            "node_scale",
            "edge_scale",
            "scheme",
            "color_seed",
            "background",
            "margin_frac",
        ],
    ),
    ("split", &["train_total", "test_total", "val_fraction", "seed"]),
    (
        "train",
        &[
            "learning_rate",
            "lr_decay",
            "max_epochs",
            "patience",
            "batch_size",
            "downsample",
            "seed",
        ],
    ),
];

impl ExperimentConfig {
    pub fn from_raw(raw: &RawConfig, config_dir: &Path) -> Result<ExperimentConfig, ConfigError> {
        // Reject unknown sections and keys so typos fail loudly.
        for (name, items) in &raw.sections {
            if name.starts_with("sweep") {
                continue;
            }
            let known = KNOWN_KEYS.iter().find(|(s, _)| s == name);
            match known {
                None => {
                    let line = items.first().map(|(_, _, l)| *l).unwrap_or(0);
                    return Err(err(line, format!("unknown section [{name}]")));
                }
                Some((_, keys)) => {
                    for (key, _, line) in items {
                        if !keys.contains(&key.as_str()) {
                            return Err(err(*line, format!("unknown key {name}.{key}")));
                        }
                    }
                }
            }
        }
        let _ = KNOWN_SECTIONS;

        let out_dir = match raw.get("experiment", "out_dir") {
            Some((v, _)) => {
                let p = PathBuf::from(v);
                if p.is_absolute() {
                    p
                } else {
                    config_dir.join(p)
                }
            }
            None => return Err(err(0, "experiment.out_dir is required")),
        };
        let seeds: Vec<u64> = match raw.get("experiment", "seeds") {
            Some((v, line)) => parse_list(v, line, "experiment.seeds")?,
            None => vec![1, 2, 3, 4, 5],
        };
        if seeds.is_empty() {
            return Err(err(0, "experiment.seeds must not be empty"));
        }
        if seeds.iter().collect::<HashSet<_>>().len() != seeds.len() {
            return Err(err(0, "experiment.seeds contains duplicates"));
        }

        let corpus = match raw.get("corpus", "mode") {
            Some(("synthetic", _)) => {
                let defaults = SyntheticSpec::default();
                CorpusSettings::Synthetic(SyntheticSpec {
                    n_min: parse_value(raw, "corpus", "n_min", 6)?,
                    n_max: parse_value(raw, "corpus", "n_max", 15)?,
                    size: parse_value(raw, "corpus", "size", 1600)?,
                    positive_fraction: parse_value(raw, "corpus", "positive_fraction", 0.55)?,
                    density_min: parse_value(raw, "corpus", "density_min", defaults.density_min)?,
                    density_max: parse_value(raw, "corpus", "density_max", defaults.density_max)?,
                    seed: parse_value(raw, "corpus", "seed", 0)?,
                    oracle_budget: parse_value(
                        raw,
                        "corpus",
                        "oracle_budget",
                        DEFAULT_EXPANSION_BUDGET,
                    )?,
                })
            }
            Some(("ingest", _)) => {
                let (files_text, line) = raw
                    .get("corpus", "files")
                    .ok_or_else(|| err(0, "corpus.files is required in ingest mode"))?;
                let files: Vec<PathBuf> = files_text
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        let p = PathBuf::from(s);
                        if p.is_absolute() {
                            p
                        } else {
                            config_dir.join(p)
                        }
                    })
                    .collect();
                if files.is_empty() {
                    return Err(err(line, "corpus.files lists no files"));
                }
                CorpusSettings::Ingest {
                    files,
                    oracle_budget: parse_value(
                        raw,
                        "corpus",
                        "oracle_budget",
                        DEFAULT_EXPANSION_BUDGET,
                    )?,
                }
            }
            Some((other, line)) => {
                return Err(err(
                    line,
                    format!("corpus.mode must be synthetic or ingest, got {other:?}"),
                ))
            }
            None => return Err(err(0, "corpus.mode is required (synthetic or ingest)")),
        };

        let layout_kind = match raw.get("layout", "kind") {
            None => LayoutKind::Circular,
            Some(("circular", _)) => LayoutKind::Circular,
            Some(("spiral", _)) => LayoutKind::Spiral,
            Some(("random", _)) => LayoutKind::Random,
            Some((other, line)) => {
                return Err(err(
                    line,
                    format!("layout.kind must be circular, spiral, or random, got {other:?}"),
                ))
            }
        };
        let layout = LayoutSpec {
            kind: layout_kind,
            a: parse_value(raw, "layout", "a", 1.0)?,
            b: parse_value(raw, "layout", "b", 1.0)?,
            r: parse_value(raw, "layout", "r", 0.3)?,
            seed: parse_value(raw, "layout", "seed", 0)?,
        };

        let scheme = match raw.get("render", "scheme") {
            None => ColorScheme::Gray,
            Some(("gray", _)) => ColorScheme::Gray,
            Some(("uniform", _)) => ColorScheme::Uniform,
            Some(("random", _)) => ColorScheme::Random,
            Some((other, line)) => {
                return Err(err(
                    line,
                    format!("render.scheme must be gray, uniform, or random, got {other:?}"),
                ))
            }
        };
        let background = match raw.get("render", "background") {
            None => [255, 255, 255],
            Some((text, line)) => {
                let parts: Vec<u8> = parse_list(text, line, "render.background")?;
                match parts.as_slice() {
                    [r, g, b] => [*r, *g, *b],
                    _ => {
                        return Err(err(
                            line,
                            "render.background needs three comma-separated bytes",
                        ))
                    }
                }
            }
        };
        let render = RenderSpec {
            width: parse_value(raw, "render", "width", 224)?,
            height: parse_value(raw, "render", "height", 224)?,
            node_scale: parse_value(raw, "render", "node_scale", 1.0)?,
            edge_scale: parse_value(raw, "render", "edge_scale", 1.0)?,
            scheme,
            color_seed: parse_value(raw, "render", "color_seed", 0)?,
            background,
            margin_frac: parse_value(raw, "render", "margin_frac", 0.05)?,
        };

        let split = SplitSpec {
            train_total: parse_value(raw, "split", "train_total", 1000)?,
            test_total: parse_value(raw, "split", "test_total", 500)?,
            val_fraction: parse_value(raw, "split", "val_fraction", 0.2)?,
            seed: parse_value(raw, "split", "seed", 0)?,
        };

        let train = TrainConfig {
            learning_rate: parse_value(raw, "train", "learning_rate", 0.001)?,
            lr_decay: parse_value(raw, "train", "lr_decay", 0.09)?,
            max_epochs: parse_value(raw, "train", "max_epochs", 200)?,
            patience: parse_value(raw, "train", "patience", 8)?,
            batch_size: parse_value(raw, "train", "batch_size", 32)?,
            downsample: parse_value(raw, "train", "downsample", 4)?,
            seed: parse_value(raw, "train", "seed", 0)?,
        };

        let mut sweeps = Vec::new();
        for (name, items) in &raw.sections {
            if let Some(rest) = name.strip_prefix("sweep") {
                let sweep_name = rest.trim().to_string();
                let sweep_name = if sweep_name.is_empty() {
                    "sweep".to_string()
                } else {
                    sweep_name
                };
                let mut axes = Vec::new();
                for (key, value, line) in items {
                    if !key.contains('.') {
                        return Err(err(
                            *line,
                            format!("sweep key {key:?} must be section.key"),
                        ));
                    }
                    let values: Vec<String> = value
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(str::to_string)
                        .collect();
                    if values.is_empty() {
                        return Err(err(*line, format!("sweep axis {key} lists no values")));
                    }
                    axes.push((key.clone(), values));
                }
                sweeps.push(Sweep {
                    name: sweep_name,
                    axes,
                });
            }
        }

        Ok(ExperimentConfig {
            out_dir,
            seeds,
            corpus,
            layout,
            render,
            split,
            train,
            sweeps,
        })
    }

    pub fn sweep(&self, name: &str) -> Option<&Sweep> {
        self.sweeps.iter().find(|s| s.name == name)
    }
}

/// Loads a config file and applies `section.key=value` overrides in order.
pub fn load_config(
    path: &Path,
    overrides: &[(String, String)],
) -> anyhow::Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read config {}: {e}", path.display()))?;
    let mut raw = RawConfig::parse(&text)
        .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
    for (key, value) in overrides {
        raw.set(key, value)
            .map_err(|e| anyhow::anyhow!("--set {key}: {e}"))?;
    }
    let config_dir = path.parent().unwrap_or(Path::new("."));
    ExperimentConfig::from_raw(&raw, config_dir)
        .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
}
