//! The six pipeline commands. Each stage reads only the previous stage's
//! files under the experiment's out_dir, so any stage can be rerun in
//! isolation; identical inputs and seeds produce byte-identical outputs.
//!
//! Layout on disk:
//!
//! ```text
//! out_dir/
//!   manifest.tsv                      (gen, label)
//!   images/{train,val,test}/{0,1}/<index>.png   (render)
//!   train/seed_<s>/{checkpoint.txt,history.csv} (train)
//!   eval/{seeds.csv,summary.csv,report.txt}     (eval)
//!   report/{table.csv,table.txt}                (report)
//!   sweep/<name>/<combo>/...                    (eval --sweep)
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;

use vnsolve_core::classifier::{
    history_csv, load_checkpoint, predict, preprocess, save_checkpoint, train, Tensor, TrainConfig,
};
use vnsolve_core::dataset::{
    build_corpus, manifest_to_string, parse_manifest, split, CorpusConfig, CorpusRecord,
    ManifestRecord, Source,
};
use vnsolve_core::graph6::parse_graph6;
use vnsolve_core::layout::LayoutKind;
use vnsolve_core::metrics::{aggregate, EvalReport, SeedMetrics};
use vnsolve_core::oracle::is_hamiltonian_with_budget;
use vnsolve_core::png::{decode_png, encode_png};
use vnsolve_core::baseline;
use vnsolve_core::raster::{render_graph, ColorScheme};

use crate::config::{load_config, CorpusSettings, ExperimentConfig};

const SPLIT_NAMES: [&str; 3] = ["train", "val", "test"];

fn manifest_path(cfg: &ExperimentConfig) -> PathBuf {
    cfg.out_dir.join("manifest.tsv")
}

fn images_dir(cfg: &ExperimentConfig) -> PathBuf {
    cfg.out_dir.join("images")
}

fn seed_dir(cfg: &ExperimentConfig, seed: u64) -> PathBuf {
    cfg.out_dir.join("train").join(format!("seed_{seed}"))
}

fn eval_dir(cfg: &ExperimentConfig) -> PathBuf {
    cfg.out_dir.join("eval")
}

pub fn layout_name(kind: LayoutKind) -> &'static str {
    match kind {
        LayoutKind::Circular => "circular",
        LayoutKind::Spiral => "spiral",
        LayoutKind::Random => "random",
    }
}

pub fn scheme_name(scheme: ColorScheme) -> &'static str {
    match scheme {
        ColorScheme::Gray => "gray",
        ColorScheme::Uniform => "uniform",
        ColorScheme::Random => "random",
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)
            .with_context(|| format!("cannot create {}", parent.display()))?;
    }
    std::fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))
}

/// Builds (synthetic) or ingests (graph6 files) the corpus manifest.
/// Synthetic corpora come out labeled; ingested records carry `?` until
/// `label` runs.
pub fn cmd_gen(cfg: &ExperimentConfig) -> Result<()> {
    let records: Vec<ManifestRecord> = match &cfg.corpus {
        CorpusSettings::Synthetic(spec) => {
            let (corpus, log) = build_corpus(&CorpusConfig::Synthetic(spec.clone()))?;
            eprintln!(
                "gen: built {} synthetic records ({} candidates, {} duplicates skipped, {} undecided dropped)",
                corpus.len(),
                log.candidates,
                log.duplicates_skipped,
                log.undecided_dropped
            );
            corpus.iter().map(ManifestRecord::from_corpus).collect()
        }
        CorpusSettings::Ingest { files, .. } => {
            let mut records = Vec::new();
            for file in files {
                let text = std::fs::read_to_string(file)
                    .with_context(|| format!("cannot read corpus file {}", file.display()))?;
                for (idx, raw) in text.lines().enumerate() {
                    let line = raw.trim_end_matches('\r');
                    if line.is_empty() || line.starts_with(">>graph6<<") {
                        continue;
                    }
                    parse_graph6(line).map_err(|e| {
                        anyhow!("{}:{}: {e}", file.display(), idx + 1)
                    })?;
                    records.push(ManifestRecord {
                        graph6: line.to_string(),
                        label: None,
                        source: format!("g6:{}:{}", file.display(), idx + 1),
                    });
                }
            }
            eprintln!("gen: ingested {} records (unlabeled)", records.len());
            records
        }
    };
    let path = manifest_path(cfg);
    write_atomic(&path, manifest_to_string(&records).as_bytes())?;
    println!("gen: wrote {}", path.display());
    Ok(())
}

/// Labels every `?` record in the manifest with the exact oracle. Undecided
/// graphs (budget exhausted) are dropped and reported.
pub fn cmd_label(cfg: &ExperimentConfig) -> Result<()> {
    let path = manifest_path(cfg);
    let text = std::fs::read_to_string(&path).with_context(|| {
        format!(
            "cannot read {} (run `vnsolve gen` first)",
            path.display()
        )
    })?;
    let records = parse_manifest(&text)?;
    let budget = match &cfg.corpus {
        CorpusSettings::Synthetic(s) => s.oracle_budget,
        CorpusSettings::Ingest { oracle_budget, .. } => *oracle_budget,
    };
    let labeled: Vec<Option<ManifestRecord>> = records
        .into_par_iter()
        .map(|mut record| {
            if record.label.is_some() {
                return Some(record);
            }
            let graph = parse_graph6(&record.graph6).expect("manifest was validated on parse");
            match is_hamiltonian_with_budget(&graph, budget) {
                Ok(result) => {
                    record.label = Some(result.hamiltonian);
                    Some(record)
                }
                Err(_) => None,
            }
        })
        .collect();
    let mut kept = Vec::with_capacity(labeled.len());
    let mut dropped = 0usize;
    for record in labeled {
        match record {
            Some(r) => kept.push(r),
            None => dropped += 1,
        }
    }
    if dropped > 0 {
        eprintln!("label: dropped {dropped} undecided records (oracle budget exhausted)");
    }
    write_atomic(&path, manifest_to_string(&kept).as_bytes())?;
    println!("label: wrote {} ({} records)", path.display(), kept.len());
    Ok(())
}

fn load_labeled_corpus(cfg: &ExperimentConfig) -> Result<Vec<CorpusRecord>> {
    let path = manifest_path(cfg);
    let text = std::fs::read_to_string(&path).with_context(|| {
        format!(
            "cannot read {} (run `vnsolve gen` first)",
            path.display()
        )
    })?;
    let records = parse_manifest(&text)?;
    let mut corpus = Vec::with_capacity(records.len());
    for (idx, record) in records.iter().enumerate() {
        let label = record.label.ok_or_else(|| {
            anyhow!(
                "{}:{}: record is unlabeled; run `vnsolve label` first",
                path.display(),
                idx + 1
            )
        })?;
        corpus.push(CorpusRecord {
            graph: parse_graph6(&record.graph6).expect("manifest was validated on parse"),
            label,
            source: Source::Recorded(record.source.clone()),
        });
    }
    Ok(corpus)
}

/// Renders every split member to `images/<split>/<label>/<index>.png`.
pub fn cmd_render(cfg: &ExperimentConfig) -> Result<()> {
    let corpus = load_labeled_corpus(cfg)?;
    let splits = split(&corpus, &cfg.split)?;
    let images = images_dir(cfg);
    if images.exists() {
        std::fs::remove_dir_all(&images)
            .with_context(|| format!("cannot clear {}", images.display()))?;
    }
    let mut total = 0usize;
    for (name, indices) in SPLIT_NAMES.iter().zip([&splits.train, &splits.val, &splits.test]) {
        let rendered: Vec<(usize, bool, Vec<u8>)> = indices
            .par_iter()
            .map(|&i| -> Result<(usize, bool, Vec<u8>)> {
                let record = &corpus[i];
                let img = render_graph(&record.graph, &cfg.layout, &cfg.render)
                    .map_err(|e| anyhow!("cannot render record {i}: {e}"))?;
                Ok((i, record.label, encode_png(&img)))
            })
            .collect::<Result<_>>()?;
        for (i, label, png) in &rendered {
            let path = images
                .join(name)
                .join(if *label { "1" } else { "0" })
                .join(format!("{i:05}.png"));
            write_atomic(&path, png)?;
        }
        total += rendered.len();
    }
    println!(
        "render: wrote {total} images under {} (train {}, val {}, test {})",
        images.display(),
        splits.train.len(),
        splits.val.len(),
        splits.test.len()
    );
    Ok(())
}

/// Loads one rendered split back as tensors. Deterministic order: label 0
/// files first, then label 1, each sorted by filename.
fn load_split(cfg: &ExperimentConfig, name: &str) -> Result<(Vec<Tensor>, Vec<bool>)> {
    let base = images_dir(cfg).join(name);
    let mut files: Vec<(PathBuf, bool)> = Vec::new();
    for (dir, label) in [("0", false), ("1", true)] {
        let dir_path = base.join(dir);
        if !dir_path.exists() {
            continue;
        }
        let mut entries: Vec<PathBuf> = std::fs::read_dir(&dir_path)
            .with_context(|| format!("cannot list {}", dir_path.display()))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|ext| ext == "png"))
            .collect();
        entries.sort();
        files.extend(entries.into_iter().map(|p| (p, label)));
    }
    if files.is_empty() {
        bail!(
            "no images under {} (run `vnsolve render` first)",
            base.display()
        );
    }
    let tensors: Vec<(Tensor, bool)> = files
        .par_iter()
        .map(|(path, label)| -> Result<(Tensor, bool)> {
            let bytes =
                std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
            let img = decode_png(&bytes)
                .map_err(|e| anyhow!("cannot decode {}: {e}", path.display()))?;
            let tensor = preprocess(&img, cfg.train.downsample)
                .map_err(|e| anyhow!("cannot preprocess {}: {e}", path.display()))?;
            Ok((tensor, *label))
        })
        .collect::<Result<_>>()?;
    Ok(tensors.into_iter().unzip())
}

/// The per-run training seed: the configured base seed mixed with the run
/// seed from `experiment.seeds` (a base of 0 uses the run seed directly).
fn effective_seed(cfg: &ExperimentConfig, run_seed: u64) -> u64 {
    cfg.train.seed ^ run_seed
}

/// Trains one model per experiment seed, sequentially, and writes each seed's
/// best checkpoint and history CSV.
pub fn cmd_train(cfg: &ExperimentConfig) -> Result<()> {
    let (train_images, train_labels) = load_split(cfg, "train")?;
    let (val_images, val_labels) = load_split(cfg, "val")?;
    for &run_seed in &cfg.seeds {
        let run_cfg = TrainConfig {
            seed: effective_seed(cfg, run_seed),
            ..cfg.train.clone()
        };
        let outcome = train(&train_images, &train_labels, &val_images, &val_labels, &run_cfg)?;
        let dir = seed_dir(cfg, run_seed);
        write_atomic(
            &dir.join("checkpoint.txt"),
            save_checkpoint(&outcome.model).as_bytes(),
        )?;
        write_atomic(
            &dir.join("history.csv"),
            history_csv(&outcome.history).as_bytes(),
        )?;
        let last = outcome.history.len();
        let best = &outcome.history[outcome.best_epoch - 1];
        eprintln!(
            "train: seed {run_seed}: {last} epochs, best val F1 {:.4} at epoch {} ({})",
            best.val_f1,
            outcome.best_epoch,
            if outcome.stopped_early { "stopped early" } else { "hit max epochs" },
        );
    }
    println!("train: wrote checkpoints for {} seeds", cfg.seeds.len());
    Ok(())
}

fn seeds_csv(model_rows: &[SeedMetrics], baseline_rows: &[SeedMetrics]) -> String {
    let mut out = String::from("kind,seed,auc,accuracy,f1,tp,fp,tn,fn\n");
    for (kind, rows) in [("model", model_rows), ("baseline", baseline_rows)] {
        for m in rows {
            out.push_str(&format!(
                "{kind},{},{},{},{},{},{},{},{}\n",
                m.seed, m.auc, m.accuracy, m.f1, m.confusion.tp, m.confusion.fp, m.confusion.tn,
                m.confusion.fn_
            ));
        }
    }
    out
}

const SUMMARY_HEADER: &str =
    "layout,scheme,train_total,kind,auc_mean,auc_std,accuracy_mean,accuracy_std,f1_mean,f1_std";

fn summary_csv(cfg: &ExperimentConfig, model: &EvalReport, base: &EvalReport) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for (kind, report) in [("model", model), ("baseline", base)] {
        out.push_str(&format!(
            "{},{},{},{kind},{},{},{},{},{},{}\n",
            layout_name(cfg.layout.kind),
            scheme_name(cfg.render.scheme),
            cfg.split.train_total,
            report.auc.mean,
            report.auc.std,
            report.accuracy.mean,
            report.accuracy.std,
            report.f1.mean,
            report.f1.std,
        ));
    }
    out
}

fn human_report(cfg: &ExperimentConfig, model: &EvalReport, base: &EvalReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "layout={} scheme={} train_total={} test_total={} seeds={:?}\n",
        layout_name(cfg.layout.kind),
        scheme_name(cfg.render.scheme),
        cfg.split.train_total,
        cfg.split.test_total,
        cfg.seeds,
    ));
    out.push_str("metrics are mean +/- population std over seeds\n\n");
    out.push_str(&format!(
        "{:<10} {:>17} {:>17} {:>17}\n",
        "", "AUC", "Accuracy", "F1"
    ));
    for (kind, r) in [("model", model), ("baseline", base)] {
        out.push_str(&format!(
            "{:<10} {:>8.3}+/-{:<6.3} {:>8.3}+/-{:<6.3} {:>8.3}+/-{:<6.3}\n",
            kind, r.auc.mean, r.auc.std, r.accuracy.mean, r.accuracy.std, r.f1.mean, r.f1.std
        ));
    }
    out
}

/// Evaluates every seed's checkpoint on the rendered test split, plus the
/// prior baseline fitted on the training labels.
pub fn cmd_eval(cfg: &ExperimentConfig) -> Result<()> {
    let (test_images, test_labels) = load_split(cfg, "test")?;
    let (_, train_labels) = load_split(cfg, "train")?;
    let prior = baseline::fit_prior(&train_labels)?;

    let mut model_rows = Vec::new();
    let mut baseline_rows = Vec::new();
    for &run_seed in &cfg.seeds {
        let ckpt_path = seed_dir(cfg, run_seed).join("checkpoint.txt");
        let text = std::fs::read_to_string(&ckpt_path).with_context(|| {
            format!(
                "cannot read {} (run `vnsolve train` first)",
                ckpt_path.display()
            )
        })?;
        let model = load_checkpoint(&text)?;
        let (preds, scores) = predict(&model, &test_images)?;
        model_rows.push(SeedMetrics::compute(run_seed, &test_labels, &preds, &scores)?);

        let (b_preds, b_scores) = baseline::predict(&prior, test_labels.len(), run_seed);
        baseline_rows.push(SeedMetrics::compute(
            run_seed,
            &test_labels,
            &b_preds,
            &b_scores,
        )?);
    }
    let model_report = aggregate(&model_rows)?;
    let baseline_report = aggregate(&baseline_rows)?;

    let dir = eval_dir(cfg);
    write_atomic(
        &dir.join("seeds.csv"),
        seeds_csv(&model_rows, &baseline_rows).as_bytes(),
    )?;
    write_atomic(
        &dir.join("summary.csv"),
        summary_csv(cfg, &model_report, &baseline_report).as_bytes(),
    )?;
    let human = human_report(cfg, &model_report, &baseline_report);
    write_atomic(&dir.join("report.txt"), human.as_bytes())?;
    print!("{human}");
    Ok(())
}

/// One parsed summary row from an eval's summary.csv.
#[derive(Debug, Clone)]
struct SummaryRow {
    layout: String,
    scheme: String,
    train_total: usize,
    kind: String,
    cells: [f64; 6],
}

fn read_summary(path: &Path) -> Result<Vec<SummaryRow>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {} (run `vnsolve eval` first)", path.display()))?;
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if idx == 0 {
            if line != SUMMARY_HEADER {
                bail!("{}: unexpected summary header", path.display());
            }
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 10 {
            bail!("{}:{}: expected 10 fields", path.display(), idx + 1);
        }
        let mut cells = [0.0f64; 6];
        for (k, cell) in cells.iter_mut().enumerate() {
            *cell = fields[4 + k]
                .parse()
                .map_err(|_| anyhow!("{}:{}: bad number {:?}", path.display(), idx + 1, fields[4 + k]))?;
        }
        rows.push(SummaryRow {
            layout: fields[0].to_string(),
            scheme: fields[1].to_string(),
            train_total: fields[2].parse().map_err(|_| {
                anyhow!("{}:{}: bad train_total {:?}", path.display(), idx + 1, fields[2])
            })?,
            kind: fields[3].to_string(),
            cells,
        });
    }
    Ok(rows)
}

/// Merges the summaries of one or more finished runs into a grid with one row
/// per (layout, scheme, kind) and one column group per training-set size.
pub fn cmd_report(cfg: &ExperimentConfig, extra_inputs: &[PathBuf]) -> Result<()> {
    let mut paths = vec![eval_dir(cfg).join("summary.csv")];
    for input in extra_inputs {
        let candidate = if input.is_dir() {
            let nested = input.join("eval").join("summary.csv");
            if nested.exists() {
                nested
            } else {
                input.join("summary.csv")
            }
        } else {
            input.clone()
        };
        paths.push(candidate);
    }
    let mut rows = Vec::new();
    for path in &paths {
        rows.extend(read_summary(path)?);
    }

    let mut sizes: Vec<usize> = rows.iter().map(|r| r.train_total).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let mut grid: BTreeMap<(String, String, String), BTreeMap<usize, [f64; 6]>> = BTreeMap::new();
    for row in &rows {
        grid.entry((row.layout.clone(), row.scheme.clone(), row.kind.clone()))
            .or_default()
            .insert(row.train_total, row.cells);
    }

    let mut csv = String::from("layout,scheme,kind,train_total,metric,mean,std\n");
    let mut txt = String::new();
    txt.push_str(&format!("{:<9} {:<8} {:<9}", "layout", "scheme", "kind"));
    for size in &sizes {
        txt.push_str(&format!(
            " | {:^51}",
            format!("train={size}  (AUC | Accuracy | F1)")
        ));
    }
    txt.push('\n');
    for ((layout, scheme, kind), by_size) in &grid {
        txt.push_str(&format!("{layout:<9} {scheme:<8} {kind:<9}"));
        for size in &sizes {
            match by_size.get(size) {
                Some(c) => {
                    txt.push_str(&format!(
                        " | {:.2}+/-{:.2} | {:.2}+/-{:.2} | {:.2}+/-{:.2}",
                        c[0], c[1], c[2], c[3], c[4], c[5]
                    ));
                    for (metric, k) in [("auc", 0), ("accuracy", 2), ("f1", 4)] {
                        csv.push_str(&format!(
                            "{layout},{scheme},{kind},{size},{metric},{},{}\n",
                            c[k],
                            c[k + 1]
                        ));
                    }
                }
                None => txt.push_str(&format!(" | {:^51}", "-")),
            }
        }
        txt.push('\n');
    }

    let report_dir = cfg.out_dir.join("report");
    write_atomic(&report_dir.join("table.csv"), csv.as_bytes())?;
    write_atomic(&report_dir.join("table.txt"), txt.as_bytes())?;
    print!("{txt}");
    Ok(())
}

/// Runs the full pipeline once per sweep grid point, each in its own
/// subdirectory, then collects the model F1 per point.
pub fn cmd_eval_sweep(
    config_path: &Path,
    base_overrides: &[(String, String)],
    sweep_name: &str,
) -> Result<()> {
    let base = load_config(config_path, base_overrides)?;
    let sweep = base
        .sweep(sweep_name)
        .ok_or_else(|| anyhow!("no [sweep {sweep_name}] section in the config"))?
        .clone();
    let sweep_root = base.out_dir.join("sweep").join(sweep_name);
    let mut lines = vec![format!("{:<40} {:>16}", "combo", "f1 mean+/-std")];
    let mut csv = String::from("combo,f1_mean,f1_std\n");
    for combo in sweep.combos() {
        let label: String = combo
            .iter()
            .map(|(k, v)| format!("{}-{v}", k.rsplit('.').next().unwrap()))
            .collect::<Vec<_>>()
            .join("_");
        let combo_dir = sweep_root.join(&label);
        let mut overrides = base_overrides.to_vec();
        overrides.extend(combo.iter().cloned());
        overrides.push((
            "experiment.out_dir".to_string(),
            combo_dir.display().to_string(),
        ));
        let cfg = load_config(config_path, &overrides)?;
        eprintln!("sweep {sweep_name}: running {label}");
        cmd_gen(&cfg)?;
        cmd_label(&cfg)?;
        cmd_render(&cfg)?;
        cmd_train(&cfg)?;
        cmd_eval(&cfg)?;
        let rows = read_summary(&eval_dir(&cfg).join("summary.csv"))?;
        let model = rows
            .iter()
            .find(|r| r.kind == "model")
            .ok_or_else(|| anyhow!("sweep point {label} produced no model summary"))?;
        lines.push(format!(
            "{label:<40} {:>8.3}+/-{:.3}",
            model.cells[4], model.cells[5]
        ));
        csv.push_str(&format!("{label},{},{}\n", model.cells[4], model.cells[5]));
    }
    write_atomic(&sweep_root.join("summary.csv"), csv.as_bytes())?;
    let table = lines.join("\n") + "\n";
    write_atomic(&sweep_root.join("summary.txt"), table.as_bytes())?;
    print!("{table}");
    Ok(())
}
