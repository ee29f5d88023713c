//! Acceptance suite: one test per shipping criterion. Each prints a
//! `[PASS] criterion N` line with the measured numbers so a full
//! `cargo test --workspace -- --nocapture` doubles as the sign-off record.

use std::sync::OnceLock;

use vnsolve_core::baseline;
use vnsolve_core::classifier::{
    predict, preprocess, train, EarlyStopper, Model, StopDecision, Tensor, TrainConfig,
};
use vnsolve_core::dataset::{build_corpus, split, CorpusConfig, SplitSpec, SyntheticSpec};
use vnsolve_core::graph::{fixture_a, fixture_b, Graph};
use vnsolve_core::layout::{LayoutKind, LayoutSpec};
use vnsolve_core::metrics;
use vnsolve_core::oracle::{brute_force_hamiltonian, is_hamiltonian, verify_hamiltonian_cycle};
use vnsolve_core::png::encode_png;
use vnsolve_core::raster::{render_graph, ColorScheme, RenderSpec};
use vnsolve_core::rng::SplitMix64;

// ---------------------------------------------------------------------------
// Criterion 1: oracle exactness
// ---------------------------------------------------------------------------

#[test]
fn criterion_1_oracle_exactness() {
    // Exhaustive agreement with the permutation oracle for n <= 6.
    let mut exhaustive = 0usize;
    for n in 0..=6usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .collect();
        for mask in 0u32..(1u32 << pairs.len()) {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edge_list(n, &edges).unwrap();
            let fast = is_hamiltonian(&g).unwrap();
            let slow = brute_force_hamiltonian(&g).unwrap();
            assert_eq!(fast.hamiltonian, slow, "n={n} mask={mask}");
            if let Some(w) = &fast.witness {
                assert!(verify_hamiltonian_cycle(&g, w));
            }
            exhaustive += 1;
        }
    }

    // 5000 random graphs with 7 or 8 nodes across the density range.
    let mut rng = SplitMix64::new(0x0acc_e55);
    for trial in 0..5000u32 {
        let n = 7 + (trial % 2) as usize;
        let p = 0.1 + 0.8 * rng.next_f64();
        let g = vnsolve_core::dataset::generate_random_graph(n, p, rng.next_u64());
        let fast = is_hamiltonian(&g).unwrap();
        let slow = brute_force_hamiltonian(&g).unwrap();
        assert_eq!(fast.hamiltonian, slow, "trial={trial}");
        if let Some(w) = &fast.witness {
            assert!(verify_hamiltonian_cycle(&g, w));
        }
    }

    // The two fixture matrices.
    assert!(is_hamiltonian(&fixture_a()).unwrap().hamiltonian);
    assert!(!is_hamiltonian(&fixture_b()).unwrap().hamiltonian);

    println!(
        "[PASS] criterion 1: oracle exact on {exhaustive} exhaustive graphs (n<=6), \
         5000 random graphs (n in 7..=8), and both fixture matrices"
    );
}

// ---------------------------------------------------------------------------
// Criterion 2: rendering determinism (45 golden images)
// ---------------------------------------------------------------------------

fn golden_fixtures() -> Vec<(&'static str, Graph)> {
    let c6 = Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
    let k5_edges: Vec<(usize, usize)> = (0..5).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let k5 = Graph::from_edge_list(5, &k5_edges).unwrap();
    let petersen = Graph::from_edge_list(
        10,
        &[
            (0, 1), (1, 2), (2, 3), (3, 4), (0, 4), // outer cycle
            (5, 7), (7, 9), (6, 9), (6, 8), (5, 8), // inner pentagram
            (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), // spokes
        ],
    )
    .unwrap();
    vec![
        ("fixture_a", fixture_a()),
        ("fixture_b", fixture_b()),
        ("c6", c6),
        ("k5", k5),
        ("petersen", petersen),
    ]
}

fn golden_layouts() -> Vec<(&'static str, LayoutSpec)> {
    vec![
        (
            "circular",
            LayoutSpec {
                kind: LayoutKind::Circular,
                ..LayoutSpec::default()
            },
        ),
        (
            "spiral",
            LayoutSpec {
                kind: LayoutKind::Spiral,
                ..LayoutSpec::default()
            },
        ),
        (
            "random",
            LayoutSpec {
                kind: LayoutKind::Random,
                seed: 9,
                ..LayoutSpec::default()
            },
        ),
    ]
}

fn golden_schemes() -> Vec<(&'static str, ColorScheme)> {
    vec![
        ("gray", ColorScheme::Gray),
        ("uniform", ColorScheme::Uniform),
        ("random", ColorScheme::Random),
    ]
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

fn render_golden(graph: &Graph, layout: &LayoutSpec, scheme: ColorScheme) -> Vec<u8> {
    let spec = RenderSpec {
        scheme,
        color_seed: 17,
        ..RenderSpec::default()
    };
    encode_png(&render_graph(graph, layout, &spec).unwrap())
}

include!("support/golden_hashes.rs");

#[test]
fn criterion_2_rendering_determinism() {
    let mut checked = 0usize;
    for (graph_name, graph) in golden_fixtures() {
        for (layout_name, layout) in golden_layouts() {
            for (scheme_name, scheme) in golden_schemes() {
                let key = format!("{graph_name}/{layout_name}/{scheme_name}");
                // Two fully independent runs of layout + render + encode.
                let first = render_golden(&graph, &layout, scheme);
                let second = render_golden(&graph, &layout, scheme);
                assert_eq!(first, second, "{key}: two runs differ");
                let hash = fnv1a64(&first);
                let expected = GOLDEN_PNG_HASHES
                    .iter()
                    .find(|(k, _)| *k == key)
                    .unwrap_or_else(|| panic!("{key}: missing golden hash"))
                    .1;
                assert_eq!(
                    hash, expected,
                    "{key}: bytes drifted from the pinned golden image"
                );
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 45);
    println!("[PASS] criterion 2: 45 golden PNGs byte-identical across runs and pinned hashes");
}

/// Regenerates the golden hash table; run with
/// `cargo test -p vnsolve-core --test acceptance print_golden_hashes -- --ignored --nocapture`
/// and paste the output into tests/support/golden_hashes.rs after an intentional
/// rendering change.
#[test]
#[ignore]
fn print_golden_hashes() {
    println!("const GOLDEN_PNG_HASHES: [(&str, u64); 45] = [");
    for (graph_name, graph) in golden_fixtures() {
        for (layout_name, layout) in golden_layouts() {
            for (scheme_name, scheme) in golden_schemes() {
                let bytes = render_golden(&graph, &layout, scheme);
                println!(
                    "    (\"{graph_name}/{layout_name}/{scheme_name}\", 0x{:016x}),",
                    fnv1a64(&bytes)
                );
            }
        }
    }
    println!("];");
}

// ---------------------------------------------------------------------------
// Criterion 3: gradient fidelity
// ---------------------------------------------------------------------------

#[test]
fn criterion_3_gradient_fidelity() {
    use vnsolve_core::classifier::{loss_and_grad, PARAM_COUNT};

    let model = Model::init(123);
    let mut rng = SplitMix64::new(31);
    let images: Vec<Tensor> = (0..4)
        .map(|_| {
            let data: Vec<f64> = (0..3 * 8 * 8).map(|_| rng.next_f64() * 2.0 - 1.0).collect();
            Tensor::new(vec![3, 8, 8], data)
        })
        .collect();
    let labels = [true, false, true, false];
    let (_, analytic) = loss_and_grad(&model, &images, &labels).unwrap();

    // Conv layers: 200 seeded random parameters. Affine head: all parameters.
    let head_start = PARAM_COUNT - 66;
    let mut indices: Vec<usize> = Vec::new();
    let mut pick = SplitMix64::new(999);
    while indices.len() < 200 {
        let idx = pick.next_below(head_start as u64) as usize;
        if !indices.contains(&idx) {
            indices.push(idx);
        }
    }
    indices.extend(head_start..PARAM_COUNT);

    let eps = 1e-5;
    let mut worst = 0.0f64;
    for &idx in &indices {
        let mut params = model.params().to_vec();
        params[idx] += eps;
        let up = loss_and_grad(&Model::from_params(params.clone()).unwrap(), &images, &labels)
            .unwrap()
            .0;
        params[idx] -= 2.0 * eps;
        let down = loss_and_grad(&Model::from_params(params).unwrap(), &images, &labels)
            .unwrap()
            .0;
        let numeric = (up - down) / (2.0 * eps);
        let a = analytic[idx];
        if (numeric - a).abs() < 1e-12 {
            continue;
        }
        let rel = (numeric - a).abs() / (numeric.abs() + a.abs()).max(1e-8);
        worst = worst.max(rel);
        assert!(rel < 1e-4, "param {idx}: rel error {rel:.3e}");
    }
    println!(
        "[PASS] criterion 3: analytic vs central finite differences on {} parameters \
         (conv + affine), worst relative error {worst:.3e} < 1e-4",
        indices.len()
    );
}

// ---------------------------------------------------------------------------
// Criterion 4: baseline calibration
// ---------------------------------------------------------------------------

#[test]
fn criterion_4_baseline_calibration() {
    // Balanced prior fitted from balanced training labels.
    let train_labels: Vec<bool> = (0..1000).map(|i| i % 2 == 0).collect();
    let prior = baseline::fit_prior(&train_labels).unwrap();
    assert_eq!(prior.p_positive, 0.5);

    let n = 10_000usize;
    let mut test_labels = vec![true; n / 2];
    test_labels.extend(vec![false; n / 2]);
    let (preds, scores) = baseline::predict(&prior, n, 0xbead);
    let acc = metrics::accuracy(&test_labels, &preds).unwrap();
    assert!(
        (acc - 0.5).abs() <= 0.02,
        "baseline accuracy {acc} outside 0.50 +/- 0.02"
    );
    let auc = metrics::auc(&test_labels, &scores).unwrap();
    assert_eq!(auc, 0.5, "constant scores must give AUC exactly 0.5");
    println!(
        "[PASS] criterion 4: baseline accuracy {acc:.4} within 0.50 +/- 0.02 over 10^4 draws; \
         AUC = 0.5 exactly under the constant-score convention"
    );
}

// ---------------------------------------------------------------------------
// Criteria 5 and 6: learning signal and layout-structure trend
// ---------------------------------------------------------------------------

const TREND_SEEDS: [u64; 5] = [101, 202, 303, 404, 505];

struct TrendOutcome {
    circular_f1: Vec<f64>,
    random_f1: Vec<f64>,
    baseline_f1: Vec<f64>,
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn trend_outcome() -> &'static TrendOutcome {
    static OUTCOME: OnceLock<TrendOutcome> = OnceLock::new();
    OUTCOME.get_or_init(|| {
        let spec = SyntheticSpec {
            n_min: 6,
            n_max: 15,
            size: 1600,
            positive_fraction: 0.55,
            seed: 0x5eed_c0,
            ..SyntheticSpec::default()
        };
        let (corpus, _) = build_corpus(&CorpusConfig::Synthetic(spec)).unwrap();
        let splits = split(
            &corpus,
            &SplitSpec {
                train_total: 1000,
                test_total: 500,
                val_fraction: 0.2,
                seed: 7,
            },
        )
        .unwrap();

        let render_set = |layout: &LayoutSpec, indices: &[usize]| -> (Vec<Tensor>, Vec<bool>) {
            use rayon::prelude::*;
            let spec = RenderSpec {
                scheme: ColorScheme::Uniform,
                ..RenderSpec::default()
            };
            let tensors: Vec<(Tensor, bool)> = indices
                .par_iter()
                .map(|&i| {
                    let img = render_graph(&corpus[i].graph, layout, &spec).unwrap();
                    (preprocess(&img, 4).unwrap(), corpus[i].label)
                })
                .collect();
            tensors.into_iter().unzip()
        };

        let run_layout = |layout: LayoutSpec, name: &str| -> Vec<f64> {
            let (train_x, train_y) = render_set(&layout, &splits.train);
            let (val_x, val_y) = render_set(&layout, &splits.val);
            let (test_x, test_y) = render_set(&layout, &splits.test);
            TREND_SEEDS
                .iter()
                .map(|&seed| {
                    let cfg = TrainConfig {
                        seed,
                        ..TrainConfig::default()
                    };
                    let outcome = train(&train_x, &train_y, &val_x, &val_y, &cfg).unwrap();
                    let (preds, _) = predict(&outcome.model, &test_x).unwrap();
                    let f1 = metrics::f1(&test_y, &preds).unwrap();
                    eprintln!(
                        "trend[{name}] seed {seed}: {} epochs, test F1 {f1:.4}",
                        outcome.history.len()
                    );
                    f1
                })
                .collect()
        };

        let circular_f1 = run_layout(
            LayoutSpec {
                kind: LayoutKind::Circular,
                ..LayoutSpec::default()
            },
            "circular",
        );
        let random_f1 = run_layout(
            LayoutSpec {
                kind: LayoutKind::Random,
                seed: 40,
                ..LayoutSpec::default()
            },
            "random",
        );

        let train_labels: Vec<bool> = splits.train.iter().map(|&i| corpus[i].label).collect();
        let test_labels: Vec<bool> = splits.test.iter().map(|&i| corpus[i].label).collect();
        let prior = baseline::fit_prior(&train_labels).unwrap();
        let baseline_f1 = TREND_SEEDS
            .iter()
            .map(|&seed| {
                let (preds, _) = baseline::predict(&prior, test_labels.len(), seed);
                metrics::f1(&test_labels, &preds).unwrap()
            })
            .collect();

        TrendOutcome {
            circular_f1,
            random_f1,
            baseline_f1,
        }
    })
}

#[test]
fn criterion_5_learning_signal() {
    let outcome = trend_outcome();
    let model_mean = mean(&outcome.circular_f1);
    let baseline_mean = mean(&outcome.baseline_f1);
    assert!(
        model_mean >= 0.65,
        "circular+uniform mean F1 {model_mean:.4} below 0.65 (per-seed {:?})",
        outcome.circular_f1
    );
    assert!(
        model_mean - baseline_mean >= 0.08,
        "margin over baseline {:.4} below 0.08 (model {model_mean:.4}, baseline {baseline_mean:.4})",
        model_mean - baseline_mean
    );
    println!(
        "[PASS] criterion 5: circular+uniform mean F1 {model_mean:.4} >= 0.65 and exceeds \
         the prior baseline ({baseline_mean:.4}) by {:.4} >= 0.08 over 5 seeds",
        model_mean - baseline_mean
    );
}

#[test]
fn criterion_6_layout_structure_trend() {
    let outcome = trend_outcome();
    let circular = mean(&outcome.circular_f1);
    let random = mean(&outcome.random_f1);
    assert!(
        circular > random,
        "circular mean F1 {circular:.4} not above random layout {random:.4} \
         (circular {:?}, random {:?})",
        outcome.circular_f1,
        outcome.random_f1
    );
    println!(
        "[PASS] criterion 6: structured layout beats random embedding, mean F1 \
         {circular:.4} > {random:.4} over 5 seeds"
    );
}

// ---------------------------------------------------------------------------
// Criterion 7: early-stopping protocol
// ---------------------------------------------------------------------------

#[test]
fn criterion_7_early_stopping_protocol() {
    let patience = 8;
    let mut stopper = EarlyStopper::new(patience);
    let mut epochs_run = 0usize;
    for epoch in 1..=200 {
        epochs_run = epoch;
        let f1 = 0.9 - 0.05 * epoch as f64; // strictly decreasing trace
        if stopper.observe(epoch, f1) == StopDecision::Stop {
            break;
        }
    }
    assert_eq!(epochs_run, patience + 1, "must stop after patience+1 epochs");
    assert_eq!(stopper.best_epoch(), 1, "best checkpoint is the first epoch");
    assert_eq!(stopper.best_value(), Some(0.9 - 0.05));
    println!(
        "[PASS] criterion 7: monotone-decreasing validation trace stops after exactly \
         {} epochs and keeps the epoch-1 checkpoint",
        patience + 1
    );
}

// ---------------------------------------------------------------------------
// Criterion 8: metric unit values
// ---------------------------------------------------------------------------

#[test]
fn criterion_8_metric_unit_values() {
    let auc = metrics::auc(&[true, true, false, false], &[0.9, 0.4, 0.6, 0.1]).unwrap();
    assert!((auc - 0.75).abs() < 1e-12, "AUC {auc} != 0.75");

    let f1 = metrics::f1(&[true, true, false], &[false, false, false]).unwrap();
    assert_eq!(f1, 0.0, "zero-denominator F1 must be 0");

    let summary = metrics::summarize(&[0.8, 0.6]).unwrap();
    assert!((summary.mean - 0.7).abs() < 1e-12);
    assert!((summary.std - 0.1).abs() < 1e-12);

    println!(
        "[PASS] criterion 8: AUC = 0.75, zero-denominator F1 = 0, aggregate(0.8, 0.6) = 0.7 +/- 0.1"
    );
}
