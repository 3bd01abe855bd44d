//! Acceptance suite: one test per release criterion, each printing its
//! own pass/fail line through the harness. Tolerances are exact in
//! integer mode and pinned in code.

use mwm_cli::bench::{run_bench, Algorithm};
use mwm_cli::config::{BenchConfig, ScalingConfig};
use mwm_cli::gen::{gen, EdgeBudget, InstanceSpec, WeightBound};
use mwm_cli::scaling::{run_scaling, ScalingSummary};
use mwm_core::graph::BipartiteGraph;
use mwm_core::hungarian::{hungarian_eager_traced, DenseCostMatrix, HungarianOptions};
use mwm_core::kwok::{solve, solve_traced, SolveOptions};
use mwm_core::labels::certify;
use mwm_core::oracle::brute_force_mwm;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;
use std::time::Instant;

fn random_graph(
    rng: &mut ChaCha8Rng,
    n_left: usize,
    n_right: usize,
    density: f64,
    lo: i64,
    hi: i64,
) -> BipartiteGraph<i64> {
    let mut edges = Vec::new();
    for l in 0..n_left {
        for r in 0..n_right {
            if rng.gen_bool(density) {
                edges.push((l, r, rng.gen_range(lo..=hi)));
            }
        }
    }
    BipartiteGraph::build(n_left, n_right, &edges)
        .unwrap()
        .clean()
}

/// 1,000 seeded random instances, |L| in [1,8], |R| in [|L|,12],
/// integer weights in [-5,10] cleaned before solve: the solver weight
/// equals the brute-force optimum exactly, in under 30 seconds.
#[test]
fn criterion_01_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC01);
    for trial in 0..1000 {
        let n_left = rng.gen_range(1..=8);
        let n_right = rng.gen_range(n_left..=12);
        let density = rng.gen_range(0.05..1.0);
        let g = random_graph(&mut rng, n_left, n_right, density, -5, 10);
        let (_, expected) = brute_force_mwm(&g).unwrap();
        let out = solve(&g, &SolveOptions::default()).unwrap();
        assert_eq!(
            out.matching.total_weight(),
            expected,
            "trial {trial}: solver disagrees with the oracle"
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 30,
        "oracle sweep took {elapsed:?}, budget is 30s"
    );
}

/// 100 seeded instances at |L|=200, |R|=400, |E|=20000, weights
/// [1,400]: feasibility, tightness, nonnegative labels, zero labels on
/// unmatched right vertices, and label totals equal to the matching
/// weight, all with zero tolerance.
#[test]
fn criterion_02_duality_certificate() {
    for instance in 0..100 {
        let spec = InstanceSpec {
            n_left: 200,
            ratio: 2,
            budget: EdgeBudget::Fixed(20_000),
            weight_lo: 1,
            weight_hi: WeightBound::Fixed(400),
            seed: 0xACC02 + instance,
        };
        let g = gen(&spec).unwrap();
        let out = solve(&g, &SolveOptions::default()).unwrap();
        let solved = if g.max_degree() > g.n_left() {
            g.prune_top_l()
        } else {
            g
        };
        certify(&solved, &out.matching, &out.labels, 0)
            .unwrap_or_else(|e| panic!("instance {instance} (seed {}): {e}", spec.seed));
    }
}

/// Every reduced-scale table configuration (|L|=200, ratios 1:1..1:8,
/// all four edge budget rules): the deferred solver, both eager forms,
/// and the flow reduction return equal weights over 5 rounds each.
#[test]
fn criterion_03_cross_solver_agreement() {
    let cfg = BenchConfig {
        n_left: 200,
        ratios: vec![1, 2, 4, 8],
        edge_rules: vec![
            EdgeBudget::CLgR(0.5),
            EdgeBudget::CLgR(10.0),
            EdgeBudget::Frac(10),
            EdgeBudget::Frac(2),
        ],
        weight_lo: 1,
        weight_hi: WeightBound::NRight,
        rounds: 5,
        algorithms: vec![
            Algorithm::Kwok,
            Algorithm::Hungarian,
            Algorithm::HungarianVirtual,
            Algorithm::Mcmf,
        ],
        seed: Some(0xACC03),
        greedy: true,
        parallel: false,
    };
    // run_bench aborts with the offending seed on any weight mismatch
    let (samples, records) = run_bench(&cfg, 0xACC03).unwrap();
    assert_eq!(samples.len(), 4 * 4 * 5 * 4);
    assert_eq!(records.len(), 4 * 4 * 4);
}

/// 200 seeded instances with |L| <= 50: the deferred solver's labels
/// after every augmentation equal the eager reference labels run in
/// lockstep (same adjacency order, greedy on).
#[test]
fn criterion_04_deferral_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC04);
    for trial in 0..200 {
        let n_left = rng.gen_range(1..=50);
        let n_right = rng.gen_range(n_left..=(2 * n_left));
        let density = rng.gen_range(0.05..0.9);
        let g = random_graph(&mut rng, n_left, n_right, density, 1, 15).prune_top_l();

        type Snapshot = (Vec<i64>, Vec<i64>);
        let mut deferred: Vec<Snapshot> = Vec::new();
        solve_traced(&g, &SolveOptions::default(), |ev| {
            deferred.push((ev.h_left.to_vec(), ev.h_right.to_vec()));
        })
        .unwrap();

        let dense = DenseCostMatrix::from_graph(&g);
        let mut eager: Vec<Snapshot> = Vec::new();
        hungarian_eager_traced(&dense, HungarianOptions::default(), |ev| {
            eager.push((ev.h_left.to_vec(), ev.h_right.to_vec()));
        });

        assert_eq!(deferred.len(), eager.len(), "trial {trial}");
        for (aug, (d, e)) in deferred.iter().zip(&eager).enumerate() {
            assert_eq!(d, e, "trial {trial}, augmentation {aug}: labels diverge");
        }
    }
}

/// 500 seeded dense instances with |R| <= 12: the matching weight is
/// identical with and without the top-|L| pruning pass, and equals the
/// brute-force optimum.
#[test]
fn criterion_05_pruning_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC05);
    for trial in 0..500 {
        let n_left = rng.gen_range(1..=6);
        let n_right = rng.gen_range(n_left..=12);
        let g = random_graph(&mut rng, n_left, n_right, 0.95, 1, 10);
        let (_, expected) = brute_force_mwm(&g).unwrap();
        let pruned = solve(
            &g,
            &SolveOptions {
                prune: true,
                ..SolveOptions::default()
            },
        )
        .unwrap();
        let unpruned = solve(
            &g,
            &SolveOptions {
                prune: false,
                ..SolveOptions::default()
            },
        )
        .unwrap();
        assert_eq!(pruned.matching.total_weight(), expected, "trial {trial}");
        assert_eq!(unpruned.matching.total_weight(), expected, "trial {trial}");
    }
}

/// 300 seeded instances: identical weight across all 8 combinations of
/// {greedy, prune, sorted adjacency}.
#[test]
fn criterion_06_option_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC06);
    for trial in 0..300 {
        let n_left = rng.gen_range(1..=20);
        let n_right = rng.gen_range(n_left..=40);
        let density = rng.gen_range(0.05..0.8);
        let g = random_graph(&mut rng, n_left, n_right, density, 1, 25);
        let mut weights = Vec::with_capacity(8);
        for greedy in [false, true] {
            for prune in [false, true] {
                for sorted_adjacency in [false, true] {
                    let out = solve(
                        &g,
                        &SolveOptions {
                            greedy,
                            prune,
                            sorted_adjacency,
                            tolerance: None,
                        },
                    )
                    .unwrap();
                    weights.push(out.matching.total_weight());
                }
            }
        }
        assert!(
            weights.windows(2).all(|w| w[0] == w[1]),
            "trial {trial}: weights varied across options: {weights:?}"
        );
    }
}

/// On every instance of a mixed batch, per-search dual adjustments stay
/// within |L| and per-search edge visits within min(|L|^2, |E|) + |L|.
/// (The solver also hard-asserts both bounds after every search.)
#[test]
fn criterion_07_stats_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC07);
    for _ in 0..300 {
        let n_left = rng.gen_range(1..=40);
        let n_right = rng.gen_range(n_left..=3 * n_left);
        let density = rng.gen_range(0.05..1.0);
        let g = random_graph(&mut rng, n_left, n_right, density, 1, 30);
        let out = solve(&g, &SolveOptions::default()).unwrap();
        let l = g.n_left() as u64;
        let e = out.stats.effective_edges;
        assert!(out.stats.max_bfs_h_adjustments <= l);
        assert!(out.stats.max_bfs_edges_visited <= (l * l).min(e) + l);
        // frontier accounting: removals never exceed insertions, and a
        // vertex is only inserted while scanning one of its edges
        assert!(out.stats.heap_extracts + out.stats.heap_deletes <= out.stats.heap_inserts);
        assert!(out.stats.heap_inserts <= out.stats.edges_visited);
    }
    // large sparse and dense shapes as well
    for (n_left, ratio, budget) in [
        (500usize, 1usize, EdgeBudget::CLgR(0.5)),
        (300, 4, EdgeBudget::Frac(5)),
    ] {
        let spec = InstanceSpec {
            n_left,
            ratio,
            budget,
            weight_lo: 1,
            weight_hi: WeightBound::NRight,
            seed: 0xACC07,
        };
        let g = gen(&spec).unwrap();
        let out = solve(&g, &SolveOptions::default()).unwrap();
        let l = g.n_left() as u64;
        let e = out.stats.effective_edges;
        assert!(out.stats.max_bfs_h_adjustments <= l);
        assert!(out.stats.max_bfs_edges_visited <= (l * l).min(e) + l);
    }
}

/// Sparse table configuration at |L|=1000, ratio 1:8,
/// |E| = 0.5 |L| lg |R|, weights [1,|R|], 10 timed rounds: the deferred
/// solver's mean wall time is strictly below the eager solver's.
#[test]
fn criterion_08_table_ordering() {
    let cfg = BenchConfig {
        n_left: 1000,
        ratios: vec![8],
        edge_rules: vec![EdgeBudget::CLgR(0.5)],
        weight_lo: 1,
        weight_hi: WeightBound::NRight,
        rounds: 10,
        algorithms: vec![Algorithm::Kwok, Algorithm::Hungarian],
        seed: Some(0xACC08),
        greedy: true,
        parallel: false,
    };
    let (_, records) = run_bench(&cfg, 0xACC08).unwrap();
    let mean = |alg: Algorithm| {
        records
            .iter()
            .find(|r| r.algorithm == alg)
            .expect("record present")
            .mean_ms
    };
    let kwok = mean(Algorithm::Kwok);
    let eager = mean(Algorithm::Hungarian);
    println!("mean wall time: kwok {kwok:.3} ms, eager hungarian {eager:.3} ms");
    assert!(
        kwok < eager,
        "expected the deferred solver to be faster: {kwok:.3} ms vs {eager:.3} ms"
    );
}

fn scaling_summary() -> &'static ScalingSummary {
    static SUMMARY: OnceLock<ScalingSummary> = OnceLock::new();
    SUMMARY.get_or_init(|| {
        let cfg = ScalingConfig {
            e_values: (1..=20).map(|k| k * 1000).collect(),
            rounds: 10,
            seed: Some(0xACC09),
            ..ScalingConfig::default()
        };
        let (_, summary) = run_scaling(&cfg, 0xACC09).unwrap();
        summary
    })
}

/// Visited-edge study over |E| in {1000, ..., 20000} with square-side
/// sweeps, weights [1,|R|^2], 10 rounds: the log-log slope of the
/// per-budget maximum against |E| stays at or below 1.5.
#[test]
fn criterion_09_scaling_exponent() {
    let summary = scaling_summary();
    let exponent = summary.exponent.expect("enough budgets for a fit");
    println!("fitted visited-edge exponent: {exponent:.4}");
    assert!(
        exponent <= 1.5,
        "fitted exponent {exponent:.4} exceeds the 1.5 band"
    );
}

/// On the same scaling-study runs, the per-run ratio of dual
/// adjustments to |L| falls in [0.25, 6] for at least 95% of runs.
#[test]
fn criterion_10_h_adjustment_band() {
    let summary = scaling_summary();
    let fraction = summary.in_band_fraction();
    println!(
        "h-adjustment ratio in band: {}/{} ({:.2}%)",
        summary.runs_in_band,
        summary.runs_total,
        100.0 * fraction
    );
    for f in summary.flagged.iter().take(10) {
        println!(
            "flagged run: E={} L={} seed={} ratio={:.3}",
            f.e_target, f.n_left, f.seed, f.h_ratio
        );
    }
    assert!(
        fraction >= 0.95,
        "only {:.2}% of runs inside the band",
        100.0 * fraction
    );
}
