//! Timing harness. Every round generates one seeded graph shared by all
//! algorithms, times each solve with a monotonic clock around the solve
//! call only, and asserts that all algorithms report the same matching
//! weight. A warm-up round per spec is run and excluded from the stats.

use crate::config::BenchConfig;
use crate::gen::{gen, EdgeBudget, GenError, InstanceSpec};
use mwm_core::hungarian::{hungarian_eager, DenseCostMatrix, HungarianOptions};
use mwm_core::kwok::{solve, SolveOptions};
use mwm_core::mcmf::mcmf_dijkstra;
use mwm_core::{BipartiteGraph, SolveStats};
use std::fmt;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Kwok,
    KwokSorted,
    Hungarian,
    HungarianVirtual,
    Mcmf,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Kwok,
        Algorithm::KwokSorted,
        Algorithm::Hungarian,
        Algorithm::HungarianVirtual,
        Algorithm::Mcmf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Kwok => "kwok",
            Algorithm::KwokSorted => "kwok-sorted",
            Algorithm::Hungarian => "hungarian",
            Algorithm::HungarianVirtual => "hungarian-virtual",
            Algorithm::Mcmf => "mcmf",
        }
    }

    /// Runs the algorithm on a cleaned graph and reports weight + stats.
    pub fn run(self, g: &BipartiteGraph<i64>, greedy: bool) -> (i64, SolveStats) {
        match self {
            Algorithm::Kwok | Algorithm::KwokSorted => {
                let out = solve(
                    g,
                    &SolveOptions {
                        greedy,
                        sorted_adjacency: self == Algorithm::KwokSorted,
                        ..SolveOptions::default()
                    },
                )
                .expect("generated graphs are cleaned");
                (out.matching.total_weight(), out.stats)
            }
            Algorithm::Hungarian | Algorithm::HungarianVirtual => {
                let dense = DenseCostMatrix::from_graph(g);
                let (m, _, stats) = hungarian_eager(
                    &dense,
                    HungarianOptions {
                        with_virtual_vertices: self == Algorithm::HungarianVirtual,
                        greedy,
                        tolerance: None,
                    },
                );
                (m.total_weight(), stats)
            }
            Algorithm::Mcmf => {
                let (m, stats) = mcmf_dijkstra(g).expect("generated graphs are cleaned");
                (m.total_weight(), stats)
            }
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(
        "solvers disagree on seed {seed} (n_left={n_left}, n_right={n_right}, edges={n_edges}): {details}"
    )]
    WeightDisagreement {
        seed: u64,
        n_left: usize,
        n_right: usize,
        n_edges: usize,
        details: String,
    },
    #[error(transparent)]
    Gen(#[from] GenError),
}

/// One timed solve.
#[derive(Debug, Clone)]
pub struct RoundSample {
    pub algorithm: Algorithm,
    pub n_left: usize,
    pub n_right: usize,
    pub n_edges: usize,
    pub round: usize,
    pub seed: u64,
    pub weight: i64,
    pub wall_ns: u128,
    pub stats: SolveStats,
}

impl RoundSample {
    pub const CSV_HEADER: &'static str =
        "algorithm,n_left,n_right,n_edges,round,seed,weight,wall_ns,edges_visited,h_adjustments,augmentations";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.algorithm,
            self.n_left,
            self.n_right,
            self.n_edges,
            self.round,
            self.seed,
            self.weight,
            self.wall_ns,
            self.stats.edges_visited,
            self.stats.h_adjustments,
            self.stats.augmentations
        )
    }
}

/// Per-(spec, algorithm) summary over the timed rounds.
#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub algorithm: Algorithm,
    pub rule: EdgeBudget,
    pub ratio: usize,
    pub n_left: usize,
    pub n_right: usize,
    pub n_edges: usize,
    pub rounds: usize,
    pub mean_ms: f64,
    pub std_ms: f64,
    pub mean_edges_visited: f64,
    pub mean_h_adjustments: f64,
}

pub fn sample_std(samples: &[f64]) -> f64 {
    if samples.len() < 2 {
        return 0.0;
    }
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>()
        / (samples.len() - 1) as f64;
    var.sqrt()
}

fn derived_seed(base: u64, spec_index: usize, round: usize) -> u64 {
    base ^ ((spec_index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
        ^ ((round as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F))
}

fn run_round(
    spec: &InstanceSpec,
    algorithms: &[Algorithm],
    greedy: bool,
    round: usize,
) -> Result<Vec<RoundSample>, BenchError> {
    let g = gen(spec)?;
    let n_edges = g.n_edges();
    let mut samples = Vec::with_capacity(algorithms.len());
    for &alg in algorithms {
        let start = Instant::now();
        let (weight, stats) = alg.run(&g, greedy);
        let wall_ns = start.elapsed().as_nanos();
        samples.push(RoundSample {
            algorithm: alg,
            n_left: g.n_left(),
            n_right: g.n_right(),
            n_edges,
            round,
            seed: spec.seed,
            weight,
            wall_ns,
            stats,
        });
    }
    let w0 = samples[0].weight;
    if let Some(bad) = samples.iter().find(|s| s.weight != w0) {
        return Err(BenchError::WeightDisagreement {
            seed: spec.seed,
            n_left: g.n_left(),
            n_right: g.n_right(),
            n_edges,
            details: format!(
                "{} returned {} but {} returned {}",
                samples[0].algorithm, w0, bad.algorithm, bad.weight
            ),
        });
    }
    Ok(samples)
}

/// Runs the whole configured sweep. Returns the per-round samples (the
/// CSV payload, warm-ups excluded) and the per-spec summary records.
pub fn run_bench(cfg: &BenchConfig, base_seed: u64) -> Result<(Vec<RoundSample>, Vec<BenchRecord>), BenchError> {
    let mut all_samples = Vec::new();
    let mut records = Vec::new();
    let mut spec_index = 0usize;

    for &rule in &cfg.edge_rules {
        for &ratio in &cfg.ratios {
            spec_index += 1;
            let spec_for = |round: usize| InstanceSpec {
                n_left: cfg.n_left,
                ratio,
                budget: rule,
                weight_lo: cfg.weight_lo,
                weight_hi: cfg.weight_hi,
                seed: derived_seed(base_seed, spec_index, round),
            };

            // round 0 is the warm-up; it still checks agreement
            run_round(&spec_for(0), &cfg.algorithms, cfg.greedy, 0)?;

            let rounds: Vec<Vec<RoundSample>> = if cfg.parallel {
                let mut slots: Vec<Option<Result<Vec<RoundSample>, BenchError>>> =
                    (1..=cfg.rounds).map(|_| None).collect();
                std::thread::scope(|scope| {
                    for (slot, round) in slots.iter_mut().zip(1..=cfg.rounds) {
                        let spec = spec_for(round);
                        let algorithms = &cfg.algorithms;
                        scope.spawn(move || {
                            *slot = Some(run_round(&spec, algorithms, cfg.greedy, round));
                        });
                    }
                });
                slots
                    .into_iter()
                    .map(|s| s.expect("every round ran"))
                    .collect::<Result<_, _>>()?
            } else {
                (1..=cfg.rounds)
                    .map(|round| run_round(&spec_for(round), &cfg.algorithms, cfg.greedy, round))
                    .collect::<Result<_, _>>()?
            };

            for &alg in &cfg.algorithms {
                let per_alg: Vec<&RoundSample> = rounds
                    .iter()
                    .flatten()
                    .filter(|s| s.algorithm == alg)
                    .collect();
                let times: Vec<f64> = per_alg
                    .iter()
                    .map(|s| s.wall_ns as f64 / 1.0e6)
                    .collect();
                let mean_ms = times.iter().sum::<f64>() / times.len() as f64;
                records.push(BenchRecord {
                    algorithm: alg,
                    rule,
                    ratio,
                    n_left: per_alg[0].n_left,
                    n_right: per_alg[0].n_right,
                    n_edges: per_alg[0].n_edges,
                    rounds: per_alg.len(),
                    mean_ms,
                    std_ms: sample_std(&times),
                    mean_edges_visited: per_alg
                        .iter()
                        .map(|s| s.stats.edges_visited as f64)
                        .sum::<f64>()
                        / per_alg.len() as f64,
                    mean_h_adjustments: per_alg
                        .iter()
                        .map(|s| s.stats.h_adjustments as f64)
                        .sum::<f64>()
                        / per_alg.len() as f64,
                });
            }
            for round in rounds {
                all_samples.extend(round);
            }
        }
    }
    Ok((all_samples, records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::WeightBound;

    fn tiny_config() -> BenchConfig {
        BenchConfig {
            n_left: 12,
            ratios: vec![1, 2],
            edge_rules: vec![EdgeBudget::Frac(3), EdgeBudget::CLgR(1.0)],
            weight_lo: 1,
            weight_hi: WeightBound::NRight,
            rounds: 3,
            algorithms: vec![
                Algorithm::Kwok,
                Algorithm::KwokSorted,
                Algorithm::Hungarian,
                Algorithm::HungarianVirtual,
                Algorithm::Mcmf,
            ],
            seed: Some(5),
            greedy: true,
            parallel: false,
        }
    }

    #[test]
    fn bench_produces_agreeing_rounds() {
        let cfg = tiny_config();
        let (samples, records) = run_bench(&cfg, 5).unwrap();
        // 4 specs x 3 rounds x 5 algorithms
        assert_eq!(samples.len(), 4 * 3 * 5);
        assert_eq!(records.len(), 4 * 5);
        for rec in &records {
            assert_eq!(rec.rounds, 3);
            assert!(rec.mean_ms >= 0.0);
        }
        // weights agree within each (spec, round)
        for s in &samples {
            let twin = samples
                .iter()
                .find(|t| t.round == s.round && t.seed == s.seed && t.algorithm != s.algorithm)
                .unwrap();
            assert_eq!(twin.weight, s.weight);
        }
    }

    #[test]
    fn bench_is_deterministic() {
        let cfg = tiny_config();
        let (s1, _) = run_bench(&cfg, 5).unwrap();
        let (s2, _) = run_bench(&cfg, 5).unwrap();
        let key = |v: &Vec<RoundSample>| -> Vec<(String, i64, u64)> {
            v.iter()
                .map(|s| (s.algorithm.to_string(), s.weight, s.stats.edges_visited))
                .collect()
        };
        assert_eq!(key(&s1), key(&s2));
    }

    #[test]
    fn parallel_rounds_match_sequential_results() {
        let mut cfg = tiny_config();
        let (seq, _) = run_bench(&cfg, 5).unwrap();
        cfg.parallel = true;
        let (par, _) = run_bench(&cfg, 5).unwrap();
        let key = |v: &[RoundSample]| -> Vec<(String, usize, i64)> {
            v.iter()
                .map(|s| (s.algorithm.to_string(), s.round, s.weight))
                .collect()
        };
        assert_eq!(key(&seq), key(&par));
    }

    #[test]
    fn csv_rows_have_the_documented_shape() {
        let cfg = tiny_config();
        let (samples, _) = run_bench(&cfg, 5).unwrap();
        assert_eq!(RoundSample::CSV_HEADER.split(',').count(), 11);
        for s in &samples {
            assert_eq!(s.csv_row().split(',').count(), 11);
        }
    }
}
