//! Visited-edge scaling study: for each edge budget `|E|`, sweep square
//! instances (`|L| = |R|`) over a factor grid of `sqrt(E)`, record the
//! solver's visited-edge counts, take the per-budget maximum of the
//! round means, and fit a log-log slope of that maximum against `|E|`.
//! The per-run ratio of dual adjustments to `|L|` is reported and runs
//! outside the inspection band are flagged.

use crate::bench::{sample_std, Algorithm, RoundSample};
use crate::config::ScalingConfig;
use crate::gen::{gen, EdgeBudget, GenError, InstanceSpec};

/// Inspection band for `h_adjustments / |L|`.
pub const H_RATIO_BAND: (f64, f64) = (0.25, 6.0);

#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub e_target: usize,
    pub n_left: usize,
    pub mean_visited: f64,
    pub std_visited: f64,
    pub mean_wall_ms: f64,
}

#[derive(Debug, Clone)]
pub struct FlaggedRun {
    pub e_target: usize,
    pub n_left: usize,
    pub seed: u64,
    pub h_ratio: f64,
}

#[derive(Debug, Clone)]
pub struct ScalingSummary {
    pub points: Vec<SweepPoint>,
    /// (edge budget, max over the sweep of mean visited edges)
    pub per_e_max: Vec<(usize, f64)>,
    /// Least-squares slope of `log(max visited)` vs `log(E)`.
    pub exponent: Option<f64>,
    pub runs_total: usize,
    pub runs_in_band: usize,
    pub flagged: Vec<FlaggedRun>,
}

impl ScalingSummary {
    pub fn in_band_fraction(&self) -> f64 {
        if self.runs_total == 0 {
            return 1.0;
        }
        self.runs_in_band as f64 / self.runs_total as f64
    }
}

fn derived_seed(base: u64, e: usize, l: usize, round: usize) -> u64 {
    base ^ ((e as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
        ^ ((l as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F))
        ^ ((round as u64).wrapping_mul(0x1656_67B1_9E37_79F9))
}

/// Side lengths for a budget: factors of `sqrt(E)`, floored at the
/// smallest square side that can hold `E` edges.
pub fn sweep_sides(e: usize, factors: &[f64]) -> Vec<usize> {
    let root = (e as f64).sqrt();
    let min_side = root.ceil() as usize;
    let mut sides: Vec<usize> = factors
        .iter()
        .map(|f| ((f * root).ceil() as usize).max(min_side).max(2))
        .collect();
    sides.sort_unstable();
    sides.dedup();
    sides
}

pub fn run_scaling(
    cfg: &ScalingConfig,
    base_seed: u64,
) -> Result<(Vec<RoundSample>, ScalingSummary), GenError> {
    let mut samples = Vec::new();
    let mut points = Vec::new();
    let mut per_e_max = Vec::new();
    let mut runs_total = 0usize;
    let mut runs_in_band = 0usize;
    let mut flagged = Vec::new();

    for &e in &cfg.e_values {
        let mut e_max = f64::MIN;
        for l in sweep_sides(e, &cfg.l_factors) {
            let mut visited = Vec::with_capacity(cfg.rounds);
            let mut walls = Vec::with_capacity(cfg.rounds);
            for round in 0..cfg.rounds {
                let spec = InstanceSpec {
                    n_left: l,
                    ratio: 1,
                    budget: EdgeBudget::Fixed(e as u64),
                    weight_lo: cfg.weight_lo,
                    weight_hi: cfg.weight_hi,
                    seed: derived_seed(base_seed, e, l, round),
                };
                let g = gen(&spec)?;
                let start = std::time::Instant::now();
                let (weight, stats) = Algorithm::Kwok.run(&g, true);
                let wall_ns = start.elapsed().as_nanos();

                let h_ratio = stats.h_adjustments as f64 / l as f64;
                runs_total += 1;
                if (H_RATIO_BAND.0..=H_RATIO_BAND.1).contains(&h_ratio) {
                    runs_in_band += 1;
                } else {
                    flagged.push(FlaggedRun {
                        e_target: e,
                        n_left: l,
                        seed: spec.seed,
                        h_ratio,
                    });
                }
                visited.push(stats.edges_visited as f64);
                walls.push(wall_ns as f64 / 1.0e6);
                samples.push(RoundSample {
                    algorithm: Algorithm::Kwok,
                    n_left: l,
                    n_right: l,
                    n_edges: g.n_edges(),
                    round,
                    seed: spec.seed,
                    weight,
                    wall_ns,
                    stats,
                });
            }
            let mean_visited = visited.iter().sum::<f64>() / visited.len() as f64;
            e_max = e_max.max(mean_visited);
            points.push(SweepPoint {
                e_target: e,
                n_left: l,
                mean_visited,
                std_visited: sample_std(&visited),
                mean_wall_ms: walls.iter().sum::<f64>() / walls.len() as f64,
            });
        }
        per_e_max.push((e, e_max));
    }

    let exponent = fit_loglog_slope(&per_e_max);
    Ok((
        samples,
        ScalingSummary {
            points,
            per_e_max,
            exponent,
            runs_total,
            runs_in_band,
            flagged,
        },
    ))
}

/// Least-squares slope of `ln y` against `ln x`. Needs two distinct
/// x values; otherwise the slope is undefined.
pub fn fit_loglog_slope(points: &[(usize, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(x, y)| x > 0 && y > 0.0)
        .map(|&(x, y)| ((x as f64).ln(), y.ln()))
        .collect();
    let distinct = {
        let mut xs: Vec<u64> = pts.iter().map(|p| p.0.to_bits()).collect();
        xs.sort_unstable();
        xs.dedup();
        xs.len()
    };
    if distinct < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mean_x) * (p.0 - mean_x)).sum();
    Some(sxy / sxx)
}
