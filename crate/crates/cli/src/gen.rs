//! Seeded random instance generation.
//!
//! Edges are sampled uniformly without replacement over `L x R` using a
//! ChaCha8 stream, so a given spec reproduces the same graph on every
//! platform. Sparse budgets use Floyd's sampling; dense budgets use a
//! partial Fisher-Yates shuffle of the full index range.

use mwm_core::BipartiteGraph;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("edge budget {requested} exceeds the dense count {max}")]
    BudgetExceedsDense { requested: u64, max: u64 },
    #[error("weight range is empty: [{lo}, {hi}]")]
    EmptyWeightRange { lo: i64, hi: i64 },
    #[error("instance sides must be nonzero")]
    ZeroSide,
}

/// How many edges an instance gets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeBudget {
    /// `|E| = floor(c * |L| * log2(|R|))`
    CLgR(f64),
    /// `|E| = |L| * |R| / k`
    Frac(u64),
    Fixed(u64),
}

impl std::fmt::Display for EdgeBudget {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EdgeBudget::CLgR(c) => write!(f, "c_lgR:{c}"),
            EdgeBudget::Frac(k) => write!(f, "frac:{k}"),
            EdgeBudget::Fixed(n) => write!(f, "fixed:{n}"),
        }
    }
}

/// Upper weight bound, possibly relative to the instance size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightBound {
    Fixed(i64),
    /// `|R|`
    NRight,
    /// `|R|^2`
    NRightSquared,
}

impl WeightBound {
    pub fn resolve(self, n_right: usize) -> i64 {
        match self {
            WeightBound::Fixed(v) => v,
            WeightBound::NRight => n_right as i64,
            WeightBound::NRightSquared => (n_right as i64) * (n_right as i64),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceSpec {
    pub n_left: usize,
    /// `|R| = ratio * |L|` (a 1:k side ratio).
    pub ratio: usize,
    pub budget: EdgeBudget,
    pub weight_lo: i64,
    pub weight_hi: WeightBound,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn n_right(&self) -> usize {
        self.n_left * self.ratio
    }

    pub fn n_edges(&self) -> Result<u64, GenError> {
        if self.n_left == 0 || self.ratio == 0 {
            return Err(GenError::ZeroSide);
        }
        let max = (self.n_left as u64) * (self.n_right() as u64);
        let requested = match self.budget {
            EdgeBudget::CLgR(c) => {
                (c * self.n_left as f64 * (self.n_right() as f64).log2()).floor() as u64
            }
            EdgeBudget::Frac(k) => max / k,
            EdgeBudget::Fixed(n) => n,
        };
        if requested > max {
            return Err(GenError::BudgetExceedsDense { requested, max });
        }
        Ok(requested)
    }
}

pub fn gen(spec: &InstanceSpec) -> Result<BipartiteGraph<i64>, GenError> {
    let m = spec.n_edges()? as usize;
    let n_left = spec.n_left;
    let n_right = spec.n_right();
    let n = (n_left as u64) * (n_right as u64);
    let lo = spec.weight_lo;
    let hi = spec.weight_hi.resolve(n_right);
    if lo > hi {
        return Err(GenError::EmptyWeightRange { lo, hi });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let picked: Vec<u64> = if (m as u64) * 2 > n {
        let mut idx: Vec<u64> = (0..n).collect();
        for i in 0..m {
            let j = rng.gen_range(i..n as usize);
            idx.swap(i, j);
        }
        idx.truncate(m);
        idx
    } else {
        let mut seen: HashSet<u64> = HashSet::with_capacity(m * 2);
        let mut out = Vec::with_capacity(m);
        for j in (n - m as u64)..n {
            let t = rng.gen_range(0..=j);
            let chosen = if seen.insert(t) { t } else { j };
            if chosen == j && chosen != t {
                seen.insert(j);
            }
            out.push(chosen);
        }
        out
    };

    let edges: Vec<(usize, usize, i64)> = picked
        .iter()
        .map(|&p| {
            let l = (p / n_right as u64) as usize;
            let r = (p % n_right as u64) as usize;
            (l, r, rng.gen_range(lo..=hi))
        })
        .collect();
    Ok(BipartiteGraph::build(n_left, n_right, &edges).expect("sampled edges are in range"))
}
