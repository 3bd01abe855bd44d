//! Exact maximum weight matching for small instances, used as ground
//! truth by the test suites. Two independent routes: a bitmask dynamic
//! program over right-vertex subsets, and plain enumeration of all edge
//! subsets.

use crate::graph::BipartiteGraph;
use crate::matching::Matching;
use crate::weight::Weight;
use thiserror::Error;

pub const MAX_ORACLE_RIGHT: usize = 20;
pub const MAX_ORACLE_EDGES: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle supports at most {max} right vertices, got {n_right}")]
    TooManyRightVertices { n_right: usize, max: usize },
    #[error("oracle supports at most {max} edges, got {n_edges}")]
    TooManyEdges { n_edges: usize, max: usize },
}

/// Exact optimum by dynamic programming over (left index, subset of
/// used right vertices). Returns one optimal matching and its weight.
pub fn brute_force_mwm<W: Weight>(
    g: &BipartiteGraph<W>,
) -> Result<(Matching<W>, W), OracleError> {
    let n_right = g.n_right();
    if n_right > MAX_ORACLE_RIGHT {
        return Err(OracleError::TooManyRightVertices {
            n_right,
            max: MAX_ORACLE_RIGHT,
        });
    }
    let n_left = g.n_left();
    let n_masks = 1usize << n_right;

    // dp[mask] = best weight achievable by lefts i.. with `mask` already
    // used; choice[i][mask] records the adjacency slot taken (SKIP for
    // none) for reconstruction.
    const SKIP: u8 = u8::MAX;
    let mut next = vec![W::ZERO; n_masks];
    let mut cur = vec![W::ZERO; n_masks];
    let mut choice = vec![vec![SKIP; n_masks]; n_left];

    for i in (0..n_left).rev() {
        let (targets, weights) = g.neighbors(i);
        for mask in 0..n_masks {
            let mut best = next[mask];
            let mut pick = SKIP;
            for (slot, (&r, &w)) in targets.iter().zip(weights).enumerate() {
                if mask & (1 << r) == 0 {
                    let total = w + next[mask | (1 << r)];
                    if total > best {
                        best = total;
                        pick = slot as u8;
                    }
                }
            }
            cur[mask] = best;
            choice[i][mask] = pick;
        }
        std::mem::swap(&mut cur, &mut next);
    }

    let best = next[0];
    let mut pairs = Vec::new();
    let mut mask = 0usize;
    for (i, row) in choice.iter().enumerate() {
        let pick = row[mask];
        if pick != SKIP {
            let (targets, _) = g.neighbors(i);
            let r = targets[pick as usize];
            pairs.push((i, r));
            mask |= 1 << r;
        }
    }
    Ok((Matching::from_pairs(g, pairs), best))
}

/// Maximum weight over every subset of edges that forms a matching.
/// A second, structurally different oracle.
pub fn enumerate_all_matchings_weight<W: Weight>(g: &BipartiteGraph<W>) -> Result<W, OracleError> {
    let edges: Vec<(usize, usize, W)> = g.edges().collect();
    if edges.len() > MAX_ORACLE_EDGES {
        return Err(OracleError::TooManyEdges {
            n_edges: edges.len(),
            max: MAX_ORACLE_EDGES,
        });
    }
    // compact endpoint ids so conflicts fit in machine-word bitmasks
    let mut left_ids = Vec::new();
    let mut right_ids = Vec::new();
    let mut compact = Vec::with_capacity(edges.len());
    for &(l, r, w) in &edges {
        let li = match left_ids.iter().position(|&x| x == l) {
            Some(i) => i,
            None => {
                left_ids.push(l);
                left_ids.len() - 1
            }
        };
        let ri = match right_ids.iter().position(|&x| x == r) {
            Some(i) => i,
            None => {
                right_ids.push(r);
                right_ids.len() - 1
            }
        };
        compact.push((1u32 << li, 1u32 << ri, w));
    }

    let mut best = W::ZERO;
    for subset in 0u32..(1u32 << edges.len()) {
        let mut lmask = 0u32;
        let mut rmask = 0u32;
        let mut total = W::ZERO;
        let mut ok = true;
        let mut bits = subset;
        while bits != 0 {
            let e = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (lb, rb, w) = compact[e];
            if lmask & lb != 0 || rmask & rb != 0 {
                ok = false;
                break;
            }
            lmask |= lb;
            rmask |= rb;
            total += w;
        }
        if ok && total > best {
            best = total;
        }
    }
    Ok(best)
}
