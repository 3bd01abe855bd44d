//! Eager reference solver: the classic non-line-covering Hungarian
//! method on a dense cost matrix, with per-stage label updates.
//!
//! Missing edges are stored as zero-weight entries, which makes every
//! left vertex matchable and reduces maximum weight matching to the
//! perfect case; zero-weight pairs are filtered from the result.
//! Optionally the matrix is padded square with all-zero rows
//! (`with_virtual_vertices`), which is redundant but kept as the
//! textbook form for benchmarking. Tie-breaking mirrors the deferred
//! solver (first-encountered minimum wins, scans in index order) so the
//! two label evolutions can be compared in lockstep.

use crate::kwok::AugmentEvent;
use crate::labels::DualLabels;
use crate::matching::Matching;
use crate::stats::SolveStats;
use crate::weight::Weight;
use crate::BipartiteGraph;
use std::collections::VecDeque;

/// Row-major `n_left x n_right` weight table with zeros for missing
/// edges. Requires `n_left <= n_right`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseCostMatrix<W> {
    n_left: usize,
    n_right: usize,
    weights: Vec<W>,
}

impl<W: Weight> DenseCostMatrix<W> {
    pub fn new(n_left: usize, n_right: usize, weights: Vec<W>) -> Self {
        assert!(n_left <= n_right, "left side must not exceed the right");
        assert_eq!(weights.len(), n_left * n_right);
        Self {
            n_left,
            n_right,
            weights,
        }
    }

    pub fn from_graph(g: &BipartiteGraph<W>) -> Self {
        let (n_left, n_right) = (g.n_left(), g.n_right());
        let mut weights = vec![W::ZERO; n_left * n_right];
        for (l, r, w) in g.edges() {
            weights[l * n_right + r] = w;
        }
        Self {
            n_left,
            n_right,
            weights,
        }
    }

    pub fn n_left(&self) -> usize {
        self.n_left
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    pub fn weight_at(&self, l: usize, r: usize) -> W {
        self.weights[l * self.n_right + r]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HungarianOptions<W> {
    pub with_virtual_vertices: bool,
    pub greedy: bool,
    pub tolerance: Option<W>,
}

impl<W> Default for HungarianOptions<W> {
    fn default() -> Self {
        Self {
            with_virtual_vertices: false,
            greedy: true,
            tolerance: None,
        }
    }
}

pub fn hungarian_eager<W: Weight>(
    m: &DenseCostMatrix<W>,
    opts: HungarianOptions<W>,
) -> (Matching<W>, DualLabels<W>, SolveStats) {
    hungarian_eager_traced(m, opts, |_| {})
}

pub fn hungarian_eager_traced<W: Weight, F: FnMut(AugmentEvent<'_, W>)>(
    m: &DenseCostMatrix<W>,
    opts: HungarianOptions<W>,
    mut trace: F,
) -> (Matching<W>, DualLabels<W>, SolveStats) {
    let n_left = m.n_left;
    let n_right = m.n_right;
    let rows = if opts.with_virtual_vertices {
        n_right
    } else {
        n_left
    };
    // padded rows read as all-zero
    let entry = |l: usize, r: usize| -> W {
        if l < n_left {
            m.weight_at(l, r)
        } else {
            W::ZERO
        }
    };
    let max_abs = m
        .weights
        .iter()
        .map(|w| w.magnitude())
        .fold(W::ZERO, |a, b| if b > a { b } else { a });
    let tol = opts.tolerance.unwrap_or_else(|| W::default_tolerance(max_abs));

    let mut h_left = vec![W::ZERO; rows];
    for (l, h) in h_left.iter_mut().enumerate().take(n_left) {
        for r in 0..n_right {
            let w = entry(l, r);
            if w > *h {
                *h = w;
            }
        }
    }
    let mut h_right = vec![W::ZERO; n_right];
    let mut pair_left: Vec<Option<usize>> = vec![None; rows];
    let mut pair_right: Vec<Option<usize>> = vec![None; n_right];
    let mut parent: Vec<Option<usize>> = vec![None; n_right];
    let mut visited_left = vec![false; rows];
    let mut visited_right = vec![false; n_right];
    let mut slack = vec![W::INF; n_right];
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut stats = SolveStats {
        effective_edges: (n_left * n_right) as u64,
        ..SolveStats::default()
    };

    // rows with no positive entry only ever match virtually; outside the
    // padded form they are skipped just like isolated vertices
    let active: Vec<bool> = (0..rows)
        .map(|l| {
            opts.with_virtual_vertices || (0..n_right).any(|r| entry(l, r) > W::ZERO)
        })
        .collect();

    if opts.greedy {
        for l in 0..rows {
            if !active[l] {
                continue;
            }
            for r in 0..n_right {
                if pair_right[r].is_none() && h_left[l] + h_right[r] - entry(l, r) <= tol {
                    pair_left[l] = Some(r);
                    pair_right[r] = Some(l);
                    stats.greedy_matches += 1;
                    break;
                }
            }
        }
    }

    for root in 0..rows {
        if pair_left[root].is_some() || !active[root] {
            continue;
        }
        for v in visited_left.iter_mut() {
            *v = false;
        }
        for r in 0..n_right {
            visited_right[r] = false;
            slack[r] = W::INF;
        }
        queue.clear();
        queue.push_back(root);
        visited_left[root] = true;
        let mut bfs_edges = 0u64;
        let mut bfs_deltas = 0u64;
        // same selection rule as the deferred solver: track the
        // first-encountered minimum-slack unmatched vertex
        let mut r_star = pair_right
            .iter()
            .position(Option::is_none)
            .expect("an unmatched right vertex exists while a left one does");

        'bfs: loop {
            while let Some(l) = queue.pop_front() {
                for r in 0..n_right {
                    bfs_edges += 1;
                    if visited_right[r] {
                        continue;
                    }
                    let d = h_left[l] + h_right[r] - entry(l, r);
                    if d <= tol {
                        parent[r] = Some(l);
                        if advance_eager(
                            r,
                            &mut queue,
                            &mut visited_left,
                            &mut visited_right,
                            &mut pair_left,
                            &mut pair_right,
                            &parent,
                            &mut stats,
                        ) {
                            break 'bfs;
                        }
                    } else if slack[r] > d {
                        slack[r] = d;
                        parent[r] = Some(l);
                        if pair_right[r].is_none() && slack[r_star] > slack[r] {
                            r_star = r;
                        }
                    }
                }
            }

            // eager adjustment stage
            let mut delta = W::INF;
            for r in 0..n_right {
                if !visited_right[r] && slack[r] < delta {
                    delta = slack[r];
                }
            }
            debug_assert!(delta < W::INF, "tree can always extend");
            bfs_deltas += 1;
            stats.h_adjustments += 1;
            for (l, h) in h_left.iter_mut().enumerate() {
                if visited_left[l] {
                    *h -= delta;
                }
            }
            for (r, h) in h_right.iter_mut().enumerate() {
                if visited_right[r] {
                    *h += delta;
                }
            }
            for (r, s) in slack.iter_mut().enumerate() {
                if !visited_right[r] {
                    *s -= delta;
                }
            }

            if slack[r_star] <= tol {
                debug_assert!(!visited_right[r_star]);
                let done = advance_eager(
                    r_star,
                    &mut queue,
                    &mut visited_left,
                    &mut visited_right,
                    &mut pair_left,
                    &mut pair_right,
                    &parent,
                    &mut stats,
                );
                debug_assert!(done, "unmatched vertex completes the path");
                break 'bfs;
            }
            for r in 0..n_right {
                if !visited_right[r] && slack[r] <= tol {
                    debug_assert!(pair_right[r].is_some(), "unmatched zeros go through r_star");
                    let done = advance_eager(
                        r,
                        &mut queue,
                        &mut visited_left,
                        &mut visited_right,
                        &mut pair_left,
                        &mut pair_right,
                        &parent,
                        &mut stats,
                    );
                    debug_assert!(!done);
                }
            }
        }

        let delta_cap = if opts.with_virtual_vertices {
            n_right
        } else {
            n_left
        } as u64;
        debug_assert!(bfs_deltas <= delta_cap, "adjustment count out of bounds");
        stats.edges_visited += bfs_edges;
        stats.max_bfs_edges_visited = stats.max_bfs_edges_visited.max(bfs_edges);
        stats.max_bfs_h_adjustments = stats.max_bfs_h_adjustments.max(bfs_deltas);
        trace(AugmentEvent {
            augmentation: stats.augmentations,
            h_left: &h_left[..n_left],
            h_right: &h_right,
            pair_left: &pair_left[..n_left],
        });
    }

    let mut pairs = Vec::new();
    let mut total = W::ZERO;
    for (l, pr) in pair_left.iter().take(n_left).enumerate() {
        if let Some(r) = *pr {
            let w = entry(l, r);
            if w > W::ZERO {
                pairs.push((l, r));
                total += w;
            }
        }
    }
    (
        Matching::from_raw(pairs, total),
        DualLabels {
            h_left: h_left[..n_left].to_vec(),
            h_right,
        },
        stats,
    )
}

#[allow(clippy::too_many_arguments)]
fn advance_eager(
    r: usize,
    queue: &mut VecDeque<usize>,
    visited_left: &mut [bool],
    visited_right: &mut [bool],
    pair_left: &mut [Option<usize>],
    pair_right: &mut [Option<usize>],
    parent: &[Option<usize>],
    stats: &mut SolveStats,
) -> bool {
    visited_right[r] = true;
    if let Some(l) = pair_right[r] {
        queue.push_back(l);
        visited_left[l] = true;
        return false;
    }
    let mut r_cur = r;
    loop {
        let l = parent[r_cur].expect("path parent recorded");
        let prev = pair_left[l];
        pair_left[l] = Some(r_cur);
        pair_right[r_cur] = Some(l);
        match prev {
            Some(p) => r_cur = p,
            None => break,
        }
    }
    stats.augmentations += 1;
    true
}
