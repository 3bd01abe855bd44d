//! Maximum weight matching by equality-subgraph search with offset
//! slacks, a frontier heap, and deferred dual updates.
//!
//! Each search grows an alternating tree from one unmatched left vertex.
//! Instead of adjusting the vertex labels `h` at every stage, the per
//! stage adjustments `delta` are accumulated in a list and applied once
//! per augmentation through suffix sums, keyed by the stage at which
//! each vertex entered the tree. Slacks are stored in offset form
//! (`slack' = slack + sum(delta)`) so they never need a uniform
//! decrement. Missing edges are never materialized: the first unmatched
//! right vertex stands in for every implicit zero-weight edge, which
//! both supports `|L| < |R|` directly and keeps the work per search at
//! `O(min(L^2, E) + L log L)`.

use crate::graph::BipartiteGraph;
use crate::heap::{HeapHandle, PairingHeap};
use crate::labels::DualLabels;
use crate::matching::Matching;
use crate::stats::SolveStats;
use crate::weight::Weight;
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("graph has a non-positive edge ({left}, {right}); clean it first")]
    UncleanGraph { left: usize, right: usize },
    #[error("edge ({left}, {right}) violates label feasibility beyond the tolerance")]
    NegativeSlack { left: usize, right: usize },
    #[error("dual adjustment went negative beyond the tolerance")]
    NegativeAdjustment,
}

/// Solver knobs. Defaults: greedy initialization on, top-`|L|` edge
/// pruning on, sorted-adjacency scanning off, tolerance derived from the
/// weight type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions<W> {
    pub greedy: bool,
    pub prune: bool,
    pub sorted_adjacency: bool,
    pub tolerance: Option<W>,
}

impl<W> Default for SolveOptions<W> {
    fn default() -> Self {
        Self {
            greedy: true,
            prune: true,
            sorted_adjacency: false,
            tolerance: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveOutcome<W> {
    pub matching: Matching<W>,
    pub labels: DualLabels<W>,
    pub stats: SolveStats,
}

/// Snapshot handed to [`solve_traced`] observers after each augmentation.
pub struct AugmentEvent<'a, W> {
    pub augmentation: u64,
    pub h_left: &'a [W],
    pub h_right: &'a [W],
    pub pair_left: &'a [Option<usize>],
}

pub fn solve<W: Weight>(
    g: &BipartiteGraph<W>,
    opts: &SolveOptions<W>,
) -> Result<SolveOutcome<W>, SolveError> {
    solve_traced(g, opts, |_| {})
}

/// Like [`solve`], invoking `trace` after every augmentation. Used to
/// compare label evolution against the eager reference solver.
pub fn solve_traced<W: Weight, F: FnMut(AugmentEvent<'_, W>)>(
    g: &BipartiteGraph<W>,
    opts: &SolveOptions<W>,
    mut trace: F,
) -> Result<SolveOutcome<W>, SolveError> {
    if let Some((l, r, _)) = g.edges().find(|&(_, _, w)| w <= W::ZERO) {
        return Err(SolveError::UncleanGraph { left: l, right: r });
    }

    let pruned_storage;
    let sorted_storage;
    // `base` keeps index-sorted adjacency for edge lookups; `eff` is the
    // iteration-order view the search actually walks
    let mut base: &BipartiteGraph<W> = g;
    if opts.prune && base.max_degree() > base.n_left() {
        pruned_storage = base.prune_top_l();
        base = &pruned_storage;
    }
    let mut eff: &BipartiteGraph<W> = base;
    if opts.sorted_adjacency {
        sorted_storage = base.sorted_by_weight_desc();
        eff = &sorted_storage;
    }

    let tol = opts
        .tolerance
        .unwrap_or_else(|| W::default_tolerance(eff.max_abs_weight()));

    let mut search = Search::new(eff, base, tol, opts.sorted_adjacency);
    if opts.greedy {
        search.greedy_init();
    }

    let n_left = eff.n_left();
    for root in 0..n_left {
        if search.pair_left[root].is_some() || eff.degree(root) == 0 {
            continue;
        }
        search.bfs(root)?;
        trace(AugmentEvent {
            augmentation: search.stats.augmentations,
            h_left: &search.h_left,
            h_right: &search.h_right,
            pair_left: &search.pair_left,
        });
    }

    debug_assert_eq!(
        search.stats.augmentations + search.stats.greedy_matches,
        (0..n_left).filter(|&l| eff.degree(l) > 0).count() as u64,
    );

    Ok(search.finish())
}

struct Search<'g, W: Weight> {
    g: &'g BipartiteGraph<W>,
    /// Same edges as `g` but with index-sorted adjacency, for lookups.
    base: &'g BipartiteGraph<W>,
    tol: W,
    sorted_mode: bool,
    h_left: Vec<W>,
    h_right: Vec<W>,
    pair_left: Vec<Option<usize>>,
    pair_right: Vec<Option<usize>>,
    stage_left: Vec<Option<usize>>,
    stage_right: Vec<Option<usize>>,
    slack_prime: Vec<W>,
    parent: Vec<Option<usize>>,
    queue: VecDeque<usize>,
    frontier: PairingHeap<(W, usize), usize>,
    handle: Vec<Option<HeapHandle>>,
    delta: Vec<W>,
    suffix: Vec<W>,
    delta_sum: W,
    stage: usize,
    r_star: usize,
    r_cursor: usize,
    stats: SolveStats,
    bfs_edges: u64,
    bfs_deltas: u64,
    /// Per-search cap on adjacency visits: `min(L^2, E)` once every
    /// adjacency list is at most `|L|` long, plain `E` otherwise.
    adj_visit_bound: u64,
}

impl<'g, W: Weight> Search<'g, W> {
    fn new(
        g: &'g BipartiteGraph<W>,
        base: &'g BipartiteGraph<W>,
        tol: W,
        sorted_mode: bool,
    ) -> Self {
        let (n_left, n_right) = (g.n_left(), g.n_right());
        let mut h_left = vec![W::ZERO; n_left];
        for (l, h) in h_left.iter_mut().enumerate() {
            for (_, w) in g.adjacency(l) {
                if w > *h {
                    *h = w;
                }
            }
        }
        let e = g.n_edges();
        let adj_visit_bound = if g.max_degree() <= n_left {
            e.min(n_left.saturating_mul(n_left)) as u64
        } else {
            e as u64
        };
        let stats = SolveStats {
            effective_edges: e as u64,
            ..SolveStats::default()
        };
        Self {
            g,
            base,
            tol,
            sorted_mode,
            h_left,
            h_right: vec![W::ZERO; n_right],
            pair_left: vec![None; n_left],
            pair_right: vec![None; n_right],
            stage_left: vec![None; n_left],
            stage_right: vec![None; n_right],
            slack_prime: vec![W::INF; n_right],
            parent: vec![None; n_right],
            queue: VecDeque::new(),
            frontier: PairingHeap::new(),
            handle: vec![None; n_right],
            delta: Vec::with_capacity(n_left),
            suffix: Vec::with_capacity(n_left),
            delta_sum: W::ZERO,
            stage: 0,
            r_star: 0,
            r_cursor: 0,
            stats,
            bfs_edges: 0,
            bfs_deltas: 0,
            adj_visit_bound,
        }
    }

    /// First-fit matching over tight edges in stored adjacency order.
    fn greedy_init(&mut self) {
        let g = self.g;
        for l in 0..g.n_left() {
            let hl = self.h_left[l];
            for (r, w) in g.adjacency(l) {
                if self.pair_right[r].is_none() && hl + self.h_right[r] - w <= self.tol {
                    self.pair_left[l] = Some(r);
                    self.pair_right[r] = Some(l);
                    self.stats.greedy_matches += 1;
                    break;
                }
            }
        }
    }

    /// One augmenting search from `root`. Always succeeds: an unmatched
    /// right vertex exists whenever a left vertex is unmatched, and the
    /// implicit zero-weight edge to it bounds the dual descent.
    fn bfs(&mut self, root: usize) -> Result<(), SolveError> {
        let n_left = self.g.n_left();
        for s in self.stage_left.iter_mut() {
            *s = None;
        }
        for r in 0..self.g.n_right() {
            self.stage_right[r] = None;
            self.slack_prime[r] = W::INF;
            self.handle[r] = None;
        }
        self.frontier.clear();
        self.queue.clear();
        self.delta.clear();
        self.delta_sum = W::ZERO;
        self.stage = 0;
        self.bfs_edges = 0;
        self.bfs_deltas = 0;
        // matched right vertices never unmatch, so the cursor to the
        // first unmatched one only moves forward across the whole solve
        while self.pair_right[self.r_cursor].is_some() {
            self.r_cursor += 1;
        }
        self.r_star = self.r_cursor;

        self.stage_left[root] = Some(0);
        self.queue.push_back(root);

        'search: loop {
            while let Some(l) = self.queue.pop_front() {
                if self.scan(l)? {
                    break 'search;
                }
            }
            if self.introduce()? {
                break 'search;
            }
        }

        assert!(
            self.bfs_deltas <= n_left as u64,
            "dual adjustments per search exceeded |L|"
        );
        assert!(
            self.bfs_edges <= self.adj_visit_bound + n_left as u64,
            "edge visits per search exceeded min(L^2, E) + L"
        );
        self.stats.edges_visited += self.bfs_edges;
        self.stats.max_bfs_edges_visited = self.stats.max_bfs_edges_visited.max(self.bfs_edges);
        self.stats.max_bfs_h_adjustments =
            self.stats.max_bfs_h_adjustments.max(self.bfs_deltas);
        Ok(())
    }

    /// Processes one dequeued left vertex: the probe of the implicit
    /// edge to the first unmatched right vertex, then the real adjacency.
    /// Returns true when an augmenting path was applied.
    fn scan(&mut self, l: usize) -> Result<bool, SolveError> {
        debug_assert_eq!(self.stage_left[l], Some(self.stage), "stale dequeue");
        let g = self.g;
        let hl = self.h_left[l];
        let r_first = self.r_cursor;

        self.bfs_edges += 1;
        if hl <= self.tol {
            // implicit edge (l, r_first) is tight: l.h + 0 - 0 = 0
            self.parent[r_first] = Some(l);
            let done = self.advance(r_first)?;
            debug_assert!(done, "first unmatched vertex must complete the path");
            return Ok(true);
        }
        // otherwise minimize the stand-in slack; if (l, r_first) is a
        // real edge the adjacency loop below re-minimizes it correctly
        let cand = hl + self.delta_sum;
        if self.slack_prime[r_first] > cand {
            self.slack_prime[r_first] = cand;
            self.parent[r_first] = Some(l);
        }
        if self.slack_prime[self.r_star] > self.slack_prime[r_first] {
            self.r_star = r_first;
        }

        for (r, w) in g.adjacency(l) {
            self.bfs_edges += 1;
            if self.stage_right[r].is_some() {
                continue;
            }
            // r is outside the tree here, so its stored label is not
            // pending any deferred adjustment
            let d = hl + self.h_right[r] - w;
            if d < -self.tol {
                return Err(SolveError::NegativeSlack { left: l, right: r });
            }
            if d <= self.tol {
                self.parent[r] = Some(l);
                if self.advance(r)? {
                    return Ok(true);
                }
            } else {
                let unmatched = self.pair_right[r].is_none();
                let cand = d + self.delta_sum;
                if self.slack_prime[r] > cand {
                    self.slack_prime[r] = cand;
                    self.parent[r] = Some(l);
                    if unmatched {
                        if self.slack_prime[self.r_star] > self.slack_prime[r] {
                            self.r_star = r;
                        }
                    } else if let Some(h) = self.handle[r] {
                        self.frontier
                            .decrease_key(h, (cand, r))
                            .expect("slack only decreases");
                        self.stats.heap_decreases += 1;
                    } else {
                        self.handle[r] = Some(self.frontier.insert((cand, r), r));
                        self.stats.heap_inserts += 1;
                    }
                }
                if self.sorted_mode && unmatched {
                    // descending weights: everything after an unmatched
                    // vertex with positive slack is dominated by it
                    break;
                }
            }
        }
        Ok(false)
    }

    /// Computes the next dual adjustment and introduces every vertex
    /// whose offset slack it closes. Returns true when the search ended.
    fn introduce(&mut self) -> Result<bool, SolveError> {
        self.stage += 1;
        self.bfs_deltas += 1;
        self.stats.h_adjustments += 1;

        let star_slack = self.slack_prime[self.r_star];
        debug_assert!(star_slack < W::INF, "no reachable unmatched vertex");
        let mut delta = star_slack - self.delta_sum;
        if let Some((&(key, _), _)) = self.frontier.peek_min() {
            let from_frontier = key - self.delta_sum;
            if from_frontier < delta {
                delta = from_frontier;
            }
        }
        if delta < W::ZERO {
            if delta < -self.tol {
                return Err(SolveError::NegativeAdjustment);
            }
            delta = W::ZERO;
        }
        debug_assert!(
            delta > W::ZERO || self.tol > W::ZERO,
            "adjustments are strictly positive in exact mode"
        );
        self.delta.push(delta);
        self.delta_sum += delta;

        if self.slack_prime[self.r_star] - self.delta_sum <= self.tol {
            let r = self.r_star;
            let done = self.advance(r)?;
            debug_assert!(done, "unmatched vertex completes the path");
            return Ok(true);
        }
        loop {
            let hit = match self.frontier.peek_min() {
                Some((&(key, _), _)) => key - self.delta_sum <= self.tol,
                None => false,
            };
            if !hit {
                break;
            }
            let (_, r) = self.frontier.extract_min().expect("peeked nonempty");
            self.stats.heap_extracts += 1;
            self.handle[r] = None;
            let done = self.advance(r)?;
            debug_assert!(!done, "frontier vertices are matched");
        }
        Ok(false)
    }

    /// Brings `r` into the tree. Matched: its partner joins the queue.
    /// Unmatched: applies the augmenting path along the parent links and
    /// settles the deferred label updates.
    fn advance(&mut self, r: usize) -> Result<bool, SolveError> {
        self.stage_right[r] = Some(self.stage);
        if let Some(h) = self.handle[r].take() {
            self.frontier.delete(h).expect("tracked handle");
            self.stats.heap_deletes += 1;
        }
        if let Some(l) = self.pair_right[r] {
            self.queue.push_back(l);
            self.stage_left[l] = Some(self.stage);
            return Ok(false);
        }

        let mut r_cur = r;
        loop {
            let l = self.parent[r_cur].expect("path parent recorded");
            let prev = self.pair_left[l];
            self.pair_left[l] = Some(r_cur);
            self.pair_right[r_cur] = Some(l);
            match prev {
                Some(p) => r_cur = p,
                None => break,
            }
        }
        self.stats.augmentations += 1;
        self.apply_deferred_update();
        Ok(true)
    }

    /// Applies the accumulated adjustments at once: a vertex stamped at
    /// stage `t` receives the suffix sum `delta[t] + ... + delta[last]`,
    /// left labels down, right labels up. Vertices stamped at the final
    /// stage entered after the last adjustment and receive nothing.
    /// The result is exactly what eager per-stage updates would produce.
    fn apply_deferred_update(&mut self) {
        if self.delta.is_empty() {
            return;
        }
        self.suffix.clear();
        self.suffix.extend_from_slice(&self.delta);
        for j in (0..self.suffix.len() - 1).rev() {
            let next = self.suffix[j + 1];
            self.suffix[j] += next;
        }
        let current = self.stage;
        for l in 0..self.g.n_left() {
            if let Some(t) = self.stage_left[l] {
                if t != current {
                    self.h_left[l] -= self.suffix[t];
                }
            }
        }
        for r in 0..self.g.n_right() {
            if let Some(t) = self.stage_right[r] {
                if t != current {
                    self.h_right[r] += self.suffix[t];
                }
            }
        }
    }

    fn finish(self) -> SolveOutcome<W> {
        let g = self.base;
        let mut pairs = Vec::new();
        for (l, pr) in self.pair_left.iter().enumerate() {
            if let Some(r) = *pr {
                // keep only real pairs; stand-in matches carry no edge
                if g.weight_of(l, r).is_some() {
                    pairs.push((l, r));
                }
            }
        }
        SolveOutcome {
            matching: Matching::from_pairs(g, pairs),
            labels: DualLabels {
                h_left: self.h_left,
                h_right: self.h_right,
            },
            stats: self.stats,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labels::certify;

    fn int_graph(rows: &[Vec<i64>]) -> BipartiteGraph<i64> {
        BipartiteGraph::from_dense(rows).clean()
    }

    #[test]
    fn two_by_two_takes_the_heavy_diagonal() {
        // both perfect matchings: 5 + 3 = 8 beats 1 + 2 = 3
        let g = int_graph(&[vec![5, 1], vec![2, 3]]);
        let out = solve(&g, &SolveOptions::default()).unwrap();
        assert_eq!(out.matching.total_weight(), 8);
        assert_eq!(out.matching.pairs(), &[(0, 0), (1, 1)]);
        certify(&g, &out.matching, &out.labels, 0).unwrap();
    }

    #[test]
    fn single_edge() {
        let g = BipartiteGraph::build(1, 1, &[(0, 0, 7i64)]).unwrap();
        let out = solve(&g, &SolveOptions::default()).unwrap();
        assert_eq!(out.matching.total_weight(), 7);
        assert_eq!(out.matching.pairs(), &[(0, 0)]);
        assert_eq!(out.stats.h_adjustments, 0);
    }

    #[test]
    fn single_left_takes_max_edge() {
        let g = BipartiteGraph::build(1, 2, &[(0, 0, 4i64), (0, 1, 9)]).unwrap();
        let out = solve(&g, &SolveOptions::default()).unwrap();
        assert_eq!(out.matching.total_weight(), 9);
        assert_eq!(out.matching.pairs(), &[(0, 1)]);
    }

    #[test]
    fn rejects_unclean_graphs() {
        let g = BipartiteGraph::build(1, 1, &[(0, 0, -1i64)]).unwrap();
        assert_eq!(
            solve(&g, &SolveOptions::default()).unwrap_err(),
            SolveError::UncleanGraph { left: 0, right: 0 }
        );
        let z = BipartiteGraph::build(1, 1, &[(0, 0, 0i64)]).unwrap();
        assert!(solve(&z, &SolveOptions::default()).is_err());
    }

    #[test]
    fn empty_graph_solves_to_empty() {
        let g: BipartiteGraph<i64> = BipartiteGraph::build(3, 3, &[]).unwrap();
        let out = solve(&g, &SolveOptions::default()).unwrap();
        assert!(out.matching.is_empty());
        assert_eq!(out.matching.total_weight(), 0);
        assert_eq!(out.stats.augmentations, 0);
    }

    #[test]
    fn greedy_first_fit_in_stored_order() {
        let g = int_graph(&[vec![5, 5], vec![5, 5]]);
        let out = solve(&g, &SolveOptions::default()).unwrap();
        assert_eq!(out.stats.greedy_matches, 2);
        assert_eq!(out.matching.pairs(), &[(0, 0), (1, 1)]);

        // h = [5, 3]; tight first-fit gives (0,0) and (1,1)
        let g = int_graph(&[vec![5, 1], vec![2, 3]]);
        let out = solve(&g, &SolveOptions::default()).unwrap();
        assert_eq!(out.stats.greedy_matches, 2);

        // second left vertex has no tight unmatched vertex left
        let g = int_graph(&[vec![5, 1], vec![5, 1]]);
        let out = solve(&g, &SolveOptions::default()).unwrap();
        assert_eq!(out.stats.greedy_matches, 1);
    }

    #[test]
    fn eviction_through_alternating_path() {
        // after (0,0) is matched, the search from 1 must re-route 0 to
        // its other tight edge; total 10 either way of pairing
        let g = BipartiteGraph::build(2, 2, &[(0, 0, 5i64), (0, 1, 5), (1, 0, 5)]).unwrap();
        let out = solve(&g, &SolveOptions::default()).unwrap();
        assert_eq!(out.matching.total_weight(), 10);
        assert_eq!(out.matching.len(), 2);
        certify(&g, &out.matching, &out.labels, 0).unwrap();
    }

    #[test]
    fn virtual_match_leaves_left_uncovered() {
        // two lefts compete for one valuable right; the loser ends up
        // matched to the stand-in and is filtered from the result
        let g = BipartiteGraph::build(2, 2, &[(0, 0, 5i64), (1, 0, 3)]).unwrap();
        let out = solve(&g, &SolveOptions::default()).unwrap();
        assert_eq!(out.matching.total_weight(), 5);
        assert_eq!(out.matching.pairs(), &[(0, 0)]);
        // the uncovered left vertex ends with a zero label
        assert_eq!(out.labels.h_left[1], 0);
        certify(&g, &out.matching, &out.labels, 0).unwrap();
    }

    #[test]
    fn tight_root_edge_needs_no_adjustment() {
        let g = BipartiteGraph::build(2, 2, &[(0, 0, 5i64), (1, 1, 3)]).unwrap();
        let out = solve(
            &g,
            &SolveOptions {
                greedy: false,
                ..SolveOptions::default()
            },
        )
        .unwrap();
        assert_eq!(out.stats.h_adjustments, 0);
        assert_eq!(out.stats.augmentations, 2);
        assert_eq!(out.matching.total_weight(), 8);
    }

    #[test]
    fn deferred_update_applies_suffix_sums() {
        let g = BipartiteGraph::build(2, 2, &[(0, 0, 1i64)]).unwrap();
        let mut s = Search::new(&g, &g, 0, false);
        s.delta = vec![5];
        s.stage = 1;
        s.stage_left[0] = Some(0);
        s.stage_right[0] = Some(0);
        s.stage_left[1] = Some(1); // final stage: untouched
        s.h_left = vec![10, 10];
        s.h_right = vec![0, 0];
        s.apply_deferred_update();
        assert_eq!(s.h_left, vec![5, 10]);
        assert_eq!(s.h_right, vec![5, 0]);

        // delta = [2, 3, 1] gives suffix sums [6, 4, 1]
        let mut s = Search::new(&g, &g, 0, false);
        s.delta = vec![2, 3, 1];
        s.stage = 3;
        s.stage_left = vec![Some(0), Some(1)];
        s.stage_right = vec![Some(2), Some(3)];
        s.h_left = vec![10, 10];
        s.h_right = vec![0, 0];
        s.apply_deferred_update();
        assert_eq!(s.h_left, vec![10 - 6, 10 - 4]);
        assert_eq!(s.h_right, vec![1, 0]);

        // empty delta is a no-op
        let mut s = Search::new(&g, &g, 0, false);
        s.stage_left[0] = Some(0);
        s.h_left = vec![7, 7];
        s.apply_deferred_update();
        assert_eq!(s.h_left, vec![7, 7]);
    }

    #[test]
    fn introduce_advances_the_unmatched_minimum() {
        // r*.slack' = 4 with an empty frontier and sum(delta) = 1:
        // delta = 3 is appended and the search ends through r*
        let g = BipartiteGraph::build(2, 2, &[(0, 0, 1i64)]).unwrap();
        let mut s = Search::new(&g, &g, 0, false);
        s.delta = vec![1];
        s.delta_sum = 1;
        s.stage = 1;
        s.slack_prime[0] = 4;
        s.r_star = 0;
        s.parent[0] = Some(0);
        assert_eq!(s.introduce().unwrap(), true);
        assert_eq!(s.delta, vec![1, 3]);
        assert_eq!(s.delta_sum, 4);
        assert_eq!(s.pair_left[0], Some(0));
        assert_eq!(s.pair_right[0], Some(0));
    }

    #[test]
    fn introduce_extracts_the_frontier_minimum_when_smaller() {
        // r*.slack' = 9 vs frontier min 4 with sum(delta) = 1: delta = 3,
        // r* stays outside, the frontier vertex joins the tree and its
        // partner joins the queue
        let g = BipartiteGraph::build(2, 2, &[(0, 0, 1i64)]).unwrap();
        let mut s = Search::new(&g, &g, 0, false);
        s.delta = vec![1];
        s.delta_sum = 1;
        s.stage = 1;
        s.slack_prime[0] = 9;
        s.r_star = 0;
        s.slack_prime[1] = 4;
        s.pair_right[1] = Some(1);
        s.handle[1] = Some(s.frontier.insert((4, 1), 1));
        assert_eq!(s.introduce().unwrap(), false);
        assert_eq!(s.delta, vec![1, 3]);
        assert_eq!(s.stage_right[1], Some(2));
        assert_eq!(s.queue.pop_front(), Some(1));
        assert!(s.handle[1].is_none());
        assert!(s.pair_right[0].is_none(), "r* was not introduced");
    }

    #[test]
    fn introduce_drains_all_tied_frontier_minima() {
        let g = BipartiteGraph::build(3, 3, &[(0, 0, 1i64)]).unwrap();
        let mut s = Search::new(&g, &g, 0, false);
        s.slack_prime[0] = 9;
        s.r_star = 0;
        for r in [1usize, 2] {
            s.slack_prime[r] = 4;
            s.pair_right[r] = Some(r);
            s.handle[r] = Some(s.frontier.insert((4, r), r));
        }
        assert_eq!(s.introduce().unwrap(), false);
        assert_eq!(s.delta, vec![4]);
        // both tied vertices entered the tree in the same stage,
        // partners enqueued in index order
        assert_eq!(s.stage_right[1], Some(1));
        assert_eq!(s.stage_right[2], Some(1));
        assert_eq!(s.queue, [1, 2]);
        assert!(s.frontier.is_empty());
    }

    #[test]
    fn option_combinations_agree_on_weight() {
        let g = BipartiteGraph::build(
            3,
            5,
            &[
                (0, 0, 4i64),
                (0, 2, 7),
                (0, 4, 7),
                (1, 0, 2),
                (1, 1, 9),
                (2, 1, 8),
                (2, 3, 1),
            ],
        )
        .unwrap();
        let mut weights = Vec::new();
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
        assert!(weights.windows(2).all(|w| w[0] == w[1]), "{weights:?}");
    }

    #[test]
    fn sorted_adjacency_skips_dominated_entries() {
        // one left vertex, three unmatched rights, no tight edge after
        // the first: the descending scan stops after the heaviest entry
        let g = BipartiteGraph::build(2, 3, &[(0, 0, 9i64), (0, 1, 5), (0, 2, 4), (1, 0, 9)])
            .unwrap();
        let plain = solve(
            &g,
            &SolveOptions {
                greedy: false,
                prune: false,
                sorted_adjacency: false,
                tolerance: None,
            },
        )
        .unwrap();
        let sorted = solve(
            &g,
            &SolveOptions {
                greedy: false,
                prune: false,
                sorted_adjacency: true,
                tolerance: None,
            },
        )
        .unwrap();
        assert_eq!(
            plain.matching.total_weight(),
            sorted.matching.total_weight()
        );
        assert!(sorted.stats.edges_visited < plain.stats.edges_visited);
    }

    #[test]
    fn real_weights_solve_within_tolerance() {
        let g = BipartiteGraph::build(2, 2, &[(0, 0, 5.0), (0, 1, 1.0), (1, 0, 2.0), (1, 1, 3.0)])
            .unwrap();
        let out = solve(&g, &SolveOptions::default()).unwrap();
        assert!((out.matching.total_weight() - 8.0).abs() < 1e-9);
        let tol = <f64 as Weight>::default_tolerance(5.0);
        certify(&g, &out.matching, &out.labels, tol).unwrap();
    }

    #[test]
    fn traced_snapshots_arrive_per_augmentation() {
        let g = int_graph(&[vec![5, 1], vec![2, 3]]);
        let mut seen = 0u64;
        let out = solve_traced(
            &g,
            &SolveOptions {
                greedy: false,
                ..SolveOptions::default()
            },
            |ev| {
                seen += 1;
                assert_eq!(ev.augmentation, seen);
            },
        )
        .unwrap();
        assert_eq!(seen, out.stats.augmentations);
        assert_eq!(seen, 2);
    }
}
