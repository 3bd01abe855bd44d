//! Weighted bipartite graphs in compressed adjacency form.
//!
//! Graphs are normalized at construction so that the left side is the
//! smaller one (`n_left <= n_right`); the `transposed` flag records
//! whether the input sides were swapped. Adjacency is stored as
//! contiguous per-vertex runs over an offset table, sorted by right
//! index, which keeps the search loops cache friendly and the iteration
//! order deterministic.

use crate::weight::Weight;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("edge ({left}, {right}) out of range for {n_left} x {n_right} graph")]
    VertexOutOfRange {
        left: usize,
        right: usize,
        n_left: usize,
        n_right: usize,
    },
    #[error("edge ({left}, {right}) has a non-finite weight")]
    NonFiniteWeight { left: usize, right: usize },
    #[error("edge ({left}, {right}) weight exceeds the supported magnitude")]
    WeightOutOfHeadroom { left: usize, right: usize },
}

/// Invariant violation found by [`BipartiteGraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    RightIndexOutOfRange { left: usize, right: usize },
    DuplicateEdge { left: usize, right: usize },
}

/// Immutable weighted bipartite graph with `n_left <= n_right`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteGraph<W> {
    n_left: usize,
    n_right: usize,
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<W>,
    transposed: bool,
}

impl<W: Weight> BipartiteGraph<W> {
    /// Builds a graph from raw edges. Sides are swapped when the declared
    /// left side is larger, duplicate `(l, r)` entries collapse keeping
    /// the maximum weight, and adjacency lists come out sorted by right
    /// index.
    pub fn build(
        n_left_raw: usize,
        n_right_raw: usize,
        edges: &[(usize, usize, W)],
    ) -> Result<Self, GraphError> {
        for &(l, r, w) in edges {
            if l >= n_left_raw || r >= n_right_raw {
                return Err(GraphError::VertexOutOfRange {
                    left: l,
                    right: r,
                    n_left: n_left_raw,
                    n_right: n_right_raw,
                });
            }
            if !w.is_finite_weight() {
                return Err(GraphError::NonFiniteWeight { left: l, right: r });
            }
            if !w.within_headroom() {
                return Err(GraphError::WeightOutOfHeadroom { left: l, right: r });
            }
        }

        let transposed = n_left_raw > n_right_raw;
        let (n_left, n_right) = if transposed {
            (n_right_raw, n_left_raw)
        } else {
            (n_left_raw, n_right_raw)
        };

        let mut list: Vec<(usize, usize, W)> = edges
            .iter()
            .map(|&(l, r, w)| if transposed { (r, l, w) } else { (l, r, w) })
            .collect();
        list.sort_by_key(|&(l, r, _)| (l, r));

        let mut offsets = vec![0usize; n_left + 1];
        let mut targets = Vec::with_capacity(list.len());
        let mut weights = Vec::with_capacity(list.len());
        let mut prev: Option<(usize, usize)> = None;
        for &(l, r, w) in &list {
            if prev == Some((l, r)) {
                // duplicate entry: keep the maximum weight
                let last = weights.last_mut().expect("duplicate follows a push");
                if w > *last {
                    *last = w;
                }
                continue;
            }
            prev = Some((l, r));
            targets.push(r);
            weights.push(w);
            offsets[l + 1] = targets.len();
        }
        // lefts without edges still need monotone offsets
        for i in 0..n_left {
            if offsets[i + 1] < offsets[i] {
                offsets[i + 1] = offsets[i];
            }
        }

        Ok(Self {
            n_left,
            n_right,
            offsets,
            targets,
            weights,
            transposed,
        })
    }

    /// Builds a graph from a dense row-major weight table, one edge per
    /// cell. Rows map to left vertices. Panics on ragged input.
    pub fn from_dense(rows: &[Vec<W>]) -> Self {
        let n_left = rows.len();
        let n_right = rows.first().map_or(0, Vec::len);
        let mut edges = Vec::with_capacity(n_left * n_right);
        for (l, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n_right, "ragged weight table");
            for (r, &w) in row.iter().enumerate() {
                edges.push((l, r, w));
            }
        }
        Self::build(n_left, n_right, &edges).expect("dense table produces in-range edges")
    }

    /// Assembles a graph directly from compressed-adjacency parts without
    /// any checking. Intended for deserialization and for exercising
    /// [`validate`](Self::validate); the offsets table must be well formed.
    pub fn from_raw_parts(
        n_left: usize,
        n_right: usize,
        offsets: Vec<usize>,
        targets: Vec<usize>,
        weights: Vec<W>,
        transposed: bool,
    ) -> Self {
        assert_eq!(offsets.len(), n_left + 1);
        assert_eq!(*offsets.last().unwrap_or(&0), targets.len());
        assert_eq!(targets.len(), weights.len());
        Self {
            n_left,
            n_right,
            offsets,
            targets,
            weights,
            transposed,
        }
    }

    /// Removes all non-positively weighted edges. Vertex counts are kept;
    /// vertices may end up with empty adjacency lists.
    pub fn clean(&self) -> Self {
        let mut offsets = vec![0usize; self.n_left + 1];
        let mut targets = Vec::with_capacity(self.targets.len());
        let mut weights = Vec::with_capacity(self.weights.len());
        for l in 0..self.n_left {
            for (r, w) in self.adjacency(l) {
                if w > W::ZERO {
                    targets.push(r);
                    weights.push(w);
                }
            }
            offsets[l + 1] = targets.len();
        }
        Self {
            n_left: self.n_left,
            n_right: self.n_right,
            offsets,
            targets,
            weights,
            transposed: self.transposed,
        }
    }

    /// Keeps, for every left vertex with more than `n_left` incident
    /// edges, only the `n_left` heaviest ones (ties broken arbitrarily).
    /// Selection runs in linear time per list; the maximum matching
    /// weight is preserved.
    pub fn prune_top_l(&self) -> Self {
        let k = self.n_left;
        let mut offsets = vec![0usize; self.n_left + 1];
        let mut targets = Vec::with_capacity(self.targets.len());
        let mut weights = Vec::with_capacity(self.weights.len());
        let mut scratch: Vec<(usize, W)> = Vec::new();
        for l in 0..self.n_left {
            let deg = self.degree(l);
            if deg <= k {
                let (ts, ws) = self.neighbors(l);
                targets.extend_from_slice(ts);
                weights.extend_from_slice(ws);
            } else {
                scratch.clear();
                scratch.extend(self.adjacency(l));
                // partition so the k heaviest come first, then restore
                // index order within the kept run
                scratch.select_nth_unstable_by(k - 1, |a, b| {
                    b.1.partial_cmp(&a.1).expect("finite weights")
                });
                scratch.truncate(k);
                scratch.sort_unstable_by_key(|e| e.0);
                for &(r, w) in &scratch {
                    targets.push(r);
                    weights.push(w);
                }
            }
            offsets[l + 1] = targets.len();
        }
        Self {
            n_left: self.n_left,
            n_right: self.n_right,
            offsets,
            targets,
            weights,
            transposed: self.transposed,
        }
    }

    /// Reports invariant violations (range errors, duplicate edges)
    /// without mutating the graph.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        for l in 0..self.n_left {
            let (ts, _) = self.neighbors(l);
            for &r in ts {
                if r >= self.n_right {
                    out.push(Diagnostic::RightIndexOutOfRange { left: l, right: r });
                }
            }
            let mut seen = ts.to_vec();
            seen.sort_unstable();
            for pair in seen.windows(2) {
                if pair[0] == pair[1] {
                    out.push(Diagnostic::DuplicateEdge {
                        left: l,
                        right: pair[0],
                    });
                }
            }
        }
        out
    }

    pub fn n_left(&self) -> usize {
        self.n_left
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    pub fn n_edges(&self) -> usize {
        self.targets.len()
    }

    pub fn transposed(&self) -> bool {
        self.transposed
    }

    pub fn degree(&self, l: usize) -> usize {
        self.offsets[l + 1] - self.offsets[l]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n_left).map(|l| self.degree(l)).max().unwrap_or(0)
    }

    /// Right indices and weights incident to `l`, sorted by right index.
    pub fn neighbors(&self, l: usize) -> (&[usize], &[W]) {
        let span = self.offsets[l]..self.offsets[l + 1];
        (&self.targets[span.clone()], &self.weights[span])
    }

    pub fn adjacency(&self, l: usize) -> impl Iterator<Item = (usize, W)> + '_ {
        let (ts, ws) = self.neighbors(l);
        ts.iter().copied().zip(ws.iter().copied())
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, W)> + '_ {
        (0..self.n_left).flat_map(move |l| self.adjacency(l).map(move |(r, w)| (l, r, w)))
    }

    /// Weight of edge `(l, r)` if present. Binary search over the sorted
    /// adjacency run.
    pub fn weight_of(&self, l: usize, r: usize) -> Option<W> {
        let (ts, ws) = self.neighbors(l);
        ts.binary_search(&r).ok().map(|i| ws[i])
    }

    pub fn is_cleaned(&self) -> bool {
        self.weights.iter().all(|&w| w > W::ZERO)
    }

    pub fn max_abs_weight(&self) -> W {
        self.weights
            .iter()
            .map(|w| w.magnitude())
            .fold(W::ZERO, |a, b| if b > a { b } else { a })
    }

    /// Copy of the graph with every adjacency list reordered by weight,
    /// heaviest first (ties keep index order).
    pub(crate) fn sorted_by_weight_desc(&self) -> Self {
        let mut targets = Vec::with_capacity(self.targets.len());
        let mut weights = Vec::with_capacity(self.weights.len());
        let mut scratch: Vec<(usize, W)> = Vec::new();
        for l in 0..self.n_left {
            scratch.clear();
            scratch.extend(self.adjacency(l));
            scratch.sort_by(|a, b| b.1.partial_cmp(&a.1).expect("finite weights"));
            for &(r, w) in &scratch {
                targets.push(r);
                weights.push(w);
            }
        }
        Self {
            n_left: self.n_left,
            n_right: self.n_right,
            offsets: self.offsets.clone(),
            targets,
            weights,
            transposed: self.transposed,
        }
    }
}
