use crate::graph::BipartiteGraph;
use crate::weight::Weight;

/// A pairing between left and right vertices together with its total
/// weight. Every pair is an edge of the graph it was computed on.
#[derive(Debug, Clone, PartialEq)]
pub struct Matching<W> {
    pairs: Vec<(usize, usize)>,
    total_weight: W,
}

impl<W: Weight> Matching<W> {
    /// Assembles a matching from `(left, right)` pairs, computing the
    /// total weight from the graph. Debug builds check the matching
    /// invariants (disjoint endpoints, pairs are edges).
    pub fn from_pairs(g: &BipartiteGraph<W>, mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        let mut total = W::ZERO;
        for &(l, r) in &pairs {
            let w = g
                .weight_of(l, r)
                .expect("matching pair must be a graph edge");
            total += w;
        }
        #[cfg(debug_assertions)]
        {
            let mut left_used = vec![false; g.n_left()];
            let mut right_used = vec![false; g.n_right()];
            for &(l, r) in &pairs {
                assert!(!left_used[l] && !right_used[r], "endpoint used twice");
                left_used[l] = true;
                right_used[r] = true;
            }
        }
        Self {
            pairs,
            total_weight: total,
        }
    }

    pub fn empty() -> Self {
        Self {
            pairs: Vec::new(),
            total_weight: W::ZERO,
        }
    }

    /// For solvers that compute weights against another edge store
    /// (e.g. a dense matrix). The caller guarantees the invariants.
    pub(crate) fn from_raw(mut pairs: Vec<(usize, usize)>, total_weight: W) -> Self {
        pairs.sort_unstable();
        Self {
            pairs,
            total_weight,
        }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn total_weight(&self) -> W {
        self.total_weight
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs expressed in the orientation of the original input: if the
    /// graph was transposed during normalization the endpoints are
    /// swapped back.
    pub fn oriented_pairs(&self, g: &BipartiteGraph<W>) -> Vec<(usize, usize)> {
        if g.transposed() {
            let mut out: Vec<(usize, usize)> = self.pairs.iter().map(|&(l, r)| (r, l)).collect();
            out.sort_unstable();
            out
        } else {
            self.pairs.clone()
        }
    }
}
