//! Dual potentials (vertex labels) and the optimality certificate.

use crate::graph::BipartiteGraph;
use crate::matching::Matching;
use crate::weight::Weight;
use thiserror::Error;

/// Feasible vertex labeling: for every edge `(l, r)` the labels satisfy
/// `h_left[l] + h_right[r] >= w(l, r)` between searches.
#[derive(Debug, Clone, PartialEq)]
pub struct DualLabels<W> {
    pub h_left: Vec<W>,
    pub h_right: Vec<W>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertifyError {
    #[error("edge ({left}, {right}) violates feasibility")]
    Infeasible { left: usize, right: usize },
    #[error("matched pair ({left}, {right}) is not tight")]
    SlackOnMatchedPair { left: usize, right: usize },
    #[error("left vertex {left} is uncovered but has a nonzero label")]
    UncoveredLeftNonzero { left: usize },
    #[error("left vertex {left} has a negative label")]
    NegativeLeftLabel { left: usize },
    #[error("right vertex {right} has a negative label")]
    NegativeRightLabel { right: usize },
    #[error("unmatched right vertex {right} has a nonzero label")]
    UnmatchedRightNonzero { right: usize },
    #[error("label totals do not equal the matching weight")]
    TotalMismatch,
}

/// Verifies the LP-duality certificate of optimality against the graph
/// the matching was computed on:
///
/// 1. feasibility on every edge,
/// 2. tightness on every matched pair, zero labels on uncovered left
///    vertices with nonempty adjacency,
/// 3. label totals equal to the matching weight,
/// 4. nonnegative labels, zero labels on unmatched right vertices.
///
/// Together these prove the matching is maximum without an oracle.
/// `tol` is zero in integer mode.
pub fn certify<W: Weight>(
    g: &BipartiteGraph<W>,
    matching: &Matching<W>,
    labels: &DualLabels<W>,
    tol: W,
) -> Result<(), CertifyError> {
    let hl = &labels.h_left;
    let hr = &labels.h_right;

    for (l, r, w) in g.edges() {
        if hl[l] + hr[r] < w - tol {
            return Err(CertifyError::Infeasible { left: l, right: r });
        }
    }

    let mut left_matched = vec![false; g.n_left()];
    let mut right_matched = vec![false; g.n_right()];
    for &(l, r) in matching.pairs() {
        left_matched[l] = true;
        right_matched[r] = true;
        let w = g.weight_of(l, r).expect("pair is an edge");
        let slack = hl[l] + hr[r] - w;
        if slack.magnitude() > tol {
            return Err(CertifyError::SlackOnMatchedPair { left: l, right: r });
        }
    }

    let mut left_total = W::ZERO;
    for l in 0..g.n_left() {
        if hl[l] < -tol {
            return Err(CertifyError::NegativeLeftLabel { left: l });
        }
        if g.degree(l) == 0 {
            continue;
        }
        if !left_matched[l] && hl[l].magnitude() > tol {
            return Err(CertifyError::UncoveredLeftNonzero { left: l });
        }
        left_total += hl[l];
    }

    let mut right_total = W::ZERO;
    for r in 0..g.n_right() {
        if hr[r] < -tol {
            return Err(CertifyError::NegativeRightLabel { right: r });
        }
        if !right_matched[r] && hr[r].magnitude() > tol {
            return Err(CertifyError::UnmatchedRightNonzero { right: r });
        }
        right_total += hr[r];
    }

    let diff = left_total + right_total - matching.total_weight();
    // totals accumulate, so scale the tolerance by the term count
    let scaled_tol = tol.times(g.n_left() + g.n_right() + 1);
    if diff.magnitude() > scaled_tol {
        return Err(CertifyError::TotalMismatch);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_a_valid_certificate() {
        let g = BipartiteGraph::from_dense(&[vec![5i64, 1], vec![2, 3]]).clean();
        let m = Matching::from_pairs(&g, vec![(0, 0), (1, 1)]);
        let labels = DualLabels {
            h_left: vec![5, 3],
            h_right: vec![0, 0],
        };
        certify(&g, &m, &labels, 0).unwrap();
    }

    #[test]
    fn rejects_infeasible_labels() {
        let g = BipartiteGraph::from_dense(&[vec![5i64, 1], vec![2, 3]]).clean();
        let m = Matching::from_pairs(&g, vec![(0, 0), (1, 1)]);
        let labels = DualLabels {
            h_left: vec![4, 3],
            h_right: vec![0, 0],
        };
        assert_eq!(
            certify(&g, &m, &labels, 0).unwrap_err(),
            CertifyError::Infeasible { left: 0, right: 0 }
        );
    }

    #[test]
    fn rejects_total_mismatch() {
        let g = BipartiteGraph::from_dense(&[vec![5i64]]).clean();
        let m = Matching::from_pairs(&g, vec![(0, 0)]);
        let labels = DualLabels {
            h_left: vec![5],
            h_right: vec![1],
        };
        // feasible and tight fails first on the matched pair slack
        assert!(certify(&g, &m, &labels, 0).is_err());
    }
}
