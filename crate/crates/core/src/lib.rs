//! Maximum weight matching on bipartite graphs.
//!
//! The main solver ([`solve`]) is an extension of the non-line-covering
//! Hungarian method that works directly on sparse adjacency lists with
//! `|L| <= |R|`, defers dual updates, and runs in
//! `O(min(L^3 + E, LE + L^2 log L))` worst case. Two reference solvers
//! ([`hungarian::hungarian_eager`], [`mcmf::mcmf_dijkstra`]) and a
//! brute-force oracle ([`oracle`]) back the test and benchmark suites.
//!
//! ```
//! use mwm_core::{solve, BipartiteGraph, SolveOptions};
//!
//! let g = BipartiteGraph::build(2, 2, &[(0, 0, 5i64), (0, 1, 1), (1, 0, 2), (1, 1, 3)])
//!     .unwrap()
//!     .clean();
//! let out = solve(&g, &SolveOptions::default()).unwrap();
//! assert_eq!(out.matching.total_weight(), 8);
//! ```

pub mod graph;
pub mod heap;
pub mod hungarian;
pub mod kwok;
pub mod labels;
pub mod matching;
pub mod mcmf;
pub mod oracle;
pub mod stats;
pub mod text;
pub mod weight;

pub use graph::{BipartiteGraph, Diagnostic, GraphError};
pub use kwok::{solve, solve_traced, AugmentEvent, SolveError, SolveOptions, SolveOutcome};
pub use labels::{certify, CertifyError, DualLabels};
pub use matching::Matching;
pub use stats::SolveStats;
pub use weight::Weight;
