/// Instrumentation counters collected by every solver.
///
/// `edges_visited` counts each adjacency entry examined during a search
/// plus one probe per dequeued left vertex (the implicit zero-weight
/// edge to the first unmatched right vertex). `h_adjustments` counts
/// dual adjustment computations. The `max_bfs_*` fields record per-search
/// maxima so the worst-case accounting can be checked externally.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub edges_visited: u64,
    pub h_adjustments: u64,
    pub augmentations: u64,
    pub greedy_matches: u64,
    pub heap_inserts: u64,
    pub heap_extracts: u64,
    pub heap_decreases: u64,
    pub heap_deletes: u64,
    pub max_bfs_edges_visited: u64,
    pub max_bfs_h_adjustments: u64,
    /// Edge count of the graph the search actually ran on (after any
    /// internal pruning).
    pub effective_edges: u64,
}

impl SolveStats {
    pub fn heap_ops(&self) -> u64 {
        self.heap_inserts + self.heap_extracts + self.heap_decreases + self.heap_deletes
    }
}

impl std::ops::AddAssign for SolveStats {
    fn add_assign(&mut self, rhs: Self) {
        self.edges_visited += rhs.edges_visited;
        self.h_adjustments += rhs.h_adjustments;
        self.augmentations += rhs.augmentations;
        self.greedy_matches += rhs.greedy_matches;
        self.heap_inserts += rhs.heap_inserts;
        self.heap_extracts += rhs.heap_extracts;
        self.heap_decreases += rhs.heap_decreases;
        self.heap_deletes += rhs.heap_deletes;
        self.max_bfs_edges_visited = self.max_bfs_edges_visited.max(rhs.max_bfs_edges_visited);
        self.max_bfs_h_adjustments = self.max_bfs_h_adjustments.max(rhs.max_bfs_h_adjustments);
        self.effective_edges = self.effective_edges.max(rhs.effective_edges);
    }
}
