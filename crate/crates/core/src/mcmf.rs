//! Min-cost max-flow reduction for maximum weight matching: negate the
//! weights, seed potentials with one pass over the initially acyclic
//! network, then run Dijkstra with reduced costs once per augmentation.
//! Augmentation stops as soon as the true shortest-path cost turns
//! positive, which drops the zero-value tail a perfect-matching run
//! would add.

use crate::graph::BipartiteGraph;
use crate::heap::{HeapHandle, PairingHeap};
use crate::kwok::SolveError;
use crate::matching::Matching;
use crate::stats::SolveStats;
use crate::weight::Weight;

struct Arc<W> {
    to: usize,
    cap: u32,
    cost: W,
}

/// Residual network with node potentials keeping reduced costs
/// non-negative before every shortest-path run.
struct FlowNetwork<W> {
    arcs: Vec<Arc<W>>,
    adj: Vec<Vec<usize>>,
    potential: Vec<W>,
}

impl<W: Weight> FlowNetwork<W> {
    fn add_arc(&mut self, from: usize, to: usize, cap: u32, cost: W) {
        self.adj[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap, cost });
        self.adj[to].push(self.arcs.len());
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            cost: W::ZERO - cost,
        });
    }

    #[cfg(debug_assertions)]
    fn assert_reduced_costs_nonneg(&self, tol: W) {
        for (u, ids) in self.adj.iter().enumerate() {
            for &id in ids {
                let arc = &self.arcs[id];
                if arc.cap > 0 {
                    let reduced = arc.cost + self.potential[u] - self.potential[arc.to];
                    debug_assert!(
                        reduced >= -tol,
                        "negative reduced cost on residual arc {u} -> {}",
                        arc.to
                    );
                }
            }
        }
    }
}

/// Maximum weight matching as successive shortest paths. Requires a
/// cleaned graph.
pub fn mcmf_dijkstra<W: Weight>(
    g: &BipartiteGraph<W>,
) -> Result<(Matching<W>, SolveStats), SolveError> {
    if let Some((l, r, _)) = g.edges().find(|&(_, _, w)| w <= W::ZERO) {
        return Err(SolveError::UncleanGraph { left: l, right: r });
    }
    let n_left = g.n_left();
    let n_right = g.n_right();
    let source = 0usize;
    let sink = n_left + n_right + 1;
    let n_nodes = sink + 1;
    let left_node = |l: usize| 1 + l;
    let right_node = |r: usize| 1 + n_left + r;

    let mut net = FlowNetwork {
        arcs: Vec::with_capacity(2 * (n_left + n_right + g.n_edges())),
        adj: vec![Vec::new(); n_nodes],
        potential: vec![W::ZERO; n_nodes],
    };
    for l in 0..n_left {
        net.add_arc(source, left_node(l), 1, W::ZERO);
    }
    let mut edge_arc_ids = Vec::with_capacity(g.n_edges());
    for l in 0..n_left {
        for (r, w) in g.adjacency(l) {
            edge_arc_ids.push((l, r, net.arcs.len()));
            net.add_arc(left_node(l), right_node(r), 1, W::ZERO - w);
        }
    }
    for r in 0..n_right {
        net.add_arc(right_node(r), sink, 1, W::ZERO);
    }

    // the network is a DAG source -> L -> R -> sink, so one sweep in
    // that order yields exact shortest distances as initial potentials
    for l in 0..n_left {
        for (r, w) in g.adjacency(l) {
            let cand = net.potential[left_node(l)] - w;
            if cand < net.potential[right_node(r)] {
                net.potential[right_node(r)] = cand;
            }
        }
    }
    let mut sink_pot = W::ZERO;
    for r in 0..n_right {
        if net.potential[right_node(r)] < sink_pot {
            sink_pot = net.potential[right_node(r)];
        }
    }
    net.potential[sink] = sink_pot;

    let tol = W::default_tolerance(g.max_abs_weight());
    let mut stats = SolveStats {
        effective_edges: g.n_edges() as u64,
        ..SolveStats::default()
    };

    let mut dist = vec![W::INF; n_nodes];
    let mut parent_arc: Vec<Option<usize>> = vec![None; n_nodes];
    let mut handles: Vec<Option<HeapHandle>> = vec![None; n_nodes];
    let mut heap: PairingHeap<(W, usize), usize> = PairingHeap::new();

    for _round in 0..n_left {
        #[cfg(debug_assertions)]
        net.assert_reduced_costs_nonneg(tol);

        for v in 0..n_nodes {
            dist[v] = W::INF;
            parent_arc[v] = None;
            handles[v] = None;
        }
        heap.clear();
        dist[source] = W::ZERO;
        handles[source] = Some(heap.insert((W::ZERO, source), source));

        let mut sink_reached = false;
        while let Ok(((d, _), u)) = heap.extract_min() {
            stats.heap_extracts += 1;
            handles[u] = None;
            if u == sink {
                sink_reached = true;
                break;
            }
            for &id in &net.adj[u] {
                let arc = &net.arcs[id];
                if arc.cap == 0 {
                    continue;
                }
                stats.edges_visited += 1;
                let v = arc.to;
                let reduced = arc.cost + net.potential[u] - net.potential[v];
                let nd = d + reduced;
                if nd < dist[v] {
                    dist[v] = nd;
                    parent_arc[v] = Some(id);
                    match handles[v] {
                        Some(h) => {
                            heap.decrease_key(h, (nd, v)).expect("distance decreased");
                            stats.heap_decreases += 1;
                        }
                        None => {
                            handles[v] = Some(heap.insert((nd, v), v));
                            stats.heap_inserts += 1;
                        }
                    }
                }
            }
        }
        if !sink_reached {
            break;
        }
        // true path cost; the source potential stays zero
        let path_cost = dist[sink] + net.potential[sink];
        if path_cost > tol {
            break;
        }

        // cap distance updates at the sink distance so unreached nodes
        // keep feasible potentials
        let sink_dist = dist[sink];
        for (pot, &dv) in net.potential.iter_mut().zip(&dist) {
            *pot += if dv < sink_dist { dv } else { sink_dist };
        }
        stats.h_adjustments += 1;

        let mut v = sink;
        while v != source {
            let id = parent_arc[v].expect("path back to source");
            net.arcs[id].cap -= 1;
            net.arcs[id ^ 1].cap += 1;
            v = net.arcs[id ^ 1].to;
        }
        stats.augmentations += 1;
    }

    let mut pairs = Vec::new();
    for &(l, r, id) in &edge_arc_ids {
        if net.arcs[id].cap == 0 {
            pairs.push((l, r));
        }
    }
    Ok((Matching::from_pairs(g, pairs), stats))
}
