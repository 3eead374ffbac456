//! Structural metrics on the underlying simple graph, plus the arithmetic
//! bounds used when reasoning about planar universal targets.

mod bounds;
mod discharging;
mod mad;

use std::collections::VecDeque;

pub use bounds::{universality_edge_bound, EdgeBound};
pub use discharging::{check_discharging, mad_lower_bound, DischargingReport};
pub use mad::{mad_by_enumeration, mad_exact, ENUMERATION_LIMIT};

use crate::colorset::ColorSet;
use crate::graph::{LinkPattern, MixedGraph, NeighborTable, Step};

/// Length of a shortest cycle, or `None` for a forest.
pub fn girth(g: &MixedGraph) -> Option<usize> {
    let adj = g.underlying_adjacency();
    let nv = adj.len();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; nv];
    let mut parent = vec![usize::MAX; nv];
    let mut queue = VecDeque::new();
    for s in 0..nv {
        let mut touched = vec![s];
        dist[s] = 0;
        queue.clear();
        queue.push_back(s);
        'bfs: while let Some(u) = queue.pop_front() {
            if 2 * dist[u] >= best {
                break;
            }
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    touched.push(w);
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                    if best == 3 {
                        break 'bfs;
                    }
                }
            }
        }
        for v in touched {
            dist[v] = usize::MAX;
            parent[v] = usize::MAX;
        }
        if best == 3 {
            break;
        }
    }
    (best != usize::MAX).then_some(best)
}

/// Proper 2-coloring of the underlying graph, if one exists. Each
/// component is colored by BFS from its lowest vertex, which gets side 0.
pub fn two_coloring(g: &MixedGraph) -> Option<Vec<u8>> {
    let adj = g.underlying_adjacency();
    let mut side = vec![u8::MAX; adj.len()];
    let mut queue = VecDeque::new();
    for s in 0..adj.len() {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    queue.push_back(w);
                } else if side[w] == side[u] {
                    return None;
                }
            }
        }
    }
    Some(side)
}

pub fn is_bipartite(g: &MixedGraph) -> bool {
    two_coloring(g).is_some()
}

/// Whether the underlying graph is connected. The empty graph counts as
/// connected.
pub fn is_connected(g: &MixedGraph) -> bool {
    let adj = g.underlying_adjacency();
    if adj.is_empty() {
        return true;
    }
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == adj.len()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassKind {
    Arc,
    Edge,
}

/// Connectivity of one color class of a target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassConnectivity {
    pub kind: ClassKind,
    pub color: usize,
    pub links: usize,
    /// `|V| - 1` for edge colors, `2|V| - 1` for arc colors.
    pub required_links: usize,
    /// Edge colors: connected and spanning. Arc colors: every ordered pair
    /// is joined by forward-first alternating walks of both parities.
    pub connected: bool,
}

impl ClassConnectivity {
    pub fn passes(&self) -> bool {
        self.connected && self.links >= self.required_links
    }
}

pub fn color_class_connectivity(target: &MixedGraph) -> Vec<ClassConnectivity> {
    let nv = target.num_vertices();
    let table = NeighborTable::new(target);
    let mut out = Vec::new();
    for color in 0..target.m() {
        let links = target.arcs().iter().filter(|a| a.color == color).count();
        out.push(ClassConnectivity {
            kind: ClassKind::Arc,
            color,
            links,
            required_links: (2 * nv).saturating_sub(1),
            connected: nv > 0 && alternating_reachability(&table, color),
        });
    }
    for color in 0..target.n() {
        let mut class = MixedGraph::new(nv, 0, 1);
        for e in target.edges().iter().filter(|e| e.color == color) {
            class.add_edge(e.u, e.v, 0);
        }
        out.push(ClassConnectivity {
            kind: ClassKind::Edge,
            color,
            links: class.edges().len(),
            required_links: nv.saturating_sub(1),
            connected: nv > 0 && is_connected(&class),
        });
    }
    out
}

/// Every ordered pair is joined by alternating walks of `color` starting
/// with a forward arc, of odd and of even positive length, each of length
/// at most `2|V|^2`.
fn alternating_reachability(table: &NeighborTable, color: usize) -> bool {
    let nv = table.num_vertices();
    let len = 2 * nv * nv;
    let steps: Vec<Step> = (0..len)
        .map(|i| if i % 2 == 0 { Step::forward(color) } else { Step::backward(color) })
        .collect();
    let pattern = LinkPattern::new(steps).expect("nonempty");
    (0..nv).all(|c| {
        let seq = crate::solver::transfer_with(table, &pattern, &ColorSet::singleton(nv, c));
        let mut odd = ColorSet::empty(nv);
        let mut even = ColorSet::empty(nv);
        for (l, set) in seq.iter().enumerate().skip(1) {
            if l % 2 == 1 {
                odd.union_with(set);
            } else {
                even.union_with(set);
            }
        }
        odd.len() == nv && even.len() == nv
    })
}
