//! Maximum average degree.
//!
//! `mad_exact` runs Dinkelbach iteration on the densest-subgraph problem:
//! for a guess `λ = p/q`, a minimum cut in Goldberg's network decides
//! whether some vertex set `S` has `q|E(S)| - p|S| > 0` and returns the
//! best such `S`, whose density becomes the next guess.

use std::collections::VecDeque;

use num_rational::Ratio;
use num_traits::Zero;

use crate::graph::MixedGraph;

/// Largest graph accepted by [`mad_by_enumeration`].
pub const ENUMERATION_LIMIT: usize = 20;

struct FlowEdge {
    to: usize,
    cap: i64,
}

struct Dinic {
    edges: Vec<FlowEdge>,
    adj: Vec<Vec<usize>>,
    level: Vec<i32>,
    next: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Dinic {
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            level: vec![0; n],
            next: vec![0; n],
        }
    }

    fn add(&mut self, u: usize, v: usize, cap: i64) {
        self.adj[u].push(self.edges.len());
        self.edges.push(FlowEdge { to: v, cap });
        self.adj[v].push(self.edges.len());
        self.edges.push(FlowEdge { to: u, cap: 0 });
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &id in &self.adj[u] {
                let e = &self.edges[id];
                if e.cap > 0 && self.level[e.to] < 0 {
                    self.level[e.to] = self.level[u] + 1;
                    q.push_back(e.to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: i64) -> i64 {
        if u == t {
            return pushed;
        }
        while self.next[u] < self.adj[u].len() {
            let id = self.adj[u][self.next[u]];
            let (to, cap) = (self.edges[id].to, self.edges[id].cap);
            if cap > 0 && self.level[to] == self.level[u] + 1 {
                let got = self.dfs(to, t, pushed.min(cap));
                if got > 0 {
                    self.edges[id].cap -= got;
                    self.edges[id ^ 1].cap += got;
                    return got;
                }
            }
            self.next[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.next.iter_mut().for_each(|n| *n = 0);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
        flow
    }

    /// Vertices reachable from `s` in the residual network.
    fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &id in &self.adj[u] {
                let e = &self.edges[id];
                if e.cap > 0 && !seen[e.to] {
                    seen[e.to] = true;
                    stack.push(e.to);
                }
            }
        }
        seen
    }
}

fn simple_edges(g: &MixedGraph) -> Vec<(usize, usize)> {
    g.links().map(|(u, v, _)| (u, v)).collect()
}

/// A vertex set maximizing `q|E(S)| - p|S|`, with that maximum.
fn best_set(nv: usize, edges: &[(usize, usize)], p: i64, q: i64) -> (Vec<usize>, i64) {
    // nodes: source, sink, one per edge, one per vertex
    let (s, t) = (0, 1);
    let vbase = 2 + edges.len();
    let mut net = Dinic::new(vbase + nv);
    for (i, &(u, v)) in edges.iter().enumerate() {
        net.add(s, 2 + i, q);
        net.add(2 + i, vbase + u, i64::MAX / 4);
        net.add(2 + i, vbase + v, i64::MAX / 4);
    }
    for v in 0..nv {
        net.add(vbase + v, t, p);
    }
    let cut = net.max_flow(s, t);
    let side = net.source_side(s);
    let set: Vec<usize> = (0..nv).filter(|&v| side[vbase + v]).collect();
    (set, q * edges.len() as i64 - cut)
}

/// Maximum over nonempty subgraphs of `2|E(H)|/|V(H)|`; zero for the
/// empty graph.
pub fn mad_exact(g: &MixedGraph) -> Ratio<i64> {
    let nv = g.num_vertices();
    if nv == 0 {
        return Ratio::zero();
    }
    let edges = simple_edges(g);
    let mut density = Ratio::new(edges.len() as i64, nv as i64);
    loop {
        let (set, value) = best_set(nv, &edges, *density.numer(), *density.denom());
        if value <= 0 || set.is_empty() {
            return density * 2;
        }
        let mut inside = vec![false; nv];
        for &v in &set {
            inside[v] = true;
        }
        let e = edges.iter().filter(|&&(u, v)| inside[u] && inside[v]).count();
        let next = Ratio::new(e as i64, set.len() as i64);
        debug_assert!(next > density);
        density = next;
    }
}

/// The same quantity by trying every vertex subset. Returns `None` above
/// [`ENUMERATION_LIMIT`] vertices.
pub fn mad_by_enumeration(g: &MixedGraph) -> Option<Ratio<i64>> {
    let nv = g.num_vertices();
    if nv > ENUMERATION_LIMIT {
        return None;
    }
    let mut adj = vec![0u32; nv];
    for (u, v) in simple_edges(g) {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let mut best = Ratio::zero();
    for mask in 1u32..(1u32 << nv) {
        let mut twice_edges = 0;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            twice_edges += (adj[v] & mask).count_ones() as i64;
        }
        let d = Ratio::new(twice_edges, mask.count_ones() as i64);
        if d > best {
            best = d;
        }
    }
    Some(best)
}
