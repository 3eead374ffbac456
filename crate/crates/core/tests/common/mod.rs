//! Brute-force oracles shared by the integration tests. Nothing here uses
//! the solver.
#![allow(dead_code)]

use mixhom::{ColorSet, MixedGraph};

/// Target links as a lookup: `arc[c][x][y]` and `edge[c][x][y]`.
pub struct LinkTable {
    arc: Vec<Vec<Vec<bool>>>,
    edge: Vec<Vec<Vec<bool>>>,
}

impl LinkTable {
    pub fn new(t: &MixedGraph) -> Self {
        let k = t.num_vertices();
        let mut arc = vec![vec![vec![false; k]; k]; t.m()];
        let mut edge = vec![vec![vec![false; k]; k]; t.n()];
        for a in t.arcs() {
            arc[a.color][a.tail][a.head] = true;
        }
        for e in t.edges() {
            edge[e.color][e.u][e.v] = true;
            edge[e.color][e.v][e.u] = true;
        }
        LinkTable { arc, edge }
    }
}

pub fn is_hom(source: &MixedGraph, table: &LinkTable, map: &[usize]) -> bool {
    source.arcs().iter().all(|a| table.arc[a.color][map[a.tail]][map[a.head]])
        && source.edges().iter().all(|e| table.edge[e.color][map[e.u]][map[e.v]])
}

/// Calls `f` on every assignment respecting the domains.
pub fn for_each_assignment(source: &MixedGraph, target: &MixedGraph, domains: &[ColorSet], mut f: impl FnMut(&[usize])) {
    let table = LinkTable::new(target);
    let nv = source.num_vertices();
    let choices: Vec<Vec<usize>> = (0..nv).map(|v| domains[v].iter().collect()).collect();
    if choices.iter().any(Vec::is_empty) {
        return;
    }
    let mut idx = vec![0usize; nv];
    let mut map: Vec<usize> = choices.iter().map(|c| c[0]).collect();
    loop {
        if is_hom(source, &table, &map) {
            f(&map);
        }
        let mut i = 0;
        loop {
            if i == nv {
                return;
            }
            idx[i] += 1;
            if idx[i] < choices[i].len() {
                map[i] = choices[i][idx[i]];
                break;
            }
            idx[i] = 0;
            map[i] = choices[i][0];
            i += 1;
        }
    }
}

pub fn full_domains(source: &MixedGraph, target: &MixedGraph) -> Vec<ColorSet> {
    vec![ColorSet::full(target.num_vertices()); source.num_vertices()]
}

pub fn brute_count(source: &MixedGraph, target: &MixedGraph, domains: &[ColorSet]) -> u128 {
    let mut n = 0;
    for_each_assignment(source, target, domains, |_| n += 1);
    n
}

pub fn brute_forced(source: &MixedGraph, v: usize, target: &MixedGraph, domains: &[ColorSet]) -> ColorSet {
    let mut out = ColorSet::empty(target.num_vertices());
    for_each_assignment(source, target, domains, |m| out.insert(m[v]));
    out
}

/// Every labeled graph on `order` vertices with at most `max_links` links.
pub fn small_graphs(order: usize, m: usize, n: usize, max_links: usize) -> Vec<MixedGraph> {
    let pairs: Vec<(usize, usize)> = (0..order).flat_map(|u| (u + 1..order).map(move |v| (u, v))).collect();
    let states = 1 + 2 * m + n;
    let mut out = Vec::new();
    for mut code in 0..states.pow(pairs.len() as u32) {
        let mut g = MixedGraph::new(order, m, n);
        for &(u, v) in &pairs {
            let s = code % states;
            code /= states;
            if s == 0 {
                continue;
            } else if s <= 2 * m {
                let c = (s - 1) / 2;
                if s % 2 == 1 {
                    g.add_arc(u, v, c);
                } else {
                    g.add_arc(v, u, c);
                }
            } else {
                g.add_edge(u, v, s - 1 - 2 * m);
            }
        }
        if g.num_links() <= max_links {
            out.push(g);
        }
    }
    out
}

/// Shortest cycle of the underlying graph by trying every edge: the
/// shortest path between its ends avoiding that edge, plus one.
pub fn girth_by_edge_removal(g: &MixedGraph) -> Option<usize> {
    let adj = g.underlying_adjacency();
    let mut best: Option<usize> = None;
    for u in 0..adj.len() {
        for &v in adj[u].iter().filter(|&&v| v > u) {
            let mut dist = vec![usize::MAX; adj.len()];
            dist[u] = 0;
            let mut queue = std::collections::VecDeque::from([u]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if (x, y) == (u, v) || dist[y] != usize::MAX {
                        continue;
                    }
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
            if dist[v] != usize::MAX {
                let len = dist[v] + 1;
                best = Some(best.map_or(len, |b| b.min(len)));
            }
        }
    }
    best
}
