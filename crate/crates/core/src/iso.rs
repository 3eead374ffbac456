//! Brute-force isomorphism for small graphs (every permutation is tried).

use crate::graph::MixedGraph;

/// Calls `f` on every permutation of `0..n` (Heap's algorithm) until it returns `true`.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    let mut perm: Vec<usize> = (0..n).collect();
    if f(&perm) {
        return true;
    }
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if f(&perm) {
                return true;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    false
}

/// Link code matrix: entry `[u][v]` identifies the link from `u` to `v`.
fn link_codes(g: &MixedGraph) -> Vec<Vec<u16>> {
    let n = g.num_vertices();
    let mut codes = vec![vec![0u16; n]; n];
    for (u, v, s) in g.links() {
        codes[u][v] = 1 + s.index(g.m()) as u16;
        codes[v][u] = 1 + s.reverse().index(g.m()) as u16;
    }
    codes
}

fn unlabeled_eq(a: &MixedGraph, b: &MixedGraph) -> bool {
    a.signature() == b.signature()
        && a.num_vertices() == b.num_vertices()
        && a.arcs().len() == b.arcs().len()
        && a.edges().len() == b.edges().len()
}

/// Returns `perm` with `perm[v]` = image in `b` of vertex `v` of `a`.
pub fn find_isomorphism(a: &MixedGraph, b: &MixedGraph) -> Option<Vec<usize>> {
    if !unlabeled_eq(a, b) {
        return None;
    }
    let (ca, cb) = (link_codes(a), link_codes(b));
    let n = a.num_vertices();
    let mut found = None;
    for_each_permutation(n, |p| {
        let ok = (0..n).all(|u| (0..n).all(|v| ca[u][v] == cb[p[u]][p[v]]));
        if ok {
            found = Some(p.to_vec());
        }
        ok
    });
    found
}

pub fn are_isomorphic(a: &MixedGraph, b: &MixedGraph) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Lexicographically smallest relabeled link-code matrix; equal for
/// isomorphic graphs of the same signature.
pub fn canonical_code(g: &MixedGraph) -> Vec<u16> {
    let codes = link_codes(g);
    let n = g.num_vertices();
    let mut best: Option<Vec<u16>> = None;
    for_each_permutation(n, |p| {
        // p[i] = old vertex placed at position i
        let flat: Vec<u16> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| codes[p[i]][p[j]])
            .collect();
        if best.as_ref().is_none_or(|b| flat < *b) {
            best = Some(flat);
        }
        false
    });
    best.unwrap_or_default()
}
