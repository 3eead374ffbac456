//! Exhaustive sweeps over every small target of a signature.

use rayon::prelude::*;

use crate::error::Result;
use crate::graph::{MixedGraph, Step};
use crate::iso::canonical_code;
use crate::solver::{find_homomorphism, ConstraintSet};

/// Every labeled graph on `order` vertices with signature `(m, n)` whose
/// underlying graph has at most `max_links` edges, in a fixed order.
pub fn labeled_graphs(order: usize, m: usize, n: usize, max_links: usize) -> Vec<MixedGraph> {
    let pairs: Vec<(usize, usize)> = (0..order)
        .flat_map(|u| (u + 1..order).map(move |v| (u, v)))
        .collect();
    let mut states: Vec<Option<Step>> = vec![None];
    for c in 0..m {
        states.push(Some(Step::forward(c)));
        states.push(Some(Step::backward(c)));
    }
    for c in 0..n {
        states.push(Some(Step::edge(c)));
    }
    let total = states.len().pow(pairs.len() as u32);
    (0..total)
        .filter_map(|mut code| {
            let mut g = MixedGraph::new(order, m, n);
            for &(u, v) in &pairs {
                if let Some(s) = states[code % states.len()] {
                    g.add_link(u, v, s);
                }
                code /= states.len();
            }
            (g.num_links() <= max_links).then_some(g)
        })
        .collect()
}

/// Planar edge cap for `order` vertices: `3k - 6` from 3 vertices on.
pub fn planar_link_cap(order: usize) -> usize {
    if order >= 3 {
        3 * order - 6
    } else {
        order * order.saturating_sub(1) / 2
    }
}

/// One representative per isomorphism class, keeping the first seen.
pub fn up_to_isomorphism(graphs: Vec<MixedGraph>) -> Vec<MixedGraph> {
    let mut seen = std::collections::BTreeSet::new();
    graphs.into_iter().filter(|g| seen.insert(canonical_code(g))).collect()
}

/// Tournaments on `order` vertices, one per isomorphism class.
pub fn tournaments(order: usize) -> Vec<MixedGraph> {
    let all = labeled_graphs(order, 1, 0, usize::MAX);
    let complete = order * order.saturating_sub(1) / 2;
    up_to_isomorphism(all.into_iter().filter(|g| g.num_links() == complete).collect())
}

/// The first target (in the given order) that `source` maps to, checked in
/// parallel.
pub fn first_accepting_target<'a>(source: &MixedGraph, targets: &'a [MixedGraph]) -> Result<Option<&'a MixedGraph>> {
    let hits: Vec<Result<bool>> = targets
        .par_iter()
        .map(|t| Ok(find_homomorphism(source, t, &ConstraintSet::new())?.is_some()))
        .collect();
    for (t, hit) in targets.iter().zip(hits) {
        if hit? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}
