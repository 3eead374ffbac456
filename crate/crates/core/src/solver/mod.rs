//! Homomorphism decision, counting and forced-color queries, plus walk
//! queries on targets.
//!
//! The search is exhaustive and deterministic: the next variable is the
//! unfixed source vertex with the smallest domain (lowest index on ties),
//! values are tried in ascending order, and arc-consistency is maintained
//! along every link.

mod search;
mod walk;

use std::collections::BTreeMap;
use std::time::Instant;

pub use walk::{exists_walk, transfer_sequence};
pub(crate) use walk::transfer_with;

use crate::colorset::ColorSet;
use crate::error::{Error, Result};
use crate::graph::{Homomorphism, MixedGraph, NeighborTable};
use search::Engine;

/// Unary domain restrictions on source vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintSet {
    domains: BTreeMap<usize, ColorSet>,
}

impl ConstraintSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Restricts `v` to `set`, intersecting with any earlier restriction.
    pub fn restrict(&mut self, v: usize, set: ColorSet) -> &mut Self {
        self.domains
            .entry(v)
            .and_modify(|d| d.intersect_with(&set))
            .or_insert(set);
        self
    }

    pub fn with(mut self, v: usize, set: ColorSet) -> Self {
        self.restrict(v, set);
        self
    }

    pub fn get(&self, v: usize) -> Option<&ColorSet> {
        self.domains.get(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &ColorSet)> {
        self.domains.iter().map(|(&v, s)| (v, s))
    }

    pub fn is_empty(&self) -> bool {
        self.domains.is_empty()
    }
}

/// Result of a search that may be cut short by a deadline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Homomorphism),
    NoHomomorphism,
    Aborted,
}

fn check_instance(source: &MixedGraph, target: &MixedGraph, constraints: &ConstraintSet) -> Result<()> {
    if source.signature() != target.signature() {
        return Err(Error::SignatureMismatch {
            expected_m: target.m(),
            expected_n: target.n(),
            found_m: source.m(),
            found_n: source.n(),
        });
    }
    for (v, set) in constraints.iter() {
        if v >= source.num_vertices() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                num_vertices: source.num_vertices(),
            });
        }
        if set.universe() != target.num_vertices() {
            return Err(Error::InvalidParameter(format!(
                "constraint on vertex {v} is over {} colors, target has {}",
                set.universe(),
                target.num_vertices()
            )));
        }
    }
    Ok(())
}

fn initial_domains(source: &MixedGraph, target: &MixedGraph, constraints: &ConstraintSet) -> Vec<ColorSet> {
    let full = ColorSet::full(target.num_vertices());
    (0..source.num_vertices())
        .map(|v| constraints.get(v).map_or_else(|| full.clone(), |s| s.intersection(&full)))
        .collect()
}

fn all_vertices(g: &MixedGraph) -> Vec<usize> {
    (0..g.num_vertices()).collect()
}

pub fn find_homomorphism(
    source: &MixedGraph,
    target: &MixedGraph,
    constraints: &ConstraintSet,
) -> Result<Option<Homomorphism>> {
    match find_homomorphism_until(source, target, constraints, None)? {
        SearchOutcome::Found(h) => Ok(Some(h)),
        SearchOutcome::NoHomomorphism => Ok(None),
        SearchOutcome::Aborted => unreachable!("no deadline was set"),
    }
}

/// As [`find_homomorphism`], giving up at `deadline`.
pub fn find_homomorphism_until(
    source: &MixedGraph,
    target: &MixedGraph,
    constraints: &ConstraintSet,
    deadline: Option<Instant>,
) -> Result<SearchOutcome> {
    check_instance(source, target, constraints)?;
    let table = NeighborTable::new(target);
    let mut engine = Engine::new(source, &table, initial_domains(source, target, constraints), deadline);
    if !engine.initialize() {
        return Ok(SearchOutcome::NoHomomorphism);
    }
    for comp in engine.components(&all_vertices(source)) {
        if !engine.solve(&comp) {
            return Ok(if engine.aborted {
                SearchOutcome::Aborted
            } else {
                SearchOutcome::NoHomomorphism
            });
        }
    }
    let mapping = engine
        .domains
        .iter()
        .map(|d| d.first().expect("solved domains are singletons"))
        .collect();
    Ok(SearchOutcome::Found(Homomorphism::new(mapping)))
}

/// Exact number of homomorphisms respecting the constraints (saturating
/// at `u128::MAX`).
pub fn count_homomorphisms(source: &MixedGraph, target: &MixedGraph, constraints: &ConstraintSet) -> Result<u128> {
    check_instance(source, target, constraints)?;
    let table = NeighborTable::new(target);
    let mut engine = Engine::new(source, &table, initial_domains(source, target, constraints), None);
    if !engine.initialize() {
        return Ok(0);
    }
    let mut product: u128 = 1;
    for comp in engine.components(&all_vertices(source)) {
        product = product.saturating_mul(engine.count(&comp));
        if product == 0 {
            break;
        }
    }
    Ok(product)
}

/// The set of target vertices that `v` takes over all homomorphisms
/// respecting the constraints. Empty iff there is no such homomorphism.
pub fn forced_colors(
    source: &MixedGraph,
    v: usize,
    target: &MixedGraph,
    constraints: &ConstraintSet,
) -> Result<ColorSet> {
    check_instance(source, target, constraints)?;
    if v >= source.num_vertices() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            num_vertices: source.num_vertices(),
        });
    }
    let table = NeighborTable::new(target);
    let base = initial_domains(source, target, constraints);
    let mut out = ColorSet::empty(target.num_vertices());
    let mut probe = Engine::new(source, &table, base.clone(), None);
    if !probe.initialize() {
        return Ok(out);
    }
    let candidates: Vec<usize> = probe.domains[v].iter().collect();
    for x in candidates {
        if out.contains(x) {
            continue;
        }
        let mut domains = probe.domains.clone();
        domains[v] = ColorSet::singleton(target.num_vertices(), x);
        let mut engine = Engine::new(source, &table, domains, None);
        if !engine.initialize() {
            continue;
        }
        let ok = engine
            .components(&all_vertices(source))
            .iter()
            .all(|comp| engine.solve(comp));
        if ok {
            out.insert(engine.domains[v].first().unwrap());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Step;

    fn directed_cycle(n: usize) -> MixedGraph {
        let mut g = MixedGraph::new(n, 1, 0);
        for i in 0..n {
            g.add_arc(i, (i + 1) % n, 0);
        }
        g
    }

    fn transitive_triangle() -> MixedGraph {
        let mut g = MixedGraph::new(3, 1, 0);
        g.add_arc(0, 1, 0);
        g.add_arc(1, 2, 0);
        g.add_arc(0, 2, 0);
        g
    }

    #[test]
    fn directed_triangle_into_transitive_fails() {
        let h = find_homomorphism(&directed_cycle(3), &transitive_triangle(), &ConstraintSet::new()).unwrap();
        assert!(h.is_none());
        assert_eq!(
            count_homomorphisms(&directed_cycle(3), &directed_cycle(3), &ConstraintSet::new()).unwrap(),
            3
        );
    }

    #[test]
    fn signature_mismatch() {
        let g = MixedGraph::new(1, 0, 1);
        let e = find_homomorphism(&g, &directed_cycle(3), &ConstraintSet::new()).unwrap_err();
        assert!(matches!(e, Error::SignatureMismatch { .. }));
    }

    #[test]
    fn empty_source_has_one_map() {
        let g = MixedGraph::new(0, 1, 0);
        assert_eq!(count_homomorphisms(&g, &directed_cycle(3), &ConstraintSet::new()).unwrap(), 1);
        assert_eq!(
            find_homomorphism(&g, &directed_cycle(3), &ConstraintSet::new()).unwrap(),
            Some(Homomorphism::new(vec![]))
        );
    }

    #[test]
    fn isolated_vertices_multiply() {
        let g = MixedGraph::new(3, 1, 0);
        let c = ConstraintSet::new().with(1, ColorSet::from_indices(4, [0, 1]));
        assert_eq!(count_homomorphisms(&g, &directed_cycle(4), &c).unwrap(), 4 * 2 * 4);
    }

    #[test]
    fn forced_along_path() {
        let mut p = MixedGraph::new(3, 1, 0);
        p.add_link(0, 1, Step::forward(0));
        p.add_link(1, 2, Step::forward(0));
        let c = ConstraintSet::new().with(0, ColorSet::singleton(5, 0));
        let f = forced_colors(&p, 2, &directed_cycle(5), &c).unwrap();
        assert_eq!(f, ColorSet::singleton(5, 2));
    }

    #[test]
    fn deadline_in_past_aborts_hard_instance() {
        // bipartite-free: odd undirected cycle into a single edge, needs search
        let mut src = MixedGraph::new(41, 0, 1);
        for i in 0..41 {
            src.add_edge(i, (i + 1) % 41, 0);
        }
        let mut tgt = MixedGraph::new(4, 0, 1);
        tgt.add_edge(0, 1, 0);
        tgt.add_edge(2, 3, 0);
        let out = find_homomorphism_until(&src, &tgt, &ConstraintSet::new(), Some(Instant::now())).unwrap();
        assert!(matches!(out, SearchOutcome::NoHomomorphism | SearchOutcome::Aborted));
    }
}
