//! Rebuilding a target from its fact sheet alone.
//!
//! Every labeled graph on the given vertex set is a choice of link state
//! for each vertex pair. Pair-local facts prune the choices during the
//! enumeration; the remaining facts are checked on complete graphs,
//! cheapest first. Survivors are grouped by isomorphism class.

use std::collections::BTreeMap;

use super::facts::{Fact, TargetFactSheet};
use crate::error::{Error, Result};
use crate::graph::{MixedGraph, Step};
use crate::iso::canonical_code;
use crate::mg1::serialize_graph;

const MAX_VERTICES: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reconstruction {
    pub target_name: String,
    /// One graph per isomorphism class (the one with the smallest MG1
    /// text), sorted by MG1 text.
    pub candidates: Vec<MixedGraph>,
    /// Labeled graphs that satisfied every fact.
    pub labeled_matches: u64,
    /// Complete graphs that reached the global checks.
    pub examined: u64,
}

impl Reconstruction {
    pub fn is_unique(&self) -> bool {
        self.candidates.len() == 1
    }

    pub fn is_ambiguous(&self) -> bool {
        self.candidates.len() > 1
    }
}

fn cost(f: &Fact) -> u8 {
    match f {
        Fact::NeighborhoodEquals { .. } | Fact::LinkPresent { .. } | Fact::LinkAbsent { .. } => 0,
        Fact::InducedComplete { .. } | Fact::ColorClassPath { .. } | Fact::SpanningConnected { .. } => 1,
        Fact::WalkAbsent { .. } | Fact::AlternatingCycle { .. } | Fact::OddCycleForcing { .. } => 2,
        Fact::InducedIsomorphic { .. } | Fact::CycleEnumeration { .. } => 3,
        Fact::ForbiddenProfile { .. } => 4,
    }
}

/// All graphs on `num_vertices` vertices with signature `(m, n)` that
/// satisfy every fact of `sheet`.
pub fn reconstruct_candidates(
    sheet: &TargetFactSheet,
    num_vertices: usize,
    m: usize,
    n: usize,
) -> Result<Reconstruction> {
    let pairs: Vec<(usize, usize)> = (0..num_vertices)
        .flat_map(|u| (u + 1..num_vertices).map(move |v| (u, v)))
        .collect();
    if num_vertices > MAX_VERTICES {
        return Err(Error::SizeLimit {
            size: num_vertices,
            limit: MAX_VERTICES,
        });
    }
    // planar graphs on k >= 3 vertices have at most 3k - 6 edges
    let max_links = if num_vertices >= 3 { 3 * num_vertices - 6 } else { pairs.len() };
    let mut states: Vec<Option<Step>> = vec![None];
    for c in 0..m {
        states.push(Some(Step::forward(c)));
        states.push(Some(Step::backward(c)));
    }
    for c in 0..n {
        states.push(Some(Step::edge(c)));
    }
    let options: Vec<Vec<Option<Step>>> = pairs
        .iter()
        .map(|&(u, v)| {
            states
                .iter()
                .copied()
                .filter(|&s| sheet.facts.iter().all(|nf| nf.fact.admits_pair(u, v, s)))
                .collect()
        })
        .collect();
    let mut global: Vec<&Fact> = sheet.facts.iter().map(|nf| &nf.fact).collect();
    global.sort_by_key(|f| cost(f));

    let mut out = Reconstruction {
        target_name: sheet.target_name.clone(),
        candidates: Vec::new(),
        labeled_matches: 0,
        examined: 0,
    };
    if options.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    let mut classes: BTreeMap<Vec<u16>, (String, MixedGraph)> = BTreeMap::new();
    let mut choice = vec![0usize; pairs.len()];
    loop {
        let mut g = MixedGraph::new(num_vertices, m, n);
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if let Some(step) = options[i][choice[i]] {
                g.add_link(u, v, step);
            }
        }
        if g.num_links() <= max_links {
            out.examined += 1;
            if global.iter().all(|f| f.holds(&g)) {
                out.labeled_matches += 1;
                let text = serialize_graph(&g);
                let slot = classes.entry(canonical_code(&g)).or_insert_with(|| (text.clone(), g.clone()));
                if text < slot.0 {
                    *slot = (text, g);
                }
            }
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == pairs.len() {
                let mut reps: Vec<(String, MixedGraph)> = classes.into_values().collect();
                reps.sort_by(|a, b| a.0.cmp(&b.0));
                out.candidates = reps.into_iter().map(|(_, g)| g).collect();
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < options[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}
