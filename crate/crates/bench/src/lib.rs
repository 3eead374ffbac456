//! Shared inputs for the criterion benchmarks.

use mixhom::constructions;
use mixhom::{builtin_target, MixedGraph, TargetName};

/// A named source/target pair whose homomorphism question is benchmarked.
pub struct Instance {
    pub name: &'static str,
    pub source: MixedGraph,
    pub target: MixedGraph,
}

/// Refutations that finish in well under a second each.
pub fn refutations() -> Vec<Instance> {
    let t5 = builtin_target(TargetName::T5);
    let t6 = builtin_target(TargetName::T6);
    vec![
        Instance {
            name: "cactus3_to_t4",
            source: constructions::cactus(3).expect("valid girth"),
            target: builtin_target(TargetName::T4Oriented),
        },
        Instance {
            name: "y_graph_to_t5",
            source: constructions::y_graph(),
            target: t5,
        },
        Instance {
            name: "red_cycles_to_t6",
            source: constructions::red_cycles(),
            target: t6,
        },
    ]
}

/// The red cycle of length `len`. Its t6 colorings grow about 4.5 times
/// per two extra vertices, and counting enumerates them all.
pub fn red_cycle(len: usize) -> MixedGraph {
    let mut g = MixedGraph::new(len, 0, 2);
    for i in 0..len {
        g.add_edge(i, (i + 1) % len, mixhom::RED);
    }
    g
}
