//! Built-in target graphs and their fact sheets.
//!
//! `t5` is the oriented target on `a..e`, `t6` the 2-edge-colored target on
//! `a..f` (blue = edge color 0, red = edge color 1). `t4_oriented` is the
//! tournament induced by `{a,b,c,d}` in `t5`, and `t4_2ec` the 4-clique whose
//! blue and red edges each induce a path of length 3.

mod facts;
mod reconstruct;

use std::fmt;
use std::str::FromStr;

pub use facts::{
    check_facts, fact_sheet, verify_target_facts, Fact, FactReport, FactResult, NamedFact, TargetFactSheet,
};
pub use reconstruct::{reconstruct_candidates, Reconstruction};

use crate::error::{Error, Result};
use crate::graph::{MixedGraph, BLUE, RED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TargetName {
    T5,
    T6,
    T4Oriented,
    T4TwoEdgeColored,
}

impl TargetName {
    pub const ALL: [TargetName; 4] = [
        TargetName::T5,
        TargetName::T6,
        TargetName::T4Oriented,
        TargetName::T4TwoEdgeColored,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TargetName::T5 => "t5",
            TargetName::T6 => "t6",
            TargetName::T4Oriented => "t4_oriented",
            TargetName::T4TwoEdgeColored => "t4_2ec",
        }
    }
}

impl fmt::Display for TargetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TargetName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TargetName::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::UnknownTarget(s.to_string()))
    }
}

fn letter(i: usize) -> String {
    ((b'a' + i as u8) as char).to_string()
}

fn lettered(nv: usize, m: usize, n: usize) -> MixedGraph {
    let mut g = MixedGraph::new(nv, m, n);
    for v in 0..nv {
        g.set_label(v, letter(v));
    }
    g
}

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;
const E: usize = 4;
const F: usize = 5;

fn t5() -> MixedGraph {
    let mut g = lettered(5, 1, 0);
    for (t, h) in [(A, B), (A, C), (B, C), (B, D), (C, D), (D, A), (B, E), (D, E), (E, A)] {
        g.add_arc(t, h, 0);
    }
    g
}

fn t6() -> MixedGraph {
    let mut g = lettered(6, 0, 2);
    for (u, v) in [(A, B), (A, C), (A, F), (B, D), (D, E), (E, F)] {
        g.add_edge(u, v, BLUE);
    }
    for (u, v) in [(A, D), (A, E), (B, C), (B, E), (B, F), (C, D)] {
        g.add_edge(u, v, RED);
    }
    g
}

pub fn builtin_target(name: TargetName) -> MixedGraph {
    match name {
        TargetName::T5 => t5(),
        TargetName::T6 => t6(),
        TargetName::T4Oriented => t5().induced_subgraph(&[A, B, C, D]),
        TargetName::T4TwoEdgeColored => t6().induced_subgraph(&[A, B, C, D]),
    }
}

/// Looks a builtin up by its name string.
pub fn builtin_by_name(name: &str) -> Result<MixedGraph> {
    Ok(builtin_target(name.parse()?))
}
