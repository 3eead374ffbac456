//! Homomorphisms of (m,n)-colored-mixed graphs: graphs with `m` arc colors
//! and `n` edge colors, at most one link per vertex pair.
//!
//! The crate has a homomorphism solver with arc-consistency and component
//! decomposition, set-transfer queries on targets, builtin small targets
//! with fact sheets, generators for several counterexample graphs,
//! structural metrics (girth, exact maximum average degree), and the
//! forced-set gadget calculus.

pub mod colorset;
pub mod constructions;
pub mod error;
pub mod forcing;
pub mod graph;
pub mod iso;
pub mod metrics;
pub mod mg1;
pub mod pathlab;
pub mod solver;
pub mod sweep;
pub mod targets;

pub use colorset::ColorSet;
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use graph::{
    validate_graph, Arc, Direction, Edge, Homomorphism, LinkPattern, MixedGraph, NeighborTable, Step, Violation, BLUE,
    RED,
};
pub use mg1::{parse_graph, serialize_graph};
pub use solver::{
    count_homomorphisms, exists_walk, find_homomorphism, find_homomorphism_until, forced_colors, transfer_sequence,
    ConstraintSet, SearchOutcome,
};
pub use targets::{builtin_by_name, builtin_target, TargetName};
