//! Path-extension checks for small targets.
//!
//! A vertex `v` joined to a precolored vertex `u` by a thread of `l`
//! internal 2-vertices can take exactly the colors reached by transferring
//! `{φ(u)}` across the thread's `l + 1` links. The complement of that set
//! is what `u` *forbids* at `v`.

use std::collections::BTreeSet;

use crate::colorset::ColorSet;
use crate::error::{Error, Result};
use crate::graph::{LinkPattern, MixedGraph, NeighborTable, Step, BLUE, RED};
use crate::solver::transfer_with;

/// How the links of a thread may vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathKind {
    /// Arcs of color 0, each forward or backward.
    Oriented,
    /// Edges, each blue or red.
    TwoEdgeColored,
}

impl PathKind {
    pub fn for_target(g: &MixedGraph) -> Result<PathKind> {
        match g.signature() {
            (1, 0) => Ok(PathKind::Oriented),
            (0, 2) => Ok(PathKind::TwoEdgeColored),
            (m, n) => Err(Error::InvalidParameter(format!(
                "path checks need an oriented (1,0) or 2-edge-colored (0,2) target, got ({m},{n})"
            ))),
        }
    }

    fn choices(self) -> [Step; 2] {
        match self {
            PathKind::Oriented => [Step::forward(0), Step::backward(0)],
            PathKind::TwoEdgeColored => [Step::edge(BLUE), Step::edge(RED)],
        }
    }

    fn check(self, g: &MixedGraph) -> Result<()> {
        if PathKind::for_target(g)? == self {
            Ok(())
        } else {
            Err(Error::SignatureMismatch {
                expected_m: g.m(),
                expected_n: g.n(),
                found_m: usize::from(self == PathKind::Oriented),
                found_n: if self == PathKind::TwoEdgeColored { 2 } else { 0 },
            })
        }
    }
}

/// All `2^links` patterns of the given kind.
pub fn thread_patterns(kind: PathKind, links: usize) -> Vec<LinkPattern> {
    let choices = kind.choices();
    (0..1u64 << links)
        .map(|bits| {
            let steps = (0..links).map(|i| choices[(bits >> i & 1) as usize]).collect();
            LinkPattern::new(steps).expect("links >= 1")
        })
        .collect()
}

/// Colors available at the far end of `pattern` when the near end has
/// color `start_color`.
pub fn path_allowed_set(target: &MixedGraph, pattern: &LinkPattern, start_color: usize) -> Result<ColorSet> {
    if start_color >= target.num_vertices() {
        return Err(Error::VertexOutOfRange {
            vertex: start_color,
            num_vertices: target.num_vertices(),
        });
    }
    pattern.check_signature(target.m(), target.n())?;
    let table = NeighborTable::new(target);
    Ok(allowed(&table, pattern, start_color))
}

fn allowed(table: &NeighborTable, pattern: &LinkPattern, start: usize) -> ColorSet {
    let seq = transfer_with(table, pattern, &ColorSet::singleton(table.num_vertices(), start));
    seq.into_iter().last().unwrap()
}

/// Every allowed set produced by some start color and some pattern of a
/// thread with `internal` 2-vertices.
pub fn allowed_family(target: &MixedGraph, internal: usize, kind: PathKind) -> Result<BTreeSet<ColorSet>> {
    kind.check(target)?;
    let table = NeighborTable::new(target);
    let mut family = BTreeSet::new();
    for pattern in thread_patterns(kind, internal + 1) {
        for x in 0..target.num_vertices() {
            family.insert(allowed(&table, &pattern, x));
        }
    }
    Ok(family)
}

/// One row of a forbidden-set profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileRow {
    pub internal_len: usize,
    pub min_allowed: usize,
    pub max_forbidden_size: usize,
    /// Forbidden sets of the maximum size, sorted.
    pub maximal_forbidden_sets: Vec<ColorSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathProfile {
    pub target_name: String,
    pub rows: Vec<ProfileRow>,
}

pub fn path_profile(target: &MixedGraph, internal: usize, kind: PathKind) -> Result<ProfileRow> {
    let family = allowed_family(target, internal, kind)?;
    let nv = target.num_vertices();
    let min_allowed = family.iter().map(ColorSet::len).min().unwrap_or(nv);
    let maximal_forbidden_sets: Vec<ColorSet> = family
        .iter()
        .filter(|s| s.len() == min_allowed)
        .map(ColorSet::complement)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    Ok(ProfileRow {
        internal_len: internal,
        min_allowed,
        max_forbidden_size: nv - min_allowed,
        maximal_forbidden_sets,
    })
}

/// Profile rows for `0..=max_len` internal vertices.
pub fn profile(target: &MixedGraph, name: &str, max_len: usize, kind: PathKind) -> Result<PathProfile> {
    let rows = (0..=max_len)
        .map(|l| path_profile(target, l, kind))
        .collect::<Result<Vec<_>>>()?;
    Ok(PathProfile {
        target_name: name.to_string(),
        rows,
    })
}

/// An endpoint pair and thread shape that cannot be colored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionFailure {
    pub from: usize,
    pub to: usize,
    pub pattern: LinkPattern,
}

/// Every (ordered endpoint colors, thread pattern) combination with `k`
/// internal vertices that admits no coloring of the internal vertices.
pub fn extension_failures(target: &MixedGraph, k: usize) -> Result<Vec<ExtensionFailure>> {
    let kind = PathKind::for_target(target)?;
    let table = NeighborTable::new(target);
    let mut out = Vec::new();
    for pattern in thread_patterns(kind, k + 1) {
        for from in 0..target.num_vertices() {
            let reach = allowed(&table, &pattern, from);
            for to in 0..target.num_vertices() {
                if !reach.contains(to) {
                    out.push(ExtensionFailure {
                        from,
                        to,
                        pattern: pattern.clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// True iff any coloring of the two ends of a thread with `k` internal
/// vertices extends to the thread, for every thread pattern.
pub fn verify_path_extension(target: &MixedGraph, k: usize) -> Result<bool> {
    Ok(extension_failures(target, k)?.is_empty())
}

/// Internal 2-vertex counts of the three threads at a 3-vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BranchCase {
    pub l1: usize,
    pub l2: usize,
    pub l3: usize,
}

impl BranchCase {
    pub fn new(l1: usize, l2: usize, l3: usize) -> Result<Self> {
        if l1 >= l2 && l2 >= l3 {
            Ok(BranchCase { l1, l2, l3 })
        } else {
            Err(Error::InvalidParameter(format!(
                "branch lengths must be non-increasing, got ({l1},{l2},{l3})"
            )))
        }
    }

    pub fn lengths(&self) -> [usize; 3] {
        [self.l1, self.l2, self.l3]
    }
}

/// Three allowed sets (one per branch) with no common color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchCounterexample {
    pub case: BranchCase,
    pub allowed: [ColorSet; 3],
}

/// The first blocking combination found for any case, if one exists.
///
/// The outer endpoints are colored independently, so a combination is
/// blocking iff the allowed sets of the three branches are disjoint.
/// Checking every triple drawn from the per-branch families of allowed
/// sets covers every choice of endpoint colors and branch patterns.
pub fn branch_counterexample(target: &MixedGraph, cases: &[BranchCase]) -> Result<Option<BranchCounterexample>> {
    if cases.is_empty() {
        return Err(Error::InvalidParameter("no branch cases given".into()));
    }
    let kind = PathKind::for_target(target)?;
    for &case in cases {
        let [f1, f2, f3] = case.lengths().map(|l| allowed_family(target, l, kind));
        let (f1, f2, f3) = (f1?, f2?, f3?);
        for a in &f1 {
            for b in &f2 {
                let ab = a.intersection(b);
                for c in &f3 {
                    if !ab.intersects(c) {
                        return Ok(Some(BranchCounterexample {
                            case,
                            allowed: [a.clone(), b.clone(), c.clone()],
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

pub fn verify_branch_cases(target: &MixedGraph, cases: &[BranchCase]) -> Result<bool> {
    Ok(branch_counterexample(target, cases)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_arc() -> MixedGraph {
        let mut g = MixedGraph::new(2, 1, 0);
        g.add_arc(0, 1, 0);
        g
    }

    #[test]
    fn pattern_enumeration() {
        let ps = thread_patterns(PathKind::TwoEdgeColored, 3);
        assert_eq!(ps.len(), 8);
        assert_eq!(ps.iter().collect::<BTreeSet<_>>().len(), 8);
    }

    #[test]
    fn allowed_set_on_arc() {
        let g = single_arc();
        let p: LinkPattern = "F".parse().unwrap();
        assert_eq!(path_allowed_set(&g, &p, 0).unwrap(), ColorSet::singleton(2, 1));
        assert!(path_allowed_set(&g, &p, 1).unwrap().is_empty());
        assert!(path_allowed_set(&g, &p, 7).is_err());
    }

    #[test]
    fn branch_case_order() {
        assert!(BranchCase::new(5, 4, 3).is_ok());
        assert!(BranchCase::new(3, 4, 5).is_err());
    }

    #[test]
    fn unsupported_signature() {
        let g = MixedGraph::new(2, 1, 1);
        assert!(verify_path_extension(&g, 1).is_err());
    }
}
