use std::collections::BTreeSet;
use std::fmt;

use super::{builtin_target, TargetName, A, B, C, D, E, F};
use crate::colorset::ColorSet;
use crate::graph::{LinkPattern, MixedGraph, NeighborTable, Step, BLUE, RED};
use crate::iso::are_isomorphic;
use crate::metrics::{is_bipartite, is_connected};
use crate::pathlab::{path_profile, PathKind};

/// A checkable statement about a small labeled graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fact {
    /// The `step`-neighborhood of `vertex` is exactly `expected`.
    NeighborhoodEquals { vertex: usize, step: Step, expected: Vec<usize> },
    LinkPresent { u: usize, v: usize, step: Step },
    LinkAbsent { u: usize, v: usize, step: Step },
    /// The subgraph induced by `vertices` (in order) is isomorphic to `pattern`.
    InducedIsomorphic { vertices: Vec<usize>, pattern: MixedGraph },
    /// Every pair of `vertices` is linked.
    InducedComplete { vertices: Vec<usize> },
    /// The edges of `color` form a spanning path.
    ColorClassPath { color: usize },
    /// No walk shaped like `pattern` starts in `from` and ends in `to`.
    WalkAbsent { pattern: LinkPattern, from: Vec<usize>, to: Vec<usize> },
    /// Inside `within`, the cycles of `length` with exactly `color_count`
    /// edges of `color` are exactly `expected` (each listed in cyclic order).
    CycleEnumeration {
        within: Vec<usize>,
        length: usize,
        color: usize,
        color_count: usize,
        expected: Vec<Vec<usize>>,
    },
    /// `cycle` is a cycle whose consecutive edges differ in color.
    AlternatingCycle { cycle: Vec<usize> },
    /// The edges of `color` form a connected spanning subgraph.
    SpanningConnected { color: usize },
    /// The edges of `color` contain an odd cycle, and none avoid `vertex`.
    OddCycleForcing { color: usize, vertex: usize },
    /// Forbidden-set profile row for threads with `internal_len` 2-vertices;
    /// `forbidden` (when given) is the exact family of maximum-size forbidden sets.
    ForbiddenProfile {
        internal_len: usize,
        kind: PathKind,
        min_allowed: usize,
        forbidden: Option<Vec<Vec<usize>>>,
    },
}

impl Fact {
    pub fn category(&self) -> &'static str {
        match self {
            Fact::NeighborhoodEquals { .. } => "neighborhood-equality",
            Fact::LinkPresent { .. } => "link-presence",
            Fact::LinkAbsent { .. } => "arc-absence",
            Fact::InducedIsomorphic { .. } | Fact::InducedComplete { .. } | Fact::ColorClassPath { .. } => {
                "induced-subgraph-iso"
            }
            Fact::WalkAbsent { from, to, .. } if from.len() > 1 || to.len() > 1 => "path-shape-absence",
            Fact::WalkAbsent { .. } => "walk-absence",
            Fact::CycleEnumeration { .. } | Fact::AlternatingCycle { .. } => "cycle-enumeration",
            Fact::SpanningConnected { .. } => "spanning-connectivity",
            Fact::OddCycleForcing { .. } => "odd-cycle-forcing",
            Fact::ForbiddenProfile { .. } => "forbidden-profile",
        }
    }

    pub fn holds(&self, g: &MixedGraph) -> bool {
        let nv = g.num_vertices();
        let in_range = |vs: &[usize]| vs.iter().all(|&v| v < nv);
        match self {
            Fact::NeighborhoodEquals { vertex, step, expected } => {
                in_range(&[*vertex])
                    && step.fits(g.m(), g.n())
                    && NeighborTable::new(g).neighbors(*vertex, *step).iter().collect::<Vec<_>>()
                        == sorted(expected)
            }
            Fact::LinkPresent { u, v, step } => g.link_between(*u, *v) == Some(*step),
            Fact::LinkAbsent { u, v, step } => g.link_between(*u, *v) != Some(*step),
            Fact::InducedIsomorphic { vertices, pattern } => {
                in_range(vertices) && are_isomorphic(&g.induced_subgraph(vertices), pattern)
            }
            Fact::InducedComplete { vertices } => {
                in_range(vertices)
                    && vertices.iter().enumerate().all(|(i, &u)| {
                        vertices[i + 1..].iter().all(|&v| g.link_between(u, v).is_some())
                    })
            }
            Fact::ColorClassPath { color } => {
                let class = color_class(g, *color);
                let degrees = class.degrees();
                nv > 0
                    && class.edges().len() == nv - 1
                    && degrees.iter().all(|&d| d <= 2)
                    && is_connected(&class)
            }
            Fact::WalkAbsent { pattern, from, to } => {
                if !in_range(from) || !in_range(to) || pattern.check_signature(g.m(), g.n()).is_err() {
                    return false;
                }
                let table = NeighborTable::new(g);
                let mut set = ColorSet::from_indices(nv, from.iter().copied());
                for &s in pattern.steps() {
                    set = table.image(&set, s);
                }
                !set.intersects(&ColorSet::from_indices(nv, to.iter().copied()))
            }
            Fact::CycleEnumeration {
                within,
                length,
                color,
                color_count,
                expected,
            } => {
                if !in_range(within) || expected.iter().any(|c| !in_range(c)) {
                    return false;
                }
                let found: BTreeSet<Vec<(usize, usize)>> = cycles_within(g, within, *length)
                    .into_iter()
                    .filter(|cyc| count_edge_color(g, cyc, *color) == Some(*color_count))
                    .map(|cyc| cycle_key(&cyc))
                    .collect();
                let want: BTreeSet<Vec<(usize, usize)>> = expected.iter().map(|c| cycle_key(c)).collect();
                found == want
            }
            Fact::AlternatingCycle { cycle } => {
                let k = cycle.len();
                if k < 3 || !in_range(cycle) {
                    return false;
                }
                let colors: Option<Vec<usize>> = (0..k)
                    .map(|i| match g.link_between(cycle[i], cycle[(i + 1) % k]) {
                        Some(Step::Edge { color }) => Some(color),
                        _ => None,
                    })
                    .collect();
                colors.is_some_and(|cs| (0..k).all(|i| cs[i] != cs[(i + 1) % k]))
            }
            Fact::SpanningConnected { color } => is_connected(&color_class(g, *color)),
            Fact::OddCycleForcing { color, vertex } => {
                if !in_range(&[*vertex]) {
                    return false;
                }
                let class = color_class(g, *color);
                let rest: Vec<usize> = (0..nv).filter(|v| v != vertex).collect();
                !is_bipartite(&class) && is_bipartite(&class.induced_subgraph(&rest))
            }
            Fact::ForbiddenProfile {
                internal_len,
                kind,
                min_allowed,
                forbidden,
            } => {
                let Ok(row) = path_profile(g, *internal_len, *kind) else {
                    return false;
                };
                row.min_allowed == *min_allowed
                    && forbidden.as_ref().is_none_or(|fam| {
                        let want: BTreeSet<ColorSet> =
                            fam.iter().map(|s| ColorSet::from_indices(nv, s.iter().copied())).collect();
                        row.maximal_forbidden_sets.into_iter().collect::<BTreeSet<_>>() == want
                    })
            }
        }
    }

    /// Whether the link state of the single pair `{u, v}` (`link` read
    /// from `u` to `v`) is compatible with this fact. Facts that are not
    /// local to one pair always admit it.
    pub(crate) fn admits_pair(&self, u: usize, v: usize, link: Option<Step>) -> bool {
        let from = |x: usize| if x == u { link } else { link.map(Step::reverse) };
        match self {
            Fact::NeighborhoodEquals { vertex, step, expected } if *vertex == u || *vertex == v => {
                let other = if *vertex == u { v } else { u };
                (from(*vertex) == Some(*step)) == expected.contains(&other)
            }
            Fact::LinkPresent { u: a, v: b, step } if same_pair((*a, *b), (u, v)) => from(*a) == Some(*step),
            Fact::LinkAbsent { u: a, v: b, step } if same_pair((*a, *b), (u, v)) => from(*a) != Some(*step),
            Fact::InducedComplete { vertices } if vertices.contains(&u) && vertices.contains(&v) => {
                link.is_some()
            }
            _ => true,
        }
    }
}

fn same_pair(a: (usize, usize), b: (usize, usize)) -> bool {
    a == b || a == (b.1, b.0)
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// The spanning subgraph formed by the edges of one color.
fn color_class(g: &MixedGraph, color: usize) -> MixedGraph {
    let mut h = MixedGraph::new(g.num_vertices(), 0, 1);
    for e in g.edges().iter().filter(|e| e.color == color) {
        h.add_edge(e.u, e.v, 0);
    }
    h
}

/// All cycles of `length` using only vertices of `within`, each reported once.
fn cycles_within(g: &MixedGraph, within: &[usize], length: usize) -> Vec<Vec<usize>> {
    let allowed: BTreeSet<usize> = within.iter().copied().collect();
    let adj = g.underlying_adjacency();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    fn extend(
        adj: &[Vec<usize>],
        allowed: &BTreeSet<usize>,
        length: usize,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        seen: &mut BTreeSet<Vec<(usize, usize)>>,
    ) {
        let last = *path.last().unwrap();
        if path.len() == length {
            if adj[last].contains(&path[0]) && seen.insert(cycle_key(path)) {
                out.push(path.clone());
            }
            return;
        }
        for &w in &adj[last] {
            if allowed.contains(&w) && w > path[0] && !path.contains(&w) {
                path.push(w);
                extend(adj, allowed, length, path, out, seen);
                path.pop();
            }
        }
    }
    if length >= 3 {
        for &s in &allowed {
            extend(&adj, &allowed, length, &mut vec![s], &mut out, &mut seen);
        }
    }
    out
}

fn cycle_key(cycle: &[usize]) -> Vec<(usize, usize)> {
    let k = cycle.len();
    let mut key: Vec<(usize, usize)> = (0..k)
        .map(|i| {
            let (a, b) = (cycle[i], cycle[(i + 1) % k]);
            (a.min(b), a.max(b))
        })
        .collect();
    key.sort_unstable();
    key
}

fn count_edge_color(g: &MixedGraph, cycle: &[usize], color: usize) -> Option<usize> {
    let k = cycle.len();
    let mut count = 0;
    for i in 0..k {
        match g.link_between(cycle[i], cycle[(i + 1) % k])? {
            Step::Edge { color: c } if c == color => count += 1,
            _ => {}
        }
    }
    Some(count)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedFact {
    pub description: String,
    pub fact: Fact,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetFactSheet {
    pub target_name: String,
    pub facts: Vec<NamedFact>,
}

impl TargetFactSheet {
    pub fn new(target_name: impl Into<String>) -> Self {
        TargetFactSheet {
            target_name: target_name.into(),
            facts: Vec::new(),
        }
    }

    pub fn push(&mut self, description: impl Into<String>, fact: Fact) {
        self.facts.push(NamedFact {
            description: description.into(),
            fact,
        });
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactResult {
    pub description: String,
    pub category: &'static str,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactReport {
    pub target_name: String,
    pub results: Vec<FactResult>,
}

impl FactReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &FactResult> {
        self.results.iter().filter(|r| !r.passed)
    }
}

impl fmt::Display for FactReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            writeln!(
                f,
                "{} [{}] {}",
                if r.passed { "PASS" } else { "FAIL" },
                r.category,
                r.description
            )?;
        }
        let passed = self.results.iter().filter(|r| r.passed).count();
        write!(f, "{}: {passed}/{} facts hold", self.target_name, self.results.len())
    }
}

pub fn check_facts(sheet: &TargetFactSheet, g: &MixedGraph) -> FactReport {
    FactReport {
        target_name: sheet.target_name.clone(),
        results: sheet
            .facts
            .iter()
            .map(|nf| FactResult {
                description: nf.description.clone(),
                category: nf.fact.category(),
                passed: nf.fact.holds(g),
            })
            .collect(),
    }
}

fn directed_triangle() -> MixedGraph {
    let mut g = MixedGraph::new(3, 1, 0);
    g.add_arc(0, 1, 0);
    g.add_arc(1, 2, 0);
    g.add_arc(2, 0, 0);
    g
}

fn out(vertex: usize, expected: &[usize]) -> Fact {
    Fact::NeighborhoodEquals {
        vertex,
        step: Step::forward(0),
        expected: expected.to_vec(),
    }
}

fn t5_sheet() -> TargetFactSheet {
    let mut s = TargetFactSheet::new("t5");
    s.push("out-neighborhood(a) = {b,c}", out(A, &[B, C]));
    s.push("out-neighborhood(c) = {d}", out(C, &[D]));
    s.push("out-neighborhood(e) = {a}", out(E, &[A]));
    s.push(
        "a->d is not an arc",
        Fact::LinkAbsent {
            u: A,
            v: D,
            step: Step::forward(0),
        },
    );
    s.push("{a,b,c,d} induces a tournament", Fact::InducedComplete { vertices: vec![A, B, C, D] });
    s.push(
        "{a,b,d} induces a directed 3-cycle",
        Fact::InducedIsomorphic {
            vertices: vec![A, B, D],
            pattern: directed_triangle(),
        },
    );
    s.push(
        "no directed 2-path x->y->z with x,z in {d,e}",
        Fact::WalkAbsent {
            pattern: "F F".parse().unwrap(),
            from: vec![D, E],
            to: vec![D, E],
        },
    );
    let rows: [(usize, usize, Option<Vec<Vec<usize>>>); 6] = [
        (0, 1, None),
        (1, 2, None),
        (2, 2, Some(vec![vec![C, D, E], vec![B, C, D]])),
        (3, 3, None),
        (4, 4, None),
        (5, 4, Some(vec![vec![B], vec![C], vec![E]])),
    ];
    for (l, min_allowed, forbidden) in rows {
        let desc = match &forbidden {
            Some(fam) => format!(
                "threads with {l} internal vertices leave >= {min_allowed} colors; maximal forbidden sets {}",
                family_text(fam)
            ),
            None => format!("threads with {l} internal vertices leave >= {min_allowed} colors"),
        };
        s.push(
            desc,
            Fact::ForbiddenProfile {
                internal_len: l,
                kind: PathKind::Oriented,
                min_allowed,
                forbidden,
            },
        );
    }
    s
}

fn family_text(fam: &[Vec<usize>]) -> String {
    let names: Vec<String> = (0..6).map(super::letter).collect();
    fam.iter()
        .map(|s| ColorSet::from_indices(6, s.iter().copied()).display_with(&names).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn t6_sheet() -> TargetFactSheet {
    let mut s = TargetFactSheet::new("t6");
    s.push(
        "red-neighborhood(f) = {b}",
        Fact::NeighborhoodEquals {
            vertex: F,
            step: Step::edge(RED),
            expected: vec![B],
        },
    );
    s.push(
        "a-b is blue",
        Fact::LinkPresent {
            u: A,
            v: B,
            step: Step::edge(BLUE),
        },
    );
    s.push(
        "b-d is blue",
        Fact::LinkPresent {
            u: B,
            v: D,
            step: Step::edge(BLUE),
        },
    );
    s.push(
        "c and e have no common blue neighbor",
        Fact::WalkAbsent {
            pattern: "B B".parse().unwrap(),
            from: vec![C],
            to: vec![E],
        },
    );
    s.push(
        "no blue walk of length 5 from c to c",
        Fact::WalkAbsent {
            pattern: "B B B B B".parse().unwrap(),
            from: vec![C],
            to: vec![C],
        },
    );
    s.push(
        "no walk colored (blue,blue,red,blue) from c to c",
        Fact::WalkAbsent {
            pattern: "B B R B".parse().unwrap(),
            from: vec![C],
            to: vec![C],
        },
    );
    s.push("acde is an alternating 4-cycle", Fact::AlternatingCycle { cycle: vec![A, C, D, E] });
    s.push(
        "within {a,b,c,d,e} the 4-cycles with exactly one red edge are aedb and cdba",
        Fact::CycleEnumeration {
            within: vec![A, B, C, D, E],
            length: 4,
            color: RED,
            color_count: 1,
            expected: vec![vec![A, E, D, B], vec![C, D, B, A]],
        },
    );
    s.push(
        "red edges contain an odd cycle, and deleting c leaves them bipartite",
        Fact::OddCycleForcing { color: RED, vertex: C },
    );
    s.push("blue edges are connected and spanning", Fact::SpanningConnected { color: BLUE });
    s.push("red edges are connected and spanning", Fact::SpanningConnected { color: RED });
    let rows: [(usize, usize, Vec<Vec<usize>>); 5] = [
        (0, 1, vec![vec![A, C, D, E, F], vec![B, C, D, E, F]]),
        (1, 2, vec![vec![A, B, C, F], vec![B, C, E, F]]),
        (2, 3, vec![vec![B, C, F], vec![C, E, F], vec![D, E, F]]),
        (3, 4, vec![vec![B, C]]),
        (4, 5, vec![vec![C], vec![F]]),
    ];
    for (l, min_allowed, fam) in rows {
        s.push(
            format!(
                "threads with {l} internal vertices leave >= {min_allowed} colors; maximal forbidden sets {}",
                family_text(&fam)
            ),
            Fact::ForbiddenProfile {
                internal_len: l,
                kind: PathKind::TwoEdgeColored,
                min_allowed,
                forbidden: Some(fam),
            },
        );
    }
    s
}

fn t4_oriented_sheet() -> TargetFactSheet {
    let mut s = TargetFactSheet::new("t4_oriented");
    s.push("{a,b,c,d} is a tournament", Fact::InducedComplete { vertices: vec![A, B, C, D] });
    s.push(
        "{a,b,d} induces a directed 3-cycle",
        Fact::InducedIsomorphic {
            vertices: vec![A, B, D],
            pattern: directed_triangle(),
        },
    );
    s.push("out-neighborhood(c) = {d}", out(C, &[D]));
    s.push("out-neighborhood(d) = {a}", out(D, &[A]));
    s.push(
        "a->d is not an arc",
        Fact::LinkAbsent {
            u: A,
            v: D,
            step: Step::forward(0),
        },
    );
    s
}

fn t4_2ec_sheet() -> TargetFactSheet {
    let mut s = TargetFactSheet::new("t4_2ec");
    s.push("the four vertices form a clique", Fact::InducedComplete { vertices: vec![A, B, C, D] });
    s.push("blue edges induce a path of length 3", Fact::ColorClassPath { color: BLUE });
    s.push("red edges induce a path of length 3", Fact::ColorClassPath { color: RED });
    s
}

pub fn fact_sheet(name: TargetName) -> TargetFactSheet {
    match name {
        TargetName::T5 => t5_sheet(),
        TargetName::T6 => t6_sheet(),
        TargetName::T4Oriented => t4_oriented_sheet(),
        TargetName::T4TwoEdgeColored => t4_2ec_sheet(),
    }
}

/// Evaluates the builtin's own fact sheet against it.
pub fn verify_target_facts(name: TargetName) -> FactReport {
    check_facts(&fact_sheet(name), &builtin_target(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builtin_passes_its_sheet() {
        for t in TargetName::ALL {
            let r = verify_target_facts(t);
            assert!(r.all_passed(), "{r}");
        }
    }

    #[test]
    fn deleting_a_blue_edge_breaks_t6() {
        let mut g = builtin_target(TargetName::T6);
        assert!(g.remove_edge(A, C, BLUE));
        let r = check_facts(&fact_sheet(TargetName::T6), &g);
        assert!(r
            .failures()
            .any(|f| f.category == "spanning-connectivity"));
    }

    #[test]
    fn reversing_an_arc_breaks_t5() {
        let mut g = builtin_target(TargetName::T5);
        g.remove_arc(A, B, 0);
        g.add_arc(B, A, 0);
        assert!(!check_facts(&fact_sheet(TargetName::T5), &g).all_passed());
    }

    #[test]
    fn pair_locality_agrees_with_holds() {
        let g = builtin_target(TargetName::T5);
        for nf in fact_sheet(TargetName::T5).facts {
            for u in 0..5 {
                for v in u + 1..5 {
                    assert!(nf.fact.admits_pair(u, v, g.link_between(u, v)), "{}", nf.description);
                }
            }
        }
    }
}
