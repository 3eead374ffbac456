//! The (m,n)-colored-mixed graph data model.
//!
//! A graph has `m` colors of arcs and `n` colors of edges, and at most one
//! link (arc or edge, any color) between any two vertices. Blue and red
//! edges of 2-edge-colored graphs are edge colors 0 and 1.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::colorset::ColorSet;
use crate::error::{Error, Result};

pub const BLUE: usize = 0;
pub const RED: usize = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub color: usize,
}

/// An undirected colored edge, stored with `u <= v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub color: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize, color: usize) -> Self {
        Edge {
            u: a.min(b),
            v: a.max(b),
            color,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Backward,
}

/// One step of a walk: traverse an arc of a given color (along or against
/// its orientation) or an edge of a given color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Arc { color: usize, dir: Direction },
    Edge { color: usize },
}

impl Step {
    pub fn forward(color: usize) -> Self {
        Step::Arc {
            color,
            dir: Direction::Forward,
        }
    }

    pub fn backward(color: usize) -> Self {
        Step::Arc {
            color,
            dir: Direction::Backward,
        }
    }

    pub fn edge(color: usize) -> Self {
        Step::Edge { color }
    }

    pub fn reverse(self) -> Self {
        match self {
            Step::Arc { color, dir } => Step::Arc {
                color,
                dir: match dir {
                    Direction::Forward => Direction::Backward,
                    Direction::Backward => Direction::Forward,
                },
            },
            e => e,
        }
    }

    pub fn fits(self, m: usize, n: usize) -> bool {
        match self {
            Step::Arc { color, .. } => color < m,
            Step::Edge { color } => color < n,
        }
    }

    /// Dense index into a neighbor table: forward/backward arcs of color
    /// `c` at `2c`/`2c+1`, edges of color `c` at `2m+c`.
    pub fn index(self, m: usize) -> usize {
        match self {
            Step::Arc {
                color,
                dir: Direction::Forward,
            } => 2 * color,
            Step::Arc {
                color,
                dir: Direction::Backward,
            } => 2 * color + 1,
            Step::Edge { color } => 2 * m + color,
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Step::Arc {
                color: 0,
                dir: Direction::Forward,
            } => write!(f, "F"),
            Step::Arc {
                color: 0,
                dir: Direction::Backward,
            } => write!(f, "K"),
            Step::Arc {
                color,
                dir: Direction::Forward,
            } => write!(f, "F{color}"),
            Step::Arc {
                color,
                dir: Direction::Backward,
            } => write!(f, "K{color}"),
            Step::Edge { color: BLUE } => write!(f, "B"),
            Step::Edge { color: RED } => write!(f, "R"),
            Step::Edge { color } => write!(f, "E{color}"),
        }
    }
}

impl FromStr for Step {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("bad pattern token `{s}`"));
        let (head, rest) = s.split_at(s.chars().next().ok_or_else(bad)?.len_utf8());
        let color = if rest.is_empty() {
            None
        } else {
            Some(rest.parse::<usize>().map_err(|_| bad())?)
        };
        Ok(match (head, color) {
            ("B", None) => Step::edge(BLUE),
            ("R", None) => Step::edge(RED),
            ("E", Some(c)) => Step::edge(c),
            ("F", c) => Step::forward(c.unwrap_or(0)),
            ("K", c) => Step::backward(c.unwrap_or(0)),
            _ => return Err(bad()),
        })
    }
}

/// A nonempty sequence of steps describing the shape of a path or walk.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkPattern {
    steps: Vec<Step>,
}

impl LinkPattern {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::EmptyPattern);
        }
        Ok(LinkPattern { steps })
    }

    /// `len` arcs of color 0 alternating forward and backward, starting forward.
    pub fn alternating_arcs(len: usize) -> Result<Self> {
        Self::new(
            (0..len)
                .map(|i| if i % 2 == 0 { Step::forward(0) } else { Step::backward(0) })
                .collect(),
        )
    }

    pub fn edges(color: usize, len: usize) -> Result<Self> {
        Self::new(vec![Step::edge(color); len])
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The same walk traversed from the other end.
    pub fn reversed(&self) -> Self {
        LinkPattern {
            steps: self.steps.iter().rev().map(|s| s.reverse()).collect(),
        }
    }

    pub fn check_signature(&self, m: usize, n: usize) -> Result<()> {
        match self.steps.iter().find(|s| !s.fits(m, n)) {
            None => Ok(()),
            Some(_) => Err(Error::SignatureMismatch {
                expected_m: m,
                expected_n: n,
                found_m: self.max_arc_color().map_or(0, |c| c + 1),
                found_n: self.max_edge_color().map_or(0, |c| c + 1),
            }),
        }
    }

    fn max_arc_color(&self) -> Option<usize> {
        self.steps
            .iter()
            .filter_map(|s| match s {
                Step::Arc { color, .. } => Some(*color),
                _ => None,
            })
            .max()
    }

    fn max_edge_color(&self) -> Option<usize> {
        self.steps
            .iter()
            .filter_map(|s| match s {
                Step::Edge { color } => Some(*color),
                _ => None,
            })
            .max()
    }
}

impl fmt::Display for LinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for LinkPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(Step::from_str)
            .collect::<Result<Vec<_>>>()?;
        LinkPattern::new(steps)
    }
}

/// A broken graph invariant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Violation {
    Loop { vertex: usize },
    DuplicatePair { u: usize, v: usize },
    VertexOutOfRange { vertex: usize },
    ArcColorOutOfRange { arc: Arc },
    EdgeColorOutOfRange { edge: Edge },
    LabelOutOfRange { vertex: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Loop { vertex } => write!(f, "loop at vertex {vertex}"),
            Violation::DuplicatePair { u, v } => {
                write!(f, "vertices {u} and {v} are joined by more than one link")
            }
            Violation::VertexOutOfRange { vertex } => write!(f, "vertex {vertex} out of range"),
            Violation::ArcColorOutOfRange { arc } => write!(
                f,
                "arc {}->{} has color {} out of range",
                arc.tail, arc.head, arc.color
            ),
            Violation::EdgeColorOutOfRange { edge } => write!(
                f,
                "edge {}-{} has color {} out of range",
                edge.u, edge.v, edge.color
            ),
            Violation::LabelOutOfRange { vertex } => {
                write!(f, "label attached to missing vertex {vertex}")
            }
        }
    }
}

/// An (m,n)-colored-mixed graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MixedGraph {
    num_vertices: usize,
    m: usize,
    n: usize,
    arcs: BTreeSet<Arc>,
    edges: BTreeSet<Edge>,
    labels: BTreeMap<usize, String>,
}

impl MixedGraph {
    pub fn new(num_vertices: usize, m: usize, n: usize) -> Self {
        MixedGraph {
            num_vertices,
            m,
            n,
            ..Default::default()
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn arcs(&self) -> &BTreeSet<Arc> {
        &self.arcs
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn num_links(&self) -> usize {
        self.arcs.len() + self.edges.len()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.num_vertices += 1;
        self.num_vertices - 1
    }

    pub fn add_labeled_vertex(&mut self, label: impl Into<String>) -> usize {
        let v = self.add_vertex();
        self.labels.insert(v, label.into());
        v
    }

    /// Adds an arc without checking invariants; see [`validate_graph`].
    pub fn add_arc(&mut self, tail: usize, head: usize, color: usize) {
        self.arcs.insert(Arc { tail, head, color });
    }

    /// Adds an edge without checking invariants; see [`validate_graph`].
    pub fn add_edge(&mut self, u: usize, v: usize, color: usize) {
        self.edges.insert(Edge::new(u, v, color));
    }

    /// Adds a link realizing `step` from `u` to `v`.
    pub fn add_link(&mut self, u: usize, v: usize, step: Step) {
        match step {
            Step::Arc {
                color,
                dir: Direction::Forward,
            } => self.add_arc(u, v, color),
            Step::Arc {
                color,
                dir: Direction::Backward,
            } => self.add_arc(v, u, color),
            Step::Edge { color } => self.add_edge(u, v, color),
        }
    }

    pub fn remove_arc(&mut self, tail: usize, head: usize, color: usize) -> bool {
        self.arcs.remove(&Arc { tail, head, color })
    }

    pub fn remove_edge(&mut self, u: usize, v: usize, color: usize) -> bool {
        self.edges.remove(&Edge::new(u, v, color))
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) {
        self.labels.insert(v, label.into());
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    /// Labels for every vertex, falling back to the index.
    pub fn vertex_names(&self) -> Vec<String> {
        (0..self.num_vertices)
            .map(|v| self.label(v).map_or_else(|| v.to_string(), str::to_string))
            .collect()
    }

    /// Resolves a vertex by label first, then by index.
    pub fn resolve_vertex(&self, name: &str) -> Result<usize> {
        if let Some((&v, _)) = self.labels.iter().find(|(_, l)| l.as_str() == name) {
            return Ok(v);
        }
        let v: usize = name
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("unknown vertex `{name}`")))?;
        if v >= self.num_vertices {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                num_vertices: self.num_vertices,
            });
        }
        Ok(v)
    }

    /// Parses a set written as `a,b,d`, `{a,b,d}` or `abd` (single-letter labels).
    pub fn resolve_set(&self, text: &str) -> Result<ColorSet> {
        let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
        let mut set = ColorSet::empty(self.num_vertices);
        if inner.contains(',') || inner.contains(' ') {
            for tok in inner.split([',', ' ']).filter(|t| !t.is_empty()) {
                set.insert(self.resolve_vertex(tok)?);
            }
        } else if let Ok(v) = self.resolve_vertex(inner) {
            set.insert(v);
        } else {
            for ch in inner.chars() {
                set.insert(self.resolve_vertex(&ch.to_string())?);
            }
        }
        Ok(set)
    }

    /// Every link as `(u, v, step)`: a homomorphism must send it to a
    /// target link realizing `step` from the image of `u` to that of `v`.
    pub fn links(&self) -> impl Iterator<Item = (usize, usize, Step)> + '_ {
        self.arcs
            .iter()
            .map(|a| (a.tail, a.head, Step::forward(a.color)))
            .chain(self.edges.iter().map(|e| (e.u, e.v, Step::edge(e.color))))
    }

    /// The link between `u` and `v` seen from `u`, if any.
    pub fn link_between(&self, u: usize, v: usize) -> Option<Step> {
        self.links().find_map(|(a, b, s)| {
            if (a, b) == (u, v) {
                Some(s)
            } else if (a, b) == (v, u) {
                Some(s.reverse())
            } else {
                None
            }
        })
    }

    /// Neighbor lists of the underlying simple graph.
    pub fn underlying_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_vertices];
        for (u, v, _) in self.links() {
            if u < self.num_vertices && v < self.num_vertices && u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.underlying_adjacency().iter().map(Vec::len).collect()
    }

    /// The subgraph induced by `vertices`, renumbered in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> MixedGraph {
        let pos: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = MixedGraph::new(vertices.len(), self.m, self.n);
        for a in &self.arcs {
            if let (Some(&t), Some(&h)) = (pos.get(&a.tail), pos.get(&a.head)) {
                g.add_arc(t, h, a.color);
            }
        }
        for e in &self.edges {
            if let (Some(&u), Some(&v)) = (pos.get(&e.u), pos.get(&e.v)) {
                g.add_edge(u, v, e.color);
            }
        }
        for (i, &v) in vertices.iter().enumerate() {
            if let Some(l) = self.labels.get(&v) {
                g.set_label(i, l.clone());
            }
        }
        g
    }

    /// Appends a disjoint copy of `other`; returns the index offset of the copy.
    pub fn append(&mut self, other: &MixedGraph, label_prefix: Option<&str>) -> usize {
        let off = self.num_vertices;
        self.num_vertices += other.num_vertices;
        for a in &other.arcs {
            self.add_arc(a.tail + off, a.head + off, a.color);
        }
        for e in &other.edges {
            self.add_edge(e.u + off, e.v + off, e.color);
        }
        for (&v, l) in &other.labels {
            let label = match label_prefix {
                Some(p) => format!("{p}{l}"),
                None => l.clone(),
            };
            self.labels.insert(v + off, label);
        }
        off
    }

    pub fn is_valid(&self) -> bool {
        validate_graph(self).is_empty()
    }
}

/// Lists every violated invariant; empty iff the graph is valid.
pub fn validate_graph(g: &MixedGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    let nv = g.num_vertices;
    let mut pairs: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for a in &g.arcs {
        for v in [a.tail, a.head] {
            if v >= nv {
                out.push(Violation::VertexOutOfRange { vertex: v });
            }
        }
        if a.color >= g.m {
            out.push(Violation::ArcColorOutOfRange { arc: *a });
        }
        if a.tail == a.head {
            out.push(Violation::Loop { vertex: a.tail });
        } else {
            *pairs.entry((a.tail.min(a.head), a.tail.max(a.head))).or_default() += 1;
        }
    }
    for e in &g.edges {
        for v in [e.u, e.v] {
            if v >= nv {
                out.push(Violation::VertexOutOfRange { vertex: v });
            }
        }
        if e.color >= g.n {
            out.push(Violation::EdgeColorOutOfRange { edge: *e });
        }
        if e.u == e.v {
            out.push(Violation::Loop { vertex: e.u });
        } else {
            *pairs.entry((e.u, e.v)).or_default() += 1;
        }
    }
    for (&(u, v), &count) in &pairs {
        for _ in 1..count {
            out.push(Violation::DuplicatePair { u, v });
        }
    }
    for &v in g.labels.keys() {
        if v >= nv {
            out.push(Violation::LabelOutOfRange { vertex: v });
        }
    }
    out
}

/// Per-vertex neighbor sets of a graph for every step kind.
#[derive(Debug, Clone)]
pub struct NeighborTable {
    num_vertices: usize,
    m: usize,
    n: usize,
    rows: Vec<ColorSet>,
}

impl NeighborTable {
    pub fn new(g: &MixedGraph) -> Self {
        let nv = g.num_vertices;
        let kinds = 2 * g.m + g.n;
        let mut rows = vec![ColorSet::empty(nv); kinds * nv];
        for (u, v, s) in g.links() {
            rows[s.index(g.m) * nv + u].insert(v);
            rows[s.reverse().index(g.m) * nv + v].insert(u);
        }
        NeighborTable {
            num_vertices: nv,
            m: g.m,
            n: g.n,
            rows,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn num_step_kinds(&self) -> usize {
        2 * self.m + self.n
    }

    /// Vertices reachable from `x` by one `step`.
    pub fn neighbors(&self, x: usize, step: Step) -> &ColorSet {
        &self.rows[step.index(self.m) * self.num_vertices + x]
    }

    pub fn neighbors_by_index(&self, x: usize, step_index: usize) -> &ColorSet {
        &self.rows[step_index * self.num_vertices + x]
    }

    /// Union of the `step`-neighborhoods of the members of `set`.
    pub fn image(&self, set: &ColorSet, step: Step) -> ColorSet {
        self.image_by_index(set, step.index(self.m))
    }

    pub fn image_by_index(&self, set: &ColorSet, step_index: usize) -> ColorSet {
        let mut out = ColorSet::empty(self.num_vertices);
        for x in set.iter() {
            out.union_with(&self.rows[step_index * self.num_vertices + x]);
        }
        out
    }
}

/// A total vertex map from a source graph to a target graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    pub mapping: Vec<usize>,
}

impl Homomorphism {
    pub fn new(mapping: Vec<usize>) -> Self {
        Homomorphism { mapping }
    }

    /// Checks that every link of `source` lands on a matching link of `target`.
    pub fn is_valid(&self, source: &MixedGraph, target: &MixedGraph) -> bool {
        if self.mapping.len() != source.num_vertices()
            || self.mapping.iter().any(|&x| x >= target.num_vertices())
            || source.signature() != target.signature()
        {
            return false;
        }
        source.arcs().iter().all(|a| {
            target.arcs().contains(&Arc {
                tail: self.mapping[a.tail],
                head: self.mapping[a.head],
                color: a.color,
            })
        }) && source.edges().iter().all(|e| {
            target
                .edges()
                .contains(&Edge::new(self.mapping[e.u], self.mapping[e.v], e.color))
        })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Homomorphism {
        Homomorphism::new(self.mapping.iter().map(|&x| other.mapping[x]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loop_is_one_violation() {
        let mut g = MixedGraph::new(2, 1, 0);
        g.add_arc(0, 0, 0);
        assert_eq!(validate_graph(&g), vec![Violation::Loop { vertex: 0 }]);
    }

    #[test]
    fn arc_and_edge_on_same_pair() {
        let mut g = MixedGraph::new(2, 1, 1);
        g.add_arc(0, 1, 0);
        g.add_edge(0, 1, 0);
        assert_eq!(validate_graph(&g), vec![Violation::DuplicatePair { u: 0, v: 1 }]);
    }

    #[test]
    fn opposite_arcs_collide() {
        let mut g = MixedGraph::new(2, 1, 0);
        g.add_arc(0, 1, 0);
        g.add_arc(1, 0, 0);
        assert_eq!(validate_graph(&g).len(), 1);
    }

    #[test]
    fn ranges_checked() {
        let mut g = MixedGraph::new(2, 1, 1);
        g.add_arc(0, 5, 0);
        g.add_edge(0, 1, 3);
        let v = validate_graph(&g);
        assert!(v.contains(&Violation::VertexOutOfRange { vertex: 5 }));
        assert!(v.iter().any(|x| matches!(x, Violation::EdgeColorOutOfRange { .. })));
    }

    #[test]
    fn pattern_tokens() {
        let p: LinkPattern = "B B R B".parse().unwrap();
        assert_eq!(p.steps(), &[Step::edge(0), Step::edge(0), Step::edge(1), Step::edge(0)]);
        let q: LinkPattern = "F K F2".parse().unwrap();
        assert_eq!(q.steps()[2], Step::forward(2));
        assert_eq!(q.to_string(), "F K F2");
        assert_eq!("".parse::<LinkPattern>(), Err(Error::EmptyPattern));
        assert!("Q".parse::<LinkPattern>().is_err());
    }

    #[test]
    fn neighbor_table_images() {
        let mut g = MixedGraph::new(3, 1, 0);
        g.add_arc(0, 1, 0);
        g.add_arc(0, 2, 0);
        let t = NeighborTable::new(&g);
        assert_eq!(t.neighbors(0, Step::forward(0)), &ColorSet::from_indices(3, [1, 2]));
        assert_eq!(t.neighbors(2, Step::backward(0)), &ColorSet::singleton(3, 0));
        let img = t.image(&ColorSet::from_indices(3, [1, 2]), Step::backward(0));
        assert_eq!(img, ColorSet::singleton(3, 0));
    }

    #[test]
    fn homomorphism_check_and_compose() {
        let mut path = MixedGraph::new(3, 1, 0);
        path.add_arc(0, 1, 0);
        path.add_arc(2, 1, 0);
        let mut arc = MixedGraph::new(2, 1, 0);
        arc.add_arc(0, 1, 0);
        let h = Homomorphism::new(vec![0, 1, 0]);
        assert!(h.is_valid(&path, &arc));
        assert!(!Homomorphism::new(vec![0, 1, 1]).is_valid(&path, &arc));
        let id = Homomorphism::new(vec![0, 1]);
        assert_eq!(h.then(&id), h);
    }
}
