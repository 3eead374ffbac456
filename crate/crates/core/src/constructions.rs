//! Generators for the counterexample graphs and the replication gadget.
//!
//! Vertices are numbered densely from 0; labels carry readable names.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{MixedGraph, Step, BLUE, RED};
use crate::metrics::two_coloring;

pub const CONSTRUCTION_NAMES: [&str; 7] = ["cactus", "outerplanar5", "x14", "p7", "y_graph", "red_cycles", "bip_g10"];

/// A generator name with integer parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionSpec {
    pub name: String,
    pub params: BTreeMap<String, usize>,
}

impl ConstructionSpec {
    pub fn new(name: impl Into<String>) -> Self {
        ConstructionSpec {
            name: name.into(),
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: impl Into<String>, value: usize) -> Self {
        self.params.insert(key.into(), value);
        self
    }

    fn allow_only(&self, keys: &[&str]) -> Result<()> {
        match self.params.keys().find(|k| !keys.contains(&k.as_str())) {
            Some(k) => Err(Error::InvalidParameter(format!("{} takes no parameter '{k}'", self.name))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for ConstructionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

/// Parses `name` or `name:key=value,key=value`.
impl FromStr for ConstructionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut spec = ConstructionSpec::new(name.trim());
        for item in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("expected key=value, got '{item}'")))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("'{v}' is not a non-negative integer")))?;
            spec.params.insert(k.trim().to_string(), v);
        }
        Ok(spec)
    }
}

pub fn generate(spec: &ConstructionSpec) -> Result<MixedGraph> {
    let girth_len = |modulus: usize, residue: usize| -> Result<usize> {
        let g = spec.params.get("girth").copied().unwrap_or(3);
        if g < 3 {
            return Err(Error::InvalidParameter(format!("girth must be at least 3, got {g}")));
        }
        match spec.params.get("length") {
            Some(&len) if len < g || len % modulus != residue => Err(Error::InvalidParameter(format!(
                "length {len} must be >= girth {g} and congruent to {residue} mod {modulus}"
            ))),
            Some(&len) => Ok(len),
            None => Ok(smallest_at_least(g, modulus, residue)),
        }
    };
    match spec.name.as_str() {
        "cactus" => {
            spec.allow_only(&["girth", "length"])?;
            Ok(cactus_with_length(girth_len(6, 4)?))
        }
        "outerplanar5" => {
            spec.allow_only(&["girth", "length"])?;
            Ok(outerplanar5_with_length(girth_len(4, 2)?))
        }
        "x14" => spec.allow_only(&[]).map(|_| x14()),
        "p7" => spec.allow_only(&[]).map(|_| p7()),
        "y_graph" => spec.allow_only(&[]).map(|_| y_graph()),
        "red_cycles" => spec.allow_only(&[]).map(|_| red_cycles()),
        "bip_g10" => {
            spec.allow_only(&["swapped"])?;
            match spec.params.get("swapped").copied().unwrap_or(0) {
                0 => Ok(bip_g10(false)),
                1 => Ok(bip_g10(true)),
                s => Err(Error::InvalidParameter(format!("swapped must be 0 or 1, got {s}"))),
            }
        }
        other => Err(Error::UnknownConstruction(other.to_string())),
    }
}

/// Smallest `h >= g` with `h ≡ residue (mod modulus)`.
pub fn smallest_at_least(g: usize, modulus: usize, residue: usize) -> usize {
    let mut h = g;
    while h % modulus != residue {
        h += 1;
    }
    h
}

/// Adds a path from `from` to `to` whose links realize `steps` in order,
/// creating `steps.len() - 1` new vertices. Returns the new vertices.
pub fn add_path(g: &mut MixedGraph, from: usize, to: usize, steps: &[Step]) -> Vec<usize> {
    assert!(!steps.is_empty());
    let mut inner = Vec::with_capacity(steps.len() - 1);
    let mut prev = from;
    for (i, &s) in steps.iter().enumerate() {
        let next = if i + 1 == steps.len() {
            to
        } else {
            let w = g.add_vertex();
            inner.push(w);
            w
        };
        g.add_link(prev, next, s);
        prev = next;
    }
    inner
}

fn alternating(color: usize, len: usize, first_forward: bool) -> Vec<Step> {
    (0..len)
        .map(|i| {
            if (i % 2 == 0) == first_forward {
                Step::forward(color)
            } else {
                Step::backward(color)
            }
        })
        .collect()
}

/// The cycle `C` on `w_1..w_len`: arcs `w_{2i-1}w_{2i}`, `w_{2i+1}w_{2i}` and
/// `w_len w_1`. Returns 0-based arcs.
fn cactus_pendant_arcs(len: usize) -> Vec<(usize, usize)> {
    let mut arcs = Vec::new();
    for i in 1..=len / 2 {
        arcs.push((2 * i - 2, 2 * i - 1));
    }
    for i in 1..len / 2 {
        arcs.push((2 * i, 2 * i - 1));
    }
    arcs.push((len - 1, 0));
    arcs
}

/// Circuit `v_1..v_g'` (smallest `g' >= g`, `g' ≡ 4 mod 6`) with a copy of the
/// cycle `C` hanging from each `v_i` through its `w_1`.
pub fn cactus(g: usize) -> Result<MixedGraph> {
    generate(&ConstructionSpec::new("cactus").with("girth", g))
}

fn cactus_with_length(len: usize) -> MixedGraph {
    let mut out = MixedGraph::new(0, 1, 0);
    for i in 1..=len {
        out.add_labeled_vertex(format!("v{i}"));
    }
    for i in 0..len {
        out.add_arc(i, (i + 1) % len, 0);
    }
    for i in 0..len {
        let mut w = vec![i];
        for j in 2..=len {
            w.push(out.add_labeled_vertex(format!("v{}.w{j}", i + 1)));
        }
        for (t, h) in cactus_pendant_arcs(len) {
            out.add_arc(w[t], w[h], 0);
        }
    }
    out
}

/// Alternating cycle `v_0..v_{g'-1}` (smallest `g' >= g`, `g' ≡ 2 mod 4`,
/// edge `v_i v_{i+1}` blue for even `i`) plus, for `i <= g' - 3`, a path of
/// `g' - 2` internal vertices from `v_i` to `v_{i+1}` in the other color.
pub fn outerplanar5(g: usize) -> Result<MixedGraph> {
    generate(&ConstructionSpec::new("outerplanar5").with("girth", g))
}

fn outerplanar5_with_length(len: usize) -> MixedGraph {
    let mut out = MixedGraph::new(0, 0, 2);
    for i in 0..len {
        out.add_labeled_vertex(format!("v{i}"));
    }
    let color = |i: usize| if i.is_multiple_of(2) { BLUE } else { RED };
    for i in 0..len {
        out.add_edge(i, (i + 1) % len, color(i));
    }
    for i in 0..=len - 3 {
        let steps = vec![Step::edge(1 - color(i)); len - 1];
        for (j, w) in add_path(&mut out, i, i + 1, &steps).into_iter().enumerate() {
            out.set_label(w, format!("w{i},{}", j + 1));
        }
    }
    out
}

/// The 14-cycle whose arcs have their tail at the even index, except
/// `v_13 -> v_0`.
pub fn x14() -> MixedGraph {
    let mut g = MixedGraph::new(0, 1, 0);
    for i in 0..14 {
        g.add_labeled_vertex(format!("v{i}"));
    }
    for i in 0..13 {
        if i % 2 == 0 {
            g.add_arc(i, i + 1, 0);
        } else {
            g.add_arc(i + 1, i, 0);
        }
    }
    g.add_arc(13, 0, 0);
    g
}

const P7_ARCS: [(usize, usize); 6] = [(1, 0), (1, 2), (3, 2), (4, 3), (5, 4), (5, 6)];

pub fn p7() -> MixedGraph {
    let mut g = MixedGraph::new(0, 1, 0);
    for i in 0..7 {
        g.add_labeled_vertex(format!("p{i}"));
    }
    for (t, h) in P7_ARCS {
        g.add_arc(t, h, 0);
    }
    g
}

/// Steps of `p7` read from `p0` to `p6`.
fn p7_steps() -> Vec<Step> {
    (0..6)
        .map(|i| {
            if P7_ARCS.contains(&(i, i + 1)) {
                Step::forward(0)
            } else {
                Step::backward(0)
            }
        })
        .collect()
}

/// `X_main` and `X_0, X_2, .., X_12` (copies of `x14`), with a copy of `p7`
/// from `v_i` of `X_main` to `v_j` of `X_i` for all even `i, j`.
pub fn y_graph() -> MixedGraph {
    let x = x14();
    let mut g = MixedGraph::new(0, 1, 0);
    let main = g.append(&x, Some("main."));
    let mut copies = BTreeMap::new();
    for i in (0..14).step_by(2) {
        copies.insert(i, g.append(&x, Some(&format!("X{i}."))));
    }
    let steps = p7_steps();
    for i in (0..14).step_by(2) {
        for j in (0..14).step_by(2) {
            let inner = add_path(&mut g, main + i, copies[&i] + j, &steps);
            for (k, w) in inner.into_iter().enumerate() {
                g.set_label(w, format!("P{i},{j}.p{}", k + 1));
            }
        }
    }
    g
}

/// Twelve all-red 11-cycles `X_0..X_11` (vertex `v_{i,j}` for `0 <= j <= 10`)
/// with a blue 5-path from `v_{11,i}` to every `v_{i,j}`, for `0 <= i, j <= 10`.
///
/// The hub `X_11` is numbered first, so the solver's lowest-index tie-break
/// colors it before the other cycles.
pub fn red_cycles() -> MixedGraph {
    let mut g = MixedGraph::new(0, 0, 2);
    for i in std::iter::once(11).chain(0..11) {
        for j in 0..11 {
            g.add_labeled_vertex(format!("v{i},{j}"));
        }
    }
    let v = |i: usize, j: usize| 11 * ((i + 1) % 12) + j;
    for i in 0..12 {
        for j in 0..11 {
            g.add_edge(v(i, j), v(i, (j + 1) % 11), RED);
        }
    }
    let blue5 = [Step::edge(BLUE); 5];
    for i in 0..11 {
        for j in 0..11 {
            add_path(&mut g, v(11, i), v(i, j), &blue5);
        }
    }
    g
}

/// Blue 5-path pattern used for part A of `bip_g10`.
pub fn bip_g10_blue_path() -> [Step; 5] {
    [Step::edge(BLUE); 5]
}

/// (blue, blue, red, blue) pattern used for part B of `bip_g10`.
pub fn bip_g10_mixed_path() -> [Step; 4] {
    [Step::edge(BLUE), Step::edge(BLUE), Step::edge(RED), Step::edge(BLUE)]
}

/// `M = outerplanar5(10)` as a main copy `Y`, plus a copy `Y_v` per vertex
/// `v` of `Y`. Part A of `Y_v` (side of its lowest vertex in a BFS
/// 2-coloring) gets blue 5-paths from `v`, part B gets (blue, blue, red,
/// blue) paths from `v`. `swapped` exchanges the two path shapes.
pub fn bip_g10(swapped: bool) -> MixedGraph {
    let m = outerplanar5_with_length(10);
    let sides = two_coloring(&m).expect("outerplanar5 is bipartite");
    let blue = bip_g10_blue_path();
    let mixed = bip_g10_mixed_path();
    let mut g = MixedGraph::new(0, 0, 2);
    let main = g.append(&m, Some("Y."));
    for v in 0..m.num_vertices() {
        let copy = g.append(&m, Some(&format!("Y{v}.")));
        for (w, &side) in sides.iter().enumerate() {
            let in_a = side == 0;
            let steps: &[Step] = if in_a != swapped { &blue } else { &mixed };
            add_path(&mut g, main + v, copy + w, steps);
        }
    }
    g
}

/// For every link `uv` of `g`, adds paths of 2-vertices from `u` to `v`:
/// per edge color one path of `girth - 1` edges; per arc color four
/// alternating paths of `girth - 1`, `girth - 1`, `girth`, `girth` arcs,
/// the first of each length starting with `u` as a tail, the second with
/// `u` as a head.
pub fn replication_gadget(g: &MixedGraph, girth: usize) -> Result<MixedGraph> {
    if girth < 3 {
        return Err(Error::InvalidParameter(format!("girth must be at least 3, got {girth}")));
    }
    let violations = crate::graph::validate_graph(g);
    if !violations.is_empty() {
        return Err(Error::InvalidGraph(violations));
    }
    let mut out = g.clone();
    let links: Vec<(usize, usize)> = g.links().map(|(u, v, _)| (u, v)).collect();
    for (u, v) in links {
        for c in 0..g.n() {
            add_path(&mut out, u, v, &vec![Step::edge(c); girth - 1]);
        }
        for c in 0..g.m() {
            for len in [girth - 1, girth] {
                for first_forward in [true, false] {
                    add_path(&mut out, u, v, &alternating(c, len, first_forward));
                }
            }
        }
    }
    Ok(out)
}
