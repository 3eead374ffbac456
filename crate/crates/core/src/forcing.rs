//! Forced sets and the gadgets that transform them.
//!
//! A set `S` is forced on a vertex `v` of a graph `H` when the colors `v`
//! takes over all target-colorings of `H` are exactly `S`. A gadget builds
//! a new graph from copies of `H`; here each copy is replaced by the unary
//! constraint "this vertex lies in `S`", which is all the gadget
//! arguments use.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::colorset::ColorSet;
use crate::constructions::smallest_at_least;
use crate::error::{Error, Result};
use crate::graph::{Homomorphism, MixedGraph, NeighborTable, Step, BLUE, RED};
use crate::iso::are_isomorphic;
use crate::solver::{find_homomorphism, forced_colors, ConstraintSet};
use crate::targets::{builtin_target, TargetName};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GadgetKind {
    Out,
    In,
    Blue,
    Red,
    DashedBlue,
    DashedRed,
    Z,
    X,
    Y,
}

impl GadgetKind {
    pub const ALL: [GadgetKind; 9] = [
        GadgetKind::Out,
        GadgetKind::In,
        GadgetKind::Blue,
        GadgetKind::Red,
        GadgetKind::DashedBlue,
        GadgetKind::DashedRed,
        GadgetKind::Z,
        GadgetKind::X,
        GadgetKind::Y,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GadgetKind::Out => "out",
            GadgetKind::In => "in",
            GadgetKind::Blue => "blue",
            GadgetKind::Red => "red",
            GadgetKind::DashedBlue => "dashed_blue",
            GadgetKind::DashedRed => "dashed_red",
            GadgetKind::Z => "Z",
            GadgetKind::X => "X",
            GadgetKind::Y => "Y",
        }
    }

    fn oriented(self) -> bool {
        matches!(self, GadgetKind::Out | GadgetKind::In | GadgetKind::Z)
    }

    fn default_param(self) -> usize {
        match self {
            GadgetKind::Z => 3,
            GadgetKind::X => 4,
            GadgetKind::Y => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GadgetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GadgetKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown gadget '{s}'")))
    }
}

/// A gadget with its size parameter. For `Z` the parameter is a girth `g`
/// (circuit length: smallest `g' >= g` with `g' ≡ 4 mod 6`); for `X` a
/// girth `g` (cycle length `2⌈g/2⌉`); for `Y` the multiplier `g` of the
/// alternating `8g`-cycle. Other kinds ignore it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ForcingGadget {
    pub kind: GadgetKind,
    pub girth_param: usize,
}

impl ForcingGadget {
    pub fn new(kind: GadgetKind) -> Self {
        ForcingGadget {
            kind,
            girth_param: kind.default_param(),
        }
    }

    pub fn with_param(kind: GadgetKind, girth_param: usize) -> Self {
        ForcingGadget { kind, girth_param }
    }

    /// The gadget graph, the vertices constrained to the input set, and
    /// the output vertex.
    pub fn build(&self) -> Result<(MixedGraph, Vec<usize>, usize)> {
        let p = self.girth_param;
        Ok(match self.kind {
            GadgetKind::Out | GadgetKind::In => {
                let mut h = MixedGraph::new(2, 1, 0);
                if self.kind == GadgetKind::Out {
                    h.add_arc(0, 1, 0);
                } else {
                    h.add_arc(1, 0, 0);
                }
                (h, vec![0], 1)
            }
            GadgetKind::Blue | GadgetKind::Red => {
                let mut h = MixedGraph::new(2, 0, 2);
                h.add_edge(0, 1, if self.kind == GadgetKind::Blue { BLUE } else { RED });
                (h, vec![0], 1)
            }
            GadgetKind::DashedBlue | GadgetKind::DashedRed => {
                let mut h = MixedGraph::new(2, 0, 2);
                h.add_edge(0, 1, if self.kind == GadgetKind::DashedBlue { BLUE } else { RED });
                (h, vec![0, 1], 0)
            }
            GadgetKind::Z => {
                if p < 3 {
                    return Err(Error::InvalidParameter(format!("Z needs girth >= 3, got {p}")));
                }
                let len = smallest_at_least(p, 6, 4);
                let mut h = MixedGraph::new(len, 1, 0);
                for i in 0..len {
                    h.add_arc(i, (i + 1) % len, 0);
                }
                // v_1 is index 0; copies sit on v_2..v_len; output v_2
                (h, (1..len).collect(), 1)
            }
            GadgetKind::X => {
                if p < 3 {
                    return Err(Error::InvalidParameter(format!("X needs girth >= 3, got {p}")));
                }
                let len = 2 * p.div_ceil(2);
                let mut h = MixedGraph::new(len, 0, 2);
                for i in 0..len - 1 {
                    h.add_edge(i, i + 1, BLUE);
                }
                h.add_edge(0, len - 1, RED);
                (h, (0..len).collect(), 0)
            }
            GadgetKind::Y => {
                if p < 1 {
                    return Err(Error::InvalidParameter("Y needs g >= 1".into()));
                }
                let len = 8 * p;
                let mut h = MixedGraph::new(len + 1, 0, 2);
                for i in 0..len {
                    h.add_edge(i, (i + 1) % len, if i % 2 == 0 { BLUE } else { RED });
                }
                h.add_edge(len, 0, BLUE);
                h.add_edge(len, 4 * p + 2, BLUE);
                (h, (0..len).collect(), 0)
            }
        })
    }
}

impl fmt::Display for ForcingGadget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GadgetKind::Z | GadgetKind::X | GadgetKind::Y => write!(f, "{}({})", self.kind, self.girth_param),
            _ => write!(f, "{}", self.kind),
        }
    }
}

fn check_gadget_target(target: &MixedGraph, kind: GadgetKind) -> Result<()> {
    let (m, n) = if kind.oriented() { (1, 0) } else { (0, 2) };
    if target.signature() != (m, n) {
        return Err(Error::SignatureMismatch {
            expected_m: m,
            expected_n: n,
            found_m: target.m(),
            found_n: target.n(),
        });
    }
    Ok(())
}

/// The set forced at the gadget's output when `s` is forced on every
/// attachment vertex.
pub fn apply_gadget(target: &MixedGraph, gadget: &ForcingGadget, s: &ColorSet) -> Result<ColorSet> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    check_gadget_target(target, gadget.kind)?;
    if s.universe() != target.num_vertices() {
        return Err(Error::InvalidParameter(format!(
            "set is over {} colors, target has {}",
            s.universe(),
            target.num_vertices()
        )));
    }
    let (h, attach, out) = gadget.build()?;
    let mut constraints = ConstraintSet::new();
    for v in attach {
        constraints.restrict(v, s.clone());
    }
    forced_colors(&h, out, target, &constraints)
}

/// Direct set formulas for the one-link gadgets: neighborhood images for
/// out/in/blue/red, and vertices on an edge of the color inside `T[s]` for
/// the dashed kinds. `None` for the cycle gadgets.
pub fn apply_gadget_formula(target: &MixedGraph, kind: GadgetKind, s: &ColorSet) -> Option<ColorSet> {
    let table = NeighborTable::new(target);
    match kind {
        GadgetKind::Out => Some(table.image(s, Step::forward(0))),
        GadgetKind::In => Some(table.image(s, Step::backward(0))),
        GadgetKind::Blue => Some(table.image(s, Step::edge(BLUE))),
        GadgetKind::Red => Some(table.image(s, Step::edge(RED))),
        GadgetKind::DashedBlue | GadgetKind::DashedRed => {
            let c = if kind == GadgetKind::DashedBlue { BLUE } else { RED };
            let mut out = ColorSet::empty(target.num_vertices());
            for e in target.edges().iter().filter(|e| e.color == c) {
                if s.contains(e.u) && s.contains(e.v) {
                    out.insert(e.u);
                    out.insert(e.v);
                }
            }
            Some(out)
        }
        GadgetKind::Z | GadgetKind::X | GadgetKind::Y => None,
    }
}

/// Graphs above this size are refused by [`core_of`].
pub const CORE_LIMIT: usize = 8;

/// A minimum vertex set `R` such that `g` maps to `g[R]`, with such a map.
pub fn core_retraction(g: &MixedGraph) -> Result<(Vec<usize>, Homomorphism)> {
    let nv = g.num_vertices();
    if nv > CORE_LIMIT {
        return Err(Error::SizeLimit {
            size: nv,
            limit: CORE_LIMIT,
        });
    }
    for k in 0..=nv {
        for mask in 0u32..(1u32 << nv) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let r: Vec<usize> = (0..nv).filter(|&v| mask >> v & 1 == 1).collect();
            let sub = g.induced_subgraph(&r);
            if let Some(h) = find_homomorphism(g, &sub, &ConstraintSet::new())? {
                let mapping = h.mapping.iter().map(|&i| r[i]).collect();
                return Ok((r, Homomorphism::new(mapping)));
            }
        }
    }
    unreachable!("g maps to itself")
}

/// The core of `g`, as an induced subgraph (unique up to isomorphism).
pub fn core_of(g: &MixedGraph) -> Result<MixedGraph> {
    let (r, _) = core_retraction(g)?;
    Ok(g.induced_subgraph(&r))
}

/// Whether the core of `target[s]` is isomorphic to `t4_2ec`.
pub fn is_good_set(target: &MixedGraph, s: &ColorSet) -> Result<bool> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let members: Vec<usize> = s.iter().collect();
    let core = core_of(&target.induced_subgraph(&members))?;
    Ok(core.num_vertices() == 4 && are_isomorphic(&core, &builtin_target(TargetName::T4TwoEdgeColored)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Goal {
    Equals(ColorSet),
    GoodSet,
}

/// One gadget application on a witness path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcingStep {
    pub gadget: ForcingGadget,
    pub from: ColorSet,
    pub to: ColorSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachEntry {
    pub start: ColorSet,
    /// Shortest gadget sequence to a goal set, if any.
    pub witness: Option<Vec<ForcingStep>>,
}

impl ReachEntry {
    pub fn reached(&self) -> Option<&ColorSet> {
        self.witness
            .as_ref()
            .map(|w| w.last().map_or(&self.start, |s| &s.to))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityReport {
    pub entries: Vec<ReachEntry>,
    /// Every set seen during the search, with whether it meets the goal.
    pub explored: BTreeMap<ColorSet, bool>,
}

impl ReachabilityReport {
    pub fn all_reached(&self) -> bool {
        self.entries.iter().all(|e| e.witness.is_some())
    }
}

/// Breadth-first closure of each start set under the gadget menu. Empty
/// outputs are dead ends (the gadget graph would not be colorable).
pub fn forcing_reachability(
    target: &MixedGraph,
    start_sets: &[ColorSet],
    goal: &Goal,
    menu: &[ForcingGadget],
) -> Result<ReachabilityReport> {
    if start_sets.is_empty() {
        return Err(Error::InvalidParameter("no start sets given".into()));
    }
    let mut transitions: HashMap<(usize, ColorSet), ColorSet> = HashMap::new();
    let mut goal_memo: BTreeMap<ColorSet, bool> = BTreeMap::new();
    let mut is_goal = |s: &ColorSet| -> Result<bool> {
        if let Some(&b) = goal_memo.get(s) {
            return Ok(b);
        }
        let b = match goal {
            Goal::Equals(t) => s == t,
            Goal::GoodSet => is_good_set(target, s)?,
        };
        goal_memo.insert(s.clone(), b);
        Ok(b)
    };
    let mut entries = Vec::new();
    for start in start_sets {
        let mut parent: HashMap<ColorSet, Option<(ColorSet, usize)>> = HashMap::new();
        parent.insert(start.clone(), None);
        let mut queue = VecDeque::from([start.clone()]);
        let mut found = None;
        while let Some(s) = queue.pop_front() {
            if is_goal(&s)? {
                found = Some(s);
                break;
            }
            for (gi, gadget) in menu.iter().enumerate() {
                let key = (gi, s.clone());
                let next = match transitions.get(&key) {
                    Some(n) => n.clone(),
                    None => {
                        let n = apply_gadget(target, gadget, &s)?;
                        transitions.insert(key, n.clone());
                        n
                    }
                };
                if !next.is_empty() && !parent.contains_key(&next) {
                    parent.insert(next.clone(), Some((s.clone(), gi)));
                    queue.push_back(next);
                }
            }
        }
        let witness = found.map(|end| {
            let mut steps = Vec::new();
            let mut cur = end;
            while let Some(Some((prev, gi))) = parent.get(&cur) {
                steps.push(ForcingStep {
                    gadget: menu[*gi],
                    from: prev.clone(),
                    to: cur.clone(),
                });
                cur = prev.clone();
            }
            steps.reverse();
            steps
        });
        entries.push(ReachEntry {
            start: start.clone(),
            witness,
        });
    }
    Ok(ReachabilityReport {
        entries,
        explored: goal_memo,
    })
}

/// All nonempty subsets of `base`, by increasing size then mask.
pub fn nonempty_subsets(base: &ColorSet) -> Vec<ColorSet> {
    let members: Vec<usize> = base.iter().collect();
    let mut out: Vec<ColorSet> = (1u64..(1u64 << members.len()))
        .map(|bits| {
            ColorSet::from_indices(
                base.universe(),
                members.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &v)| v),
            )
        })
        .collect();
    out.sort_by_key(|s| (s.len(), s.mask()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(g: &MixedGraph, text: &str) -> ColorSet {
        g.resolve_set(text).unwrap()
    }

    #[test]
    fn spot_values() {
        let t5 = builtin_target(TargetName::T5);
        let t6 = builtin_target(TargetName::T6);
        let z = ForcingGadget::new(GadgetKind::Z);
        assert_eq!(apply_gadget(&t5, &z, &set(&t5, "abd")).unwrap(), set(&t5, "ad"));
        let out = ForcingGadget::new(GadgetKind::Out);
        assert_eq!(apply_gadget(&t5, &out, &set(&t5, "c")).unwrap(), set(&t5, "d"));
        let x = ForcingGadget::new(GadgetKind::X);
        assert_eq!(apply_gadget(&t6, &x, &set(&t6, "abcde")).unwrap(), set(&t6, "acde"));
        let y = ForcingGadget::new(GadgetKind::Y);
        assert_eq!(apply_gadget(&t6, &y, &set(&t6, "acde")).unwrap(), set(&t6, "ad"));
        let red = ForcingGadget::new(GadgetKind::Red);
        assert_eq!(apply_gadget(&t6, &red, &set(&t6, "f")).unwrap(), set(&t6, "b"));
    }

    #[test]
    fn wrong_signature_and_empty() {
        let t5 = builtin_target(TargetName::T5);
        let blue = ForcingGadget::new(GadgetKind::Blue);
        assert!(apply_gadget(&t5, &blue, &ColorSet::full(5)).is_err());
        let out = ForcingGadget::new(GadgetKind::Out);
        assert_eq!(apply_gadget(&t5, &out, &ColorSet::empty(5)), Err(Error::EmptySet));
    }

    #[test]
    fn cores() {
        let t4 = builtin_target(TargetName::T4TwoEdgeColored);
        assert!(are_isomorphic(&core_of(&t4).unwrap(), &t4));
        let mut e = MixedGraph::new(2, 0, 2);
        e.add_edge(0, 1, BLUE);
        assert_eq!(core_of(&e).unwrap().num_vertices(), 2);
        // a blue path of length 2 folds onto one edge
        let mut p = MixedGraph::new(3, 0, 2);
        p.add_edge(0, 1, BLUE);
        p.add_edge(1, 2, BLUE);
        assert_eq!(core_of(&p).unwrap().num_vertices(), 2);
        assert!(core_of(&MixedGraph::new(9, 0, 2)).is_err());
    }

    #[test]
    fn good_sets() {
        let t6 = builtin_target(TargetName::T6);
        assert!(is_good_set(&t6, &set(&t6, "abcd")).unwrap());
        for v in 0..6 {
            assert!(!is_good_set(&t6, &ColorSet::singleton(6, v)).unwrap());
        }
        assert!(!is_good_set(&t6, &set(&t6, "ad")).unwrap());
    }

    #[test]
    fn zero_step_goal() {
        let t5 = builtin_target(TargetName::T5);
        let full = ColorSet::full(5);
        let r = forcing_reachability(
            &t5,
            std::slice::from_ref(&full),
            &Goal::Equals(full.clone()),
            &[ForcingGadget::new(GadgetKind::Out)],
        )
        .unwrap();
        assert_eq!(r.entries[0].witness, Some(vec![]));
        assert_eq!(r.entries[0].reached(), Some(&full));
    }

    #[test]
    fn subsets_enumeration() {
        let s = nonempty_subsets(&ColorSet::from_indices(6, [0, 1, 3]));
        assert_eq!(s.len(), 7);
        assert_eq!(s[0], ColorSet::singleton(6, 0));
        assert_eq!(s[6].len(), 3);
    }
}
