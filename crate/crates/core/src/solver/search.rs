//! Backtracking search with arc-consistency and dynamic component splitting.
//!
//! Variables are source vertices, values are target vertices. A variable
//! is *fixed* once its domain is a singleton. After every propagation the
//! unfixed variables are split into connected components (through unfixed
//! neighbors only); with arc-consistency established, fixed neighbors act
//! as unary constraints, so components are solved independently.

use std::collections::VecDeque;
use std::time::Instant;

use crate::colorset::ColorSet;
use crate::graph::{MixedGraph, NeighborTable};

const RED_ZONE: usize = 128 * 1024;
const STACK_GROWTH: usize = 16 * 1024 * 1024;

pub(crate) struct Engine<'a> {
    table: &'a NeighborTable,
    /// `adj[u]` lists `(w, step_index)`: the image of `w` must be a
    /// `step`-neighbor of the image of `u`.
    adj: Vec<Vec<(usize, usize)>>,
    pub(crate) domains: Vec<ColorSet>,
    trail: Vec<(usize, ColorSet)>,
    queue: VecDeque<usize>,
    queued: Vec<bool>,
    deadline: Option<Instant>,
    nodes: u64,
    pub(crate) aborted: bool,
}

impl<'a> Engine<'a> {
    pub(crate) fn new(
        source: &MixedGraph,
        table: &'a NeighborTable,
        domains: Vec<ColorSet>,
        deadline: Option<Instant>,
    ) -> Self {
        let m = source.m();
        let mut adj = vec![Vec::new(); source.num_vertices()];
        for (u, v, s) in source.links() {
            adj[u].push((v, s.index(m)));
            adj[v].push((u, s.reverse().index(m)));
        }
        let n = source.num_vertices();
        Engine {
            table,
            adj,
            domains,
            trail: Vec::new(),
            queue: VecDeque::new(),
            queued: vec![false; n],
            deadline,
            nodes: 0,
            aborted: false,
        }
    }

    fn set_domain(&mut self, v: usize, dom: ColorSet) {
        let old = std::mem::replace(&mut self.domains[v], dom);
        self.trail.push((v, old));
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (v, old) = self.trail.pop().unwrap();
            self.domains[v] = old;
        }
    }

    fn enqueue(&mut self, v: usize) {
        if !self.queued[v] {
            self.queued[v] = true;
            self.queue.push_back(v);
        }
    }

    fn propagate(&mut self) -> bool {
        while let Some(u) = self.queue.pop_front() {
            self.queued[u] = false;
            for i in 0..self.adj[u].len() {
                let (w, s) = self.adj[u][i];
                let support = self.table.image_by_index(&self.domains[u], s);
                if !self.domains[w].is_subset(&support) {
                    let narrowed = self.domains[w].intersection(&support);
                    let empty = narrowed.is_empty();
                    self.set_domain(w, narrowed);
                    if empty {
                        self.clear_queue();
                        return false;
                    }
                    self.enqueue(w);
                }
            }
        }
        true
    }

    fn clear_queue(&mut self) {
        while let Some(v) = self.queue.pop_front() {
            self.queued[v] = false;
        }
    }

    /// Establishes arc-consistency over the whole instance.
    pub(crate) fn initialize(&mut self) -> bool {
        if self.domains.iter().any(ColorSet::is_empty) {
            return false;
        }
        for v in 0..self.domains.len() {
            self.enqueue(v);
        }
        self.propagate()
    }

    fn assign(&mut self, v: usize, x: usize) -> bool {
        let universe = self.table.num_vertices();
        self.set_domain(v, ColorSet::singleton(universe, x));
        self.enqueue(v);
        self.propagate()
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.aborted = true;
                }
            }
        }
        self.aborted
    }

    /// Connected components of the unfixed variables among `vars`,
    /// smallest first (ties broken by lowest member).
    pub(crate) fn components(&self, vars: &[usize]) -> Vec<Vec<usize>> {
        let n = self.domains.len();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for &start in vars {
            if seen[start] || self.domains[start].len() <= 1 {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &(w, _) in &self.adj[u] {
                    if !seen[w] && self.domains[w].len() > 1 {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps.sort_by_key(|c| (c.len(), c[0]));
        comps
    }

    fn pick(&self, comp: &[usize]) -> usize {
        *comp
            .iter()
            .filter(|&&v| self.domains[v].len() > 1)
            .min_by_key(|&&v| (self.domains[v].len(), v))
            .expect("component has an unfixed variable")
    }

    /// Finds a solution of the component, leaving its variables fixed on
    /// success. On failure the state is restored.
    pub(crate) fn solve(&mut self, comp: &[usize]) -> bool {
        stacker::maybe_grow(RED_ZONE, STACK_GROWTH, || self.solve_inner(comp))
    }

    fn solve_inner(&mut self, comp: &[usize]) -> bool {
        if self.tick() {
            return false;
        }
        let var = self.pick(comp);
        let values: Vec<usize> = self.domains[var].iter().collect();
        for x in values {
            let mark = self.trail.len();
            if self.assign(var, x) {
                let mut ok = true;
                for sub in self.components(comp) {
                    if !self.solve(&sub) {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    return true;
                }
            }
            self.undo(mark);
            if self.aborted {
                return false;
            }
        }
        false
    }

    /// Number of solutions of the component; the state is restored.
    pub(crate) fn count(&mut self, comp: &[usize]) -> u128 {
        stacker::maybe_grow(RED_ZONE, STACK_GROWTH, || self.count_inner(comp))
    }

    fn count_inner(&mut self, comp: &[usize]) -> u128 {
        let var = self.pick(comp);
        let values: Vec<usize> = self.domains[var].iter().collect();
        let mut total: u128 = 0;
        for x in values {
            let mark = self.trail.len();
            if self.assign(var, x) {
                let mut product: u128 = 1;
                for sub in self.components(comp) {
                    product = product.saturating_mul(self.count(&sub));
                    if product == 0 {
                        break;
                    }
                }
                total = total.saturating_add(product);
            }
            self.undo(mark);
        }
        total
    }
}
