use num_rational::Ratio;

use super::mad::mad_exact;
use crate::graph::MixedGraph;

/// Hypothesis quantities of the weak-neighbor discharging argument for a
/// parameter `k`, and the resulting bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DischargingReport {
    pub k: usize,
    pub min_degree: Option<usize>,
    /// Longest run of consecutive 2-vertices on a path; `None` when some
    /// component is a cycle made only of 2-vertices (unbounded).
    pub max_consecutive_2vertices: Option<usize>,
    /// Largest number of 2-weak-neighbors of a 3-vertex, counted along its
    /// three incident threads.
    pub max_2weak_neighbors_of_3vertex: usize,
    /// `floor((k + 1) / 2)`.
    pub run_bound: usize,
    pub hypothesis_holds: bool,
    /// Why the hypothesis fails, when it does.
    pub reason: Option<String>,
    /// `2 + 2/(k + 2)`.
    pub mad_lower_bound: Ratio<i64>,
    /// `2k + 6`.
    pub girth_exclusion: usize,
    pub mad: Ratio<i64>,
}

impl DischargingReport {
    /// False only if the hypothesis holds and mad is below the bound,
    /// which the discharging argument rules out.
    pub fn conclusion_consistent(&self) -> bool {
        !self.hypothesis_holds || self.mad >= self.mad_lower_bound
    }
}

pub fn mad_lower_bound(k: usize) -> Ratio<i64> {
    Ratio::from_integer(2) + Ratio::new(2, k as i64 + 2)
}

pub fn check_discharging(g: &MixedGraph, k: usize) -> DischargingReport {
    let adj = g.underlying_adjacency();
    let deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let min_degree = deg.iter().copied().min();
    let run_bound = (k + 1) / 2;

    // components of the subgraph induced by 2-vertices
    let mut seen = vec![false; adj.len()];
    let mut max_run = Some(0usize);
    for s in 0..adj.len() {
        if deg[s] != 2 || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let (mut size, mut closed) = (0usize, true);
        while let Some(u) = stack.pop() {
            size += 1;
            for &w in &adj[u] {
                if deg[w] != 2 {
                    closed = false;
                } else if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        max_run = if closed { None } else { max_run.map(|r| r.max(size)) };
        if max_run.is_none() {
            break;
        }
    }

    let mut max_weak = 0;
    for v in (0..adj.len()).filter(|&v| deg[v] == 3) {
        let mut weak = 0;
        for &first in &adj[v] {
            let (mut prev, mut cur) = (v, first);
            while deg[cur] == 2 {
                weak += 1;
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = next;
            }
        }
        max_weak = max_weak.max(weak);
    }

    let reason = match (min_degree, max_run) {
        (None, _) => Some("graph has no vertices".to_string()),
        (Some(d), _) if d < 2 => Some(format!("minimum degree is {d}")),
        (_, None) => Some("a component is a cycle of 2-vertices".to_string()),
        (_, Some(r)) if r > run_bound => Some(format!("{r} consecutive 2-vertices exceed {run_bound}")),
        _ if max_weak > k => Some(format!("a 3-vertex has {max_weak} 2-weak-neighbors, more than {k}")),
        _ => None,
    };
    DischargingReport {
        k,
        min_degree,
        max_consecutive_2vertices: max_run,
        max_2weak_neighbors_of_3vertex: max_weak,
        run_bound,
        hypothesis_holds: reason.is_none(),
        reason,
        mad_lower_bound: mad_lower_bound(k),
        girth_exclusion: 2 * k + 6,
        mad: mad_exact(g),
    }
}
