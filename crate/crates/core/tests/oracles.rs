//! Solver, transfer and metric results against exhaustive enumeration.

mod common;

use mixhom::metrics::{girth, is_bipartite, mad_by_enumeration, mad_exact};
use mixhom::pathlab::{path_allowed_set, thread_patterns, verify_branch_cases, BranchCase, PathKind};
use mixhom::{
    builtin_target, count_homomorphisms, find_homomorphism, forced_colors, ColorSet, ConstraintSet, LinkPattern,
    MixedGraph, TargetName,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(rng: &mut ChaCha8Rng, order: usize, m: usize, n: usize, density: f64) -> MixedGraph {
    let mut g = MixedGraph::new(order, m, n);
    for u in 0..order {
        for v in u + 1..order {
            if !rng.gen_bool(density) {
                continue;
            }
            let s = rng.gen_range(0..2 * m + n);
            if s < 2 * m {
                if s % 2 == 0 {
                    g.add_arc(u, v, s / 2);
                } else {
                    g.add_arc(v, u, s / 2);
                }
            } else {
                g.add_edge(u, v, s - 2 * m);
            }
        }
    }
    g
}

fn random_constraints(rng: &mut ChaCha8Rng, source: &MixedGraph, target: &MixedGraph) -> (ConstraintSet, Vec<ColorSet>) {
    let k = target.num_vertices();
    let mut c = ConstraintSet::new();
    let mut domains = common::full_domains(source, target);
    for (v, dom) in domains.iter_mut().enumerate() {
        if rng.gen_bool(0.3) {
            let mut set = ColorSet::empty(k);
            for x in 0..k {
                if rng.gen_bool(0.5) {
                    set.insert(x);
                }
            }
            c.restrict(v, set.clone());
            *dom = set;
        }
    }
    (c, domains)
}

#[test]
fn solver_matches_enumeration_on_random_sources() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in [TargetName::T5, TargetName::T6, TargetName::T4Oriented, TargetName::T4TwoEdgeColored] {
        let t = builtin_target(name);
        for _ in 0..60 {
            let order = rng.gen_range(1..=6);
            let s = random_graph(&mut rng, order, t.m(), t.n(), 0.5);
            let (c, domains) = random_constraints(&mut rng, &s, &t);
            let want = common::brute_count(&s, &t, &domains);
            assert_eq!(count_homomorphisms(&s, &t, &c).unwrap(), want, "{name:?}");
            let found = find_homomorphism(&s, &t, &c).unwrap();
            assert_eq!(found.is_some(), want > 0);
            if let Some(h) = found {
                assert!(h.is_valid(&s, &t));
                assert!(h.mapping.iter().enumerate().all(|(v, &x)| domains[v].contains(x)));
            }
            for v in 0..order {
                assert_eq!(forced_colors(&s, v, &t, &c).unwrap(), common::brute_forced(&s, v, &t, &domains));
            }
        }
    }
}

#[test]
fn disconnected_sources_multiply() {
    let t = builtin_target(TargetName::T5);
    let mut s = MixedGraph::new(6, 1, 0);
    s.add_arc(0, 1, 0);
    s.add_arc(1, 2, 0);
    s.add_arc(3, 4, 0);
    s.add_arc(5, 4, 0);
    let want = common::brute_count(&s, &t, &common::full_domains(&s, &t));
    assert_eq!(count_homomorphisms(&s, &t, &ConstraintSet::new()).unwrap(), want);
}

fn thread(pattern: &LinkPattern, m: usize, n: usize) -> MixedGraph {
    let mut g = MixedGraph::new(pattern.len() + 1, m, n);
    for (i, &step) in pattern.steps().iter().enumerate() {
        g.add_link(i, i + 1, step);
    }
    g
}

#[test]
fn allowed_sets_match_thread_colorings() {
    for (name, kind) in [(TargetName::T5, PathKind::Oriented), (TargetName::T6, PathKind::TwoEdgeColored)] {
        let t = builtin_target(name);
        for links in 1..=7 {
            for pattern in thread_patterns(kind, links) {
                let g = thread(&pattern, t.m(), t.n());
                for x in 0..t.num_vertices() {
                    let c = ConstraintSet::new().with(0, ColorSet::singleton(t.num_vertices(), x));
                    let got = path_allowed_set(&t, &pattern, x).unwrap();
                    assert_eq!(got, forced_colors(&g, links, &t, &c).unwrap());
                    if links <= 5 {
                        let mut domains = common::full_domains(&g, &t);
                        domains[0] = ColorSet::singleton(t.num_vertices(), x);
                        assert_eq!(got, common::brute_forced(&g, links, &t, &domains));
                    }
                }
            }
        }
    }
}

#[test]
fn mad_matches_subgraph_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..150 {
        let order = rng.gen_range(1..=12);
        let density = rng.gen_range(0.1..0.7);
        let g = random_graph(&mut rng, order, 1, 0, density);
        assert_eq!(Some(mad_exact(&g)), mad_by_enumeration(&g), "{g:?}");
    }
}

#[test]
fn girth_matches_edge_removal() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..300 {
        let order = rng.gen_range(1..=14);
        let density = rng.gen_range(0.05..0.4);
        let g = random_graph(&mut rng, order, 0, 2, density);
        assert_eq!(girth(&g), common::girth_by_edge_removal(&g));
    }
}

#[test]
fn bipartite_iff_no_odd_closed_walk() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let order = rng.gen_range(1..=8);
        let g = random_graph(&mut rng, order, 0, 1, 0.35);
        // an odd cycle exists iff the graph maps to no single edge
        let mut k2 = MixedGraph::new(2, 0, 1);
        k2.add_edge(0, 1, 0);
        let two_colorable = common::brute_count(&g, &k2, &common::full_domains(&g, &k2)) > 0;
        assert_eq!(is_bipartite(&g), two_colorable);
    }
}

/// A 3-vertex (vertex 0) with threads of the given internal lengths and
/// patterns to three outer endpoints, returned with the endpoints.
fn claw(patterns: [&LinkPattern; 3], m: usize, n: usize) -> (MixedGraph, [usize; 3]) {
    let mut g = MixedGraph::new(1, m, n);
    let mut ends = [0; 3];
    for (slot, p) in ends.iter_mut().zip(patterns) {
        let mut prev = 0;
        for &step in p.steps() {
            let next = g.add_vertex();
            g.add_link(prev, next, step.reverse());
            prev = next;
        }
        *slot = prev;
    }
    (g, ends)
}

fn claw_colorable(t: &MixedGraph, kind: PathKind, case: BranchCase) -> bool {
    let k = t.num_vertices();
    let [l1, l2, l3] = case.lengths();
    for p1 in thread_patterns(kind, l1 + 1) {
        for p2 in thread_patterns(kind, l2 + 1) {
            for p3 in thread_patterns(kind, l3 + 1) {
                let (g, ends) = claw([&p1, &p2, &p3], t.m(), t.n());
                for code in 0..k * k * k {
                    let colors = [code % k, code / k % k, code / (k * k)];
                    let mut c = ConstraintSet::new();
                    for (&v, &x) in ends.iter().zip(&colors) {
                        c.restrict(v, ColorSet::singleton(k, x));
                    }
                    if find_homomorphism(&g, t, &c).unwrap().is_none() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[test]
fn branch_cases_match_claw_colorings() {
    for (name, kind) in [(TargetName::T5, PathKind::Oriented), (TargetName::T6, PathKind::TwoEdgeColored)] {
        let t = builtin_target(name);
        for l1 in 0..=2 {
            for l2 in 0..=l1 {
                for l3 in 0..=l2 {
                    let case = BranchCase::new(l1, l2, l3).unwrap();
                    assert_eq!(verify_branch_cases(&t, &[case]).unwrap(), claw_colorable(&t, kind, case), "{name:?} {case:?}");
                }
            }
        }
    }
}

#[test]
fn branch_cases_at_the_t6_boundary() {
    let t6 = builtin_target(TargetName::T6);
    for (lengths, want) in [((4, 4, 0), true), ((4, 3, 0), false), ((3, 3, 2), false), ((4, 1, 1), false)] {
        let case = BranchCase::new(lengths.0, lengths.1, lengths.2).unwrap();
        assert_eq!(claw_colorable(&t6, PathKind::TwoEdgeColored, case), want, "{lengths:?}");
        assert_eq!(verify_branch_cases(&t6, &[case]).unwrap(), want, "{lengths:?}");
    }
}
