use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use mixhom::constructions::{generate, replication_gadget, ConstructionSpec};
use mixhom::forcing::{
    apply_gadget_formula, core_retraction, forcing_reachability, nonempty_subsets, ForcingGadget, GadgetKind, Goal,
    ReachabilityReport,
};
use mixhom::metrics::{check_discharging, girth, is_bipartite, mad_exact, universality_edge_bound};
use mixhom::pathlab::{branch_counterexample, extension_failures, profile, BranchCase, PathKind};
use mixhom::targets::{fact_sheet, reconstruct_candidates, verify_target_facts};
use mixhom::{
    builtin_target, find_homomorphism, forced_colors, serialize_graph, transfer_sequence, ColorSet, LinkPattern,
    MixedGraph, TargetName,
};

use crate::input::{constraints, load_graph, set_names, show_set};
use crate::report::Outcome;

pub fn check(source: &str, target: &str) -> Result<Outcome> {
    let (s, t) = (load_graph(source)?, load_graph(target)?);
    let found = find_homomorphism(&s, &t, &Default::default())?;
    let (sn, tn) = (s.vertex_names(), t.vertex_names());
    Ok(match found {
        Some(h) => {
            let pairs: Vec<(String, String)> =
                h.mapping.iter().enumerate().map(|(v, &x)| (sn[v].clone(), tn[x].clone())).collect();
            let mut plain = String::from("FOUND\n");
            for (v, x) in &pairs {
                writeln!(plain, "{v} -> {x}").unwrap();
            }
            Outcome::new(true, plain, json!({ "homomorphism": true, "mapping": pairs }))
        }
        None => Outcome::new(false, "NONE", json!({ "homomorphism": false })),
    })
}

pub fn force(source: &str, target: &str, vertex: &str, constrain: &[String]) -> Result<Outcome> {
    let (s, t) = (load_graph(source)?, load_graph(target)?);
    let v = s.resolve_vertex(vertex)?;
    let c = constraints(&s, &t, constrain)?;
    let forced = forced_colors(&s, v, &t, &c)?;
    let name = &s.vertex_names()[v];
    Ok(Outcome::new(
        !forced.is_empty(),
        format!("{name}: {}", show_set(&t, &forced)),
        json!({ "vertex": name, "forced": set_names(&t, &forced) }),
    ))
}

pub fn walk(target: &str, pattern: &str, from: &str, to: &str) -> Result<Outcome> {
    let t = load_graph(target)?;
    let pattern: LinkPattern = pattern.parse()?;
    let (x, y) = (t.resolve_vertex(from)?, t.resolve_vertex(to)?);
    let seq = transfer_sequence(&t, &pattern, &ColorSet::singleton(t.num_vertices(), x))?;
    let exists = seq.last().is_some_and(|s| s.contains(y));
    let mut plain = String::new();
    for (i, s) in seq.iter().enumerate() {
        writeln!(plain, "after {i} steps: {}", show_set(&t, s)).unwrap();
    }
    writeln!(plain, "{}", if exists { "walk exists" } else { "no walk" }).unwrap();
    Ok(Outcome::new(
        exists,
        plain,
        json!({
            "exists": exists,
            "reached": seq.iter().map(|s| set_names(&t, s)).collect::<Vec<_>>(),
        }),
    ))
}

pub struct GenArgs<'a> {
    pub name: &'a str,
    pub input: Option<&'a str>,
    pub girth: Option<usize>,
    pub length: Option<usize>,
    pub swapped: bool,
    pub output: Option<&'a Path>,
}

pub fn gen(args: &GenArgs) -> Result<Outcome> {
    let g = if args.name == "replicate" {
        let input = args.input.context("gen replicate needs an input graph")?;
        let girth = args.girth.context("gen replicate needs --girth")?;
        replication_gadget(&load_graph(input)?, girth)?
    } else {
        if args.input.is_some() {
            bail!("only `gen replicate` takes an input graph");
        }
        let mut spec: ConstructionSpec = args.name.parse()?;
        for (key, value) in [("girth", args.girth), ("length", args.length)] {
            if let Some(v) = value {
                spec.params.insert(key.to_string(), v);
            }
        }
        if args.swapped {
            spec.params.insert("swapped".to_string(), 1);
        }
        generate(&spec)?
    };
    let text = serialize_graph(&g);
    match args.output {
        None => Ok(Outcome::document(text)),
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            Ok(Outcome::new(
                true,
                format!("wrote {} vertices, {} links to {}", g.num_vertices(), g.num_links(), path.display()),
                json!({ "output": path, "vertices": g.num_vertices(), "links": g.num_links() }),
            ))
        }
    }
}

pub fn stats(graph: &str, want_girth: bool, want_mad: bool, want_bipartite: bool) -> Result<Outcome> {
    let g = load_graph(graph)?;
    let all = !(want_girth || want_mad || want_bipartite);
    let mut plain = format!(
        "vertices {}\nsignature ({},{})\narcs {}\nedges {}\n",
        g.num_vertices(),
        g.m(),
        g.n(),
        g.arcs().len(),
        g.edges().len()
    );
    let mut machine = json!({
        "vertices": g.num_vertices(),
        "m": g.m(),
        "n": g.n(),
        "arcs": g.arcs().len(),
        "edges": g.edges().len(),
    });
    if all || want_girth {
        let gi = girth(&g);
        writeln!(plain, "girth {}", gi.map_or("none".to_string(), |x| x.to_string())).unwrap();
        machine["girth"] = json!(gi);
    }
    if all || want_mad {
        let mad = mad_exact(&g);
        writeln!(plain, "mad {mad}").unwrap();
        machine["mad"] = json!(mad.to_string());
    }
    if all || want_bipartite {
        let b = is_bipartite(&g);
        writeln!(plain, "bipartite {b}").unwrap();
        machine["bipartite"] = json!(b);
    }
    Ok(Outcome::new(true, plain, machine))
}

pub fn discharge(graph: &str, k: usize) -> Result<Outcome> {
    let g = load_graph(graph)?;
    let r = check_discharging(&g, k);
    let mut plain = format!(
        "k {k}\nmin degree {}\nlongest 2-vertex run {} (bound {})\nmost 2-weak-neighbors of a 3-vertex {}\n",
        r.min_degree.map_or("none".to_string(), |d| d.to_string()),
        r.max_consecutive_2vertices.map_or("unbounded".to_string(), |d| d.to_string()),
        r.run_bound,
        r.max_2weak_neighbors_of_3vertex,
    );
    match &r.reason {
        None => plain.push_str("hypothesis holds\n"),
        Some(why) => writeln!(plain, "hypothesis fails: {why}").unwrap(),
    }
    writeln!(plain, "mad {} vs bound {}", r.mad, r.mad_lower_bound).unwrap();
    writeln!(plain, "girth exclusion {}", r.girth_exclusion).unwrap();
    let ok = r.hypothesis_holds && r.conclusion_consistent();
    Ok(Outcome::new(
        ok,
        plain,
        json!({
            "k": k,
            "min_degree": r.min_degree,
            "max_consecutive_2vertices": r.max_consecutive_2vertices,
            "run_bound": r.run_bound,
            "max_2weak_neighbors_of_3vertex": r.max_2weak_neighbors_of_3vertex,
            "hypothesis_holds": r.hypothesis_holds,
            "reason": r.reason,
            "mad": r.mad.to_string(),
            "mad_lower_bound": r.mad_lower_bound.to_string(),
            "girth_exclusion": r.girth_exclusion,
            "consistent": r.conclusion_consistent(),
        }),
    ))
}

pub fn bound(m: usize, n: usize, k: usize) -> Result<Outcome> {
    let b = universality_edge_bound(m, n, k);
    let cmp = if b.exceeds_at_k { ">" } else { "<=" };
    let verdict = if b.impossible {
        "impossible"
    } else if b.exceeds_at_k {
        "exceeded at this k"
    } else {
        "not excluded"
    };
    Ok(Outcome::new(
        true,
        format!("required {} {cmp} planar_max {}, {verdict}", b.required, b.planar_max),
        json!({
            "m": m, "n": n, "k": k,
            "required": b.required,
            "planar_max": b.planar_max,
            "exceeds_at_k": b.exceeds_at_k,
            "impossible": b.impossible,
        }),
    ))
}

fn path_target(arg: &str) -> Result<(MixedGraph, PathKind)> {
    let t = load_graph(arg)?;
    let kind = PathKind::for_target(&t)?;
    Ok((t, kind))
}

pub fn pathlab_profile(target: &str, max_len: usize) -> Result<Outcome> {
    let (t, kind) = path_target(target)?;
    let p = profile(&t, target, max_len, kind)?;
    let mut plain = String::from("l  min_allowed  max_forbidden  maximal forbidden sets\n");
    let mut rows = Vec::new();
    for r in &p.rows {
        let sets: Vec<String> = r.maximal_forbidden_sets.iter().map(|s| show_set(&t, s)).collect();
        writeln!(plain, "{:<2} {:<12} {:<14} {}", r.internal_len, r.min_allowed, r.max_forbidden_size, sets.join(" "))
            .unwrap();
        rows.push(json!({
            "internal": r.internal_len,
            "min_allowed": r.min_allowed,
            "max_forbidden_size": r.max_forbidden_size,
            "maximal_forbidden_sets": r.maximal_forbidden_sets.iter().map(|s| set_names(&t, s)).collect::<Vec<_>>(),
        }));
    }
    Ok(Outcome::new(true, plain, json!({ "target": target, "rows": rows })))
}

pub fn pathlab_extend(target: &str, internal: usize) -> Result<Outcome> {
    let (t, _) = path_target(target)?;
    let failures = extension_failures(&t, internal)?;
    let names = t.vertex_names();
    let mut plain = String::new();
    for f in &failures {
        writeln!(plain, "blocked: {} to {} along {}", names[f.from], names[f.to], f.pattern).unwrap();
    }
    let cells = t.num_vertices() * t.num_vertices();
    writeln!(
        plain,
        "{} of {cells} endpoint pairs x {} patterns blocked",
        failures.len(),
        1u64 << (internal + 1)
    )
    .unwrap();
    Ok(Outcome::new(
        failures.is_empty(),
        plain,
        json!({
            "internal": internal,
            "extends": failures.is_empty(),
            "blocked": failures.iter().map(|f| json!({
                "from": names[f.from], "to": names[f.to], "pattern": f.pattern.to_string(),
            })).collect::<Vec<_>>(),
        }),
    ))
}

pub fn pathlab_branches(target: &str, cases: &[BranchCase]) -> Result<Outcome> {
    let (t, _) = path_target(target)?;
    let found = branch_counterexample(&t, cases)?;
    let shown: Vec<String> = cases.iter().map(|c| format!("({},{},{})", c.l1, c.l2, c.l3)).collect();
    Ok(match found {
        None => Outcome::new(
            true,
            format!("every case colors the 3-vertex: {}", shown.join(" ")),
            json!({ "holds": true, "cases": shown }),
        ),
        Some(cx) => {
            let sets: Vec<String> = cx.allowed.iter().map(|s| show_set(&t, s)).collect();
            Outcome::new(
                false,
                format!(
                    "case ({},{},{}) blocked: allowed sets {} are disjoint",
                    cx.case.l1,
                    cx.case.l2,
                    cx.case.l3,
                    sets.join(" ")
                ),
                json!({ "holds": false, "case": [cx.case.l1, cx.case.l2, cx.case.l3], "allowed": sets }),
            )
        }
    })
}

pub fn target_dump(name: TargetName) -> Result<Outcome> {
    Ok(Outcome::document(serialize_graph(&builtin_target(name))))
}

pub fn target_verify(name: TargetName) -> Result<Outcome> {
    let r = verify_target_facts(name);
    Ok(Outcome::new(
        r.all_passed(),
        r.to_string(),
        json!({
            "target": name.as_str(),
            "passed": r.all_passed(),
            "facts": r.results.iter().map(|f| json!({
                "description": f.description, "category": f.category, "passed": f.passed,
            })).collect::<Vec<_>>(),
        }),
    ))
}

pub fn target_reconstruct(name: TargetName) -> Result<Outcome> {
    let t = builtin_target(name);
    let rec = reconstruct_candidates(&fact_sheet(name), t.num_vertices(), t.m(), t.n())?;
    let contains = rec.candidates.iter().any(|c| mixhom::iso::are_isomorphic(c, &t));
    let mut plain = format!(
        "{}: {} labeled matches, {} isomorphism class(es), builtin {}\n",
        name,
        rec.labeled_matches,
        rec.candidates.len(),
        if contains { "among them" } else { "missing" }
    );
    for (i, c) in rec.candidates.iter().enumerate() {
        writeln!(plain, "c candidate {i}\n{}", serialize_graph(c).trim_end()).unwrap();
    }
    Ok(Outcome::new(
        contains,
        plain,
        json!({
            "target": name.as_str(),
            "labeled_matches": rec.labeled_matches,
            "examined": rec.examined,
            "candidates": rec.candidates.iter().map(serialize_graph).collect::<Vec<_>>(),
            "contains_builtin": contains,
            "unique": rec.is_unique(),
        }),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GoalArg {
    /// A set whose core is the 4-vertex 2-edge-colored clique.
    Good,
    /// Exactly {a,b,c,d}.
    Abcd,
}

/// The default gadget menu for a target of the given signature.
pub fn gadget_menu(t: &MixedGraph) -> Result<Vec<ForcingGadget>> {
    let kinds: &[GadgetKind] = match t.signature() {
        (1, 0) => &[GadgetKind::Out, GadgetKind::In, GadgetKind::Z],
        (0, 2) => &[
            GadgetKind::Blue,
            GadgetKind::Red,
            GadgetKind::DashedBlue,
            GadgetKind::DashedRed,
            GadgetKind::X,
            GadgetKind::Y,
        ],
        (m, n) => bail!("no gadget menu for signature ({m},{n})"),
    };
    Ok(kinds.iter().map(|&k| ForcingGadget::new(k)).collect())
}

/// Blue and red neighborhood images of vertex sets that contain `f`,
/// minus the sets already listed.
fn auxiliary_starts(t: &MixedGraph, listed: &[ColorSet]) -> Result<Vec<ColorSet>> {
    let f = t.resolve_vertex("f")?;
    let mut out = BTreeSet::new();
    for s in nonempty_subsets(&ColorSet::full(t.num_vertices())) {
        if !s.contains(f) {
            continue;
        }
        for kind in [GadgetKind::Blue, GadgetKind::Red] {
            if let Some(img) = apply_gadget_formula(t, kind, &s) {
                if !img.is_empty() && !listed.contains(&img) {
                    out.insert(img);
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn describe_reach(t: &MixedGraph, r: &ReachabilityReport, plain: &mut String) -> Vec<Value> {
    let mut entries = Vec::new();
    for e in &r.entries {
        let start = show_set(t, &e.start);
        match &e.witness {
            None => {
                writeln!(plain, "{start}: no goal set reachable").unwrap();
                entries.push(json!({ "start": set_names(t, &e.start), "reached": Value::Null }));
            }
            Some(steps) => {
                let path: Vec<String> = steps
                    .iter()
                    .map(|s| format!("{} -> {}", s.gadget, show_set(t, &s.to)))
                    .collect();
                let reached = e.reached().expect("witness present");
                if path.is_empty() {
                    writeln!(plain, "{start}: already a goal set").unwrap();
                } else {
                    writeln!(plain, "{start}: {}", path.join(", ")).unwrap();
                }
                entries.push(json!({
                    "start": set_names(t, &e.start),
                    "reached": set_names(t, reached),
                    "steps": steps.iter().map(|s| json!({
                        "gadget": s.gadget.to_string(),
                        "from": set_names(t, &s.from),
                        "to": set_names(t, &s.to),
                    })).collect::<Vec<_>>(),
                }));
            }
        }
    }
    entries
}

pub fn force_closure(target: &str, goal: GoalArg, starts: &[String]) -> Result<Outcome> {
    let t = load_graph(target)?;
    let menu = gadget_menu(&t)?;
    let goal_value = match goal {
        GoalArg::Good => Goal::GoodSet,
        GoalArg::Abcd => Goal::Equals(t.resolve_set("abcd")?),
    };
    let start_sets: Vec<ColorSet> = if starts.is_empty() {
        let base = match goal {
            GoalArg::Abcd => "abd",
            GoalArg::Good => "abcde",
        };
        nonempty_subsets(&t.resolve_set(base)?)
    } else {
        starts.iter().map(|s| t.resolve_set(s)).collect::<mixhom::Result<_>>()?
    };
    let main = forcing_reachability(&t, &start_sets, &goal_value, &menu)?;
    let mut plain = String::new();
    let entries = describe_reach(&t, &main, &mut plain);
    let reached = main.entries.iter().filter(|e| e.witness.is_some()).count();
    writeln!(plain, "{reached} of {} start sets reach the goal", main.entries.len()).unwrap();

    // extra starts containing f are reported but do not decide the exit status
    let mut auxiliary = Vec::new();
    if goal == GoalArg::Good && starts.is_empty() && t.signature() == (0, 2) && t.num_vertices() >= 6 {
        let aux = auxiliary_starts(&t, &start_sets)?;
        if !aux.is_empty() {
            plain.push_str("auxiliary starts from neighborhoods of sets containing f:\n");
            let r = forcing_reachability(&t, &aux, &goal_value, &menu)?;
            auxiliary = describe_reach(&t, &r, &mut plain);
        }
    }
    Ok(Outcome::new(
        main.all_reached(),
        plain,
        json!({
            "goal": format!("{goal:?}").to_lowercase(),
            "menu": menu.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "all_reached": main.all_reached(),
            "entries": entries,
            "auxiliary": auxiliary,
        }),
    ))
}

pub fn core(graph: &str) -> Result<Outcome> {
    let g = load_graph(graph)?;
    let (kept, retraction) = core_retraction(&g)?;
    let names = g.vertex_names();
    let core = g.induced_subgraph(&kept);
    let kept_names: Vec<&String> = kept.iter().map(|&v| &names[v]).collect();
    let map: Vec<(String, String)> = retraction
        .mapping
        .iter()
        .enumerate()
        .map(|(v, &x)| (names[v].clone(), names[x].clone()))
        .collect();
    let mut plain = format!(
        "core has {} of {} vertices: {}\n",
        kept.len(),
        g.num_vertices(),
        kept_names.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(" ")
    );
    for (v, x) in &map {
        writeln!(plain, "{v} -> {x}").unwrap();
    }
    plain.push_str(&serialize_graph(&core));
    Ok(Outcome::new(
        true,
        plain,
        json!({ "kept": kept_names, "retraction": map, "core": serialize_graph(&core) }),
    ))
}
