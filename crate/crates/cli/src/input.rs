use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use mixhom::constructions::{generate, ConstructionSpec, CONSTRUCTION_NAMES};
use mixhom::{builtin_by_name, parse_graph, ColorSet, ConstraintSet, MixedGraph};

/// Resolves a graph argument: a builtin target name, an MG1 file, or a
/// construction written `name` or `name:key=value,...`, in that order.
/// Text spanning several lines is read as an MG1 document.
pub fn load_graph(arg: &str) -> Result<MixedGraph> {
    if let Ok(g) = builtin_by_name(arg) {
        return Ok(g);
    }
    if arg.contains('\n') {
        return parse_graph(arg).context("parsing inline MG1 text");
    }
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        return parse_graph(&text).with_context(|| format!("parsing {arg}"));
    }
    let name = arg.split(':').next().unwrap_or_default();
    if CONSTRUCTION_NAMES.contains(&name) {
        let spec: ConstructionSpec = arg.parse()?;
        return Ok(generate(&spec)?);
    }
    bail!("`{arg}` is not a file, a builtin target or a construction")
}

/// Parses `v=SET`, with `v` a source vertex and `SET` target vertices.
pub fn parse_constraint(source: &MixedGraph, target: &MixedGraph, text: &str) -> Result<(usize, ColorSet)> {
    let (v, set) = text
        .split_once('=')
        .with_context(|| format!("constraint `{text}` is not of the form v=SET"))?;
    let v = source.resolve_vertex(v.trim())?;
    let set = target.resolve_set(set)?;
    Ok((v, set))
}

pub fn constraints(source: &MixedGraph, target: &MixedGraph, items: &[String]) -> Result<ConstraintSet> {
    let mut c = ConstraintSet::new();
    for item in items {
        let (v, set) = parse_constraint(source, target, item)?;
        c.restrict(v, set);
    }
    Ok(c)
}

pub fn show_set(g: &MixedGraph, s: &ColorSet) -> String {
    s.display_with(&g.vertex_names()).to_string()
}

pub fn set_names(g: &MixedGraph, s: &ColorSet) -> Vec<String> {
    let names = g.vertex_names();
    s.iter().map(|x| names[x].clone()).collect()
}
