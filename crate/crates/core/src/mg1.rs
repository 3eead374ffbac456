//! The MG1 text format.
//!
//! ```text
//! c comment
//! p mg <num_vertices> <m> <n>
//! v <index> <name>
//! a <tail> <head> <color>
//! e <u> <v> <color>
//! ```
//!
//! Serialization is canonical: header, labels by index, arcs sorted by
//! `(tail, head, color)`, edges sorted by `(u, v, color)` with `u < v`.

use std::collections::HashSet;
use std::fmt::Write;

use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::graph::{validate_graph, MixedGraph};

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    ParseError {
        line,
        kind: ParseErrorKind::Syntax(msg.into()),
    }
    .into()
}

fn err(line: usize, kind: ParseErrorKind) -> Error {
    ParseError { line, kind }.into()
}

fn numbers<const N: usize>(line: usize, fields: &[&str]) -> Result<[usize; N]> {
    if fields.len() != N {
        return Err(syntax(line, format!("expected {N} fields, found {}", fields.len())));
    }
    let mut out = [0; N];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f
            .parse()
            .map_err(|_| syntax(line, format!("`{f}` is not a non-negative integer")))?;
    }
    Ok(out)
}

pub fn parse_graph(text: &str) -> Result<MixedGraph> {
    let mut graph: Option<MixedGraph> = None;
    let mut pairs: HashSet<(usize, usize)> = HashSet::new();

    for (idx, raw) in text.split('\n').enumerate() {
        let lineno = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let tag = parts.next().unwrap_or_default();
        if tag == "c" {
            continue;
        }
        if tag == "p" {
            if graph.is_some() {
                return Err(syntax(lineno, "duplicate header"));
            }
            let fields: Vec<&str> = parts.collect();
            if fields.first() != Some(&"mg") {
                return Err(syntax(lineno, "header must read `p mg <vertices> <m> <n>`"));
            }
            let [nv, m, n] = numbers::<3>(lineno, &fields[1..])?;
            graph = Some(MixedGraph::new(nv, m, n));
            continue;
        }
        let g = graph
            .as_mut()
            .ok_or_else(|| syntax(lineno, "expected header `p mg ...` before content"))?;
        let nv = g.num_vertices();
        let check_vertex = |v: usize| {
            if v >= nv {
                Err(err(
                    lineno,
                    ParseErrorKind::OutOfRange(format!("vertex {v} (graph has {nv} vertices)")),
                ))
            } else {
                Ok(())
            }
        };
        match tag {
            "v" => {
                let rest = line.trim_start()[1..].trim_start();
                let (index, name) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| syntax(lineno, "label line needs an index and a name"))?;
                let [v] = numbers::<1>(lineno, &[index])?;
                check_vertex(v)?;
                let name = name.trim();
                if name.is_empty() {
                    return Err(syntax(lineno, "empty label"));
                }
                if g.label(v).is_some() {
                    return Err(syntax(lineno, format!("vertex {v} labelled twice")));
                }
                g.set_label(v, name);
            }
            "a" | "e" => {
                let fields: Vec<&str> = parts.collect();
                let [x, y, color] = numbers::<3>(lineno, &fields)?;
                check_vertex(x)?;
                check_vertex(y)?;
                let (limit, kind) = if tag == "a" { (g.m(), "arc") } else { (g.n(), "edge") };
                if color >= limit {
                    return Err(err(
                        lineno,
                        ParseErrorKind::OutOfRange(format!(
                            "{kind} color {color} (graph has {limit} {kind} colors)"
                        )),
                    ));
                }
                if x == y {
                    return Err(err(lineno, ParseErrorKind::Loop(x)));
                }
                if !pairs.insert((x.min(y), x.max(y))) {
                    return Err(err(lineno, ParseErrorKind::DuplicatePair(x.min(y), x.max(y))));
                }
                if tag == "a" {
                    g.add_arc(x, y, color);
                } else {
                    g.add_edge(x, y, color);
                }
            }
            other => return Err(syntax(lineno, format!("unknown line type `{other}`"))),
        }
    }

    let g = graph.ok_or_else(|| syntax(1, "missing header `p mg ...`"))?;
    let violations = validate_graph(&g);
    if violations.is_empty() {
        Ok(g)
    } else {
        Err(Error::InvalidGraph(violations))
    }
}

pub fn serialize_graph(g: &MixedGraph) -> String {
    let mut out = String::new();
    writeln!(out, "p mg {} {} {}", g.num_vertices(), g.m(), g.n()).unwrap();
    for (v, name) in g.labels() {
        writeln!(out, "v {v} {name}").unwrap();
    }
    for a in g.arcs() {
        writeln!(out, "a {} {} {}", a.tail, a.head, a.color).unwrap();
    }
    for e in g.edges() {
        writeln!(out, "e {} {} {}", e.u, e.v, e.color).unwrap();
    }
    out
}
