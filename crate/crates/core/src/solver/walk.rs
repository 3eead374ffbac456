use crate::colorset::ColorSet;
use crate::error::{Error, Result};
use crate::graph::{LinkPattern, MixedGraph, NeighborTable};

/// `C_1 = start`, and `C_{i+1}` is the image of `C_i` across step `i`.
/// Returns `pattern.len() + 1` sets.
pub fn transfer_sequence(target: &MixedGraph, pattern: &LinkPattern, start: &ColorSet) -> Result<Vec<ColorSet>> {
    pattern.check_signature(target.m(), target.n())?;
    if start.universe() != target.num_vertices() {
        return Err(Error::InvalidParameter(format!(
            "start set is over {} colors, target has {}",
            start.universe(),
            target.num_vertices()
        )));
    }
    let table = NeighborTable::new(target);
    Ok(transfer_with(&table, pattern, start))
}

pub(crate) fn transfer_with(table: &NeighborTable, pattern: &LinkPattern, start: &ColorSet) -> Vec<ColorSet> {
    let mut seq = Vec::with_capacity(pattern.len() + 1);
    seq.push(start.clone());
    for &step in pattern.steps() {
        let next = table.image(seq.last().unwrap(), step);
        seq.push(next);
    }
    seq
}

/// Whether some walk shaped like `pattern` leads from `from` to `to`.
pub fn exists_walk(target: &MixedGraph, pattern: &LinkPattern, from: usize, to: usize) -> Result<bool> {
    for v in [from, to] {
        if v >= target.num_vertices() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                num_vertices: target.num_vertices(),
            });
        }
    }
    let start = ColorSet::singleton(target.num_vertices(), from);
    let seq = transfer_sequence(target, pattern, &start)?;
    Ok(seq.last().unwrap().contains(to))
}
