use std::fmt::Write;

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;

pub const MAX_DOT: usize = 200;

/// Hasse diagram in Graphviz DOT, bottom to top, one rank per height, with
/// join-irreducible elements drawn as double circles.
pub fn to_dot(l: &FiniteLattice, title: &str) -> Result<String> {
    if l.len() > MAX_DOT {
        return Err(Error::SizeLimit {
            what: "diagram size",
            value: l.len(),
            limit: MAX_DOT,
        });
    }
    let heights = l.heights();
    let mut out = String::new();
    writeln!(out, "digraph {:?} {{", title).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=circle, fontsize=10];").unwrap();
    writeln!(out, "  edge [arrowhead=none];").unwrap();
    for x in l.elements() {
        let shape = if l.is_join_irreducible(x) {
            ", shape=doublecircle"
        } else {
            ""
        };
        writeln!(out, "  n{x} [label={:?}{shape}];", l.name(x)).unwrap();
    }
    let top = heights.iter().copied().max().unwrap_or(0);
    for h in 0..=top {
        let ids: Vec<String> = l
            .elements()
            .filter(|&x| heights[x] == h)
            .map(|x| format!("n{x}"))
            .collect();
        writeln!(out, "  {{ rank=same; {}; }}", ids.join("; ")).unwrap();
    }
    for (x, y) in l.cover_pairs() {
        writeln!(out, "  n{x} -> n{y};").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}
