//! Graphviz output. Edges are Hasse edges `p → q` for `p < q`.

use std::fmt::Write;

use crate::finposet::{FinPoset, SubsetMask, Topology};
use crate::refinement::Filtration;

const PALETTE: [&str; 8] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a6a62c", "#a65628", "#f781bf",
];

fn color(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn edges(x: &FinPoset, out: &mut String) {
    for (p, q) in x.hasse_edges() {
        let _ = writeln!(out, "  {} -> {};", quote(x.name(p)), quote(x.name(q)));
    }
}

/// One node per point, coloured by Cantor-Bendixson rank in `t`.
pub fn poset_dot(x: &FinPoset, t: Topology) -> String {
    let prof = x.cb_rank_and_perfect(x.full(), t);
    let mut out = String::from("digraph poset {\n  node [style=filled, fontcolor=white];\n");
    for p in 0..x.len() {
        let (label, fill) = match prof.ranks.get(&p).copied().flatten() {
            Some(r) => (format!("{} (rank {r})", x.name(p)), color(r)),
            None => (format!("{} (perfect)", x.name(p)), "#555555"),
        };
        let _ = writeln!(
            out,
            "  {} [label={}, fillcolor=\"{fill}\"];",
            quote(x.name(p)),
            quote(&label)
        );
    }
    edges(x, &mut out);
    out.push_str("}\n");
    out
}

/// Points grouped into one cluster per stage (the points first covered at
/// that stage), coloured by stage. Members of `c` are drawn with a double
/// border.
pub fn filtration_dot(x: &FinPoset, c: SubsetMask, f: &Filtration) -> String {
    let mut out = String::from("digraph filtration {\n  node [style=filled];\n");
    let mut seen = SubsetMask::EMPTY;
    for (alpha, &stage) in f.stages.iter().enumerate() {
        let _ = writeln!(
            out,
            "  subgraph cluster_stage{alpha} {{\n    label=\"U_<={alpha}\";\n    color=\"{}\";",
            color(alpha)
        );
        for p in (stage - seen).iter() {
            let shape = if c.contains(p) { "doublecircle" } else { "circle" };
            let _ = writeln!(
                out,
                "    {} [shape={shape}, fillcolor=\"{}\"];",
                quote(x.name(p)),
                color(alpha)
            );
        }
        out.push_str("  }\n");
        seen = stage;
    }
    for p in (x.full() - seen).iter() {
        let _ = writeln!(out, "  {} [shape=circle, fillcolor=white];", quote(x.name(p)));
    }
    edges(x, &mut out);
    out.push_str("}\n");
    out
}
