//! Graphviz export. Vertices are emitted in index order so the output is
//! stable across runs.

use std::fmt::Write;

use tirs_core::{FiniteLattice, Frame, Graph};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn graph(g: &Graph, include_loops: bool) -> String {
    let mut out = String::from("digraph G {\n");
    for v in g.names() {
        let _ = writeln!(out, "  {};", quote(v));
    }
    for (a, b) in g.edges().pairs() {
        if a != b || include_loops {
            let _ = writeln!(out, "  {} -> {};", quote(g.name(a)), quote(g.name(b)));
        }
    }
    out.push_str("}\n");
    out
}

/// Two columns of nodes, `X₁` on the left and `X₂` on the right, with an
/// undirected edge per pair of `R`. The sorts are prefixed so a name used
/// on both sides still gives two nodes.
pub fn frame(f: &Frame) -> String {
    let mut out = String::from("graph F {\n  rankdir=LR;\n");
    for (side, names) in [("1", f.x1()), ("2", f.x2())] {
        let _ = writeln!(out, "  subgraph cluster_x{side} {{\n    label=\"X{side}\";");
        for n in names {
            let _ = writeln!(
                out,
                "    {} [label={}];",
                quote(&format!("{side}:{n}")),
                quote(n)
            );
        }
        out.push_str("  }\n");
    }
    for (x, y) in f.relation().pairs() {
        let _ = writeln!(
            out,
            "  {} -- {};",
            quote(&format!("1:{}", f.name1(x))),
            quote(&format!("2:{}", f.name2(y)))
        );
    }
    out.push_str("}\n");
    out
}

/// Covers only, drawn bottom to top.
pub fn hasse(l: &FiniteLattice) -> String {
    let mut out = String::from("digraph L {\n  rankdir=BT;\n");
    for v in l.names() {
        let _ = writeln!(out, "  {};", quote(v));
    }
    for (a, b) in l.cover_pairs_named() {
        let _ = writeln!(out, "  {} -> {};", quote(&a), quote(&b));
    }
    out.push_str("}\n");
    out
}
