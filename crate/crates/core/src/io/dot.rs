use std::fmt::Write;

use crate::kgraph::KGraph;

const STYLES: [&str; 4] = ["solid", "dashed", "dotted", "bold"];

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering of the skeleton. Arrows point from source to range;
/// the colour of an edge selects its line style.
pub fn export_dot(g: &KGraph, title: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(title)).unwrap();
    for v in g.vertices() {
        writeln!(out, "  {};", quote(g.vertex_name(v))).unwrap();
    }
    for e in 0..g.edge_count() {
        writeln!(
            out,
            "  {} -> {} [label={}, style={}];",
            quote(g.vertex_name(g.source_of(e))),
            quote(g.vertex_name(g.range_of(e))),
            quote(g.edge_name(e)),
            STYLES[g.color(e) % STYLES.len()]
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
