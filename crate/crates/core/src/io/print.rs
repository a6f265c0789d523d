use std::fmt::Write;

use super::KgDocument;

/// Renders a document in normal form; `parse(print(doc)) == doc`.
pub fn print(doc: &KgDocument) -> String {
    let mut out = String::new();
    writeln!(out, "kgraph rank={}", doc.rank).unwrap();
    for v in &doc.vertices {
        writeln!(out, "vertex {v}").unwrap();
    }
    for e in &doc.edges {
        writeln!(
            out,
            "edge {} : {} -> {} @ {}",
            e.name, e.source, e.range, e.color
        )
        .unwrap();
    }
    for s in &doc.squares {
        writeln!(out, "square {}.{} = {}.{}", s.f, s.g2, s.g, s.f2).unwrap();
    }
    for s in &doc.sets {
        if s.members.is_empty() {
            writeln!(out, "set {} =", s.name).unwrap();
        } else {
            writeln!(out, "set {} = {}", s.name, s.members.join(" ")).unwrap();
        }
    }
    out
}
