//! The `.kg` text format, DOT export and JSON reports.

mod dot;
mod parse;
mod print;
mod report;

pub use dot::export_dot;
pub use parse::{parse, ParseError, ParseErrorKind};
pub use print::print;
pub use report::{graph_hash, Parameters, Report, VerdictRecord};

use crate::kgraph::{EdgeSpec, SkeletonSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDecl {
    pub name: String,
    pub source: String,
    pub range: String,
    /// 1-based colour.
    pub color: usize,
}

/// `f.g2 = g.f2`, by edge name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareDecl {
    pub f: String,
    pub g2: String,
    pub g: String,
    pub f2: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetDecl {
    pub name: String,
    pub members: Vec<String>,
}

/// A parsed `.kg` document. Every referenced id is declared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KgDocument {
    pub rank: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDecl>,
    pub squares: Vec<SquareDecl>,
    pub sets: Vec<SetDecl>,
}

impl KgDocument {
    pub fn from_spec(spec: &SkeletonSpec) -> Self {
        let vname = |v: usize| spec.vertices[v].clone();
        let ename = |e: usize| spec.edges[e].name.clone();
        KgDocument {
            rank: spec.rank,
            vertices: spec.vertices.clone(),
            edges: spec
                .edges
                .iter()
                .map(|e| EdgeDecl {
                    name: e.name.clone(),
                    source: vname(e.source),
                    range: vname(e.range),
                    color: e.color + 1,
                })
                .collect(),
            squares: spec
                .squares
                .iter()
                .map(|s| SquareDecl {
                    f: ename(s.f),
                    g2: ename(s.g2),
                    g: ename(s.g),
                    f2: ename(s.f2),
                })
                .collect(),
            sets: Vec::new(),
        }
    }

    pub fn to_spec(&self) -> SkeletonSpec {
        let mut spec = SkeletonSpec::new(self.rank);
        spec.vertices = self.vertices.clone();
        let vid = |n: &str| spec.vertex_id(n).expect("parser checked vertex ids");
        let edges: Vec<EdgeSpec> = self
            .edges
            .iter()
            .map(|e| EdgeSpec {
                name: e.name.clone(),
                color: e.color - 1,
                source: vid(&e.source),
                range: vid(&e.range),
            })
            .collect();
        spec.edges = edges;
        for s in &self.squares {
            let eid = |n: &str| spec.edge_id(n).expect("parser checked edge ids");
            let (f, g2, g, f2) = (eid(&s.f), eid(&s.g2), eid(&s.g), eid(&s.f2));
            spec.add_square(f, g2, g, f2);
        }
        spec
    }

    /// Members of a named set, as vertex ids of [`KgDocument::to_spec`].
    pub fn set(&self, name: &str) -> Option<Vec<usize>> {
        let decl = self.sets.iter().find(|s| s.name == name)?;
        Some(
            decl.members
                .iter()
                .map(|m| {
                    self.vertices
                        .iter()
                        .position(|v| v == m)
                        .expect("parser checked set members")
                })
                .collect(),
        )
    }
}
