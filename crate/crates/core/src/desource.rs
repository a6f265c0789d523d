//! Source removal: canonical forms for vertices and morphisms of the
//! desourced graph, its structure maps, and bounded materialisation.
//!
//! A vertex class `[x; m]` is stored as `(x(m ∧ d(x)), m - m ∧ d(x))` and a
//! morphism class `[x; (m, n)]` as `(x(m ∧ d(x), n ∧ d(x)), m - m ∧ d(x),
//! n - n ∧ d(x))`.

use std::collections::HashMap;

use crate::boundary::{self, Fragment};
use crate::degree::Degree;
use crate::error::{KgError, Result};
use crate::kgraph::{EdgeId, KGraph, Path, SkeletonSpec, VertexId};

/// Depth of the greedy tail used when realising canonical forms.
const REALIZE_DEPTH: u32 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VTilde {
    pub base: VertexId,
    pub overshoot: Degree,
}

impl VTilde {
    pub fn new(base: VertexId, overshoot: Degree) -> Self {
        VTilde { base, overshoot }
    }

    pub fn check(&self, g: &KGraph) -> Result<()> {
        for i in 0..g.rank() {
            if self.overshoot.get(i) > 0 && !g.is_dead(self.base, i) {
                return Err(KgError::Invariant(format!(
                    "vertex ({}, {}) overshoots in live colour {}",
                    g.vertex_name(self.base),
                    self.overshoot,
                    i + 1
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MTilde {
    pub core: Path,
    pub a: Degree,
    pub b: Degree,
}

impl MTilde {
    pub fn degree(&self) -> Degree {
        (self.core.degree() + &self.b).sub(&self.a)
    }

    pub fn range(&self) -> VTilde {
        VTilde::new(self.core.range(), self.a.clone())
    }

    pub fn source(&self) -> VTilde {
        VTilde::new(self.core.source(), self.b.clone())
    }

    pub fn check(&self, g: &KGraph) -> Result<()> {
        let bad = |why: &str| {
            Err(KgError::Invariant(format!(
                "morphism {}: {why}",
                self.display(g)
            )))
        };
        if !self.a.le(&self.b) {
            return bad("range overshoot exceeds source overshoot");
        }
        for i in 0..g.rank() {
            if self.a.get(i) > 0
                && (self.core.degree().get(i) > 0
                    || !g.is_dead(self.core.range(), i)
                    || !g.is_dead(self.core.source(), i))
            {
                return bad("range overshoot in a live direction");
            }
            if self.b.get(i) > 0 && !g.is_dead(self.core.source(), i) {
                return bad("source overshoot in a live direction");
            }
        }
        Ok(())
    }

    pub fn display(&self, g: &KGraph) -> String {
        format!("[{}; {} -> {}]", g.display_path(&self.core), self.a, self.b)
    }
}

/// Evaluates `x(m ∧ d(x)) = y(n ∧ d(y))` and `m - m ∧ d(x) = n - n ∧ d(y)`.
pub fn equiv_v(g: &KGraph, x: &Fragment, m: &Degree, y: &Fragment, n: &Degree) -> Result<bool> {
    let mx = x.determined_meet(m)?;
    let ny = y.determined_meet(n)?;
    Ok(x.vertex_at(g, &mx)? == y.vertex_at(g, &ny)? && m.sub(&mx) == n.sub(&ny))
}

/// Evaluates the three conditions identifying `[x; (m, n)]` with `[y; (p, q)]`.
pub fn equiv_p(
    g: &KGraph,
    x: &Fragment,
    (m, n): (&Degree, &Degree),
    y: &Fragment,
    (p, q): (&Degree, &Degree),
) -> Result<bool> {
    for (lo, hi) in [(m, n), (p, q)] {
        if !lo.le(hi) {
            return Err(KgError::DegreeOutOfRange {
                requested: lo.clone(),
                available: hi.clone(),
            });
        }
    }
    let (mx, nx) = (x.determined_meet(m)?, x.determined_meet(n)?);
    let (py, qy) = (y.determined_meet(p)?, y.determined_meet(q)?);
    let same_segment = g.segment(x.body(), &mx, &nx)? == g.segment(y.body(), &py, &qy)?;
    let same_overshoot = m.sub(&mx) == p.sub(&py);
    let same_length = n.sub(m) == q.sub(p);
    Ok(same_segment && same_overshoot && same_length)
}

pub fn canon_vertex(g: &KGraph, x: &Fragment, m: &Degree) -> Result<VTilde> {
    let mx = x.determined_meet(m)?;
    Ok(VTilde::new(x.vertex_at(g, &mx)?, m.sub(&mx)))
}

pub fn canon_morphism(g: &KGraph, x: &Fragment, m: &Degree, n: &Degree) -> Result<MTilde> {
    if !m.le(n) {
        return Err(KgError::DegreeOutOfRange {
            requested: m.clone(),
            available: n.clone(),
        });
    }
    let mx = x.determined_meet(m)?;
    let nx = x.determined_meet(n)?;
    Ok(MTilde {
        core: g.segment(x.body(), &mx, &nx)?,
        a: m.sub(&mx),
        b: n.sub(&nx),
    })
}

/// `ι(λ)`
pub fn iota(lambda: &Path) -> MTilde {
    let zero = Degree::zero(lambda.degree().rank());
    MTilde {
        core: lambda.clone(),
        a: zero.clone(),
        b: zero,
    }
}

/// `π`
pub fn project(t: &MTilde) -> Path {
    t.core.clone()
}

/// The identity morphism at a vertex class.
pub fn identity(g: &KGraph, v: &VTilde) -> MTilde {
    MTilde {
        core: g.vertex_path(v.base),
        a: v.overshoot.clone(),
        b: v.overshoot.clone(),
    }
}

/// A representative `(x, m, n)` of `t`: `x` is `μ` followed by the greedy
/// fragment of depth `depth` from `s(μ)`.
pub fn realize(g: &KGraph, t: &MTilde, depth: u32) -> Result<(Fragment, Degree, Degree)> {
    let tail = boundary::greedy_fragment(g, t.core.source(), depth);
    let x = boundary::prepend(g, &t.core, &tail)?;
    let n = t.core.degree() + &t.b;
    Ok((x, t.a.clone(), n))
}

/// `[x; (m, n)] ∘ [y; (p, q)] = [x(0, n ∧ d(x)) σ^{p ∧ d(y)}(y); (m, n + q - p)]`,
/// evaluated on realised representatives.
pub fn compose_tilde(g: &KGraph, s: &MTilde, t: &MTilde) -> Result<MTilde> {
    if s.source() != t.range() {
        return Err(KgError::NotComposable);
    }
    let (x, m, n) = realize(g, s, REALIZE_DEPTH)?;
    let (y, p, q) = realize(g, t, REALIZE_DEPTH)?;
    let nx = x.determined_meet(&n)?;
    let py = y.determined_meet(&p)?;
    let head = g.factorize(x.body(), &nx)?.0;
    let z = boundary::prepend(g, &head, &boundary::shift(g, &y, &py)?)?;
    let end = (&n + &q).checked_sub(&p)?;
    canon_morphism(g, &z, &m, &end)
}

/// `(t(0, m), t(m, d(t)))` in the desourced graph.
pub fn factorize_tilde(g: &KGraph, t: &MTilde, m: &Degree) -> Result<(MTilde, MTilde)> {
    let total = t.degree();
    if !m.le(&total) {
        return Err(KgError::DegreeOutOfRange {
            requested: m.clone(),
            available: total,
        });
    }
    let (x, lo, hi) = realize(g, t, REALIZE_DEPTH)?;
    let mid = &lo + m;
    Ok((
        canon_morphism(g, &x, &lo, &mid)?,
        canon_morphism(g, &x, &mid, &hi)?,
    ))
}

/// The morphism `y(0, depth)` of the lifted path `y = [x; (n, ∞)]`.
pub fn lift_fragment(g: &KGraph, x: &Fragment, n: &Degree, depth: &Degree) -> Result<MTilde> {
    canon_morphism(g, x, n, &(n + depth))
}

/// Splits the prefix `y(0, d(y))` of an infinite path in the desourced graph
/// into the unique `p_y` with `p_y ∧ d(π(y)) = 0` and a fragment of `π(y)`.
pub fn project_infinite(g: &KGraph, y: &MTilde) -> Result<(Degree, Fragment)> {
    y.check(g)?;
    let depth = y.core.degree() + &y.b;
    Ok((y.a.clone(), Fragment::new(g, y.core.clone(), depth)))
}

/// A finite box of the desourced graph: every vertex class with overshoot at
/// most `p_max`, and every edge between them.
#[derive(Clone, Debug)]
pub struct Region {
    pub p_max: Degree,
    pub vertices: Vec<VTilde>,
    pub edges: Vec<MTilde>,
    pub graph: KGraph,
    vertex_index: HashMap<VTilde, VertexId>,
    edge_index: HashMap<MTilde, EdgeId>,
}

fn overshoot_suffix(p: &Degree) -> String {
    if p.is_zero() {
        String::new()
    } else {
        let coords: Vec<String> = p.coords().iter().map(|c| c.to_string()).collect();
        format!("+{}", coords.join("_"))
    }
}

pub fn materialize(g: &KGraph, p_max: &Degree) -> Result<Region> {
    g.require_locally_convex()?;
    if p_max.rank() != g.rank() {
        return Err(KgError::RankMismatch {
            expected: g.rank(),
            found: p_max.rank(),
        });
    }
    let mut vertices = Vec::new();
    for v in g.vertices() {
        for p in p_max.box_below() {
            let vt = VTilde::new(v, p);
            if vt.check(g).is_ok() {
                vertices.push(vt);
            }
        }
    }
    let vertex_index: HashMap<VTilde, VertexId> = vertices
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();

    let mut edges = Vec::new();
    for vt in &vertices {
        for c in 0..g.rank() {
            for &e in g.edges_at(vt.base, c) {
                edges.push(MTilde {
                    core: g.edge_path(e),
                    a: vt.overshoot.clone(),
                    b: vt.overshoot.clone(),
                });
            }
            if g.is_dead(vt.base, c) && vt.overshoot.get(c) < p_max.get(c) {
                edges.push(MTilde {
                    core: g.vertex_path(vt.base),
                    a: vt.overshoot.clone(),
                    b: vt.overshoot.with(c, vt.overshoot.get(c) + 1),
                });
            }
        }
    }
    let edge_index: HashMap<MTilde, EdgeId> = edges
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();

    let mut spec = SkeletonSpec::new(g.rank());
    for vt in &vertices {
        spec.add_vertex(format!(
            "{}{}",
            g.vertex_name(vt.base),
            overshoot_suffix(&vt.overshoot)
        ));
    }
    for t in &edges {
        let color = (0..g.rank())
            .find(|&i| t.degree().get(i) == 1)
            .expect("edges have unit degree");
        let name = match t.core.edges() {
            [e] => format!("{}{}", g.edge_name(*e), overshoot_suffix(&t.a)),
            _ => format!(
                "{}'{}{}",
                g.vertex_name(t.core.range()),
                color + 1,
                overshoot_suffix(&t.a)
            ),
        };
        spec.add_edge(
            name,
            color,
            vertex_index[&t.source()],
            vertex_index[&t.range()],
        );
    }

    for (f, tf) in edges.iter().enumerate() {
        let cf = spec.edges[f].color;
        let src = vertex_index[&tf.source()];
        for (g2, tg2) in edges.iter().enumerate() {
            let cg = spec.edges[g2].color;
            if cg <= cf || spec.edges[g2].range != src {
                continue;
            }
            let composite = compose_tilde(g, tf, tg2)?;
            let (hg, hf2) = factorize_tilde(g, &composite, &Degree::unit(g.rank(), cg))?;
            let lookup = |t: &MTilde| {
                edge_index.get(t).copied().ok_or_else(|| {
                    KgError::Invariant(format!("factor {} is not a region edge", t.display(g)))
                })
            };
            spec.add_square(f, g2, lookup(&hg)?, lookup(&hf2)?);
        }
    }

    let graph = KGraph::validate(spec)
        .map_err(|e| KgError::Invariant(format!("materialised region is not a k-graph: {e}")))?;
    let region = Region {
        p_max: p_max.clone(),
        vertices,
        edges,
        graph,
        vertex_index,
        edge_index,
    };
    region.check_interior()?;
    Ok(region)
}

impl Region {
    pub fn vertex(&self, v: &VTilde) -> Option<VertexId> {
        self.vertex_index.get(v).copied()
    }

    pub fn edge(&self, t: &MTilde) -> Option<EdgeId> {
        self.edge_index.get(t).copied()
    }

    /// Overshoot strictly below `p_max` in every coordinate.
    pub fn is_interior(&self, v: VertexId) -> bool {
        let o = &self.vertices[v].overshoot;
        (0..o.rank()).all(|i| o.get(i) < self.p_max.get(i))
    }

    /// Vertices from which every path of degree at most `slack` stays
    /// inside the interior.
    pub fn has_room(&self, v: VertexId, slack: &Degree) -> bool {
        let o = &self.vertices[v].overshoot;
        (0..o.rank()).all(|i| o.get(i) + slack.get(i) < self.p_max.get(i))
    }

    fn check_interior(&self) -> Result<()> {
        for v in self.graph.vertices() {
            if !self.is_interior(v) {
                continue;
            }
            for c in 0..self.graph.rank() {
                if self.graph.is_dead(v, c) {
                    return Err(KgError::Invariant(format!(
                        "interior vertex {} receives no colour-{} edge",
                        self.graph.vertex_name(v),
                        c + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// The morphism class of a path in the region graph.
    pub fn to_mtilde(&self, g: &KGraph, p: &Path) -> Result<MTilde> {
        let mut acc = identity(g, &self.vertices[p.range()]);
        for &e in p.edges() {
            acc = compose_tilde(g, &acc, &self.edges[e])?;
        }
        Ok(acc)
    }

    /// The region path representing `t`, if it lies in the region.
    pub fn from_mtilde(&self, g: &KGraph, t: &MTilde) -> Result<Option<Path>> {
        let Some(range) = self.vertex(&t.range()) else {
            return Ok(None);
        };
        if self.vertex(&t.source()).is_none() {
            return Ok(None);
        }
        let mut rest = t.clone();
        let mut ids = Vec::new();
        for c in t.degree().sorted_word() {
            let (head, tail) = factorize_tilde(g, &rest, &Degree::unit(g.rank(), c))?;
            match self.edge(&head) {
                Some(e) => ids.push(e),
                None => return Ok(None),
            }
            rest = tail;
        }
        Ok(Some(self.graph.path(range, &ids)?))
    }
}
