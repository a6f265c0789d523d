//! Depth-truncated boundary paths.
//!
//! A [`Fragment`] of depth `D` stands for every boundary path `x` with
//! `x(0, D ∧ d(x)) = body`. Directions dead at `s(body)` are finished, so
//! `d(x)_i = d(body)_i` there; in the remaining (frontier) directions the
//! body has degree exactly `D_i` and `d(x)_i > D_i`.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::degree::{Degree, ExtCoord, ExtDegree};
use crate::error::{KgError, Result};
use crate::kgraph::{KGraph, Path, VertexId};

/// Upper bound on the number of morphisms a single enumeration may produce.
/// Overridden by the `KG_MAX_MORPHISMS` environment variable.
pub fn max_morphisms() -> usize {
    std::env::var("KG_MAX_MORPHISMS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(100_000)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fragment {
    body: Path,
    frontier: Vec<bool>,
    depth: Degree,
}

impl Fragment {
    pub(crate) fn new(g: &KGraph, body: Path, depth: Degree) -> Fragment {
        let frontier = g.alive_colors(body.source());
        debug_assert!(body.degree().le(&depth));
        Fragment {
            body,
            frontier,
            depth,
        }
    }

    pub fn body(&self) -> &Path {
        &self.body
    }

    pub fn range(&self) -> VertexId {
        self.body.range()
    }

    /// Directions still alive at `s(body)`.
    pub fn frontier(&self) -> &[bool] {
        &self.frontier
    }

    pub fn depth(&self) -> &Degree {
        &self.depth
    }

    /// `true` when the fragment is a whole (finite) boundary path.
    pub fn is_complete(&self) -> bool {
        self.frontier.iter().all(|alive| !alive)
    }

    /// What is known about `d(x)`: exact on finished directions, unbounded
    /// (not yet determined) on the frontier.
    pub fn known_degree(&self) -> ExtDegree {
        ExtDegree::new(
            self.frontier
                .iter()
                .enumerate()
                .map(|(i, &alive)| {
                    if alive {
                        ExtCoord::Unbounded
                    } else {
                        ExtCoord::Finite(self.body.degree().get(i))
                    }
                })
                .collect(),
        )
    }

    /// `m ∧ d(x)`, provided the fragment determines it.
    pub fn determined_meet(&self, m: &Degree) -> Result<Degree> {
        let short = self
            .frontier
            .iter()
            .enumerate()
            .any(|(i, &alive)| alive && m.get(i) > self.depth.get(i));
        if short {
            return Err(KgError::InsufficientDepth { needed: m.clone() });
        }
        Ok(m.meet(self.body.degree()))
    }

    /// `x(p)` for `p <= d(body)`.
    pub fn vertex_at(&self, g: &KGraph, p: &Degree) -> Result<VertexId> {
        g.vertex_at(&self.body, p)
    }
}

/// Every vertex `body(p)` for `0 <= p <= d(body)`.
pub fn vertices_visited(g: &KGraph, body: &Path) -> BTreeSet<VertexId> {
    body.degree()
        .box_below()
        .iter()
        .map(|p| g.vertex_at(body, p).expect("p lies in the box"))
        .collect()
}

fn collect_capped(g: &KGraph, v: VertexId, bound: &Degree) -> Result<Vec<Path>> {
    let cap = max_morphisms();
    let mut out = Vec::new();
    let flow = g.visit_paths(v, bound, true, &mut |p| {
        out.push(p);
        if out.len() > cap {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    if flow.is_break() {
        return Err(KgError::TooLarge(format!(
            "more than {cap} paths in {}Λ^<={bound}",
            g.vertex_name(v)
        )));
    }
    Ok(out)
}

/// Fragments of depth `b·𝟙` from `v`, one per element of `vΛ^{<= b·𝟙}`.
pub fn fragments_from(g: &KGraph, v: VertexId, b: u32) -> Result<Vec<Fragment>> {
    fragments_to(g, v, &Degree::splat(g.rank(), b))
}

/// Fragments of depth `depth` from `v`.
pub fn fragments_to(g: &KGraph, v: VertexId, depth: &Degree) -> Result<Vec<Fragment>> {
    g.require_locally_convex()?;
    Ok(collect_capped(g, v, depth)?
        .into_iter()
        .map(|p| Fragment::new(g, p, depth.clone()))
        .collect())
}

/// All fragments of depth `b·𝟙` that truncate to `f`.
pub fn extend(g: &KGraph, f: &Fragment, b: u32) -> Result<Vec<Fragment>> {
    extend_to(g, f, &Degree::splat(g.rank(), b))
}

pub fn extend_to(g: &KGraph, f: &Fragment, depth: &Degree) -> Result<Vec<Fragment>> {
    let gap = depth.checked_sub(f.body.degree())?;
    if !f.depth.le(depth) {
        return Err(KgError::DegreeOutOfRange {
            requested: depth.clone(),
            available: f.depth.clone(),
        });
    }
    collect_capped(g, f.body.source(), &gap)?
        .into_iter()
        .map(|tau| Ok(Fragment::new(g, g.compose(&f.body, &tau)?, depth.clone())))
        .collect()
}

/// The depth-`depth` truncation of `f` (`depth <= f.depth()`).
pub fn truncate(g: &KGraph, f: &Fragment, depth: &Degree) -> Result<Fragment> {
    if !depth.le(&f.depth) {
        return Err(KgError::DegreeOutOfRange {
            requested: depth.clone(),
            available: f.depth.clone(),
        });
    }
    let cut = depth.meet(f.body.degree());
    let body = g.factorize(&f.body, &cut)?.0;
    Ok(Fragment::new(g, body, depth.clone()))
}

/// `σ^n`
pub fn shift(g: &KGraph, f: &Fragment, n: &Degree) -> Result<Fragment> {
    let (_, tail) = g.factorize(&f.body, n)?;
    Ok(Fragment {
        body: tail,
        frontier: f.frontier.clone(),
        depth: f.depth.sub(n),
    })
}

/// `λx`
pub fn prepend(g: &KGraph, lambda: &Path, f: &Fragment) -> Result<Fragment> {
    let body = g.compose(lambda, &f.body)?;
    Ok(Fragment {
        body,
        frontier: f.frontier.clone(),
        depth: lambda.degree() + &f.depth,
    })
}

/// Equality of the represented boundary paths on the box `[0, depth]`.
pub fn fragment_eq(g: &KGraph, f: &Fragment, h: &Fragment, depth: &Degree) -> Result<bool> {
    let cf = f.determined_meet(depth)?;
    let ch = h.determined_meet(depth)?;
    if f.range() != h.range() {
        return Ok(false);
    }
    if cf != ch {
        return Ok(false);
    }
    Ok(g.factorize(&f.body, &cf)?.0 == g.factorize(&h.body, &ch)?.0)
}

/// A deterministic fragment of depth `b·𝟙` from `v`: in each colour, in
/// ascending order, follow the least edge id until `b` steps or death.
pub fn greedy_fragment(g: &KGraph, v: VertexId, b: u32) -> Fragment {
    let mut edges = Vec::new();
    let mut cur = v;
    for c in 0..g.rank() {
        for _ in 0..b {
            match g.edges_at(cur, c).first() {
                Some(&e) => {
                    edges.push(e);
                    cur = g.source_of(e);
                }
                None => break,
            }
        }
    }
    let body = g.path(v, &edges).expect("greedy walk is composable");
    Fragment::new(g, body, Degree::splat(g.rank(), b))
}
