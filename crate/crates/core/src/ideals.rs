//! Hereditary and saturated vertex sets, their lattice, quotient graphs and
//! the graph-side gauge-invariance criterion.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::analysis::{self, LpCandidate, Verdict};
use crate::degree::Degree;
use crate::error::{KgError, Result};
use crate::kgraph::{EdgeId, KGraph, SkeletonSpec, VertexId};

pub type VertexSet = BTreeSet<VertexId>;

/// Largest lattice `enumerate_sat_hered` will build.
const MAX_LATTICE: usize = 1 << 16;

/// An edge with range in `h` and source outside it.
pub fn hereditary_violation(g: &KGraph, h: &VertexSet) -> Option<EdgeId> {
    (0..g.edge_count()).find(|&e| h.contains(&g.range_of(e)) && !h.contains(&g.source_of(e)))
}

pub fn is_hereditary(g: &KGraph, h: &VertexSet) -> bool {
    hereditary_violation(g, h).is_none()
}

/// A vertex outside `h` and a colour in which every edge at it comes from `h`.
pub fn saturation_violation(g: &KGraph, h: &VertexSet) -> Option<(VertexId, usize)> {
    for v in g.vertices().filter(|v| !h.contains(v)) {
        for c in 0..g.rank() {
            let edges = g.edges_at(v, c);
            if !edges.is_empty() && edges.iter().all(|&e| h.contains(&g.source_of(e))) {
                return Some((v, c));
            }
        }
    }
    None
}

pub fn is_saturated(g: &KGraph, h: &VertexSet) -> bool {
    saturation_violation(g, h).is_none()
}

/// The smallest saturated hereditary set containing `s`.
pub fn saturate_hereditary(g: &KGraph, s: &VertexSet) -> VertexSet {
    let mut h = s.clone();
    loop {
        let mut grown: VertexSet = h.clone();
        for &v in &h {
            let reach = g.reachable_set(v);
            grown.extend(g.vertices().filter(|&w| reach[w]));
        }
        while let Some((v, _)) = saturation_violation(g, &grown) {
            grown.insert(v);
        }
        if grown == h {
            return h;
        }
        h = grown;
    }
}

fn lattice_order(sets: &mut [VertexSet]) {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
}

/// Every saturated hereditary set, generated by closing up one vertex at a
/// time from the closure of the empty set.
pub fn enumerate_sat_hered(g: &KGraph) -> Result<Vec<VertexSet>> {
    let bottom = saturate_hereditary(g, &VertexSet::new());
    let mut seen: HashSet<VertexSet> = HashSet::from([bottom.clone()]);
    let mut queue = VecDeque::from([bottom]);
    while let Some(h) = queue.pop_front() {
        for v in g.vertices().filter(|v| !h.contains(v)) {
            let mut bigger = h.clone();
            bigger.insert(v);
            let closed = saturate_hereditary(g, &bigger);
            if seen.insert(closed.clone()) {
                if seen.len() > MAX_LATTICE {
                    return Err(KgError::TooLarge(format!(
                        "more than {MAX_LATTICE} saturated hereditary sets"
                    )));
                }
                queue.push_back(closed);
            }
        }
    }
    let mut out: Vec<VertexSet> = seen.into_iter().collect();
    lattice_order(&mut out);
    Ok(out)
}

/// Filters the whole power set; refuses graphs with more than 20 vertices.
pub fn brute_force_sat_hered(g: &KGraph) -> Result<Vec<VertexSet>> {
    let n = g.vertex_count();
    if n > 20 {
        return Err(KgError::TooLarge(format!(
            "{n} vertices for a power-set scan"
        )));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let h: VertexSet = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        if is_hereditary(g, &h) && is_saturated(g, &h) {
            out.push(h);
        }
    }
    lattice_order(&mut out);
    Ok(out)
}

/// `Λ ∖ ΛH`: morphisms whose source avoids `h`.
pub fn quotient(g: &KGraph, h: &VertexSet) -> Result<KGraph> {
    if !is_hereditary(g, h) || !is_saturated(g, h) {
        return Err(KgError::NotSaturatedHereditary);
    }
    let mut spec = SkeletonSpec::new(g.rank());
    let mut vmap = vec![None; g.vertex_count()];
    for v in g.vertices().filter(|v| !h.contains(v)) {
        vmap[v] = Some(spec.add_vertex(g.vertex_name(v)));
    }
    let mut emap = vec![None; g.edge_count()];
    for e in 0..g.edge_count() {
        if let (Some(s), Some(r)) = (vmap[g.source_of(e)], vmap[g.range_of(e)]) {
            emap[e] = Some(spec.add_edge(g.edge_name(e), g.color(e), s, r));
        }
    }
    for sq in &g.spec().squares {
        if let (Some(f), Some(g2), Some(gg), Some(f2)) =
            (emap[sq.f], emap[sq.g2], emap[sq.g], emap[sq.f2])
        {
            spec.add_square(f, g2, gg, f2);
        }
    }
    let q = KGraph::validate(spec)
        .map_err(|e| KgError::Invariant(format!("quotient failed validation: {e}")))?;
    if g.is_locally_convex() && !q.is_locally_convex() {
        return Err(KgError::Invariant("quotient lost local convexity".into()));
    }
    Ok(q)
}

#[derive(Clone, Debug)]
pub struct GaugeEntry {
    pub set: VertexSet,
    pub quotient: KGraph,
    /// Surviving local periodicity candidates in the quotient (its vertex ids).
    pub candidates: Vec<LpCandidate>,
}

#[derive(Clone, Debug)]
pub struct GaugeReport {
    /// Cofinality of the whole graph, reported alongside.
    pub cofinality: Verdict,
    pub entries: Vec<GaugeEntry>,
    pub depth: u32,
}

impl GaugeReport {
    /// No quotient has a surviving candidate (qualified by the depth).
    pub fn all_gauge_invariant(&self) -> bool {
        self.entries.iter().all(|e| e.candidates.is_empty())
    }

    /// The first set whose quotient keeps a candidate.
    pub fn first_failure(&self) -> Option<&GaugeEntry> {
        self.entries.iter().find(|e| !e.candidates.is_empty())
    }
}

/// Runs the local periodicity search on every proper quotient.
pub fn gauge_invariance_criterion(g: &KGraph, bound: &Degree, depth: u32) -> Result<GaugeReport> {
    g.require_locally_convex()?;
    let cofinality = analysis::is_cofinal(g)?;
    let mut entries = Vec::new();
    for h in enumerate_sat_hered(g)? {
        if h.len() == g.vertex_count() {
            continue;
        }
        let q = quotient(g, &h)?;
        let candidates = analysis::find_lp(&q, bound, depth)?.candidates;
        entries.push(GaugeEntry {
            set: h,
            quotient: q,
            candidates,
        });
    }
    Ok(GaugeReport {
        cofinality,
        entries,
        depth,
    })
}

pub fn set_names(g: &KGraph, h: &VertexSet) -> Vec<String> {
    h.iter().map(|&v| g.vertex_name(v).to_string()).collect()
}
