//! Cofinality, local periodicity, simplicity verdicts and the checks that
//! compare a graph with its desourced version.
//!
//! Cofinality is decided exactly. Local periodicity is only ever evaluated
//! on fragments of a fixed depth, so a surviving candidate is qualified by
//! that depth. Violations are always backed by a finite witness.

use serde::Serialize;

use crate::boundary::{self, Fragment};
use crate::degree::Degree;
use crate::desource::{self, Region};
use crate::error::{KgError, Result};
use crate::kgraph::{KGraph, Path, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Holds,
    Violated,
    UnknownAtDepth,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpCandidate {
    pub vertex: VertexId,
    pub m: Degree,
    pub n: Degree,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// Blocks from `Λ^{<=𝟙}` whose concatenation, repeating from
    /// `cycle_start`, is a boundary path avoiding everything `vertex` reaches.
    Lasso {
        vertex: VertexId,
        blocks: Vec<Path>,
        cycle_start: usize,
    },
    Fragment {
        vertex: VertexId,
        fragment: Fragment,
        degrees: Vec<Degree>,
        reason: String,
    },
    Candidate(LpCandidate),
}

/// Serialisable summary of a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessRecord {
    pub vertex: String,
    pub degrees: Vec<Degree>,
    pub trace: Vec<String>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub name: String,
    pub status: Status,
    /// `false` when the status only speaks for the explored depth.
    pub exact: bool,
    pub depth: Option<u32>,
    pub witness: Option<Evidence>,
}

impl Verdict {
    fn new(name: &str, status: Status, exact: bool, depth: Option<u32>) -> Self {
        Verdict {
            name: name.to_string(),
            status,
            exact,
            depth,
            witness: None,
        }
    }

    fn with_witness(mut self, w: Evidence) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn witness_record(&self, g: &KGraph) -> Option<WitnessRecord> {
        let rec = match self.witness.as_ref()? {
            Evidence::Lasso {
                vertex,
                blocks,
                cycle_start,
            } => WitnessRecord {
                vertex: g.vertex_name(*vertex).to_string(),
                degrees: blocks.iter().map(|b| b.degree().clone()).collect(),
                trace: blocks.iter().map(|b| g.display_path(b)).collect(),
                note: format!(
                    "boundary path starting at {} repeats from block {cycle_start}",
                    g.vertex_name(blocks[0].range())
                ),
            },
            Evidence::Fragment {
                vertex,
                fragment,
                degrees,
                reason,
            } => WitnessRecord {
                vertex: g.vertex_name(*vertex).to_string(),
                degrees: degrees.clone(),
                trace: vec![g.display_path(fragment.body())],
                note: reason.clone(),
            },
            Evidence::Candidate(c) => WitnessRecord {
                vertex: g.vertex_name(c.vertex).to_string(),
                degrees: vec![c.m.clone(), c.n.clone()],
                trace: Vec::new(),
                note: format!(
                    "local periodicity {}, {} survives to depth {}",
                    c.m,
                    c.n,
                    self.depth.unwrap_or(0)
                ),
            },
        };
        Some(rec)
    }
}

/// Greatest `S ⊆ allowed ∖ R_v` such that each `w ∈ S` starts a block
/// ending in `S`, for the first `v` where it is non-empty.
fn avoiding_lasso(g: &KGraph, allowed: &[bool], blocks: &[Vec<Path>]) -> Option<Evidence> {
    for v in g.vertices() {
        let reach = g.reachable_set(v);
        let mut s: Vec<bool> = g.vertices().map(|w| allowed[w] && !reach[w]).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for w in g.vertices() {
                if s[w] && !blocks[w].iter().any(|b| s[b.source()]) {
                    s[w] = false;
                    changed = true;
                }
            }
        }
        let Some(start) = s.iter().position(|&b| b) else {
            continue;
        };
        let mut seen = vec![None; g.vertex_count()];
        let mut chain = Vec::new();
        let mut cur = start;
        let cycle_start = loop {
            if let Some(t) = seen[cur] {
                break t;
            }
            seen[cur] = Some(chain.len());
            let next = blocks[cur]
                .iter()
                .find(|b| s[b.source()])
                .expect("every vertex of the fixed point has a block");
            cur = next.source();
            chain.push(next.clone());
        };
        return Some(Evidence::Lasso {
            vertex: v,
            blocks: chain,
            cycle_start,
        });
    }
    None
}

/// Exact cofinality.
pub fn is_cofinal(g: &KGraph) -> Result<Verdict> {
    g.require_locally_convex()?;
    let one = Degree::splat(g.rank(), 1);
    let blocks: Vec<Vec<Path>> = g.vertices().map(|w| g.paths_le(w, &one)).collect();
    let allowed = vec![true; g.vertex_count()];
    Ok(match avoiding_lasso(g, &allowed, &blocks) {
        Some(w) => Verdict::new("cofinality", Status::Violated, true, None).with_witness(w),
        None => Verdict::new("cofinality", Status::Holds, true, None),
    })
}

/// Re-checks a cofinality witness against the definition: the blocks form a
/// repeating chain in `Λ^{<=𝟙}` and no vertex they visit is reachable from
/// the witness vertex.
pub fn replay_lasso(g: &KGraph, witness: &Evidence) -> bool {
    let Evidence::Lasso {
        vertex,
        blocks,
        cycle_start,
    } = witness
    else {
        return false;
    };
    if blocks.is_empty() || *cycle_start >= blocks.len() {
        return false;
    }
    let one = Degree::splat(g.rank(), 1);
    for (t, b) in blocks.iter().enumerate() {
        if !g.paths_le(b.range(), &one).contains(b) {
            return false;
        }
        let next = blocks.get(t + 1).unwrap_or(&blocks[*cycle_start]);
        if b.source() != next.range() {
            return false;
        }
        if boundary::vertices_visited(g, b)
            .iter()
            .any(|&u| g.reaches(u, *vertex))
        {
            return false;
        }
    }
    true
}

/// Cofinality judged on fragments of depth `depth` from every vertex. Starts
/// and fragments touching `skip` are ignored.
pub fn is_cofinal_bounded(g: &KGraph, depth: u32, skip: Option<&[bool]>) -> Result<Verdict> {
    g.require_locally_convex()?;
    let skipped = |u: VertexId| skip.is_some_and(|s| s[u]);
    let mut frags = Vec::new();
    for w in g.vertices() {
        if skipped(w) {
            frags.push(Vec::new());
            continue;
        }
        let fs = boundary::fragments_from(g, w, depth)?
            .into_iter()
            .filter(|f| {
                skip.is_none()
                    || !boundary::vertices_visited(g, f.body())
                        .iter()
                        .any(|&u| skipped(u))
            })
            .collect::<Vec<_>>();
        frags.push(fs);
    }
    let mut unknown = false;
    for v in g.vertices() {
        let reach = g.reachable_set(v);
        for fs in &frags {
            for f in fs {
                if reach[f.body().source()] {
                    continue;
                }
                if let Some(w) = block_lasso(g, v, f)? {
                    return Ok(
                        Verdict::new("cofinality", Status::Violated, true, Some(depth))
                            .with_witness(w),
                    );
                }
                if f.is_complete() {
                    let w = Evidence::Fragment {
                        vertex: v,
                        fragment: f.clone(),
                        degrees: vec![f.body().degree().clone()],
                        reason: format!(
                            "boundary path from {} never meets a vertex reachable from {}",
                            g.vertex_name(f.range()),
                            g.vertex_name(v)
                        ),
                    };
                    return Ok(
                        Verdict::new("cofinality", Status::Violated, true, Some(depth))
                            .with_witness(w),
                    );
                }
                unknown = true;
            }
        }
    }
    let status = if unknown {
        Status::UnknownAtDepth
    } else {
        Status::Holds
    };
    Ok(Verdict::new("cofinality", status, false, Some(depth)))
}

/// A lasso read off a fragment avoiding `R_v`: the vertices `x(t·𝟙 ∧ d(x))`
/// at block boundaries repeat, so the blocks between repeat forever.
fn block_lasso(g: &KGraph, v: VertexId, f: &Fragment) -> Result<Option<Evidence>> {
    let steps = f.depth().max_coord();
    let d = f.body().degree();
    let marks: Vec<Degree> = (0..=steps)
        .map(|t| Degree::splat(g.rank(), t).meet(d))
        .collect();
    let mut seen: Vec<(VertexId, usize)> = Vec::new();
    for (t, p) in marks.iter().enumerate() {
        let u = f.vertex_at(g, p)?;
        if let Some(&(_, first)) = seen.iter().find(|(w, _)| *w == u) {
            let blocks = (0..t)
                .map(|s| g.segment(f.body(), &marks[s], &marks[s + 1]))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Some(Evidence::Lasso {
                vertex: v,
                blocks,
                cycle_start: first,
            }));
        }
        seen.push((u, t));
    }
    Ok(None)
}

/// `None` when `f` satisfies the local periodicity relations for `(m, n)`
/// as far as depth `depth` allows; otherwise the reason it fails.
fn lp_failure(
    g: &KGraph,
    f: &Fragment,
    m: &Degree,
    n: &Degree,
    depth: u32,
) -> Result<Option<String>> {
    let mm = f.determined_meet(m)?;
    let nn = f.determined_meet(n)?;
    if m.sub(&mm) != n.sub(&nn) {
        return Ok(Some(format!(
            "degree condition fails: {m} - {mm} != {n} - {nn}"
        )));
    }
    let span = Degree::splat(g.rank(), depth).checked_sub(&mm.join(&nn))?;
    let left = boundary::shift(g, f, &mm)?;
    let right = boundary::shift(g, f, &nn)?;
    if !boundary::fragment_eq(g, &left, &right, &span)? {
        return Ok(Some(format!(
            "shifts by {mm} and {nn} differ within {span}"
        )));
    }
    Ok(None)
}

fn check_lp_args(m: &Degree, n: &Degree, depth: u32) -> Result<()> {
    if m == n {
        return Err(KgError::PreconditionFailed("m and n must differ".into()));
    }
    let top = m.join(n);
    if top.max_coord() > depth {
        return Err(KgError::DepthTooSmall { depth, needed: top });
    }
    Ok(())
}

/// Local periodicity `(m, n)` at `v` judged on the given fragments from `v`.
pub fn lp_on_fragments(
    g: &KGraph,
    v: VertexId,
    frags: &[Fragment],
    m: &Degree,
    n: &Degree,
    depth: u32,
) -> Result<Verdict> {
    check_lp_args(m, n, depth)?;
    for f in frags {
        if let Some(reason) = lp_failure(g, f, m, n, depth)? {
            let w = Evidence::Fragment {
                vertex: v,
                fragment: f.clone(),
                degrees: vec![m.clone(), n.clone()],
                reason,
            };
            return Ok(
                Verdict::new("local_periodicity", Status::Violated, true, Some(depth))
                    .with_witness(w),
            );
        }
    }
    Ok(Verdict::new(
        "local_periodicity",
        Status::Holds,
        false,
        Some(depth),
    ))
}

pub fn has_lp_at(g: &KGraph, v: VertexId, m: &Degree, n: &Degree, depth: u32) -> Result<Verdict> {
    check_lp_args(m, n, depth)?;
    let frags = boundary::fragments_from(g, v, depth)?;
    lp_on_fragments(g, v, &frags, m, n, depth)
}

/// Unordered pairs `m != n` in the box below `bound`, larger one first.
pub fn degree_pairs(bound: &Degree) -> Vec<(Degree, Degree)> {
    let points = bound.box_below();
    let mut out = Vec::new();
    for (j, m) in points.iter().enumerate() {
        for n in &points[..j] {
            out.push((m.clone(), n.clone()));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSearch {
    pub candidates: Vec<LpCandidate>,
    /// Number of `(v, m, n)` refuted by a witness.
    pub refuted: usize,
}

/// Every `(v, m, n)` with `m != n <= bound` surviving depth `depth`.
pub fn find_lp(g: &KGraph, bound: &Degree, depth: u32) -> Result<LpSearch> {
    if bound.max_coord() > depth {
        return Err(KgError::DepthTooSmall {
            depth,
            needed: bound.clone(),
        });
    }
    let pairs = degree_pairs(bound);
    let mut search = LpSearch {
        candidates: Vec::new(),
        refuted: 0,
    };
    for v in g.vertices() {
        let frags = boundary::fragments_from(g, v, depth)?;
        for (m, n) in &pairs {
            match lp_on_fragments(g, v, &frags, m, n, depth)?.status {
                Status::Holds => search.candidates.push(LpCandidate {
                    vertex: v,
                    m: m.clone(),
                    n: n.clone(),
                }),
                _ => search.refuted += 1,
            }
        }
    }
    Ok(search)
}

#[derive(Clone, Debug)]
pub struct SimplicityReport {
    /// Exact.
    pub cofinality: Verdict,
    /// Bounded: "no local periodicity with `m, n` in the box, at this depth".
    pub aperiodicity: Verdict,
    pub candidates: Vec<LpCandidate>,
    pub simple: bool,
}

impl SimplicityReport {
    pub fn simplicity(&self) -> Verdict {
        let status = match (self.cofinality.status, self.aperiodicity.status) {
            (Status::Violated, _) | (_, Status::Violated) => Status::Violated,
            (Status::Holds, Status::Holds) => Status::Holds,
            _ => Status::UnknownAtDepth,
        };
        let mut v = Verdict::new("simplicity", status, false, self.aperiodicity.depth);
        v.witness = match (&self.cofinality.witness, &self.aperiodicity.witness) {
            (Some(w), _) | (None, Some(w)) => Some(w.clone()),
            _ => None,
        };
        v
    }

    pub fn verdicts(&self) -> Vec<Verdict> {
        vec![
            self.cofinality.clone(),
            self.aperiodicity.clone(),
            self.simplicity(),
        ]
    }
}

pub fn simplicity_verdict(g: &KGraph, bound: &Degree, depth: u32) -> Result<SimplicityReport> {
    let cofinality = is_cofinal(g)?;
    let search = find_lp(g, bound, depth)?;
    let aperiodicity = match search.candidates.first() {
        None => Verdict::new("aperiodicity", Status::Holds, false, Some(depth)),
        Some(c) => Verdict::new("aperiodicity", Status::Violated, false, Some(depth))
            .with_witness(Evidence::Candidate(c.clone())),
    };
    let simple = cofinality.status == Status::Holds && aperiodicity.status == Status::Holds;
    Ok(SimplicityReport {
        cofinality,
        aperiodicity,
        candidates: search.candidates,
        simple,
    })
}

fn strong_failure(
    g: &KGraph,
    f: &Fragment,
    p: &Degree,
    q: &Degree,
    depth: u32,
) -> Result<Option<String>> {
    let known = f.known_degree();
    if !known.contains(p) || !known.contains(q) {
        return Ok(Some(format!("{p} or {q} exceeds d(x) = {known}")));
    }
    let span = Degree::splat(g.rank(), depth).checked_sub(&p.join(q))?;
    let left = boundary::shift(g, f, p)?;
    let right = boundary::shift(g, f, q)?;
    if !boundary::fragment_eq(g, &left, &right, &span)? {
        return Ok(Some(format!("shifts by {p} and {q} differ within {span}")));
    }
    Ok(None)
}

/// The strong form: every fragment from `w` has `p, q <= d(x)` and
/// `σ^p(x) = σ^q(x)`.
pub fn strong_on_fragments(
    g: &KGraph,
    w: VertexId,
    frags: &[Fragment],
    p: &Degree,
    q: &Degree,
    depth: u32,
) -> Result<Verdict> {
    check_lp_args(p, q, depth)?;
    for f in frags {
        if let Some(reason) = strong_failure(g, f, p, q, depth)? {
            let wit = Evidence::Fragment {
                vertex: w,
                fragment: f.clone(),
                degrees: vec![p.clone(), q.clone()],
                reason,
            };
            return Ok(
                Verdict::new("strong_periodicity", Status::Violated, true, Some(depth))
                    .with_witness(wit),
            );
        }
    }
    Ok(Verdict::new(
        "strong_periodicity",
        Status::Holds,
        false,
        Some(depth),
    ))
}

pub fn strong_lp_check(
    g: &KGraph,
    w: VertexId,
    p: &Degree,
    q: &Degree,
    depth: u32,
) -> Result<Verdict> {
    check_lp_args(p, q, depth)?;
    let frags = boundary::fragments_from(g, w, depth)?;
    strong_on_fragments(g, w, &frags, p, q, depth)
}

/// Strong-form candidates derived from local periodicity `(m, n)` at `v`:
/// `p = m - m∧n`, `q = n - m∧n` at the sources of `vΛ^{<= m∧n}`.
pub fn strong_candidates(g: &KGraph, v: VertexId, m: &Degree, n: &Degree) -> Vec<LpCandidate> {
    let common = m.meet(n);
    let p = m.sub(&common);
    let q = n.sub(&common);
    let mut out: Vec<LpCandidate> = Vec::new();
    for lambda in g.paths_le(v, &common) {
        let c = LpCandidate {
            vertex: lambda.source(),
            m: p.clone(),
            n: q.clone(),
        };
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// Every `(w, p, q)` with `p != q <= bound` passing the strong form.
pub fn find_strong(g: &KGraph, bound: &Degree, depth: u32) -> Result<Vec<LpCandidate>> {
    if bound.max_coord() > depth {
        return Err(KgError::DepthTooSmall {
            depth,
            needed: bound.clone(),
        });
    }
    let pairs = degree_pairs(bound);
    let mut out = Vec::new();
    for w in g.vertices() {
        let frags = boundary::fragments_from(g, w, depth)?;
        for (p, q) in &pairs {
            if strong_on_fragments(g, w, &frags, p, q, depth)?.status == Status::Holds {
                out.push(LpCandidate {
                    vertex: w,
                    m: p.clone(),
                    n: q.clone(),
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct TransferReport {
    pub base: Verdict,
    pub lifted: Verdict,
    pub contradiction: bool,
}

fn contradicts(a: Status, b: Status) -> bool {
    matches!(
        (a, b),
        (Status::Holds, Status::Violated) | (Status::Violated, Status::Holds)
    )
}

/// Cofinality of a materialised region, sound for the whole desourced graph:
/// a violation is an avoiding lasso of full `𝟙` blocks inside the interior,
/// and `Holds` means every depth-`depth` fragment from a vertex with room
/// meets the reachable set.
pub fn region_cofinality(region: &Region, depth: u32) -> Result<Verdict> {
    let rg = &region.graph;
    let one = Degree::splat(rg.rank(), 1);
    let allowed: Vec<bool> = rg.vertices().map(|v| region.is_interior(v)).collect();
    let blocks: Vec<Vec<Path>> = rg.vertices().map(|w| rg.paths_from(w, &one)).collect();
    if let Some(w) = avoiding_lasso(rg, &allowed, &blocks) {
        return Ok(Verdict::new("cofinality", Status::Violated, true, Some(depth)).with_witness(w));
    }
    let slack = Degree::splat(rg.rank(), depth);
    let mut unknown = false;
    for w in rg.vertices().filter(|&w| region.has_room(w, &slack)) {
        let frags = boundary::fragments_from(rg, w, depth)?;
        for v in rg.vertices() {
            let reach = rg.reachable_set(v);
            if frags.iter().any(|f| !reach[f.body().source()]) {
                unknown = true;
            }
        }
    }
    let status = if unknown {
        Status::UnknownAtDepth
    } else {
        Status::Holds
    };
    Ok(Verdict::new("cofinality", status, false, Some(depth)))
}

/// Exact cofinality of `g` against the region check on its desourced graph.
pub fn transfer_cofinal(g: &KGraph, p_max: &Degree, depth: u32) -> Result<TransferReport> {
    let base = is_cofinal(g)?;
    let region = desource::materialize(g, p_max)?;
    let lifted = region_cofinality(&region, depth)?;
    Ok(TransferReport {
        contradiction: contradicts(base.status, lifted.status),
        base,
        lifted,
    })
}

#[derive(Clone, Debug)]
pub struct LpTransfer {
    pub vertex: VertexId,
    pub m: Degree,
    pub n: Degree,
    pub base: Status,
    pub lifted: Status,
    /// Projected fragments round-trip and inherit the lifted verdict.
    pub bridge_ok: bool,
}

impl LpTransfer {
    pub fn agrees(&self) -> bool {
        self.base == self.lifted && self.bridge_ok
    }
}

/// Local periodicity at the region vertex `v` for every pair in the box,
/// compared with the verdict at its projection.
pub fn transfer_lp_box(
    g: &KGraph,
    region: &Region,
    v: VertexId,
    bound: &Degree,
    depth: u32,
) -> Result<Vec<LpTransfer>> {
    let rg = &region.graph;
    if !region.has_room(v, &Degree::splat(g.rank(), depth)) {
        return Err(KgError::PreconditionFailed(format!(
            "{} is too close to the region boundary for depth {depth}",
            rg.vertex_name(v)
        )));
    }
    let base_vertex = region.vertices[v].base;
    let lifted_frags = boundary::fragments_from(rg, v, depth)?;
    let base_frags = boundary::fragments_from(g, base_vertex, depth)?;
    let mut projected = Vec::new();
    let mut round_trip = true;
    for y in &lifted_frags {
        let t = region.to_mtilde(g, y.body())?;
        let (p, f) = desource::project_infinite(g, &t)?;
        round_trip &= p == region.vertices[v].overshoot
            && desource::lift_fragment(g, &f, &p, y.body().degree())? == t;
        projected.push(f);
    }
    let mut out = Vec::new();
    for (m, n) in degree_pairs(bound) {
        let lifted = lp_on_fragments(rg, v, &lifted_frags, &m, &n, depth)?.status;
        let base = lp_on_fragments(g, base_vertex, &base_frags, &m, &n, depth)?.status;
        let mut bridge_ok = round_trip;
        if lifted == Status::Holds {
            for f in &projected {
                bridge_ok &= lp_failure(g, f, &m, &n, depth)?.is_none();
            }
        }
        out.push(LpTransfer {
            vertex: v,
            m,
            n,
            base,
            lifted,
            bridge_ok,
        });
    }
    Ok(out)
}

pub fn transfer_lp(
    g: &KGraph,
    region: &Region,
    v: VertexId,
    m: &Degree,
    n: &Degree,
    depth: u32,
) -> Result<LpTransfer> {
    check_lp_args(m, n, depth)?;
    let all = transfer_lp_box(g, region, v, &m.join(n), depth)?;
    all.into_iter()
        .find(|t| (&t.m, &t.n) == (m, n) || (&t.m, &t.n) == (n, m))
        .ok_or_else(|| KgError::Invariant("pair missing from its own box".into()))
}

/// `(μ, α, ν) = (x(0, m∧d), x(m∧d, (m∨n)∧d), x(0, n∧d))` for a fragment on
/// which local periodicity `(m, n)` holds.
pub fn periodicity_factor(
    g: &KGraph,
    v: VertexId,
    m: &Degree,
    n: &Degree,
    x: &Fragment,
    depth: u32,
) -> Result<(Path, Path, Path)> {
    check_lp_args(m, n, depth)?;
    if x.range() != v {
        return Err(KgError::PreconditionFailed(
            "fragment does not start at v".into(),
        ));
    }
    if let Some(reason) = lp_failure(g, x, m, n, depth)? {
        return Err(KgError::PreconditionFailed(reason));
    }
    let mm = x.determined_meet(m)?;
    let nn = x.determined_meet(n)?;
    let top = x.determined_meet(&m.join(n))?;
    let mu = g.factorize(x.body(), &mm)?.0;
    let alpha = g.segment(x.body(), &mm, &top)?;
    let nu = g.factorize(x.body(), &nn)?.0;
    Ok((mu, alpha, nu))
}

/// Checks `d(μ) != d(ν)` and `μαy = ναy` for every fragment `y` of depth
/// `depth` from `s(α)`.
pub fn verify_periodicity_factor(
    g: &KGraph,
    (mu, alpha, nu): (&Path, &Path, &Path),
    depth: u32,
) -> Result<bool> {
    if mu.degree() == nu.degree() {
        return Ok(false);
    }
    let left = g.compose(mu, alpha)?;
    let right = g.compose(nu, alpha)?;
    let span = &left.degree().meet(right.degree()) + &Degree::splat(g.rank(), depth);
    for y in boundary::fragments_from(g, alpha.source(), depth)? {
        let a = boundary::prepend(g, &left, &y)?;
        let b = boundary::prepend(g, &right, &y)?;
        if !boundary::fragment_eq(g, &a, &b, &span)? {
            return Ok(false);
        }
    }
    Ok(true)
}
