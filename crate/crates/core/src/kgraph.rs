//! Finite k-graphs presented by a coloured skeleton plus factorisation squares.
//!
//! A morphism is stored in colour-ascending normal form: all colour-0 edges,
//! then colour-1 edges, and so on. The edge sequence `e_1 e_2 ... e_n` denotes
//! the composite `e_1 ∘ e_2 ∘ ... ∘ e_n`, so `r(path) = r(e_1)` and
//! `s(e_t) = r(e_{t+1})`. Colours are 0-based in this crate and 1-based in the
//! text format.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::degree::Degree;
use crate::error::{EdgePair, KgError, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub name: String,
    /// 0-based colour.
    pub color: usize,
    pub source: VertexId,
    pub range: VertexId,
}

/// The factorisation identity `f ∘ g2 = g ∘ f2`, where `f`, `f2` share one
/// colour and `g`, `g2` share another.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Square {
    pub f: EdgeId,
    pub g2: EdgeId,
    pub g: EdgeId,
    pub f2: EdgeId,
}

/// Unvalidated presentation of a k-graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonSpec {
    pub rank: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
    pub squares: Vec<Square>,
}

impl SkeletonSpec {
    pub fn new(rank: usize) -> Self {
        SkeletonSpec {
            rank,
            ..Default::default()
        }
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> VertexId {
        self.vertices.push(name.into());
        self.vertices.len() - 1
    }

    /// Adds an edge pointing from `source` to `range` (0-based colour).
    pub fn add_edge(
        &mut self,
        name: impl Into<String>,
        color: usize,
        source: VertexId,
        range: VertexId,
    ) -> EdgeId {
        self.edges.push(EdgeSpec {
            name: name.into(),
            color,
            source,
            range,
        });
        self.edges.len() - 1
    }

    pub fn add_square(&mut self, f: EdgeId, g2: EdgeId, g: EdgeId, f2: EdgeId) {
        self.squares.push(Square { f, g2, g, f2 });
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name)
    }

    fn square_text(&self, sq: &Square) -> String {
        let n = |e: EdgeId| {
            self.edges
                .get(e)
                .map(|x| x.name.clone())
                .unwrap_or_else(|| format!("#{e}"))
        };
        format!("{}.{} = {}.{}", n(sq.f), n(sq.g2), n(sq.g), n(sq.f2))
    }
}

/// A morphism of a k-graph in colour-ascending normal form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Path {
    range: VertexId,
    source: VertexId,
    edges: Vec<EdgeId>,
    degree: Degree,
}

impl Path {
    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .coords()
            .cmp(other.degree.coords())
            .then_with(|| self.range.cmp(&other.range))
            .then_with(|| self.edges.cmp(&other.edges))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum WalkMode {
    /// paths of degree exactly the bound
    Exact,
    /// every path of degree `<=` the bound
    Within,
    /// `Λ^{<= bound}`
    Le,
}

/// A validated finite k-graph. Immutable after construction.
#[derive(Clone, Debug)]
pub struct KGraph {
    spec: SkeletonSpec,
    /// `at[v][i]`: edges of colour `i` with range `v`, ascending by id.
    at: Vec<Vec<Vec<EdgeId>>>,
    /// `(a, b) -> (b', a')` with `a ∘ b = b' ∘ a'`, colours of `a`/`a'` and `b`/`b'` equal.
    swaps: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    /// `reach[v][w]` iff `vΛw` is non-empty.
    reach: Vec<Vec<bool>>,
    convexity_witness: Option<(EdgeId, EdgeId)>,
    vertex_names: HashMap<String, VertexId>,
    edge_names: HashMap<String, EdgeId>,
}

impl KGraph {
    /// Checks the presentation and builds the graph. Every missing or
    /// doubly-covered pair and every non-associative triple is reported.
    pub fn validate(spec: SkeletonSpec) -> Result<KGraph> {
        let k = spec.rank;
        if k == 0 {
            return Err(KgError::ZeroRank);
        }
        let nv = spec.vertices.len();
        for e in &spec.edges {
            if e.color >= k || e.source >= nv || e.range >= nv {
                return Err(KgError::MalformedEdge(e.name.clone()));
            }
        }

        let mut at = vec![vec![Vec::new(); k]; nv];
        for (id, e) in spec.edges.iter().enumerate() {
            at[e.range][e.color].push(id);
        }

        let mut swaps = HashMap::new();
        let mut ambiguous = Vec::new();
        let name = |e: EdgeId| spec.edges[e].name.clone();
        for (index, sq) in spec.squares.iter().enumerate() {
            let ne = spec.edges.len();
            let malformed = |reason: &str| KgError::MalformedSquare {
                index,
                text: spec.square_text(sq),
                reason: reason.to_string(),
            };
            if [sq.f, sq.g2, sq.g, sq.f2].iter().any(|&e| e >= ne) {
                return Err(malformed("unknown edge"));
            }
            let [f, g2, g, f2] = [sq.f, sq.g2, sq.g, sq.f2].map(|e| &spec.edges[e]);
            if f.color != f2.color || g.color != g2.color {
                return Err(malformed("opposite sides must carry matching colours"));
            }
            if f.color == g.color {
                return Err(malformed("a square needs two distinct colours"));
            }
            if f.range != g.range {
                return Err(malformed("the two sides have different ranges"));
            }
            if f.source != g2.range || g.source != f2.range {
                return Err(malformed("a side is not composable"));
            }
            if g2.source != f2.source {
                return Err(malformed("the two sides have different sources"));
            }
            for (key, value) in [
                ((sq.f, sq.g2), (sq.g, sq.f2)),
                ((sq.g, sq.f2), (sq.f, sq.g2)),
            ] {
                match swaps.insert(key, value) {
                    Some(old) if old != value => {
                        ambiguous.push(EdgePair(name(key.0), name(key.1)));
                    }
                    _ => {}
                }
            }
        }
        if !ambiguous.is_empty() {
            ambiguous.sort();
            ambiguous.dedup();
            return Err(KgError::AmbiguousSquares(ambiguous));
        }

        // Completeness: every composable two-colour pair lies on exactly one square.
        let mut missing = Vec::new();
        for (a, ea) in spec.edges.iter().enumerate() {
            for c in 0..k {
                if c == ea.color {
                    continue;
                }
                for &b in &at[ea.source][c] {
                    if !swaps.contains_key(&(a, b)) {
                        missing.push(EdgePair(name(a), name(b)));
                    }
                }
            }
        }
        if !missing.is_empty() {
            return Err(KgError::IncompleteSquares(missing));
        }

        let mut g = KGraph {
            reach: Vec::new(),
            convexity_witness: None,
            vertex_names: spec
                .vertices
                .iter()
                .enumerate()
                .map(|(i, n)| (n.clone(), i))
                .collect(),
            edge_names: spec
                .edges
                .iter()
                .enumerate()
                .map(|(i, e)| (e.name.clone(), i))
                .collect(),
            at,
            swaps,
            spec,
        };

        let bad = g.non_associative_triples();
        if !bad.is_empty() {
            return Err(KgError::NonAssociative(
                bad.into_iter()
                    .map(|t| t.map(|e| g.spec.edges[e].name.clone()))
                    .collect(),
            ));
        }

        g.reach = (0..nv).map(|v| g.reachable_from(v)).collect();
        g.convexity_witness = g.find_convexity_witness();
        Ok(g)
    }

    /// Composable triples `a∘b∘c` with strictly decreasing colours whose two
    /// resolution orders disagree.
    fn non_associative_triples(&self) -> Vec<[EdgeId; 3]> {
        let k = self.rank();
        let mut bad = Vec::new();
        if k < 3 {
            return bad;
        }
        for a in 0..self.edge_count() {
            let ca = self.color(a);
            for cb in 0..ca {
                for &b in &self.at[self.source_of(a)][cb] {
                    for cc in 0..cb {
                        for &c in &self.at[self.source_of(b)][cc] {
                            // a b c -> b1 a1 c -> b1 c1 a2 -> c2 b2 a2
                            let (b1, a1) = self.swap(a, b);
                            let (c1, a2) = self.swap(a1, c);
                            let (c2, b2) = self.swap(b1, c1);
                            // a b c -> a c1' b1' -> c2' a1' b1' -> c2' b2' a2'
                            let (c1p, b1p) = self.swap(b, c);
                            let (c2p, a1p) = self.swap(a, c1p);
                            let (b2p, a2p) = self.swap(a1p, b1p);
                            if (c2, b2, a2) != (c2p, b2p, a2p) {
                                bad.push([a, b, c]);
                            }
                        }
                    }
                }
            }
        }
        bad
    }

    fn reachable_from(&self, v: VertexId) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([v]);
        seen[v] = true;
        while let Some(u) = queue.pop_front() {
            for edges in &self.at[u] {
                for &e in edges {
                    let w = self.source_of(e);
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        seen
    }

    fn find_convexity_witness(&self) -> Option<(EdgeId, EdgeId)> {
        let k = self.rank();
        for v in 0..self.vertex_count() {
            for i in 0..k {
                for j in (i + 1)..k {
                    for &f in &self.at[v][i] {
                        for &g in &self.at[v][j] {
                            if self.is_dead(self.source_of(f), j)
                                || self.is_dead(self.source_of(g), i)
                            {
                                return Some((f, g));
                            }
                        }
                    }
                }
            }
        }
        None
    }

    pub fn spec(&self) -> &SkeletonSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.spec.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.spec.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.vertex_count()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.spec.vertices[v]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.spec.edges[e].name
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.get(name).copied()
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edge_names.get(name).copied()
    }

    pub fn color(&self, e: EdgeId) -> usize {
        self.spec.edges[e].color
    }

    pub fn source_of(&self, e: EdgeId) -> VertexId {
        self.spec.edges[e].source
    }

    pub fn range_of(&self, e: EdgeId) -> VertexId {
        self.spec.edges[e].range
    }

    /// `vΛ^{e_i}`
    pub fn edges_at(&self, v: VertexId, color: usize) -> &[EdgeId] {
        &self.at[v][color]
    }

    /// `vΛ^{e_i} = ∅`
    pub fn is_dead(&self, v: VertexId, color: usize) -> bool {
        self.at[v][color].is_empty()
    }

    /// Colours `i` with `vΛ^{e_i} ≠ ∅`.
    pub fn alive_colors(&self, v: VertexId) -> Vec<bool> {
        (0..self.rank()).map(|i| !self.is_dead(v, i)).collect()
    }

    pub fn has_sources(&self) -> bool {
        self.vertices()
            .any(|v| (0..self.rank()).any(|i| self.is_dead(v, i)))
    }

    /// The unique `(b', a')` with `a ∘ b = b' ∘ a'`.
    pub fn swap(&self, a: EdgeId, b: EdgeId) -> (EdgeId, EdgeId) {
        *self
            .swaps
            .get(&(a, b))
            .expect("validated graph has a square for every composable pair")
    }

    pub fn vertex_path(&self, v: VertexId) -> Path {
        Path {
            range: v,
            source: v,
            edges: Vec::new(),
            degree: Degree::zero(self.rank()),
        }
    }

    pub fn edge_path(&self, e: EdgeId) -> Path {
        Path {
            range: self.range_of(e),
            source: self.source_of(e),
            edges: vec![e],
            degree: Degree::unit(self.rank(), self.color(e)),
        }
    }

    /// Builds the path `e_1 ∘ ... ∘ e_n` from any composable edge sequence.
    pub fn path(&self, range: VertexId, edges: &[EdgeId]) -> Result<Path> {
        let mut cur = range;
        let mut degree = Degree::zero(self.rank());
        for &e in edges {
            if e >= self.edge_count() || self.range_of(e) != cur {
                return Err(KgError::NotComposable);
            }
            cur = self.source_of(e);
            degree = degree.with(self.color(e), degree.get(self.color(e)) + 1);
        }
        Ok(Path {
            range,
            source: cur,
            edges: self.normalize(edges.to_vec()),
            degree,
        })
    }

    /// Builds a path from edge names, e.g. `["f", "g2"]`.
    pub fn path_by_names(&self, range: &str, edges: &[&str]) -> Result<Path> {
        let v = self
            .vertex_id(range)
            .ok_or_else(|| KgError::UnknownVertex(range.to_string()))?;
        let ids = edges
            .iter()
            .map(|n| self.edge_id(n).ok_or(KgError::NotComposable))
            .collect::<Result<Vec<_>>>()?;
        self.path(v, &ids)
    }

    /// Insertion sort by colour, moving lower colours left through squares.
    fn normalize(&self, mut edges: Vec<EdgeId>) -> Vec<EdgeId> {
        for t in 1..edges.len() {
            let mut s = t;
            while s > 0 && self.color(edges[s - 1]) > self.color(edges[s]) {
                let (lo, hi) = self.swap(edges[s - 1], edges[s]);
                edges[s - 1] = lo;
                edges[s] = hi;
                s -= 1;
            }
        }
        edges
    }

    /// Rewrites a composable edge sequence into the factorisation along the
    /// colour word `word` (which must have the same colour histogram).
    fn reorder(&self, mut edges: Vec<EdgeId>, word: &[usize]) -> Vec<EdgeId> {
        debug_assert_eq!(edges.len(), word.len());
        for (t, &c) in word.iter().enumerate() {
            let s = (t..edges.len())
                .find(|&s| self.color(edges[s]) == c)
                .expect("colour histograms agree");
            for u in (t + 1..=s).rev() {
                let (moved, other) = self.swap(edges[u - 1], edges[u]);
                edges[u - 1] = moved;
                edges[u] = other;
            }
        }
        edges
    }

    /// `a ∘ b`
    pub fn compose(&self, a: &Path, b: &Path) -> Result<Path> {
        if a.source != b.range {
            return Err(KgError::NotComposable);
        }
        let mut edges = a.edges.clone();
        edges.extend_from_slice(&b.edges);
        Ok(Path {
            range: a.range,
            source: b.source,
            edges: self.normalize(edges),
            degree: &a.degree + &b.degree,
        })
    }

    /// The unique `(λ(0,m), λ(m,d(λ)))`.
    pub fn factorize(&self, lambda: &Path, m: &Degree) -> Result<(Path, Path)> {
        if !m.le(&lambda.degree) {
            return Err(KgError::DegreeOutOfRange {
                requested: m.clone(),
                available: lambda.degree.clone(),
            });
        }
        let rest = lambda.degree.sub(m);
        let mut word = m.sorted_word();
        word.extend(rest.sorted_word());
        let edges = self.reorder(lambda.edges.clone(), &word);
        let split = m.total() as usize;
        let mid = if split == 0 {
            lambda.range
        } else {
            self.source_of(edges[split - 1])
        };
        let head = Path {
            range: lambda.range,
            source: mid,
            edges: edges[..split].to_vec(),
            degree: m.clone(),
        };
        let tail = Path {
            range: mid,
            source: lambda.source,
            edges: edges[split..].to_vec(),
            degree: rest,
        };
        Ok((head, tail))
    }

    /// `λ(m, n)`
    pub fn segment(&self, lambda: &Path, m: &Degree, n: &Degree) -> Result<Path> {
        if !m.le(n) {
            return Err(KgError::DegreeOutOfRange {
                requested: m.clone(),
                available: n.clone(),
            });
        }
        let (head, _) = self.factorize(lambda, n)?;
        let (_, mid) = self.factorize(&head, m)?;
        Ok(mid)
    }

    /// `λ(p)`, the vertex at position `p`.
    pub fn vertex_at(&self, lambda: &Path, p: &Degree) -> Result<VertexId> {
        Ok(self.factorize(lambda, p)?.0.source)
    }

    fn walk(
        &self,
        v: VertexId,
        bound: &Degree,
        mode: WalkMode,
        sink: &mut dyn FnMut(Path) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let mut edges = Vec::new();
        let mut deg = vec![0u32; self.rank()];
        self.walk_rec(v, v, &mut edges, &mut deg, 0, bound, mode, sink)
    }

    #[allow(clippy::too_many_arguments)]
    fn walk_rec(
        &self,
        range: VertexId,
        cur: VertexId,
        edges: &mut Vec<EdgeId>,
        deg: &mut Vec<u32>,
        min_color: usize,
        bound: &Degree,
        mode: WalkMode,
        sink: &mut dyn FnMut(Path) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let k = self.rank();
        let emit = match mode {
            WalkMode::Exact => deg.as_slice() == bound.coords(),
            WalkMode::Within => true,
            WalkMode::Le => (0..k).all(|i| deg[i] == bound.get(i) || self.is_dead(cur, i)),
        };
        if emit {
            sink(Path {
                range,
                source: cur,
                edges: edges.clone(),
                degree: Degree::new(deg.clone()),
            })?;
        }
        for c in min_color..k {
            if deg[c] < bound.get(c) {
                for &e in &self.at[cur][c] {
                    edges.push(e);
                    deg[c] += 1;
                    let r =
                        self.walk_rec(range, self.source_of(e), edges, deg, c, bound, mode, sink);
                    deg[c] -= 1;
                    edges.pop();
                    r?;
                }
                if mode == WalkMode::Exact {
                    break;
                }
            }
        }
        ControlFlow::Continue(())
    }

    fn collect(&self, v: VertexId, bound: &Degree, mode: WalkMode) -> Vec<Path> {
        let mut out = Vec::new();
        let _ = self.walk(v, bound, mode, &mut |p| {
            out.push(p);
            ControlFlow::Continue(())
        });
        out
    }

    /// `vΛ^n`
    pub fn paths_from(&self, v: VertexId, n: &Degree) -> Vec<Path> {
        self.collect(v, n, WalkMode::Exact)
    }

    /// `vΛ^{<=n}`: paths of degree at most `n` that cannot be extended in any
    /// direction still below `n`.
    pub fn paths_le(&self, v: VertexId, n: &Degree) -> Vec<Path> {
        self.collect(v, n, WalkMode::Le)
    }

    /// Every path at `v` of degree `<= n`.
    pub fn paths_within(&self, v: VertexId, n: &Degree) -> Vec<Path> {
        self.collect(v, n, WalkMode::Within)
    }

    /// Streams `vΛ^n` (or `vΛ^{<=n}` when `le` is set) into `sink`, which
    /// may stop the enumeration early.
    pub fn visit_paths(
        &self,
        v: VertexId,
        n: &Degree,
        le: bool,
        sink: &mut dyn FnMut(Path) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let mode = if le { WalkMode::Le } else { WalkMode::Exact };
        self.walk(v, n, mode, sink)
    }

    /// Minimal common extensions of `mu` and `nu`.
    pub fn mce(&self, mu: &Path, nu: &Path) -> Result<Vec<Path>> {
        if mu.range != nu.range {
            return Err(KgError::RangeMismatch);
        }
        let join = mu.degree.join(&nu.degree);
        let ext = join.sub(&mu.degree);
        let mut out = Vec::new();
        for tau in self.paths_from(mu.source, &ext) {
            let lambda = self.compose(mu, &tau)?;
            if self.factorize(&lambda, &nu.degree)?.0 == *nu {
                out.push(lambda);
            }
        }
        Ok(out)
    }

    /// Exhaustiveness of `set ⊆ vΛ`, testing only paths of degree at most the
    /// join of the degrees in `set`.
    pub fn is_exhaustive(&self, v: VertexId, set: &[Path]) -> Result<bool> {
        let join = set
            .iter()
            .fold(Degree::zero(self.rank()), |acc, p| acc.join(&p.degree));
        self.is_exhaustive_up_to(v, set, &join)
    }

    /// Brute-force exhaustiveness check over every `λ ∈ vΛ` with `d(λ) <= bound`.
    pub fn is_exhaustive_up_to(&self, v: VertexId, set: &[Path], bound: &Degree) -> Result<bool> {
        if set.iter().any(|p| p.range != v) {
            return Err(KgError::NotAtVertex);
        }
        for lambda in self.paths_within(v, bound) {
            let mut met = false;
            for mu in set {
                if !self.mce(&lambda, mu)?.is_empty() {
                    met = true;
                    break;
                }
            }
            if !met {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_locally_convex(&self) -> bool {
        self.convexity_witness.is_none()
    }

    /// Edges `(f, g)` of distinct colours at a common range where one of them
    /// cannot be continued in the other's colour.
    pub fn convexity_witness(&self) -> Option<(EdgeId, EdgeId)> {
        self.convexity_witness
    }

    pub fn require_locally_convex(&self) -> Result<()> {
        match self.convexity_witness {
            None => Ok(()),
            Some((f, g)) => Err(KgError::NotLocallyConvex(
                self.edge_name(f).to_string(),
                self.edge_name(g).to_string(),
            )),
        }
    }

    /// `vΛw ≠ ∅`
    pub fn reaches(&self, w: VertexId, v: VertexId) -> bool {
        self.reach[v][w]
    }

    /// Vertices `w` with `vΛw ≠ ∅`.
    pub fn reachable_set(&self, v: VertexId) -> &[bool] {
        &self.reach[v]
    }

    /// Looks for `v` dead in colour `i` and `λ ∈ vΛ` with `d(λ) <= bound`
    /// whose source is alive in colour `i`.
    pub fn direction_death_violation(&self, bound: &Degree) -> Option<(VertexId, usize, Path)> {
        for v in self.vertices() {
            for i in 0..self.rank() {
                if !self.is_dead(v, i) {
                    continue;
                }
                if let Some(p) = self
                    .paths_within(v, bound)
                    .into_iter()
                    .find(|p| !self.is_dead(p.source, i))
                {
                    return Some((v, i, p));
                }
            }
        }
        None
    }

    pub fn display_path(&self, p: &Path) -> String {
        if p.edges.is_empty() {
            self.vertex_name(p.range).to_string()
        } else {
            p.edges
                .iter()
                .map(|&e| self.edge_name(e))
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}
