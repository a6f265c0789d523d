//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p kgraph-cli --test acceptance`.

#![allow(clippy::absurd_extreme_comparisons)]

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kgraph_core::analysis::{self, Evidence, LpCandidate, Status};
use kgraph_core::boundary::{self, Fragment};
use kgraph_core::desource::{self, MTilde};
use kgraph_core::error::EdgePair;
use kgraph_core::fixtures;
use kgraph_core::ideals::{self, VertexSet};
use kgraph_core::io::{self, KgDocument};
use kgraph_core::{Degree, KGraph, KgError, Path, SkeletonSpec, VertexId};

// Pinned sizes and tolerances.
const RANDOM_GRAPHS: usize = 20;
const RANDOM_MAX_VERTICES: usize = 8;
const PAIRS_PER_GRAPH: usize = 10_000;
const SAMPLE_DEPTH: u32 = 3;
const ALLOWED_DISAGREEMENTS: usize = 0;
const REGION_PMAX: u32 = 3;
const REGION_MAX_MORPHISMS: usize = 1_000;
const IDENTITY_DEPTH: u32 = 4;
const COFINAL_MAX_DEPTH: u32 = 6;
const TRANSFER_COFINAL_PMAX: u32 = 4;
const TRANSFER_COFINAL_DEPTH: u32 = 2;
const TRANSFER_LP_BOX: u32 = 2;
const TRANSFER_LP_DEPTH: u32 = 5;
const TRANSFER_LP_PMAX: u32 = TRANSFER_LP_DEPTH + 2;
const LP_DEPTH: u32 = 6;
const LP_BOX: u32 = 3;
const STRONG_BOX: u32 = 3;
const FIGURE1_COLUMNS: usize = 8;
const FIGURE1_DEPTH: u32 = 4;
const FIGURE1_STRONG_BOX: u32 = 2;
const LATTICE_MAX_VERTICES: usize = 12;
const ALLOWED_CONTRADICTIONS: usize = 0;

type Check = fn() -> Result<String, String>;

const CRITERIA: &[(&str, Check)] = &[
    ("axiom suite", axiom_suite),
    ("quotient-map correctness", quotient_maps),
    ("desourced structure", desourced_structure),
    ("identity replays", identity_replays),
    ("cofinality", cofinality),
    ("transfer at desk scale", transfer),
    ("periodicity landmarks", periodicity_landmarks),
    ("strong/weak equivalence", strong_weak),
    ("two-row example interior semantics", two_row_example),
    ("ideal lattice", ideal_lattice),
    ("simplicity verdicts", simplicity),
    ("io and cli", io_and_cli),
];

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn main() {
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let total = Instant::now();
    let mut failed = 0;
    let mut ran = 0;
    for (i, (name, check)) in CRITERIA.iter().enumerate() {
        let number = i + 1;
        if !filter.is_empty()
            && !filter
                .iter()
                .any(|f| *f == number.to_string() || name.contains(f.as_str()))
        {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {number:>2} PASS {name}: {detail} [{secs:.1}s]"),
            Err(why) => {
                failed += 1;
                println!("criterion {number:>2} FAIL {name}: {why} [{secs:.1}s]");
            }
        }
    }
    println!(
        "acceptance: {} of {ran} criteria passed in {:.1}s",
        ran - failed,
        total.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

fn d(c: &[u32]) -> Degree {
    Degree::new(c.to_vec())
}

fn ones(g: &KGraph, b: u32) -> Degree {
    Degree::splat(g.rank(), b)
}

fn valid(spec: SkeletonSpec) -> KGraph {
    KGraph::validate(spec).expect("fixture validates")
}

fn all_fragments(g: &KGraph, depth: u32) -> Vec<Fragment> {
    g.vertices()
        .flat_map(|v| boundary::fragments_from(g, v, depth).expect("fragments"))
        .collect()
}

/// `m ∧ d(x)` computed from the body and frontier alone.
fn known_meet(f: &Fragment, m: &Degree) -> Degree {
    Degree::new(
        (0..m.rank())
            .map(|i| {
                if f.frontier()[i] {
                    assert!(m.get(i) <= f.depth().get(i), "meet is not determined");
                    m.get(i)
                } else {
                    m.get(i).min(f.body().degree().get(i))
                }
            })
            .collect(),
    )
}

fn minus(a: &Degree, b: &Degree) -> Degree {
    a.checked_sub(b).expect("non-negative difference")
}

/// `x(a, b)` read off the body by two factorisations.
fn piece(g: &KGraph, x: &Fragment, a: &Degree, b: &Degree) -> Path {
    let head = g.factorize(x.body(), b).expect("prefix").0;
    g.factorize(&head, a).expect("suffix").1
}

fn same_morphism_class(
    g: &KGraph,
    x: &Fragment,
    (m, n): (&Degree, &Degree),
    y: &Fragment,
    (p, q): (&Degree, &Degree),
) -> bool {
    let (mx, nx) = (known_meet(x, m), known_meet(x, n));
    let (py, qy) = (known_meet(y, p), known_meet(y, q));
    piece(g, x, &mx, &nx) == piece(g, y, &py, &qy)
        && minus(m, &mx) == minus(p, &py)
        && minus(n, m) == minus(q, p)
}

fn same_vertex_class(g: &KGraph, x: &Fragment, m: &Degree, y: &Fragment, n: &Degree) -> bool {
    let (mx, ny) = (known_meet(x, m), known_meet(y, n));
    let vx = g.factorize(x.body(), &mx).expect("prefix").0.source();
    let vy = g.factorize(y.body(), &ny).expect("prefix").0.source();
    vx == vy && minus(m, &mx) == minus(n, &ny)
}

// 1

fn axiom_suite() -> Result<String, String> {
    let specs = vec![
        ("omega2_22", fixtures::omega(2, &d(&[2, 2]))),
        ("torus2", fixtures::torus2()),
        ("cycle1", fixtures::cycle(1)),
        ("cycle2", fixtures::cycle(2)),
        ("cycle3", fixtures::cycle(3)),
        ("cycle5", fixtures::cycle(5)),
        ("single-edge", fixtures::single_edge()),
        ("figure1_6", fixtures::figure1(6)),
    ];
    let mut deletions = 0;
    for (name, spec) in &specs {
        ensure!(
            KGraph::validate(spec.clone()).is_ok(),
            "{name} does not validate"
        );
        for i in 0..spec.squares.len() {
            let mut broken = spec.clone();
            let sq = broken.squares.remove(i);
            let en = |e: usize| spec.edges[e].name.clone();
            let mut expected = vec![EdgePair(en(sq.f), en(sq.g2)), EdgePair(en(sq.g), en(sq.f2))];
            expected.sort();
            match KGraph::validate(broken) {
                Err(KgError::IncompleteSquares(mut got)) => {
                    got.sort();
                    ensure!(
                        got == expected,
                        "{name} without square {i}: reported {got:?}, expected {expected:?}"
                    );
                }
                other => return Err(format!("{name} without square {i}: {other:?}")),
            }
            deletions += 1;
        }
    }
    let omega = fixtures::omega(2, &d(&[1, 1]));
    ensure!(
        (omega.vertices.len(), omega.edges.len(), omega.squares.len()) == (4, 4, 1),
        "omega2_11 has the wrong shape"
    );
    ensure!(
        KGraph::validate(omega).is_ok(),
        "omega2_11 does not validate"
    );
    ensure!(
        matches!(
            KGraph::validate(fixtures::bad_cube()),
            Err(KgError::NonAssociative(_))
        ),
        "the inconsistent cube is not reported as non-associative"
    );
    Ok(format!(
        "{} graphs valid, {deletions} single-square deletions each report exactly their pair",
        specs.len()
    ))
}

// 2

fn sample_degree(rng: &mut ChaCha8Rng, f: &Fragment, lo: &Degree) -> Degree {
    Degree::new(
        (0..lo.rank())
            .map(|i| {
                let top = if f.frontier()[i] {
                    f.depth().get(i)
                } else {
                    f.depth().get(i) + 2
                };
                rng.gen_range(lo.get(i).min(top)..=top.max(lo.get(i)))
            })
            .collect(),
    )
}

fn quotient_maps() -> Result<String, String> {
    let suite = fixtures::random_suite(RANDOM_GRAPHS, RANDOM_MAX_VERTICES);
    let mut disagreements = 0;
    let (mut equal_m, mut equal_v, mut total) = (0usize, 0usize, 0usize);
    for (index, (name, g)) in suite.iter().enumerate() {
        let frags = all_fragments(g, SAMPLE_DEPTH);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed + index as u64);
        let zero = Degree::zero(g.rank());
        for _ in 0..PAIRS_PER_GRAPH {
            let x = &frags[rng.gen_range(0..frags.len())];
            let m = sample_degree(&mut rng, x, &zero);
            let n = sample_degree(&mut rng, x, &m);
            let (y, p, q) = match rng.gen_range(0..4) {
                0 => {
                    // shift by part of the determined meet
                    let mm = known_meet(x, &m);
                    let r = Degree::new(
                        (0..g.rank())
                            .map(|i| rng.gen_range(0..=mm.get(i)))
                            .collect(),
                    );
                    let y = boundary::shift(g, x, &r).map_err(|e| e.to_string())?;
                    (y, minus(&m, &r), minus(&n, &r))
                }
                1 => {
                    // another fragment from the same vertex
                    let same: Vec<&Fragment> = frags
                        .iter()
                        .filter(|f| f.range() == x.range() && known_meet_ok(f, &n))
                        .collect();
                    (
                        same[rng.gen_range(0..same.len())].clone(),
                        m.clone(),
                        n.clone(),
                    )
                }
                2 => {
                    let y = frags[rng.gen_range(0..frags.len())].clone();
                    let p = sample_degree(&mut rng, &y, &zero);
                    let q = &p + &minus(&n, &m);
                    if known_meet_ok(&y, &q) {
                        (y, p, q)
                    } else {
                        (x.clone(), m.clone(), n.clone())
                    }
                }
                _ => {
                    let y = frags[rng.gen_range(0..frags.len())].clone();
                    let p = sample_degree(&mut rng, &y, &zero);
                    let q = sample_degree(&mut rng, &y, &p);
                    (y, p, q)
                }
            };
            total += 1;
            let canon = desource::canon_morphism(g, x, &m, &n).map_err(|e| e.to_string())?
                == desource::canon_morphism(g, &y, &p, &q).map_err(|e| e.to_string())?;
            let oracle = same_morphism_class(g, x, (&m, &n), &y, (&p, &q));
            if canon != oracle {
                disagreements += 1;
                if disagreements == 1 {
                    eprintln!("{name}: morphism disagreement at m={m} n={n} p={p} q={q}");
                }
            }
            equal_m += usize::from(oracle);

            let canon_v = desource::canon_vertex(g, x, &m).map_err(|e| e.to_string())?
                == desource::canon_vertex(g, &y, &p).map_err(|e| e.to_string())?;
            let oracle_v = same_vertex_class(g, x, &m, &y, &p);
            if canon_v != oracle_v {
                disagreements += 1;
            }
            equal_v += usize::from(oracle_v);
        }
    }
    ensure!(
        disagreements <= ALLOWED_DISAGREEMENTS,
        "{disagreements} disagreements between canonical forms and the direct conditions"
    );
    ensure!(
        equal_m > 0 && equal_m < total,
        "sampling never hits both outcomes ({equal_m}/{total})"
    );
    ensure!(
        equal_v > 0 && equal_v < total,
        "vertex sampling never hits both outcomes ({equal_v}/{total})"
    );
    Ok(format!(
        "{} graphs x {PAIRS_PER_GRAPH} pairs, 0 disagreements ({equal_m} equivalent morphism pairs, {equal_v} equivalent vertex pairs of {total})",
        suite.len()
    ))
}

fn known_meet_ok(f: &Fragment, m: &Degree) -> bool {
    (0..m.rank()).all(|i| !f.frontier()[i] || m.get(i) <= f.depth().get(i))
}

// 3

fn desourced_structure() -> Result<String, String> {
    let mut pairs = 0;
    let mut triples = 0;
    let mut interior = 0;
    let mut largest = 0;
    for (name, g) in fixtures::suite() {
        let region = desource::materialize(&g, &ones(&g, REGION_PMAX))
            .map_err(|e| format!("{name}: {e}"))?;
        let rg = &region.graph;
        for v in rg.vertices().filter(|&v| region.is_interior(v)) {
            interior += 1;
            for c in 0..rg.rank() {
                let incoming = rg
                    .spec()
                    .edges
                    .iter()
                    .filter(|e| e.range == v && e.color == c)
                    .count();
                ensure!(
                    incoming > 0,
                    "{name}: interior vertex {} is a source in colour {}",
                    rg.vertex_name(v),
                    c + 1
                );
            }
        }

        for v in g.vertices() {
            for lambda in g.paths_within(v, &ones(&g, 2)) {
                let t = desource::iota(&lambda);
                ensure!(
                    desource::project(&t) == lambda,
                    "{name}: π∘ι moves {}",
                    g.display_path(&lambda)
                );
                let path = region.from_mtilde(&g, &t).map_err(|e| e.to_string())?;
                ensure!(
                    path.is_some(),
                    "{name}: ι({}) leaves the region",
                    g.display_path(&lambda)
                );
            }
        }

        let mut morphisms: Vec<(Path, MTilde)> = Vec::new();
        for w in rg.vertices() {
            for p in rg.paths_within(w, &ones(rg, 1)) {
                let t = region.to_mtilde(&g, &p).map_err(|e| e.to_string())?;
                morphisms.push((p, t));
            }
        }
        largest = largest.max(morphisms.len());
        ensure!(
            morphisms.len() <= REGION_MAX_MORPHISMS,
            "{name}: {} morphisms exceed the region budget",
            morphisms.len()
        );
        for (ps, s) in &morphisms {
            for (pt, t) in morphisms.iter().filter(|(pt, _)| pt.range() == ps.source()) {
                let st = desource::compose_tilde(&g, s, t).map_err(|e| format!("{name}: {e}"))?;
                let projected = g
                    .compose(&desource::project(s), &desource::project(t))
                    .map_err(|e| e.to_string())?;
                ensure!(
                    desource::project(&st) == projected,
                    "{name}: π fails on {} ∘ {}",
                    s.display(&g),
                    t.display(&g)
                );
                let direct = rg.compose(ps, pt).map_err(|e| e.to_string())?;
                ensure!(
                    region.to_mtilde(&g, &direct).map_err(|e| e.to_string())? == st,
                    "{name}: region composition disagrees with compose_tilde"
                );
                pairs += 1;
                for (_, u) in morphisms.iter().filter(|(pu, _)| pu.range() == pt.source()) {
                    let left = desource::compose_tilde(&g, &st, u).map_err(|e| e.to_string())?;
                    let tu = desource::compose_tilde(&g, t, u).map_err(|e| e.to_string())?;
                    let right = desource::compose_tilde(&g, s, &tu).map_err(|e| e.to_string())?;
                    ensure!(left == right, "{name}: compose_tilde is not associative");
                    triples += 1;
                }
            }
        }
    }
    Ok(format!(
        "{interior} interior vertices without sources, {pairs} composable pairs, {triples} triples (largest region list {largest})"
    ))
}

// 4

fn identity_replays() -> Result<String, String> {
    let mut counts = [0usize; 5];
    for (name, g) in fixtures::suite() {
        let frags = all_fragments(&g, IDENTITY_DEPTH);
        let cube = ones(&g, IDENTITY_DEPTH).box_below();

        // representative identity
        for x in &frags {
            for m in &cube {
                let mm = known_meet(x, m);
                let tail = boundary::shift(&g, x, &mm).map_err(|e| e.to_string())?;
                let over = minus(m, &mm);
                ensure!(
                    tail.known_degree().meet(&over).is_zero(),
                    "{name}: overshoot meets the tail"
                );
                for n in cube.iter().filter(|n| m.le(n)) {
                    let lhs = desource::canon_morphism(&g, x, m, n).map_err(|e| e.to_string())?;
                    let rhs = desource::canon_morphism(&g, &tail, &over, &minus(n, &mm))
                        .map_err(|e| e.to_string())?;
                    ensure!(
                        lhs == rhs,
                        "{name}: representative identity fails at m={m} n={n}"
                    );
                    counts[0] += 1;
                }
            }
        }

        // tail uniqueness
        for x in &frags {
            let others: Vec<&Fragment> = frags.iter().filter(|z| z.range() == x.range()).collect();
            for p in ones(&g, IDENTITY_DEPTH + 2).box_below() {
                if !known_meet_ok(x, &p) || !known_meet(x, &p).is_zero() {
                    continue;
                }
                let zero = Degree::zero(g.rank());
                let here = desource::canon_morphism(&g, x, &zero, &p).map_err(|e| e.to_string())?;
                for z in &others {
                    ensure!(
                        known_meet_ok(z, &p) && known_meet(z, &p).is_zero(),
                        "{name}: p ∧ d(z) != 0 for p={p}"
                    );
                    let there =
                        desource::canon_morphism(&g, z, &zero, &p).map_err(|e| e.to_string())?;
                    ensure!(here == there, "{name}: tails differ for p={p}");
                    counts[1] += 1;
                }
            }
        }

        // shifting lifted paths, and the projection round trip
        let small = ones(&g, 1).box_below();
        let span = ones(&g, 2);
        for x in &frags {
            for n in &small {
                for m in &small {
                    let y = desource::lift_fragment(&g, x, n, &(m + &span))
                        .map_err(|e| e.to_string())?;
                    let shifted = desource::factorize_tilde(&g, &y, m)
                        .map_err(|e| e.to_string())?
                        .1;
                    let expected = desource::lift_fragment(&g, x, &(n + m), &span)
                        .map_err(|e| e.to_string())?;
                    ensure!(
                        shifted == expected,
                        "{name}: σ^m of a lift is not the lift at n+m"
                    );
                    if x.known_degree().contains(m) {
                        let moved = boundary::shift(&g, x, m).map_err(|e| e.to_string())?;
                        let alt = desource::lift_fragment(&g, &moved, n, &span)
                            .map_err(|e| e.to_string())?;
                        ensure!(alt == expected, "{name}: σ^m(x) lift disagrees");
                    }
                    counts[2] += 1;
                }

                let y = desource::lift_fragment(&g, x, n, &span).map_err(|e| e.to_string())?;
                let (p, f) = desource::project_infinite(&g, &y).map_err(|e| e.to_string())?;
                ensure!(
                    p == minus(n, &known_meet(x, n)),
                    "{name}: p_y is not n - n ∧ d(x)"
                );
                ensure!(
                    f.known_degree().meet(&p).is_zero(),
                    "{name}: p_y ∧ d(π(y)) != 0"
                );
                let back =
                    desource::lift_fragment(&g, &f, &p, &y.degree()).map_err(|e| e.to_string())?;
                ensure!(
                    back == y,
                    "{name}: lift ∘ project_infinite is not the identity"
                );
                for b in span.box_below() {
                    for a in b.box_below() {
                        let head = desource::factorize_tilde(&g, &y, &b)
                            .map_err(|e| e.to_string())?
                            .0;
                        let seg = desource::factorize_tilde(&g, &head, &a)
                            .map_err(|e| e.to_string())?
                            .1;
                        let expect = piece(&g, &f, &known_meet(&f, &a), &known_meet(&f, &b));
                        ensure!(
                            desource::project(&seg) == expect,
                            "{name}: π(y(a,b)) is not π(y)(a∧d, b∧d)"
                        );
                    }
                }
                counts[3] += 1;
            }
        }

        // periodicity factor
        let search =
            analysis::find_lp(&g, &ones(&g, 2), IDENTITY_DEPTH).map_err(|e| e.to_string())?;
        for c in &search.candidates {
            for x in
                boundary::fragments_from(&g, c.vertex, IDENTITY_DEPTH).map_err(|e| e.to_string())?
            {
                let (mu, alpha, nu) =
                    analysis::periodicity_factor(&g, c.vertex, &c.m, &c.n, &x, IDENTITY_DEPTH)
                        .map_err(|e| e.to_string())?;
                ensure!(mu.degree() != nu.degree(), "{name}: d(μ) = d(ν)");
                let left = g.compose(&mu, &alpha).map_err(|e| e.to_string())?;
                let right = g.compose(&nu, &alpha).map_err(|e| e.to_string())?;
                for y in boundary::fragments_from(&g, alpha.source(), IDENTITY_DEPTH)
                    .map_err(|e| e.to_string())?
                {
                    ensure!(
                        factor_paths_agree(&g, &left, &right, &y),
                        "{name}: μαy != ναy for ({}, {}, {})",
                        g.vertex_name(c.vertex),
                        c.m,
                        c.n
                    );
                    counts[4] += 1;
                }
                ensure!(
                    analysis::verify_periodicity_factor(&g, (&mu, &alpha, &nu), IDENTITY_DEPTH)
                        .map_err(|e| e.to_string())?,
                    "{name}: library factor check disagrees"
                );
            }
        }
    }
    Ok(format!(
        "representatives {}, tails {}, shifted lifts {}, round trips {}, factor checks {}; 0 failures",
        counts[0], counts[1], counts[2], counts[3], counts[4]
    ))
}

/// `left·y` and `right·y` agree as boundary paths as far as `y` is known.
fn factor_paths_agree(g: &KGraph, left: &Path, right: &Path, y: &Fragment) -> bool {
    for i in 0..g.rank() {
        if !y.frontier()[i] && left.degree().get(i) != right.degree().get(i) {
            return false;
        }
    }
    let a = g.compose(left, y.body()).expect("composable");
    let b = g.compose(right, y.body()).expect("composable");
    let common = a.degree().meet(b.degree());
    g.factorize(&a, &common).expect("prefix").0 == g.factorize(&b, &common).expect("prefix").0
}

// 5

/// Decides cofinality from fragment ends when that is conclusive: `Some(true)`
/// if every fragment of depth `|V| + 1` ends reachable from each vertex,
/// `Some(false)` if some fragment avoiding a reachable set is finished or
/// repeats a vertex at the diagonal marks.
fn cofinality_oracle(g: &KGraph) -> Option<bool> {
    let depth = g.vertex_count() as u32 + 1;
    let frags = all_fragments(g, depth);
    let mut undecided = false;
    for v in g.vertices() {
        for f in &frags {
            if g.reaches(f.body().source(), v) {
                continue;
            }
            if f.is_complete() {
                return Some(false);
            }
            let marks: Vec<VertexId> = (0..=depth)
                .map(|t| {
                    let p = ones(g, t).meet(f.body().degree());
                    g.factorize(f.body(), &p).expect("prefix").0.source()
                })
                .collect();
            let distinct: BTreeSet<_> = marks.iter().collect();
            if distinct.len() < marks.len() {
                return Some(false);
            }
            undecided = true;
        }
    }
    if undecided {
        None
    } else {
        Some(true)
    }
}

fn cofinality() -> Result<String, String> {
    let cases = [
        ("cycle3", fixtures::cycle(3), Status::Holds),
        ("two-loops", fixtures::two_loops(), Status::Violated),
        ("omega2_11", fixtures::omega(2, &d(&[1, 1])), Status::Holds),
        ("single-edge", fixtures::single_edge(), Status::Holds),
    ];
    for (name, spec, expected) in cases {
        let g = valid(spec);
        let oracle = cofinality_oracle(&g).ok_or(format!("{name}: oracle is inconclusive"))?;
        ensure!(
            oracle == (expected == Status::Holds),
            "{name}: oracle disagrees with the expected verdict"
        );
        let v = analysis::is_cofinal(&g).map_err(|e| e.to_string())?;
        ensure!(
            v.exact && v.status == expected,
            "{name}: got {:?}",
            v.status
        );
        if expected == Status::Violated {
            let w = v.witness.as_ref().ok_or(format!("{name}: no witness"))?;
            ensure!(
                analysis::replay_lasso(&g, w),
                "{name}: witness does not replay"
            );
        }
    }
    let mut runs = 0;
    let mut contradictions = 0;
    for (name, g) in fixtures::suite() {
        let exact = analysis::is_cofinal(&g).map_err(|e| e.to_string())?.status;
        if let Some(o) = cofinality_oracle(&g) {
            ensure!(
                o == (exact == Status::Holds),
                "{name}: exact verdict disagrees with the oracle"
            );
        }
        for b in 0..=COFINAL_MAX_DEPTH {
            let bounded = analysis::is_cofinal_bounded(&g, b, None).map_err(|e| e.to_string())?;
            let clash = matches!(
                (exact, bounded.status),
                (Status::Holds, Status::Violated) | (Status::Violated, Status::Holds)
            );
            if clash {
                contradictions += 1;
                eprintln!(
                    "{name}: bounded depth {b} says {:?}, exact says {exact:?}",
                    bounded.status
                );
            }
            if bounded.status == Status::Violated {
                match bounded.witness.as_ref() {
                    Some(w @ Evidence::Lasso { .. }) => {
                        ensure!(
                            analysis::replay_lasso(&g, w),
                            "{name}: bounded lasso does not replay"
                        )
                    }
                    Some(Evidence::Fragment {
                        vertex, fragment, ..
                    }) => ensure!(
                        fragment.is_complete() && !g.reaches(fragment.body().source(), *vertex),
                        "{name}: bounded fragment witness does not replay"
                    ),
                    _ => return Err(format!("{name}: bounded violation without witness")),
                }
            }
            runs += 1;
        }
    }
    ensure!(
        contradictions <= ALLOWED_CONTRADICTIONS,
        "{contradictions} bounded/exact contradictions"
    );
    Ok(format!("4 exact verdicts match the oracle, {runs} bounded runs (B <= {COFINAL_MAX_DEPTH}) with 0 contradictions"))
}

// 6

fn transfer() -> Result<String, String> {
    let mut graphs = fixtures::suite();
    graphs.extend(fixtures::random_suite(RANDOM_GRAPHS, RANDOM_MAX_VERTICES));
    let mut contradictions = 0;
    for (name, g) in &graphs {
        let r =
            analysis::transfer_cofinal(g, &ones(g, TRANSFER_COFINAL_PMAX), TRANSFER_COFINAL_DEPTH)
                .map_err(|e| format!("{name}: {e}"))?;
        if r.contradiction {
            contradictions += 1;
            eprintln!(
                "{name}: cofinality {:?} but desourced {:?}",
                r.base.status, r.lifted.status
            );
        }
    }
    let mut lp_checks = 0;
    let mut vertices = 0;
    for (name, g) in fixtures::suite() {
        let region = desource::materialize(&g, &ones(&g, TRANSFER_LP_PMAX))
            .map_err(|e| format!("{name}: {e}"))?;
        let room = ones(&g, TRANSFER_LP_DEPTH);
        for v in region
            .graph
            .vertices()
            .filter(|&v| region.has_room(v, &room))
        {
            vertices += 1;
            let results = analysis::transfer_lp_box(
                &g,
                &region,
                v,
                &ones(&g, TRANSFER_LP_BOX),
                TRANSFER_LP_DEPTH,
            )
            .map_err(|e| format!("{name}: {e}"))?;
            for t in results {
                lp_checks += 1;
                if !t.agrees() {
                    contradictions += 1;
                    eprintln!(
                        "{name}: at {} ({}, {}) base {:?} lifted {:?} bridge {}",
                        region.graph.vertex_name(v),
                        t.m,
                        t.n,
                        t.base,
                        t.lifted,
                        t.bridge_ok
                    );
                }
            }
        }
    }
    ensure!(
        contradictions <= ALLOWED_CONTRADICTIONS,
        "{contradictions} contradictions between the graph and its desourced region"
    );
    Ok(format!(
        "cofinality on {} graphs, local periodicity on {lp_checks} (vertex, m, n) at {vertices} region vertices; 0 contradictions",
        graphs.len()
    ))
}

// 7

fn periodicity_landmarks() -> Result<String, String> {
    let loop1 = valid(fixtures::cycle(1));
    let v =
        analysis::has_lp_at(&loop1, 0, &d(&[1]), &d(&[0]), LP_DEPTH).map_err(|e| e.to_string())?;
    ensure!(
        v.status == Status::Holds,
        "single loop: (1, 0) is {:?}",
        v.status
    );

    let c3 = valid(fixtures::cycle(3));
    let wide = analysis::find_lp(&c3, &d(&[LP_DEPTH]), LP_DEPTH).map_err(|e| e.to_string())?;
    let mut expected = Vec::new();
    for vertex in c3.vertices() {
        for (m, n) in analysis::degree_pairs(&d(&[LP_DEPTH])) {
            if (m.get(0) - n.get(0)) % 3 == 0 {
                expected.push(LpCandidate { vertex, m, n });
            }
        }
    }
    ensure!(
        wide.candidates == expected,
        "cycle3 candidates {:?}",
        wide.candidates
    );
    let narrow = analysis::find_lp(&c3, &d(&[2]), LP_DEPTH).map_err(|e| e.to_string())?;
    ensure!(narrow.candidates.is_empty(), "cycle3 has a pair below 2");
    let first = analysis::find_lp(&c3, &d(&[LP_BOX]), LP_DEPTH).map_err(|e| e.to_string())?;
    ensure!(
        first.candidates.first()
            == Some(&LpCandidate {
                vertex: 0,
                m: d(&[3]),
                n: d(&[0])
            }),
        "cycle3 witness is not (3, 0)"
    );
    let again = analysis::find_lp(&c3, &d(&[LP_BOX]), LP_DEPTH).map_err(|e| e.to_string())?;
    ensure!(first == again, "cycle3 search is not deterministic");

    let torus = valid(fixtures::torus2());
    let t = analysis::has_lp_at(&torus, 0, &d(&[1, 0]), &d(&[0, 0]), LP_DEPTH)
        .map_err(|e| e.to_string())?;
    ensure!(
        t.status == Status::Holds,
        "torus2: ((1,0),(0,0)) is {:?}",
        t.status
    );

    let omega = valid(fixtures::omega(2, &d(&[1, 1])));
    let o =
        analysis::find_lp(&omega, &d(&[LP_BOX, LP_BOX]), LP_DEPTH).map_err(|e| e.to_string())?;
    ensure!(
        o.candidates.is_empty(),
        "omega2_11 keeps {:?}",
        o.candidates
    );
    ensure!(
        o == analysis::find_lp(&omega, &d(&[LP_BOX, LP_BOX]), LP_DEPTH).unwrap(),
        "omega search is not deterministic"
    );
    Ok(format!(
        "loop (1,0), cycle3 exactly the multiples of 3 up to {LP_DEPTH} ({} candidates), torus2 ((1,0),(0,0)), omega2_11 none of {} refuted",
        expected.len(),
        o.refuted
    ))
}

// 8

fn strong_weak() -> Result<String, String> {
    let mut mismatches = Vec::new();
    let mut with_lp = 0;
    let mut derived_pass = 0;
    let mut derived_total = 0;
    for (name, g) in fixtures::suite() {
        let bound = ones(&g, STRONG_BOX);
        let weak = analysis::find_lp(&g, &bound, LP_DEPTH).map_err(|e| e.to_string())?;
        let strong = analysis::find_strong(&g, &bound, LP_DEPTH).map_err(|e| e.to_string())?;
        if weak.candidates.is_empty() != strong.is_empty() {
            mismatches.push(name.clone());
        }
        if !weak.candidates.is_empty() {
            with_lp += 1;
        }
        for c in &strong {
            let v = analysis::has_lp_at(&g, c.vertex, &c.m, &c.n, LP_DEPTH)
                .map_err(|e| e.to_string())?;
            ensure!(
                v.status == Status::Holds,
                "{name}: strong pair fails the weak form"
            );
            for f in boundary::fragments_from(&g, c.vertex, LP_DEPTH).map_err(|e| e.to_string())? {
                let known = f.known_degree();
                ensure!(
                    known.contains(&c.m) && known.contains(&c.n),
                    "{name}: strong pair exceeds d(x)"
                );
            }
        }
        for c in &weak.candidates {
            for s in analysis::strong_candidates(&g, c.vertex, &c.m, &c.n) {
                derived_total += 1;
                let v = analysis::strong_lp_check(&g, s.vertex, &s.m, &s.n, LP_DEPTH)
                    .map_err(|e| e.to_string())?;
                derived_pass += usize::from(v.status == Status::Holds);
            }
        }
    }
    ensure!(mismatches.is_empty(), "existence differs on {mismatches:?}");
    Ok(format!(
        "{} fixtures, {with_lp} with local periodicity, 0 mismatches; {derived_pass}/{derived_total} derived strong candidates pass",
        fixtures::suite().len()
    ))
}

// 9

fn two_row_example() -> Result<String, String> {
    let g = valid(fixtures::figure1(FIGURE1_COLUMNS));
    let frontier = fixtures::figure1_frontier(&g, FIGURE1_COLUMNS);
    let v = g.vertex_id("v").ok_or("no vertex v")?;
    let all = boundary::fragments_from(&g, v, FIGURE1_DEPTH).map_err(|e| e.to_string())?;
    let interior: Vec<Fragment> = all
        .into_iter()
        .filter(|f| {
            boundary::vertices_visited(&g, f.body())
                .iter()
                .all(|&u| !frontier[u])
        })
        .collect();
    ensure!(!interior.is_empty(), "no interior fragments");
    let (m, n) = (d(&[1, 2]), d(&[0, 2]));
    let lp = analysis::lp_on_fragments(&g, v, &interior, &m, &n, FIGURE1_DEPTH)
        .map_err(|e| e.to_string())?;
    ensure!(
        lp.status == Status::Holds,
        "local periodicity (1,2), (0,2) fails: {:?}",
        lp.witness_record(&g)
    );
    for x in &interior {
        let mm = known_meet(x, &m);
        let nn = known_meet(x, &n);
        ensure!(minus(&m, &mm) == minus(&n, &nn), "degree condition fails");
        let span = minus(&ones(&g, FIGURE1_DEPTH), &mm.join(&nn));
        let a = boundary::shift(&g, x, &mm).map_err(|e| e.to_string())?;
        let b = boundary::shift(&g, x, &nn).map_err(|e| e.to_string())?;
        let (ca, cb) = (known_meet(&a, &span), known_meet(&b, &span));
        ensure!(
            ca == cb
                && g.factorize(a.body(), &ca).unwrap().0 == g.factorize(b.body(), &cb).unwrap().0,
            "shifted tails differ"
        );
    }
    let mut refuted = 0;
    for (p, q) in analysis::degree_pairs(&ones(&g, FIGURE1_STRONG_BOX)) {
        let s = analysis::strong_on_fragments(&g, v, &interior, &p, &q, FIGURE1_DEPTH)
            .map_err(|e| e.to_string())?;
        ensure!(
            s.status == Status::Violated,
            "strong form ({p}, {q}) passes at v"
        );
        refuted += 1;
    }
    Ok(format!(
        "{} interior fragments of depth {FIGURE1_DEPTH} satisfy (1,2), (0,2); all {refuted} strong pairs up to (2,2) refuted",
        interior.len()
    ))
}

// 10

fn oracle_lattice(spec: &SkeletonSpec) -> Vec<VertexSet> {
    let n = spec.vertices.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let inside = |v: usize| mask & (1 << v) != 0;
        let hereditary = spec
            .edges
            .iter()
            .all(|e| !inside(e.range) || inside(e.source));
        let saturated = (0..n).filter(|&v| !inside(v)).all(|v| {
            (0..spec.rank).all(|c| {
                let sources: Vec<usize> = spec
                    .edges
                    .iter()
                    .filter(|e| e.range == v && e.color == c)
                    .map(|e| e.source)
                    .collect();
                sources.is_empty() || !sources.iter().all(|&s| inside(s))
            })
        });
        if hereditary && saturated {
            out.push((0..n).filter(|&v| inside(v)).collect::<VertexSet>());
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn ideal_lattice() -> Result<String, String> {
    let mut graphs = 0;
    let mut sets = 0;
    for (name, g) in fixtures::suite() {
        if g.vertex_count() > LATTICE_MAX_VERTICES {
            continue;
        }
        graphs += 1;
        let lattice = ideals::enumerate_sat_hered(&g).map_err(|e| e.to_string())?;
        ensure!(
            lattice == oracle_lattice(g.spec()),
            "{name}: lattice differs from the power-set filter"
        );
        ensure!(
            lattice == ideals::brute_force_sat_hered(&g).map_err(|e| e.to_string())?,
            "{name}: library brute force differs"
        );
        for h in &lattice {
            let q = ideals::quotient(&g, h).map_err(|e| format!("{name}: {e}"))?;
            ensure!(
                KGraph::validate(q.spec().clone()).is_ok(),
                "{name}: quotient does not revalidate"
            );
            ensure!(
                q.is_locally_convex(),
                "{name}: quotient is not locally convex"
            );
            sets += 1;
        }
    }
    let c3 = valid(fixtures::cycle(3));
    let report = ideals::gauge_invariance_criterion(&c3, &d(&[LP_BOX]), LP_DEPTH)
        .map_err(|e| e.to_string())?;
    let failure = report
        .first_failure()
        .ok_or("cycle3 passes the gauge criterion")?;
    ensure!(
        failure.set.is_empty(),
        "cycle3 fails at {:?} rather than the empty set",
        failure.set
    );
    let omega = valid(fixtures::omega(2, &d(&[1, 1])));
    let report = ideals::gauge_invariance_criterion(&omega, &d(&[LP_BOX, LP_BOX]), LP_DEPTH)
        .map_err(|e| e.to_string())?;
    ensure!(
        report.all_gauge_invariant(),
        "omega2_11 fails the gauge criterion"
    );
    Ok(format!(
        "{graphs} lattices match the power-set filter, {sets} quotients revalidate; cycle3 fails at H = ∅, omega2_11 passes at depth {LP_DEPTH}"
    ))
}

// 11

fn simplicity() -> Result<String, String> {
    let omega = valid(fixtures::omega(2, &d(&[1, 1])));
    let r = analysis::simplicity_verdict(&omega, &d(&[LP_BOX, LP_BOX]), LP_DEPTH)
        .map_err(|e| e.to_string())?;
    ensure!(
        r.simple && r.simplicity().status == Status::Holds,
        "omega2_11 is not simple"
    );
    ensure!(
        r.cofinality.exact && !r.aperiodicity.exact,
        "exactness labels are wrong"
    );

    let c3 = valid(fixtures::cycle(3));
    let r =
        analysis::simplicity_verdict(&c3, &d(&[LP_BOX]), LP_DEPTH).map_err(|e| e.to_string())?;
    ensure!(
        !r.simple && r.cofinality.status == Status::Holds,
        "cycle3 verdict is wrong"
    );
    ensure!(
        r.simplicity().witness
            == Some(Evidence::Candidate(LpCandidate {
                vertex: 0,
                m: d(&[3]),
                n: d(&[0])
            })),
        "cycle3 witness is not local periodicity (3, 0)"
    );

    let two = valid(fixtures::two_loops());
    let r = analysis::simplicity_verdict(&two, &d(&[LP_BOX, LP_BOX]), LP_DEPTH)
        .map_err(|e| e.to_string())?;
    ensure!(
        !r.simple && r.cofinality.status == Status::Violated,
        "two-loops verdict is wrong"
    );
    let w = r.simplicity().witness.ok_or("two-loops has no witness")?;
    ensure!(
        matches!(w, Evidence::Lasso { .. }) && analysis::replay_lasso(&two, &w),
        "two-loops witness is not a replayable cofinality lasso"
    );
    Ok("omega2_11 Simple, cycle3 NotSimple via (3, 0), two-loops NotSimple via cofinality".into())
}

// 12

fn repo_fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn kgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kgraph"))
        .args(args)
        .output()
        .expect("kgraph runs")
}

fn io_and_cli() -> Result<String, String> {
    let mut corpus: Vec<(String, String)> = Vec::new();
    for (name, _) in fixtures::NAMES {
        let args: Vec<String> = match *name {
            "omega" => vec!["2".into(), "2,2".into()],
            "cycle" => vec!["3".into()],
            "figure1" => vec!["6".into()],
            _ => Vec::new(),
        };
        let spec = fixtures::named(name, &args)?;
        corpus.push((name.to_string(), io::print(&KgDocument::from_spec(&spec))));
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(repo_fixtures())
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "kg"))
        .collect();
    files.sort();
    for path in &files {
        corpus.push((
            path.display().to_string(),
            std::fs::read_to_string(path).map_err(|e| e.to_string())?,
        ));
    }
    for (name, text) in &corpus {
        let doc = io::parse(text).map_err(|e| format!("{name}: {e}"))?;
        ensure!(
            io::print(&doc) == *text,
            "{name}: print ∘ parse is not byte-identical"
        );
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cycle3 = repo_fixtures().join("cycle3.kg");
    let golden = std::fs::read_to_string(repo_fixtures().join("golden/cycle3-simplicity.json"))
        .map_err(|e| e.to_string())?;
    let mut runs = Vec::new();
    for i in 0..2 {
        let out = dir.path().join(format!("run{i}.json"));
        let o = kgraph(&[
            "check",
            cycle3.to_str().unwrap(),
            "simplicity",
            "--json",
            out.to_str().unwrap(),
        ]);
        ensure!(
            o.status.code() == Some(0),
            "check exited {:?}",
            o.status.code()
        );
        let stdout = String::from_utf8_lossy(&o.stdout).to_string();
        ensure!(
            stdout.starts_with("NotSimple") && stdout.contains("(3), (0)"),
            "unexpected check output: {stdout}"
        );
        runs.push(std::fs::read_to_string(&out).map_err(|e| e.to_string())?);
    }
    ensure!(runs[0] == runs[1], "JSON reports differ between runs");
    ensure!(
        runs[0] == golden,
        "JSON report differs from the golden file"
    );
    let json: serde_json::Value = serde_json::from_str(&runs[0]).map_err(|e| e.to_string())?;
    for key in [
        "tool_version",
        "graph_hash",
        "command",
        "parameters",
        "verdicts",
    ] {
        ensure!(json.get(key).is_some(), "report lacks {key}");
    }

    let mut codes = Vec::new();
    let ok = kgraph(&["validate", cycle3.to_str().unwrap()]);
    codes.push(("validate", ok.status.code(), 0));

    let broken = dir.path().join("broken.kg");
    let mut doc = io::parse(
        &std::fs::read_to_string(repo_fixtures().join("omega2_11.kg"))
            .map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let sq = doc.squares.pop().ok_or("omega2_11.kg has no square")?;
    std::fs::write(&broken, io::print(&doc)).map_err(|e| e.to_string())?;
    let bad = kgraph(&["validate", broken.to_str().unwrap()]);
    let stderr = String::from_utf8_lossy(&bad.stderr).to_string();
    ensure!(
        stderr.contains(&format!("{}.{}", sq.f, sq.g2))
            && stderr.contains(&format!("{}.{}", sq.g, sq.f2)),
        "missing pairs not listed: {stderr}"
    );
    codes.push(("broken square", bad.status.code(), 2));

    let garbled = dir.path().join("garbled.kg");
    std::fs::write(&garbled, "kgraph rank=1\nvertex a\nedge e a -> a @ 1\n")
        .map_err(|e| e.to_string())?;
    let parse_err = kgraph(&["validate", garbled.to_str().unwrap()]);
    let stderr = String::from_utf8_lossy(&parse_err.stderr).to_string();
    ensure!(
        stderr.contains(":3:8:"),
        "parse error lacks its location: {stderr}"
    );
    codes.push(("parse error", parse_err.status.code(), 1));
    codes.push(("usage error", kgraph(&["frobnicate"]).status.code(), 1));
    codes.push((
        "unknown vertex",
        kgraph(&[
            "boundary",
            cycle3.to_str().unwrap(),
            "--from",
            "nope",
            "--depth",
            "2",
        ])
        .status
        .code(),
        1,
    ));
    let convex = dir.path().join("non-convex.kg");
    std::fs::write(
        &convex,
        io::print(&KgDocument::from_spec(&fixtures::non_convex())),
    )
    .map_err(|e| e.to_string())?;
    codes.push((
        "non-convex analysis",
        kgraph(&["check", convex.to_str().unwrap(), "cofinal"])
            .status
            .code(),
        2,
    ));
    for (what, got, want) in &codes {
        ensure!(*got == Some(*want), "{what}: exit {got:?}, expected {want}");
    }
    ensure!(
        kgraph_cli::exit_code(&KgError::Invariant("breach".into())) == 3,
        "invariant breach does not map to 3"
    );
    ensure!(
        kgraph_cli::exit_code(&KgError::IncompleteSquares(Vec::new())) == 2,
        "incomplete squares do not map to 2"
    );

    let dot = kgraph(&[
        "desource",
        repo_fixtures().join("single-edge.kg").to_str().unwrap(),
        "--pmax",
        "3",
        "--dot",
    ]);
    let dot = String::from_utf8_lossy(&dot.stdout).to_string();
    ensure!(
        dot.contains("\"v+3\" -> \"v+2\""),
        "desourced DOT lacks the tail: {dot}"
    );

    let mut emitted = 0;
    for (name, _) in fixtures::NAMES {
        let mut args = vec!["fixtures", "emit", name];
        match *name {
            "omega" => args.extend(["2", "1,1"]),
            "cycle" => args.push("3"),
            "figure1" => args.push("4"),
            _ => {}
        }
        let o = kgraph(&args);
        ensure!(o.status.code() == Some(0), "fixtures emit {name} failed");
        emitted += 1;
    }
    Ok(format!(
        "{} documents round-trip, golden JSON stable, {} exit-code cases, {emitted} fixtures emitted",
        corpus.len(),
        codes.len() + 2
    ))
}
