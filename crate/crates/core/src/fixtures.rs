//! Built-in example graphs and a seeded generator of random 2-graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::degree::Degree;
use crate::kgraph::{EdgeId, KGraph, SkeletonSpec};

/// Adds the unique square for every composable two-colour pair. Fails when a
/// pair has no completion or more than one.
pub fn force_squares(spec: &mut SkeletonSpec) -> Result<(), String> {
    let edges = spec.edges.clone();
    let mut found = Vec::new();
    for (f, ef) in edges.iter().enumerate() {
        for (g2, eg2) in edges.iter().enumerate() {
            if eg2.color <= ef.color || eg2.range != ef.source {
                continue;
            }
            let mut candidates = Vec::new();
            for (g, eg) in edges.iter().enumerate() {
                if eg.color != eg2.color || eg.range != ef.range {
                    continue;
                }
                for (f2, ef2) in edges.iter().enumerate() {
                    if ef2.color == ef.color && ef2.range == eg.source && ef2.source == eg2.source {
                        candidates.push((g, f2));
                    }
                }
            }
            match candidates.as_slice() {
                [(g, f2)] => found.push((f, g2, *g, *f2)),
                [] => return Err(format!("{}.{} has no completion", ef.name, eg2.name)),
                _ => return Err(format!("{}.{} has several completions", ef.name, eg2.name)),
            }
        }
    }
    let mut seen = std::collections::HashSet::new();
    for &(_, _, g, f2) in &found {
        if !seen.insert((g, f2)) {
            return Err(format!(
                "{}.{} completes more than one pair",
                edges[g].name, edges[f2].name
            ));
        }
    }
    for (f, g2, g, f2) in found {
        spec.add_square(f, g2, g, f2);
    }
    Ok(())
}

fn coords_name(p: &Degree) -> String {
    p.coords()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join("_")
}

/// `Ω_{k,m}`: vertices `p <= m`, an edge of colour `i` from `p + e_i` to `p`.
pub fn omega(k: usize, m: &Degree) -> SkeletonSpec {
    assert_eq!(m.rank(), k);
    let mut spec = SkeletonSpec::new(k);
    let points = m.box_below();
    for p in &points {
        spec.add_vertex(format!("p{}", coords_name(p)));
    }
    let index = |p: &Degree| points.iter().position(|q| q == p).expect("point in box");
    for p in &points {
        for i in 0..k {
            let next = p.with(i, p.get(i) + 1);
            if next.le(m) {
                spec.add_edge(
                    format!("e{}_{}", i + 1, coords_name(p)),
                    i,
                    index(&next),
                    index(p),
                );
            }
        }
    }
    force_squares(&mut spec).expect("squares of Ω are unique");
    spec
}

/// The cycle of length `len` as a 1-graph; edge `e{t}` runs from `v{t+1}` to `v{t}`.
pub fn cycle(len: usize) -> SkeletonSpec {
    assert!(len >= 1);
    let mut spec = SkeletonSpec::new(1);
    for t in 0..len {
        spec.add_vertex(format!("v{t}"));
    }
    for t in 0..len {
        spec.add_edge(format!("e{t}"), 0, (t + 1) % len, t);
    }
    spec
}

/// One vertex with a loop in each of two colours.
pub fn torus2() -> SkeletonSpec {
    let mut spec = SkeletonSpec::new(2);
    let v = spec.add_vertex("v");
    spec.add_edge("a", 0, v, v);
    spec.add_edge("b", 1, v, v);
    force_squares(&mut spec).expect("one square");
    spec
}

/// `e` from `v` to `u`.
pub fn single_edge() -> SkeletonSpec {
    let mut spec = SkeletonSpec::new(1);
    let u = spec.add_vertex("u");
    let v = spec.add_vertex("v");
    spec.add_edge("e", 0, v, u);
    spec
}

/// Two disjoint loops.
pub fn two_loops() -> SkeletonSpec {
    let mut spec = SkeletonSpec::new(1);
    let a = spec.add_vertex("a");
    let b = spec.add_vertex("b");
    spec.add_edge("la", 0, a, a);
    spec.add_edge("lb", 0, b, b);
    spec
}

/// A loop at `v` and an edge `e` from `u` into it.
pub fn loop_with_entry() -> SkeletonSpec {
    let mut spec = SkeletonSpec::new(1);
    let v = spec.add_vertex("v");
    let u = spec.add_vertex("u");
    spec.add_edge("l", 0, v, v);
    spec.add_edge("e", 0, u, v);
    spec
}

/// A 2-cycle and a 3-cycle side by side.
pub fn two_components() -> SkeletonSpec {
    let mut spec = SkeletonSpec::new(1);
    let names = ["a", "b", "c", "d", "e"];
    let ids: Vec<_> = names.iter().map(|n| spec.add_vertex(*n)).collect();
    spec.add_edge("ab", 0, ids[1], ids[0]);
    spec.add_edge("ba", 0, ids[0], ids[1]);
    spec.add_edge("cd", 0, ids[3], ids[2]);
    spec.add_edge("de", 0, ids[4], ids[3]);
    spec.add_edge("ec", 0, ids[2], ids[4]);
    spec
}

/// Two distinct squares sharing the pair of edges at `v`.
pub fn parallel_squares() -> SkeletonSpec {
    let mut spec = SkeletonSpec::new(2);
    let [v, a, b, c, d] = ["v", "a", "b", "c", "d"].map(|n| spec.add_vertex(n));
    spec.add_edge("f", 0, a, v);
    spec.add_edge("g", 1, b, v);
    spec.add_edge("g2", 1, c, a);
    spec.add_edge("h2", 1, d, a);
    spec.add_edge("f2", 0, c, b);
    spec.add_edge("k2", 0, d, b);
    force_squares(&mut spec).expect("squares are forced");
    spec
}

/// Edges of two colours into `v` whose sources cannot continue past each other.
pub fn non_convex() -> SkeletonSpec {
    let mut spec = SkeletonSpec::new(2);
    let v = spec.add_vertex("v");
    let a = spec.add_vertex("a");
    let b = spec.add_vertex("b");
    spec.add_edge("f", 0, a, v);
    spec.add_edge("g", 1, b, v);
    spec
}

/// A one-vertex 3-coloured presentation whose faces are complete but glued
/// by non-commuting permutations, so the cube condition fails.
pub fn bad_cube() -> SkeletonSpec {
    let mut spec = SkeletonSpec::new(3);
    let v = spec.add_vertex("v");
    let a = spec.add_edge("a", 0, v, v);
    let b = spec.add_edge("b", 1, v, v);
    let c: Vec<EdgeId> = (0..3)
        .map(|t| spec.add_edge(format!("c{t}"), 2, v, v))
        .collect();
    spec.add_square(a, b, b, a);
    let sigma = [1, 0, 2];
    let tau = [0, 2, 1];
    for t in 0..3 {
        spec.add_square(a, c[t], c[sigma[t]], a);
        spec.add_square(b, c[t], c[tau[t]], b);
    }
    spec
}

/// The first `cols` columns of the two-row example with a looped vertex
/// `x` feeding the bottom row and a looped vertex `w` feeding the top row.
///
/// Colour-1 edges run leftwards along each row, colour-2 edges run from the
/// top row down to the bottom row, from `x` to every bottom vertex and from
/// `w` to every top vertex. The last column carries colour-1 loops.
pub fn figure1(cols: usize) -> SkeletonSpec {
    assert!(cols >= 1);
    let mut spec = SkeletonSpec::new(2);
    let bottom: Vec<_> = (0..cols)
        .map(|i| {
            spec.add_vertex(if i == 0 {
                "v".to_string()
            } else {
                format!("v{i}")
            })
        })
        .collect();
    let top: Vec<_> = (0..cols)
        .map(|i| spec.add_vertex(format!("t{i}")))
        .collect();
    let w = spec.add_vertex("w");
    let x = spec.add_vertex("x");
    for i in 0..cols {
        let (nb, nt) = if i + 1 < cols {
            (bottom[i + 1], top[i + 1])
        } else {
            (bottom[i], top[i])
        };
        spec.add_edge(format!("h{i}"), 0, nb, bottom[i]);
        spec.add_edge(format!("k{i}"), 0, nt, top[i]);
    }
    spec.add_edge("lw", 0, w, w);
    spec.add_edge("lx", 0, x, x);
    for i in 0..cols {
        spec.add_edge(format!("up{i}"), 1, top[i], bottom[i]);
        spec.add_edge(format!("dx{i}"), 1, x, bottom[i]);
        spec.add_edge(format!("dw{i}"), 1, w, top[i]);
    }
    force_squares(&mut spec).expect("figure1 squares are forced");
    spec
}

/// Vertices of `figure1(cols)` that only exist because of the truncation.
pub fn figure1_frontier(g: &KGraph, cols: usize) -> Vec<bool> {
    let last = cols - 1;
    let names = [
        if last == 0 {
            "v".to_string()
        } else {
            format!("v{last}")
        },
        format!("t{last}"),
    ];
    g.vertices()
        .map(|v| names.iter().any(|n| n == g.vertex_name(v)))
        .collect()
}

/// Names accepted by [`named`], with their argument synopsis.
pub const NAMES: &[(&str, &str)] = &[
    ("omega", "omega <k> <m>"),
    ("cycle", "cycle <L>"),
    ("torus2", "torus2"),
    ("single-edge", "single-edge"),
    ("two-loops", "two-loops"),
    ("figure1", "figure1 <N>"),
    ("loop-with-entry", "loop-with-entry"),
    ("two-components", "two-components"),
    ("parallel-squares", "parallel-squares"),
    ("non-convex", "non-convex"),
    ("bad-cube", "bad-cube"),
];

/// Builds a fixture from its name and arguments.
pub fn named(name: &str, args: &[String]) -> Result<SkeletonSpec, String> {
    let num = |i: usize| -> Result<usize, String> {
        args.get(i)
            .ok_or_else(|| format!("{name} needs more arguments"))?
            .parse()
            .map_err(|e| format!("bad argument {:?}: {e}", args[i]))
    };
    let spec = match name {
        "omega" => {
            let k = num(0)?;
            if k == 0 {
                return Err("rank must be at least 1".into());
            }
            let m = Degree::parse_for_rank(args.get(1).ok_or("omega needs <k> <m>")?, k)?;
            omega(k, &m)
        }
        "cycle" => {
            let len = num(0)?;
            if len == 0 {
                return Err("cycle length must be at least 1".into());
            }
            cycle(len)
        }
        "figure1" => {
            let cols = num(0)?;
            if cols == 0 {
                return Err("figure1 needs at least one column".into());
            }
            figure1(cols)
        }
        "torus2" => torus2(),
        "single-edge" => single_edge(),
        "two-loops" => two_loops(),
        "loop-with-entry" => loop_with_entry(),
        "two-components" => two_components(),
        "parallel-squares" => parallel_squares(),
        "non-convex" => non_convex(),
        "bad-cube" => bad_cube(),
        _ => return Err(format!("unknown fixture {name}")),
    };
    Ok(spec)
}

/// The locally convex fixtures used across the test suites, by display name.
pub fn suite() -> Vec<(String, KGraph)> {
    let d = |c: &[u32]| Degree::new(c.to_vec());
    let specs = vec![
        ("omega2_11".to_string(), omega(2, &d(&[1, 1]))),
        ("omega2_22".to_string(), omega(2, &d(&[2, 2]))),
        ("omega1_3".to_string(), omega(1, &d(&[3]))),
        ("cycle1".to_string(), cycle(1)),
        ("cycle2".to_string(), cycle(2)),
        ("cycle3".to_string(), cycle(3)),
        ("cycle5".to_string(), cycle(5)),
        ("torus2".to_string(), torus2()),
        ("single-edge".to_string(), single_edge()),
        ("two-loops".to_string(), two_loops()),
        ("loop-with-entry".to_string(), loop_with_entry()),
        ("two-components".to_string(), two_components()),
        ("parallel-squares".to_string(), parallel_squares()),
        ("figure1_3".to_string(), figure1(3)),
    ];
    specs
        .into_iter()
        .map(|(n, s)| (n, KGraph::validate(s).expect("fixture validates")))
        .collect()
}

/// 0/1 adjacency of a random 1-graph; `adj[s][r]` counts edges from `s` to `r`.
fn random_adjacency(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Vec<Vec<u32>> {
    (0..n)
        .map(|_| (0..n).map(|_| u32::from(rng.gen_bool(density))).collect())
        .collect()
}

fn matmul(a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|t| a[i][t] * b[t][j]).sum())
                .collect()
        })
        .collect()
}

fn components(adj: &[Vec<u32>]) -> Vec<usize> {
    let n = adj.len();
    let mut comp: Vec<usize> = (0..n).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in 0..n {
                if adj[i][j] > 0 || adj[j][i] > 0 {
                    let c = comp[i].min(comp[j]);
                    if comp[i] != c || comp[j] != c {
                        comp[i] = c;
                        comp[j] = c;
                        changed = true;
                    }
                }
            }
        }
    }
    comp
}

/// Builds a 2-graph from commuting adjacency matrices, pairing the two
/// factorisations of each `(s, r)` by a random bijection.
fn from_commuting(rng: &mut ChaCha8Rng, a1: &[Vec<u32>], a2: &[Vec<u32>]) -> SkeletonSpec {
    debug_assert_eq!(matmul(a1, a2), matmul(a2, a1));
    let n = a1.len();
    let mut spec = SkeletonSpec::new(2);
    for v in 0..n {
        spec.add_vertex(format!("v{v}"));
    }
    for (color, adj) in [a1, a2].into_iter().enumerate() {
        let letter = if color == 0 { "a" } else { "b" };
        let mut count = 0;
        for s in 0..n {
            for r in 0..n {
                for _ in 0..adj[s][r] {
                    spec.add_edge(format!("{letter}{count}"), color, s, r);
                    count += 1;
                }
            }
        }
    }
    let edges = spec.edges.clone();
    for r in 0..n {
        for s in 0..n {
            let mut low_first = Vec::new();
            let mut high_first = Vec::new();
            for (x, ex) in edges.iter().enumerate() {
                if ex.range != r {
                    continue;
                }
                for (y, ey) in edges.iter().enumerate() {
                    if ey.range != ex.source || ey.source != s || ex.color == ey.color {
                        continue;
                    }
                    if ex.color == 0 {
                        low_first.push((x, y));
                    } else {
                        high_first.push((x, y));
                    }
                }
            }
            debug_assert_eq!(low_first.len(), high_first.len());
            high_first.shuffle(rng);
            for ((f, g2), (g, f2)) in low_first.into_iter().zip(high_first) {
                spec.add_square(f, g2, g, f2);
            }
        }
    }
    spec
}

/// A random 2-graph with at most `max_vertices` vertices. Not necessarily
/// locally convex.
pub fn random_2graph(seed: u64, max_vertices: usize) -> SkeletonSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_vertices = max_vertices.max(1);
    match rng.gen_range(0..3) {
        0 => {
            // product of two 1-graphs
            let p = rng.gen_range(1..=max_vertices.min(4));
            let q = rng.gen_range(1..=(max_vertices / p).clamp(1, 4));
            let e = random_adjacency(&mut rng, p, 0.5);
            let f = random_adjacency(&mut rng, q, 0.5);
            let n = p * q;
            let mut a1 = vec![vec![0; n]; n];
            let mut a2 = vec![vec![0; n]; n];
            for s in 0..n {
                for r in 0..n {
                    let (s1, s2) = (s / q, s % q);
                    let (r1, r2) = (r / q, r % q);
                    if s2 == r2 {
                        a1[s][r] = e[s1][r1];
                    }
                    if s1 == r1 {
                        a2[s][r] = f[s2][r2];
                    }
                }
            }
            from_commuting(&mut rng, &a1, &a2)
        }
        1 => {
            let n = rng.gen_range(1..=max_vertices);
            let a1 = random_adjacency(&mut rng, n, 0.35);
            from_commuting(&mut rng, &a1, &a1.clone())
        }
        _ => {
            let n = rng.gen_range(1..=max_vertices);
            let a1 = random_adjacency(&mut rng, n, 0.35);
            let comp = components(&a1);
            let loops: Vec<u32> = (0..n).map(|_| rng.gen_range(0..3)).collect();
            let mut a2 = vec![vec![0; n]; n];
            for v in 0..n {
                a2[v][v] = loops[comp[v]];
            }
            from_commuting(&mut rng, &a1, &a2)
        }
    }
}

/// `count` distinct locally convex random 2-graphs, seeded deterministically.
pub fn random_suite(count: usize, max_vertices: usize) -> Vec<(String, KGraph)> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < count {
        let spec = random_2graph(seed, max_vertices);
        if let Ok(g) = KGraph::validate(spec) {
            if g.is_locally_convex() && g.edge_count() > 0 {
                out.push((format!("random{seed}"), g));
            }
        }
        seed += 1;
    }
    out
}
