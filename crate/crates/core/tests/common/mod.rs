#![allow(dead_code)]

use std::sync::OnceLock;

use kgraph_core::fixtures;
use kgraph_core::{Degree, KGraph, Path};

/// The named suite followed by a batch of small random 2-graphs.
pub fn graphs() -> &'static [(String, KGraph)] {
    static CELL: OnceLock<Vec<(String, KGraph)>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut all = fixtures::suite();
        all.extend(fixtures::random_suite(12, 6));
        all
    })
}

pub fn every_path(g: &KGraph, bound: u32) -> Vec<Path> {
    let b = Degree::splat(g.rank(), bound);
    g.vertices().flat_map(|v| g.paths_within(v, &b)).collect()
}

pub fn degree(rank: usize, seed: &[u32]) -> Degree {
    Degree::new((0..rank).map(|i| seed[i % seed.len()]).collect())
}
