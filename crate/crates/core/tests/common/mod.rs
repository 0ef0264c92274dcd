#![allow(dead_code)]

use std::path::PathBuf;

use codegree::cli::{load_ring, load_smatrix};
use codegree::ring::BasedRing;
use codegree::verlinde::SMatrix;

pub const RING_FIXTURES: [&str; 6] = [
    "fib.json",
    "z2.json",
    "z3.json",
    "s3.json",
    "k2102.json",
    "k911.json",
];

pub const SMATRIX_FIXTURES: [&str; 2] = ["fib_smatrix.json", "ising_smatrix.json"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn fixture_ring(name: &str) -> BasedRing {
    load_ring(&fixture_path(name)).unwrap()
}

pub fn fixture_rings() -> Vec<(&'static str, BasedRing)> {
    RING_FIXTURES
        .iter()
        .map(|&n| (n, fixture_ring(n)))
        .collect()
}

pub fn fixture_smatrix(name: &str) -> SMatrix {
    load_smatrix(&fixture_path(name), None).unwrap()
}
