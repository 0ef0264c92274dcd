//! Ring families: the rank-3 rings `K(k, l, m, n)`, group rings, a few
//! small named fusion rings, and the bounded sweep over the rank-3 family.
//!
//! `K(k, l, m, n)` has basis `1, X, Y` with
//!
//! ```text
//! X^2 = 1 + mX + kY,   Y^2 = 1 + lX + nY,   XY = YX = kX + lY
//! ```
//!
//! and is associative exactly when `k^2 + l^2 = lm + kn + 1`. Swapping `X`
//! and `Y` maps `K(k, l, m, n)` to `K(l, k, n, m)`, so the sweep only visits
//! `l <= k`.

use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use thiserror::Error;

use crate::obstruction::{obstruction_report, ObstructionReport, Verdict};
use crate::ring::{validate, BasedRing, RingError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FamilyError {
    #[error("constraint k^2 + l^2 = lm + kn + 1 violated: {lhs} != {rhs}")]
    ConstraintViolated { lhs: u128, rhs: u128 },
    #[error("parameter {0} does not fit the structure-constant range")]
    ParameterTooLarge(u64),
    #[error("constructed ring failed validation: {0}")]
    ValidationFailed(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("k_max must be at least 1")]
    EmptySweep,
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Parameters of `K(k, l, m, n)` satisfying `k^2 + l^2 = lm + kn + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rank3Params {
    pub k: u64,
    pub l: u64,
    pub m: u64,
    pub n: u64,
}

impl Rank3Params {
    pub fn new(k: u64, l: u64, m: u64, n: u64) -> Result<Self, FamilyError> {
        let (k2, l2) = (u128::from(k), u128::from(l));
        let lhs = k2 * k2 + l2 * l2;
        let rhs = l2 * u128::from(m) + k2 * u128::from(n) + 1;
        if lhs != rhs {
            return Err(FamilyError::ConstraintViolated { lhs, rhs });
        }
        Ok(Rank3Params { k, l, m, n })
    }

    pub fn as_tuple(self) -> (u64, u64, u64, u64) {
        (self.k, self.l, self.m, self.n)
    }
}

impl fmt::Display for Rank3Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K({},{},{},{})", self.k, self.l, self.m, self.n)
    }
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| (*s).to_owned()).collect()
}

/// Builds `K(k, l, m, n)` and validates it.
pub fn build_rank3(params: Rank3Params) -> Result<BasedRing, FamilyError> {
    let to_i64 = |v: u64| i64::try_from(v).map_err(|_| FamilyError::ParameterTooLarge(v));
    let (k, l, m, n) = (
        to_i64(params.k)?,
        to_i64(params.l)?,
        to_i64(params.m)?,
        to_i64(params.n)?,
    );
    let structure = vec![
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        vec![vec![0, 1, 0], vec![1, m, k], vec![0, k, l]],
        vec![vec![0, 0, 1], vec![0, k, l], vec![1, l, n]],
    ];
    let ring = BasedRing::new(
        labels(&["1", "X", "Y"]),
        structure,
        vec![0],
        Some(vec![0, 1, 2]),
    )?;
    let report = validate(&ring);
    if !report.passed() {
        return Err(FamilyError::ValidationFailed(report.summary()));
    }
    Ok(ring)
}

/// Group ring with basis the group elements. `table[a][b]` is the index of
/// `a * b`.
pub fn build_group_ring(table: &[Vec<usize>]) -> Result<BasedRing, FamilyError> {
    let order = table.len();
    if order == 0 {
        return Err(FamilyError::NotAGroup("empty table".into()));
    }
    if let Some(a) = table.iter().position(|row| row.len() != order) {
        return Err(FamilyError::NotAGroup(format!(
            "row {a} has the wrong length"
        )));
    }
    let is_perm = |values: Vec<usize>| {
        let mut seen = vec![false; order];
        values
            .into_iter()
            .all(|x| x < order && !std::mem::replace(&mut seen[x], true))
    };
    for (a, row) in table.iter().enumerate() {
        if !is_perm(row.clone()) {
            return Err(FamilyError::NotAGroup(format!(
                "row {a} is not a permutation"
            )));
        }
        if !is_perm((0..order).map(|b| table[b][a]).collect()) {
            return Err(FamilyError::NotAGroup(format!(
                "column {a} is not a permutation"
            )));
        }
    }
    let identity = (0..order)
        .find(|&e| (0..order).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| FamilyError::NotAGroup("no identity element".into()))?;
    for a in 0..order {
        for b in 0..order {
            for c in 0..order {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(FamilyError::NotAGroup(format!(
                        "associativity fails at ({a}, {b}, {c})"
                    )));
                }
            }
        }
    }
    let inverse: Vec<usize> = (0..order)
        .map(|a| {
            (0..order)
                .find(|&b| table[a][b] == identity)
                .expect("Latin square rows contain the identity")
        })
        .collect();
    let mut flat = vec![0i64; order * order * order];
    for a in 0..order {
        for b in 0..order {
            flat[(a * order + b) * order + table[a][b]] = 1;
        }
    }
    let labels = (0..order).map(|g| format!("g{g}")).collect();
    Ok(BasedRing::from_flat(
        labels,
        flat,
        vec![identity],
        Some(inverse),
    )?)
}

pub fn cyclic_group_table(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect()
}

/// Cayley table of the symmetric group on three letters. Elements are the
/// permutations of `{0, 1, 2}` in lexicographic order of their one-line
/// notation (index 0 is the identity); the product is composition
/// `(a b)(x) = a(b(x))`.
pub fn s3_table() -> Vec<Vec<usize>> {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| index([a[b[0]], a[b[1]], a[b[2]]]))
                .collect()
        })
        .collect()
}

pub fn cyclic_group_ring(n: usize) -> BasedRing {
    build_group_ring(&cyclic_group_table(n)).expect("cyclic table is a group")
}

pub fn s3_group_ring() -> BasedRing {
    build_group_ring(&s3_table()).expect("S3 table is a group")
}

/// `1, X` with `X^2 = 1 + X`.
pub fn fibonacci() -> BasedRing {
    BasedRing::new(
        labels(&["1", "X"]),
        vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]],
        vec![0],
        Some(vec![0, 1]),
    )
    .expect("well-formed")
}

/// `1, sigma, psi` with `sigma^2 = 1 + psi`, `psi^2 = 1`, `sigma psi = sigma`.
pub fn ising() -> BasedRing {
    BasedRing::new(
        labels(&["1", "sigma", "psi"]),
        vec![
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]],
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]],
        ],
        vec![0],
        Some(vec![0, 1, 2]),
    )
    .expect("well-formed")
}

/// All `(m, n) >= 0` with `l m + k n = k^2 + l^2 - 1`, sorted.
///
/// When `l = 0` the equation does not involve `m`; the free variable is
/// then bounded by `m <= k^2 + l^2 - 1`, the same bound every solution
/// satisfies automatically when `l > 0`.
pub fn rank3_solutions(k: u64, l: u64) -> Vec<(u64, u64)> {
    let target = match (k * k + l * l).checked_sub(1) {
        Some(t) => t,
        None => return Vec::new(),
    };
    match (k, l) {
        (0, 0) => Vec::new(),
        (0, _) => free_variable_solutions(l, target)
            .map(|(n, m)| (m, n))
            .collect(),
        (_, 0) => free_variable_solutions(k, target).collect(),
        _ => {
            let g = k.gcd(&l);
            if target % g != 0 {
                return Vec::new();
            }
            // k n = target (mod l)  =>  n = n0 (mod l / g)
            let (kg, lg, tg) = (k / g, l / g, target / g);
            let n0 = if lg == 1 {
                0
            } else {
                let inv = mod_inverse(kg % lg, lg);
                ((tg % lg) as u128 * inv as u128 % lg as u128) as u64
            };
            let mut out: Vec<(u64, u64)> = (n0..=target / k)
                .step_by(lg as usize)
                .map(|n| {
                    let rest = target - k * n;
                    debug_assert_eq!(rest % l, 0);
                    (rest / l, n)
                })
                .collect();
            out.sort_unstable();
            out
        }
    }
}

/// Solutions of `c * x = target` with the other variable free in
/// `0..=target`; yields `(free, x)`.
fn free_variable_solutions(c: u64, target: u64) -> impl Iterator<Item = (u64, u64)> {
    let x = target.is_multiple_of(c).then_some(target / c);
    x.into_iter()
        .flat_map(move |x| (0..=target).map(move |free| (free, x)))
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i128) as u64
}

/// One ring of the sweep. Per-ring failures are recorded, never raised.
#[derive(Clone, Debug, PartialEq)]
pub struct EnumerationRow {
    pub params: Rank3Params,
    pub result: Result<ObstructionReport, String>,
}

impl EnumerationRow {
    pub fn verdict(&self) -> Option<Verdict> {
        self.result.as_ref().ok().map(|r| r.verdict)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnumerationSummary {
    pub rings: usize,
    pub errored: usize,
    pub obstructed_d_number: usize,
    pub not_obstructed: usize,
    pub indeterminate: usize,
    /// Rings obstructed by cyclotomicity while every codegree is a d-number.
    pub cyclotomic_only: Vec<Rank3Params>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EnumerateOptions {
    /// Worker threads; `None` uses the hardware parallelism.
    pub threads: Option<usize>,
}

fn process(params: Rank3Params) -> EnumerationRow {
    let result = build_rank3(params)
        .map_err(|e| e.to_string())
        .and_then(|ring| obstruction_report(&ring, params.to_string()).map_err(|e| e.to_string()));
    EnumerationRow { params, result }
}

fn cell_rows(k: u64, l: u64) -> Vec<EnumerationRow> {
    rank3_solutions(k, l)
        .into_iter()
        .map(|(m, n)| process(Rank3Params { k, l, m, n }))
        .collect()
}

/// Sweeps every admissible `K(k, l, m, n)` with `l <= k < k_max`, calling
/// `emit` once per ring in `(k, l, m, n)` order on the calling thread.
/// Work is spread over a thread pool; the output does not depend on the
/// thread count.
pub fn enumerate_rank3(
    k_max: u64,
    options: &EnumerateOptions,
    mut emit: impl FnMut(&EnumerationRow),
) -> Result<EnumerationSummary, FamilyError> {
    if k_max == 0 {
        return Err(FamilyError::EmptySweep);
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = options.threads {
        builder = builder.num_threads(t.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| FamilyError::ThreadPool(e.to_string()))?;

    let mut summary = EnumerationSummary::default();
    const CHUNK: u64 = 16;
    let mut k0 = 0;
    while k0 < k_max {
        let k1 = (k0 + CHUNK).min(k_max);
        let cells: Vec<(u64, u64)> = (k0..k1)
            .flat_map(|k| (0..=k).map(move |l| (k, l)))
            .collect();
        let rows: Vec<Vec<EnumerationRow>> =
            pool.install(|| cells.par_iter().map(|&(k, l)| cell_rows(k, l)).collect());
        for row in rows.iter().flatten() {
            summary.rings += 1;
            match row.verdict() {
                None => summary.errored += 1,
                Some(Verdict::ObstructedDNumber) => summary.obstructed_d_number += 1,
                Some(Verdict::ObstructedCyclotomicOnly) => summary.cyclotomic_only.push(row.params),
                Some(Verdict::NotObstructed) => summary.not_obstructed += 1,
                Some(Verdict::Indeterminate) => summary.indeterminate += 1,
            }
            emit(row);
        }
        k0 = k1;
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Axiom;

    #[test]
    fn constraint_checked() {
        assert!(Rank3Params::new(2, 1, 0, 2).is_ok());
        assert_eq!(
            Rank3Params::new(1, 1, 1, 1),
            Err(FamilyError::ConstraintViolated { lhs: 2, rhs: 3 })
        );
        let p = Rank3Params::new(911, 463, 1799, 232).unwrap();
        assert_eq!(911u64 * 911 + 463 * 463, 1_044_290);
        assert!(build_rank3(p).is_ok());
    }

    #[test]
    fn k2102_left_multiplication_by_x() {
        let ring = build_rank3(Rank3Params::new(2, 1, 0, 2).unwrap()).unwrap();
        let lx = ring.left_mult_matrix(1).unwrap();
        let want =
            crate::exact::IntMatrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 2], vec![0, 2, 1]])
                .unwrap();
        assert_eq!(lx, want);
    }

    #[test]
    fn perturbed_k2102_breaks_associativity() {
        let ring = build_rank3(Rank3Params::new(2, 1, 0, 2).unwrap()).unwrap();
        let report = validate(&ring.with_entry(1, 1, 2, 3));
        let assoc = report.check(Axiom::Associativity);
        assert!(!assoc.passed);
        assert_eq!(assoc.witnesses[0].len(), 4);
    }

    #[test]
    fn group_tables() {
        let z2 = cyclic_group_ring(2);
        assert_eq!(z2.rank(), 2);
        assert_eq!(z2.dual(), &[0, 1]);
        let s3 = s3_group_ring();
        assert_eq!(s3.rank(), 6);
        assert!(!s3.is_commutative());
        assert!(validate(&s3).passed());
        // Transpositions are self-inverse, 3-cycles are swapped.
        assert_eq!(s3.dual(), &[0, 1, 2, 4, 3, 5]);
    }

    #[test]
    fn non_associative_latin_square_rejected() {
        // Unit 0, but 1 * (1 * 2) != (1 * 1) * 2.
        let table = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = build_group_ring(&table).unwrap_err();
        assert!(matches!(err, FamilyError::NotAGroup(ref s) if s.contains("associativity")));
        assert!(matches!(
            build_group_ring(&[vec![0, 0], vec![1, 1]]),
            Err(FamilyError::NotAGroup(_))
        ));
    }

    #[test]
    fn solutions_of_small_cells() {
        assert_eq!(rank3_solutions(2, 1), vec![(0, 2), (2, 1), (4, 0)]);
        assert!(rank3_solutions(0, 0).is_empty());
        // k = 1, l = 0: n = 0 forced and m is free with bound 0.
        assert_eq!(rank3_solutions(1, 0), vec![(0, 0)]);
        assert!(rank3_solutions(2, 0).is_empty());
        assert_eq!(rank3_solutions(3, 2), vec![(0, 4), (3, 2), (6, 0)]);
    }

    #[test]
    fn named_rings_are_valid() {
        assert!(validate(&fibonacci()).passed());
        assert!(validate(&ising()).passed());
    }

    #[test]
    fn small_sweep_is_ordered_and_thread_independent() {
        let collect = |threads| {
            let mut rows = Vec::new();
            let summary = enumerate_rank3(
                12,
                &EnumerateOptions {
                    threads: Some(threads),
                },
                |r| rows.push(r.clone()),
            )
            .unwrap();
            (rows, summary)
        };
        let (rows1, s1) = collect(1);
        let (rows3, s3) = collect(3);
        assert_eq!(rows1, rows3);
        assert_eq!(s1, s3);
        assert!(rows1.windows(2).all(|w| w[0].params < w[1].params));
        assert!(rows1.iter().any(|r| r.params.as_tuple() == (2, 1, 0, 2)));
        assert_eq!(s1.errored, 0);
    }
}
