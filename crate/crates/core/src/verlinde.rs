//! Numeric modular data: S-matrix identities, the characters and fusion
//! rules they determine, and codegrees `1 / s_0i^2` and dimensions
//! `s_0i / s_00`.
//!
//! Everything here is floating point with an explicit tolerance. Exact
//! verdicts go through the integer fusion ring recovered by
//! [`fusion_from_s`], never through the floats.

use num_complex::Complex64;
use serde::Deserialize;
use thiserror::Error;

use crate::exact::numeric_roots;
use crate::obstruction::{d_number_verdict, DNumberComponent};
use crate::ring::{match_multisets, validate, BasedRing, CharacterTable, RingError};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Relative tolerance for matching codegrees against alpha roots.
pub const ROUND_TRIP_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerlindeError {
    #[error("malformed S-matrix: {0}")]
    Malformed(String),
    #[error("S-matrix failed validation: {0}")]
    Invalid(String),
    #[error("fusion coefficient N[{j}][{k}][{m}] = {value} is not an integer")]
    NonIntegral {
        j: usize,
        k: usize,
        m: usize,
        value: Complex64,
    },
    #[error("fusion coefficient N[{j}][{k}][{m}] = {value} is negative")]
    Negative {
        j: usize,
        k: usize,
        m: usize,
        value: i64,
    },
    #[error("recovered fusion ring: {0}")]
    Ring(#[from] RingError),
    #[error("round trip mismatch: {0}")]
    Mismatch(String),
}

/// A square S-matrix with its duality permutation. Index 0 is the unit
/// object.
#[derive(Clone, Debug, PartialEq)]
pub struct SMatrix {
    s: Vec<Vec<Complex64>>,
    dual: Vec<usize>,
    tolerance: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SMatrixFile {
    rank: usize,
    dual: Vec<usize>,
    s: Vec<Vec<[f64; 2]>>,
    tolerance: Option<f64>,
}

impl SMatrix {
    /// Checks shapes, the duality permutation and the tolerance; the
    /// S-matrix identities are checked by [`validate_smatrix`].
    pub fn new(
        s: Vec<Vec<Complex64>>,
        dual: Vec<usize>,
        tolerance: f64,
    ) -> Result<Self, VerlindeError> {
        let r = s.len();
        if r == 0 {
            return Err(VerlindeError::Malformed("rank must be positive".into()));
        }
        if let Some(i) = s.iter().position(|row| row.len() != r) {
            return Err(VerlindeError::Malformed(format!(
                "row {i} has {} entries, expected {r}",
                s[i].len()
            )));
        }
        if s.iter()
            .flatten()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(VerlindeError::Malformed("entries must be finite".into()));
        }
        if dual.len() != r {
            return Err(VerlindeError::Malformed(format!(
                "dual has length {}, expected {r}",
                dual.len()
            )));
        }
        let mut seen = vec![false; r];
        for &d in &dual {
            if d >= r || std::mem::replace(&mut seen[d], true) {
                return Err(VerlindeError::Malformed("dual is not a permutation".into()));
            }
        }
        if !(tolerance.is_finite() && tolerance > 0.0) {
            return Err(VerlindeError::Malformed(format!(
                "tolerance must be positive, got {tolerance}"
            )));
        }
        Ok(SMatrix { s, dual, tolerance })
    }

    /// Parses the JSON file format. `tolerance` overrides the file's value.
    pub fn from_json(text: &str, tolerance: Option<f64>) -> Result<Self, VerlindeError> {
        let file: SMatrixFile =
            serde_json::from_str(text).map_err(|e| VerlindeError::Malformed(e.to_string()))?;
        if file.s.len() != file.rank {
            return Err(VerlindeError::Malformed(format!(
                "rank is {} but s has {} rows",
                file.rank,
                file.s.len()
            )));
        }
        let s = file
            .s
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|[re, im]| Complex64::new(re, im))
                    .collect()
            })
            .collect();
        let tol = tolerance.or(file.tolerance).unwrap_or(DEFAULT_TOLERANCE);
        SMatrix::new(s, file.dual, tol)
    }

    pub fn rank(&self) -> usize {
        self.s.len()
    }

    pub fn dual(&self) -> &[usize] {
        &self.dual
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.s[i][j]
    }

    pub fn with_tolerance(&self, tolerance: f64) -> Result<Self, VerlindeError> {
        SMatrix::new(self.s.clone(), self.dual.clone(), tolerance)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SMatrixReport {
    pub max_symmetry_deviation: f64,
    pub max_orthogonality_deviation: f64,
    /// Smallest `|s_0i|`.
    pub min_unit_row_modulus: f64,
    /// Some `s_0i` is not a positive real number.
    pub non_unitary: bool,
    pub tolerance: f64,
}

impl SMatrixReport {
    pub fn symmetric(&self) -> bool {
        self.max_symmetry_deviation <= self.tolerance
    }

    pub fn orthogonal(&self) -> bool {
        self.max_orthogonality_deviation <= self.tolerance
    }

    pub fn unit_row_nonzero(&self) -> bool {
        self.min_unit_row_modulus > self.tolerance
    }

    pub fn passed(&self) -> bool {
        self.symmetric() && self.orthogonal() && self.unit_row_nonzero()
    }

    pub fn summary(&self) -> String {
        let mut failed = Vec::new();
        if !self.symmetric() {
            failed.push(format!(
                "symmetry (deviation {:e})",
                self.max_symmetry_deviation
            ));
        }
        if !self.orthogonal() {
            failed.push(format!(
                "orthogonality (deviation {:e})",
                self.max_orthogonality_deviation
            ));
        }
        if !self.unit_row_nonzero() {
            failed.push("unit row has a zero entry".into());
        }
        if failed.is_empty() {
            "all S-matrix identities hold".into()
        } else {
            format!("failed: {}", failed.join("; "))
        }
    }
}

/// Checks `s_ij = s_ji`, `sum_j s_ij s_(j*)k = delta_ik` and `s_0i != 0`.
pub fn validate_smatrix(s: &SMatrix) -> SMatrixReport {
    let r = s.rank();
    let mut sym = 0.0f64;
    let mut orth = 0.0f64;
    for i in 0..r {
        for k in 0..r {
            sym = sym.max((s.s[i][k] - s.s[k][i]).norm());
            let sum: Complex64 = (0..r).map(|j| s.s[i][j] * s.s[s.dual[j]][k]).sum();
            let delta = if i == k { 1.0 } else { 0.0 };
            orth = orth.max((sum - delta).norm());
        }
    }
    let unit_row = &s.s[0];
    SMatrixReport {
        max_symmetry_deviation: sym,
        max_orthogonality_deviation: orth,
        min_unit_row_modulus: unit_row
            .iter()
            .map(|z| z.norm())
            .fold(f64::INFINITY, f64::min),
        non_unitary: unit_row
            .iter()
            .any(|z| z.re <= 0.0 || z.im.abs() > s.tolerance),
        tolerance: s.tolerance,
    }
}

fn require_valid(s: &SMatrix) -> Result<(), VerlindeError> {
    let report = validate_smatrix(s);
    if report.passed() {
        Ok(())
    } else {
        Err(VerlindeError::Invalid(report.summary()))
    }
}

/// Row `i` is the character `chi_i(X_j) = s_ij / s_0i`.
pub fn characters_from_s(s: &SMatrix) -> Result<CharacterTable, VerlindeError> {
    require_valid(s)?;
    let r = s.rank();
    let values = (0..r)
        .map(|i| (0..r).map(|j| s.s[i][j] / s.s[0][i]).collect())
        .collect();
    Ok(CharacterTable {
        values,
        tolerance: s.tolerance,
    })
}

/// Verlinde formula `N_jk^m = sum_i s_ji s_ki conj(s_mi) / s_0i`, rounded
/// and validated as a based ring with unit `X_0` and the given duality.
pub fn fusion_from_s(s: &SMatrix) -> Result<BasedRing, VerlindeError> {
    require_valid(s)?;
    let r = s.rank();
    let mut flat = Vec::with_capacity(r * r * r);
    for j in 0..r {
        for k in 0..r {
            for m in 0..r {
                let value: Complex64 = (0..r)
                    .map(|i| s.s[j][i] * s.s[k][i] * s.s[m][i].conj() / s.s[0][i])
                    .sum();
                let rounded = value.re.round();
                if (value - rounded).norm() > s.tolerance {
                    return Err(VerlindeError::NonIntegral { j, k, m, value });
                }
                let n = rounded as i64;
                if n < 0 {
                    return Err(VerlindeError::Negative { j, k, m, value: n });
                }
                flat.push(n);
            }
        }
    }
    let labels = (0..r).map(|i| format!("X{i}")).collect();
    let ring = BasedRing::from_flat(labels, flat, vec![0], Some(s.dual.clone()))?;
    let report = validate(&ring);
    if !report.passed() {
        return Err(RingError::Invalid(report.summary()).into());
    }
    Ok(ring)
}

/// Formal codegrees `1 / s_0i^2`.
pub fn codegrees_from_s(s: &SMatrix) -> Result<Vec<Complex64>, VerlindeError> {
    require_valid(s)?;
    Ok(s.s[0].iter().map(|z| (z * z).inv()).collect())
}

/// Dimensions `s_0i / s_00`.
pub fn dims_from_s(s: &SMatrix) -> Result<Vec<Complex64>, VerlindeError> {
    require_valid(s)?;
    Ok(s.s[0].iter().map(|z| z / s.s[0][0]).collect())
}

/// Result of checking modular data against its recovered fusion ring.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundTrip {
    pub report: SMatrixReport,
    pub ring: BasedRing,
    pub codegrees: Vec<Complex64>,
    pub dims: Vec<Complex64>,
    /// Numeric roots of the exact alpha characteristic polynomial.
    pub alpha_roots: Vec<Complex64>,
    /// `|sum_i dim_i^2 - 1 / s_00^2|`.
    pub global_dimension_deviation: f64,
    pub multiplicativity_defect: f64,
    /// Exact d-number verdict on the recovered ring.
    pub d_number: DNumberComponent,
}

/// Recovers the fusion ring and checks codegrees, dimensions and
/// characters against it.
pub fn round_trip(s: &SMatrix) -> Result<RoundTrip, VerlindeError> {
    let report = validate_smatrix(s);
    if !report.passed() {
        return Err(VerlindeError::Invalid(report.summary()));
    }
    let ring = fusion_from_s(s)?;
    let codegrees = codegrees_from_s(s)?;
    let dims = dims_from_s(s)?;
    let table = characters_from_s(s)?;
    let alpha_roots =
        numeric_roots(&ring.alpha_matrix().char_poly(), s.tolerance).map_err(RingError::from)?;
    match_multisets(&codegrees, &alpha_roots, ROUND_TRIP_TOLERANCE)
        .map_err(VerlindeError::Mismatch)?;
    let dim_sq: Complex64 = dims.iter().map(|d| d * d).sum();
    let global_dimension_deviation = (dim_sq - codegrees[0]).norm();
    if global_dimension_deviation > ROUND_TRIP_TOLERANCE * codegrees[0].norm().max(1.0) {
        return Err(VerlindeError::Mismatch(format!(
            "sum of squared dimensions {dim_sq} differs from 1/s_00^2 = {}",
            codegrees[0]
        )));
    }
    let multiplicativity_defect = table.multiplicativity_defect(&ring);
    if multiplicativity_defect > s.tolerance.sqrt() {
        return Err(VerlindeError::Mismatch(format!(
            "characters are not multiplicative (defect {multiplicativity_defect:e})"
        )));
    }
    let d_number = d_number_verdict(&ring)?;
    Ok(RoundTrip {
        report,
        ring,
        codegrees,
        dims,
        alpha_roots,
        global_dimension_deviation,
        multiplicativity_defect,
        d_number,
    })
}

/// Fibonacci modular data:
/// `S = (2 / sqrt 5) [[sin(pi/5), sin(2pi/5)], [sin(2pi/5), -sin(pi/5)]]`.
pub fn fibonacci_smatrix() -> SMatrix {
    use std::f64::consts::PI;
    let c = 2.0 / 5f64.sqrt();
    let (a, b) = (c * (PI / 5.0).sin(), c * (2.0 * PI / 5.0).sin());
    let s = vec![
        vec![Complex64::new(a, 0.0), Complex64::new(b, 0.0)],
        vec![Complex64::new(b, 0.0), Complex64::new(-a, 0.0)],
    ];
    SMatrix::new(s, vec![0, 1], DEFAULT_TOLERANCE).expect("well-formed")
}

/// Ising modular data: `S = 1/2 [[1, sqrt 2, 1], [sqrt 2, 0, -sqrt 2], [1, -sqrt 2, 1]]`.
pub fn ising_smatrix() -> SMatrix {
    let h = 0.5;
    let q = 0.5 * 2f64.sqrt();
    let s = [[h, q, h], [q, 0.0, -q], [h, -q, h]]
        .iter()
        .map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)).collect())
        .collect();
    SMatrix::new(s, vec![0, 1, 2], DEFAULT_TOLERANCE).expect("well-formed")
}

/// Approximate real values sorted ascending; for tests and reports.
pub fn sorted_real_parts(values: &[Complex64]) -> Vec<f64> {
    let mut out: Vec<f64> = values.iter().map(|z| z.re).collect();
    out.sort_by(f64::total_cmp);
    out
}

impl Default for SMatrix {
    fn default() -> Self {
        SMatrix::new(
            vec![vec![Complex64::new(1.0, 0.0)]],
            vec![0],
            DEFAULT_TOLERANCE,
        )
        .expect("rank one is well-formed")
    }
}
