use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::spectrum::{alpha_from, commute_pairwise};
use super::{BasedRing, RingError};
use crate::exact::{numeric_roots, IntMatrix};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Relative tolerance when matching character codegrees against the
/// alpha-spectrum roots.
pub const CODEGREE_MATCH_TOLERANCE: f64 = 1e-6;

const MAX_GENERIC_ATTEMPTS: u64 = 64;

/// Numeric character table of a commutative based ring: `values[c][j]` is
/// `chi_c(b_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable {
    pub values: Vec<Vec<Complex64>>,
    pub tolerance: f64,
}

impl CharacterTable {
    pub fn rank(&self) -> usize {
        self.values.len()
    }

    /// Largest deviation of `chi(b_i) chi(b_j) - sum_k N[i][j][k] chi(b_k)`
    /// over all rows and pairs, relative to the size of the terms.
    pub fn multiplicativity_defect(&self, ring: &BasedRing) -> f64 {
        let r = ring.rank();
        let mut worst = 0.0f64;
        for row in &self.values {
            for i in 0..r {
                for j in 0..r {
                    let lhs = row[i] * row[j];
                    let rhs: Complex64 = (0..r).map(|k| row[k] * ring.n(i, j, k) as f64).sum();
                    let scale = lhs.norm().max(rhs.norm()).max(1.0);
                    worst = worst.max((lhs - rhs).norm() / scale);
                }
            }
        }
        worst
    }
}

fn approx_cmp(a: Complex64, b: Complex64, tol: f64) -> Ordering {
    let scale = a.norm().max(b.norm()).max(1.0) * tol;
    if (a.re - b.re).abs() > scale {
        return b.re.total_cmp(&a.re);
    }
    if (a.im - b.im).abs() > scale {
        return b.im.total_cmp(&a.im);
    }
    Ordering::Equal
}

/// Solves `a x = b` in place by Gaussian elimination with partial pivoting.
fn solve(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))?;
        if a[pivot][col].norm() == 0.0 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f.is_zero() {
                continue;
            }
            let (upper, lower) = a.split_at_mut(row);
            for (target, v) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *target -= f * v;
            }
            let v = b[col];
            b[row] -= f * v;
        }
    }
    let mut x = vec![Complex64::zero(); n];
    for row in (0..n).rev() {
        let s: Complex64 = (row + 1..n).map(|c| a[row][c] * x[c]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

fn to_complex(m: &IntMatrix) -> Vec<Vec<Complex64>> {
    m.rows()
        .map(|r| {
            r.iter()
                .map(|v| Complex64::new(v.to_f64().unwrap_or(f64::NAN), 0.0))
                .collect()
        })
        .collect()
}

fn mat_vec(m: &[Vec<Complex64>], v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn normalize(v: &mut [Complex64]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|z| *z /= norm);
    }
}

/// Eigenvector of `m` for the approximate eigenvalue `lambda` by inverse
/// iteration with a slightly perturbed shift.
fn eigenvector(m: &[Vec<Complex64>], lambda: Complex64) -> Option<Vec<Complex64>> {
    let n = m.len();
    let shift = lambda + Complex64::new(1e-10, 1e-10) * lambda.norm().max(1.0);
    let shifted: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { m[i][j] - shift } else { m[i][j] })
                .collect()
        })
        .collect();
    let mut v: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(1.0 + 0.1 * i as f64, 0.05 * i as f64))
        .collect();
    for _ in 0..4 {
        v = solve(shifted.clone(), v)?;
        normalize(&mut v);
    }
    Some(v)
}

/// Characters of a commutative based ring, recovered as the joint
/// eigenvalues of the left multiplication operators.
///
/// A generic integer combination `M = sum c_j L_j` with squarefree
/// characteristic polynomial (checked exactly) has one-dimensional
/// eigenspaces, each a common eigenvector of all `L_j`; the character value
/// `chi(b_j)` is the Rayleigh quotient of `L_j` on that vector.
pub fn characters_numeric(ring: &BasedRing, tol: f64) -> Result<CharacterTable, RingError> {
    let mats = ring.left_mult_matrices();
    if !commute_pairwise(&mats) {
        return Err(RingError::NotCommutative);
    }
    let r = ring.rank();
    let generic = (0..MAX_GENERIC_ATTEMPTS)
        .map(|attempt| {
            mats.iter()
                .enumerate()
                .fold(IntMatrix::zeros(r), |acc, (j, m)| {
                    let c = 1 + (j as u64 * (2 * attempt + 3) + attempt * attempt) % 31;
                    &acc + &(m * &IntMatrix::scalar(r, &BigInt::from(c)))
                })
        })
        .find(|m| {
            let cp = m.char_poly();
            cp.gcd(&cp.derivative()).deg() == 0
        })
        .ok_or_else(|| {
            RingError::EigenFailure("no combination with simple spectrum found".into())
        })?;
    let eigenvalues = numeric_roots(&generic.char_poly(), tol)?;
    let generic_c = to_complex(&generic);
    let ops: Vec<Vec<Vec<Complex64>>> = mats.iter().map(to_complex).collect();

    let mut values = Vec::with_capacity(r);
    for lambda in eigenvalues {
        let v = eigenvector(&generic_c, lambda)
            .ok_or_else(|| RingError::EigenFailure(format!("singular solve at {lambda}")))?;
        let row: Vec<Complex64> = ops
            .iter()
            .map(|op| {
                let w = mat_vec(op, &v);
                v.iter().zip(&w).map(|(a, b)| a.conj() * b).sum()
            })
            .collect();
        values.push(row.into_iter().map(|z| snap(z, tol)).collect::<Vec<_>>());
    }
    values.sort_by(|a: &Vec<Complex64>, b: &Vec<Complex64>| {
        a.iter()
            .zip(b)
            .map(|(x, y)| approx_cmp(*x, *y, tol.sqrt()))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    });
    let table = CharacterTable {
        values,
        tolerance: tol,
    };
    let defect = table.multiplicativity_defect(ring);
    if defect.is_nan() || defect > tol.sqrt() {
        return Err(RingError::EigenFailure(format!(
            "recovered characters are not multiplicative (defect {defect:e})"
        )));
    }
    Ok(table)
}

fn snap(z: Complex64, tol: f64) -> Complex64 {
    if z.im.abs() <= tol * z.norm().max(1.0) {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

fn codegree_of_row(ring: &BasedRing, row: &[Complex64]) -> Complex64 {
    row.iter().zip(ring.dual()).map(|(x, &d)| x * row[d]).sum()
}

/// Greedily pairs every codegree with an unused root within `rel_tol`.
pub(crate) fn match_multisets(
    left: &[Complex64],
    right: &[Complex64],
    rel_tol: f64,
) -> Result<(), String> {
    if left.len() != right.len() {
        return Err(format!(
            "{} values against {} roots",
            left.len(),
            right.len()
        ));
    }
    let mut used = vec![false; right.len()];
    for &x in left {
        let best = right
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .min_by(|a, b| (a.1 - x).norm().total_cmp(&(b.1 - x).norm()));
        match best {
            Some((i, y)) if (y - x).norm() <= rel_tol * x.norm().max(1.0) => used[i] = true,
            _ => return Err(format!("no root matches {x}")),
        }
    }
    Ok(())
}

/// `f_chi = sum_b chi(b) chi(dual b)` for every row, cross-checked against
/// the numeric roots of the alpha characteristic polynomial.
pub fn codegrees_via_characters(
    ring: &BasedRing,
    table: &CharacterTable,
) -> Result<Vec<Complex64>, RingError> {
    let codegrees: Vec<Complex64> = table
        .values
        .iter()
        .map(|row| snap(codegree_of_row(ring, row), table.tolerance))
        .collect();
    let mats = ring.left_mult_matrices();
    let roots = numeric_roots(&alpha_from(&mats, ring.dual()).char_poly(), table.tolerance)?;
    match_multisets(&codegrees, &roots, CODEGREE_MATCH_TOLERANCE)
        .map_err(RingError::CodegreeMismatch)?;
    Ok(codegrees)
}

/// Codegree of the character that is positive on every basis element.
/// Checked against the largest real root of the alpha characteristic
/// polynomial.
pub fn fp_dimension(ring: &BasedRing, tol: f64) -> Result<f64, RingError> {
    let table = characters_numeric(ring, tol)?;
    let fp_row = table
        .values
        .iter()
        .find(|row| row.iter().all(|z| z.im == 0.0 && z.re > tol.sqrt()))
        .ok_or(RingError::NoPerronCharacter)?;
    let fp = codegree_of_row(ring, fp_row).re;
    let roots = numeric_roots(&ring.alpha_matrix().char_poly(), tol)?;
    let largest = roots
        .iter()
        .filter(|z| z.im == 0.0)
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    if (fp - largest).abs() > CODEGREE_MATCH_TOLERANCE * largest.abs().max(1.0) {
        return Err(RingError::CodegreeMismatch(format!(
            "Perron character codegree {fp} differs from largest alpha root {largest}"
        )));
    }
    Ok(fp)
}
