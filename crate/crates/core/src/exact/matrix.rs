use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::IntPolynomial;

/// Square matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn scalar(n: usize, s: &BigInt) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = s.clone();
        }
        m
    }

    /// Builds from rows; returns `None` unless the rows form a square array.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(IntMatrix {
            n,
            entries: rows.iter().flatten().cloned().map(Into::into).collect(),
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(f(r, c));
            }
        }
        IntMatrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.n + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn commutes_with(&self, other: &IntMatrix) -> bool {
        self * other == other * self
    }

    fn add_diagonal(&mut self, s: &BigInt) {
        for i in 0..self.n {
            self.entries[i * self.n + i] += s;
        }
    }

    /// Evaluates `p` at this matrix by Horner's rule.
    pub fn eval_poly(&self, p: &IntPolynomial) -> IntMatrix {
        let mut acc = IntMatrix::zeros(self.n);
        for c in p.coeffs().iter().rev() {
            acc = &acc * self;
            acc.add_diagonal(c);
        }
        acc
    }

    /// `det(tI - M)`, monic of degree `n`.
    ///
    /// Faddeev–LeVerrier with exact integer division: with `M_0 = 0`,
    /// `c_n = 1`, `M_k = A M_(k-1) + c_(n-k+1) I` and
    /// `c_(n-k) = -tr(A M_k) / k`. Every division is exact over the integers.
    pub fn char_poly(&self) -> IntPolynomial {
        let n = self.n;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = IntMatrix::zeros(n);
        for k in 1..=n {
            let mut next = self * &m;
            next.add_diagonal(&coeffs[n - k + 1]);
            let am = self * &next;
            let tr = am.trace();
            debug_assert!((&tr % BigInt::from(k)).is_zero());
            coeffs[n - k] = -tr / BigInt::from(k);
            m = next;
        }
        IntPolynomial::new(coeffs)
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        IntMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(
                self.rows()
                    .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()),
            )
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn char_poly_small_cases() {
        assert_eq!(
            IntMatrix::identity(2).char_poly(),
            IntPolynomial::from_desc(&[1, -2, 1])
        );
        assert_eq!(
            m(&[&[2, 1], &[1, 3]]).char_poly(),
            IntPolynomial::from_desc(&[1, -5, 5])
        );
        assert_eq!(IntMatrix::zeros(0).char_poly(), IntPolynomial::one());
    }

    #[test]
    fn char_poly_upper_triangular() {
        let a = m(&[&[3, 7, -2], &[0, -1, 5], &[0, 0, 4]]);
        // (t-3)(t+1)(t-4)
        assert_eq!(a.char_poly(), IntPolynomial::from_desc(&[1, -6, 5, 12]));
    }

    #[test]
    fn rejects_ragged_rows() {
        assert!(IntMatrix::from_rows(&[vec![1, 2], vec![3]]).is_none());
    }
}
