//! Exact integer linear algebra and univariate polynomial arithmetic, plus
//! the number-theoretic predicates the obstruction tests are built from.

mod factor;
mod matrix;
mod modp;
mod numbers;
mod poly;
mod roots;

use thiserror::Error;

pub use factor::{factor_monic, factor_monic_bounded, FactoredPolynomial, DEFAULT_MAX_DEGREE};
pub use matrix::IntMatrix;
pub use numbers::{
    abelian_galois_test, cyclotomic_index, cyclotomic_polynomial, d_number_oracle_quadratic,
    d_number_test, discriminant_deg3, is_perfect_square, totient, DNumberOutcome, GaloisKind,
    GaloisVerdict,
};
pub use poly::IntPolynomial;
pub use roots::{numeric_roots, MAX_ROOT_ITERATIONS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExactError {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("degree {degree} exceeds the factorization bound {bound}")]
    DegreeExceeded { degree: usize, bound: usize },
    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),
    #[error("constant term is zero (zero root)")]
    ZeroConstantTerm,
    #[error("root iteration did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
}
