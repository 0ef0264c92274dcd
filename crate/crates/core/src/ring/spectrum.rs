use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use super::{BasedRing, RingError};
use crate::exact::{
    factor_monic_bounded, numeric_roots, FactoredPolynomial, IntMatrix, IntPolynomial,
    DEFAULT_MAX_DEGREE,
};

#[derive(Clone, Copy, Debug)]
pub struct SpectrumOptions {
    /// Relative tolerance for the numeric root channel.
    pub tolerance: f64,
    pub max_degree: usize,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            tolerance: super::DEFAULT_TOLERANCE,
            max_degree: DEFAULT_MAX_DEGREE,
        }
    }
}

/// Spectrum of the central element `alpha = sum_b b * dual(b)` acting on the
/// regular representation.
///
/// On an irreducible representation `E` the element acts by `f_E dim(E)`,
/// and `E` occurs `dim(E)` times, so the characteristic polynomial has root
/// `f_E dim(E)` with multiplicity `dim(E)^2`. For commutative rings every
/// `dim(E)` is 1 and the roots are exactly the formal codegrees; otherwise
/// the roots are the scaled values and `scaled` is set.
#[derive(Clone, Debug, PartialEq)]
pub struct CodegreeSpectrum {
    pub alpha_charpoly: IntPolynomial,
    pub factors: FactoredPolynomial,
    pub commutative: bool,
    pub scaled: bool,
    pub roots: Vec<Complex64>,
}

impl BasedRing {
    /// Matrix of left multiplication by `b_i` on the basis: entry `(k, j)`
    /// is `N[i][j][k]`.
    pub fn left_mult_matrix(&self, i: usize) -> Result<IntMatrix, RingError> {
        let r = self.rank();
        if i >= r {
            return Err(RingError::IndexOutOfRange { index: i, rank: r });
        }
        Ok(IntMatrix::from_fn(r, |k, j| BigInt::from(self.n(i, j, k))))
    }

    pub fn left_mult_matrices(&self) -> Vec<IntMatrix> {
        (0..self.rank())
            .map(|i| self.left_mult_matrix(i).expect("index in range"))
            .collect()
    }

    /// `sum_i L_(b_i) L_(dual b_i)`.
    pub fn alpha_matrix(&self) -> IntMatrix {
        let mats = self.left_mult_matrices();
        alpha_from(&mats, self.dual())
    }

    /// True iff all left multiplication matrices commute pairwise.
    pub fn is_commutative(&self) -> bool {
        let mats = self.left_mult_matrices();
        commute_pairwise(&mats)
    }
}

pub(crate) fn alpha_from(mats: &[IntMatrix], dual: &[usize]) -> IntMatrix {
    let r = mats.len();
    mats.iter()
        .zip(dual)
        .fold(IntMatrix::zeros(r), |acc, (m, &d)| &acc + &(m * &mats[d]))
}

pub(crate) fn commute_pairwise(mats: &[IntMatrix]) -> bool {
    mats.iter()
        .enumerate()
        .all(|(i, a)| mats[i + 1..].iter().all(|b| a.commutes_with(b)))
}

/// Characteristic polynomial of the alpha element, factored exactly, with
/// numeric roots attached.
pub fn codegree_spectrum(
    ring: &BasedRing,
    options: &SpectrumOptions,
) -> Result<CodegreeSpectrum, RingError> {
    let mats = ring.left_mult_matrices();
    let alpha = alpha_from(&mats, ring.dual());
    let alpha_charpoly = alpha.char_poly();
    if alpha_charpoly.constant_term().is_zero() {
        return Err(RingError::ZeroEigenvalue);
    }
    let factors = factor_monic_bounded(&alpha_charpoly, options.max_degree)?;
    let roots = numeric_roots(&alpha_charpoly, options.tolerance)?;
    let commutative = commute_pairwise(&mats);
    Ok(CodegreeSpectrum {
        alpha_charpoly,
        factors,
        commutative,
        scaled: !commutative,
        roots,
    })
}
