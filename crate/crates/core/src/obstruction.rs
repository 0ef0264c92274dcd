//! Categorification verdicts for based rings.
//!
//! Two necessary conditions are checked. The d-number test: every formal
//! codegree of a categorifiable ring is a d-number, decided exactly on each
//! irreducible factor of the alpha characteristic polynomial. Because the
//! alpha eigenvalues are `f_E dim(E)` and `dim(E)` is a rational integer,
//! the verdict on a scaled eigenvalue equals the verdict on `f_E`. The
//! cyclotomicity test: every character value `chi_E(b)` must be a
//! cyclotomic integer, decided by the Galois abelianity of the irreducible
//! factors of each `char_poly(L_b)`.
//!
//! Passing both tests means no obstruction was found, never that a
//! categorification exists.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::exact::{
    abelian_galois_test, d_number_test, factor_monic, GaloisKind, IntMatrix, IntPolynomial,
};
use crate::ring::{BasedRing, RingError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DNumberComponent {
    Pass,
    /// First failing irreducible factor (in factor order) and the least
    /// failing coefficient index.
    Fail {
        factor: IntPolynomial,
        witness: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CyclotomicityComponent {
    Pass,
    Fail {
        basis_index: usize,
        factor: IntPolynomial,
        discriminant: Option<BigInt>,
    },
    Unknown {
        reasons: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Verdict {
    ObstructedDNumber,
    ObstructedCyclotomicOnly,
    NotObstructed,
    Indeterminate,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::ObstructedDNumber => "ObstructedDNumber",
            Verdict::ObstructedCyclotomicOnly => "ObstructedCyclotomicOnly",
            Verdict::NotObstructed => "NotObstructed",
            Verdict::Indeterminate => "Indeterminate",
        }
    }

    pub fn is_obstructed(self) -> bool {
        matches!(
            self,
            Verdict::ObstructedDNumber | Verdict::ObstructedCyclotomicOnly
        )
    }

    /// Human-readable reading of the verdict.
    pub fn description(self) -> &'static str {
        match self {
            Verdict::ObstructedDNumber => {
                "no categorification: a formal codegree is not a d-number"
            }
            Verdict::ObstructedCyclotomicOnly => {
                "no categorification: a character value is not cyclotomic (codegrees are d-numbers)"
            }
            Verdict::NotObstructed => "no obstruction found",
            Verdict::Indeterminate => "no d-number obstruction; cyclotomicity undecided",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub ring_id: String,
    pub alpha_charpoly: IntPolynomial,
    pub d_number: DNumberComponent,
    pub cyclotomicity: CyclotomicityComponent,
    pub verdict: Verdict,
}

/// Verdict implied by the two components.
pub fn combine(d_number: &DNumberComponent, cyclotomicity: &CyclotomicityComponent) -> Verdict {
    match (d_number, cyclotomicity) {
        (DNumberComponent::Fail { .. }, _) => Verdict::ObstructedDNumber,
        (DNumberComponent::Pass, CyclotomicityComponent::Fail { .. }) => {
            Verdict::ObstructedCyclotomicOnly
        }
        (DNumberComponent::Pass, CyclotomicityComponent::Unknown { .. }) => Verdict::Indeterminate,
        (DNumberComponent::Pass, CyclotomicityComponent::Pass) => Verdict::NotObstructed,
    }
}

fn d_number_from_charpoly(charpoly: &IntPolynomial) -> Result<DNumberComponent, RingError> {
    if charpoly.constant_term().is_zero() {
        return Err(RingError::ZeroEigenvalue);
    }
    let factored = factor_monic(charpoly)?;
    for factor in factored.irreducible_factors() {
        let outcome = d_number_test(factor)?;
        if let Some(witness) = outcome.witness {
            return Ok(DNumberComponent::Fail {
                factor: factor.clone(),
                witness,
            });
        }
    }
    Ok(DNumberComponent::Pass)
}

/// Runs the d-number test on every irreducible factor of the alpha
/// characteristic polynomial.
pub fn d_number_verdict(ring: &BasedRing) -> Result<DNumberComponent, RingError> {
    d_number_from_charpoly(&ring.alpha_matrix().char_poly())
}

fn cyclotomicity_from(
    mats: &[IntMatrix],
    commutative: bool,
) -> Result<CyclotomicityComponent, RingError> {
    let mut reasons = Vec::new();
    for (b, m) in mats.iter().enumerate() {
        let factored = factor_monic(&m.char_poly())?;
        for factor in factored.irreducible_factors() {
            let verdict = abelian_galois_test(factor)?;
            match verdict.kind {
                GaloisKind::Abelian => {}
                GaloisKind::NonAbelian if commutative => {
                    return Ok(CyclotomicityComponent::Fail {
                        basis_index: b,
                        factor: factor.clone(),
                        discriminant: verdict.discriminant,
                    });
                }
                GaloisKind::NonAbelian => reasons.push(format!(
                    "basis {b}: eigenvalue factor {factor} is not cyclotomic, but traces of a \
                     noncommutative ring are not determined by eigenvalues"
                )),
                GaloisKind::Unknown => reasons.push(format!(
                    "basis {b}: abelianity of degree-{} factor {factor} undecided",
                    factor.deg()
                )),
            }
        }
    }
    if reasons.is_empty() {
        Ok(CyclotomicityComponent::Pass)
    } else {
        Ok(CyclotomicityComponent::Unknown { reasons })
    }
}

/// Tests whether every character value on every basis element is a
/// cyclotomic integer.
///
/// For commutative rings the character values of `b` are the eigenvalues of
/// `L_b`, so a non-abelian factor of `char_poly(L_b)` is a failure. For
/// noncommutative rings a trace is a sum of eigenvalues: if every
/// eigenvalue is cyclotomic so is every trace, otherwise the result is
/// `Unknown`.
pub fn cyclotomicity_verdict(ring: &BasedRing) -> Result<CyclotomicityComponent, RingError> {
    let mats = ring.left_mult_matrices();
    let commutative = crate::ring::commute_pairwise(&mats);
    cyclotomicity_from(&mats, commutative)
}

/// Runs both tests and combines them.
pub fn obstruction_report(
    ring: &BasedRing,
    ring_id: impl Into<String>,
) -> Result<ObstructionReport, RingError> {
    let mats = ring.left_mult_matrices();
    let alpha_charpoly = crate::ring::alpha_from(&mats, ring.dual()).char_poly();
    let d_number = d_number_from_charpoly(&alpha_charpoly)?;
    let commutative = crate::ring::commute_pairwise(&mats);
    let cyclotomicity = cyclotomicity_from(&mats, commutative)?;
    let verdict = combine(&d_number, &cyclotomicity);
    Ok(ObstructionReport {
        ring_id: ring_id.into(),
        alpha_charpoly,
        d_number,
        cyclotomicity,
        verdict,
    })
}
