use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::poly::IntPolynomial;
use super::ExactError;

/// Outcome of the d-number divisibility test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DNumberOutcome {
    pub is_d_number: bool,
    /// Least `i` with `a_n^i` not dividing `a_i^n`.
    pub witness: Option<usize>,
}

/// Decides whether a root of the irreducible monic `p = t^n + a_1 t^(n-1) + ... + a_n`
/// is a d-number: `a_n^i | a_i^n` for every `i = 1..n`.
///
/// Irreducibility is the caller's responsibility; on a reducible input the
/// result describes the divisibility pattern only.
pub fn d_number_test(p: &IntPolynomial) -> Result<DNumberOutcome, ExactError> {
    if !p.is_monic() {
        return Err(ExactError::NotMonic);
    }
    let n = p.deg();
    if n == 0 {
        return Err(ExactError::UnsupportedDegree(0));
    }
    let a_n = p.vieta(n);
    if a_n.is_zero() {
        return Err(ExactError::ZeroConstantTerm);
    }
    let exp = u32::try_from(n).map_err(|_| ExactError::UnsupportedDegree(n))?;
    let mut a_n_pow = BigInt::one();
    for i in 1..=n {
        a_n_pow *= &a_n;
        let a_i = p.vieta(i);
        if a_i.is_zero() {
            continue;
        }
        if !(a_i.pow(exp) % &a_n_pow).is_zero() {
            return Ok(DNumberOutcome {
                is_d_number: false,
                witness: Some(i),
            });
        }
    }
    Ok(DNumberOutcome {
        is_d_number: true,
        witness: None,
    })
}

/// Independent decision for quadratics: a root `a` with conjugate `a'` is a
/// d-number iff `a / a'` is an algebraic integer. That ratio is a root of
/// `x^2 - s x + 1` with `s = (a^2 + a'^2) / (a a')`, so the question is
/// whether the rational number `s` is an integer.
pub fn d_number_oracle_quadratic(p: &IntPolynomial) -> Result<bool, ExactError> {
    if !p.is_monic() {
        return Err(ExactError::NotMonic);
    }
    if p.deg() != 2 {
        return Err(ExactError::UnsupportedDegree(p.deg()));
    }
    let sum = -p.coeff(1);
    let prod = p.coeff(0);
    if prod.is_zero() {
        return Err(ExactError::ZeroConstantTerm);
    }
    let power_sum = &sum * &sum - BigInt::from(2) * &prod;
    let s = BigRational::new(power_sum, prod);
    Ok(s.is_integer())
}

/// Discriminant of a monic polynomial of degree 2 or 3.
pub fn discriminant_deg3(p: &IntPolynomial) -> Result<BigInt, ExactError> {
    if !p.is_monic() {
        return Err(ExactError::NotMonic);
    }
    match p.deg() {
        2 => {
            let b = p.coeff(1);
            let c = p.coeff(0);
            Ok(&b * &b - BigInt::from(4) * c)
        }
        3 => {
            let a = p.coeff(2);
            let b = p.coeff(1);
            let c = p.coeff(0);
            let a2 = &a * &a;
            let b2 = &b * &b;
            Ok(
                BigInt::from(18) * &a * &b * &c - BigInt::from(4) * &a2 * &a * &c + &a2 * &b2
                    - BigInt::from(4) * &b2 * &b
                    - BigInt::from(27) * &c * &c,
            )
        }
        d => Err(ExactError::UnsupportedDegree(d)),
    }
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GaloisKind {
    Abelian,
    NonAbelian,
    Unknown,
}

/// Whether the splitting field of an irreducible polynomial is abelian over
/// the rationals, i.e. whether its roots are cyclotomic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisVerdict {
    pub kind: GaloisKind,
    /// Discriminant for degrees 2 and 3.
    pub discriminant: Option<BigInt>,
}

/// Degree 1 and 2 are always abelian; a cubic is abelian iff its
/// discriminant is a square. From degree 4 on, cyclotomic polynomials are
/// recognized exactly and everything else is `Unknown`.
pub fn abelian_galois_test(p: &IntPolynomial) -> Result<GaloisVerdict, ExactError> {
    if !p.is_monic() {
        return Err(ExactError::NotMonic);
    }
    match p.deg() {
        0 => Err(ExactError::UnsupportedDegree(0)),
        1 => Ok(GaloisVerdict {
            kind: GaloisKind::Abelian,
            discriminant: None,
        }),
        2 => Ok(GaloisVerdict {
            kind: GaloisKind::Abelian,
            discriminant: Some(discriminant_deg3(p)?),
        }),
        3 => {
            let d = discriminant_deg3(p)?;
            let kind = if is_perfect_square(&d) {
                GaloisKind::Abelian
            } else {
                GaloisKind::NonAbelian
            };
            Ok(GaloisVerdict {
                kind,
                discriminant: Some(d),
            })
        }
        _ => Ok(GaloisVerdict {
            kind: if cyclotomic_index(p).is_some() {
                GaloisKind::Abelian
            } else {
                GaloisKind::Unknown
            },
            discriminant: None,
        }),
    }
}

/// Euler's totient.
pub fn totient(mut m: u64) -> u64 {
    let mut result = m;
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q) {
            while m.is_multiple_of(q) {
                m /= q;
            }
            result -= result / q;
        }
        q += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q) {
            out.push(q);
            while m.is_multiple_of(q) {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// The `m`-th cyclotomic polynomial.
///
/// Uses `Phi_(n q)(t) = Phi_n(t^q) / Phi_n(t)` for primes `q` not dividing
/// `n` to build the squarefree-index polynomial, then
/// `Phi_m(t) = Phi_rad(m)(t^(m / rad(m)))`.
pub fn cyclotomic_polynomial(m: u64) -> IntPolynomial {
    assert!(m >= 1, "cyclotomic index must be positive");
    let mut phi = IntPolynomial::from_desc(&[1, -1]);
    let mut rad = 1u64;
    for q in prime_factors(m) {
        let inflated = phi.inflate(q as usize);
        phi = inflated
            .exact_div_monic(&phi)
            .expect("cyclotomic recurrence divides exactly");
        rad *= q;
    }
    phi.inflate((m / rad) as usize)
}

/// `Some(m)` if `p` equals the `m`-th cyclotomic polynomial.
pub fn cyclotomic_index(p: &IntPolynomial) -> Option<u64> {
    if !p.is_monic() || !p.constant_term().abs().is_one() {
        return None;
    }
    let d = p.deg() as u64;
    // totient(m) >= sqrt(m / 2), so m <= 2 d^2.
    (1..=2 * d * d + 2)
        .filter(|&m| totient(m) == d)
        .find(|&m| cyclotomic_polynomial(m) == *p)
}
