use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp::{candidate_primes, ModPoly, PrimeField};
use super::poly::IntPolynomial;
use super::ExactError;

/// Default bound on the degree accepted by [`factor_monic`].
pub const DEFAULT_MAX_DEGREE: usize = 64;

/// Irreducible factorization of a monic integer polynomial: monic
/// irreducible factors with multiplicities, sorted by degree then
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredPolynomial {
    pub factors: Vec<(IntPolynomial, u32)>,
}

impl FactoredPolynomial {
    /// Product of the factors raised to their multiplicities.
    pub fn product(&self) -> IntPolynomial {
        self.factors
            .iter()
            .fold(IntPolynomial::one(), |acc, (f, m)| &acc * &f.pow(*m))
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn irreducible_factors(&self) -> impl Iterator<Item = &IntPolynomial> {
        self.factors.iter().map(|(f, _)| f)
    }
}

/// Factors a monic polynomial over the rationals using the default degree
/// bound.
pub fn factor_monic(p: &IntPolynomial) -> Result<FactoredPolynomial, ExactError> {
    factor_monic_bounded(p, DEFAULT_MAX_DEGREE)
}

pub fn factor_monic_bounded(
    p: &IntPolynomial,
    max_degree: usize,
) -> Result<FactoredPolynomial, ExactError> {
    if !p.is_monic() {
        return Err(ExactError::NotMonic);
    }
    let degree = p.deg();
    if degree == 0 {
        return Err(ExactError::UnsupportedDegree(0));
    }
    if degree > max_degree {
        return Err(ExactError::DegreeExceeded {
            degree,
            bound: max_degree,
        });
    }
    // A nonzero discriminant means no repeated roots.
    let (squarefree, repeated) =
        if matches!(degree, 2 | 3) && !super::numbers::discriminant_deg3(p)?.is_zero() {
            (p.clone(), IntPolynomial::one())
        } else {
            let repeated = p.gcd(&p.derivative());
            let squarefree = p
                .exact_div_monic(&repeated)
                .expect("gcd with derivative divides a monic polynomial");
            (squarefree, repeated)
        };

    let mut factors: Vec<(IntPolynomial, u32)> = factor_squarefree(&squarefree)
        .into_iter()
        .map(|f| {
            let mut m = 1;
            let mut rest = repeated.clone();
            while let Some(q) = rest.exact_div_monic(&f) {
                m += 1;
                rest = q;
            }
            (f, m)
        })
        .collect();
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(FactoredPolynomial { factors })
}

/// Monic irreducible factors of a monic squarefree polynomial.
fn factor_squarefree(f: &IntPolynomial) -> Vec<IntPolynomial> {
    match f.deg() {
        0 => Vec::new(),
        1 => vec![f.clone()],
        2 => factor_quadratic(f),
        3 if has_no_root_mod_small_prime(f) => vec![f.clone()],
        _ => zassenhaus(f),
    }
}

/// A cubic without a root modulo some prime has no rational root, hence
/// is irreducible. Irreducible cubics fail this for a given prime with
/// probability about 2/3, so a handful of primes settles almost all of them.
fn has_no_root_mod_small_prime(f: &IntPolynomial) -> bool {
    const PRIMES: [u64; 14] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    PRIMES.iter().any(|&p| {
        let modulus = BigInt::from(p);
        let c: Vec<u64> = f
            .coeffs()
            .iter()
            .map(|a| {
                let r = a.mod_floor(&modulus);
                r.iter_u64_digits().next().unwrap_or(0)
            })
            .collect();
        (0..p).all(|x| c.iter().rev().fold(0, |acc, &a| (acc * x + a) % p) != 0)
    })
}

fn factor_quadratic(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let b = f.coeff(1);
    let c = f.coeff(0);
    let disc = &b * &b - BigInt::from(4) * &c;
    if disc.is_negative() {
        return vec![f.clone()];
    }
    let r = disc.sqrt();
    if &r * &r != disc {
        return vec![f.clone()];
    }
    // disc = b^2 - 4c has the parity of b, so (-b +- r) is even.
    let two = BigInt::from(2);
    let lo = (-&b - &r) / &two;
    let hi = (-&b + &r) / &two;
    vec![IntPolynomial::linear(lo), IntPolynomial::linear(hi)]
}

/// Picks a prime for which `f` stays squarefree; for larger degrees, the
/// prime with the fewest modular factors among the first few candidates.
fn choose_prime(f: &IntPolynomial) -> (PrimeField, Vec<ModPoly>) {
    let tries = if f.deg() <= 3 { 1 } else { 5 };
    let mut best: Option<(PrimeField, Vec<ModPoly>)> = None;
    let mut good = 0;
    for &p in candidate_primes() {
        let field = PrimeField::new(p);
        let fp = field.reduce_poly(f);
        if !field.is_squarefree(&fp) {
            continue;
        }
        let parts = field.factor_squarefree(&fp);
        if best.as_ref().is_none_or(|(_, b)| parts.len() < b.len()) {
            best = Some((field, parts));
        }
        good += 1;
        if good >= tries {
            break;
        }
    }
    best.expect("some prime keeps a squarefree polynomial squarefree")
}

fn zassenhaus(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let (field, modular) = choose_prime(f);
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    let p = BigInt::from(field.p);
    // Any monic factor of f has coefficients bounded by 2^deg * |f|_2.
    let bound = (BigInt::one() << f.deg()) * (f.norm_sq().sqrt() + BigInt::one());
    let mut modulus = p.clone();
    let mut k = 1;
    while modulus <= &bound * 2 {
        modulus *= &p;
        k += 1;
    }
    let lifted = hensel_lift_all(field, f, &modular, k);
    recombine(f, lifted, &modulus)
}

fn to_int_poly(a: &[u64]) -> IntPolynomial {
    IntPolynomial::new(a.iter().map(|&c| BigInt::from(c)).collect())
}

fn reduce_nonneg(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    IntPolynomial::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn reduce_symmetric(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    let half = m >> 1;
    IntPolynomial::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Lifts `f = prod(factors) mod p` to a factorization modulo `p^k`.
fn hensel_lift_all(
    field: PrimeField,
    f: &IntPolynomial,
    factors: &[ModPoly],
    k: u32,
) -> Vec<IntPolynomial> {
    let modulus = BigInt::from(field.p).pow(k);
    if factors.len() == 1 {
        return vec![reduce_nonneg(f, &modulus)];
    }
    let mid = factors.len() / 2;
    let product = |fs: &[ModPoly]| fs.iter().fold(vec![1u64], |acc, g| field.poly_mul(&acc, g));
    let g0 = product(&factors[..mid]);
    let h0 = product(&factors[mid..]);
    let (g, h) = hensel_lift_pair(field, f, &g0, &h0, k);
    let mut out = hensel_lift_all(field, &g, &factors[..mid], k);
    out.extend(hensel_lift_all(field, &h, &factors[mid..], k));
    out
}

/// Linear Hensel lifting of `f = g0 h0 mod p` (both monic, coprime) to
/// `f = g h mod p^k`.
fn hensel_lift_pair(
    field: PrimeField,
    f: &IntPolynomial,
    g0: &[u64],
    h0: &[u64],
    k: u32,
) -> (IntPolynomial, IntPolynomial) {
    let (one, _, t) = field.ext_gcd(g0, h0);
    debug_assert_eq!(one, vec![1]);
    let p = BigInt::from(field.p);
    let mut g = to_int_poly(g0);
    let mut h = to_int_poly(h0);
    let mut pj = p.clone();
    for _ in 1..k {
        let err = f - &(&g * &h);
        let e: ModPoly = {
            let mut e: ModPoly = err
                .coeffs()
                .iter()
                .map(|c| {
                    debug_assert!((c % &pj).is_zero());
                    field.reduce(&(c / &pj))
                })
                .collect();
            super::modp::trim(&mut e);
            e
        };
        let tau = field.rem(&field.poly_mul(&e, &t), g0);
        let (sigma, r) = field.div_rem(&field.poly_sub(&e, &field.poly_mul(&tau, h0)), g0);
        debug_assert!(r.is_empty());
        g = &g + &to_int_poly(&tau).scale(&pj);
        h = &h + &to_int_poly(&sigma).scale(&pj);
        pj *= &p;
    }
    (reduce_nonneg(&g, &pj), reduce_nonneg(&h, &pj))
}

/// Combines lifted modular factors into true factors over the integers.
fn recombine(
    f: &IntPolynomial,
    lifted: Vec<IntPolynomial>,
    modulus: &BigInt,
) -> Vec<IntPolynomial> {
    let mut remaining = lifted;
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let candidate = reduce_symmetric(
                &combo.iter().fold(IntPolynomial::one(), |acc, &i| {
                    reduce_nonneg(&(&acc * &remaining[i]), modulus)
                }),
                modulus,
            );
            let c0 = candidate.constant_term();
            let r0 = rest.constant_term();
            let plausible = if c0.is_zero() {
                r0.is_zero()
            } else {
                (&r0 % &c0).is_zero()
            };
            if plausible {
                if let Some(q) = rest.exact_div_monic(&candidate) {
                    found.push(candidate);
                    rest = q;
                    for &i in combo.iter().rev() {
                        remaining.remove(i);
                    }
                    continue 'outer;
                }
            }
            if !next_combination(&mut combo, remaining.len()) {
                break;
            }
        }
        size += 1;
    }
    if rest.deg() > 0 {
        found.push(rest);
    }
    found
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(desc: &[i64]) -> IntPolynomial {
        IntPolynomial::from_desc(desc)
    }

    #[test]
    fn repeated_linear() {
        let f = factor_monic(&p(&[1, -4, 4])).unwrap();
        assert_eq!(f.factors, vec![(p(&[1, -2]), 2)]);
    }

    #[test]
    fn irreducible_cubic_stays_whole() {
        let q = p(&[1, -26, 148, -148]);
        let f = factor_monic(&q).unwrap();
        assert_eq!(f.factors, vec![(q, 1)]);
    }

    #[test]
    fn splits_biquadratic_into_linears() {
        let f = factor_monic(&p(&[1, 0, -5, 0, 4])).unwrap();
        let want: Vec<_> = [-2, -1, 1, 2]
            .iter()
            .map(|&r| (IntPolynomial::linear(BigInt::from(r)), 1))
            .collect();
        // Degree ties are ordered by coefficients, leading term down: t - 2 < t - 1 < t + 1 < t + 2.
        let mut want = want;
        want.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        assert_eq!(f.factors, want);
    }

    #[test]
    fn swinnerton_dyer_like_quartic_is_irreducible() {
        // x^4 - 10x^2 + 1 splits modulo every prime but is irreducible over Q.
        let q = p(&[1, 0, -10, 0, 1]);
        assert!(factor_monic(&q).unwrap().is_irreducible());
    }

    #[test]
    fn cyclotomic_product() {
        // t^12 - 1 = Phi1 Phi2 Phi3 Phi4 Phi6 Phi12
        let mut c = vec![0i64; 13];
        c[0] = 1;
        c[12] = -1;
        let f = factor_monic(&p(&c)).unwrap();
        assert_eq!(f.factors.len(), 6);
        assert_eq!(f.product(), p(&c));
        assert!(f.factors.iter().any(|(g, _)| *g == p(&[1, 0, -1, 0, 1])));
    }

    #[test]
    fn degree_bound_enforced() {
        let big = IntPolynomial::monomial(65);
        assert!(matches!(
            factor_monic(&(&big + &IntPolynomial::one())),
            Err(ExactError::DegreeExceeded {
                degree: 65,
                bound: 64
            })
        ));
        assert!(matches!(
            factor_monic(&p(&[2, 1])),
            Err(ExactError::NotMonic)
        ));
    }

    #[test]
    fn zero_root_factor() {
        let f = factor_monic(&p(&[1, -3, 2, 0])).unwrap();
        assert_eq!(
            f.factors,
            vec![(p(&[1, -2]), 1), (p(&[1, -1]), 1), (p(&[1, 0]), 1)]
        );
    }
}
