//! Cross-checks against independent oracles: a brute-force parameter
//! search, the quadratic ratio criterion, and a numeric test for cyclic
//! cubics.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use codegree::exact::{
    abelian_galois_test, d_number_oracle_quadratic, d_number_test, discriminant_deg3, factor_monic,
    numeric_roots, GaloisKind, IntPolynomial,
};
use codegree::families::{enumerate_rank3, EnumerateOptions};

#[test]
fn sweep_matches_brute_force_search_below_50() {
    const K_MAX: u64 = 50;
    let mut oracle = BTreeSet::new();
    for k in 0..K_MAX {
        for l in 0..=k {
            let target = k * k + l * l;
            // The free variable of the l = 0 cells gets the same bound as
            // the enumerator.
            let cap = (K_MAX * K_MAX).min(target.saturating_sub(1));
            for m in 0..=cap {
                if l * m + 1 > target {
                    break;
                }
                for n in 0..=cap {
                    let rhs = l * m + k * n + 1;
                    if rhs == target {
                        oracle.insert((k, l, m, n));
                    }
                    if rhs >= target || k == 0 {
                        break;
                    }
                }
            }
        }
    }
    let mut swept = Vec::new();
    let summary = enumerate_rank3(K_MAX, &EnumerateOptions::default(), |row| {
        swept.push(row.params.as_tuple());
        assert!(
            row.result.is_ok(),
            "{} failed: {:?}",
            row.params,
            row.result
        );
    })
    .unwrap();
    assert_eq!(swept.iter().copied().collect::<BTreeSet<_>>(), oracle);
    assert_eq!(swept.len(), oracle.len());
    assert_eq!(summary.rings, oracle.len());
    assert!(!swept.iter().any(|&(k, l, _, _)| k == 0 && l == 0));
}

#[test]
fn d_number_test_matches_ratio_criterion_on_all_small_quadratics() {
    let mut irreducible = 0;
    for a1 in -50i64..=50 {
        for a2 in -50i64..=50 {
            if a2 == 0 {
                continue;
            }
            let p = IntPolynomial::from_desc(&[1, a1, a2]);
            if !factor_monic(&p).unwrap().is_irreducible() {
                continue;
            }
            irreducible += 1;
            assert_eq!(
                d_number_test(&p).unwrap().is_d_number,
                d_number_oracle_quadratic(&p).unwrap(),
                "{p}"
            );
        }
    }
    assert!(irreducible > 9000);
}

/// Whether some polynomial `P` with `P(r1) = r2, P(r2) = r3, P(r3) = r1`
/// has coefficients in `(1 / sqrt|D|) Z`, for either cyclic order of the
/// roots. Such `P` exists exactly when the Galois group is cyclic. Only
/// meaningful while `sqrt|D|` times the coefficients stays well inside
/// double precision.
fn cyclic_by_interpolation(p: &IntPolynomial) -> bool {
    let roots = numeric_roots(p, 1e-12).unwrap();
    let disc = discriminant_deg3(p).unwrap();
    let scale = (disc.to_string().parse::<f64>().unwrap()).abs().sqrt();
    let orders = [[0, 1, 2], [0, 2, 1]];
    orders.iter().any(|o| {
        let x = [roots[o[0]], roots[o[1]], roots[o[2]]];
        let y = [x[1], x[2], x[0]];
        let coeffs = interpolate(&x, &y);
        coeffs.iter().all(|c| {
            let v = c * scale;
            let near = v.re.round();
            (v.re - near).abs() < 1e-6 && v.im.abs() < 1e-6
        })
    })
}

/// Coefficients of the degree-2 polynomial through `(x_i, y_i)`.
fn interpolate(x: &[Complex64; 3], y: &[Complex64; 3]) -> [Complex64; 3] {
    let mut out = [Complex64::zero(); 3];
    for i in 0..3 {
        let (a, b) = ((i + 1) % 3, (i + 2) % 3);
        let w = y[i] / ((x[i] - x[a]) * (x[i] - x[b]));
        // w (t - x_a)(t - x_b)
        out[2] += w;
        out[1] -= w * (x[a] + x[b]);
        out[0] += w * x[a] * x[b];
    }
    out
}

#[test]
fn cubic_abelianity_matches_interpolation_oracle() {
    let mut cubics: Vec<[i64; 4]> = (0..12)
        .map(|a| [1, -a, -(a + 3), -1]) // simplest cubics, cyclic
        .collect();
    cubics.extend([
        [1, 0, -3, 1],
        [1, -1, -2, 1],
        [1, 0, -7, 7],
        [1, 0, 0, -2],
        [1, 0, -1, -1],
        [1, 0, -4, 1],
        [1, -1, -5, 1],
        [1, -26, 148, -148],
        [1, 0, -2, -2],
        [1, -2, -1, 1],
        [1, 3, -1, -1],
        [1, 1, -3, -1],
    ]);
    let (mut checked, mut abelian) = (0, 0);
    for c in cubics {
        let p = IntPolynomial::from_desc(&c);
        if !factor_monic(&p).unwrap().is_irreducible() {
            continue;
        }
        let verdict = abelian_galois_test(&p).unwrap();
        assert_ne!(verdict.kind, GaloisKind::Unknown);
        assert_eq!(
            verdict.kind == GaloisKind::Abelian,
            cyclic_by_interpolation(&p),
            "{p}"
        );
        checked += 1;
        abelian += usize::from(verdict.kind == GaloisKind::Abelian);
    }
    assert!(checked >= 20);
    assert!(
        abelian >= 10 && checked - abelian >= 5,
        "{abelian} of {checked}"
    );
}

#[test]
fn factorization_of_fixed_cases_matches_direct_search() {
    // Irreducible factors of degree <= 3 have no divisor of the constant
    // term as a root.
    for desc in [
        vec![1i64, -26, 148, -148],
        vec![1, -2262, 3015, 463],
        vec![1, 0, -5, 0, 4],
        vec![1, -6, 11, -6],
        vec![1, 0, 0, 0, 0, -1],
    ] {
        let p = IntPolynomial::from_desc(&desc);
        let factored = factor_monic(&p).unwrap();
        assert_eq!(factored.product(), p);
        for f in factored
            .irreducible_factors()
            .filter(|f| (2..=3).contains(&f.deg()))
        {
            let c = f.constant_term();
            let c = i64::try_from(&c).unwrap().unsigned_abs();
            for d in (1..=c).filter(|d| c % d == 0) {
                for r in [d as i64, -(d as i64)] {
                    assert!(!f.eval(&BigInt::from(r)).is_zero(), "{f} has root {r}");
                }
            }
        }
    }
}
