mod common;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use codegree::exact::{d_number_test, factor_monic, numeric_roots, IntMatrix, IntPolynomial};
use codegree::families::{
    build_rank3, cyclic_group_ring, enumerate_rank3, rank3_solutions, s3_group_ring,
    EnumerateOptions, Rank3Params,
};
use codegree::obstruction::{
    combine, obstruction_report, CyclotomicityComponent, DNumberComponent, Verdict,
};
use codegree::ring::{
    characters_numeric, codegree_spectrum, codegrees_via_characters, fp_dimension, validate,
    BasedRing, SpectrumOptions,
};

fn monic(desc_tail: &[i64]) -> IntPolynomial {
    let mut desc = vec![1];
    desc.extend_from_slice(desc_tail);
    IntPolynomial::from_desc(&desc)
}

fn neg(p: &IntPolynomial) -> IntPolynomial {
    p.scale(&BigInt::from(-1))
}

/// `p(-t)`, made monic.
fn reflected_monic(p: &IntPolynomial) -> IntPolynomial {
    let r = p.reflect();
    if r.is_monic() {
        r
    } else {
        neg(&r)
    }
}

fn rank3_strategy(k_max: u64) -> impl Strategy<Value = Rank3Params> {
    (1..k_max)
        .prop_flat_map(|k| (Just(k), 0..=k))
        .prop_filter_map("no admissible m, n", |(k, l)| {
            let sols = rank3_solutions(k, l);
            let (m, n) = *sols.get(sols.len() / 2)?;
            Some(Rank3Params::new(k, l, m, n).unwrap())
        })
}

fn assert_central(ring: &BasedRing) {
    let alpha = ring.alpha_matrix();
    for (b, l) in ring.left_mult_matrices().iter().enumerate() {
        assert!(alpha.commutes_with(l), "alpha does not commute with L_{b}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cayley_hamilton(n in 1usize..=5, entries in prop::collection::vec(-20i64..=20, 25)) {
        let m = IntMatrix::from_fn(n, |i, j| BigInt::from(entries[i * 5 + j]));
        let p = m.char_poly();
        prop_assert!(p.is_monic());
        prop_assert_eq!(p.deg(), n);
        prop_assert!(m.eval_poly(&p).is_zero());
        prop_assert_eq!(-p.coeff(n - 1), m.trace());
    }

    #[test]
    fn factorization_reassembles(tail in prop::collection::vec(-30i64..=30, 1..=8)) {
        let p = monic(&tail);
        let factored = factor_monic(&p).unwrap();
        prop_assert_eq!(factored.product(), p);
        for f in factored.irreducible_factors() {
            prop_assert!(f.is_monic());
            if f.deg() >= 2 {
                // A monic factor with an integer root r has r | f(0).
                let c = f.constant_term().abs();
                if c.is_zero() {
                    prop_assert!(false, "irreducible factor {} has root 0", f);
                }
                let c = u64::try_from(&c).unwrap_or(0);
                if c > 0 && c <= 1_000_000 {
                    for d in (1..=c).filter(|d| c % d == 0) {
                        for r in [d as i64, -(d as i64)] {
                            prop_assert!(!f.eval(&BigInt::from(r)).is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn factorization_recovers_known_factors(
        a in prop::collection::vec(-9i64..=9, 1..=3),
        b in prop::collection::vec(-9i64..=9, 1..=3),
    ) {
        let (f, g) = (monic(&a), monic(&b));
        let p = &f * &g;
        let factored = factor_monic(&p).unwrap();
        prop_assert_eq!(factored.product(), p);
        let degrees: usize = factored.factors.iter().map(|(h, m)| h.deg() * *m as usize).sum();
        prop_assert_eq!(degrees, f.deg() + g.deg());
        prop_assert!(!factored.is_irreducible());
    }

    #[test]
    fn d_number_test_ignores_root_sign(tail in prop::collection::vec(-40i64..=40, 1..=5)) {
        let p = monic(&tail);
        prop_assume!(!p.constant_term().is_zero());
        prop_assume!(factor_monic(&p).unwrap().is_irreducible());
        let direct = d_number_test(&p).unwrap().is_d_number;
        prop_assert_eq!(d_number_test(&reflected_monic(&p)).unwrap().is_d_number, direct);
    }

    #[test]
    fn numeric_roots_match_vieta(tail in prop::collection::vec(-30i64..=30, 1..=7)) {
        let p = monic(&tail);
        let n = p.deg();
        let tol = 1e-9;
        let roots = numeric_roots(&p, tol).unwrap();
        prop_assert_eq!(roots.len(), n);
        let scale: f64 = roots.iter().map(|z| z.norm().max(1.0)).product();
        let sum: num_complex::Complex64 = roots.iter().sum();
        let a1 = tail[0] as f64;
        prop_assert!((sum.re + a1).abs() <= 10.0 * tol * scale, "sum {} vs {}", sum, -a1);
        prop_assert!(sum.im.abs() <= 10.0 * tol * scale);
        let prod: num_complex::Complex64 = roots.iter().product();
        let an = tail[n - 1] as f64 * if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        prop_assert!((prod.re - an).abs() <= 10.0 * tol * scale, "product {} vs {}", prod, an);
        prop_assert!(prod.im.abs() <= 10.0 * tol * scale);
    }

    #[test]
    fn squaring_preserves_d_number_verdict(a in -60i64..=60, b in -60i64..=60) {
        prop_assume!(b != 0);
        let p = monic(&[a, b]);
        prop_assume!(factor_monic(&p).unwrap().is_irreducible());
        // Minimal polynomial of the square of a root, by exact resultant.
        let squared = factor_monic(&p.graeffe()).unwrap();
        let q = squared.irreducible_factors().next().unwrap();
        prop_assert_eq!(
            d_number_test(q).unwrap().is_d_number,
            d_number_test(&p).unwrap().is_d_number
        );
    }

    #[test]
    fn rank3_rings_are_valid_central_and_consistent(params in rank3_strategy(80)) {
        let ring = build_rank3(params).unwrap();
        prop_assert!(validate(&ring).passed());
        assert_central(&ring);
        prop_assert!(!ring.alpha_matrix().char_poly().constant_term().is_zero());

        let tol = 1e-9;
        let spectrum = codegree_spectrum(&ring, &SpectrumOptions::default()).unwrap();
        let table = characters_numeric(&ring, tol).unwrap();
        let via_chars = codegrees_via_characters(&ring, &table).unwrap();
        let mut a: Vec<f64> = spectrum.roots.iter().map(|z| z.re).collect();
        let mut b: Vec<f64> = via_chars.iter().map(|z| z.re).collect();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-6 * x.abs().max(1.0));
        }
        let fp = fp_dimension(&ring, tol).unwrap();
        prop_assert!((fp - a[a.len() - 1]).abs() <= 1e-6 * fp);
    }
}

#[test]
fn fixtures_are_central_with_invertible_alpha() {
    for (name, ring) in common::fixture_rings() {
        assert!(validate(&ring).passed(), "{name}");
        assert_central(&ring);
        assert!(
            !ring.alpha_matrix().char_poly().constant_term().is_zero(),
            "{name}"
        );
    }
}

#[test]
fn commutative_fixtures_have_consistent_codegrees() {
    for (name, ring) in common::fixture_rings() {
        if !ring.is_commutative() {
            continue;
        }
        let table = characters_numeric(&ring, 1e-9).unwrap();
        assert!(codegrees_via_characters(&ring, &table).is_ok(), "{name}");
        let roots = numeric_roots(&ring.alpha_matrix().char_poly(), 1e-9).unwrap();
        let largest = roots.iter().map(|z| z.re).fold(f64::MIN, f64::max);
        let fp = fp_dimension(&ring, 1e-9).unwrap();
        assert!((fp - largest).abs() <= 1e-6 * largest, "{name}");
    }
}

#[test]
fn quadratic_alpha_factors_of_fixtures_keep_verdict_under_squaring() {
    let mut seen = 0;
    for (_, ring) in common::fixture_rings() {
        let factored = factor_monic(&ring.alpha_matrix().char_poly()).unwrap();
        for p in factored.irreducible_factors().filter(|p| p.deg() == 2) {
            let squared = factor_monic(&p.graeffe()).unwrap();
            let q = squared.irreducible_factors().next().unwrap();
            assert_eq!(
                d_number_test(q).unwrap().is_d_number,
                d_number_test(p).unwrap().is_d_number
            );
            seen += 1;
        }
    }
    assert!(seen >= 1);
}

#[test]
fn single_entry_perturbations_are_rejected() {
    let mut rings: Vec<BasedRing> = common::fixture_rings()
        .into_iter()
        .map(|(_, r)| r)
        .collect();
    rings.push(cyclic_group_ring(5));
    for ring in rings {
        let r = ring.rank();
        let unit = ring.unit_set()[0];
        for j in 0..r {
            // The unit no longer fixes b_j.
            assert!(!validate(&ring.with_entry(unit, j, j, 0)).passed());
            let off = (j + 1) % r;
            if off != j {
                assert!(!validate(&ring.with_entry(unit, j, off, 1)).passed());
            }
            // A negative structure constant.
            assert!(!validate(&ring.with_entry(j, j, off, -1)).passed());
        }
    }
    let k = build_rank3(Rank3Params::new(2, 1, 0, 2).unwrap()).unwrap();
    assert!(!validate(&k.with_entry(1, 1, 2, 3)).passed());
}

#[test]
fn verdicts_are_consistent_on_every_ring_below_30() {
    enumerate_rank3(30, &EnumerateOptions::default(), |row| {
        let ring = build_rank3(row.params).unwrap();
        assert!(validate(&ring).passed());
        assert_central(&ring);
        let report = row.result.as_ref().unwrap();
        assert_eq!(
            report.verdict,
            combine(&report.d_number, &report.cyclotomicity)
        );
        let d_fail = matches!(report.d_number, DNumberComponent::Fail { .. });
        let c_fail = matches!(report.cyclotomicity, CyclotomicityComponent::Fail { .. });
        assert_eq!(report.verdict == Verdict::ObstructedDNumber, d_fail);
        assert_eq!(
            report.verdict == Verdict::ObstructedCyclotomicOnly,
            !d_fail && c_fail
        );
        assert_eq!(report.verdict.is_obstructed(), d_fail || c_fail);
        assert_eq!(
            report,
            &obstruction_report(&ring, row.params.to_string()).unwrap()
        );
    })
    .unwrap();
}

#[test]
fn sweep_is_independent_of_thread_count() {
    let run = |threads| {
        let mut rows = Vec::new();
        let summary = enumerate_rank3(
            60,
            &EnumerateOptions {
                threads: Some(threads),
            },
            |r| rows.push(r.clone()),
        )
        .unwrap();
        (rows, summary)
    };
    let reference = run(1);
    for threads in [2, 3, 8] {
        assert_eq!(run(threads), reference);
    }
}

#[test]
fn group_rings_pass_both_tests() {
    let mut rings: Vec<BasedRing> = (1..=12).map(cyclic_group_ring).collect();
    rings.push(s3_group_ring());
    for ring in rings {
        let report = obstruction_report(&ring, "group").unwrap();
        assert_eq!(report.d_number, DNumberComponent::Pass);
        assert_eq!(report.cyclotomicity, CyclotomicityComponent::Pass);
        assert_eq!(report.verdict, Verdict::NotObstructed);
        assert_central(&ring);
    }
}
