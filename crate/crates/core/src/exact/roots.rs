use num_complex::Complex64;

use super::poly::IntPolynomial;
use super::ExactError;

/// Iteration cap for the simultaneous root iteration.
pub const MAX_ROOT_ITERATIONS: usize = 1000;

/// All complex roots of `p`, repeated by multiplicity, sorted by real part
/// then imaginary part.
///
/// The polynomial is first split exactly into squarefree layers
/// `s_1, s_2, ...` where `s_i` carries the roots of multiplicity at least
/// `i`; each layer is then solved numerically by Aberth–Ehrlich iteration.
/// `tol` is relative: roots are accurate to about `tol * max(1, |z|)`, and
/// imaginary parts below that scale are reported as zero.
pub fn numeric_roots(p: &IntPolynomial, tol: f64) -> Result<Vec<Complex64>, ExactError> {
    if p.is_zero() || p.deg() == 0 {
        return Err(ExactError::UnsupportedDegree(0));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(ExactError::InvalidTolerance(tol));
    }
    let mut roots = Vec::with_capacity(p.deg());
    let mut current = p.primitive_part();
    while current.deg() > 0 {
        let repeated = current.gcd(&current.derivative());
        let layer = squarefree_quotient(&current, &repeated);
        roots.extend(aberth(&layer.to_f64s(), tol)?);
        current = repeated;
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(roots)
}

fn squarefree_quotient(f: &IntPolynomial, g: &IntPolynomial) -> IntPolynomial {
    if g.is_monic() {
        return f.exact_div_monic(g).expect("gcd divides");
    }
    // Non-monic gcd: divide over the rationals via pseudo-division.
    let lead = g.leading().unwrap().clone();
    let scale = lead.pow((f.deg() - g.deg() + 1) as u32);
    let scaled = f.scale(&scale);
    let mut q = vec![num_bigint::BigInt::from(0); f.deg() - g.deg() + 1];
    let mut r = scaled.into_coeffs();
    let dg = g.deg();
    for i in (0..q.len()).rev() {
        let c = &r[i + dg] / &lead;
        for (j, gc) in g.coeffs().iter().enumerate() {
            r[i + j] -= &c * gc;
        }
        q[i] = c;
    }
    IntPolynomial::new(q).primitive_part()
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Simultaneous iteration on a squarefree polynomial given low-to-high.
fn aberth(coeffs: &[f64], tol: f64) -> Result<Vec<Complex64>, ExactError> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        return Ok(vec![Complex64::new(-monic[0], 0.0)]);
    }
    // Cauchy bound on root moduli.
    let radius = 1.0 + monic[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(radius * 0.5, angle)
        })
        .collect();
    let step_tol = tol * 1e-3;
    for _ in 0..MAX_ROOT_ITERATIONS {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let (pv, dpv) = horner(&monic, z[k]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dpv;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if max_step <= step_tol {
            return Ok(z.into_iter().map(|r| snap_real(r, tol)).collect());
        }
    }
    Err(ExactError::NonConvergence {
        iterations: MAX_ROOT_ITERATIONS,
    })
}

fn snap_real(z: Complex64, tol: f64) -> Complex64 {
    if z.im.abs() <= tol * z.norm().max(1.0) {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(desc: &[i64]) -> IntPolynomial {
        IntPolynomial::from_desc(desc)
    }

    #[test]
    fn square_roots_of_two() {
        let r = numeric_roots(&p(&[1, 0, -2]), 1e-9).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0].re + 2f64.sqrt()).abs() < 1e-9 && r[0].im == 0.0);
        assert!((r[1].re - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn golden_codegrees() {
        let r = numeric_roots(&p(&[1, -5, 5]), 1e-9).unwrap();
        let s5 = 5f64.sqrt();
        assert!((r[0].re - (5.0 - s5) / 2.0).abs() < 1e-9);
        assert!((r[1].re - (5.0 + s5) / 2.0).abs() < 1e-9);
    }

    #[test]
    fn linear_and_repeated() {
        assert_eq!(
            numeric_roots(&p(&[1, -7]), 1e-9).unwrap(),
            vec![Complex64::new(7.0, 0.0)]
        );
        let r = numeric_roots(&p(&[1, -12, 54, -108, 81]), 1e-9).unwrap();
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(|z| (z.re - 3.0).abs() < 1e-9 && z.im == 0.0));
    }

    #[test]
    fn complex_pair() {
        let r = numeric_roots(&p(&[1, 0, 1]), 1e-9).unwrap();
        assert!((r[0].im + 1.0).abs() < 1e-9 && (r[1].im - 1.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_constants() {
        assert!(numeric_roots(&p(&[5]), 1e-9).is_err());
        assert!(numeric_roots(&p(&[1, 1]), 0.0).is_err());
    }
}
