//! Polynomials over a prime field `F_p` with `p < 2^31`, used by the
//! factorization over the integers.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::poly::IntPolynomial;

/// Coefficients lowest degree first, trimmed, each in `[0, p)`.
pub(crate) type ModPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(p > 2 && p < (1 << 31));
        PrimeField { p }
    }

    #[inline]
    fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[cfg(test)]
    #[inline]
    fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn pow(self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn reduce(self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    pub fn reduce_poly(self, f: &IntPolynomial) -> ModPoly {
        let mut out: ModPoly = f.coeffs().iter().map(|c| self.reduce(c)).collect();
        trim(&mut out);
        out
    }

    #[cfg(test)]
    pub fn poly_add(self, a: &[u64], b: &[u64]) -> ModPoly {
        let n = a.len().max(b.len());
        let mut out: ModPoly = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut out);
        out
    }

    pub fn poly_sub(self, a: &[u64], b: &[u64]) -> ModPoly {
        let n = a.len().max(b.len());
        let mut out: ModPoly = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut out);
        out
    }

    pub fn poly_mul(self, a: &[u64], b: &[u64]) -> ModPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        trim(&mut out);
        out
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn div_rem(self, a: &[u64], b: &[u64]) -> (ModPoly, ModPoly) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        let db = b.len() - 1;
        if a.len() <= db {
            return (Vec::new(), a.to_vec());
        }
        let inv_lead = self.inv(b[db]);
        let mut r = a.to_vec();
        let mut q = vec![0u64; a.len() - db];
        for i in (0..q.len()).rev() {
            let c = self.mul(r[i + db], inv_lead);
            q[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = self.sub(r[i + j], self.mul(c, bj));
            }
        }
        r.truncate(db);
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }

    pub fn rem(self, a: &[u64], b: &[u64]) -> ModPoly {
        self.div_rem(a, b).1
    }

    pub fn make_monic(self, a: &[u64]) -> ModPoly {
        match a.last() {
            None => Vec::new(),
            Some(&l) => {
                let inv = self.inv(l);
                a.iter().map(|&c| self.mul(c, inv)).collect()
            }
        }
    }

    /// Monic gcd.
    pub fn gcd(self, a: &[u64], b: &[u64]) -> ModPoly {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.make_monic(&a)
    }

    /// Extended gcd: returns `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn ext_gcd(self, a: &[u64], b: &[u64]) -> (ModPoly, ModPoly, ModPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1): (ModPoly, ModPoly) = (vec![1], Vec::new());
        let (mut t0, mut t1): (ModPoly, ModPoly) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let t2 = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = self.inv(*r0.last().expect("gcd of two zero polynomials"));
        let scale = |v: &ModPoly| -> ModPoly { v.iter().map(|&c| self.mul(c, inv)).collect() };
        (scale(&r0), scale(&s0), scale(&t0))
    }

    pub fn derivative(self, a: &[u64]) -> ModPoly {
        let mut out: ModPoly = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, i as u64 % self.p))
            .collect();
        trim(&mut out);
        out
    }

    /// `base^e mod modulus`.
    pub fn pow_mod(self, base: &[u64], mut e: u64, modulus: &[u64]) -> ModPoly {
        let mut acc: ModPoly = vec![1];
        let mut b = self.rem(base, modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rem(&self.poly_mul(&acc, &b), modulus);
            }
            e >>= 1;
            if e > 0 {
                b = self.rem(&self.poly_mul(&b, &b), modulus);
            }
        }
        acc
    }

    pub fn is_squarefree(self, f: &[u64]) -> bool {
        let d = self.derivative(f);
        !d.is_empty() && self.gcd(f, &d).len() == 1
    }

    /// Distinct-degree factorization of a monic squarefree `f`: pairs of
    /// (product of all irreducible factors of degree `d`, `d`).
    pub fn distinct_degree(self, f: &[u64]) -> Vec<(ModPoly, usize)> {
        let mut out = Vec::new();
        let mut rest = f.to_vec();
        let x: ModPoly = vec![0, 1];
        let mut h = x.clone();
        let mut d = 0;
        while rest.len() > 1 {
            d += 1;
            if 2 * d > rest.len() - 1 {
                let deg = rest.len() - 1;
                out.push((rest, deg));
                break;
            }
            h = self.pow_mod(&h, self.p, &rest);
            let g = self.gcd(&self.poly_sub(&h, &x), &rest);
            if g.len() > 1 {
                rest = self.div_rem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
        }
        out
    }

    /// Splits a monic product of irreducibles all of degree `d` into its
    /// factors (Cantor–Zassenhaus). The splitting polynomials are drawn
    /// from a fixed sequence so results are reproducible.
    pub fn equal_degree(self, g: &[u64], d: usize) -> Vec<ModPoly> {
        let n = g.len() - 1;
        if n == d {
            return vec![g.to_vec()];
        }
        let mut seed: u64 = 0x9e37_79b9_7f4a_7c15 ^ (n as u64);
        loop {
            let u: ModPoly = {
                let mut u: ModPoly = (0..n)
                    .map(|_| {
                        seed = seed
                            .wrapping_mul(6_364_136_223_846_793_005)
                            .wrapping_add(1_442_695_040_888_963_407);
                        (seed >> 33) % self.p
                    })
                    .collect();
                trim(&mut u);
                u
            };
            if u.len() < 2 {
                continue;
            }
            // u^((p^d - 1) / 2) = (u * u^p * ... * u^(p^(d-1)))^((p - 1) / 2)
            let mut acc = self.rem(&u, g);
            let mut frob = acc.clone();
            for _ in 1..d {
                frob = self.pow_mod(&frob, self.p, g);
                acc = self.rem(&self.poly_mul(&acc, &frob), g);
            }
            let w = self.pow_mod(&acc, (self.p - 1) / 2, g);
            let w1 = self.poly_sub(&w, &[1]);
            let h = self.gcd(&w1, g);
            if h.len() > 1 && h.len() < g.len() {
                let other = self.div_rem(g, &h).0;
                let mut parts = self.equal_degree(&h, d);
                parts.extend(self.equal_degree(&other, d));
                return parts;
            }
        }
    }

    /// Complete factorization of a monic squarefree polynomial into monic
    /// irreducibles, sorted by degree then coefficients.
    pub fn factor_squarefree(self, f: &[u64]) -> Vec<ModPoly> {
        let mut out: Vec<ModPoly> = self
            .distinct_degree(f)
            .into_iter()
            .flat_map(|(g, d)| self.equal_degree(&g, d))
            .collect();
        out.sort_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.iter().rev().cmp(b.iter().rev()))
        });
        out
    }
}

pub(crate) fn trim(v: &mut ModPoly) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Primes just below `2^31` used for modular images, largest first.
pub(crate) fn candidate_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        (3u64..)
            .map(|i| (1u64 << 31) - 2 * i + 1)
            .filter(|&n| is_prime_u64(n))
            .take(48)
            .collect()
    })
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut i = 41u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_product_of_linears() {
        let f = PrimeField::new(101);
        // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
        let p: ModPoly = vec![101 - 6, 11, 101 - 6, 1];
        let parts = f.factor_squarefree(&p);
        assert_eq!(parts, vec![vec![98, 1], vec![99, 1], vec![100, 1]]);
    }

    #[test]
    fn irreducible_quadratic_stays_whole() {
        let f = PrimeField::new(7);
        // x^2 + 1 is irreducible mod 7 (7 = 3 mod 4)
        assert_eq!(f.factor_squarefree(&[1, 0, 1]), vec![vec![1, 0, 1]]);
    }

    #[test]
    fn ext_gcd_bezout() {
        let f = PrimeField::new(13);
        let a: ModPoly = vec![1, 0, 1];
        let b: ModPoly = vec![2, 1];
        let (g, s, t) = f.ext_gcd(&a, &b);
        assert_eq!(g, vec![1]);
        let lhs = f.poly_add(&f.poly_mul(&s, &a), &f.poly_mul(&t, &b));
        assert_eq!(lhs, vec![1]);
    }

    #[test]
    fn primes_are_prime() {
        let ps = candidate_primes();
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(ps.iter().all(|&p| is_prime_u64(p) && p < (1 << 31)));
    }
}
