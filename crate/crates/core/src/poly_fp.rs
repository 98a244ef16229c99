//! Dense univariate polynomials over the prime field `F_p` and their complete
//! factorization (squarefree decomposition, distinct-degree splitting,
//! Cantor-Zassenhaus equal-degree splitting).
//!
//! Coefficients are stored constant term first and kept trimmed, so the zero
//! polynomial is the empty vector.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::arith::{is_prime, mul_mod, pow_mod};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyFp {
    coeffs: Vec<u64>,
}

impl PolyFp {
    /// Builds from integer coefficients (constant first), reducing mod `p`.
    pub fn from_ints(coeffs: &[i64], p: u64) -> Self {
        let coeffs = coeffs
            .iter()
            .map(|&c| (c as i128).rem_euclid(p as i128) as u64)
            .collect();
        Self::from_residues(coeffs)
    }

    fn from_residues(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyFp { coeffs }
    }

    pub fn zero() -> Self {
        PolyFp { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyFp { coeffs: vec![1] }
    }

    pub fn x() -> Self {
        PolyFp { coeffs: vec![0, 1] }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }
}

impl PartialOrd for PolyFp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by degree, then lexicographically on the coefficient
/// vector (constant term first).
impl Ord for PolyFp {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

/// Arithmetic context for a fixed prime modulus.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Fp { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn add_s(&self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.p as u128) as u64
    }

    #[inline]
    fn sub_s(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    #[inline]
    fn mul_s(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    fn inv_s(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn add(&self, a: &PolyFp, b: &PolyFp) -> PolyFp {
        let n = a.coeffs.len().max(b.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let x = a.coeffs.get(i).copied().unwrap_or(0);
                let y = b.coeffs.get(i).copied().unwrap_or(0);
                self.add_s(x, y)
            })
            .collect();
        PolyFp::from_residues(c)
    }

    pub fn sub(&self, a: &PolyFp, b: &PolyFp) -> PolyFp {
        let n = a.coeffs.len().max(b.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let x = a.coeffs.get(i).copied().unwrap_or(0);
                let y = b.coeffs.get(i).copied().unwrap_or(0);
                self.sub_s(x, y)
            })
            .collect();
        PolyFp::from_residues(c)
    }

    pub fn mul(&self, a: &PolyFp, b: &PolyFp) -> PolyFp {
        if a.is_zero() || b.is_zero() {
            return PolyFp::zero();
        }
        let mut c = vec![0u64; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                c[i + j] = self.add_s(c[i + j], self.mul_s(x, y));
            }
        }
        PolyFp::from_residues(c)
    }

    pub fn scale(&self, a: &PolyFp, k: u64) -> PolyFp {
        PolyFp::from_residues(a.coeffs.iter().map(|&c| self.mul_s(c, k)).collect())
    }

    pub fn monic(&self, a: &PolyFp) -> PolyFp {
        if a.is_zero() {
            return PolyFp::zero();
        }
        let inv = self.inv_s(a.leading());
        self.scale(a, inv)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, a: &PolyFp, b: &PolyFp) -> (PolyFp, PolyFp) {
        assert!(!b.is_zero(), "polynomial division by zero");
        if a.coeffs.len() < b.coeffs.len() {
            return (PolyFp::zero(), a.clone());
        }
        let db = b.deg();
        let inv_lead = self.inv_s(b.leading());
        let mut rem = a.coeffs.clone();
        let mut quot = vec![0u64; a.coeffs.len() - db];
        for k in (0..quot.len()).rev() {
            let coef = self.mul_s(rem[k + db], inv_lead);
            quot[k] = coef;
            if coef == 0 {
                continue;
            }
            for (j, &bj) in b.coeffs.iter().enumerate() {
                rem[k + j] = self.sub_s(rem[k + j], self.mul_s(coef, bj));
            }
        }
        rem.truncate(db);
        (PolyFp::from_residues(quot), PolyFp::from_residues(rem))
    }

    pub fn rem(&self, a: &PolyFp, b: &PolyFp) -> PolyFp {
        self.divrem(a, b).1
    }

    pub fn div_exact(&self, a: &PolyFp, b: &PolyFp) -> PolyFp {
        let (q, r) = self.divrem(a, b);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, a: &PolyFp, b: &PolyFp) -> PolyFp {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    pub fn derivative(&self, a: &PolyFp) -> PolyFp {
        let c = a
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul_s(c, i as u64 % self.p))
            .collect();
        PolyFp::from_residues(c)
    }

    pub fn mulmod(&self, a: &PolyFp, b: &PolyFp, m: &PolyFp) -> PolyFp {
        self.rem(&self.mul(a, b), m)
    }

    /// `base^exp mod m`.
    pub fn powmod(&self, base: &PolyFp, mut exp: u64, m: &PolyFp) -> PolyFp {
        let mut acc = self.rem(&PolyFp::one(), m);
        let mut b = self.rem(base, m);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mulmod(&acc, &b, m);
            }
            exp >>= 1;
            if exp > 0 {
                b = self.mulmod(&b, &b, m);
            }
        }
        acc
    }

    /// `f` is squarefree (for monic `f` of positive degree this is
    /// equivalent to `p` not dividing its discriminant).
    pub fn is_squarefree(&self, f: &PolyFp) -> bool {
        let d = self.derivative(f);
        if d.is_zero() {
            return f.degree().unwrap_or(0) == 0;
        }
        self.gcd(f, &d).is_one()
    }

    /// Squarefree decomposition of a monic polynomial: pairs of
    /// (squarefree factor, multiplicity), factors pairwise coprime.
    pub fn squarefree_decomposition(&self, f: &PolyFp) -> Vec<(PolyFp, u32)> {
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let df = self.derivative(f);
        let mut c = self.gcd(f, &df);
        let mut w = self.div_exact(f, &c);
        let mut i = 1u32;
        while !w.is_one() {
            let y = self.gcd(&w, &c);
            let fac = self.div_exact(&w, &y);
            if fac.degree().unwrap_or(0) > 0 {
                out.push((fac, i));
            }
            w = y;
            c = self.div_exact(&c, &w);
            i += 1;
        }
        if !c.is_one() {
            // c is a polynomial in x^p; its p-th root has coefficients c_{kp}
            // because the Frobenius fixes F_p.
            let root = PolyFp::from_residues(
                c.coeffs.iter().step_by(self.p as usize).copied().collect(),
            );
            for (g, m) in self.squarefree_decomposition(&root) {
                out.push((g, m * self.p as u32));
            }
        }
        out
    }

    /// Distinct-degree splitting of a monic squarefree polynomial into
    /// products of irreducibles of equal degree: pairs (degree, product).
    pub fn distinct_degree(&self, f: &PolyFp) -> Vec<(usize, PolyFp)> {
        let mut out = Vec::new();
        let mut rest = f.clone();
        let x = PolyFp::x();
        let mut h = self.rem(&x, &rest);
        let mut d = 1usize;
        while rest.deg() >= 2 * d {
            h = self.powmod(&h, self.p, &rest);
            let g = self.gcd(&self.sub(&h, &x), &rest);
            if !g.is_one() {
                rest = self.div_exact(&rest, &g);
                h = self.rem(&h, &rest);
                out.push((d, g));
            }
            d += 1;
        }
        if rest.deg() > 0 {
            out.push((rest.deg(), rest));
        }
        out
    }

    /// Cantor-Zassenhaus splitting of a monic squarefree `f` whose irreducible
    /// factors all have degree `k`.
    pub fn equal_degree(&self, f: &PolyFp, k: usize, rng: &mut ChaCha8Rng) -> Vec<PolyFp> {
        let n = f.deg();
        if n == k {
            return vec![f.clone()];
        }
        loop {
            let a = PolyFp::from_residues((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if self.p == 2 {
                // absolute trace a + a^2 + ... + a^(2^(k-1))
                let mut t = a.clone();
                let mut acc = a.clone();
                for _ in 1..k {
                    t = self.mulmod(&t, &t, f);
                    acc = self.add(&acc, &t);
                }
                acc
            } else {
                // a^((p^k - 1)/2) = (a^(1 + p + ... + p^(k-1)))^((p-1)/2)
                let mut t = self.rem(&a, f);
                let mut acc = t.clone();
                for _ in 1..k {
                    t = self.powmod(&t, self.p, f);
                    acc = self.mulmod(&acc, &t, f);
                }
                let half = self.powmod(&acc, (self.p - 1) / 2, f);
                self.sub(&half, &PolyFp::one())
            };
            let g = self.gcd(&b, f);
            let dg = g.degree().unwrap_or(0);
            if dg > 0 && dg < n {
                let other = self.div_exact(f, &g);
                let mut left = self.equal_degree(&g, k, rng);
                left.extend(self.equal_degree(&other, k, rng));
                return left;
            }
        }
    }
}

/// Complete factorization `poly = leading * prod(factor^mult)` over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub leading: u64,
    /// Monic irreducible factors with multiplicity, canonically sorted.
    pub factors: Vec<(PolyFp, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self, fp: &Fp) -> PolyFp {
        let mut acc = PolyFp::from_residues(vec![self.leading]);
        for (g, m) in &self.factors {
            for _ in 0..*m {
                acc = fp.mul(&acc, g);
            }
        }
        acc
    }

    pub fn degrees(&self) -> Vec<(usize, u32)> {
        self.factors
            .iter()
            .map(|(g, m)| (g.degree().unwrap_or(0), *m))
            .collect()
    }
}

/// Stable seed for the equal-degree splitting of `poly` mod `p`.
fn content_seed(poly: &[i64], p: u64) -> u64 {
    let mut h = Sha256::new();
    h.update(b"factor-mod-p");
    h.update(p.to_le_bytes());
    for c in poly {
        h.update(c.to_le_bytes());
    }
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("sha256 is 32 bytes"))
}

/// Factors an integer polynomial modulo a prime `p`.
///
/// The randomized equal-degree step is seeded from a hash of `(poly, p)`, so
/// the output is a pure function of the input; the canonical sort makes it
/// independent of the seed anyway.
pub fn factor_poly_mod_p(poly: &[i64], p: u64) -> Result<Factorization> {
    let fp = Fp::new(p)?;
    let f = PolyFp::from_ints(poly, p);
    if f.is_zero() {
        return Err(Error::InvalidPolynomial(format!("polynomial vanishes mod {p}")));
    }
    let leading = f.leading();
    let f = fp.monic(&f);
    let mut rng = ChaCha8Rng::seed_from_u64(content_seed(poly, p));
    let mut acc: BTreeMap<PolyFp, u32> = BTreeMap::new();
    for (sqf, mult) in fp.squarefree_decomposition(&f) {
        for (deg, block) in fp.distinct_degree(&sqf) {
            for g in fp.equal_degree(&block, deg, &mut rng) {
                *acc.entry(g).or_insert(0) += mult;
            }
        }
    }
    Ok(Factorization {
        leading,
        factors: acc.into_iter().collect(),
    })
}
