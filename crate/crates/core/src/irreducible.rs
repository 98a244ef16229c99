//! Irreducibility screening for monic integer polynomials.
//!
//! Three stages, cheapest first:
//! 1. rational-root test (complete for degree <= 3),
//! 2. factor-degree sieve: the degree of any rational factor must be a subset
//!    sum of the factor degrees mod every good prime; if the intersection over
//!    the trial primes leaves nothing between 0 and d, the polynomial is
//!    irreducible,
//! 3. recombination of the factors mod one large prime exceeding twice a
//!    coefficient bound for integer factors, with exact trial division.
//!
//! Stage 3 is skipped (and the polynomial accepted) when the bound does not
//! fit the modular arithmetic or there are too many modular factors.

use crate::arith::{is_prime, primes_up_to};
use crate::error::{Error, Result};
use crate::poly_fp::{factor_poly_mod_p, Fp, PolyFp};

const MAX_RECOMBINATION_FACTORS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Irreducible,
    /// A factor of the given degree exists.
    Reducible { factor_degree: usize },
    /// The bounded checks could not decide.
    Undecided,
}

fn eval_i128(poly: &[i64], x: i128) -> Option<i128> {
    let mut acc: i128 = 0;
    for &c in poly.iter().rev() {
        acc = acc.checked_mul(x)?.checked_add(c as i128)?;
    }
    Some(acc)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn has_rational_root(poly: &[i64]) -> bool {
    let a0 = poly[0];
    if a0 == 0 {
        return true;
    }
    divisors(a0.unsigned_abs()).into_iter().any(|d| {
        let d = d as i128;
        eval_i128(poly, d) == Some(0) || eval_i128(poly, -d) == Some(0)
    })
}

fn subset_sums(degrees: &[usize], d: usize) -> Vec<bool> {
    let mut reach = vec![false; d + 1];
    reach[0] = true;
    for &k in degrees {
        for s in (k..=d).rev() {
            if reach[s - k] {
                reach[s] = true;
            }
        }
    }
    reach
}

/// Exact division test for monic integer polynomials; false if inexact or on
/// overflow.
fn divides_exactly(f: &[i128], g: &[i128]) -> bool {
    let dg = g.len() - 1;
    if f.len() < g.len() {
        return false;
    }
    let mut rem: Vec<i128> = f.to_vec();
    for k in (0..=(f.len() - 1 - dg)).rev() {
        let coef = rem[k + dg];
        if coef == 0 {
            continue;
        }
        for (j, &gj) in g.iter().enumerate() {
            match gj.checked_mul(coef).and_then(|t| rem[k + j].checked_sub(t)) {
                Some(v) => rem[k + j] = v,
                None => return false,
            }
        }
    }
    rem[..dg].iter().all(|&c| c == 0)
}

fn recombine(poly: &[i64]) -> Verdict {
    let d = poly.len() - 1;
    let norm2 = poly.iter().map(|&c| (c as f64).powi(2)).sum::<f64>().sqrt();
    let bound = 2f64.powi(d as i32) * norm2;
    let start = (2.0 * bound).ceil() + 1.0;
    if !start.is_finite() || start > 2f64.powi(40) {
        return Verdict::Undecided;
    }
    let mut p = start as u64;
    let fp = loop {
        if is_prime(p) {
            let fp = Fp::new(p).expect("p is prime");
            if fp.is_squarefree(&PolyFp::from_ints(poly, p)) {
                break fp;
            }
        }
        p += 1;
    };
    let Ok(fac) = factor_poly_mod_p(poly, p) else {
        return Verdict::Undecided;
    };
    let factors: Vec<PolyFp> = fac.factors.into_iter().map(|(g, _)| g).collect();
    let r = factors.len();
    if r <= 1 {
        return Verdict::Irreducible;
    }
    if r > MAX_RECOMBINATION_FACTORS {
        return Verdict::Undecided;
    }
    let f: Vec<i128> = poly.iter().map(|&c| c as i128).collect();
    let half = (p / 2) as i128;
    for mask in 1u32..(1 << r) - 1 {
        let mut g = PolyFp::one();
        for (i, fac) in factors.iter().enumerate() {
            if mask & (1 << i) != 0 {
                g = fp.mul(&g, fac);
            }
        }
        let deg = g.degree().unwrap_or(0);
        if deg == 0 || 2 * deg > d {
            continue;
        }
        let lifted: Vec<i128> = g
            .coeffs()
            .iter()
            .map(|&c| {
                let c = c as i128;
                if c > half {
                    c - p as i128
                } else {
                    c
                }
            })
            .collect();
        if divides_exactly(&f, &lifted) {
            return Verdict::Reducible { factor_degree: deg };
        }
    }
    Verdict::Irreducible
}

/// Runs the staged check on a monic integer polynomial (constant term first).
pub fn check_irreducible(poly: &[i64], trial_primes: usize) -> Verdict {
    let d = poly.len() - 1;
    if d <= 1 {
        return Verdict::Irreducible;
    }
    if has_rational_root(poly) {
        return Verdict::Reducible { factor_degree: 1 };
    }
    if d <= 3 {
        return Verdict::Irreducible;
    }
    let mut allowed = vec![true; d + 1];
    let mut used = 0;
    for p in primes_up_to(100_000) {
        if used >= trial_primes {
            break;
        }
        let fp = Fp::new(p).expect("sieved prime");
        if !fp.is_squarefree(&PolyFp::from_ints(poly, p)) {
            continue;
        }
        used += 1;
        let Ok(fac) = factor_poly_mod_p(poly, p) else {
            continue;
        };
        let degs: Vec<usize> = fac.degrees().into_iter().map(|(k, _)| k).collect();
        let reach = subset_sums(&degs, d);
        for (a, r) in allowed.iter_mut().zip(reach) {
            *a &= r;
        }
        if allowed[1..d].iter().all(|a| !a) {
            return Verdict::Irreducible;
        }
    }
    recombine(poly)
}

/// Errors unless the polynomial passes (or cannot be refuted by) the check.
pub fn ensure_irreducible(poly: &[i64], trial_primes: usize) -> Result<()> {
    match check_irreducible(poly, trial_primes) {
        Verdict::Reducible { factor_degree } => Err(Error::ReduciblePolynomial(format!(
            "{poly:?} has a factor of degree {factor_degree}"
        ))),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_and_quadratics() {
        assert_eq!(check_irreducible(&[0, 1], 10), Verdict::Irreducible);
        assert_eq!(check_irreducible(&[1, 0, 1], 10), Verdict::Irreducible);
        assert_eq!(
            check_irreducible(&[-1, 0, 1], 10),
            Verdict::Reducible { factor_degree: 1 }
        );
        assert_eq!(
            check_irreducible(&[0, 0, 1], 10),
            Verdict::Reducible { factor_degree: 1 }
        );
    }

    #[test]
    fn cubic() {
        assert_eq!(check_irreducible(&[-2, 0, 0, 1], 10), Verdict::Irreducible);
        // (x - 2)(x^2 + 1)
        assert_eq!(
            check_irreducible(&[-2, 1, -2, 1], 10),
            Verdict::Reducible { factor_degree: 1 }
        );
    }

    #[test]
    fn quartic_reducible_everywhere_mod_p() {
        // x^4 + 1 splits mod every prime yet is irreducible over Q
        assert_eq!(check_irreducible(&[1, 0, 0, 0, 1], 30), Verdict::Irreducible);
        // x^4 - 10x^2 + 1, minimal polynomial of sqrt2 + sqrt3
        assert_eq!(check_irreducible(&[1, 0, -10, 0, 1], 30), Verdict::Irreducible);
    }

    #[test]
    fn product_of_quadratics_detected() {
        // (x^2 + 1)(x^2 + 2) = x^4 + 3x^2 + 2
        assert_eq!(
            check_irreducible(&[2, 0, 3, 0, 1], 30),
            Verdict::Reducible { factor_degree: 2 }
        );
        // (x^2 + x + 1)(x^3 - 2)
        let p = [-2, -2, -2, 1, 1, 1];
        assert!(matches!(check_irreducible(&p, 30), Verdict::Reducible { .. }));
        assert!(ensure_irreducible(&p, 30).is_err());
    }
}
