//! Prime ideals and integral ideals of bounded norm, as exponent vectors over
//! prime ideals, and the arithmetic functions evaluated on them.
//!
//! This is the brute-force oracle for the aggregated coefficient engine: it
//! visits every ideal individually.

use crate::arith::primes_up_to;
use crate::field::{split_prime, FieldSpec, PrimeIdealRef};
use crate::error::{Error, Result};

/// Largest admissible norm bound.
pub const MAX_NORM_BOUND: u64 = (1 << 63) - 1;

/// An integral ideal in factored form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealFactored {
    factors: Vec<(PrimeIdealRef, u32)>,
    norm: u64,
}

impl IdealFactored {
    pub fn unit() -> Self {
        IdealFactored {
            factors: Vec::new(),
            norm: 1,
        }
    }

    /// Builds from (prime, exponent) pairs; sorts, merges repeated primes and
    /// checks the norm for overflow.
    pub fn from_factors(mut factors: Vec<(PrimeIdealRef, u32)>) -> Result<Self> {
        factors.retain(|(_, e)| *e > 0);
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(PrimeIdealRef, u32)> = Vec::with_capacity(factors.len());
        for (q, e) in factors {
            match merged.last_mut() {
                Some((last, le)) if *last == q => *le += e,
                _ => merged.push((q, e)),
            }
        }
        let mut norm = 1u64;
        for (q, e) in &merged {
            let pe = q
                .norm
                .checked_pow(*e)
                .ok_or_else(|| Error::Overflow("ideal norm".into()))?;
            norm = norm
                .checked_mul(pe)
                .ok_or_else(|| Error::Overflow("ideal norm".into()))?;
        }
        Ok(IdealFactored {
            factors: merged,
            norm,
        })
    }

    pub fn factors(&self) -> &[(PrimeIdealRef, u32)] {
        &self.factors
    }

    pub fn norm(&self) -> u64 {
        self.norm
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// Product of two ideals.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut f = self.factors.clone();
        f.extend_from_slice(&other.factors);
        Self::from_factors(f)
    }

    /// Canonical key (p, slot, exponent) for duplicate detection.
    pub fn key(&self) -> Vec<(u64, u32, u32)> {
        self.factors.iter().map(|(q, e)| (q.p, q.slot, *e)).collect()
    }
}

/// Prime ideals of norm `<= bound`, sorted by `(norm, p, slot)`.
pub fn prime_ideals_up_to(field: &FieldSpec, bound: u64) -> Result<Vec<PrimeIdealRef>> {
    let mut out = Vec::new();
    for p in primes_up_to(bound) {
        let st = split_prime(field, p)?;
        for (slot, shape) in st.factors().iter().enumerate() {
            let Some(norm) = p.checked_pow(shape.f) else {
                continue;
            };
            if norm <= bound {
                out.push(PrimeIdealRef::new(p, *shape, slot as u32)?);
            }
        }
    }
    out.sort();
    Ok(out)
}

struct Frame {
    ideal: IdealFactored,
    next: usize,
}

/// Depth-first stream of all integral ideals of norm `<= bound`.
///
/// Ideals come out in DFS order over the sorted prime list, not sorted by
/// norm. Each ideal appears exactly once.
pub struct IdealStream {
    primes: Vec<PrimeIdealRef>,
    bound: u64,
    stack: Vec<Frame>,
}

impl Iterator for IdealStream {
    type Item = IdealFactored;

    fn next(&mut self) -> Option<IdealFactored> {
        let Frame { ideal, next } = self.stack.pop()?;
        // children: multiply by q^e for each prime q at index >= next
        let mut children = Vec::new();
        for (j, q) in self.primes.iter().enumerate().skip(next) {
            let Some(mut n) = ideal.norm.checked_mul(q.norm) else {
                break;
            };
            if n > self.bound {
                break;
            }
            let mut e = 1;
            loop {
                let mut factors = ideal.factors.clone();
                factors.push((*q, e));
                children.push(Frame {
                    ideal: IdealFactored { factors, norm: n },
                    next: j + 1,
                });
                match n.checked_mul(q.norm) {
                    Some(m) if m <= self.bound => {
                        n = m;
                        e += 1;
                    }
                    _ => break,
                }
            }
        }
        // reverse so the smallest prime is explored first
        self.stack.extend(children.into_iter().rev());
        Some(ideal)
    }
}

pub fn enumerate_ideals(field: &FieldSpec, bound: u64) -> Result<IdealStream> {
    if bound == 0 || bound > MAX_NORM_BOUND {
        return Err(Error::InvalidArgument(format!(
            "norm bound must be in [1, 2^63 - 1], got {bound}"
        )));
    }
    let primes = prime_ideals_up_to(field, bound)?;
    Ok(IdealStream {
        primes,
        bound,
        stack: vec![Frame {
            ideal: IdealFactored::unit(),
            next: 0,
        }],
    })
}

/// Möbius function on ideals.
pub fn mu_k(a: &IdealFactored) -> i8 {
    if a.factors.iter().any(|(_, e)| *e >= 2) {
        0
    } else if a.factors.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Liouville function on ideals.
pub fn lambda_k(a: &IdealFactored) -> i8 {
    let omega: u32 = a.factors.iter().map(|(_, e)| e).sum();
    if omega % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Von Mangoldt function on ideals: `log N(p)` on prime-ideal powers.
pub fn von_mangoldt_k(a: &IdealFactored) -> f64 {
    match a.factors.as_slice() {
        [(q, _)] => (q.norm as f64).ln(),
        _ => 0.0,
    }
}

/// Number of integral ideals dividing `a`.
pub fn num_divisors(a: &IdealFactored) -> u64 {
    a.factors.iter().map(|(_, e)| *e as u64 + 1).product()
}

/// `sum over b with b^2 | a of mu_K(a / b^2)`, by enumerating the square
/// divisors of `a` directly.
pub fn lambda_via_square_divisors(a: &IdealFactored) -> i64 {
    // exponent choices for b: 0..=e/2 per prime; mu(a/b^2) needs every
    // remaining exponent e - 2j <= 1
    let mut total = 0i64;
    let exps: Vec<u32> = a.factors.iter().map(|(_, e)| *e).collect();
    let mut choice = vec![0u32; exps.len()];
    loop {
        let mut sign = 1i64;
        let mut squarefree = true;
        for (e, j) in exps.iter().zip(&choice) {
            match e - 2 * j {
                0 => {}
                1 => sign = -sign,
                _ => {
                    squarefree = false;
                    break;
                }
            }
        }
        if squarefree {
            total += sign;
        }
        // odometer
        let mut i = 0;
        loop {
            if i == exps.len() {
                return total;
            }
            if choice[i] < exps[i] / 2 {
                choice[i] += 1;
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_field_spec, PrimeShape};
    use std::collections::HashSet;

    fn gaussian() -> FieldSpec {
        parse_field_spec("min_poly = [1, 0, 1]").unwrap()
    }

    fn q(p: u64, f: u32, slot: u32) -> PrimeIdealRef {
        PrimeIdealRef::new(p, PrimeShape { e: 1, f }, slot).unwrap()
    }

    #[test]
    fn prime_ideals_gaussian() {
        let norms: Vec<u64> = prime_ideals_up_to(&gaussian(), 10)
            .unwrap()
            .iter()
            .map(|q| q.norm)
            .collect();
        assert_eq!(norms, vec![2, 5, 5, 9]);
    }

    #[test]
    fn prime_ideals_rationals() {
        let norms: Vec<u64> = prime_ideals_up_to(&FieldSpec::rationals(), 10)
            .unwrap()
            .iter()
            .map(|q| q.norm)
            .collect();
        assert_eq!(norms, vec![2, 3, 5, 7]);
        assert!(prime_ideals_up_to(&gaussian(), 1).unwrap().is_empty());
    }

    #[test]
    fn enumerate_gaussian_to_10() {
        let mut norms: Vec<u64> = enumerate_ideals(&gaussian(), 10).unwrap().map(|a| a.norm()).collect();
        norms.sort();
        assert_eq!(norms, vec![1, 2, 4, 5, 5, 8, 9, 10, 10]);
    }

    #[test]
    fn enumerate_rationals_to_10() {
        let mut norms: Vec<u64> = enumerate_ideals(&FieldSpec::rationals(), 10)
            .unwrap()
            .map(|a| a.norm())
            .collect();
        norms.sort();
        assert_eq!(norms, (1..=10).collect::<Vec<_>>());
    }

    #[test]
    fn enumerate_bound_one_is_unit_only() {
        let all: Vec<_> = enumerate_ideals(&gaussian(), 1).unwrap().collect();
        assert_eq!(all, vec![IdealFactored::unit()]);
        assert!(enumerate_ideals(&gaussian(), 0).is_err());
    }

    #[test]
    fn enumeration_has_no_duplicates_and_sorted_factors() {
        let k = parse_field_spec("min_poly = [5, 0, 1]").unwrap();
        let mut seen = HashSet::new();
        for a in enumerate_ideals(&k, 5000).unwrap() {
            assert!(a.factors().windows(2).all(|w| w[0].0 < w[1].0));
            assert!(a.norm() <= 5000);
            assert!(seen.insert(a.key()));
        }
    }

    #[test]
    fn mu_examples() {
        let p1 = q(5, 1, 0);
        let p2 = q(5, 1, 1);
        assert_eq!(mu_k(&IdealFactored::unit()), 1);
        assert_eq!(mu_k(&IdealFactored::from_factors(vec![(p1, 1), (p2, 1)]).unwrap()), 1);
        assert_eq!(mu_k(&IdealFactored::from_factors(vec![(p1, 2)]).unwrap()), 0);
        assert_eq!(mu_k(&IdealFactored::from_factors(vec![(p1, 1)]).unwrap()), -1);
    }

    #[test]
    fn lambda_examples() {
        let (a, b, c) = (q(2, 1, 0), q(5, 1, 0), q(5, 1, 1));
        assert_eq!(lambda_k(&IdealFactored::unit()), 1);
        assert_eq!(lambda_k(&IdealFactored::from_factors(vec![(a, 2)]).unwrap()), 1);
        assert_eq!(
            lambda_k(&IdealFactored::from_factors(vec![(a, 1), (b, 1), (c, 1)]).unwrap()),
            -1
        );
    }

    #[test]
    fn von_mangoldt_examples() {
        let p2 = q(2, 1, 0);
        let a = IdealFactored::from_factors(vec![(p2, 1)]).unwrap();
        assert!((von_mangoldt_k(&a) - 2f64.ln()).abs() < 1e-15);
        let cube = IdealFactored::from_factors(vec![(p2, 3)]).unwrap();
        assert!((von_mangoldt_k(&cube) - 2f64.ln()).abs() < 1e-15);
        let two = IdealFactored::from_factors(vec![(q(5, 1, 0), 1), (q(5, 1, 1), 1)]).unwrap();
        assert_eq!(von_mangoldt_k(&two), 0.0);
        assert_eq!(von_mangoldt_k(&IdealFactored::unit()), 0.0);
    }

    #[test]
    fn divisor_counts() {
        let (a, b) = (q(2, 1, 0), q(3, 2, 0));
        assert_eq!(num_divisors(&IdealFactored::unit()), 1);
        assert_eq!(num_divisors(&IdealFactored::from_factors(vec![(a, 3)]).unwrap()), 4);
        let x = IdealFactored::from_factors(vec![(a, 2), (b, 1)]).unwrap();
        // brute force: divisors are a^i b^j for i <= 2, j <= 1
        let brute = (0..=2).flat_map(|i| (0..=1).map(move |j| (i, j))).count() as u64;
        assert_eq!(num_divisors(&x), brute);
        assert_eq!(num_divisors(&x), 6);
    }

    #[test]
    fn from_factors_merges_and_checks_overflow() {
        let a = q(2, 1, 0);
        let x = IdealFactored::from_factors(vec![(a, 1), (a, 2)]).unwrap();
        assert_eq!(x.factors(), &[(a, 3)]);
        assert_eq!(x.norm(), 8);
        assert!(IdealFactored::from_factors(vec![(a, 64)]).is_err());
    }

    #[test]
    fn multiplicativity_on_coprime_pairs() {
        let k = gaussian();
        let ideals: Vec<IdealFactored> = enumerate_ideals(&k, 300).unwrap().collect();
        for a in &ideals {
            for b in &ideals {
                let coprime = a
                    .factors()
                    .iter()
                    .all(|(qa, _)| b.factors().iter().all(|(qb, _)| qa != qb));
                if !coprime || a.norm() * b.norm() > 300 {
                    continue;
                }
                let ab = a.mul(b).unwrap();
                assert_eq!(mu_k(&ab), mu_k(a) * mu_k(b));
                assert_eq!(lambda_k(&ab), lambda_k(a) * lambda_k(b));
                assert_eq!(num_divisors(&ab), num_divisors(a) * num_divisors(b));
            }
        }
    }

    #[test]
    fn liouville_from_square_divisors() {
        for k in [gaussian(), FieldSpec::rationals()] {
            for a in enumerate_ideals(&k, 10_000).unwrap() {
                assert_eq!(lambda_via_square_divisors(&a), lambda_k(&a) as i64);
            }
        }
    }
}
