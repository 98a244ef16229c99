//! Elementary integer arithmetic: modular operations, primality, sieving,
//! quadratic characters.

use crate::error::{Error, Result};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes `<= n` by an odd-only sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    // index i represents 2i+1
    let half = (n - 1) / 2 + 1;
    let mut composite = vec![false; half];
    composite[0] = true;
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= n {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut out = Vec::with_capacity(n / 10 + 8);
    out.push(2);
    out.extend(
        composite
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(i, _)| (2 * i + 1) as u64),
    );
    out
}

/// Kronecker symbol `(d | p)` for a prime `p`.
pub fn kronecker_symbol(d: i64, p: u64) -> Result<i8> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        if d % 2 == 0 {
            return Ok(0);
        }
        return Ok(match d.rem_euclid(8) {
            1 | 7 => 1,
            _ => -1,
        });
    }
    let r = d.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(r, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

/// Signed squarefree kernel: `n = kernel * k^2` with `kernel` squarefree.
pub fn squarefree_part(n: i64) -> i64 {
    if n == 0 {
        return 0;
    }
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut kernel = 1u64;
    let mut q = 2u64;
    while q * q <= m {
        let mut e = 0;
        while m % q == 0 {
            m /= q;
            e += 1;
        }
        if e % 2 == 1 {
            kernel *= q;
        }
        q += if q == 2 { 1 } else { 2 };
    }
    kernel *= m;
    sign * kernel as i64
}

/// Fundamental discriminant of `Q(sqrt(m))` for squarefree `m != 0, 1`.
pub fn fundamental_discriminant(m: i64) -> i64 {
    if m.rem_euclid(4) == 1 {
        m
    } else {
        4 * m
    }
}

/// Integer `floor(log_p(n))`, i.e. the largest `k` with `p^k <= n`.
pub fn ilog(p: u64, n: u64) -> u32 {
    let mut k = 0;
    let mut acc = 1u64;
    while let Some(next) = acc.checked_mul(p) {
        if next > n {
            break;
        }
        acc = next;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_matches_trial_division() {
        let sieve = primes_up_to(2000);
        let brute: Vec<u64> = (2..=2000u64)
            .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .collect();
        assert_eq!(sieve, brute);
        assert!(primes_up_to(1).is_empty());
        assert_eq!(primes_up_to(2), vec![2]);
        assert_eq!(primes_up_to(10), vec![2, 3, 5, 7]);
    }

    #[test]
    fn miller_rabin() {
        for n in 0..5000u64 {
            let brute = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), brute, "n = {n}");
        }
        assert!(is_prime(18446744073709551557));
        assert!(!is_prime(3215031751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker_symbol(-4, 5).unwrap(), 1);
        assert_eq!(kronecker_symbol(-4, 3).unwrap(), -1);
        assert_eq!(kronecker_symbol(-4, 2).unwrap(), 0);
        assert!(matches!(kronecker_symbol(-4, 9), Err(Error::NotPrime(9))));
        // 5 is a square mod 11 (4^2 = 16)
        assert_eq!(kronecker_symbol(5, 11).unwrap(), 1);
        assert_eq!(kronecker_symbol(5, 2).unwrap(), -1);
        assert_eq!(kronecker_symbol(8, 7).unwrap(), 1);
    }

    #[test]
    fn kronecker_agrees_with_squares() {
        for p in primes_up_to(200).into_iter().skip(1) {
            for d in -60i64..60 {
                let r = d.rem_euclid(p as i64) as u64;
                let expect = if r == 0 {
                    0
                } else if (1..p).any(|y| y * y % p == r) {
                    1
                } else {
                    -1
                };
                assert_eq!(kronecker_symbol(d, p).unwrap(), expect);
            }
        }
    }

    #[test]
    fn squarefree_and_discriminant() {
        assert_eq!(squarefree_part(-4), -1);
        assert_eq!(squarefree_part(-20), -5);
        assert_eq!(squarefree_part(8), 2);
        assert_eq!(squarefree_part(45), 5);
        assert_eq!(fundamental_discriminant(-1), -4);
        assert_eq!(fundamental_discriminant(-5), -20);
        assert_eq!(fundamental_discriminant(2), 8);
        assert_eq!(fundamental_discriminant(-3), -3);
        assert_eq!(fundamental_discriminant(5), 5);
    }

    #[test]
    fn integer_log() {
        assert_eq!(ilog(2, 1), 0);
        assert_eq!(ilog(2, 8), 3);
        assert_eq!(ilog(3, 26), 2);
        assert_eq!(ilog(10, u64::MAX), 19);
    }
}
