#![allow(dead_code)]

use std::path::PathBuf;

use nfsums_core::{parse_field_spec, FieldSpec};

pub fn fields_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fields")
}

pub fn load(name: &str) -> FieldSpec {
    let text = std::fs::read_to_string(fields_dir().join(name)).unwrap();
    parse_field_spec(&text).unwrap()
}

/// The four quadratic-or-rational test fields.
pub fn test_fields() -> Vec<(&'static str, FieldSpec)> {
    ["rationals.toml", "gaussian.toml", "sqrt_minus5.toml", "sqrt2.toml"]
        .into_iter()
        .map(|f| (f, load(f)))
        .collect()
}

/// Trial-division factorization `n = prod p^k`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut k = 0;
        while n % d == 0 {
            n /= d;
            k += 1;
        }
        if k > 0 {
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Legendre symbol by Euler's criterion, `p` an odd prime.
fn legendre(a: i64, p: u64) -> i64 {
    let a = a.rem_euclid(p as i64) as u128;
    if a == 0 {
        return 0;
    }
    let (mut base, mut e, mut acc) = (a, (p - 1) / 2, 1u128);
    let m = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    if acc == 1 { 1 } else { -1 }
}

/// Kronecker character `(D | n)` of a fundamental discriminant, extended
/// multiplicatively from primes.
pub fn chi(disc: i64, n: u64) -> i64 {
    factorize(n)
        .into_iter()
        .map(|(p, k)| {
            let v = if p == 2 {
                if disc % 2 == 0 {
                    0
                } else if disc.rem_euclid(8) == 1 || disc.rem_euclid(8) == 7 {
                    1
                } else {
                    -1
                }
            } else {
                legendre(disc, p)
            };
            v.pow(k)
        })
        .product()
}

/// Number of ideals of norm `n` in the quadratic field of discriminant
/// `disc`: `sum_{d | n} (disc | d)`.
pub fn quadratic_ideal_count(disc: i64, n: u64) -> i64 {
    (1..=n).filter(|d| n % d == 0).map(|d| chi(disc, d)).sum()
}

pub fn classical_mu(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, k)| k > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn classical_liouville(n: u64) -> i64 {
    let omega: u32 = factorize(n).iter().map(|&(_, k)| k).sum();
    if omega % 2 == 0 { 1 } else { -1 }
}
