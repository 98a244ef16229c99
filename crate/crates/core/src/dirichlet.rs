//! Aggregated Dirichlet coefficients `a_n = sum over ideals of norm n` for the
//! five series built from the Dedekind zeta function, assembled from local
//! Euler factors, plus generic coefficient algebra.
//!
//! Coefficient arrays are 1-based: `values[n]` is `a_n` and `values[0]` is an
//! unused zero slot.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{ilog, primes_up_to};
use crate::error::{Error, Result};
use crate::field::{split_prime, FieldSpec, SplittingType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    /// `zeta_K(s)`; `a_n` counts ideals of norm `n`.
    Zeta,
    /// `1 / zeta_K(s)`; Möbius aggregate.
    InvZeta,
    /// `zeta_K(2s) / zeta_K(s)`; Liouville aggregate.
    Liouville,
    /// `-zeta_K'(s) / zeta_K(s)`; von Mangoldt aggregate.
    NegLogDeriv,
    /// `zeta_K(s)^2`; divisor-count aggregate.
    ZetaSquared,
}

impl SeriesKind {
    pub const ALL: [SeriesKind; 5] = [
        SeriesKind::Zeta,
        SeriesKind::InvZeta,
        SeriesKind::Liouville,
        SeriesKind::NegLogDeriv,
        SeriesKind::ZetaSquared,
    ];

    pub fn is_integer(self) -> bool {
        self != SeriesKind::NegLogDeriv
    }

    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::Zeta => "zeta",
            SeriesKind::InvZeta => "inv-zeta",
            SeriesKind::Liouville => "liouville",
            SeriesKind::NegLogDeriv => "neg-log-deriv",
            SeriesKind::ZetaSquared => "zeta-squared",
        }
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeriesKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        Ok(match norm.as_str() {
            "zeta" | "zeta-k" => SeriesKind::Zeta,
            "inv-zeta" | "mu" => SeriesKind::InvZeta,
            "liouville" | "liouville-ratio" | "lambda" => SeriesKind::Liouville,
            "neg-log-deriv" | "von-mangoldt" => SeriesKind::NegLogDeriv,
            "zeta-squared" | "divisors" => SeriesKind::ZetaSquared,
            _ => return Err(Error::InvalidArgument(format!("unknown series kind {s:?}"))),
        })
    }
}

/// Power series in `u = p^{-s}`, truncated.
#[derive(Clone, Debug, PartialEq)]
pub enum LocalSeries {
    Integer(Vec<i64>),
    Real(Vec<f64>),
}

fn series_mul(a: &[i64], b: &[i64], len: usize) -> Vec<i64> {
    let mut c = vec![0i64; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            c[i + j] += x * y;
        }
    }
    c
}

/// Local Euler factor of `kind` at a prime with the given splitting, up to
/// `u^k_max`.
pub fn local_factor(kind: SeriesKind, splitting: &SplittingType, p: u64, k_max: usize) -> LocalSeries {
    let len = k_max + 1;
    let mut one = vec![0i64; len];
    one[0] = 1;
    let degrees: Vec<usize> = splitting.residue_degrees().map(|f| f as usize).collect();
    match kind {
        SeriesKind::Zeta | SeriesKind::ZetaSquared => {
            let mut acc = one;
            for &f in &degrees {
                // 1 / (1 - u^f)
                let geo: Vec<i64> = (0..len).map(|k| (k % f == 0) as i64).collect();
                acc = series_mul(&acc, &geo, len);
            }
            if kind == SeriesKind::ZetaSquared {
                acc = series_mul(&acc, &acc, len);
            }
            LocalSeries::Integer(acc)
        }
        SeriesKind::InvZeta => {
            let mut acc = one;
            for &f in &degrees {
                let mut lin = vec![0i64; len];
                lin[0] = 1;
                if f < len {
                    lin[f] = -1;
                }
                acc = series_mul(&acc, &lin, len);
            }
            LocalSeries::Integer(acc)
        }
        SeriesKind::Liouville => {
            let mut acc = one;
            for &f in &degrees {
                // (1 - u^f) / (1 - u^{2f}) = 1 / (1 + u^f)
                let alt: Vec<i64> = (0..len)
                    .map(|k| {
                        if k % f != 0 {
                            0
                        } else if (k / f) % 2 == 0 {
                            1
                        } else {
                            -1
                        }
                    })
                    .collect();
                acc = series_mul(&acc, &alt, len);
            }
            LocalSeries::Integer(acc)
        }
        SeriesKind::NegLogDeriv => {
            let log_p = (p as f64).ln();
            let coeffs = (0..len)
                .map(|k| {
                    if k == 0 {
                        return 0.0;
                    }
                    let weight: usize = degrees.iter().filter(|&&f| k % f == 0).sum();
                    weight as f64 * log_p
                })
                .collect();
            LocalSeries::Real(coeffs)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Coeffs {
    Integer(Vec<i64>),
    Real(Vec<f64>),
}

impl Coeffs {
    pub fn len(&self) -> usize {
        match self {
            Coeffs::Integer(v) => v.len(),
            Coeffs::Real(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `a_n` as a real number.
    pub fn get_f64(&self, n: usize) -> f64 {
        match self {
            Coeffs::Integer(v) => v[n] as f64,
            Coeffs::Real(v) => v[n],
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            Coeffs::Integer(v) => v.iter().map(|&x| x as f64).collect(),
            Coeffs::Real(v) => v.clone(),
        }
    }

    pub fn as_integer(&self) -> Option<&[i64]> {
        match self {
            Coeffs::Integer(v) => Some(v),
            Coeffs::Real(_) => None,
        }
    }

    pub fn as_real(&self) -> Option<&[f64]> {
        match self {
            Coeffs::Real(v) => Some(v),
            Coeffs::Integer(_) => None,
        }
    }
}

/// Aggregated coefficients `a_1..a_N` of one series for one field.
#[derive(Clone, Debug, Serialize)]
pub struct CoeffTable {
    pub kind: SeriesKind,
    pub field_hash: String,
    pub n: usize,
    /// 1-based; `values[0]` is unused.
    pub values: Coeffs,
}

impl CoeffTable {
    pub fn integers(&self) -> Option<&[i64]> {
        self.values.as_integer()
    }

    pub fn reals(&self) -> Option<&[f64]> {
        self.values.as_real()
    }

    /// CSV with header `n,a_n`: exact integers, or 17-significant-digit
    /// scientific notation for reals.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "n,a_n")?;
        for n in 1..=self.n {
            match &self.values {
                Coeffs::Integer(v) => writeln!(out, "{n},{}", v[n])?,
                Coeffs::Real(v) => writeln!(out, "{n},{}", format_real(v[n]))?,
            }
        }
        Ok(())
    }
}

/// 17 significant digits, scientific notation.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Coefficients of `kind` for `field` up to `n`.
pub fn coefficients(kind: SeriesKind, field: &FieldSpec, n: usize) -> Result<CoeffTable> {
    let values = coefficients_with(kind, n, |p| split_prime(field, p))?;
    Ok(CoeffTable {
        kind,
        field_hash: field.content_hash().to_string(),
        n,
        values,
    })
}

/// Sieve assembly with a caller-supplied splitting source.
///
/// Primes are processed in ascending order; each local factor is convolved
/// into the table in place. Before prime `p` is processed the table is
/// supported on `p`-free integers, so each `n` divisible by `p` receives
/// exactly one term `L[k] * a_{n / p^k}`. Descending `n` keeps the sources
/// unmodified.
pub fn coefficients_with<S>(kind: SeriesKind, n: usize, mut splitter: S) -> Result<Coeffs>
where
    S: FnMut(u64) -> Result<SplittingType>,
{
    if n == 0 {
        return Err(Error::InvalidArgument("coefficient count N must be >= 1".into()));
    }
    let primes = primes_up_to(n as u64);
    if kind == SeriesKind::NegLogDeriv {
        let mut a = vec![0.0f64; n + 1];
        for &p in &primes {
            let st = splitter(p)?;
            let k_max = ilog(p, n as u64) as usize;
            let LocalSeries::Real(local) = local_factor(kind, &st, p, k_max) else {
                unreachable!("real kind");
            };
            let mut pk = p as usize;
            for coef in local.iter().skip(1) {
                a[pk] = *coef;
                pk = match pk.checked_mul(p as usize) {
                    Some(v) => v,
                    None => break,
                };
            }
        }
        return Ok(Coeffs::Real(a));
    }

    let mut a = vec![0i64; n + 1];
    a[1] = 1;
    for &p in &primes {
        let st = splitter(p)?;
        let k_max = ilog(p, n as u64) as usize;
        let LocalSeries::Integer(local) = local_factor(kind, &st, p, k_max) else {
            unreachable!("integer kind");
        };
        let p = p as usize;
        let top = n - n % p;
        let mut m = top;
        while m >= p {
            // m = p^k * r with p not dividing r
            let mut r = m / p;
            let mut k = 1;
            while r % p == 0 {
                r /= p;
                k += 1;
            }
            let src = a[r];
            if src != 0 && local[k] != 0 {
                a[m] = local[k]
                    .checked_mul(src)
                    .ok_or_else(|| Error::Overflow(format!("coefficient a_{m}")))?;
            }
            m -= p;
        }
    }
    Ok(Coeffs::Integer(a))
}

/// `c_n = sum_{d | n} a_d b_{n/d}` for `n <= n_max`.
pub fn dirichlet_multiply<T>(a: &[T], b: &[T], n_max: usize) -> Vec<T>
where
    T: Copy + Zero + std::ops::Mul<Output = T>,
{
    assert!(a.len() > n_max && b.len() > n_max, "coefficient arrays shorter than N");
    let mut c = vec![T::zero(); n_max + 1];
    for d in 1..=n_max {
        let ad = a[d];
        if ad.is_zero() {
            continue;
        }
        for (q, m) in (d..=n_max).step_by(d).enumerate() {
            c[m] = c[m] + ad * b[q + 1];
        }
    }
    c
}

/// Dirichlet inverse of a sequence with `a_1 = 1`.
pub fn dirichlet_invert<T>(a: &[T], n_max: usize) -> Result<Vec<T>>
where
    T: Copy + Zero + One + PartialEq + std::ops::Mul<Output = T> + std::ops::Sub<Output = T>,
{
    if a.len() <= n_max.max(1) || a[1] != T::one() {
        return Err(Error::InvalidArgument(
            "Dirichlet inverse needs a_1 = 1 and length > N".into(),
        ));
    }
    let mut b = vec![T::zero(); n_max + 1];
    if n_max == 0 {
        return Ok(b);
    }
    b[1] = T::one();
    // b_n = -sum_{d | n, d > 1} a_d b_{n/d}: push b_m into its multiples
    let mut acc = vec![T::zero(); n_max + 1];
    for m in 1..=n_max {
        if m > 1 {
            b[m] = T::zero() - acc[m];
        }
        let bm = b[m];
        if bm.is_zero() {
            continue;
        }
        for (d, idx) in (2 * m..=n_max).step_by(m).enumerate() {
            let ad = a[d + 2];
            if !ad.is_zero() {
                acc[idx] = acc[idx] + ad * bm;
            }
        }
    }
    Ok(b)
}

/// `b_m = a_k` if `m = k^2`, else 0.
pub fn dilate_to_2s<T: Copy + Zero>(a: &[T], n_max: usize) -> Vec<T> {
    let mut b = vec![T::zero(); n_max + 1];
    let mut k = 1usize;
    while k * k <= n_max {
        b[k * k] = a[k];
        k += 1;
    }
    b
}

/// Identity element of Dirichlet convolution, length `n_max + 1`.
pub fn unit_sequence<T: Zero + One + Clone>(n_max: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n_max + 1];
    if n_max >= 1 {
        v[1] = T::one();
    }
    v
}
