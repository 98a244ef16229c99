//! Verifiers for the identities linking `M_K`, `H_K`, `L_K`, `psi_K` and `I`.
//!
//! All of them work on aggregated coefficients: convolving ideal functions
//! and then aggregating by norm is the same as convolving the aggregated
//! sequences, because norms multiply.

use std::ops::{Add, Mul, Sub};

use num_traits::Zero;
use serde::Serialize;

use super::FieldTables;
use crate::dirichlet::dirichlet_multiply;
use crate::error::{Error, Result};
use crate::summation::compensated_sum;

/// Relative slack for float-vs-float comparisons that may hold with equality.
const ROUNDOFF: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct MertensBridgeReport {
    pub x: u64,
    /// `|M_K(x) log x - H_K(x)|`.
    pub lhs: f64,
    /// `sum_{N a <= x} log(x / N a)`.
    pub rhs: f64,
    pub pass: bool,
}

/// `|M_K(x) log x - H_K(x)| <= sum log(x / N a)`.
pub fn verify_mertens_bridge(t: &FieldTables, x: u64) -> Result<MertensBridgeReport> {
    let m = t.mertens(x)?;
    let h = t.mu_log(x)?;
    let lx = (x as f64).ln();
    let lhs = (m as f64 * lx - h).abs();
    let rhs = compensated_sum(
        (1..=x as usize)
            .filter(|&n| t.zeta[n] != 0)
            .map(|n| t.zeta[n] as f64 * (lx - (n as f64).ln())),
    );
    Ok(MertensBridgeReport {
        x,
        lhs,
        rhs,
        pass: lhs <= rhs + ROUNDOFF * (1.0 + rhs),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct JIdentityReport {
    pub x: u64,
    pub c: f64,
    pub sum_j: f64,
    pub h_k: f64,
    /// `|sum_{n <= x} J(n) - (1 + c H_K(x))|`.
    pub max_abs_discrepancy: f64,
    /// Largest `|J(n)|` mismatch between the convolution and closed forms.
    pub closed_form_mismatch: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// `J = mu_K * (1 - c Lambda_K)` aggregated by norm, checked against
/// `sum J = 1 + c H_K(x)` and against the closed form
/// `J(n) = [n = 1] + c mu(n) log n`.
pub fn verify_j_identity(t: &FieldTables, x: u64, c: f64) -> Result<JIdentityReport> {
    if !(c > 0.0) {
        return Err(Error::InvalidArgument(format!("c must be positive, got {c}")));
    }
    let n = t.check(x)?;
    let mu: Vec<f64> = t.inv_zeta[..=n].iter().map(|&v| v as f64).collect();
    let kernel: Vec<f64> = (0..=n)
        .map(|k| if k == 0 { 0.0 } else { t.zeta[k] as f64 - c * t.neg_log_deriv[k] })
        .collect();
    let j = dirichlet_multiply(&mu, &kernel, n);
    let mut mismatch: f64 = 0.0;
    for (k, &jk) in j.iter().enumerate().skip(1) {
        let closed = if k == 1 { 1.0 } else { c * mu[k] * (k as f64).ln() };
        mismatch = mismatch.max((jk - closed).abs());
    }
    let sum_j = compensated_sum(j[1..].iter().copied());
    let h_k = t.mu_log(x)?;
    let disc = (sum_j - (1.0 + c * h_k)).abs();
    let tolerance = ROUNDOFF * (1.0 + h_k.abs());
    Ok(JIdentityReport {
        x,
        c,
        sum_j,
        h_k,
        max_abs_discrepancy: disc,
        closed_form_mismatch: mismatch,
        tolerance,
        pass: disc < tolerance && mismatch < tolerance,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HyperbolaResult<T> {
    pub hyperbola: T,
    pub direct: T,
}

fn prefix<T: Copy + Zero + Add<Output = T>>(a: &[T], x: usize) -> Vec<T> {
    let mut out = vec![T::zero(); x + 1];
    for k in 1..=x {
        out[k] = out[k - 1] + a[k];
    }
    out
}

/// Three-term hyperbola split of `sum_{nm <= x} f_n g_m` at `alpha`, with
/// `beta = x / alpha`, alongside the direct double sum.
///
/// `f` and `g` are 1-based and must cover `1..=x`.
pub fn hyperbola_sum<T>(f: &[T], g: &[T], x: u64, alpha: f64) -> Result<HyperbolaResult<T>>
where
    T: Copy + Zero + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    if x == 0 {
        return Err(Error::InvalidArgument("x must be >= 1".into()));
    }
    if !(alpha >= 1.0 && alpha <= x as f64) {
        return Err(Error::InvalidArgument(format!("alpha = {alpha} outside [1, {x}]")));
    }
    let xs = x as usize;
    if f.len() <= xs || g.len() <= xs {
        return Err(Error::InvalidArgument(format!("coefficients must cover 1..={x}")));
    }
    let big_f = prefix(f, xs);
    let big_g = prefix(g, xs);
    let a = alpha.floor() as usize;
    // largest m with m * alpha <= x
    let mut b = (x as f64 / alpha).floor() as usize;
    while b > 0 && b as f64 * alpha > x as f64 {
        b -= 1;
    }
    while (b + 1) as f64 * alpha <= x as f64 {
        b += 1;
    }
    let mut first = T::zero();
    for n in 1..=a {
        first = first + f[n] * big_g[xs / n];
    }
    let mut second = T::zero();
    for m in 1..=b {
        second = second + g[m] * big_f[xs / m];
    }
    let hyperbola = first + second - big_f[a] * big_g[b];

    let mut direct = T::zero();
    for n in 1..=xs {
        let fn_ = f[n];
        if fn_.is_zero() {
            continue;
        }
        for m in 1..=xs / n {
            direct = direct + fn_ * g[m];
        }
    }
    Ok(HyperbolaResult { hyperbola, direct })
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiDecompositionReport {
    pub x: u64,
    pub c: f64,
    pub delta: f64,
    /// `A = 2 Delta / c`.
    pub a: f64,
    pub psi: f64,
    pub ideal_count: i64,
    pub double_sum: f64,
    pub direct_double_sum: f64,
    /// `|psi_K(x) - (I(x) / c - double_sum - A)|`.
    pub discrepancy: f64,
    pub relative_discrepancy: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// `psi_K(x) = I(x)/c - sum_{N a N b <= x} mu_K(b) f(a) - A` with
/// `f(a) = d(a)/c - log N a - A`. The double sum is split at `sqrt(x)`.
pub fn verify_psi_decomposition(t: &FieldTables, x: u64, c: f64, delta: f64) -> Result<PsiDecompositionReport> {
    if !(c > 0.0) {
        return Err(Error::InvalidArgument(format!("c must be positive, got {c}")));
    }
    let n = t.check(x)?;
    let a = 2.0 * delta / c;
    let f: Vec<f64> = (0..=n)
        .map(|k| {
            if k == 0 {
                0.0
            } else {
                t.zeta_squared[k] as f64 / c - t.zeta[k] as f64 * ((k as f64).ln() + a)
            }
        })
        .collect();
    let g: Vec<f64> = t.inv_zeta[..=n].iter().map(|&v| v as f64).collect();
    let split = hyperbola_sum(&f, &g, x, (x as f64).sqrt().max(1.0))?;
    let psi = t.psi(x)?;
    let ideal_count = t.ideal_count(x)?;
    let discrepancy = (psi - (ideal_count as f64 / c - split.hyperbola - a)).abs();
    let relative = discrepancy / x as f64;
    let tolerance = 1e-3;
    Ok(PsiDecompositionReport {
        x,
        c,
        delta,
        a,
        psi,
        ideal_count,
        double_sum: split.hyperbola,
        direct_double_sum: split.direct,
        discrepancy,
        relative_discrepancy: relative,
        tolerance,
        pass: relative < tolerance,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LambdaFromMuReport {
    pub x: u64,
    pub liouville_sum: i64,
    /// `sum_{N b^2 <= x} M_K(x / N b^2)`.
    pub via_mertens: i64,
    pub pass: bool,
}

/// `L_K(x) = sum_{N b^2 <= x} M_K(x / N b^2)`, in exact integers.
pub fn verify_lambda_from_mu(t: &FieldTables, x: u64) -> Result<LambdaFromMuReport> {
    let n = t.check(x)?;
    let m = prefix(&t.inv_zeta, n);
    let mut via = 0i64;
    let mut k = 1usize;
    while k * k <= n {
        let count = t.zeta[k];
        if count != 0 {
            via = count
                .checked_mul(m[n / (k * k)])
                .and_then(|v| via.checked_add(v))
                .ok_or_else(|| Error::Overflow(format!("lambda-from-mu at x = {x}")))?;
        }
        k += 1;
    }
    let liouville_sum = t.liouville_sum(x)?;
    Ok(LambdaFromMuReport {
        x,
        liouville_sum,
        via_mertens: via,
        pass: liouville_sum == via,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_field_spec, FieldSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gaussian_tables(n: usize) -> FieldTables {
        let k = parse_field_spec("min_poly = [1, 0, 1]").unwrap();
        FieldTables::build(&k, n).unwrap()
    }

    #[test]
    fn hyperbola_divisor_summatory() {
        let ones = vec![1i64; 101];
        let r = hyperbola_sum(&ones, &ones, 100, 10.0).unwrap();
        assert_eq!(r.hyperbola, 482);
        assert_eq!(r.direct, 482);
        let brute: i64 = (1..=100i64).map(|n| (1..=n).filter(|d| n % d == 0).count() as i64).sum();
        assert_eq!(brute, 482);
    }

    #[test]
    fn hyperbola_alpha_one_and_out_of_range() {
        let ones = vec![1i64; 101];
        let r = hyperbola_sum(&ones, &ones, 100, 1.0).unwrap();
        assert_eq!(r.hyperbola, r.direct);
        assert!(hyperbola_sum(&ones, &ones, 100, 0.5).is_err());
        assert!(hyperbola_sum(&ones, &ones, 100, 100.5).is_err());
        let r = hyperbola_sum(&ones, &ones, 100, 100.0).unwrap();
        assert_eq!(r.hyperbola, 482);
    }

    #[test]
    fn hyperbola_random_integers() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let f: Vec<i64> = (0..=50).map(|k| if k == 0 { 0 } else { rng.gen_range(-9..=9) }).collect();
            let g: Vec<i64> = (0..=50).map(|k| if k == 0 { 0 } else { rng.gen_range(-9..=9) }).collect();
            let mut brute = 0;
            for n in 1..=50 {
                for m in 1..=50 {
                    if n * m <= 50 {
                        brute += f[n] * g[m];
                    }
                }
            }
            for alpha in [7.0, 1.0, 3.5, 50.0, 12.25] {
                let r = hyperbola_sum(&f, &g, 50, alpha).unwrap();
                assert_eq!(r.hyperbola, brute);
                assert_eq!(r.direct, brute);
            }
        }
    }

    #[test]
    fn identities_rationals() {
        let t = FieldTables::build(&FieldSpec::rationals(), 1000).unwrap();
        for x in [1u64, 2, 10, 100, 1000] {
            assert!(verify_mertens_bridge(&t, x).unwrap().pass);
            assert!(verify_lambda_from_mu(&t, x).unwrap().pass);
            let j = verify_j_identity(&t, x, 1.0).unwrap();
            assert!(j.pass, "{j:?}");
            let psi = verify_psi_decomposition(&t, x, 1.0, 0.577_215_664_901_532_9).unwrap();
            assert!(psi.relative_discrepancy < 1e-6, "{psi:?}");
        }
        let b = verify_mertens_bridge(&t, 1).unwrap();
        assert_eq!((b.lhs, b.rhs), (0.0, 0.0));
        let j = verify_j_identity(&t, 1, 1.0).unwrap();
        assert_eq!((j.sum_j, j.h_k, j.max_abs_discrepancy), (1.0, 0.0, 0.0));
    }

    #[test]
    fn identities_gaussian() {
        let t = gaussian_tables(2000);
        let c = std::f64::consts::FRAC_PI_4;
        for x in [1u64, 50, 1000, 2000] {
            assert!(verify_mertens_bridge(&t, x).unwrap().pass);
            assert!(verify_lambda_from_mu(&t, x).unwrap().pass);
            assert!(verify_j_identity(&t, x, c).unwrap().pass);
            assert!(verify_psi_decomposition(&t, x, c, 0.6).unwrap().pass);
        }
        assert!(verify_j_identity(&t, 10, 0.0).is_err());
    }

    #[test]
    fn lambda_from_mu_classical_100() {
        // brute force both sides over the integers
        let mu = |n: i64| -> i64 {
            let (mut m, mut s) = (n, 1);
            let mut d = 2;
            while d * d <= m {
                if m % d == 0 {
                    m /= d;
                    if m % d == 0 {
                        return 0;
                    }
                    s = -s;
                }
                d += 1;
            }
            if m > 1 {
                s = -s;
            }
            s
        };
        let lam = |n: i64| -> i64 {
            let (mut m, mut k) = (n, 0);
            let mut d = 2;
            while d * d <= m {
                while m % d == 0 {
                    m /= d;
                    k += 1;
                }
                d += 1;
            }
            if m > 1 {
                k += 1;
            }
            if k % 2 == 0 { 1 } else { -1 }
        };
        let big_m = |y: i64| (1..=y).map(mu).sum::<i64>();
        let l100: i64 = (1..=100).map(lam).sum();
        let rhs: i64 = (1..=10).map(|b| big_m(100 / (b * b))).sum();
        assert_eq!(l100, rhs);
        let t = FieldTables::build(&FieldSpec::rationals(), 100).unwrap();
        let r = verify_lambda_from_mu(&t, 100).unwrap();
        assert_eq!((r.liouville_sum, r.via_mertens), (l100, rhs));
    }
}
