//! Truncated Perron formula on finite Dirichlet polynomials.
//!
//! The polynomial `f(s) = sum_{n <= N} a_n n^{-s}` is built from exact
//! coefficients, so the contour integral, the partial sum it should recover
//! and both truncation error terms are all computable. The big-O constants
//! are replaced by [`SAFETY_FACTOR`].
//!
//! Quadrature is the composite trapezoid rule on `t in [0, T]`; conjugate
//! symmetry `f(b - it) = conj f(b + it)` (real coefficients) supplies the
//! negative half-line. The error estimate is the difference between the
//! step-`h` and step-`2h` results.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dirichlet::{coefficients, Coeffs, SeriesKind};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::summation::{compensated_sum, NeumaierSum};

/// Multiplier turning the implied constants into a falsifiable bound.
pub const SAFETY_FACTOR: f64 = 10.0;

/// Quadrature nodes per parallel block; the phase recurrence restarts
/// from exact values at each block start.
const BLOCK: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PerronConfig {
    pub x: f64,
    pub b: f64,
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "H")]
    pub h: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub quadrature_step: f64,
}

/// Largest admissible quadrature step at `x`.
pub fn max_step(x: f64) -> f64 {
    0.5f64.min(1.0 / x.ln())
}

impl PerronConfig {
    /// `b = 1 + 1/log x`, `T = exp(sqrt(log x))`, `H = sqrt(T)` (clamped to
    /// the minimum of 2), `N = ceil(2x)`, half the maximal step.
    pub fn for_x(x: f64) -> Self {
        let lx = x.ln();
        let t = lx.sqrt().exp().max(2.0);
        Self {
            x,
            b: 1.0 + 1.0 / lx,
            t,
            h: t.sqrt().max(2.0),
            n: (2.0 * x).ceil() as usize,
            quadrature_step: max_step(x) / 2.0,
        }
    }

    /// Same as [`for_x`](Self::for_x) with explicit `T`, `H`.
    pub fn with_t_h(x: f64, t: f64, h: f64) -> Self {
        Self { t, h, ..Self::for_x(x) }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if !(self.x >= 2.0) || !self.x.is_finite() {
            return bad(format!("x must be >= 2, got {}", self.x));
        }
        if !(self.b > 1.0) || !self.b.is_finite() {
            return bad(format!("b must be > 1, got {}", self.b));
        }
        if !(self.t >= 2.0) || !self.t.is_finite() {
            return bad(format!("T must be >= 2, got {}", self.t));
        }
        if !(self.h >= 2.0) || !self.h.is_finite() {
            return bad(format!("H must be >= 2, got {}", self.h));
        }
        if (self.n as f64) < 2.0 * self.x {
            return bad(format!("N = {} must be >= 2x = {}", self.n, 2.0 * self.x));
        }
        check_step(self.x, self.quadrature_step)
    }
}

fn check_step(x: f64, step: f64) -> Result<()> {
    if !(step > 0.0) || step > max_step(x) {
        return Err(Error::InvalidArgument(format!(
            "quadrature step {step} must lie in (0, {}]",
            max_step(x)
        )));
    }
    Ok(())
}

/// `sum_{n <= N} a_n n^{-s}` for 1-based `coeffs` (index 0 ignored).
pub fn eval_dirichlet_polynomial(coeffs: &[f64], s: Complex64) -> Complex64 {
    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    for (n, &a) in coeffs.iter().enumerate().skip(1) {
        if a == 0.0 {
            continue;
        }
        let term = a * (-s * (n as f64).ln()).exp();
        re.add(term.re);
        im.add(term.im);
    }
    Complex64::new(re.value(), im.value())
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct LineIntegral {
    /// Real part of `(1/2 pi i) int_{b-iT}^{b+iT} f(s) x^s / s ds`.
    pub value: f64,
    /// Imaginary part of the assembled integral.
    pub imaginary_residue: f64,
    /// Largest relative `|g(-t) - conj g(t)|` over spot-checked nodes,
    /// both sides evaluated directly.
    pub symmetry_defect: f64,
    /// `|I(h) - I(2h)|`.
    pub quadrature_error_estimate: f64,
    pub step: f64,
    pub nodes: usize,
}

/// Trapezoid sums of the integrand over one block of nodes, at the fine
/// step and at the doubled step (even nodes only).
fn block_sums(
    w: &[f64],
    theta: &[f64],
    b: f64,
    step: f64,
    m: usize,
    start: usize,
) -> (Complex64, Complex64) {
    let end = (start + BLOCK).min(m + 1);
    let t0 = start as f64 * step;
    let mut cr: Vec<f64> = Vec::with_capacity(w.len());
    let mut ci: Vec<f64> = Vec::with_capacity(w.len());
    let mut rc: Vec<f64> = Vec::with_capacity(w.len());
    let mut rs: Vec<f64> = Vec::with_capacity(w.len());
    for (&wn, &th) in w.iter().zip(theta) {
        let (s, c) = (th * t0).sin_cos();
        cr.push(wn * c);
        ci.push(wn * s);
        let (s, c) = (th * step).sin_cos();
        rc.push(c);
        rs.push(s);
    }
    let mut fine = Complex64::new(0.0, 0.0);
    let mut coarse = Complex64::new(0.0, 0.0);
    for k in start..end {
        let mut sr = 0.0;
        let mut si = 0.0;
        for j in 0..cr.len() {
            let (a, bb) = (cr[j], ci[j]);
            sr += a;
            si += bb;
            cr[j] = a * rc[j] - bb * rs[j];
            ci[j] = a * rs[j] + bb * rc[j];
        }
        let t = k as f64 * step;
        let g = Complex64::new(sr, si) / Complex64::new(b, t);
        let edge = k == 0 || k == m;
        fine += if edge { g * 0.5 } else { g };
        if k % 2 == 0 {
            coarse += if edge { g * 0.5 } else { g };
        }
    }
    (fine, coarse)
}

/// `(1/2 pi i) int_{b-iT}^{b+iT} f(s) x^s / s ds` for the finite polynomial
/// with 1-based `coeffs`. Step must not exceed `min(0.5, 1/log x)`.
pub fn vertical_line_integral(coeffs: &[f64], x: f64, b: f64, t_max: f64, step: f64) -> Result<LineIntegral> {
    if !(x > 1.0) || !(t_max > 0.0) || !b.is_finite() {
        return Err(Error::InvalidArgument(format!("bad contour: x = {x}, b = {b}, T = {t_max}")));
    }
    check_step(x, step)?;
    // f(s) x^s = sum_n a_n (x/n)^b e^{i t log(x/n)}
    let lx = x.ln();
    let mut w = Vec::new();
    let mut theta = Vec::new();
    for (n, &a) in coeffs.iter().enumerate().skip(1) {
        if a != 0.0 {
            let th = lx - (n as f64).ln();
            w.push(a * (b * th).exp());
            theta.push(th);
        }
    }
    let m = 2 * (t_max / (2.0 * step)).ceil().max(1.0) as usize;
    let h = t_max / m as f64;
    let starts: Vec<usize> = (0..=m).step_by(BLOCK).collect();
    let parts: Vec<(Complex64, Complex64)> = starts
        .par_iter()
        .map(|&s| block_sums(&w, &theta, b, h, m, s))
        .collect();
    let mut fr = NeumaierSum::new();
    let mut fi = NeumaierSum::new();
    let mut cr = NeumaierSum::new();
    let mut ci = NeumaierSum::new();
    for (f, c) in &parts {
        fr.add(f.re);
        fi.add(f.im);
        cr.add(c.re);
        ci.add(c.im);
    }
    let half_fine = Complex64::new(fr.value(), fi.value()) * h;
    let half_coarse = Complex64::new(cr.value(), ci.value()) * (2.0 * h);
    // ds = i dt, and the lower half-line is the conjugate of the upper one.
    let full = |half: Complex64| (half + half.conj()) / (2.0 * std::f64::consts::PI);
    let fine = full(half_fine);
    let coarse = full(half_coarse);

    let integrand = |t: f64| {
        let s = Complex64::new(b, t);
        let mut acc = Complex64::new(0.0, 0.0);
        for (&wn, &th) in w.iter().zip(&theta) {
            acc += wn * Complex64::new(0.0, th * t).exp();
        }
        acc / s
    };
    let stride = (m / 64).max(1);
    let mut defect: f64 = 0.0;
    for k in (0..=m).step_by(stride) {
        let t = k as f64 * h;
        let up = integrand(t);
        let down = integrand(-t);
        defect = defect.max((down - up.conj()).norm() / (1.0 + up.norm()));
    }

    Ok(LineIntegral {
        value: fine.re,
        imaginary_residue: fine.im,
        symmetry_defect: defect,
        quadrature_error_estimate: (fine.re - coarse.re).abs(),
        step: h,
        nodes: m + 1,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PerronMethod {
    /// Liu–Ye: neighbourhood term plus `x^b H B(b) / T`.
    LiuYe,
    /// Classical truncated Perron at `b = 2`.
    Classical,
}

#[derive(Clone, Debug, Serialize)]
pub struct PerronReport {
    pub field_hash: String,
    pub kind: SeriesKind,
    pub method: PerronMethod,
    pub config: PerronConfig,
    pub contour_estimate: f64,
    pub imaginary_residue: f64,
    pub symmetry_defect: f64,
    pub exact_partial_sum: f64,
    pub neighborhood_term: f64,
    pub tail_term: f64,
    pub quadrature_error_estimate: f64,
    pub observed_error: f64,
    pub budget: f64,
    pub safety_factor: f64,
    pub pass: bool,
}

fn dense_coeffs(coeffs: &Coeffs, n: usize) -> Result<Vec<f64>> {
    if coeffs.len() <= n {
        return Err(Error::InvalidArgument(format!(
            "coefficients cover n <= {} but N = {n}",
            coeffs.len().saturating_sub(1)
        )));
    }
    Ok((0..=n).map(|k| if k == 0 { 0.0 } else { coeffs.get_f64(k) }).collect())
}

fn exact_sum(a: &[f64], x: f64) -> f64 {
    let top = (x.floor() as usize).min(a.len() - 1);
    compensated_sum(a[1..=top].iter().copied())
}

/// Liu–Ye truncated Perron for the `kind` series of `field`.
pub fn perron_truncated(kind: SeriesKind, field: &FieldSpec, config: &PerronConfig) -> Result<PerronReport> {
    config.validate()?;
    let table = coefficients(kind, field, config.n)?;
    perron_truncated_with(kind, field.content_hash(), &table.values, config)
}

/// As [`perron_truncated`] with precomputed coefficients covering `config.n`.
pub fn perron_truncated_with(
    kind: SeriesKind,
    field_hash: &str,
    coeffs: &Coeffs,
    config: &PerronConfig,
) -> Result<PerronReport> {
    config.validate()?;
    let a = dense_coeffs(coeffs, config.n)?;
    let line = vertical_line_integral(&a, config.x, config.b, config.t, config.quadrature_step)?;
    let exact = exact_sum(&a, config.x);
    let (lo, hi) = (config.x - config.x / config.h, config.x + config.x / config.h);
    // half-open (lo, hi]
    let neighborhood = compensated_sum(
        a.iter()
            .enumerate()
            .skip(1)
            .filter(|&(n, _)| (n as f64) > lo && (n as f64) <= hi)
            .map(|(_, v)| v.abs()),
    );
    let b_of_b = compensated_sum(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(n, v)| v.abs() * (n as f64).powf(-config.b)),
    );
    let tail = config.x.powf(config.b) * config.h * b_of_b / config.t;
    let budget = neighborhood + tail + line.quadrature_error_estimate;
    let observed = (line.value - exact).abs();
    Ok(PerronReport {
        field_hash: field_hash.to_string(),
        kind,
        method: PerronMethod::LiuYe,
        config: *config,
        contour_estimate: line.value,
        imaginary_residue: line.imaginary_residue,
        symmetry_defect: line.symmetry_defect,
        exact_partial_sum: exact,
        neighborhood_term: neighborhood,
        tail_term: tail,
        quadrature_error_estimate: line.quadrature_error_estimate,
        observed_error: observed,
        budget,
        safety_factor: SAFETY_FACTOR,
        pass: observed <= SAFETY_FACTOR * budget,
    })
}

/// Classical truncated Perron on the line `b = 2`:
/// `sum_{n <= x} a_n = (1/2 pi i) int f(s) x^s/s ds + O(x^b B(b) / T)
///  + O(A x log x / T) + O(A min(1, x / (T ||x||)))`, where `A` bounds
/// `|a_n|` for `n <= 2x` and `||x||` is the distance to the nearest
/// integer. `config.b` and `config.h` are ignored.
pub fn perron_classical_with(
    kind: SeriesKind,
    field_hash: &str,
    coeffs: &Coeffs,
    config: &PerronConfig,
) -> Result<PerronReport> {
    let config = PerronConfig { b: 2.0, ..*config };
    config.validate()?;
    let a = dense_coeffs(coeffs, config.n)?;
    let x = config.x;
    let line = vertical_line_integral(&a, x, config.b, config.t, config.quadrature_step)?;
    let exact = exact_sum(&a, x);
    let top = ((2.0 * x).floor() as usize).min(config.n);
    let amax = a[1..=top].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let b_of_b = compensated_sum(a.iter().enumerate().skip(1).map(|(n, v)| v.abs() / (n as f64).powi(2)));
    let dist = (x - x.round()).abs();
    let near = if dist == 0.0 { 1.0 } else { (x / (config.t * dist)).min(1.0) };
    let neighborhood = amax * (x * x.ln() / config.t + near);
    let tail = x * x * b_of_b / config.t;
    let budget = neighborhood + tail + line.quadrature_error_estimate;
    let observed = (line.value - exact).abs();
    Ok(PerronReport {
        field_hash: field_hash.to_string(),
        kind,
        method: PerronMethod::Classical,
        config,
        contour_estimate: line.value,
        imaginary_residue: line.imaginary_residue,
        symmetry_defect: line.symmetry_defect,
        exact_partial_sum: exact,
        neighborhood_term: neighborhood,
        tail_term: tail,
        quadrature_error_estimate: line.quadrature_error_estimate,
        observed_error: observed,
        budget,
        safety_factor: SAFETY_FACTOR,
        pass: observed <= SAFETY_FACTOR * budget,
    })
}

/// Randomized sweep: half-integer `x` in `[20, 500]`, `T` log-uniform in
/// `[10^3, 10^5]`, `H` uniform in `[10, sqrt(T)]`.
pub fn random_configs(seed: u64, count: usize) -> Vec<PerronConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let x = rng.gen_range(20u32..500) as f64 + 0.5;
            let t = 10f64.powf(rng.gen_range(3.0..=5.0));
            let h = rng.gen_range(10.0..=t.sqrt());
            PerronConfig::with_t_h(x, t, h)
        })
        .collect()
}
