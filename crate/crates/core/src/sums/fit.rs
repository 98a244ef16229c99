use serde::Serialize;

use crate::error::{Error, Result};
use crate::summation::compensated_sum;

/// Default checkpoint spacing, `10^{1/4}`.
pub const DEFAULT_GRID_RATIO: f64 = 1.778_279_410_038_922_8;

/// Geometric checkpoints `round(x_min * ratio^k)` in `[x_min, x_max]`,
/// deduplicated, always ending at `x_max`.
pub fn geometric_grid(x_min: u64, x_max: u64, ratio: f64) -> Result<Vec<u64>> {
    if x_min == 0 || x_min > x_max {
        return Err(Error::InvalidArgument(format!("bad grid range [{x_min}, {x_max}]")));
    }
    if !(ratio > 1.0) || !ratio.is_finite() {
        return Err(Error::InvalidArgument(format!("grid ratio must be > 1, got {ratio}")));
    }
    let mut grid = Vec::new();
    let mut k = 0i32;
    loop {
        let v = (x_min as f64 * ratio.powi(k)).round();
        if v > x_max as f64 {
            break;
        }
        let v = v as u64;
        if grid.last() != Some(&v) {
            grid.push(v);
        }
        k += 1;
    }
    if grid.last() != Some(&x_max) {
        grid.push(x_max);
    }
    Ok(grid)
}

/// Ordinary least squares `y = slope * x + intercept`; returns
/// `(slope, intercept, r_squared)`.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> Result<(f64, f64, f64)> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidArgument("xs and ys differ in length".into()));
    }
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return Err(Error::InsufficientData { usable: xs.len(), dropped: 0 });
    }
    let mx = compensated_sum(xs.iter().copied()) / n;
    let my = compensated_sum(ys.iter().copied()) / n;
    let sxx = compensated_sum(xs.iter().map(|x| (x - mx) * (x - mx)));
    let sxy = compensated_sum(xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)));
    let syy = compensated_sum(ys.iter().map(|y| (y - my) * (y - my)));
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("all x values coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    Ok((slope, intercept, r2))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub window: (f64, f64),
    pub n_points: usize,
    /// Zero residuals excluded from the fit.
    pub dropped: usize,
}

/// Slope of `log|residual|` against `log x`. Zero residuals are dropped and
/// counted; at least three usable points are required.
pub fn fit_error_exponent(xs: &[f64], residuals: &[f64]) -> Result<ExponentFit> {
    if xs.len() != residuals.len() {
        return Err(Error::InvalidArgument("xs and residuals differ in length".into()));
    }
    let mut lx = Vec::with_capacity(xs.len());
    let mut ly = Vec::with_capacity(xs.len());
    let mut dropped = 0;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for (&x, &r) in xs.iter().zip(residuals) {
        if !(x > 0.0) || !x.is_finite() || !r.is_finite() {
            return Err(Error::InvalidArgument(format!("unusable point ({x}, {r})")));
        }
        if r == 0.0 {
            dropped += 1;
            continue;
        }
        lo = lo.min(x);
        hi = hi.max(x);
        lx.push(x.ln());
        ly.push(r.abs().ln());
    }
    if lx.len() < 3 || !(lo < hi) {
        return Err(Error::InsufficientData { usable: lx.len(), dropped });
    }
    let (slope, intercept, r_squared) = least_squares(&lx, &ly)?;
    Ok(ExponentFit {
        slope,
        intercept,
        r_squared,
        window: (lo, hi),
        n_points: lx.len(),
        dropped,
    })
}
