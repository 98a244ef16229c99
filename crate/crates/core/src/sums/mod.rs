//! Checkpointed partial sums of the arithmetic functions on ideals, the
//! residue `c` of the Dedekind zeta function and the constant `Delta`, and
//! empirical error-exponent fits.
//!
//! Integer-valued sums are exact; real-valued sums use compensated
//! summation.

mod fit;
mod identities;

pub use fit::{fit_error_exponent, geometric_grid, least_squares, ExponentFit, DEFAULT_GRID_RATIO};
pub use identities::{
    hyperbola_sum, verify_j_identity, verify_lambda_from_mu, verify_mertens_bridge,
    verify_psi_decomposition, HyperbolaResult, JIdentityReport, LambdaFromMuReport,
    MertensBridgeReport, PsiDecompositionReport,
};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cache::SplittingTable;
use crate::dirichlet::{coefficients_with, Coeffs, SeriesKind};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Invariants};
use crate::summation::NeumaierSum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SumKind {
    /// `M_K(x)`, sum of the Möbius function.
    #[serde(rename = "M_K")]
    Mertens,
    /// `L_K(x)`, sum of the Liouville function.
    #[serde(rename = "L_K")]
    Liouville,
    /// `psi_K(x)`, sum of the von Mangoldt function.
    #[serde(rename = "PSI_K")]
    Psi,
    /// `I(x)`, number of ideals of norm at most `x`.
    #[serde(rename = "I")]
    IdealCount,
    /// `H_K(x)`, sum of `mu_K(a) log N(a)`.
    #[serde(rename = "H_K")]
    MuLog,
    /// Sum of `1 / N(a)`.
    #[serde(rename = "SUM_RECIP")]
    SumRecip,
    /// Sum of `log N(a)`.
    #[serde(rename = "SUM_LOG")]
    SumLog,
    /// Sum of the divisor count `d(a)`.
    #[serde(rename = "SUM_DIV")]
    SumDiv,
}

impl SumKind {
    pub const ALL: [SumKind; 8] = [
        SumKind::Mertens,
        SumKind::Liouville,
        SumKind::Psi,
        SumKind::IdealCount,
        SumKind::MuLog,
        SumKind::SumRecip,
        SumKind::SumLog,
        SumKind::SumDiv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SumKind::Mertens => "M_K",
            SumKind::Liouville => "L_K",
            SumKind::Psi => "PSI_K",
            SumKind::IdealCount => "I",
            SumKind::MuLog => "H_K",
            SumKind::SumRecip => "SUM_RECIP",
            SumKind::SumLog => "SUM_LOG",
            SumKind::SumDiv => "SUM_DIV",
        }
    }

    /// Series whose aggregated coefficients feed this sum.
    pub fn series(self) -> SeriesKind {
        match self {
            SumKind::Mertens | SumKind::MuLog => SeriesKind::InvZeta,
            SumKind::Liouville => SeriesKind::Liouville,
            SumKind::Psi => SeriesKind::NegLogDeriv,
            SumKind::IdealCount | SumKind::SumRecip | SumKind::SumLog => SeriesKind::Zeta,
            SumKind::SumDiv => SeriesKind::ZetaSquared,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(
            self,
            SumKind::Mertens | SumKind::Liouville | SumKind::IdealCount | SumKind::SumDiv
        )
    }
}

impl fmt::Display for SumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SumKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_uppercase().replace('-', "_");
        Ok(match norm.as_str() {
            "M_K" | "M" | "MERTENS" => SumKind::Mertens,
            "L_K" | "L" | "LIOUVILLE" => SumKind::Liouville,
            "PSI_K" | "PSI" => SumKind::Psi,
            "I" | "IDEAL_COUNT" | "IDEALS" => SumKind::IdealCount,
            "H_K" | "H" => SumKind::MuLog,
            "SUM_RECIP" => SumKind::SumRecip,
            "SUM_LOG" => SumKind::SumLog,
            "SUM_DIV" => SumKind::SumDiv,
            _ => return Err(Error::InvalidArgument(format!("unknown sum kind {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum SumValues {
    Exact(Vec<i64>),
    Real(Vec<f64>),
}

impl SumValues {
    pub fn get_f64(&self, i: usize) -> f64 {
        match self {
            SumValues::Exact(v) => v[i] as f64,
            SumValues::Real(v) => v[i],
        }
    }

    pub fn exact(&self) -> Option<&[i64]> {
        match self {
            SumValues::Exact(v) => Some(v),
            SumValues::Real(_) => None,
        }
    }

    pub fn real(&self) -> Option<&[f64]> {
        match self {
            SumValues::Real(v) => Some(v),
            SumValues::Exact(_) => None,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            SumValues::Exact(v) => v.len(),
            SumValues::Real(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PartialSumSeries {
    pub field_hash: String,
    pub kind: SumKind,
    pub checkpoints: Vec<u64>,
    pub values: SumValues,
}

fn check_checkpoints(checkpoints: &[u64]) -> Result<()> {
    if checkpoints.first().is_some_and(|&x| x == 0) {
        return Err(Error::InvalidArgument("checkpoints must be >= 1".into()));
    }
    if checkpoints.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument("checkpoints must be sorted ascending".into()));
    }
    Ok(())
}

/// Partial sums of `kind` at each checkpoint, from the coefficient sequence
/// of `kind.series()` (1-based, long enough for the largest checkpoint).
pub fn partial_sums_from_coeffs(kind: SumKind, coeffs: &Coeffs, checkpoints: &[u64]) -> Result<Vec<SumValue>> {
    check_checkpoints(checkpoints)?;
    let Some(&top) = checkpoints.last() else {
        return Ok(Vec::new());
    };
    let top = top as usize;
    if coeffs.len() <= top {
        return Err(Error::InvalidArgument(format!(
            "coefficients cover n <= {} but checkpoint is {top}",
            coeffs.len().saturating_sub(1)
        )));
    }
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut next = 0;
    match (kind.is_exact(), coeffs) {
        (true, Coeffs::Integer(a)) => {
            let mut acc: i64 = 0;
            for (n, &an) in a.iter().enumerate().take(top + 1).skip(1) {
                acc = acc
                    .checked_add(an)
                    .ok_or_else(|| Error::Overflow(format!("{kind} at {n}")))?;
                while next < checkpoints.len() && checkpoints[next] as usize == n {
                    out.push(SumValue::Exact(acc));
                    next += 1;
                }
            }
        }
        (false, _) => {
            let mut acc = NeumaierSum::new();
            for n in 1..=top {
                let an = coeffs.get_f64(n);
                if an != 0.0 {
                    let term = match kind {
                        SumKind::Psi => an,
                        SumKind::MuLog | SumKind::SumLog => an * (n as f64).ln(),
                        SumKind::SumRecip => an / n as f64,
                        _ => unreachable!("exact kinds handled above"),
                    };
                    acc.add(term);
                }
                while next < checkpoints.len() && checkpoints[next] as usize == n {
                    out.push(SumValue::Real(acc.value()));
                    next += 1;
                }
            }
        }
        (true, Coeffs::Real(_)) => {
            return Err(Error::InvalidArgument(format!("{kind} needs integer coefficients")));
        }
    }
    Ok(out)
}

/// A single partial-sum value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum SumValue {
    Exact(i64),
    Real(f64),
}

impl SumValue {
    pub fn as_f64(self) -> f64 {
        match self {
            SumValue::Exact(v) => v as f64,
            SumValue::Real(v) => v,
        }
    }
}

fn collect_values(kind: SumKind, vals: Vec<SumValue>) -> SumValues {
    if kind.is_exact() {
        SumValues::Exact(
            vals.into_iter()
                .map(|v| match v {
                    SumValue::Exact(x) => x,
                    SumValue::Real(_) => unreachable!("exact kind"),
                })
                .collect(),
        )
    } else {
        SumValues::Real(vals.into_iter().map(SumValue::as_f64).collect())
    }
}

/// Partial sums of `kind` for `field` at the given checkpoints.
pub fn partial_sums(field: &FieldSpec, kind: SumKind, checkpoints: &[u64]) -> Result<PartialSumSeries> {
    let table = match checkpoints.last() {
        Some(&top) => Some(SplittingTable::build(field, top)?),
        None => None,
    };
    partial_sums_with(field.content_hash(), table.as_ref(), kind, checkpoints)
}

/// Partial sums reusing a prebuilt splitting table covering the checkpoints.
pub fn partial_sums_with(
    field_hash: &str,
    table: Option<&SplittingTable>,
    kind: SumKind,
    checkpoints: &[u64],
) -> Result<PartialSumSeries> {
    check_checkpoints(checkpoints)?;
    let values = match (checkpoints.last(), table) {
        (None, _) => collect_values(kind, Vec::new()),
        (Some(&top), Some(table)) => {
            let coeffs = coefficients_with(kind.series(), top as usize, |p| table.get(p))?;
            collect_values(kind, partial_sums_from_coeffs(kind, &coeffs, checkpoints)?)
        }
        (Some(_), None) => {
            return Err(Error::InvalidArgument("splitting table required".into()));
        }
    };
    Ok(PartialSumSeries {
        field_hash: field_hash.to_string(),
        kind,
        checkpoints: checkpoints.to_vec(),
        values,
    })
}

/// Residue at `s = 1` from the analytic class number formula.
pub fn residue_from_formula(inv: &Invariants) -> Result<f64> {
    let missing: Vec<&str> = [
        ("r1", inv.r1.is_none()),
        ("r2", inv.r2.is_none()),
        ("h", inv.h.is_none()),
        ("R", inv.regulator.is_none()),
        ("w", inv.w.is_none()),
        ("d_K", inv.d_k.is_none()),
    ]
    .iter()
    .filter(|(_, m)| *m)
    .map(|(k, _)| *k)
    .collect();
    if !missing.is_empty() {
        return Err(Error::MissingInvariants(missing.join(", ")));
    }
    let (r1, r2) = (inv.r1.unwrap() as i32, inv.r2.unwrap() as i32);
    let h = inv.h.unwrap() as f64;
    let reg = inv.regulator.unwrap();
    let w = inv.w.unwrap() as f64;
    let dk = (inv.d_k.unwrap() as f64).abs();
    Ok(2f64.powi(r1) * (2.0 * std::f64::consts::PI).powi(r2) * h * reg / (w * dk.sqrt()))
}

/// Residue from the field's configured invariants.
pub fn field_residue(field: &FieldSpec) -> Result<f64> {
    let inv = field
        .invariants()
        .ok_or_else(|| Error::MissingInvariants("no [invariants] block".into()))?;
    residue_from_formula(inv)
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidueEstimate {
    pub c_hat: f64,
    pub delta_hat: f64,
    pub c_formula: Option<f64>,
    pub x_used: u64,
    pub fit_window: (u64, u64),
    pub n_points: usize,
}

/// Fits `sum 1/N(a) = c log x + Delta` by least squares over a geometric
/// checkpoint grid on `[x_max / 100, x_max]`.
pub fn estimate_residue_and_delta(field: &FieldSpec, x_max: u64) -> Result<ResidueEstimate> {
    if x_max < 100 {
        return Err(Error::InvalidArgument(format!("x_max must be >= 100, got {x_max}")));
    }
    let grid = geometric_grid(x_max / 100, x_max, DEFAULT_GRID_RATIO)?;
    let sums = partial_sums(field, SumKind::SumRecip, &grid)?;
    let xs: Vec<f64> = grid.iter().map(|&x| (x as f64).ln()).collect();
    let ys: Vec<f64> = (0..grid.len()).map(|i| sums.values.get_f64(i)).collect();
    let (slope, intercept, _) = least_squares(&xs, &ys)?;
    if !(slope > 0.0) {
        return Err(Error::InvalidArgument(format!("fitted residue {slope} is not positive")));
    }
    Ok(ResidueEstimate {
        c_hat: slope,
        delta_hat: intercept,
        c_formula: field_residue(field).ok(),
        x_used: x_max,
        fit_window: (grid[0], x_max),
        n_points: grid.len(),
    })
}

/// Where a constant used by a report came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstantSource {
    Formula,
    Estimate,
    Supplied,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayRow {
    pub x: u64,
    pub mertens_over_x: f64,
    pub liouville_over_x: f64,
    pub sqrt_log_x: f64,
}

/// `|M_K(x)| / x` and `|L_K(x)| / x` against `sqrt(log x)`, for eyeballing the
/// `exp(-A sqrt(log x))` decay; no constant is fitted.
pub fn decay_curve(field: &FieldSpec, checkpoints: &[u64]) -> Result<Vec<DecayRow>> {
    let table = match checkpoints.last() {
        Some(&top) => SplittingTable::build(field, top)?,
        None => return Ok(Vec::new()),
    };
    let m = partial_sums_with(field.content_hash(), Some(&table), SumKind::Mertens, checkpoints)?;
    let l = partial_sums_with(field.content_hash(), Some(&table), SumKind::Liouville, checkpoints)?;
    Ok(checkpoints
        .iter()
        .enumerate()
        .map(|(i, &x)| DecayRow {
            x,
            mertens_over_x: m.values.get_f64(i).abs() / x as f64,
            liouville_over_x: l.values.get_f64(i).abs() / x as f64,
            sqrt_log_x: (x as f64).ln().sqrt(),
        })
        .collect())
}

/// All five coefficient sequences of a field up to `n`, sharing one
/// splitting table.
#[derive(Clone, Debug)]
pub struct FieldTables {
    pub field_hash: String,
    pub n: usize,
    pub zeta: Vec<i64>,
    pub inv_zeta: Vec<i64>,
    pub liouville: Vec<i64>,
    pub zeta_squared: Vec<i64>,
    pub neg_log_deriv: Vec<f64>,
}

impl FieldTables {
    pub fn build(field: &FieldSpec, n: usize) -> Result<Self> {
        let table = SplittingTable::build(field, n as u64)?;
        Self::from_splitting(field.content_hash(), &table, n)
    }

    pub fn from_splitting(field_hash: &str, table: &SplittingTable, n: usize) -> Result<Self> {
        let int = |kind| -> Result<Vec<i64>> {
            match coefficients_with(kind, n, |p| table.get(p))? {
                Coeffs::Integer(v) => Ok(v),
                Coeffs::Real(_) => unreachable!("integer kind"),
            }
        };
        let neg_log_deriv = match coefficients_with(SeriesKind::NegLogDeriv, n, |p| table.get(p))? {
            Coeffs::Real(v) => v,
            Coeffs::Integer(_) => unreachable!("real kind"),
        };
        Ok(FieldTables {
            field_hash: field_hash.to_string(),
            n,
            zeta: int(SeriesKind::Zeta)?,
            inv_zeta: int(SeriesKind::InvZeta)?,
            liouville: int(SeriesKind::Liouville)?,
            zeta_squared: int(SeriesKind::ZetaSquared)?,
            neg_log_deriv,
        })
    }

    pub fn get(&self, kind: SeriesKind) -> Coeffs {
        match kind {
            SeriesKind::Zeta => Coeffs::Integer(self.zeta.clone()),
            SeriesKind::InvZeta => Coeffs::Integer(self.inv_zeta.clone()),
            SeriesKind::Liouville => Coeffs::Integer(self.liouville.clone()),
            SeriesKind::ZetaSquared => Coeffs::Integer(self.zeta_squared.clone()),
            SeriesKind::NegLogDeriv => Coeffs::Real(self.neg_log_deriv.clone()),
        }
    }

    fn check(&self, x: u64) -> Result<usize> {
        if x == 0 || x as usize > self.n {
            return Err(Error::InvalidArgument(format!(
                "x = {x} outside the tabulated range [1, {}]",
                self.n
            )));
        }
        Ok(x as usize)
    }

    fn prefix_int(v: &[i64], x: usize) -> i64 {
        v[1..=x].iter().sum()
    }

    pub fn mertens(&self, x: u64) -> Result<i64> {
        Ok(Self::prefix_int(&self.inv_zeta, self.check(x)?))
    }

    pub fn liouville_sum(&self, x: u64) -> Result<i64> {
        Ok(Self::prefix_int(&self.liouville, self.check(x)?))
    }

    pub fn ideal_count(&self, x: u64) -> Result<i64> {
        Ok(Self::prefix_int(&self.zeta, self.check(x)?))
    }

    pub fn psi(&self, x: u64) -> Result<f64> {
        let x = self.check(x)?;
        Ok(crate::summation::compensated_sum(self.neg_log_deriv[1..=x].iter().copied()))
    }

    pub fn mu_log(&self, x: u64) -> Result<f64> {
        let x = self.check(x)?;
        Ok(crate::summation::compensated_sum(
            (2..=x).map(|n| self.inv_zeta[n] as f64 * (n as f64).ln()),
        ))
    }

    pub fn sum_log(&self, x: u64) -> Result<f64> {
        let x = self.check(x)?;
        Ok(crate::summation::compensated_sum(
            (2..=x).map(|n| self.zeta[n] as f64 * (n as f64).ln()),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_field_spec;

    fn gaussian() -> FieldSpec {
        parse_field_spec(
            "min_poly = [1, 0, 1]\n[invariants]\nr1 = 0\nr2 = 1\nh = 1\nR = 1.0\nw = 4\nd_K = -4\n",
        )
        .unwrap()
    }

    /// Brute-force Möbius and Liouville over 1..=n by trial factorization.
    fn brute_mu_lambda(n: u64) -> (i64, i64) {
        let mut ms = 0;
        let mut ls = 0;
        for k in 1..=n {
            let (mut m, mut omega, mut sqfree) = (k, 0, true);
            let mut d = 2;
            while d * d <= m {
                let mut e = 0;
                while m % d == 0 {
                    m /= d;
                    e += 1;
                }
                omega += e;
                if e >= 2 {
                    sqfree = false;
                }
                d += 1;
            }
            if m > 1 {
                omega += 1;
            }
            let sign = if omega % 2 == 0 { 1 } else { -1 };
            if sqfree {
                ms += sign;
            }
            ls += sign;
        }
        (ms, ls)
    }

    #[test]
    fn classical_mertens_and_liouville() {
        let q = FieldSpec::rationals();
        let (m10, l10) = brute_mu_lambda(10);
        let m = partial_sums(&q, SumKind::Mertens, &[10]).unwrap();
        assert_eq!(m.values, SumValues::Exact(vec![m10]));
        assert_eq!(m10, -1);
        let l = partial_sums(&q, SumKind::Liouville, &[10]).unwrap();
        assert_eq!(l.values, SumValues::Exact(vec![l10]));
        assert_eq!(l10, 0);
    }

    #[test]
    fn gaussian_ideal_count() {
        let s = partial_sums(&gaussian(), SumKind::IdealCount, &[1, 10]).unwrap();
        assert_eq!(s.values, SumValues::Exact(vec![1, 9]));
    }

    #[test]
    fn classical_psi_to_10() {
        let s = partial_sums(&FieldSpec::rationals(), SumKind::Psi, &[10]).unwrap();
        let expect = 3.0 * 2f64.ln() + 2.0 * 3f64.ln() + 5f64.ln() + 7f64.ln();
        assert!((s.values.get_f64(0) - expect).abs() < 1e-12);
        assert!((expect - 7.832_014).abs() < 1e-6);
    }

    #[test]
    fn mertens_at_one() {
        for k in [FieldSpec::rationals(), gaussian()] {
            let s = partial_sums(&k, SumKind::Mertens, &[1]).unwrap();
            assert_eq!(s.values, SumValues::Exact(vec![1]));
        }
    }

    #[test]
    fn checkpoint_validation() {
        let q = FieldSpec::rationals();
        assert!(partial_sums(&q, SumKind::Mertens, &[10, 5]).is_err());
        assert!(partial_sums(&q, SumKind::Mertens, &[0, 5]).is_err());
        let empty = partial_sums(&q, SumKind::Psi, &[]).unwrap();
        assert!(empty.values.is_empty());
        let dup = partial_sums(&q, SumKind::IdealCount, &[3, 3, 7]).unwrap();
        assert_eq!(dup.values, SumValues::Exact(vec![3, 3, 7]));
    }

    #[test]
    fn series_invariants() {
        let k = gaussian();
        let grid = geometric_grid(1, 20_000, DEFAULT_GRID_RATIO).unwrap();
        let i = partial_sums(&k, SumKind::IdealCount, &grid).unwrap();
        let m = partial_sums(&k, SumKind::Mertens, &grid).unwrap();
        let l = partial_sums(&k, SumKind::Liouville, &grid).unwrap();
        let psi = partial_sums(&k, SumKind::Psi, &grid).unwrap();
        let (i, m, l) = (i.values.exact().unwrap(), m.values.exact().unwrap(), l.values.exact().unwrap());
        for j in 0..grid.len() {
            assert!(m[j].abs() <= i[j] && l[j].abs() <= i[j]);
        }
        assert!(i.windows(2).all(|w| w[0] <= w[1]));
        assert!(psi.values.real().unwrap().windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn residue_formula_values() {
        let q = FieldSpec::rationals();
        assert!((field_residue(&q).unwrap() - 1.0).abs() < 1e-15);
        let c = field_residue(&gaussian()).unwrap();
        assert!((c - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        assert!((c - 0.7853981634).abs() < 1e-10);
        let k5 = parse_field_spec(
            "min_poly = [5, 0, 1]\n[invariants]\nr1 = 0\nr2 = 1\nh = 2\nR = 1.0\nw = 2\nd_K = -20\n",
        )
        .unwrap();
        let c5 = field_residue(&k5).unwrap();
        assert!((c5 - std::f64::consts::PI / 5f64.sqrt()).abs() < 1e-14);
        assert!((c5 - 1.4049629462).abs() < 1e-9);
        let bare = parse_field_spec("min_poly = [1, 0, 1]").unwrap();
        assert!(matches!(field_residue(&bare), Err(Error::MissingInvariants(_))));
        let partial = Invariants { h: Some(1), ..Default::default() };
        assert!(matches!(residue_from_formula(&partial), Err(Error::MissingInvariants(_))));
    }

    #[test]
    fn residue_estimate_rationals_small() {
        let est = estimate_residue_and_delta(&FieldSpec::rationals(), 10_000).unwrap();
        assert!((est.c_hat - 1.0).abs() <= 0.01, "{est:?}");
        assert_eq!(est.c_formula, Some(1.0));
        assert!(estimate_residue_and_delta(&FieldSpec::rationals(), 99).is_err());
    }

    #[test]
    fn field_tables_agree_with_partial_sums() {
        let k = gaussian();
        let t = FieldTables::build(&k, 2000).unwrap();
        for x in [1u64, 17, 500, 2000] {
            let m = partial_sums(&k, SumKind::Mertens, &[x]).unwrap();
            assert_eq!(t.mertens(x).unwrap(), m.values.exact().unwrap()[0]);
            let h = partial_sums(&k, SumKind::MuLog, &[x]).unwrap();
            assert!((t.mu_log(x).unwrap() - h.values.get_f64(0)).abs() < 1e-9);
        }
        assert!(t.mertens(2001).is_err());
        assert!(t.mertens(0).is_err());
    }

    #[test]
    fn sum_kind_parsing() {
        for kind in SumKind::ALL {
            assert_eq!(kind.name().parse::<SumKind>().unwrap(), kind);
        }
        assert_eq!("mertens".parse::<SumKind>().unwrap(), SumKind::Mertens);
        assert!("foo".parse::<SumKind>().is_err());
    }
}
