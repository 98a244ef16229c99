use std::path::PathBuf;
use std::rc::Rc;
use std::time::Instant;

use anyhow::{bail, Context as _, Result};
use serde::Serialize;
use serde_json::json;

use nfsums_core::cache::{SplitEntry, SplittingTable};
use nfsums_core::dirichlet::{coefficients_with, format_real, CoeffTable, Coeffs, SeriesKind};
use nfsums_core::perron::{perron_classical_with, perron_truncated_with, random_configs, PerronConfig, PerronReport};
use nfsums_core::sums::{
    field_residue, fit_error_exponent, geometric_grid, partial_sums_with, ConstantSource, ExponentFit, SumKind,
    SumValues,
};
use nfsums_core::{parse_field_spec, FieldSpec};

use crate::output::{csv_bytes, CacheInfo, ManifestInput, Sink};
use crate::{Cli, Command, FitArgs, FitTarget, Format, Method, Outcome, PerronArgs};

/// Loaded field plus the splitting-table cache state for one run.
pub struct Ctx {
    pub field: FieldSpec,
    pub cache_dir: Option<PathBuf>,
    /// `Some(true)` only if every table this run needed came from the cache.
    pub cache_hit: Option<bool>,
    pub seed: u64,
    memo: Option<Rc<SplittingTable>>,
}

impl Ctx {
    pub fn hash(&self) -> &str {
        self.field.content_hash()
    }

    /// Splitting table covering `bound`, reusing a larger one already built
    /// in this run.
    pub fn splitting(&mut self, bound: u64) -> Result<Rc<SplittingTable>> {
        if let Some(t) = &self.memo {
            if t.bound() >= bound {
                return Ok(Rc::clone(t));
            }
        }
        let (t, hit) = SplittingTable::load_or_build(&self.field, bound, self.cache_dir.as_deref())?;
        if self.cache_dir.is_some() {
            self.cache_hit = Some(self.cache_hit.unwrap_or(true) && hit);
        }
        let t = Rc::new(t);
        self.memo = Some(Rc::clone(&t));
        Ok(t)
    }

    pub fn coeffs(&mut self, kind: SeriesKind, n: usize) -> Result<Coeffs> {
        let t = self.splitting(n as u64)?;
        Ok(coefficients_with(kind, n, |p| t.get(p))?)
    }
}

pub fn load_field(path: Option<&PathBuf>) -> Result<FieldSpec> {
    let path = path.context("--field <path> is required")?;
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut field = parse_field_spec(&text).with_context(|| format!("in {}", path.display()))?;
    if field.name().is_none() {
        if let Some(stem) = path.file_stem() {
            field.set_name(stem.to_string_lossy());
        }
    }
    Ok(field)
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let started = Instant::now();
    let field = load_field(cli.field.as_ref())?;
    let mut ctx = Ctx { field, cache_dir: cli.cache_dir.clone(), cache_hit: None, seed: cli.seed, memo: None };
    let mut sink = Sink::new(cli.out.as_deref())?;
    let (name, params, outcome) = match &cli.command {
        Command::Split(a) => ("split", json!(a), split(&mut ctx, &mut sink, cli.format, a.p_max)?),
        Command::Coeffs(a) => ("coeffs", json!(a), coeffs(&mut ctx, &mut sink, cli.format, &a.kind, a.n)?),
        Command::Sums(a) => ("sums", json!(a), sums(&mut ctx, &mut sink, cli.format, a)?),
        Command::Verify(a) => ("verify", json!(a), crate::verify::run(&mut ctx, &mut sink, a)?),
        Command::Fit(a) => ("fit", json!(a), fit(&mut ctx, &mut sink, a)?),
        Command::Perron(a) => ("perron", json!(a), perron(&mut ctx, &mut sink, cli.format, a)?),
    };
    let mut params = params;
    params["seed"] = json!(cli.seed);
    params["format"] = json!(cli.format);
    sink.finish(ManifestInput {
        command: name,
        field: cli.field.as_ref().map(|p| p.display().to_string()),
        field_hash: Some(ctx.hash().to_string()),
        parameters: params,
        cache: ctx
            .cache_dir
            .as_ref()
            .map(|d| CacheInfo { dir: d.display().to_string(), hit: ctx.cache_hit.unwrap_or(false) }),
        started,
    })?;
    Ok(outcome)
}

fn ext(format: Format) -> &'static str {
    match format {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

fn split(ctx: &mut Ctx, sink: &mut Sink, format: Format, p_max: u64) -> Result<Outcome> {
    if p_max < 2 {
        bail!("--p-max must be at least 2");
    }
    let table = ctx.splitting(p_max)?;
    let rows: Vec<(u64, String, &str)> = table
        .entries()
        .iter()
        .take_while(|(p, _)| *p <= p_max)
        .map(|(p, e)| match e {
            SplitEntry::Supported(st) => (*p, st.to_string(), st.label()),
            SplitEntry::Unsupported => (*p, "unsupported".to_string(), "unsupported"),
        })
        .collect();
    let name = format!("split.{}", ext(format));
    match format {
        Format::Csv => {
            let bytes = csv_bytes(
                &["p", "splitting", "label"],
                rows.iter().map(|(p, s, l)| vec![p.to_string(), s.clone(), l.to_string()]),
            )?;
            sink.emit(&name, &bytes)?;
        }
        Format::Json => {
            let rows: Vec<_> = rows.iter().map(|(p, s, l)| json!({"p": p, "splitting": s, "label": l})).collect();
            sink.emit_json(&name, &json!({"field_hash": ctx.hash(), "p_max": p_max, "rows": rows}))?;
        }
    }
    Ok(Outcome::Ok)
}

fn coeffs(ctx: &mut Ctx, sink: &mut Sink, format: Format, kind: &str, n: usize) -> Result<Outcome> {
    let kind: SeriesKind = kind.parse()?;
    if n == 0 {
        bail!("--n must be at least 1");
    }
    let values = ctx.coeffs(kind, n)?;
    let table = CoeffTable { kind, field_hash: ctx.hash().to_string(), n, values };
    let name = format!("coeffs-{kind}.{}", ext(format));
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            table.write_csv(&mut buf)?;
            sink.emit(&name, &buf)?;
        }
        Format::Json => {
            let values = match &table.values {
                Coeffs::Integer(v) => json!(v[1..]),
                Coeffs::Real(v) => json!(v[1..]),
            };
            sink.emit_json(&name, &json!({"field_hash": ctx.hash(), "kind": kind, "n": n, "values": values}))?;
        }
    }
    Ok(Outcome::Ok)
}

fn sums(ctx: &mut Ctx, sink: &mut Sink, format: Format, a: &crate::SumsArgs) -> Result<Outcome> {
    let kinds = a.kinds.iter().map(|k| k.parse::<SumKind>()).collect::<Result<Vec<_>, _>>()?;
    if kinds.is_empty() {
        bail!("--kinds must name at least one sum");
    }
    let grid = geometric_grid(a.x_min, a.x_max, a.grid_ratio)?;
    let table = ctx.splitting(a.x_max)?;
    let series = kinds
        .iter()
        .map(|&k| partial_sums_with(ctx.hash(), Some(&table), k, &grid))
        .collect::<Result<Vec<_>, _>>()?;
    let name = format!("sums.{}", ext(format));
    match format {
        Format::Csv => {
            let mut header = vec!["x"];
            header.extend(kinds.iter().map(|k| k.name()));
            let rows = grid.iter().enumerate().map(|(i, x)| {
                let mut row = vec![x.to_string()];
                for s in &series {
                    row.push(match &s.values {
                        SumValues::Exact(v) => v[i].to_string(),
                        SumValues::Real(v) => format_real(v[i]),
                    });
                }
                row
            });
            sink.emit(&name, &csv_bytes(&header, rows)?)?;
        }
        Format::Json => {
            let mut obj = serde_json::Map::new();
            for s in &series {
                obj.insert(s.kind.name().to_string(), json!(s.values));
            }
            sink.emit_json(&name, &json!({"field_hash": ctx.hash(), "grid": grid, "series": obj}))?;
        }
    }
    Ok(Outcome::Ok)
}

/// Residue `c`: class number formula when the config has full invariants,
/// else a least-squares estimate at `x_est`.
pub fn resolve_c(ctx: &Ctx, x_est: u64) -> Result<(f64, ConstantSource)> {
    match field_residue(&ctx.field) {
        Ok(c) => Ok((c, ConstantSource::Formula)),
        Err(_) => {
            let est = nfsums_core::sums::estimate_residue_and_delta(&ctx.field, x_est)?;
            Ok((est.c_hat, ConstantSource::Estimate))
        }
    }
}

#[derive(Serialize)]
pub struct FitReport {
    pub field_hash: String,
    pub target: FitTarget,
    pub c: Option<f64>,
    pub c_source: Option<ConstantSource>,
    pub grid: Vec<u64>,
    pub residuals: Vec<f64>,
    /// `None` when the residual vanishes at every checkpoint.
    pub fit: Option<ExponentFit>,
}

/// Residuals of `target` over `grid` and the fitted exponent.
pub fn fit_target(ctx: &mut Ctx, target: FitTarget, grid: &[u64], residue_x: u64) -> Result<FitReport> {
    let top = *grid.last().context("empty grid")?;
    let needs_c = matches!(target, FitTarget::Weber | FitTarget::SumLog);
    let (c, c_source) = if needs_c {
        let (c, s) = resolve_c(ctx, residue_x)?;
        (Some(c), Some(s))
    } else {
        (None, None)
    };
    let table = ctx.splitting(top)?;
    let kind = match target {
        FitTarget::Weber => SumKind::IdealCount,
        FitTarget::SumLog => SumKind::SumLog,
        FitTarget::Mertens => SumKind::Mertens,
        FitTarget::Liouville => SumKind::Liouville,
        FitTarget::Psi => SumKind::Psi,
    };
    let s = partial_sums_with(ctx.hash(), Some(&table), kind, grid)?;
    let residuals: Vec<f64> = grid
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let x = x as f64;
            let v = s.values.get_f64(i);
            match target {
                FitTarget::Weber => (v - c.unwrap() * x).abs(),
                FitTarget::SumLog => {
                    let c = c.unwrap();
                    (v - (c * x * x.ln() - c * x)).abs()
                }
                FitTarget::Mertens | FitTarget::Liouville => v.abs(),
                FitTarget::Psi => (v - x).abs(),
            }
        })
        .collect();
    let xs: Vec<f64> = grid.iter().map(|&x| x as f64).collect();
    let fit = if residuals.iter().all(|&r| r == 0.0) {
        None
    } else {
        Some(fit_error_exponent(&xs, &residuals)?)
    };
    Ok(FitReport { field_hash: ctx.hash().to_string(), target, c, c_source, grid: grid.to_vec(), residuals, fit })
}

fn fit(ctx: &mut Ctx, sink: &mut Sink, a: &FitArgs) -> Result<Outcome> {
    let grid = geometric_grid(a.x_min, a.x_max, a.grid_ratio)?;
    let report = fit_target(ctx, a.target, &grid, a.residue_x)?;
    let name = format!("fit-{}.json", serde_json::to_value(a.target)?.as_str().unwrap_or("target"));
    sink.emit_json(&name, &report)?;
    Ok(Outcome::Ok)
}

fn perron(ctx: &mut Ctx, sink: &mut Sink, format: Format, a: &PerronArgs) -> Result<Outcome> {
    let kind: SeriesKind = a.kind.parse()?;
    let configs = match a.sweep {
        Some(count) => random_configs(ctx.seed, count),
        None => {
            let base = PerronConfig::for_x(a.x);
            let t = a.t.unwrap_or(base.t);
            let cfg = PerronConfig {
                b: a.b.unwrap_or(base.b),
                t,
                h: a.h.unwrap_or_else(|| t.sqrt().max(2.0)),
                n: a.n.unwrap_or(base.n),
                quadrature_step: a.step.unwrap_or(base.quadrature_step),
                ..base
            };
            cfg.validate()?;
            vec![cfg]
        }
    };
    let n_max = configs.iter().map(|c| c.n).max().unwrap_or(1);
    let coeffs = ctx.coeffs(kind, n_max)?;
    let mut reports: Vec<PerronReport> = Vec::new();
    for cfg in &configs {
        if matches!(a.method, Method::LiuYe | Method::Both) {
            reports.push(perron_truncated_with(kind, ctx.hash(), &coeffs, cfg)?);
        }
        if matches!(a.method, Method::Classical | Method::Both) {
            reports.push(perron_classical_with(kind, ctx.hash(), &coeffs, cfg)?);
        }
    }
    let name = format!("perron.{}", ext(format));
    match format {
        Format::Json => sink.emit_json(&name, &json!({"field_hash": ctx.hash(), "reports": reports}))?,
        Format::Csv => {
            let header = [
                "method", "x", "b", "T", "H", "N", "step", "contour_estimate", "imaginary_residue",
                "exact_partial_sum", "neighborhood_term", "tail_term", "quadrature_error_estimate",
                "observed_error", "budget", "pass",
            ];
            let rows = reports.iter().map(|r| {
                let c = &r.config;
                vec![
                    serde_json::to_value(r.method).unwrap().as_str().unwrap_or("").to_string(),
                    format_real(c.x),
                    format_real(c.b),
                    format_real(c.t),
                    format_real(c.h),
                    c.n.to_string(),
                    format_real(c.quadrature_step),
                    format_real(r.contour_estimate),
                    format_real(r.imaginary_residue),
                    format_real(r.exact_partial_sum),
                    format_real(r.neighborhood_term),
                    format_real(r.tail_term),
                    format_real(r.quadrature_error_estimate),
                    format_real(r.observed_error),
                    format_real(r.budget),
                    r.pass.to_string(),
                ]
            });
            sink.emit(&name, &csv_bytes(&header, rows)?)?;
        }
    }
    Ok(if reports.iter().all(|r| r.pass) { Outcome::Ok } else { Outcome::Failed })
}
