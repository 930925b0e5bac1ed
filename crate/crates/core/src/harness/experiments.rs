//! Ratio and convergence experiments, plus the grid dumps behind the
//! `partial-sum` and `variation-field` subcommands.

use num_complex::Complex64;
use rayon::prelude::*;

use super::config::RunConfig;
use super::formats::{fmt_f64, CsvDoc};
use super::generators::{derive_seed, random_trig_polynomial, smooth_trig_polynomial};
use crate::error::{Error, Result};
use crate::geometry::HPolytope;
use crate::grid::{grid_len, multi_index, GridSamples};
use crate::spectral::{check_resolution, sample_grid, to_real, RootTable, Shells, TrigPolynomial};
use crate::variation::{check_exponents, lorentz_p1_norm, lp_norm, v_r_field, weak_lp_norm};

#[derive(Debug, Clone, PartialEq)]
pub struct RatioRow {
    pub ensemble_id: usize,
    pub bandwidth: u64,
    pub r: f64,
    pub p: f64,
    pub f_lp: f64,
    pub vr_lp: f64,
    pub ratio: f64,
    pub vr_weak: f64,
    pub f_lorentz: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandSummary {
    pub bandwidth: u64,
    pub median_ratio: f64,
    pub max_ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioReport {
    pub rows: Vec<RatioRow>,
    pub summaries: Vec<BandSummary>,
}

impl RatioReport {
    /// Median ratio at the largest bandwidth over the median at the smallest.
    pub fn growth_factor(&self) -> Option<f64> {
        let first = self.summaries.first()?;
        let last = self.summaries.last()?;
        Some(last.median_ratio / first.median_ratio)
    }

    pub fn to_csv(&self, config: &RunConfig) -> CsvDoc {
        let mut doc = CsvDoc::new(&[
            "ensemble_id",
            "B",
            "r",
            "p",
            "f_Lp",
            "Vr_Lp",
            "ratio",
            "Vr_weak_Lp",
            "f_Lorentz_p1",
        ]);
        doc.comment("ratio experiment: ||V_r(S_lambda f)||_p / ||f||_p on the grid (illustrative ensemble)");
        for line in config.describe() {
            doc.comment(line);
        }
        for s in &self.summaries {
            doc.comment(format!(
                "summary B = {} median_ratio = {} max_ratio = {}",
                s.bandwidth, s.median_ratio, s.max_ratio
            ));
        }
        if let Some(g) = self.growth_factor() {
            doc.comment(format!("median growth factor (largest B / smallest B) = {g}"));
        }
        for r in &self.rows {
            doc.row(vec![
                r.ensemble_id.to_string(),
                r.bandwidth.to_string(),
                fmt_f64(r.r),
                fmt_f64(r.p),
                fmt_f64(r.f_lp),
                fmt_f64(r.vr_lp),
                fmt_f64(r.ratio),
                fmt_f64(r.vr_weak),
                fmt_f64(r.f_lorentz),
            ]);
        }
        doc
    }
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    match n {
        0 => f64::NAN,
        _ if n % 2 == 1 => v[n / 2],
        _ => 0.5 * (v[n / 2 - 1] + v[n / 2]),
    }
}

/// Norms of one function and its variation field.
pub fn ratio_row(
    f: &TrigPolynomial,
    p: &HPolytope,
    resolution: usize,
    r: f64,
    exponent: f64,
) -> Result<RatioRow> {
    let moduli = sample_grid(f, resolution)?.modulus();
    let field = v_r_field(f, p, resolution, r)?;
    let f_lp = lp_norm(&moduli, exponent)?;
    let vr_lp = lp_norm(&field, exponent)?;
    let ratio = if vr_lp == 0.0 { 0.0 } else { vr_lp / f_lp };
    Ok(RatioRow {
        ensemble_id: 0,
        bandwidth: f.bandwidth(),
        r,
        p: exponent,
        f_lp,
        vr_lp,
        ratio,
        vr_weak: weak_lp_norm(&field, exponent)?,
        f_lorentz: lorentz_p1_norm(&moduli, exponent)?,
    })
}

pub fn run_ratio_experiment(config: &RunConfig) -> Result<RatioReport> {
    check_exponents(config.r, config.p)?;
    if config.ensemble == 0 || config.bandwidths.is_empty() {
        return Err(Error::InvalidConfig("need a nonempty ensemble and bandwidth list".into()));
    }
    let polytope = config.resolve_polytope()?;
    let mut bandwidths = config.bandwidths.clone();
    bandwidths.sort_unstable();
    bandwidths.dedup();
    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    for &b in &bandwidths {
        let m = config.resolution_for(b);
        if (m as u64) < 2 * b + 1 {
            return Err(Error::Aliasing {
                resolution: m,
                bandwidth: b,
            });
        }
        let band: Vec<RatioRow> = (0..config.ensemble)
            .map(|id| {
                let f = random_trig_polynomial(
                    polytope.dim(),
                    b,
                    config.density,
                    derive_seed(config.seed, &[b, id as u64]),
                )?;
                let mut row = ratio_row(&f, &polytope, m, config.r, config.p)?;
                row.ensemble_id = id;
                row.bandwidth = b;
                Ok(row)
            })
            .collect::<Result<_>>()?;
        let ratios: Vec<f64> = band.iter().map(|r| r.ratio).collect();
        summaries.push(BandSummary {
            bandwidth: b,
            median_ratio: median(&ratios),
            max_ratio: ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        });
        rows.extend(band);
    }
    Ok(RatioReport { rows, summaries })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub k: usize,
    pub lambda: f64,
    pub max_error: f64,
    pub running_min: f64,
    pub tail_bound: f64,
}

/// `max_x |S_{λ_k} f(x) - f(x)|` against the breakpoint index for the smooth
/// test function `ĉ(n) = (1 + |n|²)^{-2}`.
pub fn run_convergence(config: &RunConfig) -> Result<Vec<ConvergenceRow>> {
    let polytope = config.resolve_polytope()?;
    let f = smooth_trig_polynomial(polytope.dim(), config.bandwidth)?;
    convergence_table(&f, &polytope, config.resolution_for(config.bandwidth))
}

pub fn convergence_table(f: &TrigPolynomial, p: &HPolytope, resolution: usize) -> Result<Vec<ConvergenceRow>> {
    check_resolution(f, resolution)?;
    let shells = Shells::new(f, p)?;
    let table = RootTable::new(resolution);
    let dim = f.dim();
    let len = grid_len(dim, resolution)?;
    let per_point: Vec<Vec<f64>> = (0..len)
        .into_par_iter()
        .map(|flat| {
            let fam = shells.family_at_grid(&multi_index(dim, resolution, flat), &table);
            let full = *fam.values().last().unwrap();
            fam.values().iter().map(|v| (v - full).norm()).collect()
        })
        .collect();
    let lambdas = shells.breakpoints().values();
    let tails = shells.tail_sums();
    let mut running = f64::INFINITY;
    Ok((0..lambdas.len())
        .map(|k| {
            let max_error = per_point.iter().map(|e| e[k]).fold(0.0, f64::max);
            running = running.min(max_error);
            ConvergenceRow {
                k,
                lambda: lambdas[k],
                max_error,
                running_min: running,
                tail_bound: tails[k],
            }
        })
        .collect())
}

pub fn convergence_csv(rows: &[ConvergenceRow], config: &RunConfig) -> CsvDoc {
    let mut doc = CsvDoc::new(&["k", "lambda", "max_error", "running_min", "tail_bound"]);
    doc.comment("convergence of S_lambda f for c(n) = (1 + |n|^2)^-2");
    for line in config.describe() {
        doc.comment(line);
    }
    for r in rows {
        doc.row(vec![
            r.k.to_string(),
            fmt_f64(r.lambda),
            fmt_f64(r.max_error),
            fmt_f64(r.running_min),
            fmt_f64(r.tail_bound),
        ]);
    }
    doc
}

/// `S_λ f` on the grid.
pub fn partial_sum_grid(
    f: &TrigPolynomial,
    p: &HPolytope,
    lambda: f64,
    resolution: usize,
) -> Result<GridSamples<Complex64>> {
    if !(lambda >= 0.0) {
        return Err(Error::NegativeDilation(lambda));
    }
    if f.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: f.dim(),
        });
    }
    sample_grid(&f.filter(|n| p.gauge_unchecked(&to_real(n)) <= lambda), resolution)
        .and_then(|g| {
            // aliasing is judged on f itself, not on the truncation
            check_resolution(f, resolution)?;
            Ok(g)
        })
}

fn index_header(dim: usize, tail: &[&str]) -> Vec<String> {
    (1..=dim)
        .map(|k| format!("j{k}"))
        .chain(tail.iter().map(|s| s.to_string()))
        .collect()
}

pub fn complex_grid_csv(g: &GridSamples<Complex64>, comments: &[String]) -> CsvDoc {
    let header = index_header(g.dim(), &["re", "im"]);
    let mut doc = CsvDoc::new(&header.iter().map(String::as_str).collect::<Vec<_>>());
    for c in comments {
        doc.comment(c.clone());
    }
    for (flat, v) in g.values().iter().enumerate() {
        let mut row: Vec<String> = g.multi_index(flat).iter().map(|j| j.to_string()).collect();
        row.push(fmt_f64(v.re));
        row.push(fmt_f64(v.im));
        doc.row(row);
    }
    doc
}

pub fn real_grid_csv(g: &GridSamples<f64>, comments: &[String]) -> CsvDoc {
    let header = index_header(g.dim(), &["value"]);
    let mut doc = CsvDoc::new(&header.iter().map(String::as_str).collect::<Vec<_>>());
    for c in comments {
        doc.comment(c.clone());
    }
    for (flat, v) in g.values().iter().enumerate() {
        let mut row: Vec<String> = g.multi_index(flat).iter().map(|j| j.to_string()).collect();
        row.push(fmt_f64(*v));
        doc.row(row);
    }
    doc
}
