//! Norms with respect to the uniform probability measure on the grid. All
//! quantities use `|h|`, so complex or signed fields can be passed after a
//! `map`.

use crate::error::{Error, Result};
use crate::grid::GridSamples;

fn check_p(p: f64) -> Result<()> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::InvalidExponent(p));
    }
    Ok(())
}

fn sorted_moduli(h: &GridSamples<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = h.values().iter().map(|x| x.abs()).collect();
    v.sort_by(f64::total_cmp);
    v
}

/// `d_h(α) = μ{|h| >= α}`.
pub fn distribution_function(h: &GridSamples<f64>, alpha: f64) -> Result<f64> {
    if !(alpha >= 0.0) {
        return Err(Error::NegativeThreshold(alpha));
    }
    let count = h.values().iter().filter(|x| x.abs() >= alpha).count();
    Ok(count as f64 * h.cell_volume())
}

/// Walks the distinct positive values of `|h|` in increasing order, yielding
/// `(value, previous distinct value, μ{|h| >= value})`.
fn levels(sorted: &[f64], volume: f64) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
    let n = sorted.len();
    let mut i = 0;
    let mut prev = 0.0;
    std::iter::from_fn(move || {
        while i < n && sorted[i] <= prev {
            i += 1;
        }
        if i == n {
            return None;
        }
        let u = sorted[i];
        let tail = (n - i) as f64 * volume;
        let out = (u, prev, tail);
        prev = u;
        Some(out)
    })
}

/// `sup_α α d_h(α)^{1/p}`, attained at a sample value.
pub fn weak_lp_norm(h: &GridSamples<f64>, p: f64) -> Result<f64> {
    check_p(p)?;
    let sorted = sorted_moduli(h);
    Ok(levels(&sorted, h.cell_volume())
        .map(|(u, _, tail)| u * tail.powf(1.0 / p))
        .fold(0.0, f64::max))
}

/// `p ∫_0^∞ d_h(s)^{1/p} ds`; `d_h` is constant on each `(u_{k-1}, u_k]`.
pub fn lorentz_p1_norm(h: &GridSamples<f64>, p: f64) -> Result<f64> {
    check_p(p)?;
    let sorted = sorted_moduli(h);
    let integral: f64 = levels(&sorted, h.cell_volume())
        .map(|(u, prev, tail)| (u - prev) * tail.powf(1.0 / p))
        .sum();
    Ok(p * integral)
}

pub fn lp_norm(h: &GridSamples<f64>, p: f64) -> Result<f64> {
    check_p(p)?;
    let s: f64 = h.values().iter().map(|x| x.abs().powf(p)).sum();
    Ok((h.cell_volume() * s).powf(1.0 / p))
}

/// `(d_h(α), mean over x' of d_{h(·, x')}(α))`. The two agree because the
/// grid measure is a product measure.
pub fn fubini_slice_check(h: &GridSamples<f64>, alpha: f64) -> Result<(f64, f64)> {
    let d = h.dim();
    if d < 2 {
        return Err(Error::InvalidInput("slicing needs d >= 2".into()));
    }
    let global = distribution_function(h, alpha)?;
    let m = h.resolution();
    let stride = h.len() / m;
    let values = h.values();
    let slices: f64 = (0..stride)
        .map(|rest| {
            let count = (0..m)
                .filter(|&j1| values[j1 * stride + rest].abs() >= alpha)
                .count();
            count as f64 / m as f64
        })
        .sum();
    Ok((global, slices / stride as f64))
}
