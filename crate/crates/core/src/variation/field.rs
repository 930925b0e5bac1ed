use rayon::prelude::*;

use super::{sup_family, v_r_exact, StepFunction};
use crate::error::Result;
use crate::geometry::HPolytope;
use crate::grid::{grid_len, multi_index, GridSamples};
use crate::spectral::{check_resolution, RootTable, Shells, TrigPolynomial};

/// Applies `reduce` to the family `{S_λ f(x)}` at every grid point. Points are
/// independent; rayon's indexed collect keeps the output in grid order.
fn map_families(
    f: &TrigPolynomial,
    p: &HPolytope,
    resolution: usize,
    reduce: impl Fn(&StepFunction) -> f64 + Sync,
) -> Result<GridSamples<f64>> {
    check_resolution(f, resolution)?;
    let shells = Shells::new(f, p)?;
    let table = RootTable::new(resolution);
    let dim = f.dim();
    let len = grid_len(dim, resolution)?;
    let values: Vec<f64> = (0..len)
        .into_par_iter()
        .map(|flat| {
            let j = multi_index(dim, resolution, flat);
            reduce(&shells.family_at_grid(&j, &table))
        })
        .collect();
    GridSamples::new(dim, resolution, values)
}

/// `V_r(S_λ f : λ >= 0)` at every grid point.
pub fn v_r_field(f: &TrigPolynomial, p: &HPolytope, resolution: usize, r: f64) -> Result<GridSamples<f64>> {
    // validate r once instead of per point
    v_r_exact(&[], r)?;
    map_families(f, p, resolution, |fam| {
        v_r_exact(fam.values(), r).expect("exponent checked above")
    })
}

/// `sup_λ |S_λ f|` at every grid point.
pub fn sup_field(f: &TrigPolynomial, p: &HPolytope, resolution: usize) -> Result<GridSamples<f64>> {
    map_families(f, p, resolution, |fam| {
        sup_family(fam.values()).expect("families are never empty")
    })
}
