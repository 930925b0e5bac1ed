//! Trigonometric polynomials on `T^d` and polytopal partial sums.

mod freeze;
mod multiplier;
mod partial_sum;

pub use freeze::{freeze, frozen_partial_sum, FrozenFunction, Orientation};
pub use multiplier::{cone_multiplier, halfspace_multiplier};
pub use partial_sum::{
    breakpoints, family_at_point, partial_sum, partial_sum_by_pieces, piece_partial_sums,
    Breakpoints, Shells, BREAKPOINT_TOL,
};

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{grid_len, multi_index, GridSamples};

/// A finitely supported coefficient map `n ↦ ĉ(n)` on `Z^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolynomial {
    dim: usize,
    coeffs: BTreeMap<Vec<i64>, Complex64>,
}

impl TrigPolynomial {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds a polynomial from `(n, ĉ(n))` pairs. Repeated frequencies are
    /// rejected.
    pub fn new(dim: usize, terms: impl IntoIterator<Item = (Vec<i64>, Complex64)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        let mut coeffs = BTreeMap::new();
        for (n, c) in terms {
            if n.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: n.len(),
                });
            }
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::InvalidInput(format!("coefficient at {n:?} is not finite")));
            }
            if coeffs.insert(n.clone(), c).is_some() {
                return Err(Error::InvalidInput(format!("frequency {n:?} appears twice")));
            }
        }
        Ok(Self { dim, coeffs })
    }

    /// `c · e^{2πi n·x}`.
    pub fn monomial(n: Vec<i64>, c: Complex64) -> Self {
        let dim = n.len();
        Self {
            dim,
            coeffs: BTreeMap::from([(n, c)]),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<i64>, Complex64> {
        &self.coeffs
    }

    pub fn coeff(&self, n: &[i64]) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest `B` with `|n_j| <= B` on the support.
    pub fn bandwidth(&self) -> u64 {
        self.coeffs
            .keys()
            .flat_map(|n| n.iter().map(|v| v.unsigned_abs()))
            .max()
            .unwrap_or(0)
    }

    /// `Σ |ĉ(n)|²`.
    pub fn energy(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm_sqr()).sum()
    }

    /// `Σ ĉ(n) e^{2πi n·x}`.
    pub fn evaluate(&self, x: &[f64]) -> Result<Complex64> {
        check_point(self.dim, x)?;
        Ok(self.coeffs.iter().map(|(n, c)| c * phase(n, x)).sum())
    }

    /// Keeps the terms accepted by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&[i64]) -> bool) -> Self {
        Self {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(n, _)| keep(n))
                .map(|(n, c)| (n.clone(), *c))
                .collect(),
        }
    }

    /// `α·self + β·other`, on the union of the supports.
    pub fn linear_combination(&self, alpha: Complex64, other: &Self, beta: Complex64) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut coeffs: BTreeMap<Vec<i64>, Complex64> =
            self.coeffs.iter().map(|(n, c)| (n.clone(), alpha * c)).collect();
        for (n, c) in &other.coeffs {
            *coeffs.entry(n.clone()).or_default() += beta * c;
        }
        Ok(Self {
            dim: self.dim,
            coeffs,
        })
    }
}

pub(crate) fn check_point(dim: usize, x: &[f64]) -> Result<()> {
    if x.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: x.len(),
        });
    }
    Ok(())
}

/// `e^{2πi n·x}`, with `n·x` reduced mod 1 before the exponential.
pub(crate) fn phase(n: &[i64], x: &[f64]) -> Complex64 {
    let t: f64 = n.iter().zip(x).map(|(&k, &v)| k as f64 * v).sum();
    Complex64::cis(TAU * (t - t.floor()))
}

pub(crate) fn to_real(n: &[i64]) -> Vec<f64> {
    n.iter().map(|&v| v as f64).collect()
}

/// The M-th roots of unity, for exact phase lookup at grid points.
#[derive(Debug, Clone)]
pub(crate) struct RootTable {
    resolution: i64,
    roots: Vec<Complex64>,
}

impl RootTable {
    pub(crate) fn new(resolution: usize) -> Self {
        let m = resolution as f64;
        Self {
            resolution: resolution as i64,
            roots: (0..resolution)
                .map(|k| Complex64::cis(TAU * k as f64 / m))
                .collect(),
        }
    }

    /// `e^{2πi n·j/M}`.
    pub(crate) fn phase(&self, n: &[i64], j: &[usize]) -> Complex64 {
        let k = n
            .iter()
            .zip(j)
            .map(|(&a, &b)| a * b as i64)
            .sum::<i64>()
            .rem_euclid(self.resolution);
        self.roots[k as usize]
    }
}

pub(crate) fn check_resolution(f: &TrigPolynomial, resolution: usize) -> Result<()> {
    let b = f.bandwidth();
    if (resolution as u64) < 2 * b + 1 {
        return Err(Error::Aliasing {
            resolution,
            bandwidth: b,
        });
    }
    Ok(())
}

/// `f(j/M)` on the whole grid, by direct summation.
pub fn sample_grid(f: &TrigPolynomial, resolution: usize) -> Result<GridSamples<Complex64>> {
    check_resolution(f, resolution)?;
    let len = grid_len(f.dim, resolution)?;
    let table = RootTable::new(resolution);
    let values = (0..len)
        .map(|flat| {
            let j = multi_index(f.dim, resolution, flat);
            f.coeffs.iter().map(|(n, c)| c * table.phase(n, &j)).sum()
        })
        .collect();
    GridSamples::new(f.dim, resolution, values)
}
