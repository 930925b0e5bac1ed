//! Values on the uniform grid `{j/M : j ∈ {0..M-1}^d}` of `T^d`.
//!
//! Points are stored row-major with the first coordinate varying slowest, so
//! for fixed `x' = (x_2, ..., x_d)` the `x_1`-slice has stride `M^(d-1)`.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GridSamples<T> {
    dim: usize,
    resolution: usize,
    values: Vec<T>,
}

impl<T> GridSamples<T> {
    pub fn new(dim: usize, resolution: usize, values: Vec<T>) -> Result<Self> {
        if dim == 0 || resolution == 0 {
            return Err(Error::InvalidInput("grid needs d >= 1 and M >= 1".into()));
        }
        let expected = grid_len(dim, resolution)?;
        if values.len() != expected {
            return Err(Error::InvalidInput(format!(
                "grid of M = {resolution}, d = {dim} needs {expected} values, got {}",
                values.len()
            )));
        }
        Ok(Self {
            dim,
            resolution,
            values,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    /// `M^{-d}`: every cell has the same mass and the total is 1.
    pub fn cell_volume(&self) -> f64 {
        (self.resolution as f64).powi(-(self.dim as i32))
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> GridSamples<U> {
        GridSamples {
            dim: self.dim,
            resolution: self.resolution,
            values: self.values.iter().map(f).collect(),
        }
    }

    /// Multi-index `(j_1, ..., j_d)` of a flat position.
    pub fn multi_index(&self, flat: usize) -> Vec<usize> {
        multi_index(self.dim, self.resolution, flat)
    }

    /// The point `j / M` of a flat position.
    pub fn point(&self, flat: usize) -> Vec<f64> {
        self.multi_index(flat)
            .into_iter()
            .map(|j| j as f64 / self.resolution as f64)
            .collect()
    }
}

impl GridSamples<Complex64> {
    pub fn modulus(&self) -> GridSamples<f64> {
        self.map(|z| z.norm())
    }
}

pub(crate) fn grid_len(dim: usize, resolution: usize) -> Result<usize> {
    u32::try_from(dim)
        .ok()
        .and_then(|d| resolution.checked_pow(d))
        .ok_or_else(|| Error::InvalidInput("grid is too large".into()))
}

pub(crate) fn multi_index(dim: usize, resolution: usize, mut flat: usize) -> Vec<usize> {
    let mut idx = vec![0; dim];
    for k in (0..dim).rev() {
        idx[k] = flat % resolution;
        flat /= resolution;
    }
    idx
}
