//! Reduction of a piece-restricted partial sum to a one-dimensional partial
//! sum by fixing `x' = (x_2, ..., x_d)`.
//!
//! For a piece whose facet normal is `±e_1`, a frequency `n` assigned to the
//! piece has gauge `±n_1 / b`, so `gauge(n) <= λ` iff `±n_1 <= λ b`. Summing
//! the assigned coefficients over `n'` against `e^{2πi x'·n'}` gives the
//! frozen function `g_{x'}` and
//! `S_λ(piece part of f)(x_1, x') = T_{λb} g_{x'}(x_1)`.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{phase, to_real, TrigPolynomial};
use crate::error::{Error, Result};
use crate::geometry::{piece_assign, HPolytope, TriangularPiece};
use crate::linalg::norm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    /// Facet normal `+e_1`: the cutoff is `n_1 <= μ`.
    Positive,
    /// Facet normal `-e_1`: the cutoff is `-n_1 <= μ`.
    Negative,
}

impl Orientation {
    fn sign(self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Negative => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrozenFunction {
    orientation: Orientation,
    /// Distance `b` from the origin to the facet hyperplane.
    offset: f64,
    coeffs: BTreeMap<i64, Complex64>,
}

impl FrozenFunction {
    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Complex64> {
        &self.coeffs
    }

    /// The one-dimensional cutoff matching the dilate `λP`.
    pub fn cutoff_for(&self, lambda: f64) -> f64 {
        lambda * self.offset
    }

    pub fn evaluate(&self, x1: f64) -> Complex64 {
        self.coeffs.iter().map(|(&n, c)| c * cis_1d(n, x1)).sum()
    }
}

fn cis_1d(n: i64, x: f64) -> Complex64 {
    let t = n as f64 * x;
    Complex64::cis(TAU * (t - t.floor()))
}

/// `g_{x'}(n_1) = Σ_{n' : (n_1, n') assigned to the piece} ĉ(n_1, n') e^{2πi x'·n'}`.
///
/// Only pieces whose facet normal is `±e_1` are supported: a rotation of a
/// tilted facet onto `e_1` does not preserve `Z^d`.
pub fn freeze(
    f: &TrigPolynomial,
    p: &HPolytope,
    pieces: &[TriangularPiece],
    piece: usize,
    x_rest: &[f64],
) -> Result<FrozenFunction> {
    let d = p.dim();
    if f.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: f.dim(),
        });
    }
    if x_rest.len() + 1 != d {
        return Err(Error::DimensionMismatch {
            expected: d - 1,
            found: x_rest.len(),
        });
    }
    let target = pieces
        .get(piece)
        .ok_or_else(|| Error::InvalidInput(format!("no piece {piece}")))?;
    let a = &target.halfspace().normal;
    let len = norm(a);
    if a[1..].iter().any(|v| v.abs() > 1e-14 * len) || a[0] == 0.0 {
        return Err(Error::NotAxisAligned(piece));
    }
    let orientation = if a[0] > 0.0 {
        Orientation::Positive
    } else {
        Orientation::Negative
    };
    let mut coeffs: BTreeMap<i64, Complex64> = BTreeMap::new();
    for (n, c) in f.coeffs() {
        if piece_assign(pieces, p, &to_real(n)) == piece {
            *coeffs.entry(n[0]).or_default() += c * phase(&n[1..], x_rest);
        }
    }
    Ok(FrozenFunction {
        orientation,
        offset: target.halfspace().offset / a[0].abs(),
        coeffs,
    })
}

/// `T_μ g(x_1) = Σ_{±n_1 <= μ} g(n_1) e^{2πi n_1 x_1}`.
pub fn frozen_partial_sum(g: &FrozenFunction, mu: f64, x1: f64) -> Complex64 {
    let s = g.orientation.sign();
    g.coeffs
        .iter()
        .filter(|(&n, _)| s * n as f64 <= mu)
        .map(|(&n, c)| c * cis_1d(n, x1))
        .sum()
}
