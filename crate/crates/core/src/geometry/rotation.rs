use serde::{Deserialize, Serialize};

use super::{Facet, HPolytope, HalfSpace};
use crate::error::{Error, Result};
use crate::linalg::{dot, norm};

/// A proper orthogonal matrix, stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rotation {
    dim: usize,
    matrix: Vec<f64>,
}

impl Rotation {
    pub fn identity(dim: usize) -> Self {
        let mut matrix = vec![0.0; dim * dim];
        for i in 0..dim {
            matrix[i * dim + i] = 1.0;
        }
        Self { dim, matrix }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.matrix[i * self.dim + j]
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|i| dot(&self.matrix[i * self.dim..(i + 1) * self.dim], x))
            .collect()
    }

    /// `max_ij |(RᵀR - I)_ij|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let s: f64 = (0..d).map(|k| self.entry(k, i) * self.entry(k, j)).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s - target).abs());
            }
        }
        worst
    }

    pub fn determinant(&self) -> f64 {
        let rows: Vec<Vec<f64>> = (0..self.dim)
            .map(|i| self.matrix[i * self.dim..(i + 1) * self.dim].to_vec())
            .collect();
        if self.dim <= 3 {
            crate::linalg::det(&rows)
        } else {
            lu_determinant(rows)
        }
    }

    /// The polytope `R(P)`: a row `a·x <= 1` becomes `(R a)·y <= 1`.
    pub fn apply_to_polytope(&self, p: &HPolytope) -> HPolytope {
        let rows = p
            .rows()
            .iter()
            .map(|r| HalfSpace {
                normal: self.apply(&r.normal),
                offset: r.offset,
            })
            .collect();
        HPolytope::from_normalized_rows(p.dim(), rows)
    }
}

fn lu_determinant(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        if m[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det *= m[col][col];
        for i in col + 1..n {
            let f = m[i][col] / m[col][col];
            for k in col..n {
                m[i][k] -= f * m[col][k];
            }
        }
    }
    det
}

/// A rotation taking the facet's unit outer normal to `e_1`.
///
/// Built as a Householder reflection followed by a coordinate reflection that
/// restores `det = +1`. The reflecting vector is `n + e_1` when `n_1 >= 0`
/// and `n - e_1` otherwise, so it never suffers cancellation.
pub fn rotation_to_e1(facet: &Facet) -> Result<Rotation> {
    let a = &facet.supporting.normal;
    let len = norm(a);
    if len == 0.0 {
        return Err(Error::ZeroNormal);
    }
    let d = a.len();
    let n: Vec<f64> = a.iter().map(|v| v / len).collect();
    if d == 1 {
        return if n[0] > 0.0 {
            Ok(Rotation::identity(1))
        } else {
            Err(Error::NoRotation)
        };
    }
    let plus = n[0] >= 0.0;
    let mut w = n.clone();
    w[0] += if plus { 1.0 } else { -1.0 };
    let ww = dot(&w, &w);
    // H = I - 2 w wᵀ / (wᵀw); H n = -e_1 (plus) or +e_1 (minus).
    let mut matrix = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            let id = if i == j { 1.0 } else { 0.0 };
            matrix[i * d + j] = id - 2.0 * w[i] * w[j] / ww;
        }
    }
    // Flip row 0 (maps -e_1 to e_1) or the last row (fixes e_1); either way
    // det goes from -1 to +1.
    let flip = if plus { 0 } else { d - 1 };
    for j in 0..d {
        matrix[flip * d + j] = -matrix[flip * d + j];
    }
    Ok(Rotation { dim: d, matrix })
}
