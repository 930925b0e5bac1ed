//! Convex polytopes with the origin in the interior.
//!
//! A polytope is held in H-form `{x : a_i·x <= b_i}` with every row scaled so
//! that `b_i = 1`. The Minkowski gauge is then `max(0, max_i a_i·x)` and the
//! dilate `λP` is the sublevel set `{gauge <= λ}`.

mod enumerate;
mod rotation;
mod triangulation;

pub use enumerate::{facets, h_from_vertices, vertices_from_h};
pub use rotation::{rotation_to_e1, Rotation};
pub use triangulation::{cone_halfspaces, piece_assign, triangulate, TriangularPiece};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::dot;

/// Tolerance for tightness tests `|a·v - 1| <= TIGHT_TOL`.
pub const TIGHT_TOL: f64 = 1e-9;

/// Relative distance below which two enumerated vertices are merged.
pub const DEDUP_TOL: f64 = 1e-7;

/// Relative slack within which two rows count as achieving the same gauge
/// maximum when assigning points to pieces.
pub const TIE_TOL: f64 = 1e-12;

/// One inequality `normal·x <= offset`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfSpace {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl HalfSpace {
    pub fn value(&self, x: &[f64]) -> f64 {
        dot(&self.normal, x)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HPolytope {
    dim: usize,
    rows: Vec<HalfSpace>,
}

impl HPolytope {
    /// Builds an H-polytope from `A x <= b`, rescaling every row to `b_i = 1`.
    ///
    /// Checks shapes and `b_i > 0`. Boundedness and irredundancy need vertex
    /// enumeration and are checked by [`HPolytope::validate`].
    pub fn new(dim: usize, a: Vec<Vec<f64>>, b: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        if a.len() != b.len() {
            return Err(Error::InvalidInput(format!(
                "{} rows in A but {} entries in b",
                a.len(),
                b.len()
            )));
        }
        if a.is_empty() {
            return Err(Error::Degenerate);
        }
        let mut rows = Vec::with_capacity(a.len());
        for (i, (row, offset)) in a.into_iter().zip(b).enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            if !offset.is_finite() || row.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidInput(format!("row {i} is not finite")));
            }
            if offset <= 0.0 {
                return Err(Error::OriginNotInterior { row: i, offset });
            }
            if row.iter().all(|&v| v == 0.0) {
                return Err(Error::ZeroNormal);
            }
            rows.push(HalfSpace {
                normal: row.iter().map(|v| v / offset).collect(),
                offset: 1.0,
            });
        }
        Ok(Self { dim, rows })
    }

    /// The cube `[-s, s]^d`, rows ordered `(+e_1, -e_1, +e_2, -e_2, ...)`.
    pub fn cube(dim: usize, half_width: f64) -> Result<Self> {
        let mut a = Vec::with_capacity(2 * dim);
        for j in 0..dim {
            for sign in [1.0, -1.0] {
                let mut row = vec![0.0; dim];
                row[j] = sign;
                a.push(row);
            }
        }
        Self::new(dim, a, vec![half_width; 2 * dim])
    }

    /// The unit l¹ ball `conv{±e_j}`.
    pub fn cross_polytope(dim: usize) -> Result<Self> {
        let mut a = Vec::with_capacity(1 << dim);
        for mask in 0..(1usize << dim) {
            a.push(
                (0..dim)
                    .map(|j| if mask >> j & 1 == 1 { -1.0 } else { 1.0 })
                    .collect(),
            );
        }
        let m = a.len();
        Self::new(dim, a, vec![1.0; m])
    }

    /// The interval `[lo, hi]` with `lo < 0 < hi`.
    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        Self::new(1, vec![vec![1.0], vec![-1.0]], vec![hi, -lo])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[HalfSpace] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Same polytope with the rows in a different order.
    pub fn with_rows_permuted(&self, order: &[usize]) -> Self {
        Self {
            dim: self.dim,
            rows: order.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    pub(crate) fn from_normalized_rows(dim: usize, rows: Vec<HalfSpace>) -> Self {
        Self { dim, rows }
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Minkowski gauge `inf{t >= 0 : x ∈ tP}`.
    pub fn gauge(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x)?;
        Ok(self.gauge_unchecked(x))
    }

    pub(crate) fn gauge_unchecked(&self, x: &[f64]) -> f64 {
        self.rows
            .iter()
            .map(|r| r.value(x))
            .fold(0.0f64, f64::max)
    }

    /// Gauge of an integer lattice vector.
    pub fn gauge_lattice(&self, n: &[i64]) -> Result<f64> {
        let x: Vec<f64> = n.iter().map(|&v| v as f64).collect();
        self.gauge(&x)
    }

    /// Whether `x` lies in the closed dilate `λP`.
    pub fn contains(&self, x: &[f64], lambda: f64) -> Result<bool> {
        if !(lambda >= 0.0) {
            return Err(Error::NegativeDilation(lambda));
        }
        Ok(self.gauge(x)? <= lambda)
    }

    /// Checks boundedness and irredundancy (d <= 3).
    pub fn validate(&self) -> Result<()> {
        let v = vertices_from_h(self)?;
        facets(self, &v).map(|_| ())
    }

    /// Drops rows that do not support a facet (d <= 3).
    pub fn without_redundant_rows(&self) -> Result<Self> {
        let v = vertices_from_h(self)?;
        let keep: Vec<HalfSpace> = self
            .rows
            .iter()
            .filter(|row| enumerate::supports_facet(row, v.vertices(), self.dim))
            .cloned()
            .collect();
        let mut out: Vec<HalfSpace> = Vec::with_capacity(keep.len());
        for row in keep {
            if !out.iter().any(|r| same_row(r, &row)) {
                out.push(row);
            }
        }
        Ok(Self::from_normalized_rows(self.dim, out))
    }
}

pub(crate) fn same_row(a: &HalfSpace, b: &HalfSpace) -> bool {
    let scale = crate::linalg::norm(&a.normal).max(1.0);
    a.normal
        .iter()
        .zip(&b.normal)
        .all(|(x, y)| (x - y).abs() <= DEDUP_TOL * scale)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<Vec<f64>>,
}

impl VPolytope {
    /// Wraps a point list. Minimality and interior origin are checked by
    /// [`h_from_vertices`], which is the only consumer that needs them.
    pub fn new(dim: usize, vertices: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        for v in &vertices {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidInput("vertex is not finite".into()));
            }
        }
        Ok(Self { dim, vertices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    /// Whether the vertex sets agree up to order and `DEDUP_TOL`.
    pub fn same_vertex_set(&self, other: &VPolytope) -> bool {
        self.dim == other.dim
            && self.vertices.len() == other.vertices.len()
            && self
                .vertices
                .iter()
                .all(|v| other.vertices.iter().any(|w| close_points(v, w)))
    }
}

pub(crate) fn close_points(v: &[f64], w: &[f64]) -> bool {
    let scale = crate::linalg::norm(v).max(1.0);
    crate::linalg::norm(&crate::linalg::sub(v, w)) <= DEDUP_TOL * scale
}

/// `F_i = H_i ∩ P`, with the vertices of P lying on `H_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Facet {
    pub index: usize,
    pub supporting: HalfSpace,
    pub vertices: Vec<Vec<f64>>,
}
