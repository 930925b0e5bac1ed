//! Fan triangulation from the origin: one piece `P_i = cone(F_i) ∩ {a_i·x <= 1}`
//! per facet.

use serde::{Deserialize, Serialize};

use super::{facets, vertices_from_h, Facet, HPolytope, HalfSpace, TIE_TOL, TIGHT_TOL};
use crate::error::{Error, Result};
use crate::linalg::{combinations, dot, norm, orthogonal_complement, rank};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangularPiece {
    pub facet: Facet,
    /// Homogeneous rows `c·x <= 0` cutting out `cone(F_i)`.
    pub cone_rows: Vec<HalfSpace>,
}

impl TriangularPiece {
    pub fn index(&self) -> usize {
        self.facet.index
    }

    /// The facet vertices, which generate the sector `S_i`.
    pub fn generators(&self) -> &[Vec<f64>] {
        &self.facet.vertices
    }

    pub fn halfspace(&self) -> &HalfSpace {
        &self.facet.supporting
    }

    /// Membership in the sector `S_i`, tested through the cone rows.
    pub fn in_sector(&self, x: &[f64]) -> bool {
        let slack = TIGHT_TOL * norm(x).max(1.0);
        self.cone_rows.iter().all(|r| r.value(x) <= slack)
    }

    /// Membership in `S_i ∩ C_i`.
    pub fn contains(&self, x: &[f64]) -> bool {
        self.in_sector(x) && self.halfspace().value(x) <= self.halfspace().offset + TIGHT_TOL
    }
}

/// Homogeneous half-spaces whose intersection is `cone(V_i)`.
///
/// Each candidate boundary is the hyperplane through the origin spanned by
/// `d - 1` generators; it is kept when all generators lie on one side and at
/// least one lies strictly inside.
pub fn cone_halfspaces(piece: &TriangularPiece) -> Result<Vec<HalfSpace>> {
    cone_rows_for(piece.generators())
}

fn cone_rows_for(generators: &[Vec<f64>]) -> Result<Vec<HalfSpace>> {
    let dim = generators.first().map(Vec::len).ok_or(Error::DegenerateCone)?;
    if !(1..=3).contains(&dim) {
        return Err(Error::UnsupportedDimension(dim));
    }
    if rank(generators, 1e-12) < dim {
        return Err(Error::DegenerateCone);
    }
    let mut rows: Vec<HalfSpace> = Vec::new();
    for subset in combinations(generators.len(), dim - 1) {
        let basis: Vec<&[f64]> = subset.iter().map(|&i| generators[i].as_slice()).collect();
        let c = orthogonal_complement(&basis, dim);
        let len = norm(&c);
        if len == 0.0 {
            continue;
        }
        let c: Vec<f64> = c.iter().map(|v| v / len).collect();
        let side: Vec<f64> = generators
            .iter()
            .map(|g| dot(&c, g) / norm(g))
            .collect();
        let sign = if side.iter().all(|&s| s <= TIGHT_TOL) {
            1.0
        } else if side.iter().all(|&s| s >= -TIGHT_TOL) {
            -1.0
        } else {
            continue;
        };
        if !side.iter().any(|&s| sign * s < -TIGHT_TOL) {
            continue;
        }
        let row = HalfSpace {
            normal: c.iter().map(|v| sign * v + 0.0).collect(),
            offset: 0.0,
        };
        if !rows.iter().any(|r| super::same_row(r, &row)) {
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Err(Error::DegenerateCone);
    }
    Ok(rows)
}

/// One triangular piece per facet, in row order.
pub fn triangulate(p: &HPolytope) -> Result<Vec<TriangularPiece>> {
    let v = vertices_from_h(p)?;
    facets(p, &v)?
        .into_iter()
        .map(|facet| {
            let cone_rows = cone_rows_for(&facet.vertices)?;
            Ok(TriangularPiece { facet, cone_rows })
        })
        .collect()
}

/// Position of the piece a point is assigned to: the first piece whose row
/// attains the gauge maximum (within a relative `TIE_TOL`). The origin goes to
/// the first piece.
pub fn piece_assign(pieces: &[TriangularPiece], p: &HPolytope, x: &[f64]) -> usize {
    debug_assert_eq!(x.len(), p.dim());
    let g = p.gauge_unchecked(x);
    if g == 0.0 {
        return 0;
    }
    let floor = g - TIE_TOL * g.max(1.0);
    pieces
        .iter()
        .position(|piece| piece.halfspace().value(x) >= floor)
        .expect("some row attains the gauge of a nonzero point")
}
