//! Conversions between H- and V-form and facet enumeration, by brute-force
//! intersection of d hyperplanes at a time. Only used for d <= 3.

use std::collections::BTreeMap;

use super::{close_points, same_row, Facet, HPolytope, HalfSpace, VPolytope, TIGHT_TOL};
use crate::error::{Error, Result};
use crate::linalg::{combinations, det, dot, norm, orthogonal_complement, rank, solve, sub};

const SINGULAR_TOL: f64 = 1e-12;

fn check_small_dim(dim: usize) -> Result<()> {
    if (1..=3).contains(&dim) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

/// True when some nonzero `u` has `w·u <= 0` for every `w` in `vectors`.
///
/// For H-rows this means the polytope is unbounded; for a point set it means
/// the origin is not interior to the hull. Extreme rays of `{u : W u <= 0}`
/// are cut out by `d - 1` tight constraints, so enumerating those subsets
/// is enough once the vectors span R^d.
fn has_nonpositive_direction(vectors: &[Vec<f64>], dim: usize) -> bool {
    if rank(vectors, SINGULAR_TOL) < dim {
        return true;
    }
    for subset in combinations(vectors.len(), dim - 1) {
        let basis: Vec<&[f64]> = subset.iter().map(|&i| vectors[i].as_slice()).collect();
        let u = orthogonal_complement(&basis, dim);
        let un = norm(&u);
        if un == 0.0 {
            continue;
        }
        for sign in [1.0, -1.0] {
            if vectors
                .iter()
                .all(|w| sign * dot(w, &u) <= 1e-12 * norm(w) * un)
            {
                return true;
            }
        }
    }
    false
}

/// All points where `d` rows are tight and every row holds.
pub fn vertices_from_h(p: &HPolytope) -> Result<VPolytope> {
    let dim = p.dim();
    check_small_dim(dim)?;
    let normals: Vec<Vec<f64>> = p.rows().iter().map(|r| r.normal.clone()).collect();
    if has_nonpositive_direction(&normals, dim) {
        return Err(Error::Degenerate);
    }
    let mut vertices: Vec<Vec<f64>> = Vec::new();
    for subset in combinations(normals.len(), dim) {
        let sys: Vec<Vec<f64>> = subset.iter().map(|&i| normals[i].clone()).collect();
        let Some(x) = solve(&sys, &vec![1.0; dim], SINGULAR_TOL) else {
            continue;
        };
        if p.rows().iter().all(|r| r.value(&x) <= r.offset + TIGHT_TOL)
            && !vertices.iter().any(|v| close_points(v, &x))
        {
            vertices.push(x);
        }
    }
    if vertices.len() < dim + 1 {
        return Err(Error::Degenerate);
    }
    VPolytope::new(dim, vertices)
}

fn tight_set(row: &HalfSpace, points: &[Vec<f64>]) -> Vec<usize> {
    points
        .iter()
        .enumerate()
        .filter(|(_, v)| (row.value(v) - row.offset).abs() <= TIGHT_TOL)
        .map(|(i, _)| i)
        .collect()
}

fn affine_rank(points: &[&Vec<f64>]) -> usize {
    match points.split_first() {
        None => 0,
        Some((first, rest)) => {
            let diffs: Vec<Vec<f64>> = rest.iter().map(|v| sub(v, first)).collect();
            rank(&diffs, 1e-9)
        }
    }
}

pub(super) fn supports_facet(row: &HalfSpace, vertices: &[Vec<f64>], dim: usize) -> bool {
    let tight = tight_set(row, vertices);
    tight.len() >= dim
        && affine_rank(&tight.iter().map(|&i| &vertices[i]).collect::<Vec<_>>()) == dim - 1
}

/// Irredundant H-form of `conv(Q)`, rows normalized to `b_i = 1`.
///
/// Candidate rows come from hyperplanes through d input points; a candidate
/// is kept when every point satisfies it. Candidates with the same tight
/// point set describe the same facet and are merged, keeping the one whose
/// defining points are best conditioned.
pub fn h_from_vertices(q: &VPolytope) -> Result<HPolytope> {
    let dim = q.dim();
    check_small_dim(dim)?;
    let pts = q.vertices();
    if pts.len() < dim + 1 || rank(pts, SINGULAR_TOL) < dim {
        return Err(Error::Degenerate);
    }
    if has_nonpositive_direction(pts, dim) {
        return Err(Error::OriginOutsideHull);
    }
    // tight point set -> (conditioning, row)
    let mut by_facet: BTreeMap<Vec<usize>, (f64, Vec<f64>)> = BTreeMap::new();
    for subset in combinations(pts.len(), dim) {
        let sys: Vec<Vec<f64>> = subset.iter().map(|&i| pts[i].clone()).collect();
        let Some(a) = solve(&sys, &vec![1.0; dim], SINGULAR_TOL) else {
            continue;
        };
        if !pts.iter().all(|v| dot(&a, v) <= 1.0 + TIGHT_TOL) {
            continue;
        }
        let row = HalfSpace { normal: a, offset: 1.0 };
        let tight = tight_set(&row, pts);
        if affine_rank(&tight.iter().map(|&i| &pts[i]).collect::<Vec<_>>()) != dim - 1 {
            continue;
        }
        let scale: f64 = sys.iter().map(|r| norm(r)).product::<f64>().max(f64::MIN_POSITIVE);
        let cond = det(&sys).abs() / scale;
        match by_facet.get(&tight) {
            Some((best, _)) if *best >= cond => {}
            _ => {
                by_facet.insert(tight, (cond, row.normal));
            }
        }
    }
    let mut rows: Vec<HalfSpace> = Vec::with_capacity(by_facet.len());
    for (_, (_, normal)) in by_facet {
        let row = HalfSpace { normal, offset: 1.0 };
        if !rows.iter().any(|r| same_row(r, &row)) {
            rows.push(row);
        }
    }
    if rows.len() < dim + 1 {
        return Err(Error::Degenerate);
    }
    Ok(HPolytope::from_normalized_rows(dim, rows))
}

/// One facet per H-row, with the vertices of `q` tight on that row.
pub fn facets(p: &HPolytope, q: &VPolytope) -> Result<Vec<Facet>> {
    let dim = p.dim();
    check_small_dim(dim)?;
    if q.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: q.dim(),
        });
    }
    let verts = q.vertices();
    for v in verts {
        if p.rows().iter().any(|r| r.value(v) > r.offset + TIGHT_TOL) {
            return Err(Error::Inconsistent(format!("point {v:?} violates a row")));
        }
        let tight = p
            .rows()
            .iter()
            .filter(|r| (r.value(v) - r.offset).abs() <= TIGHT_TOL)
            .count();
        if tight < dim {
            return Err(Error::Inconsistent(format!(
                "point {v:?} is tight on only {tight} rows"
            )));
        }
    }
    let mut out: Vec<Facet> = Vec::with_capacity(p.num_rows());
    for (i, row) in p.rows().iter().enumerate() {
        if !supports_facet(row, verts, dim) || out.iter().any(|f| same_row(&f.supporting, row)) {
            return Err(Error::RedundantRow(i));
        }
        out.push(Facet {
            index: i,
            supporting: row.clone(),
            vertices: tight_set(row, verts).into_iter().map(|j| verts[j].clone()).collect(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_vertices() {
        let p = HPolytope::cube(2, 1.0).unwrap();
        let v = vertices_from_h(&p).unwrap();
        let expected = VPolytope::new(
            2,
            vec![vec![1.0, 1.0], vec![1.0, -1.0], vec![-1.0, 1.0], vec![-1.0, -1.0]],
        )
        .unwrap();
        assert!(v.same_vertex_set(&expected));
    }

    #[test]
    fn interval_vertices() {
        let p = HPolytope::interval(-2.0, 3.0).unwrap();
        let v = vertices_from_h(&p).unwrap();
        let expected = VPolytope::new(1, vec![vec![3.0], vec![-2.0]]).unwrap();
        assert!(v.same_vertex_set(&expected));
    }

    #[test]
    fn unbounded_is_rejected() {
        // a wedge: x <= 1, y <= 1, -x - y <= 1 is bounded; drop one row
        let p = HPolytope::new(2, vec![vec![1.0, 0.0], vec![0.0, 1.0]], vec![1.0, 1.0]).unwrap();
        assert!(matches!(vertices_from_h(&p), Err(Error::Degenerate)));
        let slab = HPolytope::new(2, vec![vec![1.0, 0.0], vec![-1.0, 0.0]], vec![1.0, 1.0]).unwrap();
        assert!(matches!(vertices_from_h(&slab), Err(Error::Degenerate)));
        let ray = HPolytope::new(1, vec![vec![1.0]], vec![1.0]).unwrap();
        assert!(matches!(vertices_from_h(&ray), Err(Error::Degenerate)));
    }

    #[test]
    fn square_from_vertices() {
        let q = VPolytope::new(
            2,
            vec![vec![1.0, 1.0], vec![-1.0, 1.0], vec![-1.0, -1.0], vec![1.0, -1.0]],
        )
        .unwrap();
        let p = h_from_vertices(&q).unwrap();
        assert_eq!(p.num_rows(), 4);
        let cube = HPolytope::cube(2, 1.0).unwrap();
        for row in cube.rows() {
            assert!(p.rows().iter().any(|r| same_row(r, row)));
        }
    }

    #[test]
    fn diamond_from_vertices() {
        let q = VPolytope::new(
            2,
            vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 0.0], vec![0.0, -1.0]],
        )
        .unwrap();
        let p = h_from_vertices(&q).unwrap();
        let cross = HPolytope::cross_polytope(2).unwrap();
        assert_eq!(p.num_rows(), 4);
        for row in cross.rows() {
            assert!(p.rows().iter().any(|r| same_row(r, row)));
        }
    }

    #[test]
    fn cube_from_vertices_merges_coplanar_candidates() {
        let cube = HPolytope::cube(3, 1.0).unwrap();
        let v = vertices_from_h(&cube).unwrap();
        assert_eq!(v.vertices().len(), 8);
        let p = h_from_vertices(&v).unwrap();
        assert_eq!(p.num_rows(), 6);
        p.validate().unwrap();
    }

    #[test]
    fn interior_points_are_ignored() {
        let q = VPolytope::new(
            2,
            vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 0.0], vec![0.0, -1.0], vec![0.1, 0.2]],
        )
        .unwrap();
        assert_eq!(h_from_vertices(&q).unwrap().num_rows(), 4);
    }

    #[test]
    fn origin_outside_hull() {
        let q = VPolytope::new(2, vec![vec![1.0, 0.0], vec![2.0, 1.0], vec![2.0, -1.0]]).unwrap();
        assert!(matches!(h_from_vertices(&q), Err(Error::OriginOutsideHull)));
        // origin on the boundary
        let q = VPolytope::new(2, vec![vec![0.0, 1.0], vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        assert!(matches!(h_from_vertices(&q), Err(Error::OriginOutsideHull)));
    }

    #[test]
    fn flat_hull_is_degenerate() {
        let q = VPolytope::new(2, vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.5, 0.0]]).unwrap();
        assert!(matches!(h_from_vertices(&q), Err(Error::Degenerate)));
    }

    #[test]
    fn square_and_cube_facets() {
        let p = HPolytope::cube(2, 1.0).unwrap();
        let f = facets(&p, &vertices_from_h(&p).unwrap()).unwrap();
        assert_eq!(f.len(), 4);
        assert!(f.iter().all(|f| f.vertices.len() == 2));

        let p = HPolytope::cube(3, 1.0).unwrap();
        let f = facets(&p, &vertices_from_h(&p).unwrap()).unwrap();
        assert_eq!(f.len(), 6);
        assert!(f.iter().all(|f| f.vertices.len() == 4));
    }

    #[test]
    fn octahedron_is_accepted_although_not_simple() {
        let p = HPolytope::cross_polytope(3).unwrap();
        let v = vertices_from_h(&p).unwrap();
        assert_eq!(v.vertices().len(), 6);
        let f = facets(&p, &v).unwrap();
        assert_eq!(f.len(), 8);
        assert!(f.iter().all(|f| f.vertices.len() == 3));
    }

    #[test]
    fn mismatched_representations() {
        let p = HPolytope::cube(2, 1.0).unwrap();
        let wrong = VPolytope::new(2, vec![vec![2.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(facets(&p, &wrong), Err(Error::Inconsistent(_))));
        let interior = VPolytope::new(2, vec![vec![0.0, 0.0]]).unwrap();
        assert!(matches!(facets(&p, &interior), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn duplicate_row_is_redundant() {
        let p = HPolytope::new(
            2,
            vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0], vec![2.0, 0.0]],
            vec![1.0, 1.0, 1.0, 1.0, 2.0],
        )
        .unwrap();
        assert!(matches!(p.validate(), Err(Error::RedundantRow(4))));
    }

    #[test]
    fn row_touching_a_single_vertex_is_redundant() {
        let p = HPolytope::new(
            2,
            vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0], vec![1.0, 1.0]],
            vec![1.0, 1.0, 1.0, 1.0, 2.0],
        )
        .unwrap();
        assert!(matches!(p.validate(), Err(Error::RedundantRow(4))));
    }

    #[test]
    fn dimension_four_is_unsupported() {
        let p = HPolytope::cube(4, 1.0).unwrap();
        assert!(matches!(vertices_from_h(&p), Err(Error::UnsupportedDimension(4))));
    }
}
