use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::geometry::{h_from_vertices, HPolytope, VPolytope};
use crate::linalg::norm;
use crate::spectral::TrigPolynomial;

/// Smallest allowed distance from the origin to a facet of the hull of the
/// sampled points.
pub const HULL_MARGIN: f64 = 0.1;

const MAX_ATTEMPTS: usize = 10_000;

pub fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mixes a base seed with tags (splitmix64 finalizer per tag).
pub fn derive_seed(base: u64, tags: &[u64]) -> u64 {
    let mut s = base;
    for &t in tags {
        s = s.wrapping_add(0x9E37_79B9_7F4A_7C15).wrapping_add(t.wrapping_mul(0xD1B5_4A32_D192_ED03));
        let mut z = s;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        s = z ^ (z >> 31);
    }
    s
}

pub fn unit_vector(rng: &mut impl Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let n = norm(&v);
        if n > 1e-6 {
            return v.iter().map(|x| x / n).collect();
        }
    }
}

/// A random polytope `{u_i·x <= 1}` for `m` unit normals `u_i`.
///
/// The normals are redrawn until their hull contains the ball of radius
/// `HULL_MARGIN` about the origin, which bounds the polytope by
/// `1 / HULL_MARGIN`. Rows that do not support a facet are dropped, so the
/// result can have fewer than `m` rows.
pub fn random_polytope(dim: usize, facets: usize, seed: u64) -> Result<HPolytope> {
    if !(2..=3).contains(&dim) {
        return Err(Error::UnsupportedDimension(dim));
    }
    if facets < dim + 1 {
        return Err(Error::InvalidConfig(format!(
            "need at least {} facets in dimension {dim}, got {facets}",
            dim + 1
        )));
    }
    let mut rng = rng_from(seed);
    for _ in 0..MAX_ATTEMPTS {
        let normals: Vec<Vec<f64>> = (0..facets).map(|_| unit_vector(&mut rng, dim)).collect();
        let hull = match h_from_vertices(&VPolytope::new(dim, normals.clone())?) {
            Ok(h) => h,
            Err(Error::OriginOutsideHull | Error::Degenerate) => continue,
            Err(e) => return Err(e),
        };
        let margin = hull
            .rows()
            .iter()
            .map(|r| 1.0 / norm(&r.normal))
            .fold(f64::INFINITY, f64::min);
        if margin < HULL_MARGIN {
            continue;
        }
        let p = HPolytope::new(dim, normals, vec![1.0; facets])?;
        let p = match p.without_redundant_rows() {
            Ok(p) => p,
            Err(Error::Degenerate) => continue,
            Err(e) => return Err(e),
        };
        if p.validate().is_ok() {
            return Ok(p);
        }
    }
    Err(Error::RejectionBudget(MAX_ATTEMPTS))
}

/// Every `n` in `[-B, B]^d` kept with probability `density`, with a complex
/// standard normal coefficient (`E|c|² = 1`).
pub fn random_trig_polynomial(dim: usize, bandwidth: u64, density: f64, seed: u64) -> Result<TrigPolynomial> {
    if dim == 0 {
        return Err(Error::InvalidConfig("dimension must be positive".into()));
    }
    if bandwidth < 1 {
        return Err(Error::InvalidConfig("bandwidth must be at least 1".into()));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::InvalidConfig(format!("density must lie in (0, 1], got {density}")));
    }
    let mut rng = rng_from(seed);
    let b = bandwidth as i64;
    let terms: Vec<(Vec<i64>, Complex64)> = lattice_box(dim, b)
        .filter_map(|n| {
            let keep = rng.random::<f64>() < density;
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            keep.then(|| (n, Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2))
        })
        .collect();
    TrigPolynomial::new(dim, terms)
}

/// `ĉ(n) = (1 + |n|²)^{-2}` on `[-B, B]^d`.
pub fn smooth_trig_polynomial(dim: usize, bandwidth: u64) -> Result<TrigPolynomial> {
    let b = bandwidth as i64;
    TrigPolynomial::new(
        dim,
        lattice_box(dim, b).map(|n| {
            let sq: i64 = n.iter().map(|v| v * v).sum();
            let c = (1.0 + sq as f64).powi(-2);
            (n, Complex64::new(c, 0.0))
        }),
    )
}

/// `[-b, b]^d` in lexicographic order.
pub fn lattice_box(dim: usize, b: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = (2 * b + 1) as usize;
    let total = side.pow(dim as u32);
    (0..total).map(move |mut flat| {
        let mut n = vec![0i64; dim];
        for k in (0..dim).rev() {
            n[k] = (flat % side) as i64 - b;
            flat /= side;
        }
        n
    })
}
