//! Seeded invariant suites over geometry, spectral and variation.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::config::RunConfig;
use super::formats::{fmt_f64, CsvDoc};
use super::generators::{derive_seed, random_polytope, random_trig_polynomial, rng_from};
use crate::error::Result;
use crate::geometry::{
    facets, h_from_vertices, piece_assign, rotation_to_e1, triangulate, vertices_from_h, HPolytope,
    TriangularPiece,
};
use crate::grid::GridSamples;
use crate::linalg::{dot, norm};
use crate::spectral::{
    cone_multiplier, freeze, frozen_partial_sum, halfspace_multiplier, partial_sum, partial_sum_by_pieces,
    piece_partial_sums, sample_grid, to_real, Shells, TrigPolynomial,
};
use crate::variation::{
    fubini_slice_check, lorentz_p1_norm, lp_norm, sup_family, sup_field, v_r_bruteforce, v_r_exact, v_r_field,
    weak_lp_norm,
};

const GEOMETRY_SAMPLES: usize = 2000;
const SPECTRAL_POINTS: usize = 20;
const SEQUENCES: usize = 200;
const EXPONENTS: [f64; 5] = [1.0, 2.0, 2.5, 3.0, 4.0];
/// Gap between the two largest row values for a point to count as having a
/// unique gauge argmax.
pub const ARGMAX_GAP: f64 = 1e-7;
/// Offset for the homogeneous cone-row cutoffs, absorbing rounding in the
/// unit row normals at lattice points on a sector boundary.
const SECTOR_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub suite: &'static str,
    pub check: &'static str,
    pub instances: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_csv(&self, config: &RunConfig) -> CsvDoc {
        let mut doc = CsvDoc::new(&["suite", "check", "instances", "max_error", "tolerance", "status"]);
        doc.comment("invariant verification");
        for line in config.describe() {
            doc.comment(line);
        }
        for c in &self.checks {
            doc.row(vec![
                c.suite.to_string(),
                c.check.to_string(),
                c.instances.to_string(),
                fmt_f64(c.max_error),
                fmt_f64(c.tolerance),
                if c.passed { "PASS" } else { "FAIL" }.to_string(),
            ]);
        }
        doc
    }
}

/// Running maximum of an error measure over instances. NaN errors fail.
struct Tally {
    suite: &'static str,
    check: &'static str,
    tolerance: f64,
    instances: usize,
    max_error: f64,
    poisoned: bool,
}

impl Tally {
    fn new(suite: &'static str, check: &'static str, tolerance: f64) -> Self {
        Self {
            suite,
            check,
            tolerance,
            instances: 0,
            max_error: 0.0,
            poisoned: false,
        }
    }

    fn add(&mut self, err: f64) {
        self.instances += 1;
        if err.is_nan() {
            self.poisoned = true;
        } else {
            self.max_error = self.max_error.max(err);
        }
    }

    fn flag(&mut self, ok: bool) {
        self.add(if ok { 0.0 } else { 1.0 });
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            suite: self.suite,
            check: self.check,
            instances: self.instances,
            max_error: self.max_error,
            tolerance: self.tolerance,
            passed: !self.poisoned && self.max_error <= self.tolerance,
        }
    }
}

/// Runs every suite. `extra` polytopes join the geometry and spectral
/// ensembles.
pub fn run_verify(config: &RunConfig, extra: &[HPolytope]) -> Result<VerifyReport> {
    let mut polytopes = vec![
        HPolytope::interval(-1.0, 1.0)?,
        HPolytope::cube(2, 1.0)?,
        HPolytope::cross_polytope(2)?,
        HPolytope::cube(3, 1.0)?,
        HPolytope::cross_polytope(3)?,
    ];
    for (k, (d, m)) in [(2, 4), (2, 6), (2, 8), (3, 5), (3, 8)].into_iter().enumerate() {
        polytopes.push(random_polytope(d, m, derive_seed(config.seed, &[0x9e0, k as u64]))?);
    }
    polytopes.extend(extra.iter().cloned());

    let mut checks = geometry_suite(&polytopes, config.seed)?;
    checks.extend(spectral_suite(&polytopes, config.seed)?);
    checks.extend(variation_suite(&polytopes, config)?);
    Ok(VerifyReport { checks })
}

pub fn uniform_point(rng: &mut ChaCha8Rng, dim: usize, half_width: f64) -> Vec<f64> {
    (0..dim).map(|_| rng.random_range(-half_width..half_width)).collect()
}

/// The largest and second largest row values at `x`.
pub fn top_two(p: &HPolytope, x: &[f64]) -> (f64, f64) {
    let mut first = f64::NEG_INFINITY;
    let mut second = f64::NEG_INFINITY;
    for r in p.rows() {
        let v = dot(&r.normal, x);
        if v > first {
            second = first;
            first = v;
        } else if v > second {
            second = v;
        }
    }
    (first, second)
}

fn geometry_suite(polytopes: &[HPolytope], seed: u64) -> Result<Vec<CheckResult>> {
    let mut homogeneity = Tally::new("geometry", "gauge_homogeneity", 1e-12);
    let mut sublevel = Tally::new("geometry", "sublevel_identity", 0.0);
    let mut round_trip = Tally::new("geometry", "round_trip_membership", 0.0);
    let mut cover = Tally::new("geometry", "triangulation_cover", 0.0);
    let mut disjoint = Tally::new("geometry", "triangulation_disjointness", 0.0);
    let mut bounded = Tally::new("geometry", "piece_gauge_bounded", 1e-9);
    let mut partition = Tally::new("geometry", "assignment_partition", 0.0);
    let mut cone_rows = Tally::new("geometry", "cone_rows_vs_argmax", 0.0);
    let mut rotation = Tally::new("geometry", "rotation", 1e-12);
    let mut rotated_gauge = Tally::new("geometry", "rotation_gauge_invariance", 1e-12);

    for (pi, p) in polytopes.iter().enumerate() {
        let d = p.dim();
        let mut rng = rng_from(derive_seed(seed, &[0x6e0, pi as u64]));
        let v = vertices_from_h(p)?;
        let q = h_from_vertices(&v)?;
        let pieces = triangulate(p)?;
        let radius = v.vertices().iter().map(|w| norm(w)).fold(0.0, f64::max);
        let facet_list = facets(p, &v)?;

        for _ in 0..GEOMETRY_SAMPLES {
            let x = uniform_point(&mut rng, d, 1.2 * radius);
            let g = p.gauge(&x)?;

            let t = rng.random_range(0.0..5.0);
            let tx: Vec<f64> = x.iter().map(|v| t * v).collect();
            homogeneity.add((p.gauge(&tx)? - t * g).abs() / (1.0 + t * g));

            for lambda in [g, 0.5 * g, 2.0 * g + 0.1] {
                sublevel.flag(p.contains(&x, lambda)? == (p.gauge_unchecked(&x) <= lambda));
            }
            // stay off the boundary, where the two representations may
            // legitimately disagree at rounding level
            if (g - 1.0).abs() > 1e-9 {
                round_trip.flag((g <= 1.0) == (q.gauge(&x)? <= 1.0));
            }

            let hits: Vec<usize> = (0..pieces.len()).filter(|&k| pieces[k].contains(&x)).collect();
            if g <= 1.0 {
                cover.flag(!hits.is_empty());
            }
            let (first, second) = top_two(p, &x);
            let unique = first - second > ARGMAX_GAP * norm(&x).max(1.0);
            if unique && g <= 1.0 {
                disjoint.flag(hits.len() == 1);
            }
            for _ in &hits {
                bounded.add((g - 1.0).max(0.0));
            }
            let assigned = piece_assign(&pieces, p, &x);
            let indicator: usize = (0..pieces.len()).map(|k| usize::from(k == assigned)).sum();
            partition.flag(indicator == 1 && pieces[assigned].in_sector(&x));
            if unique {
                for (k, piece) in pieces.iter().enumerate() {
                    let argmax = dot(&p.rows()[k].normal, &x) == first;
                    cone_rows.flag(piece.in_sector(&x) == argmax);
                }
            }
        }

        for facet in &facet_list {
            let r = match rotation_to_e1(facet) {
                Ok(r) => r,
                // the facet -e_1 of an interval has no rotation onto e_1
                Err(_) if d == 1 => continue,
                Err(e) => return Err(e),
            };
            let a = &facet.supporting.normal;
            let ra = r.apply(a);
            let mut err = r.orthogonality_defect().max((r.determinant() - 1.0).abs());
            err = err.max((ra[0] - norm(a)).abs());
            for v in &ra[1..] {
                err = err.max(v.abs());
            }
            rotation.add(err);
            let rp = r.apply_to_polytope(p);
            for _ in 0..20 {
                let x = uniform_point(&mut rng, d, radius);
                let g = p.gauge(&x)?;
                rotated_gauge.add((rp.gauge(&r.apply(&x))? - g).abs() / (1.0 + g));
            }
        }
    }
    Ok(vec![
        homogeneity.finish(),
        sublevel.finish(),
        round_trip.finish(),
        cover.finish(),
        disjoint.finish(),
        bounded.finish(),
        partition.finish(),
        cone_rows.finish(),
        rotation.finish(),
        rotated_gauge.finish(),
    ])
}

fn abs_sum(f: &TrigPolynomial) -> f64 {
    f.coeffs().values().map(|c| c.norm()).sum::<f64>().max(1.0)
}

/// Breakpoints plus the midpoints between them and a point past the last.
fn probe_lambdas(shells: &Shells) -> Vec<f64> {
    let b = shells.breakpoints().values();
    let mut out = b.to_vec();
    out.extend(b.windows(2).map(|w| 0.5 * (w[0] + w[1])));
    out.push(2.0 * shells.breakpoints().last() + 1.0);
    out
}

fn spectral_suite(polytopes: &[HPolytope], seed: u64) -> Result<Vec<CheckResult>> {
    let mut step = Tally::new("spectral", "step_constancy", 1e-12);
    let mut saturation = Tally::new("spectral", "saturation", 1e-12);
    let mut incremental = Tally::new("spectral", "incremental_vs_direct", 1e-12);
    let mut piecewise = Tally::new("spectral", "piecewise_vs_direct", 1e-12);
    let mut multiplier = Tally::new("spectral", "multiplier_partition", 0.0);
    let mut halfspaces = Tally::new("spectral", "halfspace_composition", 0.0);
    let mut linearity = Tally::new("spectral", "linearity", 1e-12);
    let mut parseval = Tally::new("spectral", "parseval", 1e-10);
    let mut freezing = Tally::new("spectral", "freezing_identity", 1e-12);

    for (pi, p) in polytopes.iter().enumerate() {
        let d = p.dim();
        let bandwidth = if d == 3 { 2 } else { 3 };
        let pieces = triangulate(p)?;
        let f = random_trig_polynomial(d, bandwidth, 0.7, derive_seed(seed, &[0x5e0, pi as u64, 0]))?;
        let g = random_trig_polynomial(d, bandwidth, 0.7, derive_seed(seed, &[0x5e0, pi as u64, 1]))?;
        let mut rng = rng_from(derive_seed(seed, &[0x5e1, pi as u64]));
        let shells = Shells::new(&f, p)?;
        let scale = abs_sum(&f);
        let alpha = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        let beta = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        let combo = f.linear_combination(alpha, &g, beta)?;
        let combo_scale = alpha.norm() * scale + beta.norm() * abs_sum(&g);

        for _ in 0..SPECTRAL_POINTS {
            let x: Vec<f64> = (0..d).map(|_| rng.random::<f64>()).collect();
            let family = shells.family_at_point(&x)?;
            let bps = shells.breakpoints().values();
            for (k, &lambda) in bps.iter().enumerate() {
                let direct = partial_sum(&f, p, lambda, &x)?;
                incremental.add((family.values()[k] - direct).norm() / scale);
                if k + 1 < bps.len() {
                    let mid = partial_sum(&f, p, 0.5 * (lambda + bps[k + 1]), &x)?;
                    step.add((mid - direct).norm() / scale);
                }
            }
            let fx = f.evaluate(&x)?;
            for lambda in [shells.breakpoints().last(), 2.0 * shells.breakpoints().last() + 1.0] {
                saturation.add((partial_sum(&f, p, lambda, &x)? - fx).norm() / scale);
            }
            for lambda in probe_lambdas(&shells) {
                let direct = partial_sum(&f, p, lambda, &x)?;
                piecewise.add((partial_sum_by_pieces(&f, p, &pieces, lambda, &x)? - direct).norm() / scale);
                let lhs = partial_sum(&combo, p, lambda, &x)?;
                let rhs = alpha * direct + beta * partial_sum(&g, p, lambda, &x)?;
                linearity.add((lhs - rhs).norm() / combo_scale);
            }
        }

        let mut total = TrigPolynomial::zero(d);
        for k in 0..pieces.len() {
            let part = cone_multiplier(&f, k, p, &pieces);
            total = total.linear_combination(Complex64::new(1.0, 0.0), &part, Complex64::new(1.0, 0.0))?;

            // composing the cone-row cutoffs gives the closed sector; it may
            // only differ from the assigned set on frequencies that tie
            let mut sector = f.clone();
            for row in &pieces[k].cone_rows {
                sector = halfspace_multiplier(&sector, &row.normal, SECTOR_SLACK);
            }
            for n in f.coeffs().keys() {
                let in_part = part.coeffs().contains_key(n);
                let in_sector = sector.coeffs().contains_key(n);
                let nr = to_real(n);
                let (first, second) = top_two(p, &nr);
                let tie = nr.iter().all(|&v| v == 0.0) || first - second <= ARGMAX_GAP * norm(&nr).max(1.0);
                halfspaces.flag((!in_part || in_sector) && (in_part || !in_sector || tie));
            }
        }
        let mismatch = f
            .coeffs()
            .iter()
            .map(|(n, c)| (total.coeff(n) - c).norm())
            .fold(0.0, f64::max);
        multiplier.add(mismatch + (total.len() != f.len()) as u8 as f64);

        let m = 2 * bandwidth as usize + 1;
        let samples = sample_grid(&f, m)?;
        let mean_sq = samples.values().iter().map(|v| v.norm_sqr()).sum::<f64>() * samples.cell_volume();
        parseval.add((mean_sq - f.energy()).abs() / f.energy().max(1.0));
    }

    for (d, m) in [(2usize, 9usize), (3, 5)] {
        let p = HPolytope::cube(d, 1.0)?;
        let f = random_trig_polynomial(d, (m as u64 - 1) / 2, 1.0, derive_seed(seed, &[0xf2e, d as u64]))?;
        freezing_errors(&f, &p, m, &mut freezing)?;
    }

    Ok(vec![
        step.finish(),
        saturation.finish(),
        incremental.finish(),
        piecewise.finish(),
        multiplier.finish(),
        halfspaces.finish(),
        linearity.finish(),
        parseval.finish(),
        freezing.finish(),
    ])
}

/// Compares every `±e_1` piece of `p` against the frozen operator at every
/// breakpoint and grid point.
fn freezing_errors(f: &TrigPolynomial, p: &HPolytope, m: usize, tally: &mut Tally) -> Result<()> {
    let pieces = triangulate(p)?;
    let shells = Shells::new(f, p)?;
    let scale = abs_sum(f);
    let axis: Vec<usize> = pieces
        .iter()
        .enumerate()
        .filter(|(_, q)| is_e1_piece(q))
        .map(|(k, _)| k)
        .collect();
    let grid = GridSamples::new(p.dim(), m, vec![(); crate::grid::grid_len(p.dim(), m)?])?;
    for flat in 0..grid.len() {
        let x = grid.point(flat);
        for &k in &axis {
            let g = freeze(f, p, &pieces, k, &x[1..])?;
            for &lambda in shells.breakpoints().values() {
                let direct = piece_partial_sums(f, p, &pieces, lambda, &x)?[k];
                let frozen = frozen_partial_sum(&g, g.cutoff_for(lambda), x[0]);
                tally.add((direct - frozen).norm() / scale);
            }
        }
    }
    Ok(())
}

fn is_e1_piece(piece: &TriangularPiece) -> bool {
    let a = &piece.halfspace().normal;
    a[0] != 0.0 && a[1..].iter().all(|&v| v == 0.0)
}

pub fn random_sequence(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

fn variation_suite(polytopes: &[HPolytope], config: &RunConfig) -> Result<Vec<CheckResult>> {
    let mut dp = Tally::new("variation", "dp_vs_bruteforce", 1e-12);
    let mut monotone = Tally::new("variation", "r_monotonicity", 1e-12);
    let mut scaling = Tally::new("variation", "scaling", 1e-12);
    let mut maximal = Tally::new("variation", "maximal_control", 1e-12);
    let mut concat = Tally::new("variation", "concatenation_max", 1e-12);
    let mut weak = Tally::new("variation", "weak_le_strong", 1e-12);
    let mut lorentz = Tally::new("variation", "strong_le_lorentz", 1e-12);
    let mut fubini = Tally::new("variation", "fubini_slicing", 1e-14);
    let mut field = Tally::new("variation", "field_ge_sup_minus_c0", 1e-12);

    let mut rng = rng_from(derive_seed(config.seed, &[0x7a0]));
    for _ in 0..SEQUENCES {
        let len = rng.random_range(1..=12);
        let v = random_sequence(&mut rng, len);
        let scale = v.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let exact: Vec<f64> = EXPONENTS.iter().map(|&r| v_r_exact(&v, r)).collect::<Result<_>>()?;
        for (i, &r) in EXPONENTS.iter().enumerate() {
            let brute = v_r_bruteforce(&v, r)?;
            dp.add((exact[i] - brute).abs() / brute.max(1.0));
            if i > 0 {
                monotone.add((exact[i] - exact[i - 1]).max(0.0));
            }
            let c = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
            let scaled: Vec<Complex64> = v.iter().map(|z| c * z).collect();
            let lhs = v_r_exact(&scaled, r)?;
            let rhs = c.norm() * exact[i];
            scaling.add((lhs - rhs).abs() / rhs.max(1e-300).max(lhs));
            maximal.add((sup_family(&v)? - v[0].norm() - exact[i]).max(0.0) / scale);
            let cut = rng.random_range(0..len);
            let left = v_r_exact(&v[..=cut], r)?;
            let right = v_r_exact(&v[cut..], r)?;
            concat.add((left.max(right) - exact[i]).max(0.0) / scale);
        }
    }

    for (pi, p) in polytopes.iter().enumerate() {
        let d = p.dim();
        let bandwidth = if d == 3 { 2 } else { 3 };
        let m = 2 * bandwidth as usize + 1;
        let f = random_trig_polynomial(d, bandwidth, 0.7, derive_seed(config.seed, &[0x7a1, pi as u64]))?;
        let vr = v_r_field(&f, p, m, config.r)?;
        let sup = sup_field(&f, p, m)?;
        let c0 = f.coeff(&vec![0; d]).norm();
        for (v, s) in vr.values().iter().zip(sup.values()) {
            field.add((s - c0 - v).max(0.0) / abs_sum(&f));
        }
        let moduli = sample_grid(&f, m)?.modulus();
        for h in [&vr, &sup, &moduli] {
            let strong = lp_norm(h, config.p)?;
            weak.add((weak_lp_norm(h, config.p)? - strong).max(0.0) / strong.max(1.0));
            lorentz.add((strong - lorentz_p1_norm(h, config.p)?).max(0.0) / strong.max(1.0));
            if d >= 2 {
                let mut levels: Vec<f64> = h.values().to_vec();
                levels.sort_by(f64::total_cmp);
                for alpha in [levels[0], levels[levels.len() / 2], levels[levels.len() - 1], 0.5 * levels[levels.len() / 3]] {
                    let (global, sliced) = fubini_slice_check(h, alpha)?;
                    fubini.add((global - sliced).abs());
                }
            }
        }
    }

    Ok(vec![
        dp.finish(),
        monotone.finish(),
        scaling.finish(),
        maximal.finish(),
        concat.finish(),
        weak.finish(),
        lorentz.finish(),
        fubini.finish(),
        field.finish(),
    ])
}
