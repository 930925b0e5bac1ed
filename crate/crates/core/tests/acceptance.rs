//! Acceptance criteria. Runs as a plain binary (`harness = false`) so that
//! every criterion prints one PASS/FAIL line under `cargo test`.

use std::f64::consts::TAU;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use polyvar::geometry::{triangulate, vertices_from_h, HPolytope};
use polyvar::harness::experiments::ratio_row;
use polyvar::harness::generators::{derive_seed, random_polytope, random_trig_polynomial};
use polyvar::harness::{run_ratio_experiment, RunConfig};
use polyvar::spectral::{
    cone_multiplier, freeze, frozen_partial_sum, partial_sum, partial_sum_by_pieces, sample_grid, Shells,
    TrigPolynomial,
};
use polyvar::variation::{
    fubini_slice_check, lp_norm, sup_field, v_r_bruteforce, v_r_exact, v_r_field, weak_lp_norm,
};

// ---- test-side oracles ----

fn gauge_oracle(p: &HPolytope, x: &[f64]) -> f64 {
    p.rows()
        .iter()
        .map(|r| r.normal.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() / r.offset)
        .fold(0.0, f64::max)
}

fn row_values(p: &HPolytope, x: &[f64]) -> Vec<f64> {
    p.rows()
        .iter()
        .map(|r| r.normal.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() / r.offset)
        .collect()
}

fn lattice_gauge(p: &HPolytope, n: &[i64]) -> f64 {
    let x: Vec<f64> = n.iter().map(|&v| v as f64).collect();
    gauge_oracle(p, &x)
}

/// First row attaining the maximum; the origin goes to row 0.
fn assign_oracle(p: &HPolytope, n: &[i64]) -> usize {
    let x: Vec<f64> = n.iter().map(|&v| v as f64).collect();
    let vals = row_values(p, &x);
    let g = vals.iter().copied().fold(0.0, f64::max);
    if g == 0.0 {
        return 0;
    }
    vals.iter().position(|&v| v >= g - 1e-12 * g.max(1.0)).unwrap()
}

/// `Σ_{gauge(n) <= λ} ĉ(n) e^{2πi n·x}`, summed in a fixed order.
fn direct_sum(f: &TrigPolynomial, p: &HPolytope, lambda: f64, x: &[f64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (n, c) in f.coeffs() {
        if lattice_gauge(p, n) <= lambda {
            let t: f64 = n.iter().zip(x).map(|(&k, &v)| k as f64 * v).sum();
            acc += c * Complex64::cis(TAU * t);
        }
    }
    acc
}

/// `e^{2πi n·j/M}` through the exact residue `n·j mod M`.
fn grid_phase(n: &[i64], j: &[usize], m: usize) -> Complex64 {
    let s: i64 = n.iter().zip(j).map(|(&k, &i)| k * i as i64).sum();
    let r = s.rem_euclid(m as i64);
    Complex64::cis(TAU * r as f64 / m as f64)
}

/// Variation by enumerating every index subset.
fn variation_oracle(v: &[Complex64], r: f64) -> f64 {
    let n = v.len();
    let mut best = 0.0f64;
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let s: f64 = idx.windows(2).map(|w| (v[w[1]] - v[w[0]]).norm().powf(r)).sum();
        best = best.max(s);
    }
    best.powf(1.0 / r)
}

fn complex_normal(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

// ---- criteria ----

type Criterion = (&'static str, fn() -> Outcome, Duration);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: String) -> Outcome {
    Outcome { ok, detail }
}

fn triangulation() -> Outcome {
    let mut failures = 0usize;
    let (mut covered, mut unique) = (0usize, 0usize);
    let mut worst_gauge = 0.0f64;
    for i in 0..20u64 {
        let d = if i % 2 == 0 { 2 } else { 3 };
        let m = 4 + (i as usize % 5);
        let p = random_polytope(d, m, derive_seed(1000, &[i])).unwrap();
        let pieces = triangulate(&p).unwrap();
        let radius = vertices_from_h(&p)
            .unwrap()
            .vertices()
            .iter()
            .map(|v| v.iter().map(|a| a * a).sum::<f64>().sqrt())
            .fold(0.0, f64::max);
        let mut rng = ChaCha8Rng::seed_from_u64(i);
        for _ in 0..10_000 {
            let x: Vec<f64> = (0..d).map(|_| rng.random_range(-1.1 * radius..1.1 * radius)).collect();
            let g = gauge_oracle(&p, &x);
            let hits: Vec<usize> = (0..pieces.len()).filter(|&k| pieces[k].contains(&x)).collect();
            if g <= 1.0 {
                covered += 1;
                if hits.is_empty() {
                    failures += 1;
                }
            }
            let mut vals = row_values(&p, &x);
            vals.sort_by(|a, b| b.total_cmp(a));
            let len = x.iter().map(|a| a * a).sum::<f64>().sqrt();
            if g <= 1.0 && vals[0] - vals[1] > 1e-7 * len.max(1.0) {
                unique += 1;
                if hits.len() != 1 {
                    failures += 1;
                }
            }
            for _ in &hits {
                worst_gauge = worst_gauge.max(g);
                if g > 1.0 + 1e-9 {
                    failures += 1;
                }
            }
        }
    }
    outcome(
        failures == 0,
        format!("{covered} covered points, {unique} unique-argmax points, max piece gauge {worst_gauge:.3e}, {failures} failures"),
    )
}

fn piecewise_partition() -> Outcome {
    let square = HPolytope::cube(2, 1.0).unwrap();
    let diamond = HPolytope::cross_polytope(2).unwrap();
    let mut worst = 0.0f64;
    let mut evaluations = 0usize;
    for i in 0..16u64 {
        let p = match i % 3 {
            0 => square.clone(),
            1 => diamond.clone(),
            _ => random_polytope(2, 6, i).unwrap(),
        };
        let pieces = triangulate(&p).unwrap();
        let f = random_trig_polynomial(2, 8, 1.0, derive_seed(2000, &[i])).unwrap();
        let shells = Shells::new(&f, &p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2000 + i);
        for _ in 0..100 {
            let x = [rng.random::<f64>(), rng.random::<f64>()];
            for &lambda in shells.breakpoints().values() {
                let by_pieces = partial_sum_by_pieces(&f, &p, &pieces, lambda, &x).unwrap();
                let direct = partial_sum(&f, &p, lambda, &x).unwrap();
                let oracle = direct_sum(&f, &p, lambda, &x);
                worst = worst.max((by_pieces - direct).norm()).max((by_pieces - oracle).norm());
                evaluations += 1;
            }
        }
    }
    outcome(worst <= 1e-12, format!("{evaluations} evaluations, max abs error {worst:.3e}"))
}

fn freezing(d: usize) -> (f64, usize) {
    let m = 17usize;
    let p = HPolytope::cube(d, 1.0).unwrap();
    let pieces = triangulate(&p).unwrap();
    let f = random_trig_polynomial(d, 8, 1.0, derive_seed(3000, &[d as u64])).unwrap();
    let lambdas: Vec<f64> = Shells::new(&f, &p).unwrap().breakpoints().values().to_vec();
    // rows of the cube are +e1, -e1, +e2, ...
    let mut worst = 0.0f64;
    let mut count = 0usize;
    for piece in 0..2 {
        let assigned: Vec<(Vec<i64>, Complex64, f64)> = f
            .coeffs()
            .iter()
            .filter(|(n, _)| assign_oracle(&p, n) == piece)
            .map(|(n, c)| (n.clone(), *c, lattice_gauge(&p, n)))
            .collect();
        let part = cone_multiplier(&f, piece, &p, &pieces);
        let part_shells = Shells::new(&part, &p).unwrap();
        let total = m.pow(d as u32);
        let rest_count = total / m;
        for rest in 0..rest_count {
            let j_rest: Vec<usize> = (0..d - 1).map(|k| rest / m.pow((d - 2 - k) as u32) % m).collect();
            let x_rest: Vec<f64> = j_rest.iter().map(|&j| j as f64 / m as f64).collect();
            let g = freeze(&f, &p, &pieces, piece, &x_rest).unwrap();
            for j1 in 0..m {
                let mut j = vec![j1];
                j.extend(&j_rest);
                let x: Vec<f64> = j.iter().map(|&v| v as f64 / m as f64).collect();
                let phases: Vec<Complex64> = assigned.iter().map(|(n, _, _)| grid_phase(n, &j, m)).collect();
                let family = part_shells.family_at_point(&x).unwrap();
                for &lambda in &lambdas {
                    let mut oracle = Complex64::new(0.0, 0.0);
                    for ((_, c, gn), ph) in assigned.iter().zip(&phases) {
                        if *gn <= lambda {
                            oracle += c * ph;
                        }
                    }
                    let frozen = frozen_partial_sum(&g, g.cutoff_for(lambda), x[0]);
                    let restricted = family.value_at(lambda);
                    worst = worst.max((frozen - oracle).norm()).max((frozen - restricted).norm());
                    count += 1;
                }
            }
        }
    }
    (worst, count)
}

fn freezing_identity() -> Outcome {
    let (w2, c2) = freezing(2);
    let (w3, c3) = freezing(3);
    let worst = w2.max(w3);
    outcome(
        worst <= 1e-12,
        format!("{} comparisons (d=2: {c2}, d=3: {c3}), max abs error {worst:.3e}", c2 + c3),
    )
}

fn variation_dp() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4000);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let len = rng.random_range(1..=12);
        let v: Vec<Complex64> = (0..len).map(|_| complex_normal(&mut rng)).collect();
        for r in [1.0, 2.0, 2.5, 3.0, 4.0] {
            let dp = v_r_exact(&v, r).unwrap();
            worst = worst
                .max((dp - variation_oracle(&v, r)).abs())
                .max((dp - v_r_bruteforce(&v, r).unwrap()).abs());
        }
    }
    outcome(worst <= 1e-12, format!("1000 cases, max abs error {worst:.3e}"))
}

fn analytic_identities() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut check = |name: &str, err: f64, tol: f64| {
        // NaN fails
        ok &= err <= tol;
        notes.push(format!("{name} {err:.1e}"));
    };

    let mut rng = ChaCha8Rng::seed_from_u64(5000);
    let (mut mono, mut scale) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let len = rng.random_range(1..=12);
        let v: Vec<Complex64> = (0..len).map(|_| complex_normal(&mut rng)).collect();
        let rs = [1.0, 2.0, 2.5, 3.0, 4.0];
        let vals: Vec<f64> = rs.iter().map(|&r| v_r_exact(&v, r).unwrap()).collect();
        for w in vals.windows(2) {
            mono = mono.max(w[1] - w[0]);
        }
        let c = complex_normal(&mut rng);
        let scaled: Vec<Complex64> = v.iter().map(|z| c * z).collect();
        for (k, &r) in rs.iter().enumerate() {
            let lhs = v_r_exact(&scaled, r).unwrap();
            let rhs = c.norm() * vals[k];
            if rhs > 0.0 {
                scale = scale.max((lhs - rhs).abs() / rhs);
            }
        }
    }
    check("r-monotonicity", mono.max(0.0), 1e-12);
    check("scaling", scale, 1e-12);

    let (mut maximal, mut weak, mut fubini, mut parseval) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for (i, p) in [
        HPolytope::cube(2, 1.0).unwrap(),
        HPolytope::cross_polytope(2).unwrap(),
        random_polytope(2, 5, 7).unwrap(),
        HPolytope::cube(3, 1.0).unwrap(),
        random_polytope(3, 7, 7).unwrap(),
    ]
    .iter()
    .enumerate()
    {
        let d = p.dim();
        let b = if d == 2 { 5 } else { 2 };
        let m = 2 * b as usize + 1;
        let f = random_trig_polynomial(d, b, 0.8, derive_seed(5000, &[i as u64])).unwrap();
        let c0 = f.coeff(&vec![0; d]).norm();
        let sup = sup_field(&f, p, m).unwrap();
        let samples = sample_grid(&f, m).unwrap();
        let energy: f64 = f.coeffs().values().map(|c| c.norm_sqr()).sum();
        let mean_sq = samples.values().iter().map(|v| v.norm_sqr()).sum::<f64>() / samples.len() as f64;
        parseval = parseval.max((mean_sq - energy).abs() / energy);
        for r in [2.5, 3.0, 4.0] {
            let field = v_r_field(&f, p, m, r).unwrap();
            for (s, v) in sup.values().iter().zip(field.values()) {
                maximal = maximal.max(s - c0 - v);
            }
            for q in [1.5, 2.0, 3.0] {
                weak = weak.max(weak_lp_norm(&field, q).unwrap() - lp_norm(&field, q).unwrap());
            }
            let mut levels = field.values().to_vec();
            levels.sort_by(f64::total_cmp);
            for alpha in [levels[0], levels[levels.len() / 4], levels[levels.len() / 2], levels[levels.len() - 1]] {
                let (global, sliced) = fubini_slice_check(&field, alpha).unwrap();
                fubini = fubini.max((global - sliced).abs());
            }
        }
    }
    check("maximal control", maximal.max(0.0), 1e-12);
    check("weak <= strong", weak.max(0.0), 1e-12);
    check("Fubini", fubini, 1e-14);
    check("Parseval", parseval, 1e-10);
    outcome(ok, notes.join(", "))
}

fn closed_forms() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    let square = HPolytope::cube(2, 1.0).unwrap();
    let c = Complex64::new(0.6, -0.8) * 2.5;
    let f = TrigPolynomial::monomial(vec![2, -3], c);
    let field = v_r_field(&f, &square, 9, 3.0).unwrap();
    let dev = field.values().iter().map(|v| (v - c.norm()).abs()).fold(0.0, f64::max);
    ok &= dev <= 1e-14;
    notes.push(format!("single-frequency field deviation {dev:.1e}"));
    let unit = TrigPolynomial::monomial(vec![2, -3], Complex64::new(0.6, -0.8));
    let ratio = ratio_row(&unit, &square, 9, 3.0, 2.0).unwrap().ratio;
    ok &= (ratio - 1.0).abs() <= 1e-14;
    notes.push(format!("ratio {ratio}"));

    let interval = HPolytope::interval(-1.0, 1.0).unwrap();
    for n in [1i64, 4, 10] {
        let dirichlet =
            TrigPolynomial::new(1, (-n..=n).map(|k| (vec![k], Complex64::new(1.0, 0.0)))).unwrap();
        let v = partial_sum(&dirichlet, &interval, n as f64, &[0.0]).unwrap();
        let expected = (2 * n + 1) as f64;
        ok &= (v - expected).norm() <= 1e-12;
        notes.push(format!("D_{n}(0) = {}", v.re));
    }
    outcome(ok, notes.join(", "))
}

fn ratio_illustration() -> Outcome {
    let config = RunConfig {
        r: 3.0,
        p: 2.0,
        dim: 2,
        polytope: "square".into(),
        ensemble: 32,
        bandwidths: vec![4, 8, 16],
        ..RunConfig::default()
    };
    let report = run_ratio_experiment(&config).unwrap();
    let finite = report.rows.iter().all(|r| r.ratio.is_finite()) && report.rows.len() == 96;
    let growth = report.growth_factor().unwrap();
    let medians: Vec<String> = report
        .summaries
        .iter()
        .map(|s| format!("B={} median {:.4} max {:.4}", s.bandwidth, s.median_ratio, s.max_ratio))
        .collect();
    outcome(
        finite && growth <= 2.0,
        format!("{}; growth factor {growth:.4}", medians.join(", ")),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 triangulation cover/disjointness/boundedness", triangulation, Duration::from_secs(10)),
        ("2 piecewise partial sum = direct", piecewise_partition, Duration::from_secs(30)),
        ("3 freezing identity on the cube", freezing_identity, Duration::from_secs(60)),
        ("4 variation DP = brute force", variation_dp, Duration::from_secs(10)),
        ("5 analytic identities", analytic_identities, Duration::from_secs(60)),
        ("6 closed-form spot checks", closed_forms, Duration::from_secs(10)),
        ("7 ratio illustration", ratio_illustration, Duration::from_secs(300)),
    ];
    let mut all = true;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let ok = out.ok && elapsed <= budget;
        all &= ok;
        println!(
            "{} criterion {name}: {} [{:.2}s, budget {}s]",
            if ok { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
