use num_complex::Complex64;

use super::{check_point, phase, to_real, RootTable, TrigPolynomial};
use crate::error::{Error, Result};
use crate::geometry::{piece_assign, HPolytope, TriangularPiece};
use crate::variation::StepFunction;

/// Relative gap below which two frequency gauges share one breakpoint.
pub const BREAKPOINT_TOL: f64 = 1e-12;

fn check_dims(f: &TrigPolynomial, p: &HPolytope) -> Result<()> {
    if f.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: f.dim(),
        });
    }
    Ok(())
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda >= 0.0) {
        return Err(Error::NegativeDilation(lambda));
    }
    Ok(())
}

/// `S_λ f(x) = Σ_{gauge(n) <= λ} ĉ(n) e^{2πi n·x}`.
pub fn partial_sum(f: &TrigPolynomial, p: &HPolytope, lambda: f64, x: &[f64]) -> Result<Complex64> {
    check_dims(f, p)?;
    check_lambda(lambda)?;
    check_point(f.dim(), x)?;
    Ok(f.coeffs()
        .iter()
        .filter(|(n, _)| p.gauge_unchecked(&to_real(n)) <= lambda)
        .map(|(n, c)| c * phase(n, x))
        .sum())
}

/// Jump locations of `λ ↦ S_λ f`, starting at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Breakpoints {
    values: Vec<f64>,
}

impl Breakpoints {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn last(&self) -> f64 {
        *self.values.last().expect("breakpoints always contain 0")
    }
}

pub fn breakpoints(f: &TrigPolynomial, p: &HPolytope) -> Result<Breakpoints> {
    Ok(Shells::new(f, p)?.breakpoints)
}

/// The support of `f` sorted into gauge shells, one per breakpoint.
///
/// Shell `k` holds the frequencies whose gauge clusters at breakpoint `λ_k`;
/// each breakpoint is the largest gauge in its cluster so the closed test
/// `gauge <= λ_k` picks up the whole shell.
#[derive(Debug, Clone)]
pub struct Shells {
    dim: usize,
    breakpoints: Breakpoints,
    entries: Vec<(Vec<i64>, Complex64)>,
    gauges: Vec<f64>,
    starts: Vec<usize>,
}

impl Shells {
    pub fn new(f: &TrigPolynomial, p: &HPolytope) -> Result<Self> {
        check_dims(f, p)?;
        let mut sorted: Vec<(f64, Vec<i64>, Complex64)> = f
            .coeffs()
            .iter()
            .map(|(n, c)| (p.gauge_unchecked(&to_real(n)), n.clone(), *c))
            .collect();
        // stable on the BTreeMap order, so equal gauges stay lexicographic
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut values = vec![0.0];
        let mut starts = vec![0];
        for (i, (g, _, _)) in sorted.iter().enumerate() {
            let current = *values.last().unwrap();
            if *g > current + BREAKPOINT_TOL * g.max(1.0) {
                values.push(*g);
                starts.push(i);
            } else if *g > current {
                *values.last_mut().unwrap() = *g;
            }
        }
        starts.push(sorted.len());
        let gauges = sorted.iter().map(|e| e.0).collect();
        let entries = sorted.into_iter().map(|(_, n, c)| (n, c)).collect();
        Ok(Self {
            dim: f.dim(),
            breakpoints: Breakpoints { values },
            entries,
            gauges,
            starts,
        })
    }

    pub fn breakpoints(&self) -> &Breakpoints {
        &self.breakpoints
    }

    /// Frequencies and coefficients of shell `k`.
    pub fn shell(&self, k: usize) -> &[(Vec<i64>, Complex64)] {
        &self.entries[self.starts[k]..self.starts[k + 1]]
    }

    pub fn shell_gauges(&self, k: usize) -> &[f64] {
        &self.gauges[self.starts[k]..self.starts[k + 1]]
    }

    /// `Σ_{gauge(n) > λ_k} |ĉ(n)|` for every breakpoint.
    pub fn tail_sums(&self) -> Vec<f64> {
        (0..self.breakpoints.len())
            .map(|k| {
                self.entries[self.starts[k + 1]..]
                    .iter()
                    .fold(0.0, |acc, (_, c)| acc + c.norm())
            })
            .collect()
    }

    fn family_with(&self, phase_of: impl Fn(&[i64]) -> Complex64) -> StepFunction {
        let mut acc = Complex64::new(0.0, 0.0);
        let values = (0..self.breakpoints.len())
            .map(|k| {
                for (n, c) in self.shell(k) {
                    acc += c * phase_of(n);
                }
                acc
            })
            .collect();
        StepFunction::new(self.breakpoints.values[1..].to_vec(), values)
            .expect("breakpoints are strictly increasing")
    }

    /// `{S_λ f(x) : λ >= 0}`, accumulated shell by shell.
    pub fn family_at_point(&self, x: &[f64]) -> Result<StepFunction> {
        check_point(self.dim, x)?;
        Ok(self.family_with(|n| phase(n, x)))
    }

    pub(crate) fn family_at_grid(&self, j: &[usize], table: &RootTable) -> StepFunction {
        self.family_with(|n| table.phase(n, j))
    }
}

pub fn family_at_point(f: &TrigPolynomial, p: &HPolytope, x: &[f64]) -> Result<StepFunction> {
    Shells::new(f, p)?.family_at_point(x)
}

/// `S_λ f(x)` split by the piece each frequency is assigned to.
pub fn piece_partial_sums(
    f: &TrigPolynomial,
    p: &HPolytope,
    pieces: &[TriangularPiece],
    lambda: f64,
    x: &[f64],
) -> Result<Vec<Complex64>> {
    check_dims(f, p)?;
    check_lambda(lambda)?;
    check_point(f.dim(), x)?;
    if pieces.is_empty() {
        return Err(Error::InvalidInput("no pieces".into()));
    }
    let mut sums = vec![Complex64::new(0.0, 0.0); pieces.len()];
    for (n, c) in f.coeffs() {
        let nr = to_real(n);
        if p.gauge_unchecked(&nr) <= lambda {
            sums[piece_assign(pieces, p, &nr)] += c * phase(n, x);
        }
    }
    Ok(sums)
}

pub fn partial_sum_by_pieces(
    f: &TrigPolynomial,
    p: &HPolytope,
    pieces: &[TriangularPiece],
    lambda: f64,
    x: &[f64],
) -> Result<Complex64> {
    Ok(piece_partial_sums(f, p, pieces, lambda, x)?.into_iter().sum())
}
