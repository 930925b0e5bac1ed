//! r-variation of step families and norms on grid measures.

mod field;
mod norms;

pub use field::{sup_field, v_r_field};
pub use norms::{distribution_function, fubini_slice_check, lorentz_p1_norm, lp_norm, weak_lp_norm};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest input accepted by [`v_r_bruteforce`].
pub const BRUTE_FORCE_CAP: usize = 16;

/// A right-continuous step function of `λ >= 0`: `values[0]` on
/// `[0, λ_1)`, `values[k]` on `[λ_k, λ_{k+1})`, `values[M]` on `[λ_M, ∞)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    breakpoints: Vec<f64>,
    values: Vec<Complex64>,
}

impl StepFunction {
    pub fn new(breakpoints: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != breakpoints.len() + 1 {
            return Err(Error::InvalidInput(format!(
                "{} breakpoints need {} values, got {}",
                breakpoints.len(),
                breakpoints.len() + 1,
                values.len()
            )));
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidInput("breakpoints must increase strictly".into()));
        }
        Ok(Self { breakpoints, values })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value_at(&self, lambda: f64) -> Complex64 {
        let k = self.breakpoints.partition_point(|&b| b <= lambda);
        self.values[k]
    }
}

fn check_exponent(r: f64) -> Result<()> {
    if !(r >= 1.0) || !r.is_finite() {
        return Err(Error::InvalidExponent(r));
    }
    Ok(())
}

/// `sup (Σ |v_{i_{l+1}} - v_{i_l}|^r)^{1/r}` over increasing index chains.
///
/// `best[j]` is the largest r-th power sum of a chain ending at `j`; any
/// chain ending at `j` extends a chain ending at its previous index, which
/// gives the O(M²) recursion.
pub fn v_r_exact(values: &[Complex64], r: f64) -> Result<f64> {
    check_exponent(r)?;
    let mut best = vec![0.0f64; values.len()];
    let mut overall = 0.0f64;
    for j in 1..values.len() {
        let w = (0..j)
            .map(|i| best[i] + (values[j] - values[i]).norm().powf(r))
            .fold(0.0f64, f64::max);
        best[j] = w;
        overall = overall.max(w);
    }
    Ok(overall.powf(1.0 / r))
}

/// Exhaustive maximum over every subsequence. Reference for [`v_r_exact`].
pub fn v_r_bruteforce(values: &[Complex64], r: f64) -> Result<f64> {
    check_exponent(r)?;
    if values.len() > BRUTE_FORCE_CAP {
        return Err(Error::LengthCap {
            cap: BRUTE_FORCE_CAP,
            len: values.len(),
        });
    }
    let mut best = 0.0f64;
    for mask in 0u32..(1u32 << values.len()) {
        let mut prev: Option<Complex64> = None;
        let mut sum = 0.0;
        for (i, v) in values.iter().enumerate() {
            if mask >> i & 1 == 1 {
                if let Some(p) = prev {
                    sum += (v - p).norm().powf(r);
                }
                prev = Some(*v);
            }
        }
        best = best.max(sum);
    }
    Ok(best.powf(1.0 / r))
}

/// `max_k |v_k|`, the maximal function on a step family.
pub fn sup_family(values: &[Complex64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(values.iter().map(|v| v.norm()).fold(0.0, f64::max))
}

/// Exponents and sizes of a variation experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub r: f64,
    pub p: f64,
    pub bandwidth: u64,
    pub resolution: usize,
    pub ensemble: usize,
    pub seed: u64,
}

impl ExperimentConfig {
    /// `r' = r / (r - 1)`.
    pub fn conjugate(&self) -> f64 {
        conjugate_exponent(self.r)
    }

    pub fn validate(&self) -> Result<()> {
        check_exponents(self.r, self.p)?;
        if (self.resolution as u64) < 2 * self.bandwidth + 1 {
            return Err(Error::Aliasing {
                resolution: self.resolution,
                bandwidth: self.bandwidth,
            });
        }
        Ok(())
    }
}

pub fn conjugate_exponent(r: f64) -> f64 {
    r / (r - 1.0)
}

/// `r > 2` and `r' <= p < ∞`.
pub fn check_exponents(r: f64, p: f64) -> Result<()> {
    if !(r > 2.0) || !r.is_finite() {
        return Err(Error::InvalidConfig(format!("need r > 2, got {r}")));
    }
    let rc = conjugate_exponent(r);
    if !(p >= rc) || !p.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "need r' = {rc} <= p < inf, got p = {p}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn constant_has_no_variation() {
        assert_eq!(v_r_exact(&re(&[2.0, 2.0, 2.0]), 2.0).unwrap(), 0.0);
        assert_eq!(v_r_exact(&re(&[2.0]), 3.0).unwrap(), 0.0);
        assert_eq!(v_r_exact(&[], 3.0).unwrap(), 0.0);
    }

    #[test]
    fn up_and_down() {
        for r in [1.0, 2.0, 2.5, 3.0, 4.0] {
            let expected = 2f64.powf(1.0 / r);
            assert!((v_r_exact(&re(&[0.0, 1.0, 0.0]), r).unwrap() - expected).abs() < 1e-15);
            assert!((v_r_bruteforce(&re(&[0.0, 1.0, 0.0]), r).unwrap() - expected).abs() < 1e-15);
        }
        assert_eq!(v_r_bruteforce(&re(&[0.0, 1.0]), 2.0).unwrap(), 1.0);
    }

    #[test]
    fn monotone_takes_one_jump() {
        let v = re(&[-1.0, 0.5, 0.7, 2.0, 4.5]);
        for r in [1.0, 2.0, 3.5] {
            assert!((v_r_exact(&v, r).unwrap() - 5.5).abs() < 1e-14);
        }
    }

    #[test]
    fn exponent_below_one() {
        assert!(matches!(v_r_exact(&re(&[0.0, 1.0]), 0.5), Err(Error::InvalidExponent(_))));
        assert!(matches!(v_r_bruteforce(&re(&[0.0, 1.0]), f64::NAN), Err(Error::InvalidExponent(_))));
    }

    #[test]
    fn brute_force_cap() {
        assert!(matches!(
            v_r_bruteforce(&re(&[0.0; 17]), 2.0),
            Err(Error::LengthCap { cap: 16, len: 17 })
        ));
    }

    #[test]
    fn sup_examples() {
        assert_eq!(sup_family(&[Complex64::new(3.0, 4.0)]).unwrap(), 5.0);
        assert_eq!(sup_family(&re(&[0.0, 1.0, 0.0])).unwrap(), 1.0);
        assert!(matches!(sup_family(&[]), Err(Error::EmptySequence)));
    }

    #[test]
    fn step_function_lookup() {
        let s = StepFunction::new(vec![1.0, 2.0], re(&[0.0, 5.0, 7.0])).unwrap();
        assert_eq!(s.value_at(0.0).re, 0.0);
        assert_eq!(s.value_at(0.99).re, 0.0);
        assert_eq!(s.value_at(1.0).re, 5.0);
        assert_eq!(s.value_at(1.5).re, 5.0);
        assert_eq!(s.value_at(9.0).re, 7.0);
        assert!(StepFunction::new(vec![1.0, 1.0], re(&[0.0, 1.0, 2.0])).is_err());
        assert!(StepFunction::new(vec![1.0], re(&[0.0])).is_err());
    }

    #[test]
    fn exponent_window() {
        assert!(check_exponents(3.0, 2.0).is_ok());
        assert!(check_exponents(3.0, 1.5).is_ok());
        assert!(check_exponents(3.0, 1.4).is_err());
        assert!(check_exponents(2.0, 2.0).is_err());
        assert!(check_exponents(3.0, f64::INFINITY).is_err());
        let cfg = ExperimentConfig { r: 3.0, p: 2.0, bandwidth: 4, resolution: 8, ensemble: 1, seed: 0 };
        assert!(matches!(cfg.validate(), Err(Error::Aliasing { .. })));
        assert_eq!(cfg.conjugate(), 1.5);
    }
}
