use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::formats::read_polytope;
use super::generators::{derive_seed, random_polytope, random_trig_polynomial};
use crate::error::{Error, Result};
use crate::geometry::HPolytope;
use crate::spectral::TrigPolynomial;

/// Parameters shared by every subcommand. Loaded from a JSON file, then
/// overridden by command-line flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub dim: usize,
    /// `square`, `cube`, `diamond`, `octahedron`, `interval`,
    /// `random:<facets>` (uses `dim` and `seed`) or a polytope file path.
    pub polytope: String,
    /// Coefficient file; when absent a random polynomial is drawn.
    pub coeffs: Option<PathBuf>,
    pub bandwidth: u64,
    pub bandwidths: Vec<u64>,
    pub density: f64,
    pub r: f64,
    pub p: f64,
    /// Grid size; defaults to `2B + 1`.
    pub resolution: Option<usize>,
    pub ensemble: usize,
    pub lambda: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            dim: 2,
            polytope: "square".into(),
            coeffs: None,
            bandwidth: 4,
            bandwidths: vec![4, 8, 16],
            density: 1.0,
            r: 3.0,
            p: 2.0,
            resolution: None,
            ensemble: 32,
            lambda: None,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    /// `key = value` lines, sorted by key.
    pub fn describe(&self) -> Vec<String> {
        let value = serde_json::to_value(self).expect("config serializes");
        value
            .as_object()
            .expect("config is an object")
            .iter()
            .map(|(k, v)| format!("{k} = {v}"))
            .collect()
    }

    /// Grid size for bandwidth `b`: the configured one, or `2b + 1`.
    pub fn resolution_for(&self, b: u64) -> usize {
        self.resolution.unwrap_or(2 * b as usize + 1)
    }

    pub fn resolve_polytope(&self) -> Result<HPolytope> {
        resolve_polytope(&self.polytope, self.dim, self.seed)
    }

    /// The coefficient file if one is configured, else a random polynomial.
    pub fn resolve_function(&self) -> Result<TrigPolynomial> {
        match &self.coeffs {
            Some(path) => super::formats::read_coeffs(path),
            None => random_trig_polynomial(
                self.dim,
                self.bandwidth,
                self.density,
                derive_seed(self.seed, &[self.bandwidth]),
            ),
        }
    }
}

pub fn resolve_polytope(spec: &str, dim: usize, seed: u64) -> Result<HPolytope> {
    match spec {
        "square" => HPolytope::cube(2, 1.0),
        "cube" => HPolytope::cube(dim, 1.0),
        "diamond" => HPolytope::cross_polytope(2),
        "octahedron" => HPolytope::cross_polytope(3),
        "cross" => HPolytope::cross_polytope(dim),
        "interval" => HPolytope::interval(-1.0, 1.0),
        _ => {
            if let Some(m) = spec.strip_prefix("random:") {
                let m: usize = m
                    .parse()
                    .map_err(|_| Error::InvalidConfig(format!("bad facet count in {spec:?}")))?;
                random_polytope(dim, m, seed)
            } else {
                read_polytope(Path::new(spec))
            }
        }
    }
}
