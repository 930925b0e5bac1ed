//! Polytopal Fourier partial sums on the torus and their r-variation.
//!
//! * [`geometry`]: convex polytopes with the origin inside, the Minkowski
//!   gauge, H/V conversion, and the fan triangulation from the origin.
//! * [`spectral`]: trigonometric polynomials on `T^d`, the partial sums
//!   `S_λ f` over dilates `λP`, frozen one-dimensional operators and sharp
//!   cone / half-space multipliers.
//! * [`variation`]: exact r-variation of step families, grid norms and
//!   distribution functions.
//! * [`harness`]: generators, verification suites, experiments and file
//!   formats behind the `polyvar` binary.

// `!(x >= 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod geometry;
pub mod grid;
pub mod harness;
pub mod spectral;
pub mod variation;

mod linalg;

pub use error::{Error, Result};
pub use grid::GridSamples;
