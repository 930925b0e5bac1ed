//! Configuration, generators, file formats, the verification suites and the
//! ratio and convergence experiments behind the `polyvar` binary.

pub mod config;
pub mod experiments;
pub mod formats;
pub mod generators;
pub mod verify;

pub use config::RunConfig;
pub use experiments::{run_convergence, run_ratio_experiment, ConvergenceRow, RatioReport, RatioRow};
pub use generators::{random_polytope, random_trig_polynomial, smooth_trig_polynomial};
pub use verify::{run_verify, CheckResult, VerifyReport};
