use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use polyvar::geometry::triangulate;
use polyvar::harness::experiments::{
    complex_grid_csv, convergence_csv, partial_sum_grid, real_grid_csv,
};
use polyvar::harness::formats::{emit, read_polytope, PiecesFile};
use polyvar::harness::{run_convergence, run_ratio_experiment, run_verify, RunConfig};
use polyvar::spectral::breakpoints;
use polyvar::variation::v_r_field;

#[derive(Parser)]
#[command(name = "polyvar", version, about = "Polytopal Fourier partial sums and their r-variation")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON run configuration; flags below override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// square, cube, diamond, octahedron, cross, interval, random:<m>, or a file.
    #[arg(long, global = true)]
    polytope: Option<String>,
    #[arg(long, global = true)]
    dim: Option<usize>,
    /// Coefficient file.
    #[arg(long, global = true)]
    coeffs: Option<PathBuf>,
    #[arg(long, global = true)]
    bandwidth: Option<u64>,
    /// Comma-separated bandwidth ladder for `ratio`.
    #[arg(long, global = true, value_delimiter = ',')]
    bandwidths: Option<Vec<u64>>,
    #[arg(long, global = true)]
    density: Option<f64>,
    #[arg(short = 'r', long = "r", global = true)]
    r: Option<f64>,
    #[arg(short = 'p', long = "p", global = true)]
    p: Option<f64>,
    /// Grid size M (default 2B + 1).
    #[arg(long, global = true)]
    resolution: Option<usize>,
    #[arg(long, global = true)]
    ensemble: Option<usize>,
    /// Dilation for `partial-sum` (default: last breakpoint).
    #[arg(long, global = true)]
    lambda: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Fan triangulation of a polytope file, as JSON.
    Triangulate { file: PathBuf },
    /// S_lambda f on the grid.
    PartialSum,
    /// V_r(S_lambda f) on the grid.
    VariationField,
    /// Run every invariant suite; exits nonzero if any check fails.
    Verify {
        /// Extra polytope files to include in the suites.
        #[arg(long = "polytope-file")]
        polytope_files: Vec<PathBuf>,
    },
    /// Ratio experiment ||V_r||_p / ||f||_p over a random ensemble.
    Ratio,
    /// Convergence of S_lambda f to f for a smooth bandlimited f.
    Converge,
}

impl Common {
    fn resolve(&self) -> anyhow::Result<RunConfig> {
        let mut c = match &self.config {
            Some(path) => RunConfig::load(path)
                .with_context(|| format!("reading config {}", path.display()))?,
            None => RunConfig::default(),
        };
        macro_rules! set {
            ($($field:ident),*) => {$(
                if let Some(v) = &self.$field {
                    c.$field = v.clone();
                }
            )*};
        }
        set!(seed, polytope, dim, bandwidth, bandwidths, density, r, p, ensemble);
        if self.coeffs.is_some() {
            c.coeffs = self.coeffs.clone();
        }
        if self.resolution.is_some() {
            c.resolution = self.resolution;
        }
        if self.lambda.is_some() {
            c.lambda = self.lambda;
        }
        Ok(c)
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let mut config = cli.common.resolve()?;
    let out = cli.common.out.as_deref();
    match cli.command {
        Command::Triangulate { file } => {
            let p = read_polytope(&file).with_context(|| format!("reading {}", file.display()))?;
            let pieces = triangulate(&p)?;
            let doc = PiecesFile { dim: p.dim(), pieces };
            emit(out, &(serde_json::to_string_pretty(&doc)? + "\n"))?;
        }
        Command::PartialSum => {
            let p = config.resolve_polytope()?;
            config.dim = p.dim();
            let f = config.resolve_function()?;
            let lambda = match config.lambda {
                Some(l) => l,
                None => breakpoints(&f, &p)?.last(),
            };
            let m = config.resolution_for(f.bandwidth());
            let grid = partial_sum_grid(&f, &p, lambda, m)?;
            let mut comments = vec![format!("S_lambda f on the {m}^{} grid, lambda = {lambda}", p.dim())];
            comments.extend(config.describe());
            emit(out, &complex_grid_csv(&grid, &comments).render()?)?;
        }
        Command::VariationField => {
            let p = config.resolve_polytope()?;
            config.dim = p.dim();
            let f = config.resolve_function()?;
            let m = config.resolution_for(f.bandwidth());
            let field = v_r_field(&f, &p, m, config.r)?;
            let mut comments = vec![format!("V_r(S_lambda f) on the {m}^{} grid", p.dim())];
            comments.extend(config.describe());
            emit(out, &real_grid_csv(&field, &comments).render()?)?;
        }
        Command::Verify { polytope_files } => {
            // parse everything before any output exists
            let extra = polytope_files
                .iter()
                .map(|f| read_polytope(f).with_context(|| format!("reading {}", f.display())))
                .collect::<anyhow::Result<Vec<_>>>()?;
            let report = run_verify(&config, &extra)?;
            emit(out, &report.to_csv(&config).render()?)?;
            for c in report.failures() {
                eprintln!(
                    "FAIL {}/{}: max error {} > tolerance {}",
                    c.suite, c.check, c.max_error, c.tolerance
                );
            }
            return Ok(report.passed());
        }
        Command::Ratio => {
            let report = run_ratio_experiment(&config)?;
            emit(out, &report.to_csv(&config).render()?)?;
        }
        Command::Converge => {
            let rows = run_convergence(&config)?;
            emit(out, &convergence_csv(&rows, &config).render()?)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
