use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypergap::sweep::{radii, sweep, write_csv};
use hypergap::verify::{default_grid, grid, DEFAULT_DIMENSIONS, DEFAULT_RADII};
use hypergap::{
    ball_bounds, certify_gap_bound, gap, run_all, BallSpec, BoundReport, Error, HoroconvexInput,
    RadiusScale, SolverConfig,
};
use serde_json::json;

/// Dirichlet eigenvalues and fundamental gap of hyperbolic geodesic balls.
#[derive(Parser)]
#[command(name = "hypergap", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    tol: Tolerances,
}

/// Solver settings; each can also be set as `HYPERGAP_<NAME>`.
#[derive(Args)]
struct Tolerances {
    #[arg(
        long,
        global = true,
        env = "HYPERGAP_LAMBDA_REL_TOL",
        allow_negative_numbers = true
    )]
    lambda_rel_tol: Option<f64>,
    #[arg(
        long,
        global = true,
        env = "HYPERGAP_LAMBDA_ABS_TOL",
        allow_negative_numbers = true
    )]
    lambda_abs_tol: Option<f64>,
    /// Local error tolerance of the ODE integrator.
    #[arg(
        long,
        global = true,
        env = "HYPERGAP_ODE_TOL",
        allow_negative_numbers = true
    )]
    ode_tol: Option<f64>,
    /// Sets the eigenvalue relative and ODE tolerances together.
    #[arg(
        long,
        global = true,
        env = "HYPERGAP_TOL",
        allow_negative_numbers = true
    )]
    tol: Option<f64>,
    #[arg(
        long,
        global = true,
        env = "HYPERGAP_T0_FACTOR",
        allow_negative_numbers = true
    )]
    t0_factor: Option<f64>,
    #[arg(long, global = true, env = "HYPERGAP_MAX_BISECTION_STEPS")]
    max_bisection_steps: Option<usize>,
    #[arg(long, global = true, env = "HYPERGAP_SAMPLE_COUNT")]
    sample_count: Option<usize>,
}

impl Tolerances {
    fn config(&self) -> Result<SolverConfig, Failure> {
        let mut c = SolverConfig::default();
        if let Some(t) = self.tol {
            c.lambda_rel_tol = t;
            c.ode_tolerance = t;
        }
        c.lambda_rel_tol = self.lambda_rel_tol.unwrap_or(c.lambda_rel_tol);
        c.lambda_abs_tol = self.lambda_abs_tol.unwrap_or(c.lambda_abs_tol);
        c.ode_tolerance = self.ode_tol.unwrap_or(c.ode_tolerance);
        c.t0_factor = self.t0_factor.unwrap_or(c.t0_factor);
        c.max_bisection_steps = self.max_bisection_steps.unwrap_or(c.max_bisection_steps);
        c.sample_count = self.sample_count.unwrap_or(c.sample_count);
        c.validate()?;
        Ok(c)
    }
}

#[derive(Subcommand)]
enum Command {
    /// λ₁, λ₂, the gap and every closed-form bound for one ball.
    Eig {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        r: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        k: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// CSV table of eigenvalues and bounds over a range of radii at k = 1.
    Sweep {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        r_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        r_max: f64,
        #[arg(long, default_value_t = 16)]
        points: usize,
        #[arg(long, value_enum, default_value_t = Scale::Linear)]
        scale: Scale,
        /// Output file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certified gap bound for horoconvex domains of diameter D.
    Horoconvex {
        #[arg(long)]
        n: u32,
        #[arg(long = "D", allow_negative_numbers = true)]
        diameter: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Checks every inequality on a grid of balls and writes a JSON report.
    Verify {
        #[arg(long, value_delimiter = ',')]
        grid_n: Vec<u32>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        grid_r: Vec<f64>,
        /// Report file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scale {
    Linear,
    Log,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn io(path: Option<&Path>, e: io::Error) -> Self {
        let message = match path {
            Some(p) => format!("cannot write {}: {e}", p.display()),
            None => format!("cannot write output: {e}"),
        };
        Self { code: 4, message }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Domain(_)) { 2 } else { 3 };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let config = cli.tol.config()?;
    match cli.command {
        Command::Eig { n, r, k, format } => eig(n, r, k, format, &config),
        Command::Sweep {
            n,
            r_min,
            r_max,
            points,
            scale,
            out,
        } => {
            let scale = match scale {
                Scale::Linear => RadiusScale::Linear,
                Scale::Log => RadiusScale::Log,
            };
            BallSpec::hyperbolic(n, r_min)?;
            let rows = sweep(n, &radii(r_min, r_max, points, scale)?, &config)?;
            emit(out.as_deref(), |w| write_csv(&rows, w))?;
            Ok(0)
        }
        Command::Horoconvex {
            n,
            diameter,
            format,
        } => {
            let cert = certify_gap_bound(&HoroconvexInput { n, diameter }, &config)?;
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&cert).expect("serializable"),
                Format::Text => {
                    let mut s = format!(
                        "n = {n}, D = {diameter}\ncertified_bound        {:.12e}\nball_radius_floor      {:.12e}\nreference_numeric_gap  {:.12e}\nassumptions:",
                        cert.certified_bound, cert.ball_radius_floor, cert.reference_numeric_gap
                    );
                    for a in &cert.assumptions {
                        s.push_str("\n  - ");
                        s.push_str(a);
                    }
                    s
                }
            };
            println!("{text}");
            Ok(0)
        }
        Command::Verify {
            grid_n,
            grid_r,
            out,
        } => {
            let g = if grid_n.is_empty() && grid_r.is_empty() {
                default_grid()
            } else {
                let ns = if grid_n.is_empty() {
                    DEFAULT_DIMENSIONS.to_vec()
                } else {
                    grid_n
                };
                let rs = if grid_r.is_empty() {
                    DEFAULT_RADII.to_vec()
                } else {
                    grid_r
                };
                grid(&ns, &rs)?
            };
            let report = run_all(&g, &config)?;
            for c in &report {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                eprintln!(
                    "{mark} {:<24} margin {:+.3e}  {}",
                    c.check_name, c.margin, c.worst_case
                );
            }
            emit(out.as_deref(), |w| {
                serde_json::to_writer_pretty(&mut *w, &report)?;
                writeln!(w)
            })?;
            Ok(if report.iter().all(|c| c.passed) {
                0
            } else {
                1
            })
        }
    }
}

fn emit(
    path: Option<&Path>,
    body: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), Failure> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| Failure::io(Some(p), e))?;
            let mut w = BufWriter::new(file);
            body(&mut w)
                .and_then(|_| w.flush())
                .map_err(|e| Failure::io(Some(p), e))
        }
        None => {
            let mut w = io::stdout().lock();
            body(&mut w)
                .and_then(|_| w.flush())
                .map_err(|e| Failure::io(None, e))
        }
    }
}

fn eig(n: u32, r: f64, k: f64, format: Format, config: &SolverConfig) -> Result<u8, Failure> {
    let spec = BallSpec::new(n, k, r)?;
    let g = gap(&spec, config)?;
    let b = ball_bounds(&spec);
    match format {
        Format::Json => {
            let v = json!({
                "n": n, "k": k, "r": r,
                "lambda1": g.lambda1, "lambda1_error": g.lambda1_error,
                "lambda2": g.lambda2, "lambda2_error": g.lambda2_error,
                "gap": g.gap, "gap_error": g.gap_error,
                "lambda1_bounds": b.lambda1,
                "lambda2_bounds": b.lambda2,
                "gap_bounds": b.gap,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&v).expect("serializable")
            );
        }
        Format::Text => {
            println!("n = {n}, k = {k}, r = {r}");
            println!("{:<24} {:>20}  {:>9}", "quantity", "value", "error");
            for (name, v, e) in [
                ("lambda1", g.lambda1, g.lambda1_error),
                ("lambda2", g.lambda2, g.lambda2_error),
                ("gap", g.gap, g.gap_error),
            ] {
                println!("{name:<24} {v:>20.12e}  {e:>9.2e}");
            }
            println!();
            println!(
                "{:<24} {:<6} {:<5} {:>20}",
                "bound", "kind", "valid", "value"
            );
            let row = |b: &BoundReport| {
                let kind = serde_json::to_value(b.kind).expect("serializable");
                println!(
                    "{:<24} {:<6} {:<5} {:>20.12e}",
                    b.name,
                    kind.as_str().unwrap_or_default(),
                    if b.valid { "yes" } else { "no" },
                    b.value
                );
            };
            b.lambda1.iter().chain(&b.lambda2).for_each(row);
            println!(
                "{:<24} {:<6} {:<5} {:>20.12e}",
                "gap_lower_csch", "lower", "yes", b.gap.lower
            );
            println!(
                "{:<24} {:<6} {:<5} {:>20.12e}",
                "gap_upper_cubic", "upper", "yes", b.gap.upper
            );
        }
    }
    Ok(0)
}
