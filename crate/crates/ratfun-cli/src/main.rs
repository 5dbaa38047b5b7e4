use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use ratfun::prelude::Method;
use ratfun_cli::io::read_points_csv;
use ratfun_cli::run::{self, ApproxRequest, CliError, DomainChoice};

/// Rational approximation of complex functions on intervals, circles,
/// polygons, and discrete point sets.
#[derive(Parser)]
#[command(name = "approx", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Fit a rational approximation to a function expression.
    Approx(ApproxArgs),
    /// Re-evaluate a saved fit against its stored expression.
    Check(CheckArgs),
    /// Extract the pole/residue table of a saved fit.
    Poles(PolesArgs),
    /// Refine a saved barycentric fit toward the minimax error.
    Minimax(MinimaxArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Aaa,
    Thiele,
}

#[derive(Args)]
#[command(group(ArgGroup::new("domain").required(true).args(["interval", "circle", "polygon", "points"])))]
struct ApproxArgs {
    /// Function expression in z, e.g. "log(1+i+5i*z)".
    #[arg(long)]
    fun: String,
    /// Real interval endpoints a b.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    interval: Option<Vec<f64>>,
    /// Circle center and radius: cx cy r.
    #[arg(long, num_args = 3, value_names = ["CX", "CY", "R"], allow_negative_numbers = true)]
    circle: Option<Vec<f64>>,
    /// CSV file of polygon vertices (re,im).
    #[arg(long)]
    polygon: Option<PathBuf>,
    /// Use the exterior region of the circle or polygon.
    #[arg(long)]
    exterior: bool,
    /// CSV file of discrete points (re,im).
    #[arg(long)]
    points: Option<PathBuf>,
    /// Greedy interpolation method.
    #[arg(long, value_enum, default_value_t = MethodArg::Aaa)]
    method: MethodArg,
    /// Relative convergence tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Maximum number of node additions.
    #[arg(long)]
    max_iter: Option<usize>,
    /// Stagnation window length.
    #[arg(long)]
    stagnation: Option<usize>,
    /// CSV file of prescribed poles (re,im); switches to the least-squares
    /// partial-fraction fit.
    #[arg(long)]
    poles: Option<PathBuf>,
    /// Polynomial degree of the partial-fraction fit.
    #[arg(long)]
    degree: Option<usize>,
    /// Write the pole CSV here (plus a .history.csv sibling).
    #[arg(long)]
    emit: Option<PathBuf>,
    /// Save the fit as JSON here.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Saved fit to re-evaluate.
    #[arg(long)]
    json: PathBuf,
    /// Write point/error rows here.
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args)]
struct PolesArgs {
    /// Saved fit to read.
    #[arg(long)]
    json: PathBuf,
    /// Write pole/residue rows here.
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args)]
struct MinimaxArgs {
    /// Saved barycentric fit; refined in place.
    #[arg(long)]
    json: PathBuf,
    /// Number of Lawson iterations.
    #[arg(long, default_value_t = 20)]
    max_iter: usize,
}

fn domain_choice(args: &ApproxArgs) -> Result<DomainChoice, CliError> {
    if let Some(iv) = &args.interval {
        return Ok(DomainChoice::Interval(iv[0], iv[1]));
    }
    if let Some(c) = &args.circle {
        return Ok(DomainChoice::Circle { cx: c[0], cy: c[1], r: c[2], exterior: args.exterior });
    }
    if let Some(path) = &args.polygon {
        let vertices: Vec<Complex64> = read_points_csv(path)?;
        return Ok(DomainChoice::Polygon { vertices, exterior: args.exterior });
    }
    let path = args.points.as_ref().expect("clap group guarantees one domain");
    Ok(DomainChoice::Points(read_points_csv(path)?))
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Approx(args) => {
            let request = ApproxRequest {
                fun: args.fun.clone(),
                domain: domain_choice(&args)?,
                method: match args.method {
                    MethodArg::Aaa => Method::Barycentric,
                    MethodArg::Thiele => Method::Thiele,
                },
                tol: args.tol,
                max_iter: args.max_iter,
                stagnation: args.stagnation,
                poles_file: args.poles.clone(),
                degree: args.degree,
                emit: args.emit.clone(),
                json: args.json.clone(),
            };
            run::run_approx(&request).map(|_| ())
        }
        Cmd::Check(args) => run::run_check(&args.json, args.emit.as_deref()).map(|_| ()),
        Cmd::Poles(args) => run::run_poles(&args.json, args.emit.as_deref()).map(|_| ()),
        Cmd::Minimax(args) => run::run_minimax(&args.json, args.max_iter),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let report = serde_json::json!({ "error": e.to_string() });
            eprintln!("{report}");
            ExitCode::FAILURE
        }
    }
}
