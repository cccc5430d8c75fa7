use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use hopfcole::families::{FamilyKind, FamilySpec};
use hopfcole::numeric::figures::{panels, Figure};
use hopfcole::numeric::{emit_csv, sample, Axis, GridSpec};
use hopfcole::pde::{hermite_identity_parts, identity_residual_of, laguerre_solution, Equation};
use hopfcole::ratfunc::phi_solution;
use hopfcole::scalar::parse_rational;
use hopfcole::suites::Suite;
use hopfcole::{Error, RatFn, Rational};

/// Exact special-polynomial solutions of heat-type and Burgers-type PDEs.
#[derive(Parser)]
#[command(name = "hopfcole", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a polynomial family as JSON.
    Family(FamilyArgs),
    /// Print a rational solution as JSON.
    Solution(SolutionArgs),
    /// Verify an equation; exit 0 if the residual vanishes, 1 if not.
    Verify(VerifyArgs),
    /// Sample a solution on a grid and emit CSV.
    Grid(GridArgs),
    /// Check `(∂ₓ + Fₙ)Fₙ = Sₙ` and print both sides.
    Identity(IdentityArgs),
    /// Run a named verification suite.
    Report(ReportArgs),
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_parser = family_kind)]
    kind: FamilyKind,
    #[arg(long, allow_hyphen_values = true, value_parser = integer)]
    n: Option<i64>,
    #[arg(long, allow_hyphen_values = true, value_parser = integer)]
    m: Option<i64>,
    #[arg(long, allow_hyphen_values = true, value_parser = rational)]
    alpha: Option<Rational>,
    #[arg(long, allow_hyphen_values = true, value_parser = rational)]
    beta: Option<Rational>,
    #[arg(long, allow_hyphen_values = true, value_parser = rational)]
    gamma: Option<Rational>,
    /// Truncation order for bessel-c0.
    #[arg(long = "N", allow_hyphen_values = true, value_parser = integer)]
    truncation: Option<i64>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("which").required(true).args(["phi", "laguerre"])))]
struct SolutionChoice {
    /// `Φₙ^{(m)}(x, y)`.
    #[arg(long)]
    phi: bool,
    /// Laguerre `uₙ(x, t)`.
    #[arg(long)]
    laguerre: bool,
    #[arg(long, allow_hyphen_values = true, value_parser = integer)]
    n: Option<i64>,
    #[arg(long, allow_hyphen_values = true, value_parser = integer)]
    m: Option<i64>,
}

impl SolutionChoice {
    fn build(&self) -> hopfcole::Result<RatFn> {
        let n = self.n.ok_or_else(|| Error::InvalidParameter("--n is required".into()))?;
        if self.phi {
            let m = self.m.ok_or_else(|| Error::InvalidParameter("--phi needs --m".into()))?;
            phi_solution(n, m)
        } else {
            laguerre_solution(n)
        }
    }
}

#[derive(Args)]
struct SolutionArgs {
    #[command(flatten)]
    choice: SolutionChoice,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of burgers, hierarchical, laguerre, laguerre-log, hybrid, hybrid-log,
    /// varcoef, combined, combined-linear, identity, heat, genfun.
    equation: String,
    #[arg(long, allow_hyphen_values = true, value_parser = integer)]
    n: Option<i64>,
    #[arg(long, allow_hyphen_values = true, value_parser = integer)]
    m: Option<i64>,
    #[arg(long, allow_hyphen_values = true, value_parser = integer)]
    k: Option<i64>,
    #[arg(long, allow_hyphen_values = true, value_parser = rational)]
    alpha: Option<Rational>,
    #[arg(long, allow_hyphen_values = true, value_parser = rational)]
    beta: Option<Rational>,
    #[arg(long, allow_hyphen_values = true, value_parser = rational)]
    gamma: Option<Rational>,
    #[arg(long = "N", allow_hyphen_values = true, value_parser = integer)]
    truncation: Option<i64>,
    /// Add 1 to the candidate's numerator (or a stray term) before checking.
    #[arg(long)]
    perturb: bool,
    /// Print the JSON report, including wall-clock time.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("preset").args(["fig1", "fig2", "fig3"])))]
struct GridArgs {
    #[arg(long, conflicts_with = "laguerre")]
    phi: bool,
    #[arg(long)]
    laguerre: bool,
    #[arg(long, allow_hyphen_values = true, value_parser = integer)]
    n: Option<i64>,
    #[arg(long, allow_hyphen_values = true, value_parser = integer)]
    m: Option<i64>,
    /// `min:max:steps`.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// A fixed value or `min:max:steps`.
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    /// A fixed value or `min:max:steps`.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Output file, or directory for the figure presets.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, conflicts_with_all = ["phi", "laguerre", "x", "y", "t"])]
    fig1: bool,
    #[arg(long, conflicts_with_all = ["phi", "laguerre", "x", "y", "t"])]
    fig2: bool,
    #[arg(long, conflicts_with_all = ["phi", "laguerre", "x", "y", "t"])]
    fig3: bool,
}

#[derive(Args)]
struct IdentityArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = integer)]
    n: i64,
}

#[derive(Args)]
struct ReportArgs {
    /// paper-fixtures, residual-sweep, structural, negative-controls,
    /// fd-crosscheck or figure-shape.
    suite: String,
    #[arg(long)]
    json: bool,
}

fn family_kind(s: &str) -> Result<FamilyKind, String> {
    FamilyKind::from_cli_name(s).ok_or_else(|| {
        let names: Vec<_> = FamilyKind::ALL.iter().map(|k| k.cli_name()).collect();
        format!("unknown family `{s}`; expected one of {}", names.join(", "))
    })
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("`{s}` is not a rational number p/q"))
}

fn integer(s: &str) -> Result<i64, String> {
    let r = rational(s)?;
    if !r.is_integer() {
        return Err(format!("`{s}` is not an integer"));
    }
    r.to_integer().try_into().map_err(|_| format!("`{s}` is out of range"))
}

/// Failure modes mapped to exit codes.
enum Failure {
    Usage(String),
    Unverified,
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(e) => Failure::Io(e),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn print_line(text: &str) -> Outcome {
    let mut out = io::stdout().lock();
    writeln!(out, "{text}")?;
    Ok(())
}

fn cmd_family(args: FamilyArgs) -> Outcome {
    let spec = FamilySpec {
        kind: args.kind,
        n: args.n,
        m: args.m,
        alpha: args.alpha,
        beta: args.beta,
        gamma: args.gamma,
        truncation: args.truncation,
    };
    print_line(&spec.build()?.to_json())
}

fn cmd_solution(args: SolutionArgs) -> Outcome {
    print_line(&args.choice.build()?.normalize_content().to_json())
}

fn equation(args: &VerifyArgs) -> Result<Equation, Failure> {
    let need = |v: Option<i64>, flag: &str| v.ok_or_else(|| usage(format!("`{}` needs --{flag}", args.equation)));
    let shift = |v: &Option<Rational>| v.clone().unwrap_or_default();
    let (alpha, beta, gamma) = (shift(&args.alpha), shift(&args.beta), shift(&args.gamma));
    Ok(match args.equation.as_str() {
        "burgers" => Equation::Burgers { n: need(args.n, "n")?, m: need(args.m, "m")? },
        "hierarchical" => {
            Equation::Hierarchical { n: need(args.n, "n")?, m: need(args.m, "m")?, k: need(args.k, "k")? }
        }
        "laguerre" => Equation::Laguerre { n: need(args.n, "n")? },
        "laguerre-log" => Equation::LaguerreLog { n: need(args.n, "n")? },
        "hybrid" => Equation::Hybrid { n: need(args.n, "n")? },
        "hybrid-log" => Equation::HybridLog { n: need(args.n, "n")? },
        "varcoef" => Equation::VarCoef { n: need(args.n, "n")? },
        "combined" => Equation::Combined { n: need(args.n, "n")?, alpha, beta, gamma },
        "combined-linear" => Equation::CombinedLinear { n: need(args.n, "n")?, alpha, beta, gamma },
        "identity" => Equation::Identity { n: need(args.n, "n")? },
        "heat" => Equation::Heat { n: need(args.n, "n")?, m: need(args.m, "m")? },
        "genfun" => Equation::Genfun { m: need(args.m, "m")?, truncation: need(args.truncation, "N")? },
        other => {
            return Err(usage(format!("unknown equation `{other}`; expected one of {}", Equation::IDS.join(", "))))
        }
    })
}

fn cmd_verify(args: VerifyArgs) -> Outcome {
    let eq = equation(&args)?;
    let report = eq.verify(args.perturb)?;
    if args.json {
        print_line(&serde_json::to_string(&report).expect("report serializes"))?;
    } else {
        let params: Vec<String> = report
            .params
            .iter()
            .map(|(k, v)| format!("{k}={}", v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string())))
            .collect();
        let verdict = if report.residual_zero {
            "residual is zero".to_string()
        } else {
            format!("residual is NONZERO ({} terms)", report.residual_num_terms)
        };
        print_line(&format!("{} {}: {verdict}", report.equation, params.join(" ")))?;
    }
    if report.residual_zero {
        Ok(())
    } else {
        Err(Failure::Unverified)
    }
}

enum Coordinate {
    Fixed(f64),
    Range(Axis<f64>),
}

fn coordinate(var: &str, text: &str) -> Result<Coordinate, Failure> {
    let bad = || usage(format!("--{var} expects a number or min:max:steps, got `{text}`"));
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [v] => {
            let v: f64 = v.parse().map_err(|_| bad())?;
            if !v.is_finite() {
                return Err(bad());
            }
            Ok(Coordinate::Fixed(v))
        }
        [a, b, s] => {
            let (a, b): (f64, f64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
            let s: usize = s.parse().map_err(|_| bad())?;
            Ok(Coordinate::Range(Axis::new(var, a, b, s)?))
        }
        _ => Err(bad()),
    }
}

fn write_csv(table: &hopfcole::Samples, output: Option<&Path>) -> Outcome {
    match output {
        Some(path) => emit_csv(table, BufWriter::new(File::create(path)?))?,
        None => emit_csv(table, io::stdout().lock())?,
    }
    Ok(())
}

fn cmd_figures(figure: Figure, dir: Option<&Path>) -> Outcome {
    let dir = dir.unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    for panel in panels(figure)? {
        let path = dir.join(panel.file_name());
        write_csv(&panel.sample()?, Some(&path))?;
        print_line(&path.display().to_string())?;
    }
    Ok(())
}

fn cmd_grid(args: GridArgs) -> Outcome {
    let figure = [(args.fig1, Figure::PhiLines), (args.fig2, Figure::PhiSurfaces), (args.fig3, Figure::LaguerreLines)]
        .into_iter()
        .find_map(|(set, f)| set.then_some(f));
    if let Some(figure) = figure {
        return cmd_figures(figure, args.output.as_deref());
    }
    if !args.phi && !args.laguerre {
        return Err(usage("grid needs --phi, --laguerre or a figure preset"));
    }
    let u = SolutionChoice { phi: args.phi, laguerre: args.laguerre, n: args.n, m: args.m }.build()?;
    let time_var = if args.phi { "y" } else { "t" };
    let (wrong, wrong_var) = if args.phi { (&args.t, "t") } else { (&args.y, "y") };
    if wrong.is_some() {
        return Err(usage(format!("--{wrong_var} does not apply to this solution")));
    }
    let x = match coordinate("x", args.x.as_deref().ok_or_else(|| usage("--x min:max:steps is required"))?)? {
        Coordinate::Range(a) => a,
        Coordinate::Fixed(_) => return Err(usage("--x must be a range min:max:steps")),
    };
    let time_text = if args.phi { &args.y } else { &args.t };
    let time_text = time_text.as_deref().ok_or_else(|| usage(format!("--{time_var} is required")))?;
    let grid = match coordinate(time_var, time_text)? {
        Coordinate::Fixed(v) => GridSpec::line(x, vec![(time_var.to_string(), v)]),
        Coordinate::Range(a) => GridSpec::surface(x, a, vec![]),
    };
    write_csv(&sample(&u, &grid)?, args.output.as_deref())
}

fn cmd_identity(args: IdentityArgs) -> Outcome {
    let (f, s) = hermite_identity_parts(args.n)?;
    let zero = identity_residual_of(&f, &s).is_zero();
    let value = serde_json::json!({
        "n": args.n,
        "F": f.normalize_content().to_json_value(),
        "S": s.normalize_content().to_json_value(),
        "residual_zero": zero,
    });
    print_line(&value.to_string())?;
    if zero {
        Ok(())
    } else {
        Err(Failure::Unverified)
    }
}

fn cmd_report(args: ReportArgs) -> Outcome {
    let suite = Suite::from_id(&args.suite).ok_or_else(|| {
        let ids: Vec<_> = Suite::ALL.iter().map(|s| s.id()).collect();
        usage(format!("unknown suite `{}`; expected one of {}", args.suite, ids.join(", ")))
    })?;
    let report = suite.run();
    if args.json {
        print_line(&serde_json::to_string_pretty(&report).expect("report serializes"))?;
    } else {
        for item in &report.items {
            print_line(&format!("{} {}: {}", if item.passed { "PASS" } else { "FAIL" }, item.name, item.detail))?;
        }
        print_line(&format!("{} {}", report.suite, if report.passed { "passed" } else { "FAILED" }))?;
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Unverified)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Family(a) => cmd_family(a),
        Command::Solution(a) => cmd_solution(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Grid(a) => cmd_grid(a),
        Command::Identity(a) => cmd_identity(a),
        Command::Report(a) => cmd_report(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Unverified) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
