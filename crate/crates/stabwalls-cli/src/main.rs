//! `stabwalls` — exact wall-and-chamber computations on the command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error (invalid inputs to
//! a valid command shape), 3 a well-posed check that came out negative
//! (unstable representation, infeasible grid, violated bound).

mod svg;

use std::fs;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use stabwalls::audit::{self, ExtGrid};
use stabwalls::chern::{ChernCharacter, ObjectKind};
use stabwalls::lambda::{lambda_slope, z_lambda};
use stabwalls::quiver::{
    destabilizing_subdims, euler_form, expected_dim, is_stable_rep, theta, DimVector,
    KroneckerQuiver, QuiverRep,
};
use stabwalls::rational::{format_rational, parse_rational, Rational};
use stabwalls::riemann_roch::{euler_pairing, hilbert_polynomial};
use stabwalls::tilt::{default_s, gbg_residual, nu, z_tilt, StabilityParams};
use stabwalls::walls::{
    chamber_report, default_candidates, default_path, default_tolerance, enumerate_destabilizers,
    scan_path, tilt_wall, PathSpec, ScanKind,
};

#[derive(Parser)]
#[command(
    name = "stabwalls",
    version,
    about = "Exact wall-and-chamber computations for stability conditions on projective 3-space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ChargeKind {
    /// The tilt charge (blind to ch3).
    Tilt,
    /// The second-tilt charge (sensitive to ch3).
    Lambda,
}

impl From<ChargeKind> for ScanKind {
    fn from(kind: ChargeKind) -> ScanKind {
        match kind {
            ChargeKind::Tilt => ScanKind::Tilt,
            ChargeKind::Lambda => ScanKind::Lambda,
        }
    }
}

/// A parameter point (β, α², s) given as rational strings.
#[derive(Args)]
struct PointArgs {
    /// beta, as a rational "p/q".
    #[arg(long, allow_hyphen_values = true)]
    beta: String,
    /// alpha squared, as a positive rational "p/q".
    #[arg(long = "alpha-sq", allow_hyphen_values = true)]
    alpha_sq: String,
    /// Second-tilt parameter s (default: config file, then 1/3).
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
}

#[derive(Args)]
struct ScanArgs {
    /// The scanned class (default: the twisted-cubic ideal class).
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    /// Path: inline JSON or a file path (default: the shipped three-leg path).
    #[arg(long, allow_hyphen_values = true)]
    path: Option<String>,
    /// Candidates: inline JSON array or a file path (default: the three
    /// shipped destabilizer classes).
    #[arg(long, allow_hyphen_values = true)]
    candidates: Option<String>,
    /// Which charge defines the walls.
    #[arg(long, value_enum, default_value_t = ChargeKind::Lambda)]
    kind: ChargeKind,
    /// Bracket tolerance, a positive rational (default: config, then 1/1024).
    #[arg(long, allow_hyphen_values = true)]
    tol: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Chern character of a class as a JSON array of rationals.
    Chern {
        /// The class: a JSON array of four rationals, or a named object
        /// like {"kind":"plane_sheaf","d":-3}.
        #[arg(long, allow_hyphen_values = true)]
        object: String,
        /// Print integral lattice coordinates instead (errors when the
        /// class is not a lattice class).
        #[arg(long)]
        coords: bool,
    },
    /// Euler pairing of two classes.
    Chi {
        /// Left class.
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        /// Right class.
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    /// Hilbert polynomial of a class.
    Hilb {
        /// The class.
        #[arg(long, allow_hyphen_values = true)]
        object: String,
        /// Evaluate at an integer twist instead of printing the polynomial.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<i64>,
    },
    /// Central charge of a class at a parameter point, as JSON {re, im}.
    Z {
        /// The class.
        #[arg(long, allow_hyphen_values = true)]
        object: String,
        #[command(flatten)]
        point: PointArgs,
        /// Which central charge to evaluate.
        #[arg(long, value_enum, default_value_t = ChargeKind::Tilt)]
        kind: ChargeKind,
    },
    /// Tilt slope of a class at a parameter point ("inf" when infinite).
    Nu {
        /// The class.
        #[arg(long, allow_hyphen_values = true)]
        object: String,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Second-tilt slope of a class at a parameter point.
    Lambda {
        /// The class.
        #[arg(long, allow_hyphen_values = true)]
        object: String,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Residual of the ch3 bound; nonnegative where the bound holds.
    Gbg {
        /// The class.
        #[arg(long, allow_hyphen_values = true)]
        object: String,
        #[command(flatten)]
        point: PointArgs,
        /// Exit 3 when the residual is negative.
        #[arg(long)]
        enforce: bool,
    },
    /// The numerical wall where two classes' tilt slopes agree.
    Wall {
        /// First class.
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        /// Second class.
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Enumerate candidate destabilizer classes at a parameter point.
    Destab {
        /// The destabilized class.
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[command(flatten)]
        point: PointArgs,
        /// Bound on |ch0| of candidates (default: config, then 3).
        #[arg(long = "rank-bound")]
        rank_bound: Option<u32>,
    },
    /// Scan a path for wall crossings; prints bracketed crossings as JSON.
    Scan {
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Chamber decomposition along a path, as JSON.
    Chambers {
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Stability tools for (2,3)-representations of the 4-arrow Kronecker
    /// quiver.
    Quiver {
        #[command(subcommand)]
        command: QuiverCommand,
    },
    /// Check a long-exact-sequence grid for exactness feasibility.
    Les {
        /// A shipped grid name or a JSON file path.
        #[arg(long)]
        grid: Option<String>,
        /// List the shipped grid names.
        #[arg(long)]
        list: bool,
    },
    /// Print the moduli-dimension bookkeeping ledger.
    Ledger {
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Render walls as a deterministic SVG picture of the (β, α) strip.
    Plot {
        /// The class whose walls to draw (default: the twisted-cubic ideal
        /// class).
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        /// A class to form a wall against --v; repeatable (default: the
        /// first two shipped destabilizer classes).
        #[arg(long, allow_hyphen_values = true)]
        w: Vec<String>,
        /// Explicit walls as a JSON array, overriding --v/--w.
        #[arg(long, allow_hyphen_values = true)]
        walls_json: Option<String>,
        /// Left edge in beta.
        #[arg(long, allow_hyphen_values = true, default_value = "-5")]
        beta_min: String,
        /// Right edge in beta.
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        beta_max: String,
        /// Top edge in alpha.
        #[arg(long, allow_hyphen_values = true, default_value = "3")]
        alpha_max: String,
        /// Canvas width in pixels.
        #[arg(long, default_value_t = 640)]
        width: u32,
        /// Canvas height in pixels.
        #[arg(long, default_value_t = 480)]
        height: u32,
        /// Labeled point "label@beta,alpha"; repeatable.
        #[arg(long = "marker", allow_hyphen_values = true)]
        markers: Vec<String>,
        /// Write to a file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum QuiverCommand {
    /// Decide stability of a representation file; exit 3 when unstable,
    /// printing the verdict with a witness.
    Check {
        /// Path to a JSON file {"arrows": four 3x2 matrices of rationals}.
        #[arg(long)]
        rep: String,
    },
    /// Print the stability weight, Euler form, and expected moduli
    /// dimension for a dimension vector.
    Info {
        /// Source dimension.
        #[arg(long, default_value_t = 2)]
        m: u32,
        /// Target dimension.
        #[arg(long, default_value_t = 3)]
        n: u32,
    },
}

/// Errors mapped to exit codes (Usage → 1, Domain → 2).
enum CliError {
    Usage(String),
    Domain(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn domain(msg: impl ToString) -> CliError {
    CliError::Domain(msg.to_string())
}

/// Optional defaults from the TOML file named by STABWALLS_CONFIG.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    /// Default second-tilt parameter, as a rational string.
    s: Option<String>,
    /// Default scan tolerance, as a rational string.
    tolerance: Option<String>,
    /// Default destabilizer rank bound.
    rank_bound: Option<u32>,
}

impl Config {
    fn load() -> Result<Config, CliError> {
        let Some(path) = std::env::var_os("STABWALLS_CONFIG") else {
            return Ok(Config::default());
        };
        let text = fs::read_to_string(&path).map_err(|e| {
            usage(format!("cannot read config {}: {e}", path.to_string_lossy()))
        })?;
        toml::from_str(&text).map_err(|e| usage(format!("invalid config file: {e}")))
    }

    fn s(&self, flag: &Option<String>) -> Result<Rational, CliError> {
        match flag.as_deref().or(self.s.as_deref()) {
            Some(text) => parse_rat("s", text),
            None => Ok(default_s()),
        }
    }

    fn tolerance(&self, flag: &Option<String>) -> Result<Rational, CliError> {
        match flag.as_deref().or(self.tolerance.as_deref()) {
            Some(text) => parse_rat("tol", text),
            None => Ok(default_tolerance()),
        }
    }

    fn rank_bound(&self, flag: Option<u32>) -> u32 {
        flag.or(self.rank_bound).unwrap_or(3)
    }
}

fn parse_rat(flag: &str, text: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|e| usage(format!("--{flag}: {e}")))
}

/// Parses a class given either as a JSON array of four rational strings or
/// as a named-object JSON value.
fn parse_class(input: &str) -> Result<ChernCharacter, CliError> {
    let value: serde_json::Value =
        serde_json::from_str(input).map_err(|e| usage(format!("invalid class JSON: {e}")))?;
    class_from_value(value)
}

fn class_from_value(value: serde_json::Value) -> Result<ChernCharacter, CliError> {
    match value {
        serde_json::Value::Array(_) => serde_json::from_value::<ChernCharacter>(value)
            .map_err(|e| usage(format!("invalid class array: {e}"))),
        serde_json::Value::Object(_) => {
            let kind: ObjectKind = serde_json::from_value(value)
                .map_err(|e| usage(format!("unknown object: {e}")))?;
            Ok(kind.chern())
        }
        _ => Err(usage(
            "a class must be a JSON array of four rationals or an object with a \"kind\" field",
        )),
    }
}

/// Returns the argument itself when it looks like inline JSON, otherwise
/// the contents of the file it names.
fn read_json_arg(arg: &str) -> Result<String, CliError> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        Ok(arg.to_string())
    } else {
        fs::read_to_string(arg).map_err(|e| usage(format!("cannot read {arg}: {e}")))
    }
}

fn build_point(point: &PointArgs, config: &Config) -> Result<StabilityParams, CliError> {
    let beta = parse_rat("beta", &point.beta)?;
    let alpha_sq = parse_rat("alpha-sq", &point.alpha_sq)?;
    let s = config.s(&point.s)?;
    StabilityParams::new(beta, alpha_sq, s).map_err(domain)
}

fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string(value).map_err(|e| domain(format!("serialization: {e}")))?;
    println!("{text}");
    Ok(())
}

struct ScanInputs {
    v: ChernCharacter,
    path: PathSpec,
    candidates: Vec<ChernCharacter>,
    kind: ScanKind,
    tol: Rational,
}

fn build_scan(args: &ScanArgs, config: &Config) -> Result<ScanInputs, CliError> {
    let v = match &args.v {
        Some(text) => parse_class(text)?,
        None => ObjectKind::IdealTwistedCubic.chern(),
    };
    let path = match &args.path {
        Some(arg) => serde_json::from_str(&read_json_arg(arg)?)
            .map_err(|e| usage(format!("invalid path: {e}")))?,
        None => default_path(),
    };
    let candidates = match &args.candidates {
        Some(arg) => {
            let values: Vec<serde_json::Value> = serde_json::from_str(&read_json_arg(arg)?)
                .map_err(|e| usage(format!("invalid candidate list: {e}")))?;
            values
                .into_iter()
                .map(class_from_value)
                .collect::<Result<Vec<_>, _>>()?
        }
        None => default_candidates(),
    };
    Ok(ScanInputs {
        v,
        path,
        candidates,
        kind: args.kind.into(),
        tol: config.tolerance(&args.tol)?,
    })
}

fn parse_marker(spec: &str) -> Result<svg::Marker, CliError> {
    let (label, coords) = spec
        .rsplit_once('@')
        .ok_or_else(|| usage(format!("marker {spec:?} must look like \"label@beta,alpha\"")))?;
    let (beta, alpha) = coords
        .split_once(',')
        .ok_or_else(|| usage(format!("marker {spec:?} must give \"beta,alpha\"")))?;
    Ok(svg::Marker {
        label: label.to_string(),
        beta: parse_rat("marker", beta.trim())?,
        alpha: parse_rat("marker", alpha.trim())?,
    })
}

fn run(command: Command, config: &Config) -> Result<i32, CliError> {
    match command {
        Command::Chern { object, coords } => {
            let ch = parse_class(&object)?;
            if coords {
                let lattice = ch.lattice_coords().map_err(domain)?;
                let strings: Vec<String> = lattice.iter().map(|n| n.to_string()).collect();
                print_json(&strings)?;
            } else {
                print_json(&ch)?;
            }
            Ok(0)
        }
        Command::Chi { left, right } => {
            let l = parse_class(&left)?;
            let r = parse_class(&right)?;
            println!("{}", format_rational(&euler_pairing(&l, &r)));
            Ok(0)
        }
        Command::Hilb { object, at } => {
            let poly = hilbert_polynomial(&parse_class(&object)?);
            match at {
                Some(m) => println!("{}", format_rational(&poly.eval_int(m))),
                None => println!("{poly}"),
            }
            Ok(0)
        }
        Command::Z { object, point, kind } => {
            let ch = parse_class(&object)?;
            let params = build_point(&point, config)?;
            let z = match kind {
                ChargeKind::Tilt => z_tilt(&ch, &params),
                ChargeKind::Lambda => z_lambda(&ch, &params),
            };
            print_json(&z)?;
            Ok(0)
        }
        Command::Nu { object, point } => {
            let ch = parse_class(&object)?;
            println!("{}", nu(&ch, &build_point(&point, config)?));
            Ok(0)
        }
        Command::Lambda { object, point } => {
            let ch = parse_class(&object)?;
            println!("{}", lambda_slope(&ch, &build_point(&point, config)?));
            Ok(0)
        }
        Command::Gbg { object, point, enforce } => {
            let ch = parse_class(&object)?;
            let residual = gbg_residual(&ch, &build_point(&point, config)?);
            println!("{}", format_rational(&residual));
            if enforce && residual.is_negative() {
                eprintln!("bound violated: residual is negative");
                return Ok(3);
            }
            Ok(0)
        }
        Command::Wall { v, w } => {
            let wall = tilt_wall(&parse_class(&v)?, &parse_class(&w)?);
            print_json(&wall)?;
            Ok(0)
        }
        Command::Destab { v, point, rank_bound } => {
            let ch = parse_class(&v)?;
            let params = build_point(&point, config)?;
            let bound = config.rank_bound(rank_bound);
            let list = enumerate_destabilizers(&ch, &params, bound).map_err(domain)?;
            print_json(&list)?;
            Ok(0)
        }
        Command::Scan { scan } => {
            let inputs = build_scan(&scan, config)?;
            let crossings = scan_path(
                &inputs.v,
                &inputs.path,
                &inputs.candidates,
                inputs.kind,
                &inputs.tol,
            )
            .map_err(domain)?;
            print_json(&crossings)?;
            Ok(0)
        }
        Command::Chambers { scan } => {
            let inputs = build_scan(&scan, config)?;
            let report = chamber_report(
                &inputs.v,
                &inputs.path,
                &inputs.candidates,
                inputs.kind,
                &inputs.tol,
            )
            .map_err(domain)?;
            print_json(&report)?;
            Ok(0)
        }
        Command::Quiver { command } => run_quiver(command),
        Command::Les { grid, list } => {
            if list {
                for name in audit::builtin::names() {
                    println!("{name}");
                }
                return Ok(0);
            }
            let arg = grid.ok_or_else(|| usage("--grid NAME_OR_FILE is required (or --list)"))?;
            let grid = match audit::builtin::by_name(&arg) {
                Some(grid) => grid,
                None => {
                    let text = fs::read_to_string(&arg)
                        .map_err(|e| usage(format!("no shipped grid or readable file {arg:?}: {e}")))?;
                    serde_json::from_str::<ExtGrid>(&text)
                        .map_err(|e| usage(format!("invalid grid JSON: {e}")))?
                }
            };
            let report = audit::grid_check(&grid).map_err(domain)?;
            print_json(&report)?;
            Ok(if report.all_feasible() { 0 } else { 3 })
        }
        Command::Ledger { json } => {
            let entries = audit::dimension_ledger();
            if json {
                print_json(&entries)?;
            } else {
                for entry in &entries {
                    println!("{entry}");
                }
            }
            Ok(if entries.iter().all(|e| e.consistent()) { 0 } else { 3 })
        }
        Command::Plot {
            v,
            w,
            walls_json,
            beta_min,
            beta_max,
            alpha_max,
            width,
            height,
            markers,
            out,
        } => {
            let window = svg::PlotWindow::new(
                parse_rat("beta-min", &beta_min)?,
                parse_rat("beta-max", &beta_max)?,
                parse_rat("alpha-max", &alpha_max)?,
                width,
                height,
            )
            .map_err(|e| usage(e.0))?;

            let walls: Vec<stabwalls::walls::WallCircle> = match walls_json {
                Some(arg) => serde_json::from_str(&read_json_arg(&arg)?)
                    .map_err(|e| usage(format!("invalid wall list: {e}")))?,
                None => {
                    let base = match &v {
                        Some(text) => parse_class(text)?,
                        None => ObjectKind::IdealTwistedCubic.chern(),
                    };
                    let others: Vec<ChernCharacter> = if w.is_empty() {
                        vec![
                            ChernCharacter::line_bundle(-2).scale(3),
                            ObjectKind::IdealPoint { d: -1 }.chern(),
                        ]
                    } else {
                        w.iter().map(|text| parse_class(text)).collect::<Result<_, _>>()?
                    };
                    others.iter().map(|other| tilt_wall(&base, other)).collect()
                }
            };

            let marks = markers
                .iter()
                .map(|spec| parse_marker(spec))
                .collect::<Result<Vec<_>, _>>()?;

            let (document, drawn) = svg::render_walls_svg(&walls, &window, &marks);
            if drawn == 0 {
                eprintln!("warning: no wall intersects the window; rendering axes only");
            }
            match out {
                Some(path) => fs::write(&path, document)
                    .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{document}"),
            }
            Ok(0)
        }
    }
}

fn run_quiver(command: QuiverCommand) -> Result<i32, CliError> {
    match command {
        QuiverCommand::Check { rep } => {
            let text =
                fs::read_to_string(&rep).map_err(|e| usage(format!("cannot read {rep}: {e}")))?;
            let value: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| usage(format!("invalid JSON in {rep}: {e}")))?;
            let rep: QuiverRep = serde_json::from_value(value).map_err(domain)?;
            let verdict = is_stable_rep(&rep);
            print_json(&verdict)?;
            Ok(if verdict.stable { 0 } else { 3 })
        }
        QuiverCommand::Info { m, n } => {
            let quiver = KroneckerQuiver::new(4);
            let d = DimVector::new(m, n);
            let info = QuiverInfo {
                dim_vector: d,
                theta: theta(d),
                self_euler_form: euler_form(quiver, d, d),
                expected_dim: expected_dim(quiver, d),
                destabilizing_subdims: destabilizing_subdims(d),
            };
            print_json(&info)?;
            Ok(0)
        }
    }
}

#[derive(Serialize)]
struct QuiverInfo {
    dim_vector: DimVector,
    theta: i64,
    self_euler_form: i64,
    expected_dim: i64,
    destabilizing_subdims: Vec<DimVector>,
}

fn main() {
    // Die quietly when a downstream pager or `head` closes the pipe.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let code = match Cli::try_parse() {
        Ok(cli) => match Config::load().and_then(|config| run(cli.command, &config)) {
            Ok(code) => code,
            Err(CliError::Usage(msg)) => {
                eprintln!("error: {msg}");
                1
            }
            Err(CliError::Domain(msg)) => {
                eprintln!("error: {msg}");
                2
            }
        },
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            code
        }
    };
    std::process::exit(code);
}
