//! Command-line front end.
//!
//! Exit codes: 0 success or VERIFIED, 1 REFUTED (or a failed genericity
//! check), 2 INCONCLUSIVE, 3 input or precondition error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{Field, MPoly, Point};
use crate::certify::{self, evaluate_word, CertifyError, GeneratorMaps, Lift, Status, Verdict, WordOutcome};
use crate::fibermap::FiberMap;
use crate::format::{self, AnyQuadric, FieldSpec};
use crate::hypersurface::{Axis, MultiQuadric, DEFAULT_ATTEMPTS};
use crate::seed;
use crate::words::Word;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_SEED: u64 = 1;
/// Sampling prime used when `gen` is given no `--field`.
pub const DEFAULT_FIELD: &str = "Fp:2147483647";

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "inertia", version, about = "Birational maps of multi-quadric hypersurfaces in (P^1)^(n+1)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LiftArg {
    Tau,
    Sigma,
}

impl From<LiftArg> for Lift {
    fn from(l: LiftArg) -> Lift {
        match l {
            LiftArg::Tau => Lift::Tau,
            LiftArg::Sigma => Lift::Sigma,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a random hypersurface passing the genericity check.
    Gen {
        /// Number of P^1 factors (n+1).
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = DEFAULT_FIELD)]
        field: FieldSpec,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print F0, F1, F2 and the discriminant for each axis.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        axis: Option<usize>,
    },
    /// Check F0, F2 and the discriminant are not identically zero.
    Genericity {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Evaluate a word at a point.
    Apply {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_enum, default_value = "tau")]
        lift: LiftArg,
    },
    /// Test whether a point lies on X (and whether X is singular there).
    OnX {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Sample points of X over F_p through random fibers of one axis.
    Sample {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        axis: usize,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Check that rho_i and its inverse fix sampled points of X.
    CertifyInertia {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        axis: Option<usize>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Replace B by B+1 in rho_i (mutation check; expect REFUTED).
        #[arg(long)]
        corrupt_rho: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that tau_i and sigma_i agree on X and swap fiber points.
    CertifyAgree {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        axis: Option<usize>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a point moved by an ambient word.
    CertifyFree {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that no power rho_i^k, k <= kmax, is scalar.
    OrderCheck {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        axis: Option<usize>,
        #[arg(long, default_value_t = 8)]
        kmax: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare an iota-word's action on X with its reduced form.
    UcCheck {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "tau")]
        lift: LiftArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `argv` (program name first), runs one command and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let to_out = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = if to_out { write!(out, "{e}") } else { write!(err, "{e}") };
            return if to_out { EXIT_OK } else { EXIT_INPUT };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

type CmdResult = Result<i32, String>;

fn load(path: &Path) -> Result<AnyQuadric, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    format::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn require_fp(x: AnyQuadric) -> Result<MultiQuadric<crate::algebra::Fp>, String> {
    match x {
        AnyQuadric::Fp(x) => Ok(x),
        AnyQuadric::Q(_) => Err("this command samples points and needs a hypersurface over Fp:<p>".into()),
    }
}

fn axes(n: usize, choice: Option<usize>) -> Result<Vec<Axis>, String> {
    match choice {
        None => Ok(Axis::all(n).collect()),
        Some(k) => Axis::from_number(k)
            .filter(|a| a.index() < n)
            .map(|a| vec![a])
            .ok_or_else(|| format!("axis {k} out of range 1..={n}")),
    }
}

fn exit_for(statuses: &[Status]) -> i32 {
    if statuses.contains(&Status::Refuted) {
        EXIT_REFUTED
    } else if statuses.contains(&Status::Inconclusive) {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    }
}

fn header() -> String {
    format!("inertia {VERSION}\n")
}

fn cert_err(e: CertifyError) -> String {
    e.to_string()
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<(), String> {
    if let Some(p) = path {
        std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()))?;
    }
    Ok(())
}

/// Prints the records, writes them to `--out`, and maps statuses to an exit code.
fn emit<F: Field>(
    out: &mut dyn Write,
    path: &Option<PathBuf>,
    records: &[(String, Verdict<F>)],
    word: Option<&Word>,
) -> CmdResult {
    let mut text = header();
    for (check, v) in records {
        text.push('\n');
        text.push_str(&v.to_record(check, word));
    }
    write_out(path, &text)?;
    let statuses: Vec<Status> = records.iter().map(|(_, v)| v.status).collect();
    let code = exit_for(&statuses);
    let summary = match code {
        EXIT_OK => Status::Verified,
        EXIT_REFUTED => Status::Refuted,
        _ => Status::Inconclusive,
    };
    write!(out, "{text}\nresult: {summary}\n").map_err(|e| e.to_string())?;
    Ok(code)
}

macro_rules! dispatch {
    ($x:expr, $q:ident => $body:expr) => {
        match $x {
            AnyQuadric::Q($q) => $body,
            AnyQuadric::Fp($q) => $body,
        }
    };
}

fn execute(cmd: Command, out: &mut dyn Write) -> CmdResult {
    let io = |e: std::io::Error| e.to_string();
    match cmd {
        Command::Gen { n, field, seed, out: path } => {
            let x = AnyQuadric::random(field, n, seed).map_err(|e| e.to_string())?;
            let text = format::write(&x);
            match &path {
                Some(_) => {
                    write_out(&path, &text)?;
                    writeln!(out, "{}generated n_plus_1 = {n} over {field}, seed {seed}", header()).map_err(io)?;
                }
                None => out.write_all(text.as_bytes()).map_err(io)?,
            }
            Ok(EXIT_OK)
        }
        Command::Decompose { input, axis } => {
            let x = load(&input)?;
            let mut text = header();
            dispatch!(x, x => {
                for a in axes(x.n_factors(), axis)? {
                    let d = x.decompose(a).map_err(|e| e.to_string())?;
                    let names = d.var_names();
                    text.push_str(&format!("axis {a}\n"));
                    for (j, f) in d.f.iter().enumerate() {
                        text.push_str(&format!("  F{j} = {}\n", f.display_with(&names)));
                    }
                    text.push_str(&format!("  D  = {}\n", d.discriminant().display_with(&names)));
                }
            });
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Genericity { input } => {
            let report = dispatch!(load(&input)?, x => x.genericity());
            write!(out, "{}{report}", header()).map_err(io)?;
            Ok(if report.pass() { EXIT_OK } else { EXIT_REFUTED })
        }
        Command::Apply { input, word, point, lift } => {
            dispatch!(load(&input)?, x => apply(&x, &word, &point, lift.into(), out))
        }
        Command::OnX { input, point } => dispatch!(load(&input)?, x => on_x(&x, &point, out)),
        Command::Sample { input, axis, count, seed } => {
            let x = require_fp(load(&input)?)?;
            let a = x.axis(axis).map_err(|e| e.to_string())?;
            let mut text = format!("{}seed: {seed}\naxis: {a}\n", header());
            for t in 0..count {
                let mut rng = seed::rng(seed::derive(seed, t));
                match x.sample_with(a, &mut rng, DEFAULT_ATTEMPTS) {
                    Ok(p) => text.push_str(&format!("{p}\n")),
                    Err(e) => {
                        text.push_str(&format!("{e}\n"));
                        out.write_all(text.as_bytes()).map_err(io)?;
                        return Ok(EXIT_INCONCLUSIVE);
                    }
                }
            }
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::CertifyInertia { input, axis, trials, seed, corrupt_rho, out: path } => {
            let x = require_fp(load(&input)?)?;
            let mut records = Vec::new();
            for a in axes(x.n_factors(), axis)? {
                let mut maps = GeneratorMaps::new(&x);
                if corrupt_rho {
                    let rho = FiberMap::rho(&x, a).map_err(|e| e.to_string())?;
                    let b = &rho.entries()[1];
                    let one = MPoly::constant(Field::one(x.ctx()), b.declared_degree().to_vec());
                    maps.set_rho(a, rho.with_entry(1, b + &one).map_err(|e| e.to_string())?);
                }
                let v = certify::certify_inertia_with(&x, &maps, a, trials, seed).map_err(cert_err)?;
                records.push((format!("certify-inertia axis {a}"), v));
            }
            emit(out, &path, &records, None)
        }
        Command::CertifyAgree { input, axis, trials, seed, out: path } => {
            let x = require_fp(load(&input)?)?;
            let mut records = Vec::new();
            for a in axes(x.n_factors(), axis)? {
                let v = certify::certify_tau_sigma_agree(&x, a, trials, seed).map_err(cert_err)?;
                records.push((format!("certify-agree axis {a}"), v));
            }
            emit(out, &path, &records, None)
        }
        Command::CertifyFree { input, word, trials, seed, out: path } => {
            dispatch!(load(&input)?, x => {
                let w = Word::parse(&word, x.n_factors()).map_err(|e| e.to_string())?;
                let v = certify::certify_nontrivial(&x, &w, trials, seed).map_err(cert_err)?;
                emit(out, &path, &[("certify-free".to_string(), v)], Some(&w))
            })
        }
        Command::OrderCheck { input, axis, kmax, out: path } => {
            dispatch!(load(&input)?, x => {
                let mut records = Vec::new();
                for a in axes(x.n_factors(), axis)? {
                    let v = certify::order_check(&x, a, kmax).map_err(cert_err)?;
                    records.push((format!("order-check axis {a} kmax {kmax}"), v));
                }
                emit(out, &path, &records, None)
            })
        }
        Command::UcCheck { input, word, trials, seed, lift, out: path } => {
            let x = require_fp(load(&input)?)?;
            let w = Word::parse(&word, x.n_factors()).map_err(|e| e.to_string())?;
            let v = certify::uc_oracle_check(&x, &w, trials, seed, lift.into()).map_err(cert_err)?;
            emit(out, &path, &[("uc-check".to_string(), v)], Some(&w))
        }
    }
}

fn apply<F: Field>(x: &MultiQuadric<F>, word: &str, point: &str, lift: Lift, out: &mut dyn Write) -> CmdResult {
    let n = x.n_factors();
    let w = Word::parse(word, n).map_err(|e| e.to_string())?;
    let p = Point::parse(x.ctx(), point, n).map_err(|e| e.to_string())?;
    let maps = GeneratorMaps::new(x);
    let line = match evaluate_word(&maps, &w, &p, lift).map_err(cert_err)? {
        WordOutcome::Point(q) => q.normalized().to_string(),
        WordOutcome::Indeterminate { letter } => {
            format!("indeterminate at letter {} ({})", letter + 1, w.letters()[letter])
        }
    };
    writeln!(out, "{line}").map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}

fn on_x<F: Field>(x: &MultiQuadric<F>, point: &str, out: &mut dyn Write) -> CmdResult {
    let p = Point::parse(x.ctx(), point, x.n_factors()).map_err(|e| e.to_string())?;
    let value = x.value_at(&p).map_err(|e| e.to_string())?;
    let mut text = format!("{}point: {p}\nvalue: {value}\non_x: {}\n", header(), value.is_zero());
    if value.is_zero() {
        let sing = x.singular_at(&p).map_err(|e| e.to_string())?;
        text.push_str(&format!("singular: {sing}\n"));
    }
    out.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}
