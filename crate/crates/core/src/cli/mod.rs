//! The `polycyclic` command line.

mod parse;
mod report;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

pub use parse::{parse_field_element, parse_field_poly, parse_list, parse_poly, parse_rtpoly, MAX_UNREDUCED_DEGREE};
pub use report::{write_census_csv, write_sweep_csv, Envelope, RingInfo, Timestamps, SCHEMA_VERSION};

use crate::algebra::FieldCtx;
use crate::code::Code;
use crate::constacyclic::SigmaMap;
use crate::error::Error;
use crate::exec::Exec;
use crate::oracle::{self, Prop, SweepGrid};
use crate::quotient::RingCtx;
use crate::text;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;
pub const EXIT_INVARIANT: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "polycyclic", version, about = "Polycyclic codes over F_{p^m}[u]/<u^t>")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Torsion profile, cardinality and canonical generators of an ideal.
    Analyze {
        #[command(flatten)]
        ring: RingArgs,
        /// Semicolon-separated generators.
        #[arg(long)]
        gens: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Enumerate every ideal and check its invariants.
    Census {
        #[command(flatten)]
        ring: RingArgs,
        /// Largest ring size to enumerate; defaults to CHAINRING_CAP or 65536.
        #[arg(long)]
        cap: Option<u128>,
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare a closed form for L with direct search.
    Sweep {
        #[arg(long)]
        prop: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        s: u32,
        #[arg(long, default_value = "x-1")]
        f: String,
        /// h ranges over 0 and the units supported below f^h_support.
        #[arg(long, default_value_t = 2)]
        h_support: usize,
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Transfer cyclic codes to λ-constacyclic ones.
    Sigma {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        lambda: String,
        /// Semicolon-separated generators in R^{t,(x-1)^{p^s}}.
        #[arg(long, required_unless_present = "all")]
        gens: Option<String>,
        /// Transfer every ideal of the source ring instead.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        cap: Option<u128>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug)]
pub struct RingArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    #[arg(long)]
    pub t: usize,
    #[arg(long, required_unless_present = "omega")]
    pub s: Option<u32>,
    #[arg(long, default_value = "x-1")]
    pub f: String,
    /// An arbitrary ω over R^t in place of f^{p^s}.
    #[arg(long, conflicts_with = "s")]
    pub omega: Option<String>,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Write JSON here instead of stdout.
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Record wall-clock start and finish times.
    #[arg(long)]
    pub timestamps: bool,
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::DivisionByZero
        | Error::ContextMismatch
        | Error::BothZero
        | Error::AmbiguousBranch { .. }
        | Error::NegativeExponent { .. } => EXIT_INVARIANT,
        _ => EXIT_INPUT,
    }
}

fn build_ring(args: &RingArgs) -> Result<Arc<RingCtx>, Error> {
    let field = FieldCtx::new(args.p, args.m, None)?;
    match (&args.omega, args.s) {
        (Some(omega), _) => {
            let w = parse_rtpoly(omega, &field, args.t)?;
            RingCtx::new(field, args.t, &w)
        }
        (None, Some(s)) => {
            let f = parse_field_poly(&args.f, &field)?;
            RingCtx::special(field, args.t, &f, s)
        }
        (None, None) => Err(Error::ConstraintViolation("either --s or --omega is required".into())),
    }
}

fn special_ring(p: u64, m: usize, t: usize, s: u32, f: &str) -> Result<Arc<RingCtx>, Error> {
    build_ring(&RingArgs { p, m, t, s: Some(s), f: f.to_string(), omega: None })
}

fn cap_or_env(cap: Option<u128>) -> Result<u128, Error> {
    match cap {
        Some(c) => Ok(c),
        None => oracle::cap_from_env(),
    }
}

fn exec(sequential: bool) -> Exec {
    if sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

#[derive(Serialize)]
struct Analysis {
    generators: Vec<String>,
    rank: usize,
    card_exponent: usize,
    is_zero: bool,
    is_unit: bool,
    torsion_ranks: Vec<usize>,
    torsion_profile: Option<Vec<usize>>,
    canonical_generators: Option<Vec<String>>,
    type_signature: Option<Vec<usize>>,
}

fn analyze(ctx: &Arc<RingCtx>, gens: &str) -> Result<Analysis, Error> {
    let gens = parse_list(gens, ctx)?;
    let code = Code::from_gens(ctx, gens.clone())?;
    let torsion_ranks = (0..ctx.t()).map(|i| code.torsion(i).map(|c| c.rank())).collect::<Result<_, _>>()?;
    let special = ctx.special_data().is_some();
    let canonical = if !special {
        None
    } else if code.is_zero() {
        Some(Vec::new())
    } else if code.is_unit_ideal() {
        Some(vec!["1".to_string()])
    } else {
        Some(code.extract_canonical()?.iter().map(text::quot_elem).collect())
    };
    Ok(Analysis {
        generators: gens.iter().map(text::quot_elem).collect(),
        rank: code.rank(),
        card_exponent: code.card_exponent(),
        is_zero: code.is_zero(),
        is_unit: code.is_unit_ideal(),
        torsion_ranks,
        torsion_profile: if special { Some(code.torsion_profile()?.0) } else { None },
        canonical_generators: canonical,
        type_signature: if special { Some(code.type_signature()?) } else { None },
    })
}

#[derive(Serialize)]
struct Transfer {
    lambda: String,
    lambda0: String,
    target_omega: String,
    codes: Vec<TransferredCode>,
    source_ideals: Option<usize>,
    target_ideals: Option<usize>,
    distinct_images: Option<usize>,
    all_preserved: bool,
}

#[derive(Serialize)]
struct TransferredCode {
    generators: Vec<String>,
    images: Vec<String>,
    card_exponent: usize,
    image_card_exponent: usize,
    image_is_ideal: bool,
    round_trip: bool,
}

fn transfer_one(map: &SigmaMap, code: &Code) -> Result<TransferredCode, Error> {
    let image = map.transfer_code(code)?;
    let images = code.gens().iter().map(|g| map.apply(g)).collect::<Result<Vec<_>, _>>()?;
    let back = images.iter().map(|g| map.inverse(g)).collect::<Result<Vec<_>, _>>()?;
    Ok(TransferredCode {
        generators: code.gens().iter().map(text::quot_elem).collect(),
        images: images.iter().map(text::quot_elem).collect(),
        card_exponent: code.card_exponent(),
        image_card_exponent: image.card_exponent(),
        image_is_ideal: image.is_ideal(),
        round_trip: back == code.gens(),
    })
}

struct Outcome {
    ring: Arc<RingCtx>,
    payload: Value,
    code: i32,
    csv: Option<Box<dyn FnOnce(File) -> csv::Result<()>>>,
}

fn run_command(command: &Command) -> Result<Outcome, Error> {
    match command {
        Command::Analyze { ring, gens, .. } => {
            let ctx = build_ring(ring)?;
            let a = analyze(&ctx, gens)?;
            Ok(Outcome { payload: serde_json::to_value(a).expect("serializes"), ring: ctx, code: EXIT_OK, csv: None })
        }
        Command::Census { ring, cap, sequential, .. } => {
            let ctx = build_ring(ring)?;
            let rep = oracle::census(&ctx, cap_or_env(*cap)?, exec(*sequential))?;
            let code = if rep.passed() { EXIT_OK } else { EXIT_INVARIANT };
            let payload = serde_json::to_value(&rep).expect("serializes");
            Ok(Outcome {
                ring: ctx,
                payload,
                code,
                csv: Some(Box::new(move |f| write_census_csv(f, &rep))),
            })
        }
        Command::Sweep { prop, p, m, s, f, h_support, sequential, .. } => {
            let prop = Prop::parse(prop)
                .ok_or_else(|| Error::ConstraintViolation(format!("unknown proposition '{prop}'")))?;
            let ctx = special_ring(*p, *m, 4, *s, f)?;
            let rep = oracle::param_sweep(prop, &ctx, SweepGrid { h_support: *h_support }, exec(*sequential))?;
            let code = if rep.all_matched() { EXIT_OK } else { EXIT_MISMATCH };
            let payload = serde_json::to_value(&rep).expect("serializes");
            Ok(Outcome { ring: ctx, payload, code, csv: Some(Box::new(move |f| write_sweep_csv(f, &rep))) })
        }
        Command::Sigma { p, m, t, s, lambda, gens, all, cap, .. } => {
            let field = FieldCtx::new(*p, *m, None)?;
            let lambda = parse_field_element(lambda, &field)?;
            let map = SigmaMap::new(field.clone(), *t, *s, lambda)?;
            let (codes, counts) = if *all {
                let cap = cap_or_env(*cap)?;
                let src = oracle::enumerate_ideals(&map.source, cap, Exec::Parallel)?;
                let tgt = oracle::enumerate_ideals(&map.target, cap, Exec::Parallel)?;
                let images = src.iter().map(|c| map.transfer_code(c)).collect::<Result<Vec<_>, _>>()?;
                let distinct: std::collections::HashSet<_> = images.iter().map(|c| c.basis().clone()).collect();
                (src, Some((tgt.len(), distinct.len())))
            } else {
                let gens = parse_list(gens.as_deref().unwrap_or(""), &map.source)?;
                (vec![Code::from_gens(&map.source, gens)?], None)
            };
            let codes = codes.iter().map(|c| transfer_one(&map, c)).collect::<Result<Vec<_>, _>>()?;
            let mut all_preserved = codes
                .iter()
                .all(|c| c.image_is_ideal && c.round_trip && c.card_exponent == c.image_card_exponent);
            if let Some((target, distinct)) = counts {
                all_preserved &= target == codes.len() && distinct == codes.len();
            }
            let report = Transfer {
                lambda: text::field_element(&field, lambda),
                lambda0: text::field_element(&field, map.lambda0),
                target_omega: text::rt_poly(&field, map.target.omega()),
                source_ideals: counts.map(|_| codes.len()),
                target_ideals: counts.map(|c| c.0),
                distinct_images: counts.map(|c| c.1),
                codes,
                all_preserved,
            };
            let code = if all_preserved { EXIT_OK } else { EXIT_INVARIANT };
            Ok(Outcome {
                ring: map.source.clone(),
                payload: serde_json::to_value(report).expect("serializes"),
                code,
                csv: None,
            })
        }
    }
}

fn name(command: &Command) -> &'static str {
    match command {
        Command::Analyze { .. } => "analyze",
        Command::Census { .. } => "census",
        Command::Sweep { .. } => "sweep",
        Command::Sigma { .. } => "sigma",
    }
}

fn output(command: &Command) -> &OutputArgs {
    match command {
        Command::Analyze { out, .. }
        | Command::Census { out, .. }
        | Command::Sweep { out, .. }
        | Command::Sigma { out, .. } => out,
    }
}

/// Runs the CLI on `args` (without the program name) and returns the
/// process exit code.
pub fn run<W: Write, E: Write>(args: Vec<String>, stdout: &mut W, stderr: &mut E) -> i32 {
    let argv = std::iter::once("polycyclic".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = write!(if e.use_stderr() { stderr as &mut dyn Write } else { stdout }, "{e}");
            return code;
        }
    };
    let started = report::now_ms();
    let out = output(&cli.command);
    let outcome = match run_command(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let envelope = Envelope {
        schema_version: SCHEMA_VERSION,
        command: name(&cli.command).to_string(),
        args,
        ring: RingInfo::of(&outcome.ring),
        payload: outcome.payload,
        timestamps: out.timestamps.then(|| Timestamps { started_unix_ms: started, finished_unix_ms: report::now_ms() }),
    };
    let json = envelope.to_json();
    let written = match &out.json {
        Some(path) => std::fs::write(path, &json),
        None => stdout.write_all(json.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write report: {e}");
        return EXIT_INPUT;
    }
    if let (Some(path), Some(write_csv)) = (&out.csv, outcome.csv) {
        let res = File::create(path).map_err(csv::Error::from).and_then(write_csv);
        if let Err(e) = res {
            let _ = writeln!(stderr, "error: cannot write csv: {e}");
            return EXIT_INPUT;
        }
    }
    outcome.code
}

pub fn main() -> i32 {
    run(std::env::args().skip(1).collect(), &mut io::stdout().lock(), &mut io::stderr().lock())
}
