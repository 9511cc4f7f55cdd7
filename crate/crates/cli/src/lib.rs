//! Command-line front end for the sub-Hankel verification suites.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

use subhankel_core::exact::rational::int;
use subhankel_core::exact::{parse_poly_infer, ExactError, Rational};
use subhankel_core::legendre::{verify_ml_closed_form, verify_ml_pointwise, Direction, WeightPair};
use subhankel_core::orthopoly::{self, Identity, SHIdentityReport};
use subhankel_core::report::{IdentityReport, Status};
use subhankel_core::space::{CharacterWeight, SubHankelSpace, DEFAULT_SEED};
use subhankel_core::weyl::{
    conjecture_a_check, conjecture_b_check, euler_check, factor_linear, polarize_times,
    BFunctionReport,
};

/// Failures listed per identity batch in a report.
const MAX_FAILURES: usize = 10;

#[derive(Parser, Debug)]
#[command(name = "subhankel", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Record `elapsed_ms` in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirectionArg {
    PToQ,
    QToP,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::PToQ => Direction::PToQ,
            DirectionArg::QToP => Direction::QToP,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvariantName {
    P1,
    P2,
    Q1,
    Q2,
}

impl InvariantName {
    fn label(self) -> &'static str {
        match self {
            InvariantName::P1 => "P1",
            InvariantName::P2 => "P2",
            InvariantName::Q1 => "Q1",
            InvariantName::Q2 => "Q2",
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Relative invariants P1, P2, Q1, Q2 and their characters.
    Invariants {
        #[arg(short, value_parser = parse_r)]
        r: usize,
    },
    /// Structure constants of the Lie algebra and preservation of the pattern.
    VerifyLie {
        #[arg(short, value_parser = parse_r)]
        r: usize,
    },
    /// Infinitesimal and group invariance of the relative invariants.
    VerifyInvariance {
        #[arg(short, value_parser = parse_r)]
        r: usize,
        /// Restrict to one invariant.
        #[arg(long, value_enum)]
        invariant: Option<InvariantName>,
        /// Character weight `s1,s2` to test instead of the stored one.
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        us: Option<(i64, i64)>,
        #[arg(long, default_value_t = 100, value_parser = parse_samples)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Multiplicative Legendre transform: closed forms, or pointwise with `--us`.
    VerifyMl {
        #[arg(short, value_parser = parse_r)]
        r: usize,
        /// Only this direction (default: both).
        #[arg(long, value_enum)]
        direction: Option<DirectionArg>,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        us: Option<(i64, i64)>,
        #[arg(long, default_value_t = 10, value_parser = parse_samples)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// b-function of the dual operator acting on `P1^{r-1} P2^{2r-r^2}`.
    VerifyBfun {
        #[arg(short, value_parser = parse_r)]
        r: usize,
    },
    /// Sub-Hankel determinants of recurrent polynomial families.
    VerifyOrthopoly {
        /// One identity (default: all).
        #[arg(long, value_parser = parse_identity)]
        family: Option<Identity>,
        /// One size (default: 2..=5).
        #[arg(short, value_parser = parse_r)]
        r: Option<usize>,
        /// One shift (default: 0..=3).
        #[arg(short)]
        n: Option<usize>,
    },
    /// k-fold polarization of a polynomial.
    Polarize {
        poly: String,
        #[arg(short, default_value_t = 1)]
        k: usize,
    },
    /// b-function of the k-fold polarization of P1.
    #[command(name = "verify-conjB")]
    VerifyConjB {
        #[arg(short, value_parser = parse_r)]
        r: usize,
        #[arg(short, default_value_t = 1)]
        k: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Invariants { .. } => "invariants",
            Command::VerifyLie { .. } => "verify-lie",
            Command::VerifyInvariance { .. } => "verify-invariance",
            Command::VerifyMl { .. } => "verify-ml",
            Command::VerifyBfun { .. } => "verify-bfun",
            Command::VerifyOrthopoly { .. } => "verify-orthopoly",
            Command::Polarize { .. } => "polarize",
            Command::VerifyConjB { .. } => "verify-conjB",
        }
    }
}

fn parse_r(s: &str) -> Result<usize, String> {
    let r: usize = s.parse().map_err(|e| format!("{e}"))?;
    if r < 2 {
        return Err("r must be at least 2".into());
    }
    Ok(r)
}

fn parse_samples(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n == 0 {
        return Err("samples must be at least 1".into());
    }
    Ok(n)
}

fn parse_weight(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| "expected `s1,s2`".to_string())?;
    let a = a.trim().parse().map_err(|e| format!("s1: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("s2: {e}"))?;
    Ok((a, b))
}

fn parse_identity(s: &str) -> Result<Identity, String> {
    s.parse()
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ExactError),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub command: String,
    pub status: String,
    pub details: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CheckReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\nstatus: {}\n", self.command, self.status);
        if let Value::Object(map) = &self.details {
            for (key, value) in map {
                write_text(&mut out, key, value);
            }
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed_ms: {ms}");
        }
        out
    }
}

fn write_text(out: &mut String, key: &str, value: &Value) {
    match value {
        Value::Array(rows) => {
            let _ = writeln!(out, "{key}:");
            for row in rows {
                let _ = writeln!(out, "  - {}", inline(row));
            }
        }
        other => {
            let _ = writeln!(out, "{key}: {}", inline(other));
        }
    }
}

fn inline(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}={}", inline(v)))
            .collect::<Vec<_>>()
            .join(" "),
        Value::Array(items) => format!(
            "[{}]",
            items.iter().map(inline).collect::<Vec<_>>().join(", ")
        ),
        other => other.to_string(),
    }
}

/// A finished check with its process exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: CheckReport,
    pub exit_code: i32,
}

/// 0 for pass, pass-up-to-sign and unit constant ratios; 1 for failures;
/// 2 for unsupported computations.
pub fn exit_code(status: Status, unit_ratio: bool) -> i32 {
    match status {
        Status::Pass | Status::PassUpToSign => 0,
        Status::ConstantRatio if unit_ratio => 0,
        Status::ConstantRatio | Status::Fail => 1,
        Status::Unsupported => 2,
    }
}

/// Worst of several outcomes.
pub fn combine(statuses: impl IntoIterator<Item = Status>) -> Status {
    let rank = |s: Status| match s {
        Status::Pass => 0,
        Status::PassUpToSign => 1,
        Status::ConstantRatio => 2,
        Status::Unsupported => 3,
        Status::Fail => 4,
    };
    statuses
        .into_iter()
        .max_by_key(|s| rank(*s))
        .unwrap_or(Status::Pass)
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let (status, unit_ratio, details) = dispatch(&cli.command)?;
    let report = CheckReport {
        command: cli.command.name().to_string(),
        status: status.as_str().to_string(),
        details,
        elapsed_ms: cli
            .output
            .timing
            .then(|| start.elapsed().as_millis() as u64),
    };
    if let Some(path) = &cli.output.output {
        std::fs::write(path, report.to_json() + "\n")?;
    }
    Ok(Outcome {
        exit_code: exit_code(status, unit_ratio),
        report,
    })
}

type Dispatched = (Status, bool, Value);

fn dispatch(command: &Command) -> Result<Dispatched, CliError> {
    match command {
        Command::Invariants { r } => invariants(*r),
        Command::VerifyLie { r } => verify_lie(*r),
        Command::VerifyInvariance {
            r,
            invariant,
            us,
            samples,
            seed,
        } => verify_invariance(*r, *invariant, *us, *samples, *seed),
        Command::VerifyMl {
            r,
            direction,
            us,
            samples,
            seed,
        } => verify_ml(*r, *direction, *us, *samples, *seed),
        Command::VerifyBfun { r } => verify_bfun(*r),
        Command::VerifyOrthopoly { family, r, n } => verify_orthopoly(*family, *r, *n),
        Command::Polarize { poly, k } => polarize(poly, *k),
        Command::VerifyConjB { r, k } => {
            let rep = conjecture_b_check(*r, *k)?;
            let status = rep.status;
            Ok((status, false, bfunction_json(&rep)))
        }
    }
}

fn q(x: &Rational) -> Value {
    Value::String(x.to_string())
}

fn opt_q(x: &Option<Rational>) -> Value {
    x.as_ref().map(q).unwrap_or(Value::Null)
}

fn identity_json(rep: &IdentityReport) -> Value {
    json!({
        "status": rep.status().as_str(),
        "checked": rep.checked,
        "failures": rep.failures.iter().take(MAX_FAILURES).collect::<Vec<_>>(),
    })
}

fn weight_str(w: &CharacterWeight) -> String {
    w.to_string()
}

fn invariants(r: usize) -> Result<Dispatched, CliError> {
    let space = SubHankelSpace::new(r)?;
    let inv = space.invariants();
    let rows: Vec<Value> = inv
        .entries()
        .into_iter()
        .map(|(name, poly, weight, _)| {
            json!({
                "name": name,
                "weight": weight_str(&weight),
                "poly": poly.to_string(),
            })
        })
        .collect();
    let details = json!({
        "r": r,
        "dim": space.dim(),
        "invariants": rows,
        "q1_normalization": q(&inv.q1_norm),
    });
    Ok((Status::Pass, false, details))
}

fn verify_lie(r: usize) -> Result<Dispatched, CliError> {
    let space = SubHankelSpace::new(r)?;
    let brackets = space.verify_structure_constants();
    let pattern = space.verify_pattern_preservation();
    let status = combine([brackets.status(), pattern.status()]);
    let details = json!({
        "r": r,
        "structure_constants": identity_json(&brackets),
        "pattern_preservation": identity_json(&pattern),
    });
    Ok((status, false, details))
}

fn verify_invariance(
    r: usize,
    only: Option<InvariantName>,
    us: Option<(i64, i64)>,
    samples: usize,
    seed: u64,
) -> Result<Dispatched, CliError> {
    if us.is_some() && only.is_none() {
        return Err(CliError::Usage("--us requires --invariant".into()));
    }
    let space = SubHankelSpace::new(r)?;
    let inv = space.invariants();
    let mut statuses = Vec::new();
    let mut rows = Vec::new();
    for (name, poly, stored, side) in inv.entries() {
        if only.is_some_and(|o| o.label() != name) {
            continue;
        }
        let weight = us
            .map(|(a, b)| CharacterWeight::ints(a, b))
            .unwrap_or(stored);
        let inf = space.verify_infinitesimal_invariance(poly, &weight, side);
        let grp = space.verify_group_invariance(poly, &weight, side, samples, seed);
        statuses.extend([inf.status(), grp.status()]);
        rows.push(json!({
            "name": name,
            "weight": weight_str(&weight),
            "infinitesimal": identity_json(&inf),
            "group": identity_json(&grp),
        }));
    }
    let mut details = Map::new();
    details.insert("r".into(), json!(r));
    details.insert("samples".into(), json!(samples));
    details.insert("seed".into(), json!(seed));
    details.insert("invariants".into(), Value::Array(rows));
    if only.is_none() {
        let inf = space.verify_determinant_characters();
        let grp = space.verify_determinant_characters_group(samples, seed);
        statuses.extend([inf.status(), grp.status()]);
        details.insert(
            "determinant_characters".into(),
            json!({ "infinitesimal": identity_json(&inf), "group": identity_json(&grp) }),
        );
    }
    Ok((combine(statuses), false, Value::Object(details)))
}

fn verify_ml(
    r: usize,
    direction: Option<DirectionArg>,
    us: Option<(i64, i64)>,
    samples: usize,
    seed: u64,
) -> Result<Dispatched, CliError> {
    let space = SubHankelSpace::new(r)?;
    let mut statuses = Vec::new();
    let mut rows = Vec::new();
    let mut details = Map::new();
    details.insert("r".into(), json!(r));
    if let Some((s1, s2)) = us {
        let rep = verify_ml_pointwise(&space, WeightPair::new(s1, s2), samples, seed)?;
        statuses.push(rep.status);
        rows.push(json!({
            "mode": "pointwise",
            "us": format!("({s1}, {s2})"),
            "status": rep.status.as_str(),
            "constant": opt_q(&rep.constant),
            "expected": opt_q(&rep.expected),
            "samples": rep.samples,
            "seed": seed,
            "witness": rep.witness,
        }));
    } else {
        let dirs = match direction {
            Some(d) => vec![Direction::from(d)],
            None => vec![Direction::PToQ, Direction::QToP],
        };
        for d in dirs {
            let rep = verify_ml_closed_form(&space, d);
            statuses.push(rep.status);
            rows.push(json!({
                "mode": "closed-form",
                "direction": d.as_str(),
                "status": rep.status.as_str(),
                "constant": opt_q(&rep.constant),
                "expected": opt_q(&rep.expected),
                "witness": rep.witness,
            }));
        }
    }
    details.insert("checks".into(), Value::Array(rows));
    Ok((combine(statuses), false, Value::Object(details)))
}

fn bfunction_json(rep: &BFunctionReport) -> Value {
    json!({
        "r": rep.r,
        "k": rep.k,
        "b": rep.b.as_ref().map(|b| b.to_string()),
        "b_factored": rep.b.as_ref().map(|b| factor_linear(b).to_string()),
        "predicted": rep.predicted.to_string(),
        "predicted_factored": factor_linear(&rep.predicted).to_string(),
        "diagnostic": rep.diagnostic,
    })
}

fn verify_bfun(r: usize) -> Result<Dispatched, CliError> {
    let rep = conjecture_a_check(r)?;
    let (euler_ok, factor) = euler_check(r)?;
    let mut details = bfunction_json(&rep);
    details["euler"] = json!({ "holds": euler_ok, "factor": factor.to_string() });
    let euler_status = if euler_ok { Status::Pass } else { Status::Fail };
    Ok((combine([rep.status, euler_status]), false, details))
}

fn orthopoly_row(rep: &SHIdentityReport) -> Value {
    json!({
        "family": rep.identity.name(),
        "r": rep.r,
        "n": rep.n,
        "status": rep.status.as_str(),
        "ratio": opt_q(&rep.ratio),
        "hankel_vanishes": rep.hankel_vanishes,
    })
}

fn is_unit(ratio: &Option<Rational>) -> bool {
    ratio
        .as_ref()
        .is_some_and(|c| *c == int(1) || *c == int(-1))
}

fn verify_orthopoly(
    family: Option<Identity>,
    r: Option<usize>,
    n: Option<usize>,
) -> Result<Dispatched, CliError> {
    if let (Some(id), Some(r), Some(n)) = (family, r, n) {
        let rep = orthopoly::verify_identity(id, r, n);
        let mut row = orthopoly_row(&rep);
        row["lhs"] = json!(rep.lhs.to_string());
        row["rhs"] = json!(rep.rhs.to_string());
        row["quotient"] = json!(rep.quotient.as_ref().map(|p| p.to_string()));
        row["witness"] = json!(rep.witness);
        let hankel_ok = rep.hankel_vanishes != Some(false);
        let status = if hankel_ok {
            rep.status()
        } else {
            Status::Fail
        };
        return Ok((status, is_unit(&rep.ratio), row));
    }
    let identities: Vec<Identity> = family.map(|f| vec![f]).unwrap_or(Identity::ALL.to_vec());
    let rs: Vec<usize> = r.map(|r| vec![r]).unwrap_or((2..=5).collect());
    let ns: Vec<usize> = n.map(|n| vec![n]).unwrap_or((0..=3).collect());
    let grids: Vec<Vec<SHIdentityReport>> = identities
        .par_iter()
        .map(|id| orthopoly::verify_grid(*id, rs.iter().copied(), ns.iter().copied()))
        .collect();
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    let mut statuses = Vec::new();
    let mut all_unit = true;
    for grid in &grids {
        for chunk in grid.chunks(ns.len()) {
            let common = orthopoly::common_ratio(chunk);
            all_unit &= is_unit(&common);
            let hankel = chunk.iter().all(|rep| rep.hankel_vanishes != Some(false));
            let status = match (&common, hankel) {
                (_, false) | (None, _) => Status::Fail,
                (Some(c), true) if *c == int(1) => Status::Pass,
                _ => Status::ConstantRatio,
            };
            statuses.push(status);
            summary.push(json!({
                "family": chunk[0].identity.name(),
                "r": chunk[0].r,
                "status": status.as_str(),
                "ratio": opt_q(&common),
            }));
        }
        rows.extend(grid.iter().map(orthopoly_row));
    }
    let details = json!({ "rows": rows, "summary": summary });
    Ok((combine(statuses), all_unit, details))
}

fn polarize(text: &str, k: usize) -> Result<Dispatched, CliError> {
    let f = parse_poly_infer(text)?;
    let big = polarize_times(&f, k);
    let details = json!({
        "input": f.to_string(),
        "k": k,
        "variables": big.context().names(),
        "output": big.to_string(),
        "homogeneous": big.is_homogeneous(),
    });
    Ok((Status::Pass, false, details))
}
