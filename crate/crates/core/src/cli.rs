//! Command-line front end. Every command prints one JSON document on stdout.
//!
//! Exit status: 0 on success (including PROVED / HOLDS_ON_ALL_TESTED), 1 when
//! a verification is REFUTED or a catalog check fails, 2 on usage, parse or
//! evaluation errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{bound_fd, bound_fg, bound_rc, BoundResult};
use crate::catalog::{self, check_fact, CatalogEntry};
use crate::engine::{
    kary_standard, search_min_degree, standard, verify, Caps, Mode, Sampler, Side, Verdict,
};
use crate::error::{Error, Result};
use crate::operation::{bivector_bracket, DerivedOperation};
use crate::parse::parse_polynomial;
use crate::poly::{AlgebraContext, Polynomial};
use crate::problem::load_problem;

#[derive(Debug, Parser)]
#[command(name = "derivid", version, about = "Standard identities of derived operations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List built-in operations with their orders, bounds and expected facts.
    Catalog(CatalogArgs),
    /// Evaluate an operation or a standard polynomial on given arguments.
    Eval(EvalArgs),
    /// Check one standard identity.
    Verify(VerifyArgs),
    /// Check standard identities for degrees 2..=max-degree.
    Search(SearchArgs),
    /// Closed-form degree bounds.
    Bound(BoundArgs),
}

#[derive(Debug, Args)]
pub struct OpArgs {
    /// Catalog name (`novikov`, `poisson:2`, `rc:1`, ...) or `bivector:N`.
    #[arg(long, conflicts_with = "problem", required_unless_present = "problem")]
    pub op: Option<String>,
    /// JSON problem file.
    #[arg(long)]
    pub problem: Option<PathBuf>,
    /// Bivector entry `i,j=poly` (1-based, i < j) for `--op bivector:N`.
    #[arg(long)]
    pub omega: Vec<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Random,
    Exhaustive,
    /// Random trials evaluated by both subset DP and permutation sum.
    Crosscheck,
}

#[derive(Debug, Args)]
pub struct SamplerArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 50)]
    pub trials: u64,
    /// Total degree bound of sampled polynomials.
    #[arg(long, default_value_t = 3)]
    pub poly_degree: u32,
    #[arg(long, default_value_t = 5)]
    pub coeff_bound: u32,
    /// Sample weight-homogeneous polynomials.
    #[arg(long)]
    pub homogeneous: bool,
}

impl SamplerArgs {
    fn sampler(&self) -> Sampler {
        Sampler {
            master_seed: self.seed,
            max_degree: self.poly_degree,
            coeff_bound: self.coeff_bound,
            trials: self.trials,
            homogeneous: self.homogeneous,
        }
    }
}

#[derive(Debug, Args)]
pub struct CapArgs {
    #[arg(long, default_value_t = 8)]
    pub naive_cap: usize,
    #[arg(long, default_value_t = 22)]
    pub dp_cap: usize,
    #[arg(long, default_value_t = 10_000_000)]
    pub exhaustive_budget: u64,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        Caps {
            naive: self.naive_cap,
            dp: self.dp_cap,
            exhaustive_budget: self.exhaustive_budget,
        }
    }
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    /// Show a single entry.
    #[arg(long)]
    pub name: Option<String>,
    /// Check every expected fact.
    #[arg(long)]
    pub check: bool,
    /// Override the g-order used by the finite-dimension bound.
    #[arg(long)]
    pub g_order: Option<u64>,
    #[command(flatten)]
    pub sampler: SamplerArgs,
    #[command(flatten)]
    pub caps: CapArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EvalKind {
    /// The operation itself on its k arguments.
    Op,
    /// `s_{d,side}` of a binary operation.
    Standard,
    /// The k-ary standard polynomial with d nested brackets.
    Kary,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub op: OpArgs,
    #[arg(long, value_enum, default_value = "standard")]
    pub kind: EvalKind,
    #[arg(long, value_enum, default_value = "left")]
    pub side: SideArg,
    /// Degree; defaults to the number of arguments (standard) or is derived from it (k-ary).
    #[arg(long)]
    pub degree: Option<usize>,
    /// Argument polynomial literal, in order.
    #[arg(long = "arg", allow_hyphen_values = true)]
    pub args: Vec<String>,
    #[command(flatten)]
    pub caps: CapArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub op: OpArgs,
    #[arg(long, value_enum)]
    pub side: SideArg,
    #[arg(long)]
    pub degree: usize,
    #[arg(long, value_enum, default_value = "random")]
    pub mode: ModeArg,
    #[command(flatten)]
    pub sampler: SamplerArgs,
    #[command(flatten)]
    pub caps: CapArgs,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub op: OpArgs,
    #[arg(long, value_enum)]
    pub side: SideArg,
    /// Largest degree to try.
    #[arg(long)]
    pub max_degree: usize,
    #[command(flatten)]
    pub sampler: SamplerArgs,
    #[command(flatten)]
    pub caps: CapArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TheoremArg {
    Fg,
    Fd,
    Rc,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, value_enum)]
    pub theorem: TheoremArg,
    /// Number of derivations (fg) or bracket index (rc).
    #[arg(long)]
    pub n: Option<u64>,
    /// D-order (fg) or g-order (fd).
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub dim_g: Option<u64>,
    /// Take n and m from an operation instead.
    #[arg(long)]
    pub op: Option<String>,
    /// Override the g-order taken from `--op`.
    #[arg(long)]
    pub g_order: Option<u64>,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn json<T: Serialize>(value: &T, code: i32) -> Self {
        Outcome {
            code,
            stdout: serde_json::to_string_pretty(value).expect("reports serialize") + "\n",
            stderr: String::new(),
        }
    }

    fn error(message: impl std::fmt::Display) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    execute(cli.command).unwrap_or_else(Outcome::error)
}

fn execute(command: Command) -> Result<Outcome> {
    match command {
        Command::Catalog(a) => cmd_catalog(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Search(a) => cmd_search(a),
        Command::Bound(a) => cmd_bound(a),
    }
}

fn parse_omega(ctx: &std::sync::Arc<AlgebraContext>, entries: &[String]) -> Result<BTreeMap<(usize, usize), Polynomial>> {
    let mut omega = BTreeMap::new();
    for e in entries {
        let bad = || Error::InvalidArgument(format!("--omega expects 'i,j=poly', got '{e}'"));
        let (idx, poly) = e.split_once('=').ok_or_else(bad)?;
        let (i, j) = idx.split_once(',').ok_or_else(bad)?;
        let i: usize = i.trim().parse().map_err(|_| bad())?;
        let j: usize = j.trim().parse().map_err(|_| bad())?;
        if i == 0 || j == 0 {
            return Err(bad());
        }
        omega.insert((i - 1, j - 1), parse_polynomial(poly, ctx)?);
    }
    Ok(omega)
}

/// Resolve `--op` / `--problem` to an operation.
pub fn resolve_operation(args: &OpArgs) -> Result<DerivedOperation> {
    if let Some(path) = &args.problem {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Problem(format!("cannot read {}: {e}", path.display())))?;
        return load_problem(&text);
    }
    let name = args
        .op
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("one of --op or --problem is required".into()))?;
    if let Some(n) = name.strip_prefix("bivector:") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad variable count in '{name}'")))?;
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let ctx = AlgebraContext::ungraded(&names)?;
        let omega = parse_omega(&ctx, &args.omega)?;
        return Ok(bivector_bracket(&ctx, &omega)?.with_name(name));
    }
    if !args.omega.is_empty() {
        return Err(Error::InvalidArgument("--omega only applies to --op bivector:N".into()));
    }
    Ok(catalog::lookup(name)?.operation)
}

#[derive(Serialize)]
struct EntryReport {
    name: String,
    description: String,
    variables: Vec<Value>,
    derivations: BTreeMap<String, BTreeMap<String, String>>,
    operation: String,
    orders: crate::operation::OperationOrders,
    lie_dim: Option<u64>,
    bounds: Vec<BoundResult>,
    facts: Vec<crate::catalog::Fact>,
    #[serde(skip_serializing_if = "Option::is_none")]
    checks: Option<Vec<crate::catalog::FactCheck>>,
}

fn entry_report(e: &CatalogEntry, g_order: Option<u64>, checks: Option<Vec<crate::catalog::FactCheck>>) -> EntryReport {
    let ctx = e.context();
    let derivations = e
        .operation
        .algebra()
        .derivations()
        .map(|d| {
            let images = d
                .images()
                .iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .map(|(i, p)| (ctx.name(i).to_string(), p.to_string()))
                .collect();
            (d.name().to_string(), images)
        })
        .collect();
    EntryReport {
        name: e.name.clone(),
        description: e.description.clone(),
        variables: ctx
            .variables()
            .iter()
            .map(|v| json!({"name": v.name, "weight": v.weight}))
            .collect(),
        derivations,
        operation: e.operation.to_string(),
        orders: e.operation.orders(),
        lie_dim: e.lie_dim,
        bounds: e.bounds(g_order),
        facts: e.facts.clone(),
        checks,
    }
}

fn cmd_catalog(a: CatalogArgs) -> Result<Outcome> {
    let entries = match &a.name {
        Some(n) => vec![catalog::lookup(n)?],
        None => catalog::catalog_list(),
    };
    let sampler = a.sampler.sampler();
    let caps = a.caps.caps();
    let mut all_passed = true;
    let mut reports = Vec::new();
    for e in &entries {
        let checks = if a.check {
            let checks = e
                .facts
                .iter()
                .map(|&f| check_fact(e, f, &sampler, &caps))
                .collect::<Result<Vec<_>>>()?;
            all_passed &= checks.iter().all(|c| c.passed);
            Some(checks)
        } else {
            None
        };
        reports.push(entry_report(e, a.g_order, checks));
    }
    Ok(Outcome::json(&reports, if all_passed { 0 } else { 1 }))
}

fn cmd_eval(a: EvalArgs) -> Result<Outcome> {
    let op = resolve_operation(&a.op)?;
    let caps = a.caps.caps();
    let args = a
        .args
        .iter()
        .map(|s| parse_polynomial(s, op.context()))
        .collect::<Result<Vec<_>>>()?;
    let side: Side = a.side.into();
    let (kind, degree, value) = match a.kind {
        EvalKind::Op => ("op", None, op.apply(&args)?),
        EvalKind::Standard => {
            let d = a.degree.unwrap_or(args.len());
            if args.len() != d {
                return Err(Error::InvalidArgument(format!("degree {d} needs {d} arguments, got {}", args.len())));
            }
            ("standard", Some(d), standard(&op, side, d, &args, &caps)?)
        }
        EvalKind::Kary => {
            let k1 = op.arity() - 1;
            let d = match a.degree {
                Some(d) => d,
                None if args.len() % k1 == 1 % k1 && !args.is_empty() => (args.len() - 1) / k1,
                None => {
                    return Err(Error::InvalidArgument(format!(
                        "{} arguments do not fit d*(k-1)+1 for k = {}",
                        args.len(),
                        op.arity()
                    )))
                }
            };
            ("kary", Some(d), kary_standard(&op, d, &args, &caps)?)
        }
    };
    let mut report = json!({
        "operation": op.name(),
        "kind": kind,
        "args": a.args.iter().zip(&args).map(|(_, p)| p.to_string()).collect::<Vec<_>>(),
        "value": value.to_string(),
    });
    if let Some(d) = degree {
        report["degree"] = json!(d);
    }
    if matches!(a.kind, EvalKind::Standard) {
        report["side"] = json!(side);
    }
    Ok(Outcome::json(&report, 0))
}

fn cmd_verify(a: VerifyArgs) -> Result<Outcome> {
    let op = resolve_operation(&a.op)?;
    let mode = match a.mode {
        ModeArg::Random => Mode::Random,
        ModeArg::Exhaustive => Mode::Exhaustive,
        ModeArg::Crosscheck => Mode::CrossCheck,
    };
    let report = verify(&op, a.side.into(), a.degree, mode, &a.sampler.sampler(), &a.caps.caps())?;
    let code = if report.verdict == Verdict::Refuted { 1 } else { 0 };
    Ok(Outcome::json(&report, code))
}

fn cmd_search(a: SearchArgs) -> Result<Outcome> {
    let op = resolve_operation(&a.op)?;
    let report = search_min_degree(&op, a.side.into(), a.max_degree, &a.sampler.sampler(), &a.caps.caps())?;
    Ok(Outcome::json(&report, 0))
}

fn cmd_bound(a: BoundArgs) -> Result<Outcome> {
    let from_op = match &a.op {
        Some(name) => Some(catalog::lookup(name)?),
        None => None,
    };
    let need = |v: Option<u64>, flag: &str| v.ok_or_else(|| Error::InvalidArgument(format!("--{flag} is required")));
    let result = match a.theorem {
        TheoremArg::Fg => {
            let (n, m) = match &from_op {
                Some(e) => (
                    a.n.unwrap_or(e.operation.algebra().num_derivations() as u64),
                    a.m.unwrap_or(e.operation.orders().total as u64),
                ),
                None => (need(a.n, "n")?, need(a.m, "m")?),
            };
            bound_fg(n, m)?
        }
        TheoremArg::Fd => {
            let (dim, m) = match &from_op {
                Some(e) => (
                    match a.dim_g.or(e.lie_dim) {
                        Some(d) => d,
                        None => need(None, "dim-g")?,
                    },
                    a.g_order.or(a.m).unwrap_or(e.operation.orders().total as u64),
                ),
                None => (need(a.dim_g, "dim-g")?, need(a.g_order.or(a.m), "m")?),
            };
            bound_fd(dim, m)?
        }
        TheoremArg::Rc => bound_rc(need(a.n, "n")?)?,
    };
    Ok(Outcome::json(&result, 0))
}
