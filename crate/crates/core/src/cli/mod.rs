//! The `floer` command line.
//!
//! Exit codes: 0 success, 1 domain error (including an invalid polytope in
//! `validate` and a failing `selftest`), 2 parse or usage error, 3 search
//! budget exceeded. Reports go to stdout; timing and errors go to stderr so
//! that exact runs produce byte-identical output.

mod input;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::floer::{self, FloerError};
use crate::gf2bar::Field;
use crate::novikov::RankMethod;
use crate::polytope::{self, FanoPolytope, InteriorPoint};
use crate::potential::{self, PotentialError, RhoAssignment, RhoFile, SearchOptions};
use crate::selftest;

pub use input::{load_polytope, load_rho, parse_json, RhoSource};
pub use report::{HfEntry, HfSummary, JobSpec, Payload, Report};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("{file}:{line}:{column}: {}{message}", field.as_ref().map(|f| format!("field `{f}`: ")).unwrap_or_default())]
    Parse {
        file: String,
        line: usize,
        column: usize,
        field: Option<String>,
        message: String,
    },
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Parse { .. } | CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<PotentialError> for CliError {
    fn from(e: PotentialError) -> Self {
        match e {
            PotentialError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<FloerError> for CliError {
    fn from(e: FloerError) -> Self {
        match e {
            FloerError::Potential(p) => p.into(),
            other => CliError::Domain(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    Probabilistic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Check a polytope and interior point, listing every problem found.
    Validate,
    /// Facet energies <c, v_j> - lambda_j.
    Energies,
    /// Local systems with vanishing gradient, searched up to GF(2^max-degree).
    CriticalPoints,
    /// Floer cohomology rank at a local system (or at every critical point with --rho search).
    Hf,
    /// Intersection bound from the doubled local system on P x P.
    ProductBound,
    /// Reproduce a worked example: blowup_cp3, odd_cpn, even_cpn, rp_product, product_bound.
    Example { name: String },
    /// Run the acceptance checks.
    Selftest,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Energies => "energies",
            Command::CriticalPoints => "critical-points",
            Command::Hf => "hf",
            Command::ProductBound => "product-bound",
            Command::Example { .. } => "example",
            Command::Selftest => "selftest",
        }
    }
}

#[derive(Debug, Clone, Parser)]
#[command(name = "floer", version, about = "Floer cohomology of toric fibers twisted by local systems over GF(2^m)")]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
    /// Polytope file, or builtin:NAME (cpn(k), blowup_cp3, rp_product(k,j)).
    #[arg(long, global = true)]
    pub polytope: Option<String>,
    /// Local-system file, `trivial`, or `search`.
    #[arg(long, global = true, default_value = "trivial")]
    pub rho: String,
    #[arg(long, global = true, default_value_t = 8)]
    pub max_degree: u32,
    #[arg(long, global = true, value_enum, default_value_t = Method::Exact)]
    pub method: Method,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for the probabilistic rank.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

impl Args {
    pub fn job(&self) -> JobSpec {
        JobSpec {
            command: self.command.name().to_string(),
            example: match &self.command {
                Command::Example { name } => Some(name.clone()),
                _ => None,
            },
            polytope: self.polytope.clone(),
            rho: self.rho.clone(),
            max_degree: self.max_degree,
            method: format!("{:?}", self.method).to_lowercase(),
            format: format!("{:?}", self.format).to_lowercase(),
            seed: self.seed,
        }
    }

    fn rank_method(&self) -> RankMethod {
        match self.method {
            Method::Exact => RankMethod::Exact,
            Method::Probabilistic => RankMethod::Probabilistic { seed: self.seed },
        }
    }

    fn search_options(&self) -> SearchOptions {
        SearchOptions {
            max_degree: self.max_degree,
            ..SearchOptions::default()
        }
    }

    fn polytope(&self) -> Result<(FanoPolytope, InteriorPoint), CliError> {
        let source = self
            .polytope
            .as_deref()
            .ok_or_else(|| CliError::Usage(format!("{} needs --polytope", self.command.name())))?;
        load_polytope(source)
    }
}

pub fn run(args: &Args) -> Result<Report, CliError> {
    let result = match &args.command {
        Command::Validate => {
            let (p, c) = args.polytope()?;
            let diagnostics = polytope::validate(&p, &c);
            Payload::Validation {
                valid: diagnostics.is_valid(),
                diagnostics: diagnostics.issues,
            }
        }
        Command::Energies => {
            let (p, c) = args.polytope()?;
            Payload::Energies {
                energies: polytope::energies(&p, &c).map_err(|e| CliError::Domain(e.to_string()))?,
            }
        }
        Command::CriticalPoints => {
            let (p, c) = args.polytope()?;
            let found = potential::find_critical(&p, &c, &args.search_options())?;
            Payload::CriticalPoints {
                points: found.iter().map(Into::into).collect(),
            }
        }
        Command::Hf => {
            let (p, c) = args.polytope()?;
            let mut entries = Vec::new();
            for (label, rho) in local_systems(args, &p, &c, true)? {
                let hf = floer::hf_rank(&p, &c, &rho, args.rank_method())?;
                entries.push(entry(label, &rho, &hf));
            }
            Payload::Hf { entries }
        }
        Command::ProductBound => {
            let (p, c) = args.polytope()?;
            let mut entries = Vec::new();
            for (label, rho) in local_systems(args, &p, &c, false)? {
                let hf = floer::product_bound(&p, &c, &rho, args.rank_method())?;
                entries.push(entry(label, &rho, &hf));
            }
            Payload::ProductBound { entries }
        }
        Command::Example { name } => Payload::Example {
            name: name.clone(),
            entries: example(name, args.rank_method())?,
        },
        Command::Selftest => {
            let checks = selftest::run_all();
            Payload::Selftest {
                passed: checks.iter().all(|c| c.passed),
                checks,
            }
        }
    };
    Ok(Report {
        version: env!("CARGO_PKG_VERSION").to_string(),
        job: args.job(),
        result,
    })
}

fn entry(label: String, rho: &RhoAssignment, hf: &floer::HFResult) -> HfEntry {
    HfEntry {
        label,
        rho: RhoFile::from(rho),
        result: hf.into(),
    }
}

/// The local systems named by `--rho`. With `search`, every critical point
/// is used, or only the unobstructed ones when `only_defined` is set.
fn local_systems(
    args: &Args,
    p: &FanoPolytope,
    c: &InteriorPoint,
    only_defined: bool,
) -> Result<Vec<(String, RhoAssignment)>, CliError> {
    match load_rho(&args.rho, p.dim())? {
        RhoSource::Trivial => Ok(vec![("trivial".into(), RhoAssignment::trivial(p.dim()))]),
        RhoSource::Given(rho) => Ok(vec![(args.rho.clone(), rho)]),
        RhoSource::Search => Ok(potential::find_critical(p, c, &args.search_options())?
            .into_iter()
            .filter(|r| r.defined || !only_defined)
            .enumerate()
            .map(|(i, r)| (format!("critical #{}", i + 1), r.rho))
            .collect()),
    }
}

fn example(name: &str, method: RankMethod) -> Result<Vec<HfEntry>, CliError> {
    let options = SearchOptions::default();
    let mut out = Vec::new();
    let mut hf_at = |label: String, (p, c): (FanoPolytope, InteriorPoint), rho: RhoAssignment| -> Result<(), CliError> {
        let hf = floer::hf_rank(&p, &c, &rho, method)?;
        out.push(entry(label, &rho, &hf));
        Ok(())
    };
    match name {
        "blowup_cp3" => {
            let (p, c) = polytope::blowup_cp3();
            for r in potential::find_critical(&p, &c, &options)? {
                hf_at(format!("blowup_cp3 at critical point in GF(2^{})", r.rho.field().degree()), (p.clone(), c.clone()), r.rho)?;
            }
        }
        "odd_cpn" | "even_cpn" => {
            let ks = if name == "odd_cpn" { [1, 3] } else { [2, 4] };
            for k in ks {
                hf_at(format!("cpn({k})"), polytope::cpn(k), RhoAssignment::trivial(k))?;
            }
        }
        "rp_product" => {
            hf_at("rp_product(1,1)".into(), polytope::rp_product(1, 1), RhoAssignment::trivial(4))?;
            hf_at("rp_product(1,2)".into(), polytope::rp_product(1, 2), RhoAssignment::trivial(6))?;
        }
        "product_bound" => {
            let (p, c) = polytope::cpn(2);
            let omega = Field::new(2).expect("GF(4)").generator();
            for a in [omega, omega.square()] {
                let rho = RhoAssignment::diagonal(a, 2)?;
                let hf = floer::product_bound(&p, &c, &rho, method)?;
                out.push(entry("cpn(2) x cpn(2)".into(), &rho, &hf));
            }
            let (p, c) = polytope::cpn(1);
            let rho = RhoAssignment::trivial(1);
            let hf = floer::product_bound(&p, &c, &rho, method)?;
            out.push(entry("cpn(1) x cpn(1)".into(), &rho, &hf));
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown example {other:?} (expected blowup_cp3, odd_cpn, even_cpn, rp_product, product_bound)"
            )))
        }
    }
    Ok(out)
}

/// Exit status for a report that was produced without error.
pub fn report_status(report: &Report) -> i32 {
    match &report.result {
        Payload::Validation { valid: false, .. } | Payload::Selftest { passed: false, .. } => 1,
        _ => 0,
    }
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report::to_json(report),
        Format::Table => report::to_table(report),
    }
}

/// Parses `argv`, runs the job, writes the report, and returns the exit status.
pub fn main_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let start = Instant::now();
    let outcome = run(&args);
    let _ = writeln!(err, "elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match outcome {
        Ok(report) => {
            let _ = out.write_all(emit(&report, args.format).as_bytes());
            report_status(&report)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
