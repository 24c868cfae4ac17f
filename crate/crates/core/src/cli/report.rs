use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::floer::HFResult;
use crate::novikov::{PolyRepr, TermRepr};
use crate::polytope::{Diagnostic, EnergyVector};
use crate::potential::{CriticalReport, RhoFile};
use crate::rational;
use crate::selftest::CheckOutcome;

/// The command line as interpreted, echoed into every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub command: String,
    pub example: Option<String>,
    pub polytope: Option<String>,
    pub rho: String,
    pub max_degree: u32,
    pub method: String,
    pub format: String,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub job: JobSpec,
    pub result: Payload,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Validation {
        valid: bool,
        diagnostics: Vec<Diagnostic>,
    },
    Energies {
        energies: EnergyVector,
    },
    CriticalPoints {
        points: Vec<CriticalEntry>,
    },
    Hf {
        entries: Vec<HfEntry>,
    },
    ProductBound {
        entries: Vec<HfEntry>,
    },
    Example {
        name: String,
        entries: Vec<HfEntry>,
    },
    Selftest {
        passed: bool,
        checks: Vec<CheckOutcome>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalEntry {
    pub rho: RhoFile,
    pub w_value: PolyRepr,
    pub z_values: Vec<PolyRepr>,
    pub defined: bool,
    pub nonvanishing: bool,
}

impl From<&CriticalReport> for CriticalEntry {
    fn from(r: &CriticalReport) -> Self {
        CriticalEntry {
            rho: RhoFile::from(&r.rho),
            w_value: PolyRepr::from(&r.w_value),
            z_values: r.z_values.iter().map(PolyRepr::from).collect(),
            defined: r.defined,
            nonvanishing: r.nonvanishing,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HfEntry {
    pub label: String,
    pub rho: RhoFile,
    pub result: HfSummary,
}

/// Wire form of [`HFResult`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HfSummary {
    pub defined: bool,
    pub obstruction: PolyRepr,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hf_rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
}

impl From<&HFResult> for HfSummary {
    fn from(r: &HFResult) -> Self {
        HfSummary {
            defined: r.defined,
            obstruction: PolyRepr::from(&r.obstruction),
            delta_rank: r.delta_rank,
            hf_rank: r.hf_rank,
            bound: r.bound,
        }
    }
}

/// Pretty-printed JSON with sorted keys and a trailing newline.
pub fn to_json(report: &Report) -> String {
    let value = serde_json::to_value(report).expect("report is plain data");
    let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
    s.push('\n');
    s
}

pub fn to_table(report: &Report) -> String {
    let mut out = String::new();
    let job = &report.job;
    let _ = writeln!(
        out,
        "floer {} | {} | polytope {} | rho {} | method {} | seed {}",
        report.version,
        job.command,
        job.polytope.as_deref().unwrap_or("-"),
        job.rho,
        job.method,
        job.seed
    );
    match &report.result {
        Payload::Validation { valid, diagnostics } => {
            let _ = writeln!(out, "valid: {valid}");
            for d in diagnostics {
                let _ = writeln!(out, "  {d}");
            }
        }
        Payload::Energies { energies } => {
            let rows = energies
                .0
                .iter()
                .enumerate()
                .map(|(j, e)| vec![(j + 1).to_string(), rational::format(e)])
                .collect();
            out.push_str(&table(&["facet", "energy"], rows));
        }
        Payload::CriticalPoints { points } => {
            let rows = points
                .iter()
                .map(|p| {
                    vec![
                        p.rho.m.to_string(),
                        rho_text(&p.rho),
                        poly_text(&p.w_value),
                        p.defined.to_string(),
                        p.nonvanishing.to_string(),
                    ]
                })
                .collect();
            out.push_str(&table(&["m", "rho", "W", "defined", "nonvanishing"], rows));
        }
        Payload::Hf { entries } | Payload::ProductBound { entries } => {
            out.push_str(&hf_table(entries));
        }
        Payload::Example { name, entries } => {
            let _ = writeln!(out, "example {name}");
            out.push_str(&hf_table(entries));
        }
        Payload::Selftest { passed, checks } => {
            for c in checks {
                let _ = writeln!(out, "{}", c.line());
            }
            let _ = writeln!(out, "overall: {}", if *passed { "PASS" } else { "FAIL" });
        }
    }
    out
}

fn hf_table(entries: &[HfEntry]) -> String {
    let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
    let rows = entries
        .iter()
        .map(|e| {
            vec![
                e.label.clone(),
                rho_text(&e.rho),
                e.result.defined.to_string(),
                opt(e.result.delta_rank.map(|r| r.to_string())),
                opt(e.result.hf_rank.map(|r| r.to_string())),
                opt(e.result.bound.map(|r| r.to_string())),
                poly_text(&e.result.obstruction),
            ]
        })
        .collect();
    table(
        &["case", "rho", "defined", "delta_rank", "hf_rank", "bound", "obstruction"],
        rows,
    )
}

fn rho_text(rho: &RhoFile) -> String {
    let values: Vec<String> = rho.values.iter().map(ToString::to_string).collect();
    format!("({}) in GF(2^{})", values.join(", "), rho.m)
}

fn poly_text(p: &PolyRepr) -> String {
    if p.0.is_empty() {
        return "0".into();
    }
    let term = |t: &TermRepr| {
        let exp = rational::format(&t.exp);
        let exp = exp.strip_suffix("/1").unwrap_or(&exp).to_string();
        if t.coeff.is_one() {
            format!("T^{exp}")
        } else {
            format!("{}*T^{exp}", t.coeff)
        }
    };
    p.0.iter().map(term).collect::<Vec<_>>().join(" + ")
}

fn table(headers: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    out.push_str(&line(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str).collect()));
    for row in &rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}
