//! Rendering of reports and sweeps as tables, JSON and CSV.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{CharacteristicExponents, SemigroupGenerators};
use crate::enumerate::{SweepRecord, SweepSummary};
use crate::error::Result;
use crate::invariants::{InvariantReport, Quotient};
use crate::resolution::{multiplicity_sequence, MultiplicitySequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
    Csv,
}

pub const CSV_HEADER: &str = "n,char_exponents,semigroup,mu,tau_minus,q_min,tau_min,quotient,lower_bound,delta_gen_gaps,checks_passed";

/// Everything printed by `branch-invariants invariants` for one class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub char_exponents: CharacteristicExponents,
    pub semigroup: SemigroupGenerators,
    pub multiplicity_sequence: MultiplicitySequence,
    pub mu: u64,
    pub tau_minus: u64,
    pub q_min: u64,
    pub tau_min: u64,
    pub quotient: Quotient,
    pub tau_lower_bound: u64,
    pub dimca_greuel_margin: i128,
    pub delta_gen_gaps: u64,
}

impl ClassReport {
    pub fn new(c: &CharacteristicExponents) -> Result<Self> {
        let semigroup = c.semigroup()?;
        let seq = multiplicity_sequence(c)?;
        let r = InvariantReport::from_sequence(&seq)?;
        Ok(Self {
            char_exponents: c.clone(),
            semigroup,
            multiplicity_sequence: seq,
            mu: r.mu,
            tau_minus: r.tau_minus,
            q_min: r.q_min,
            tau_min: r.tau_min,
            quotient: r.quotient,
            tau_lower_bound: r.tau_lower_bound,
            dimca_greuel_margin: r.dimca_greuel_margin(),
            delta_gen_gaps: r.delta_gen_gaps,
        })
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => to_json(self),
            OutputFormat::Csv => {
                let fields = [
                    self.char_exponents.n().to_string(),
                    csv_char_exponents(&self.char_exponents),
                    csv_list(self.semigroup.gens()),
                    self.mu.to_string(),
                    self.tau_minus.to_string(),
                    self.q_min.to_string(),
                    self.tau_min.to_string(),
                    self.quotient.to_string(),
                    self.tau_lower_bound.to_string(),
                    self.delta_gen_gaps.to_string(),
                    "true".to_string(),
                ];
                format!("{CSV_HEADER}\n{}\n", fields.join(","))
            }
            OutputFormat::Table => {
                let mut out = String::new();
                let rows: [(&str, String); 11] = [
                    ("characteristic exponents", self.char_exponents.to_string()),
                    ("semigroup", self.semigroup.to_string()),
                    ("multiplicity sequence", self.multiplicity_sequence.to_string()),
                    ("mu", self.mu.to_string()),
                    ("tau_minus", self.tau_minus.to_string()),
                    ("q_min", self.q_min.to_string()),
                    ("tau_min", self.tau_min.to_string()),
                    ("mu/tau_min", format!("{} ({})", self.quotient, self.quotient.decimal())),
                    ("tau lower bound", self.tau_lower_bound.to_string()),
                    ("4 tau_min - 3 mu", self.dimca_greuel_margin.to_string()),
                    ("|N \\ Delta_gen|", self.delta_gen_gaps.to_string()),
                ];
                for (key, value) in rows {
                    let _ = writeln!(out, "{key:<26}{value}");
                }
                out
            }
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_list(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(";")
}

fn csv_char_exponents(c: &CharacteristicExponents) -> String {
    format!("{}:{}", c.n(), csv_list(c.beta()))
}

#[derive(Serialize)]
struct SweepOutput<'a> {
    records: &'a [SweepRecord],
    summary: &'a SweepSummary,
}

pub fn summary_line(s: &SweepSummary) -> String {
    let max = s
        .max_quotient
        .map_or_else(|| "none".to_string(), |q| format!("{q} ({})", q.decimal()));
    format!("classes: {}, max mu/tau_min: {max}, failed checks: {}", s.classes, s.failed_checks)
}

/// Records of a sweep. JSON output embeds the summary; the other formats
/// leave it to [`summary_line`].
pub fn render_sweep(records: &[SweepRecord], summary: &SweepSummary, format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Json => return to_json(&SweepOutput { records, summary }),
        OutputFormat::Csv => {
            out.push_str(CSV_HEADER);
            out.push('\n');
            for r in records {
                let c = &r.char_exponents;
                let semigroup = r.semigroup.as_ref().map(|s| csv_list(s.gens())).unwrap_or_default();
                let invariants = match &r.report {
                    Some(rep) => format!(
                        "{},{},{},{},{},{},{}",
                        rep.mu,
                        rep.tau_minus,
                        rep.q_min,
                        rep.tau_min,
                        rep.quotient,
                        rep.tau_lower_bound,
                        rep.delta_gen_gaps
                    ),
                    None => ",,,,,,".to_string(),
                };
                let _ = writeln!(
                    out,
                    "{},{},{semigroup},{invariants},{}",
                    c.n(),
                    csv_char_exponents(c),
                    r.passed()
                );
            }
        }
        OutputFormat::Table => {
            let _ = writeln!(
                out,
                "{:<24} {:<24} {:>8} {:>8} {:>6} {:>8} {:>10} {:>6} {:>6}  checks",
                "class", "semigroup", "mu", "tau_-", "q_min", "tau_min", "mu/tau", "bound", "gaps"
            );
            for r in records {
                let semigroup = r.semigroup.as_ref().map(ToString::to_string).unwrap_or_default();
                let status = if r.passed() {
                    "ok".to_string()
                } else if let Some(e) = &r.error {
                    format!("ERROR {e}")
                } else {
                    format!("FAILED {}", r.failed_checks().collect::<Vec<_>>().join(" "))
                };
                match &r.report {
                    Some(rep) => {
                        let _ = writeln!(
                            out,
                            "{:<24} {:<24} {:>8} {:>8} {:>6} {:>8} {:>10} {:>6} {:>6}  {status}",
                            r.char_exponents.to_string(),
                            semigroup,
                            rep.mu,
                            rep.tau_minus,
                            rep.q_min,
                            rep.tau_min,
                            rep.quotient.decimal(),
                            rep.tau_lower_bound,
                            rep.delta_gen_gaps
                        );
                    }
                    None => {
                        let _ = writeln!(out, "{:<24} {:<24} {status}", r.char_exponents.to_string(), semigroup);
                    }
                }
            }
        }
    }
    out
}
