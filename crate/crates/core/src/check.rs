//! The bundled identity suite run by `branch-invariants check`.

use crate::enumerate::{self, EnumerationBounds, SweepRecord};
use crate::error::Error;
use crate::invariants::sigma;

/// Default desk-scale bounds for the suite.
pub const DEFAULT_MAX_MULTIPLICITY: u64 = 10;
pub const DEFAULT_MAX_BETA: u64 = 60;

/// Upper end of the range on which `4σ(k) ≥ (k−2)(k−4)` is verified.
pub const SIGMA_BOUND_LIMIT: u64 = 1_000_000;

/// A named identity that did not hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub identity: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteSummary {
    pub classes: usize,
    pub identities: Vec<&'static str>,
}

/// Human-readable name of a sweep check flag.
fn identity_name(flag: &str) -> &str {
    match flag {
        "lemma1" => "satellite multiplicity sum",
        "enriques_free" => "free multiplicity sum",
        "enriques_total" => "total multiplicity sum",
        "dimca_greuel" => "Dimca-Greuel margin",
        "lower_bound" => "Tjurina lower bound",
        "bound_sharpness" => "lower bound sharpness",
        "peraire" => "delta_gen gap count",
        "milnor_oracle" => "Milnor number gap-count oracle",
        "round_trip" => "semigroup round trip",
        "resolution_invariance" => "resolution invariance",
        "zariski_one_pair" => "Zariski one-pair identity",
        other => other,
    }
}

/// Names the identity behind an evaluation error. Double-computation
/// failures carry their name as the message prefix.
fn error_identity(err: &str) -> String {
    for name in ["tau_min double computation", "delta_gen gap count double computation"] {
        if err.contains(name) {
            return name.to_string();
        }
    }
    "class evaluation".to_string()
}

/// First failing record's identity, if any.
pub fn first_failure(records: &[SweepRecord]) -> Option<Failure> {
    records.iter().find(|r| !r.passed()).map(|r| {
        let c = &r.char_exponents;
        match &r.error {
            Some(err) => Failure { identity: error_identity(err), detail: format!("{c}: {err}") },
            None => {
                let flag = r.failed_checks().next().unwrap_or("unknown");
                Failure { identity: identity_name(flag).to_string(), detail: format!("{c}") }
            }
        }
    })
}

/// `4σ(k) − (k−2)(k−4) ≥ 0` for `2 ≤ k ≤ limit`.
pub fn sigma_pointwise_bound(limit: u64) -> Result<(), Failure> {
    for k in 2..=limit {
        let ok = match sigma(k) {
            Ok(s) => 4 * s as i128 >= (k as i128 - 2) * (k as i128 - 4),
            Err(_) => false,
        };
        if !ok {
            return Err(Failure {
                identity: "sigma pointwise bound".into(),
                detail: format!("k = {k}"),
            });
        }
    }
    Ok(())
}

/// Runs the whole suite: every per-class identity over the enumerated
/// classes, then the pointwise σ bound.
pub fn run(bounds: EnumerationBounds, threads: Option<usize>) -> Result<SuiteSummary, Failure> {
    let records = match threads {
        Some(t) => enumerate::sweep_with_threads(bounds, t).map_err(|e: Error| Failure {
            identity: "setup".into(),
            detail: e.to_string(),
        })?,
        None => enumerate::sweep(bounds),
    };
    if let Some(f) = first_failure(&records) {
        return Err(f);
    }
    sigma_pointwise_bound(SIGMA_BOUND_LIMIT)?;
    Ok(SuiteSummary {
        classes: records.len(),
        identities: vec![
            "tau_min double computation",
            "delta_gen gap count double computation",
            "satellite multiplicity sum",
            "free multiplicity sum",
            "total multiplicity sum",
            "Dimca-Greuel margin",
            "Tjurina lower bound",
            "lower bound sharpness",
            "Milnor number gap-count oracle",
            "semigroup round trip",
            "resolution invariance",
            "Zariski one-pair identity",
            "sigma pointwise bound",
        ],
    })
}
