//! Exhaustive enumeration of equisingularity classes and batch verification.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{gcd, CharacteristicExponents, SemigroupGenerators};
use crate::error::{Error, Result};
use crate::invariants::{InvariantReport, Quotient};
use crate::resolution::{multiplicity_sequence, MultiplicitySequence, PointKind};

/// Smooth points appended when checking that the formulas do not depend on
/// the chosen resolution.
pub const EXTRA_POINTS: [usize; 3] = [1, 2, 5];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationBounds {
    pub max_multiplicity: u64,
    pub max_beta: u64,
    /// `None` means no limit on the number of characteristic pairs.
    pub max_pairs: Option<usize>,
}

impl EnumerationBounds {
    pub fn new(max_multiplicity: u64, max_beta: u64, max_pairs: Option<usize>) -> Result<Self> {
        if max_multiplicity < 2 {
            return Err(Error::DomainError(format!(
                "maximum multiplicity must be at least 2, got {max_multiplicity}"
            )));
        }
        if max_beta <= max_multiplicity {
            return Err(Error::DomainError(format!(
                "maximum beta {max_beta} must exceed maximum multiplicity {max_multiplicity}"
            )));
        }
        if max_pairs == Some(0) {
            return Err(Error::DomainError("maximum number of pairs must be positive".into()));
        }
        Ok(Self { max_multiplicity, max_beta, max_pairs })
    }
}

/// Depth-first walk over `(n; β₁, …, β_g)` in lexicographic order.
///
/// `chosen` holds the exponents fixed so far and `next[k]` the next candidate
/// for position `k`; `chain[k]` is `e_k`.
#[derive(Debug, Clone)]
pub struct Classes {
    bounds: EnumerationBounds,
    n: u64,
    chosen: Vec<u64>,
    chain: Vec<u64>,
    next: Vec<u64>,
}

impl Classes {
    fn new(bounds: EnumerationBounds) -> Self {
        Self { bounds, n: 2, chosen: Vec::new(), chain: vec![2], next: vec![3] }
    }

    fn start_multiplicity(&mut self, n: u64) {
        self.n = n;
        self.chosen.clear();
        self.chain = vec![n];
        self.next = vec![n + 1];
    }
}

impl Iterator for Classes {
    type Item = CharacteristicExponents;

    fn next(&mut self) -> Option<Self::Item> {
        let max_pairs = self.bounds.max_pairs.unwrap_or(usize::MAX);
        loop {
            if self.n > self.bounds.max_multiplicity {
                return None;
            }
            let depth = self.next.len() - 1;
            let cand = self.next[depth];
            if cand > self.bounds.max_beta {
                self.next.pop();
                if self.next.is_empty() {
                    self.start_multiplicity(self.n + 1);
                } else {
                    self.chosen.pop();
                    self.chain.pop();
                }
                continue;
            }
            self.next[depth] += 1;
            let e = self.chain[depth];
            if cand % e == 0 {
                continue;
            }
            let e_next = gcd(e, cand);
            if e_next == 1 {
                let mut beta = self.chosen.clone();
                beta.push(cand);
                let c = CharacteristicExponents::new(self.n, beta)
                    .expect("enumeration only produces valid exponents");
                return Some(c);
            }
            if depth + 1 < max_pairs {
                self.chosen.push(cand);
                self.chain.push(e_next);
                self.next.push(cand + 1);
            }
        }
    }
}

/// Every valid class within `b`, each once, in lexicographic order.
pub fn enumerate_classes(b: EnumerationBounds) -> Classes {
    Classes::new(b)
}

/// One class of a sweep together with its invariants and check results.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub char_exponents: CharacteristicExponents,
    pub semigroup: Option<SemigroupGenerators>,
    pub report: Option<InvariantReport>,
    /// Set when evaluating the class failed outright.
    pub error: Option<String>,
    pub checks: BTreeMap<String, bool>,
}

impl SweepRecord {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.values().all(|&ok| ok)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &str> {
        self.checks.iter().filter(|(_, &ok)| !ok).map(|(name, _)| name.as_str())
    }
}

/// Evaluates one class and every identity that applies to it.
pub fn evaluate(c: &CharacteristicExponents) -> SweepRecord {
    match try_evaluate(c) {
        Ok(record) => record,
        Err(e) => SweepRecord {
            char_exponents: c.clone(),
            semigroup: c.semigroup().ok(),
            report: None,
            error: Some(e.to_string()),
            checks: BTreeMap::from([("evaluated".to_string(), false)]),
        },
    }
}

fn try_evaluate(c: &CharacteristicExponents) -> Result<SweepRecord> {
    let semigroup = c.semigroup()?;
    let seq = multiplicity_sequence(c)?;
    let report = InvariantReport::from_sequence(&seq)?;
    let checks = class_checks(c, &semigroup, &seq, &report)?;
    Ok(SweepRecord {
        char_exponents: c.clone(),
        semigroup: Some(semigroup),
        report: Some(report),
        error: None,
        checks,
    })
}

/// Named identity and inequality checks for one class.
pub fn class_checks(
    c: &CharacteristicExponents,
    semigroup: &SemigroupGenerators,
    seq: &MultiplicitySequence,
    r: &InvariantReport,
) -> Result<BTreeMap<String, bool>> {
    let n = c.n();
    let beta_g = c.beta_g();
    let free_excess: u64 = seq
        .iter()
        .filter(|p| p.kind == PointKind::Free)
        .map(|p| p.multiplicity - 1)
        .sum();
    let margin = r.dimca_greuel_margin();
    let is_sharp_type = c.g() == 1 && c.beta()[0] == n + 1;

    let mut checks = BTreeMap::new();
    let mut set = |name: &str, ok: bool| {
        checks.insert(name.to_string(), ok);
    };
    set("lemma1", seq.sum_of(PointKind::Satellite) == n - 1);
    set("enriques_free", n + seq.sum_of(PointKind::Free) == beta_g);
    set("enriques_total", seq.total() == beta_g + n - 1);
    set(
        "dimca_greuel",
        margin > 0 && margin >= 2 * n as i128 - 3 + free_excess as i128,
    );
    set("lower_bound", r.tau_min >= r.tau_lower_bound);
    set("bound_sharpness", (r.tau_min == r.tau_lower_bound) == is_sharp_type);
    set(
        "peraire",
        r.tau_min + 1 == r.mu / 2 + n + r.delta_gen_gaps
            && (r.delta_gen_gaps == 0) == (2 * r.tau_min == r.mu + 2 * n - 2),
    );
    set("milnor_oracle", r.mu == 2 * semigroup.gap_count()? && r.mu == semigroup.conductor()?);
    set("round_trip", semigroup.char_exponents().as_ref() == Ok(c));
    let mut invariant = true;
    for k in EXTRA_POINTS {
        let longer = InvariantReport::from_sequence(&seq.append_smooth_points(k))?;
        invariant &= (longer.mu, longer.tau_minus, longer.q_min, longer.tau_min)
            == (r.mu, r.tau_minus, r.q_min, r.tau_min);
    }
    set("resolution_invariance", invariant);
    if c.g() == 1 {
        set("zariski_one_pair", r.tau_minus as i128 == zariski_tau_minus(n, c.beta()[0]));
    }
    Ok(checks)
}

/// `(n − 3)(m − 3)/2 + ⌊m/n⌋ − 1`, the one-pair value of `τ₋`.
pub fn zariski_tau_minus(n: u64, m: u64) -> i128 {
    let (n, m) = (n as i128, m as i128);
    (n - 3) * (m - 3) / 2 + m / n - 1
}

/// Evaluates every class within `b`. Results are in enumeration order.
pub fn sweep(b: EnumerationBounds) -> Vec<SweepRecord> {
    let classes: Vec<_> = enumerate_classes(b).collect();
    classes.par_iter().map(evaluate).collect()
}

/// [`sweep`] on a dedicated pool of `threads` workers.
pub fn sweep_with_threads(b: EnumerationBounds, threads: usize) -> Result<Vec<SweepRecord>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::DomainError(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| sweep(b)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub classes: usize,
    /// Largest `μ/τ_min` seen.
    pub max_quotient: Option<Quotient>,
    pub failed_checks: usize,
}

pub fn summarize(records: &[SweepRecord]) -> SweepSummary {
    SweepSummary {
        classes: records.len(),
        max_quotient: records.iter().filter_map(|r| r.report.as_ref()).map(|r| r.quotient).max(),
        failed_checks: records.iter().map(|r| r.checks.values().filter(|&&ok| !ok).count()).sum(),
    }
}
