//! Closed formulas on the multiplicity sequence.
//!
//! Every quantity that has two independent expressions is evaluated both
//! ways; disagreement is reported as [`Error::InternalInvariantViolation`].
//! Divisions by 2 and 4 are exact or fail the same way.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{gcd, CharacteristicExponents};
use crate::error::{self, Error, Result};
use crate::resolution::{multiplicity_sequence, InfinitelyNearPoint, MultiplicitySequence, PointKind};

/// `σ(k) = (k−2)(k−4)/4` for even `k`, `(k−3)²/4` for odd `k`, `k ≥ 2`.
pub fn sigma(k: u64) -> Result<u64> {
    if k < 2 {
        return Err(Error::DomainError(format!("sigma is defined for k >= 2, got {k}")));
    }
    let num = if k % 2 == 0 {
        if k == 2 {
            0
        } else {
            error::mul(k - 2, k - 4, "sigma")?
        }
    } else {
        error::mul(k - 3, k - 3, "sigma")?
    };
    error::div_exact(num, 4, "sigma")
}

/// Adjusted multiplicity: `e` at the origin, `e + 1` at free points and
/// `e + 2` at satellite points.
pub fn e_prime(p: &InfinitelyNearPoint) -> u64 {
    match p.kind {
        PointKind::Origin => p.multiplicity,
        PointKind::Free => p.multiplicity + 1,
        PointKind::Satellite => p.multiplicity + 2,
    }
}

/// Milnor number `Σ e_p (e_p − 1)`.
pub fn milnor(m: &MultiplicitySequence) -> Result<u64> {
    m.iter().try_fold(0u64, |acc, p| {
        let term = error::mul(p.multiplicity, p.multiplicity - 1, "Milnor number")?;
        error::add(acc, term, "Milnor number")
    })
}

/// Dimension of the μ-constant stratum, `Σ (e′_p − 2)(e′_p − 3)/2`.
pub fn tau_minus(m: &MultiplicitySequence) -> Result<u64> {
    m.iter().try_fold(0u64, |acc, p| {
        let k = e_prime(p);
        let term = if k <= 3 {
            0
        } else {
            error::div_exact(error::mul(k - 2, k - 3, "tau_minus")?, 2, "tau_minus")?
        };
        error::add(acc, term, "tau_minus")
    })
}

/// Dimension of the generic component of the moduli space, `Σ σ(e′_p)`.
pub fn q_min(m: &MultiplicitySequence) -> Result<u64> {
    m.iter().try_fold(0u64, |acc, p| error::add(acc, sigma(e_prime(p))?, "q_min"))
}

/// Minimal Tjurina number by the closed formula
///
/// ```text
/// σ(n) + (n² + 3n − 6)/2
///   + Σ_free ((e−1)(e+2) + 2σ(e+1))/2
///   + Σ_sat  (e(e−1) + 2σ(e+2))/2
/// ```
pub fn tau_min_closed_form(m: &MultiplicitySequence) -> Result<u64> {
    const W: &str = "tau_min";
    let n = m.multiplicity();
    let origin = error::add(error::mul(n, n, W)?, 3 * n, W)?;
    let origin = error::div_exact(error::sub(origin, 6, W)?, 2, W)?;
    let mut acc = error::add(sigma(n)?, origin, W)?;
    for p in m.iter().skip(1) {
        let e = p.multiplicity;
        let num = match p.kind {
            PointKind::Free => error::add(
                error::mul(e - 1, e + 2, W)?,
                error::mul(2, sigma(e + 1)?, W)?,
                W,
            )?,
            PointKind::Satellite => {
                error::add(error::mul(e, e - 1, W)?, error::mul(2, sigma(e + 2)?, W)?, W)?
            }
            PointKind::Origin => unreachable!("sequence has a single leading origin"),
        };
        acc = error::add(acc, error::div_exact(num, 2, W)?, W)?;
    }
    Ok(acc)
}

/// Minimal Tjurina number, computed by the closed formula and as
/// `q_min + μ − τ₋`; the two must agree.
pub fn tau_min(m: &MultiplicitySequence) -> Result<u64> {
    let closed = tau_min_closed_form(m)?;
    let via_moduli = error::sub(error::add(q_min(m)?, milnor(m)?, "tau_min")?, tau_minus(m)?, "tau_min")?;
    if closed != via_moduli {
        return Err(Error::InternalInvariantViolation(format!(
            "tau_min double computation: closed form {closed}, q_min + mu - tau_minus = {via_moduli}"
        )));
    }
    Ok(closed)
}

/// Lower bound for the Tjurina number of any branch of multiplicity `n`:
/// `3n²/4 − 1` for even `n`, `3(n² − 1)/4` for odd `n`.
pub fn tau_lower_bound(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::DomainError(format!("multiplicity must be at least 2, got {n}")));
    }
    const W: &str = "tau lower bound";
    let sq = error::mul(n, n, W)?;
    if n % 2 == 0 {
        Ok(error::div_exact(error::mul(3, sq, W)?, 4, W)? - 1)
    } else {
        error::div_exact(error::mul(3, sq - 1, W)?, 4, W)
    }
}

/// `|ℕ ∖ Δ_gen|`, once as `τ_min − μ/2 − n + 1` and once by the closed sum
/// `σ(n) + n − 2 + Σ_free ((e−1) + σ(e+1)) + Σ_sat σ(e+2)`.
pub fn delta_gen_gap_count(m: &MultiplicitySequence, mu: u64, tau_min: u64) -> Result<u64> {
    const W: &str = "delta_gen gap count";
    let n = m.multiplicity();
    let half_mu = error::div_exact(mu, 2, W)?;
    let lhs = error::add(tau_min, 1, W)?;
    let rhs = error::add(half_mu, n, W)?;
    if lhs < rhs {
        return Err(Error::NegativeGapCount(format!(
            "tau_min - mu/2 - n + 1 = {tau_min} - {half_mu} - {n} + 1 < 0"
        )));
    }
    let from_tjurina = lhs - rhs;

    let mut closed = error::add(sigma(n)?, n - 2, W)?;
    for p in m.iter().skip(1) {
        let term = match p.kind {
            PointKind::Free => error::add(p.multiplicity - 1, sigma(p.multiplicity + 1)?, W)?,
            PointKind::Satellite => sigma(p.multiplicity + 2)?,
            PointKind::Origin => unreachable!("sequence has a single leading origin"),
        };
        closed = error::add(closed, term, W)?;
    }
    if closed != from_tjurina {
        return Err(Error::InternalInvariantViolation(format!(
            "delta_gen gap count double computation: {from_tjurina} from tau_min, {closed} from closed sum"
        )));
    }
    Ok(closed)
}

/// An exact non-negative fraction in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Quotient {
    num: u64,
    den: u64,
}

impl Quotient {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DomainError("zero denominator".into()));
        }
        let g = gcd(num, den).max(1);
        Ok(Self { num: num / g, den: den / g })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// Decimal expansion to 6 places, rounding half to even.
    pub fn decimal(&self) -> String {
        const SCALE: u128 = 1_000_000;
        let (num, den) = (self.num as u128, self.den as u128);
        let scaled = num * SCALE;
        let (mut q, r) = (scaled / den, scaled % den);
        match (2 * r).cmp(&den) {
            Ordering::Greater => q += 1,
            Ordering::Equal if q % 2 == 1 => q += 1,
            _ => {}
        }
        format!("{}.{:06}", q / SCALE, q % SCALE)
    }
}

impl Ord for Quotient {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Quotient {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Quotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Serialize, Deserialize)]
struct QuotientRepr {
    num: u64,
    den: u64,
    decimal: String,
}

impl Serialize for Quotient {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuotientRepr { num: self.num, den: self.den, decimal: self.decimal() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quotient {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = QuotientRepr::deserialize(d)?;
        let q = Quotient::new(repr.num, repr.den).map_err(D::Error::custom)?;
        if q.num != repr.num || q.den != repr.den || q.decimal() != repr.decimal {
            return Err(D::Error::custom("quotient is not in canonical form"));
        }
        Ok(q)
    }
}

/// All invariants of one equisingularity class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub n: u64,
    pub mu: u64,
    pub tau_minus: u64,
    pub q_min: u64,
    pub tau_min: u64,
    /// `μ / τ_min`.
    pub quotient: Quotient,
    pub tau_lower_bound: u64,
    pub delta_gen_gaps: u64,
}

impl InvariantReport {
    /// Evaluates every formula on a sequence. The sequence need not come
    /// from a minimal resolution.
    pub fn from_sequence(m: &MultiplicitySequence) -> Result<Self> {
        let n = m.multiplicity();
        let mu = milnor(m)?;
        let tau_min = tau_min(m)?;
        let report = Self {
            n,
            mu,
            tau_minus: tau_minus(m)?,
            q_min: q_min(m)?,
            tau_min,
            quotient: Quotient::new(mu, tau_min)?,
            tau_lower_bound: tau_lower_bound(n)?,
            delta_gen_gaps: delta_gen_gap_count(m, mu, tau_min)?,
        };
        report.check()?;
        Ok(report)
    }

    /// `4 τ_min − 3 μ`.
    pub fn dimca_greuel_margin(&self) -> i128 {
        4 * self.tau_min as i128 - 3 * self.mu as i128
    }

    fn check(&self) -> Result<()> {
        let violation = |what: &str| Err(Error::InternalInvariantViolation(format!("{what}: {self:?}")));
        if self.tau_min + self.tau_minus != self.q_min + self.mu {
            return violation("tau_min - q_min != mu - tau_minus");
        }
        if self.mu % 2 != 0 {
            return violation("odd Milnor number");
        }
        if self.dimca_greuel_margin() <= 0 {
            return violation("3 mu >= 4 tau_min");
        }
        if self.tau_min < self.tau_lower_bound {
            return violation("tau_min below the multiplicity lower bound");
        }
        Ok(())
    }
}

pub fn dimca_greuel_margin(r: &InvariantReport) -> i128 {
    r.dimca_greuel_margin()
}

/// Report for the class with the given characteristic exponents.
pub fn full_report(c: &CharacteristicExponents) -> Result<InvariantReport> {
    InvariantReport::from_sequence(&multiplicity_sequence(c)?)
}
