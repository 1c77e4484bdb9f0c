//! Multiplicity sequence of a branch along its minimal embedded resolution.
//!
//! Each characteristic pair contributes one block of points. The block of
//! pair `i` is the Euclidean multiplicity sequence of `(β₁, n)` for `i = 1`
//! and of `(βᵢ − βᵢ₋₁, eᵢ₋₁)` otherwise: every remainder is repeated as many
//! times as its quotient. Within a block the free points are the shortest
//! prefix (after the origin) whose multiplicities add up to `βᵢ − βᵢ₋₁`
//! (with `β₀ = n`); the rest of the block is satellite.
//!
//! Points of multiplicity zero are not represented: they contribute nothing
//! to any invariant computed by this crate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::CharacteristicExponents;
use crate::error::{self, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    Origin,
    Free,
    Satellite,
}

impl fmt::Display for PointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointKind::Origin => "origin",
            PointKind::Free => "free",
            PointKind::Satellite => "satellite",
        })
    }
}

/// A point equal or infinitely near to the origin, with the multiplicity of
/// the strict transform there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InfinitelyNearPoint {
    pub multiplicity: u64,
    pub kind: PointKind,
    /// Characteristic pair (1-based) whose block produced this point.
    pub stage: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiplicitySequence {
    points: Vec<InfinitelyNearPoint>,
}

impl MultiplicitySequence {
    /// Wraps a list of points. The only structural requirement is a single
    /// leading origin and positive multiplicities; the sum identities are
    /// properties of minimal resolutions and are checked separately.
    pub fn from_points(points: Vec<InfinitelyNearPoint>) -> Result<Self> {
        match points.first() {
            Some(p) if p.kind == PointKind::Origin => {}
            _ => {
                return Err(Error::DomainError(
                    "a multiplicity sequence must start with the origin".into(),
                ))
            }
        }
        if points[1..].iter().any(|p| p.kind == PointKind::Origin) {
            return Err(Error::DomainError("more than one origin in sequence".into()));
        }
        if points.iter().any(|p| p.multiplicity == 0) {
            return Err(Error::DomainError("multiplicities must be positive".into()));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[InfinitelyNearPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Multiplicity at the origin.
    pub fn multiplicity(&self) -> u64 {
        self.points[0].multiplicity
    }

    pub fn multiplicities(&self) -> Vec<u64> {
        self.points.iter().map(|p| p.multiplicity).collect()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, InfinitelyNearPoint> {
        self.points.iter()
    }

    pub fn sum_of(&self, kind: PointKind) -> u64 {
        self.points.iter().filter(|p| p.kind == kind).map(|p| p.multiplicity).sum()
    }

    pub fn total(&self) -> u64 {
        self.points.iter().map(|p| p.multiplicity).sum()
    }

    /// The same resolution followed by `k` further blow-ups at smooth free
    /// points of the strict transform.
    pub fn append_smooth_points(&self, k: usize) -> Self {
        let stage = self.points.last().map_or(1, |p| p.stage);
        let mut points = self.points.clone();
        points.extend(std::iter::repeat_n(
            InfinitelyNearPoint { multiplicity: 1, kind: PointKind::Free, stage },
            k,
        ));
        Self { points }
    }
}

impl<'a> IntoIterator for &'a MultiplicitySequence {
    type Item = &'a InfinitelyNearPoint;
    type IntoIter = std::slice::Iter<'a, InfinitelyNearPoint>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

impl fmt::Display for MultiplicitySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.points.iter().enumerate() {
            let tag = match p.kind {
                PointKind::Origin => 'O',
                PointKind::Free => 'F',
                PointKind::Satellite => 'S',
            };
            write!(f, "{}{}:{tag}", if i == 0 { "" } else { ", " }, p.multiplicity)?;
        }
        write!(f, "]")
    }
}

/// Longest sequence this crate will materialize.
const MAX_POINTS: u64 = 1 << 24;

/// Remainder values of the Euclidean algorithm on `(a, b)`, each repeated
/// quotient-many times.
fn euclid_block(mut a: u64, mut b: u64, budget: &mut u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    while b != 0 {
        let q = a / b;
        *budget = budget.checked_sub(q).ok_or(Error::Overflow("multiplicity sequence length"))?;
        out.extend(std::iter::repeat_n(b, q as usize));
        (a, b) = (b, a % b);
    }
    Ok(out)
}

/// Multiplicity sequence of the minimal embedded resolution of the class.
pub fn multiplicity_sequence(c: &CharacteristicExponents) -> Result<MultiplicitySequence> {
    let n = c.n();
    let beta = c.beta();
    let e = c.gcd_chain();
    let mut points = Vec::new();
    let mut budget = MAX_POINTS;

    for (i, &b) in beta.iter().enumerate() {
        let stage = i + 1;
        let prev = if i == 0 { n } else { beta[i - 1] };
        let free_target = b - prev;
        let block = if i == 0 {
            euclid_block(b, n, &mut budget)?
        } else {
            euclid_block(free_target, e[i], &mut budget)?
        };

        let mut rest = block.as_slice();
        if i == 0 {
            points.push(InfinitelyNearPoint { multiplicity: rest[0], kind: PointKind::Origin, stage });
            rest = &rest[1..];
        }
        let mut free_sum = 0u64;
        for &m in rest {
            let kind = if free_sum < free_target {
                free_sum = error::add(free_sum, m, "free multiplicity sum")?;
                PointKind::Free
            } else {
                PointKind::Satellite
            };
            points.push(InfinitelyNearPoint { multiplicity: m, kind, stage });
        }
        if free_sum != free_target {
            return Err(Error::InternalInvariantViolation(format!(
                "stage {stage} of {c}: free multiplicities sum to {free_sum}, expected {free_target}"
            )));
        }
    }

    let seq = MultiplicitySequence { points };
    check_sum_identities(c, &seq)?;
    Ok(seq)
}

pub fn append_smooth_points(m: &MultiplicitySequence, k: usize) -> MultiplicitySequence {
    m.append_smooth_points(k)
}

/// The three identities satisfied by the minimal resolution:
/// `Σ e_p = β_g + n − 1`, `n + Σ_free e_p = β_g`, `Σ_sat e_p = n − 1`.
pub fn check_sum_identities(c: &CharacteristicExponents, m: &MultiplicitySequence) -> Result<()> {
    let (n, bg) = (c.n(), c.beta_g());
    let total_expected = error::add(bg, n - 1, "total multiplicity sum")?;
    let identities = [
        ("total multiplicity sum", m.total(), total_expected),
        ("free multiplicity sum", error::add(n, m.sum_of(PointKind::Free), "free multiplicity sum")?, bg),
        ("satellite multiplicity sum", m.sum_of(PointKind::Satellite), n - 1),
    ];
    for (name, got, want) in identities {
        if got != want {
            return Err(Error::InternalInvariantViolation(format!(
                "{name} for {c}: got {got}, expected {want}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::validate_char_exponents;
    use PointKind::*;

    fn seq(n: u64, beta: &[u64]) -> Vec<(u64, PointKind)> {
        let c = validate_char_exponents(n, beta).unwrap();
        multiplicity_sequence(&c).unwrap().iter().map(|p| (p.multiplicity, p.kind)).collect()
    }

    #[test]
    fn cusp() {
        assert_eq!(seq(2, &[3]), vec![(2, Origin), (1, Free), (1, Satellite)]);
    }

    #[test]
    fn one_pair_five_seven() {
        assert_eq!(
            seq(5, &[7]),
            vec![(5, Origin), (2, Free), (2, Satellite), (1, Satellite), (1, Satellite)]
        );
    }

    #[test]
    fn two_pairs_stage_boundary() {
        let c = validate_char_exponents(4, &[6, 7]).unwrap();
        let m = multiplicity_sequence(&c).unwrap();
        let got: Vec<_> = m.iter().map(|p| (p.multiplicity, p.kind, p.stage)).collect();
        assert_eq!(
            got,
            vec![(4, Origin, 1), (2, Free, 1), (2, Satellite, 1), (1, Free, 2), (1, Satellite, 2)]
        );
        assert_eq!(m.to_string(), "[4:O, 2:F, 2:S, 1:F, 1:S]");
    }

    #[test]
    fn stage_with_leading_free_run() {
        // second block is the Euclid sequence of (3, 2): [2, 1, 1]; free prefix 2 + 1 = 3
        assert_eq!(
            seq(4, &[6, 9]),
            vec![(4, Origin), (2, Free), (2, Satellite), (2, Free), (1, Free), (1, Satellite)]
        );
    }

    #[test]
    fn repeated_origin_multiplicity() {
        // (3; 7): 7 = 2·3 + 1, so two points of multiplicity 3 then three of 1
        assert_eq!(
            seq(3, &[7]),
            vec![(3, Origin), (3, Free), (1, Free), (1, Satellite), (1, Satellite)]
        );
    }

    #[test]
    fn huge_quotient_is_rejected() {
        let c = validate_char_exponents(2, &[(1 << 40) + 1]).unwrap();
        assert_eq!(multiplicity_sequence(&c), Err(Error::Overflow("multiplicity sequence length")));
    }

    #[test]
    fn append_points() {
        let c = validate_char_exponents(2, &[3]).unwrap();
        let m = multiplicity_sequence(&c).unwrap();
        assert_eq!(m.append_smooth_points(0), m);
        let longer = append_smooth_points(&m, 2);
        assert_eq!(longer.to_string(), "[2:O, 1:F, 1:S, 1:F, 1:F]");
        let c = validate_char_exponents(5, &[7]).unwrap();
        assert_eq!(multiplicity_sequence(&c).unwrap().append_smooth_points(3).len(), 8);
    }

    #[test]
    fn from_points_rejects_malformed() {
        let p = |m, kind| InfinitelyNearPoint { multiplicity: m, kind, stage: 1 };
        assert!(MultiplicitySequence::from_points(vec![]).is_err());
        assert!(MultiplicitySequence::from_points(vec![p(1, Free)]).is_err());
        assert!(MultiplicitySequence::from_points(vec![p(2, Origin), p(2, Origin)]).is_err());
        assert!(MultiplicitySequence::from_points(vec![p(2, Origin), p(0, Free)]).is_err());
        assert!(MultiplicitySequence::from_points(vec![p(2, Origin), p(1, Free)]).is_ok());
    }

    #[test]
    fn serializes_kinds_as_strings() {
        let c = validate_char_exponents(2, &[3]).unwrap();
        let json = serde_json::to_string(&multiplicity_sequence(&c).unwrap()).unwrap();
        assert_eq!(
            json,
            r#"[{"multiplicity":2,"kind":"origin","stage":1},{"multiplicity":1,"kind":"free","stage":1},{"multiplicity":1,"kind":"satellite","stage":1}]"#
        );
    }
}
