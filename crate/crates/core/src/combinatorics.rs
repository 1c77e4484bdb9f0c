//! Characteristic exponents and value semigroups of plane branches.
//!
//! A class is described either by its characteristic exponents
//! `(n; β₁, …, β_g)` or by the minimal generators `⟨β̄₀, …, β̄_g⟩` of its
//! semigroup of values. Both descriptions are validated on construction and
//! can be converted into each other. All arithmetic is checked `u64`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{self, Error, Result};

/// Largest conductor for which the membership sieve is materialized.
const MAX_SIEVE: u64 = 1 << 32;

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Characteristic exponents `(n; β₁, …, β_g)` of a singular plane branch.
///
/// Invariants: `n ≥ 2`, `g ≥ 1`, `n < β₁ < … < β_g`, `βᵢ ∉ eᵢ₋₁ℤ` and
/// `e_g = 1`, where `e₀ = n` and `eᵢ = gcd(eᵢ₋₁, βᵢ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawCharExponents")]
pub struct CharacteristicExponents {
    n: u64,
    beta: Vec<u64>,
}

#[derive(Deserialize)]
struct RawCharExponents {
    n: u64,
    beta: Vec<u64>,
}

impl TryFrom<RawCharExponents> for CharacteristicExponents {
    type Error = Error;

    fn try_from(raw: RawCharExponents) -> Result<Self> {
        Self::new(raw.n, raw.beta)
    }
}

impl CharacteristicExponents {
    /// Validates `(n; beta)` against the definition of characteristic exponents.
    pub fn new(n: u64, beta: Vec<u64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::NotSingular(format!("multiplicity n = {n} must be at least 2")));
        }
        if beta.is_empty() {
            return Err(Error::NotSingular("no characteristic exponents (smooth branch)".into()));
        }
        let mut prev = n;
        let mut e = n;
        for (i, &b) in beta.iter().enumerate() {
            if b <= prev {
                return Err(Error::NonIncreasing(if i == 0 {
                    format!("beta_1 = {b} must exceed n = {n}")
                } else {
                    format!("beta_{} = {b} must exceed beta_{i} = {prev}", i + 1)
                }));
            }
            if b % e == 0 {
                return Err(Error::DivisibilityViolation { index: i + 1, value: b, modulus: e });
            }
            e = gcd(e, b);
            prev = b;
        }
        if e != 1 {
            return Err(Error::GcdNotOne(e));
        }
        Ok(Self { n, beta })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn beta(&self) -> &[u64] {
        &self.beta
    }

    /// Number of characteristic pairs.
    pub fn g(&self) -> usize {
        self.beta.len()
    }

    /// Last characteristic exponent numerator `β_g`.
    pub fn beta_g(&self) -> u64 {
        *self.beta.last().expect("validated exponents are non-empty")
    }

    /// `(e₀, e₁, …, e_g)` with `e₀ = n` and `e_g = 1`.
    pub fn gcd_chain(&self) -> Vec<u64> {
        let mut chain = Vec::with_capacity(self.beta.len() + 1);
        chain.push(self.n);
        let mut e = self.n;
        for &b in &self.beta {
            e = gcd(e, b);
            chain.push(e);
        }
        chain
    }

    /// Generators of the semigroup of values.
    ///
    /// `β̄₀ = n` and `β̄ᵢ₊₁ = Σⱼ₌₁..ᵢ (eⱼ₋₁ − eⱼ)/eᵢ · βⱼ + βᵢ₊₁`.
    pub fn semigroup(&self) -> Result<SemigroupGenerators> {
        let e = self.gcd_chain();
        let mut gens = Vec::with_capacity(self.beta.len() + 1);
        gens.push(self.n);
        for i in 0..self.beta.len() {
            let mut acc = self.beta[i];
            for j in 1..=i {
                let coeff = (e[j - 1] - e[j]) / e[i];
                let term = error::mul(coeff, self.beta[j - 1], "semigroup generator")?;
                acc = error::add(acc, term, "semigroup generator")?;
            }
            gens.push(acc);
        }
        SemigroupGenerators::new(gens)
    }
}

impl fmt::Display for CharacteristicExponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.n)?;
        for (i, b) in self.beta.iter().enumerate() {
            write!(f, "{}{b}", if i == 0 { " " } else { ", " })?;
        }
        write!(f, ")")
    }
}

/// Parses `n:b1,b2,...`.
impl FromStr for CharacteristicExponents {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("characteristic exponents {s:?}: expected n:b1,...,bg")))?;
        let n = parse_u64(n, "multiplicity")?;
        let beta = parse_list(rest, "characteristic exponent")?;
        Self::new(n, beta)
    }
}

pub(crate) fn parse_u64(s: &str, what: &str) -> Result<u64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{what} {:?}: not a non-negative integer", s.trim())))
}

pub(crate) fn parse_list(s: &str, what: &str) -> Result<Vec<u64>> {
    s.split(',').map(|t| parse_u64(t, what)).collect()
}

/// Minimal generators `⟨β̄₀, …, β̄_g⟩` of the semigroup of a plane branch.
///
/// Admissibility is the standard plane-branch criterion: the partial gcds
/// `eᵢ` strictly decrease down to 1, and `nᵢ β̄ᵢ < β̄ᵢ₊₁` with
/// `nᵢ = eᵢ₋₁ / eᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct SemigroupGenerators {
    gens: Vec<u64>,
}

impl TryFrom<Vec<u64>> for SemigroupGenerators {
    type Error = Error;

    fn try_from(gens: Vec<u64>) -> Result<Self> {
        Self::new(gens)
    }
}

impl From<SemigroupGenerators> for Vec<u64> {
    fn from(s: SemigroupGenerators) -> Self {
        s.gens
    }
}

impl SemigroupGenerators {
    pub fn new(gens: Vec<u64>) -> Result<Self> {
        let Some(&n) = gens.first() else {
            return Err(Error::NotSingular("empty generator list".into()));
        };
        if n < 2 || gens.len() < 2 {
            return Err(Error::NotSingular(format!(
                "semigroup {} has multiplicity below 2 or no further generators",
                fmt_list(&gens)
            )));
        }
        let mut e = n;
        for (i, &b) in gens.iter().enumerate().skip(1) {
            let next = gcd(e, b);
            if next == e {
                return Err(Error::NotPlane(format!(
                    "generator {b} is a multiple of gcd {e} of the previous generators"
                )));
            }
            if i >= 2 {
                // n_{i-1} * gens[i-1] < gens[i]
                let ratio = self::prev_ratio(&gens, i - 1);
                let bound = error::mul(ratio, gens[i - 1], "plane-branch condition")?;
                if bound >= b {
                    return Err(Error::NotPlane(format!(
                        "{ratio}*{} = {bound} is not < {b}",
                        gens[i - 1]
                    )));
                }
            }
            e = next;
        }
        if e != 1 {
            return Err(Error::GcdNotOne(e));
        }
        if gens[1] < n {
            return Err(Error::NonIncreasing(format!(
                "second generator {} must exceed the multiplicity {n}",
                gens[1]
            )));
        }
        Ok(Self { gens })
    }

    pub fn gens(&self) -> &[u64] {
        &self.gens
    }

    pub fn multiplicity(&self) -> u64 {
        self.gens[0]
    }

    /// `(e₀, …, e_g)` with `eᵢ = gcd(β̄₀, …, β̄ᵢ)`.
    pub fn gcd_chain(&self) -> Vec<u64> {
        self.gens
            .iter()
            .scan(0, |e, &b| {
                *e = gcd(*e, b);
                Some(*e)
            })
            .collect()
    }

    /// Inverts the generator recursion: `βᵢ₊₁ = β̄ᵢ₊₁ − nᵢ β̄ᵢ + βᵢ`.
    pub fn char_exponents(&self) -> Result<CharacteristicExponents> {
        let e = self.gcd_chain();
        let mut beta = Vec::with_capacity(self.gens.len() - 1);
        beta.push(self.gens[1]);
        for i in 1..self.gens.len() - 1 {
            let ni = e[i - 1] / e[i];
            let scaled = error::mul(ni, self.gens[i], "characteristic exponent")?;
            let diff = self.gens[i + 1]
                .checked_sub(scaled)
                .ok_or_else(|| Error::NotPlane(format!("{scaled} exceeds {}", self.gens[i + 1])))?;
            beta.push(error::add(diff, beta[i - 1], "characteristic exponent")?);
        }
        CharacteristicExponents::new(self.gens[0], beta)
    }

    /// Conductor by the closed form `Σᵢ (nᵢ − 1) β̄ᵢ − n + 1`, cross-checked
    /// against an explicit membership sieve.
    pub fn conductor(&self) -> Result<u64> {
        let c = self.conductor_closed_form()?;
        let sieve = self.sieve(c)?;
        let by_sieve = sieve.iter().rposition(|&member| !member).map_or(0, |gap| gap as u64 + 1);
        if by_sieve != c {
            return Err(Error::InternalInvariantViolation(format!(
                "conductor of {self}: closed form {c}, sieve {by_sieve}"
            )));
        }
        Ok(c)
    }

    /// Number of gaps `|ℕ ∖ Γ|`.
    pub fn gap_count(&self) -> Result<u64> {
        let c = self.conductor()?;
        let sieve = self.sieve(c)?;
        Ok(sieve.iter().filter(|&&member| !member).count() as u64)
    }

    /// Membership of `0..=limit + n` in the semigroup. The extra `n` entries
    /// witness that everything from the conductor on is a member.
    fn sieve(&self, limit: u64) -> Result<Vec<bool>> {
        let len = error::add(limit, self.gens[0], "membership sieve")?;
        if len > MAX_SIEVE {
            return Err(Error::Overflow("membership sieve"));
        }
        let len = len as usize + 1;
        let mut member = vec![false; len];
        member[0] = true;
        for &g in &self.gens {
            let g = g as usize;
            for k in g..len {
                if member[k - g] {
                    member[k] = true;
                }
            }
        }
        if member[limit as usize..].iter().any(|&m| !m) {
            return Err(Error::InternalInvariantViolation(format!(
                "semigroup {self} has a gap at or above its conductor {limit}"
            )));
        }
        Ok(member)
    }

    fn conductor_closed_form(&self) -> Result<u64> {
        let e = self.gcd_chain();
        let mut acc = 0u64;
        for i in 1..self.gens.len() {
            let ni = e[i - 1] / e[i];
            acc = error::add(acc, error::mul(ni - 1, self.gens[i], "conductor")?, "conductor")?;
        }
        error::sub(error::add(acc, 1, "conductor")?, self.gens[0], "conductor")
    }
}

fn prev_ratio(gens: &[u64], i: usize) -> u64 {
    let e_prev = gens[..i].iter().fold(0, |e, &b| gcd(e, b));
    let e_cur = gcd(e_prev, gens[i]);
    e_prev / e_cur
}

fn fmt_list(xs: &[u64]) -> String {
    let inner: Vec<String> = xs.iter().map(u64::to_string).collect();
    format!("<{}>", inner.join(", "))
}

impl fmt::Display for SemigroupGenerators {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_list(&self.gens))
    }
}

/// Parses `g0,g1,...,gg`.
impl FromStr for SemigroupGenerators {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_list(s, "semigroup generator")?)
    }
}

/// Free function form of [`CharacteristicExponents::new`].
pub fn validate_char_exponents(n: u64, beta: &[u64]) -> Result<CharacteristicExponents> {
    CharacteristicExponents::new(n, beta.to_vec())
}

pub fn semigroup_from_char_exponents(c: &CharacteristicExponents) -> Result<SemigroupGenerators> {
    c.semigroup()
}

pub fn char_exponents_from_semigroup(s: &SemigroupGenerators) -> Result<CharacteristicExponents> {
    s.char_exponents()
}

pub fn conductor(s: &SemigroupGenerators) -> Result<u64> {
    s.conductor()
}

pub fn gap_count(s: &SemigroupGenerators) -> Result<u64> {
    s.gap_count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ce(n: u64, beta: &[u64]) -> CharacteristicExponents {
        validate_char_exponents(n, beta).unwrap()
    }

    fn sg(gens: &[u64]) -> SemigroupGenerators {
        SemigroupGenerators::new(gens.to_vec()).unwrap()
    }

    #[test]
    fn validates_cusp_and_two_pair_example() {
        assert_eq!(ce(2, &[3]).gcd_chain(), vec![2, 1]);
        assert_eq!(ce(4, &[6, 7]).gcd_chain(), vec![4, 2, 1]);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            validate_char_exponents(4, &[6, 8]),
            Err(Error::DivisibilityViolation { index: 2, value: 8, modulus: 2 })
        );
        assert!(matches!(validate_char_exponents(1, &[3]), Err(Error::NotSingular(_))));
        assert!(matches!(validate_char_exponents(3, &[]), Err(Error::NotSingular(_))));
        assert!(matches!(validate_char_exponents(4, &[3]), Err(Error::NonIncreasing(_))));
        assert!(matches!(validate_char_exponents(4, &[6, 5]), Err(Error::NonIncreasing(_))));
        assert!(matches!(validate_char_exponents(4, &[8]), Err(Error::DivisibilityViolation { .. })));
        assert_eq!(validate_char_exponents(4, &[6]), Err(Error::GcdNotOne(2)));
    }

    #[test]
    fn forward_conversion() {
        assert_eq!(ce(2, &[3]).semigroup().unwrap().gens(), &[2, 3]);
        assert_eq!(ce(4, &[6, 7]).semigroup().unwrap().gens(), &[4, 6, 13]);
        assert_eq!(ce(6, &[9, 13]).semigroup().unwrap().gens(), &[6, 9, 22]);
        // three pairs: e = (8, 4, 2, 1)
        // β̄₂ = 2·12 + 14 − 12 = 26, β̄₃ = 2·26 + 15 − 14 = 53
        assert_eq!(ce(8, &[12, 14, 15]).semigroup().unwrap().gens(), &[8, 12, 26, 53]);
    }

    #[test]
    fn inverse_conversion() {
        assert_eq!(sg(&[2, 3]).char_exponents().unwrap(), ce(2, &[3]));
        assert_eq!(sg(&[4, 6, 13]).char_exponents().unwrap(), ce(4, &[6, 7]));
        assert!(matches!(SemigroupGenerators::new(vec![4, 6, 12]), Err(Error::NotPlane(_))));
        assert!(matches!(SemigroupGenerators::new(vec![4, 6, 8, 9]), Err(Error::NotPlane(_))));
        assert!(matches!(SemigroupGenerators::new(vec![4, 6]), Err(Error::GcdNotOne(2))));
        assert!(matches!(SemigroupGenerators::new(vec![5, 3]), Err(Error::NonIncreasing(_))));
        assert!(matches!(SemigroupGenerators::new(vec![1, 3]), Err(Error::NotSingular(_))));
    }

    #[test]
    fn conductor_and_gaps() {
        assert_eq!(sg(&[2, 3]).conductor().unwrap(), 2);
        assert_eq!(sg(&[4, 6, 13]).conductor().unwrap(), 16);
        assert_eq!(sg(&[5, 7]).conductor().unwrap(), 24);
        assert_eq!(sg(&[2, 3]).gap_count().unwrap(), 1);
        assert_eq!(sg(&[5, 7]).gap_count().unwrap(), 12);
        assert_eq!(sg(&[4, 6, 13]).gap_count().unwrap(), 8);
    }

    #[test]
    fn parsing() {
        assert_eq!("4:6,7".parse::<CharacteristicExponents>().unwrap(), ce(4, &[6, 7]));
        assert_eq!(" 4 : 6 , 7 ".parse::<CharacteristicExponents>().unwrap(), ce(4, &[6, 7]));
        assert!(matches!("4,6,7".parse::<CharacteristicExponents>(), Err(Error::Parse(_))));
        assert!(matches!("4:x".parse::<CharacteristicExponents>(), Err(Error::Parse(_))));
        assert_eq!("4,6,13".parse::<SemigroupGenerators>().unwrap(), sg(&[4, 6, 13]));
    }

    #[test]
    fn overflow_is_reported() {
        let c = ce(4, &[u64::MAX - 1, u64::MAX]);
        assert_eq!(c.semigroup(), Err(Error::Overflow("semigroup generator")));
    }

    #[test]
    fn serde_validates() {
        let c: CharacteristicExponents = serde_json::from_str(r#"{"n":4,"beta":[6,7]}"#).unwrap();
        assert_eq!(c, ce(4, &[6, 7]));
        assert!(serde_json::from_str::<CharacteristicExponents>(r#"{"n":4,"beta":[6,8]}"#).is_err());
        assert_eq!(serde_json::to_string(&sg(&[4, 6, 13])).unwrap(), "[4,6,13]");
    }
}
