//! Cross-checks against oracles that share no code with the library:
//! a blow-up simulation on Puiseux parameterizations, brute-force semigroup
//! membership and a brute-force filter over exponent tuples.

use std::collections::BTreeSet;

use branch_invariants::{
    enumerate_classes, full_report, multiplicity_sequence, validate_char_exponents, CharacteristicExponents,
    EnumerationBounds, PointKind,
};
use num_rational::BigRational;
use num_traits::{One, Zero};

type Q = BigRational;

/// Power series in `t` known up to (excluding) degree `prec`.
#[derive(Clone, Debug)]
struct Series {
    coeffs: Vec<Q>,
}

impl Series {
    fn monomials(exps: &[u64], prec: usize) -> Self {
        let mut coeffs = vec![Q::zero(); prec];
        for &e in exps {
            coeffs[e as usize] += Q::one();
        }
        Self { coeffs }
    }

    /// Order of vanishing; `None` if zero to the known precision.
    fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `self / other`, assuming `ord(self) >= ord(other)`.
    fn div(&self, other: &Series) -> Series {
        let k = other.ord().expect("divisor is nonzero");
        let a = &self.coeffs[k..];
        let b = &other.coeffs[k..];
        let prec = a.len().min(b.len());
        let mut q = vec![Q::zero(); prec];
        for i in 0..prec {
            let mut acc = a[i].clone();
            for j in 0..i {
                acc -= &q[j] * &b[i - j];
            }
            q[i] = acc / &b[0];
        }
        Series { coeffs: q }
    }

    fn shift_constant(mut self) -> (Series, Q) {
        let c = self.coeffs[0].clone();
        self.coeffs[0] = Q::zero();
        (self, c)
    }
}

/// Blows up the branch `x = t^n, y = Σ t^βᵢ` point by point until the total
/// transform has normal crossings, recording the multiplicity of the strict
/// transform and how many exceptional divisors pass through each point.
fn blow_up_oracle(n: u64, beta: &[u64]) -> Vec<(u64, PointKind)> {
    // each blow-up consumes `mult` coefficients; the multiplicities sum to β_g + n − 1
    let prec = 2 * (*beta.last().unwrap() + n) as usize + 4;
    let mut u = Series::monomials(&[n], prec);
    let mut v = Series::monomials(beta, prec);
    // whether the coordinate line {u = 0} / {v = 0} is an exceptional divisor
    let (mut u_div, mut v_div) = (false, false);
    let mut out = Vec::new();
    loop {
        let ou = u.ord().unwrap_or(usize::MAX);
        let ov = v.ord().unwrap_or(usize::MAX);
        let mult = ou.min(ov) as u64;
        let divisors = u_div as usize + v_div as usize;
        let transverse = (u_div && ou == 1) || (v_div && ov == 1);
        if mult == 1 && divisors == 1 && transverse {
            return out;
        }
        let kind = match (out.is_empty(), divisors) {
            (true, _) => PointKind::Origin,
            (false, 1) => PointKind::Free,
            (false, 2) => PointKind::Satellite,
            other => panic!("unexpected divisor configuration {other:?}"),
        };
        out.push((mult, kind));
        if ou <= ov {
            let (w, c) = v.div(&u).shift_constant();
            v = w;
            v_div = v_div && c.is_zero();
            u_div = true;
        } else {
            let (w, c) = u.div(&v).shift_constant();
            u = w;
            u_div = u_div && c.is_zero();
            v_div = true;
        }
        assert!(out.len() < 10_000, "blow-up oracle did not terminate");
    }
}

fn library_sequence(c: &CharacteristicExponents) -> Vec<(u64, PointKind)> {
    multiplicity_sequence(c).unwrap().iter().map(|p| (p.multiplicity, p.kind)).collect()
}

#[test]
fn blow_up_oracle_on_worked_examples() {
    use PointKind::*;
    assert_eq!(blow_up_oracle(2, &[3]), vec![(2, Origin), (1, Free), (1, Satellite)]);
    assert_eq!(
        blow_up_oracle(5, &[7]),
        vec![(5, Origin), (2, Free), (2, Satellite), (1, Satellite), (1, Satellite)]
    );
    assert_eq!(
        blow_up_oracle(4, &[6, 7]),
        vec![(4, Origin), (2, Free), (2, Satellite), (1, Free), (1, Satellite)]
    );
}

#[test]
fn sequences_match_blow_up_simulation() {
    let b = EnumerationBounds::new(8, 30, None).unwrap();
    let mut count = 0;
    for c in enumerate_classes(b) {
        assert_eq!(library_sequence(&c), blow_up_oracle(c.n(), c.beta()), "class {c}");
        count += 1;
    }
    assert!(count > 100);
}

#[test]
fn three_pair_sequences_match_blow_up_simulation() {
    for (n, beta) in [(8, vec![12, 14, 15]), (8, vec![12, 18, 19]), (12, vec![18, 20, 21]), (16, vec![24, 28, 30, 31])] {
        let c = validate_char_exponents(n, &beta).unwrap();
        assert_eq!(library_sequence(&c), blow_up_oracle(n, &beta), "class {c}");
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Is `x` a non-negative integer combination of `gens`?
fn representable(x: u64, gens: &[u64]) -> bool {
    match gens.split_first() {
        None => x == 0,
        Some((&g, rest)) => (0..=x / g).any(|k| representable(x - k * g, rest)),
    }
}

/// Gaps and conductor by brute-force membership, scanning until `n`
/// consecutive members are found.
fn brute_gaps(gens: &[u64]) -> (u64, u64) {
    let n = gens[0];
    let (mut gaps, mut last_gap, mut run, mut x) = (0, None, 0, 0u64);
    while run < n {
        if representable(x, gens) {
            run += 1;
        } else {
            gaps += 1;
            last_gap = Some(x);
            run = 0;
        }
        x += 1;
    }
    (gaps, last_gap.map_or(0, |g| g + 1))
}

#[test]
fn conductor_and_gap_count_examples() {
    assert_eq!(brute_gaps(&[2, 3]), (1, 2));
    assert_eq!(brute_gaps(&[5, 7]), (12, 24));
    assert_eq!(brute_gaps(&[4, 6, 13]), (8, 16));
}

#[test]
fn semigroup_quantities_match_brute_force() {
    let b = EnumerationBounds::new(8, 30, None).unwrap();
    for c in enumerate_classes(b) {
        let s = c.semigroup().unwrap();
        let (gaps, conductor) = brute_gaps(s.gens());
        assert_eq!(s.gap_count().unwrap(), gaps, "{c}");
        assert_eq!(s.conductor().unwrap(), conductor, "{c}");
        assert_eq!(full_report(&c).unwrap().mu, 2 * gaps, "{c}");
    }
}

/// All exponent tuples passing the defining conditions, checked directly.
fn brute_force_classes(max_n: u64, max_beta: u64) -> BTreeSet<(u64, Vec<u64>)> {
    fn extend(n: u64, prefix: &mut Vec<u64>, max_beta: u64, out: &mut BTreeSet<(u64, Vec<u64>)>) {
        if prefix.len() == 4 {
            return;
        }
        let start = prefix.last().copied().unwrap_or(n) + 1;
        for b in start..=max_beta {
            prefix.push(b);
            let mut e = vec![n];
            for &x in prefix.iter() {
                e.push(gcd(*e.last().unwrap(), x));
            }
            let strictly_decreasing = e.windows(2).all(|w| w[1] < w[0]);
            if strictly_decreasing {
                if *e.last().unwrap() == 1 {
                    out.insert((n, prefix.clone()));
                } else {
                    extend(n, prefix, max_beta, out);
                }
            }
            prefix.pop();
        }
    }
    let mut out = BTreeSet::new();
    for n in 2..=max_n {
        extend(n, &mut Vec::new(), max_beta, &mut out);
    }
    out
}

#[test]
fn enumeration_matches_brute_force_filter() {
    let b = EnumerationBounds::new(6, 30, None).unwrap();
    let listed: Vec<_> = enumerate_classes(b).map(|c| (c.n(), c.beta().to_vec())).collect();
    let expected: Vec<_> = brute_force_classes(6, 30).into_iter().collect();
    // lexicographic, duplicate-free and complete
    assert_eq!(listed, expected);
}

#[test]
fn enumeration_counts() {
    assert_eq!(brute_force_classes(2, 10).len(), 4);
    assert_eq!(brute_force_classes(3, 10).len(), 9);
    assert_eq!(brute_force_classes(2, 3).len(), 1);
}

#[test]
fn gcd_chain_hand_examples() {
    // 4 -> gcd(4, 6) = 2 -> gcd(2, 7) = 1
    assert_eq!(validate_char_exponents(4, &[6, 7]).unwrap().gcd_chain(), vec![4, 2, 1]);
    assert_eq!(validate_char_exponents(12, &[18, 20, 21]).unwrap().gcd_chain(), vec![12, 6, 2, 1]);
}
