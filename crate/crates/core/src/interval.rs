//! The rational unit interval as an effect monoid, and the descending
//! upper bounds showing that the chains `Sₙ` have no least upper bound in
//! its Kalmbach extension.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::EffectAlgebra;
use crate::monoid::EffectMonoid;
use crate::{Error, Result};

/// An exact rational in `[0, 1]`, always in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalScalar(BigRational);

impl RationalScalar {
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::malformed("zero denominator"));
        }
        Self::from_big(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_big(value: BigRational) -> Result<Self> {
        if value < BigRational::zero() || value > BigRational::one() {
            return Err(Error::malformed(format!("{value} is outside [0,1]")));
        }
        Ok(RationalScalar(value))
    }

    pub fn zero() -> Self {
        RationalScalar(BigRational::zero())
    }

    pub fn one() -> Self {
        RationalScalar(BigRational::one())
    }

    /// `1/n` for `n ≥ 1`.
    pub fn reciprocal(n: u64) -> Self {
        assert!(n >= 1, "1/0 is not in [0,1]");
        RationalScalar(BigRational::new(BigInt::one(), BigInt::from(n)))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for RationalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for RationalScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::malformed(format!("`{s}` is not a rational p/q"));
        let value = match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
        };
        Self::from_big(value)
    }
}

/// `a + b` when it stays `≤ 1`.
pub fn q_sum(a: &RationalScalar, b: &RationalScalar) -> Option<RationalScalar> {
    let s = &a.0 + &b.0;
    (s <= BigRational::one()).then_some(RationalScalar(s))
}

/// `1 − a`.
pub fn q_perp(a: &RationalScalar) -> RationalScalar {
    RationalScalar(BigRational::one() - &a.0)
}

pub fn q_mul(a: &RationalScalar, b: &RationalScalar) -> RationalScalar {
    RationalScalar(&a.0 * &b.0)
}

/// `[0,1] ∩ ℚ` with truncated addition and ordinary multiplication.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct UnitInterval;

impl EffectAlgebra for UnitInterval {
    type Elem = RationalScalar;

    fn zero(&self) -> RationalScalar {
        RationalScalar::zero()
    }

    fn one(&self) -> RationalScalar {
        RationalScalar::one()
    }

    fn sum(&self, a: &RationalScalar, b: &RationalScalar) -> Option<RationalScalar> {
        q_sum(a, b)
    }

    fn perp(&self, a: &RationalScalar) -> RationalScalar {
        q_perp(a)
    }

    fn ominus(&self, b: &RationalScalar, a: &RationalScalar) -> Option<RationalScalar> {
        (a <= b).then(|| RationalScalar(&b.0 - &a.0))
    }

    fn show(&self, a: &RationalScalar) -> String {
        a.to_string()
    }

    fn leq(&self, a: &RationalScalar, b: &RationalScalar) -> bool {
        a <= b
    }
}

impl EffectMonoid for UnitInterval {
    fn mul(&self, a: &RationalScalar, b: &RationalScalar) -> RationalScalar {
        q_mul(a, b)
    }
}

/// Every rational in `[0,1]` with denominator at most `n`, ascending.
pub fn farey(n: u64) -> Vec<RationalScalar> {
    let mut out: Vec<RationalScalar> = (1..=n.max(1))
        .flat_map(|d| (0..=d).map(move |k| (k, d)))
        .map(|(k, d)| RationalScalar(BigRational::new(k.into(), d.into())))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// A strictly increasing even-length list of rationals, read as the
/// half-open intervals `[p₁,p₂) ∪ [p₃,p₄) ∪ …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalChain {
    points: Vec<RationalScalar>,
}

impl RationalChain {
    pub fn new(points: Vec<RationalScalar>) -> Result<Self> {
        if points.len() % 2 != 0 {
            return Err(Error::malformed("rational chain has odd length"));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::malformed("rational chain is not strictly increasing"));
        }
        Ok(RationalChain { points })
    }

    pub fn points(&self) -> &[RationalScalar] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn intervals(&self) -> impl Iterator<Item = (&RationalScalar, &RationalScalar)> {
        self.points.chunks_exact(2).map(|c| (&c[0], &c[1]))
    }
}

impl fmt::Display for RationalChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.points.is_empty() {
            return f.write_str("∅");
        }
        f.write_str("[")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str("<")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

/// `Sₙ = [1/2n < 1/(2n−1) < … < 1/2 < 1]`.
pub fn s_chain(n: u64) -> Result<RationalChain> {
    if n == 0 {
        return Err(Error::precondition("Sₙ is defined for n ≥ 1"));
    }
    let points = (1..=2 * n).rev().map(RationalScalar::reciprocal).collect();
    RationalChain::new(points)
}

/// Interval containment with exact comparisons.
pub fn rchain_leq(s: &RationalChain, t: &RationalChain) -> bool {
    s.intervals()
        .all(|(lo, hi)| t.intervals().any(|(a, b)| a <= lo && hi <= b))
}

/// `[1/2k, 1/(2k−1))`, the k-th interval shared by all `Sₙ` with `n ≥ k`.
fn s_interval(k: u64) -> (RationalScalar, RationalScalar) {
    (RationalScalar::reciprocal(2 * k), RationalScalar::reciprocal(2 * k - 1))
}

fn covers(c: &RationalChain, lo: &RationalScalar, hi: &RationalScalar) -> bool {
    c.intervals().any(|(a, b)| a <= lo && hi <= b)
}

/// Whether `c ≥ Sₙ` for every `n ≥ 1`.
///
/// The union of all `Sₙ` is the intervals `[1/2k, 1/(2k−1))` for `k ≥ 1`,
/// which accumulate at 0. So `c` must start with an interval `[0, c₂)`,
/// which swallows every such interval with `1/(2k−1) ≤ c₂`; the finitely
/// many others must each lie in some interval of `c`.
pub fn is_upper_bound_all(c: &RationalChain) -> bool {
    let Some((first, c2)) = c.intervals().next() else {
        return false;
    };
    if !first.is_zero() {
        return false;
    }
    let mut k = 1u64;
    loop {
        let (lo, hi) = s_interval(k);
        if hi <= *c2 {
            return true;
        }
        if !covers(c, &lo, &hi) {
            return false;
        }
        k += 1;
    }
}

/// Checks `Sₙ ≤ c` for `n = 1..=n_max` directly.
pub fn upper_bound_sampled(c: &RationalChain, n_max: u64) -> bool {
    (1..=n_max).all(|n| rchain_leq(&s_chain(n).expect("n ≥ 1"), c))
}

/// A strictly smaller upper bound: `c ∪ {1/(2k+1), 1/2k}` for the least
/// `k` with `1/(2k−1) ≤ c₂`, which removes the gap `[1/(2k+1), 1/2k)` from
/// the first interval `[0, c₂)`.
pub fn descend(c: &RationalChain) -> Result<RationalChain> {
    if !is_upper_bound_all(c) {
        return Err(Error::precondition(format!("{c} is not an upper bound of every Sₙ")));
    }
    let c2 = &c.points[1];
    // least k with 2k−1 ≥ 1/c₂, i.e. k = ⌈(⌈1/c₂⌉ + 1)/2⌉
    let inv = (BigRational::one() / c2.value()).ceil().to_integer();
    let m: u64 = u64::try_from(inv).map_err(|_| Error::precondition("chain too fine to descend"))?;
    let k = (m + 2) / 2;
    let mut points = Vec::with_capacity(c.len() + 2);
    points.push(c.points[0].clone());
    points.push(RationalScalar::reciprocal(2 * k + 1));
    points.push(RationalScalar::reciprocal(2 * k));
    points.extend(c.points[1..].iter().cloned());
    let next = RationalChain::new(points)?;
    if !(rchain_leq(&next, c) && next != *c && is_upper_bound_all(&next)) {
        return Err(Error::precondition(format!("descent from {c} did not certify")));
    }
    Ok(next)
}

/// `[0<1]` followed by `steps` descents: a strictly decreasing sequence of
/// upper bounds of all `Sₙ`.
pub fn no_lub_witness(steps: usize) -> Result<Vec<RationalChain>> {
    if steps == 0 {
        return Err(Error::precondition("at least one descent step is needed"));
    }
    let mut out = vec![RationalChain::new(vec![RationalScalar::zero(), RationalScalar::one()])?];
    for _ in 0..steps {
        let next = descend(out.last().expect("non-empty"))?;
        out.push(next);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> RationalScalar {
        s.parse().unwrap()
    }

    fn chain(ps: &[&str]) -> RationalChain {
        RationalChain::new(ps.iter().map(|p| q(p)).collect()).unwrap()
    }

    #[test]
    fn arithmetic() {
        assert_eq!(q_sum(&q("1/3"), &q("1/3")), Some(q("2/3")));
        assert_eq!(q_sum(&q("3/4"), &q("3/4")), None);
        assert_eq!(q_perp(&q("3/4")), q("1/4"));
        assert_eq!(q_mul(&q("2/3"), &q("3/4")), q("1/2"));
        assert_eq!(UnitInterval.ominus(&q("3/4"), &q("1/4")), Some(q("1/2")));
        assert_eq!(q("2/4").to_string(), "1/2");
        assert!("3/2".parse::<RationalScalar>().is_err());
        assert!("1/0".parse::<RationalScalar>().is_err());
    }

    #[test]
    fn s_chains() {
        assert_eq!(s_chain(1).unwrap(), chain(&["1/2", "1"]));
        assert_eq!(s_chain(2).unwrap(), chain(&["1/4", "1/3", "1/2", "1"]));
        assert_eq!(s_chain(5).unwrap().len(), 10);
        assert!(rchain_leq(&s_chain(1).unwrap(), &s_chain(2).unwrap()));
        assert!(!rchain_leq(&chain(&["1/4", "1"]), &chain(&["1/2", "1"])));
    }

    #[test]
    fn upper_bound_criterion() {
        assert!(is_upper_bound_all(&chain(&["0", "1"])));
        assert!(!is_upper_bound_all(&chain(&["1/4", "1"])));
        assert!(!is_upper_bound_all(&chain(&["0", "1/5", "1/2", "1"])));
        assert!(!is_upper_bound_all(&RationalChain::new(vec![]).unwrap()));
    }

    #[test]
    fn descent_steps() {
        let d1 = descend(&chain(&["0", "1"])).unwrap();
        assert_eq!(d1, chain(&["0", "1/3", "1/2", "1"]));
        let d2 = descend(&d1).unwrap();
        assert_eq!(d2, chain(&["0", "1/5", "1/4", "1/3", "1/2", "1"]));
        assert!(matches!(descend(&chain(&["1/4", "1"])), Err(Error::Precondition(_))));
    }

    #[test]
    fn witness_lengths() {
        let w = no_lub_witness(3).unwrap();
        let lens: Vec<usize> = w.iter().map(RationalChain::len).collect();
        assert_eq!(lens, [2, 4, 6, 8]);
        assert_eq!(no_lub_witness(1).unwrap().len(), 2);
    }

    #[test]
    fn farey_is_sorted_and_reduced() {
        let f = farey(4);
        let shown: Vec<String> = f.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["0", "1/4", "1/3", "1/2", "2/3", "3/4", "1"]);
    }
}
