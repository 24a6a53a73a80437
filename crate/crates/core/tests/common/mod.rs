//! Helpers shared by the integration suites.
#![allow(dead_code)]

use std::sync::Arc;

use effectlab::algebra::{check_ea_hom, EaHom};
use effectlab::interval::{is_upper_bound_all, RationalChain, RationalScalar};
use effectlab::{check_poset_map, FinBoundedPoset, FinEffectAlgebra, PosetMap};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

/// Every assignment `0..n → 0..m`, as an odometer.
pub fn all_assignments(n: usize, m: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = m.checked_pow(n as u32).expect("small");
    (0..total).map(move |mut code| {
        (0..n)
            .map(|_| {
                let d = code % m;
                code /= m;
                d
            })
            .collect()
    })
}

/// All bounded poset morphisms `p → q`, by filtering every assignment.
pub fn all_morphisms(p: &Arc<FinBoundedPoset>, q: &Arc<FinBoundedPoset>) -> Vec<PosetMap> {
    all_assignments(p.size(), q.size())
        .filter_map(|a| PosetMap::new(p.clone(), q.clone(), a).ok())
        .filter(|f| check_poset_map(f).passed())
        .collect()
}

/// All effect algebra homomorphisms `e → f`.
pub fn all_ea_homs(e: &Arc<FinEffectAlgebra>, f: &Arc<FinEffectAlgebra>) -> Vec<EaHom> {
    all_assignments(e.size(), f.size())
        .filter_map(|a| EaHom::new(e.clone(), f.clone(), a).ok())
        .filter(|h| check_ea_hom(h).passed())
        .collect()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn scalar(v: BigRational) -> RationalScalar {
    RationalScalar::from_big(v).expect("inside [0,1]")
}

/// A rational strictly between `lo` and `hi` (or equal to `lo` when `closed_lo`).
fn between(rng: &mut impl Rng, lo: &BigRational, hi: &BigRational, closed_lo: bool) -> BigRational {
    let steps = 64;
    let r = if closed_lo {
        rng.gen_range(0..steps)
    } else {
        rng.gen_range(1..steps)
    };
    lo + (hi - lo) * q(r, steps)
}

/// A random chain above every `Sₙ`, built independently of the decision
/// procedure: a first interval `[0, c₂)` with `c₂` in a gap between the
/// `Sₙ` intervals, then the finitely many `[1/2k, 1/(2k−1))` above `c₂`
/// covered by randomly grouped intervals.
pub fn random_upper_bound(rng: &mut impl Rng) -> RationalChain {
    let one = q(1, 1);
    // c₂ ∈ [1/(2g−1), 1/(2g−2)) for a gap index g ≥ 2, or c₂ = 1.
    let g: i64 = rng.gen_range(1..12);
    let c2 = if g == 1 {
        one.clone()
    } else {
        between(rng, &q(1, 2 * g - 1), &q(1, 2 * g - 2), true)
    };
    let mut points = vec![q(0, 1), c2.clone()];
    // intervals [1/2k, 1/(2k−1)) for k = g−1 down to 1, ascending in value
    let mut k = g - 1;
    let mut prev_end = c2;
    while k >= 1 {
        let start = between(rng, &prev_end, &q(1, 2 * k), false);
        // swallow a random number of further intervals
        let last = k - rng.gen_range(0..k);
        let end = if last == 1 {
            one.clone()
        } else {
            between(rng, &q(1, 2 * last - 1), &q(1, 2 * last - 2), true)
        };
        points.push(start);
        points.push(end.clone());
        prev_end = end;
        k = last - 1;
    }
    let c = RationalChain::new(points.into_iter().map(scalar).collect()).expect("increasing");
    assert!(is_upper_bound_all(&c), "generator produced {c}");
    c
}
