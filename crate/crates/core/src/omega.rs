//! Increasing sequences modulo eventual equality, suprema, and the interval
//! pairs used by the multiplication of an effect monoid.
//!
//! Over a finite poset every increasing sequence stabilizes, so a sequence
//! is stored as a finite prefix followed by a constant tail.

use std::sync::Arc;

use crate::algebra::EffectAlgebra;
use crate::monoid::{EffectMonoid, FinEffectMonoid};
use crate::poset::{check_poset_map, FinBoundedPoset, PosetMap};
use crate::report::{Law, Report};
use crate::{ElemId, Error, Result};

/// `s(i) = prefix[i]` for `i < prefix.len()`, and `tail` afterwards.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonotoneSeq {
    pub prefix: Vec<ElemId>,
    pub tail: ElemId,
}

impl MonotoneSeq {
    pub fn constant(x: ElemId) -> Self {
        MonotoneSeq {
            prefix: Vec::new(),
            tail: x,
        }
    }

    /// Validates monotonicity in `p`.
    pub fn new(prefix: Vec<ElemId>, tail: ElemId, p: &FinBoundedPoset) -> Result<Self> {
        if prefix.iter().chain([&tail]).any(|&x| x >= p.size()) {
            return Err(Error::malformed("sequence value outside the poset"));
        }
        let s = MonotoneSeq { prefix, tail };
        let vals: Vec<ElemId> = (0..=s.prefix.len()).map(|i| s.at(i)).collect();
        if vals.windows(2).any(|w| !p.leq(w[0], w[1])) {
            return Err(Error::precondition("sequence is not increasing"));
        }
        Ok(s)
    }

    pub fn at(&self, i: usize) -> ElemId {
        self.prefix.get(i).copied().unwrap_or(self.tail)
    }

    /// The sequence `f(s(0)), f(s(1)), …`.
    pub fn map(&self, f: impl Fn(ElemId) -> ElemId) -> Self {
        MonotoneSeq {
            prefix: self.prefix.iter().map(|&x| f(x)).collect(),
            tail: f(self.tail),
        }
    }

    /// Every value the sequence takes.
    pub fn values(&self) -> Vec<ElemId> {
        let mut v = self.prefix.clone();
        v.push(self.tail);
        v
    }
}

/// `s ≤ t` iff `s(i) ≤ t(i)` for all `i ≥ N`, decided at `N` = the longer prefix.
pub fn seq_leq(p: &FinBoundedPoset, s: &MonotoneSeq, t: &MonotoneSeq) -> bool {
    let n = s.prefix.len().max(t.prefix.len());
    p.leq(s.at(n), t.at(n))
}

/// Eventual equality.
pub fn seq_eq(s: &MonotoneSeq, t: &MonotoneSeq) -> bool {
    let n = s.prefix.len().max(t.prefix.len());
    s.at(n) == t.at(n)
}

/// `I(P)`: classes of increasing sequences with their stabilization map.
#[derive(Debug, Clone)]
pub struct SeqFunctor {
    pub base: Arc<FinBoundedPoset>,
    pub poset: Arc<FinBoundedPoset>,
    /// One representative per class.
    pub representatives: Vec<MonotoneSeq>,
    /// Class ↦ eventual value, certified an order isomorphism.
    pub stabilization: PosetMap,
}

impl SeqFunctor {
    /// The class containing `s`.
    pub fn class_of(&self, s: &MonotoneSeq) -> ElemId {
        self.representatives
            .iter()
            .position(|r| seq_eq(r, s))
            .expect("every increasing sequence stabilizes on an element")
    }
}

/// Builds `I(p)` from all increasing sequences with a prefix of length at
/// most one, grouped by eventual equality, and certifies `I(p) ≅ p`.
pub fn seq_functor(p: &Arc<FinBoundedPoset>) -> Result<SeqFunctor> {
    let mut sequences: Vec<MonotoneSeq> = p.elements().map(MonotoneSeq::constant).collect();
    for x in p.elements() {
        for y in p.elements().filter(|&y| p.leq(y, x)) {
            sequences.push(MonotoneSeq {
                prefix: vec![y],
                tail: x,
            });
        }
    }
    let mut representatives: Vec<MonotoneSeq> = Vec::new();
    for s in sequences {
        if !representatives.iter().any(|r| seq_eq(r, &s)) {
            representatives.push(s);
        }
    }
    let n = representatives.len();
    let leq = (0..n * n)
        .map(|i| seq_leq(p, &representatives[i / n], &representatives[i % n]))
        .collect();
    let labels = representatives
        .iter()
        .map(|r| format!("~{}", p.label(r.tail)))
        .collect();
    let bottom = representatives
        .iter()
        .position(|r| seq_eq(r, &MonotoneSeq::constant(p.bottom())))
        .expect("constant bottom");
    let top = representatives
        .iter()
        .position(|r| seq_eq(r, &MonotoneSeq::constant(p.top())))
        .expect("constant top");
    let poset = Arc::new(FinBoundedPoset::new(labels, leq, bottom, top)?);
    let stab: Vec<ElemId> = representatives.iter().map(|r| r.at(r.prefix.len())).collect();
    let stabilization = PosetMap::new(poset.clone(), p.clone(), stab)?;

    let mut report = check_poset_map(&stabilization);
    let mut hit = vec![false; p.size()];
    for c in poset.elements() {
        hit[stabilization.apply(c)] = true;
        for d in poset.elements() {
            if poset.leq(c, d) != p.leq(stabilization.apply(c), stabilization.apply(d)) {
                report.push(Law::StabilizationIsomorphism, [poset.label(c), poset.label(d)]);
            }
        }
    }
    if n != p.size() || hit.iter().any(|h| !h) {
        report.push_note(
            Law::StabilizationIsomorphism,
            Vec::<String>::new(),
            format!("{n} classes for {} elements", p.size()),
        );
    }
    report.into_result()?;
    Ok(SeqFunctor {
        base: p.clone(),
        poset,
        representatives,
        stabilization,
    })
}

/// `x ↦` class of the constant sequence at `x`.
pub fn const_embedding(i: &SeqFunctor) -> PosetMap {
    let assignment = i
        .base
        .elements()
        .map(|x| i.class_of(&MonotoneSeq::constant(x)))
        .collect();
    PosetMap::new(i.base.clone(), i.poset.clone(), assignment).expect("classes of constants")
}

/// `S`: class ↦ supremum of the values of its representative.
pub fn sup_map(i: &SeqFunctor) -> Result<PosetMap> {
    let assignment = i
        .representatives
        .iter()
        .map(|r| {
            i.base
                .supremum(&r.values())
                .ok_or_else(|| Error::precondition("increasing sequence without a supremum"))
        })
        .collect::<Result<Vec<_>>>()?;
    PosetMap::new(i.poset.clone(), i.base.clone(), assignment)
}

/// `I(f)`: apply `f` termwise.
pub fn seq_map(f: &PosetMap, source: &SeqFunctor, target: &SeqFunctor) -> Result<PosetMap> {
    if **f.source() != *source.base || **f.target() != *target.base {
        return Err(Error::precondition("sequence functors do not match the map"));
    }
    let assignment = source
        .representatives
        .iter()
        .map(|r| target.class_of(&r.map(|x| f.apply(x))))
        .collect();
    PosetMap::new(source.poset.clone(), target.poset.clone(), assignment)
}

/// `S ∘ const = id`.
pub fn check_sup_after_const(i: &SeqFunctor) -> Result<Report> {
    let s = sup_map(i)?;
    let c = const_embedding(i);
    let mut report = Report::default();
    for x in i.base.elements() {
        if s.apply(c.apply(x)) != x {
            report.push(Law::SupAfterConst, [i.base.label(x)]);
        }
    }
    Ok(report)
}

/// `S ∘ I(f) = f ∘ S` and `I(f) ∘ const = const ∘ f`.
pub fn check_seq_naturality(f: &PosetMap, source: &SeqFunctor, target: &SeqFunctor) -> Result<Report> {
    let i_f = seq_map(f, source, target)?;
    let (s_src, s_tgt) = (sup_map(source)?, sup_map(target)?);
    let (c_src, c_tgt) = (const_embedding(source), const_embedding(target));
    let mut report = Report::default();
    for c in source.poset.elements() {
        if s_tgt.apply(i_f.apply(c)) != f.apply(s_src.apply(c)) {
            report.push(Law::SupNatural, [source.poset.label(c)]);
        }
    }
    for x in source.base.elements() {
        if i_f.apply(c_src.apply(x)) != c_tgt.apply(f.apply(x)) {
            report.push(Law::ConstNatural, [source.base.label(x)]);
        }
    }
    Ok(report)
}

/// `f(⋁ sᵢ) = ⋁ f(sᵢ)` for every increasing sequence.
///
/// Up to repetition an increasing sequence in a finite poset is a chain, so
/// all chains of the source are visited. Non-monotone or bound-breaking
/// assignments are rejected before any sequence is examined.
pub fn check_omega_normal(f: &PosetMap) -> Result<Report> {
    let pre = check_poset_map(f);
    if !pre.passed() {
        return Err(Error::precondition(format!(
            "not a bounded poset morphism:\n{pre}"
        )));
    }
    let (p, q) = (f.source(), f.target());
    let mut report = Report::default();
    let order = p.linear_extension();
    let mut chain = Vec::new();
    for &x in &order {
        chain.push(x);
        visit_chains(p, q, f, &order, &mut chain, &mut report);
        chain.pop();
    }
    Ok(report)
}

fn visit_chains(
    p: &FinBoundedPoset,
    q: &FinBoundedPoset,
    f: &PosetMap,
    order: &[ElemId],
    chain: &mut Vec<ElemId>,
    report: &mut Report,
) {
    let sup = p.supremum(chain);
    let images: Vec<ElemId> = chain.iter().map(|&x| f.apply(x)).collect();
    if sup.map(|s| f.apply(s)) != q.supremum(&images) {
        let w: Vec<&str> = chain.iter().map(|&x| p.label(x)).collect();
        report.push(Law::OmegaNormal, [w.join("<")]);
    }
    let last = *chain.last().expect("non-empty");
    for &y in order {
        if p.lt(last, y) {
            chain.push(y);
            visit_chains(p, q, f, order, chain, report);
            chain.pop();
        }
    }
}

/// `[x₁≤y₁] ≤ [x₂≤y₂]` iff `x₂ ≤ x₁` and `y₁ ≤ y₂`.
pub fn interval_leq<T: EffectAlgebra>(t: &T, i: (&T::Elem, &T::Elem), j: (&T::Elem, &T::Elem)) -> bool {
    t.leq(j.0, i.0) && t.leq(i.1, j.1)
}

/// `ε(0) = (0,0)`, `ε(a) = (a,1)` otherwise.
pub fn epsilon<T: EffectAlgebra>(t: &T, a: &T::Elem) -> (T::Elem, T::Elem) {
    if *a == t.zero() {
        (t.zero(), t.zero())
    } else {
        (a.clone(), t.one())
    }
}

/// `β(a, [b≤c]) = [a·b ≤ a·c]`.
pub fn beta<T: EffectMonoid>(t: &T, a: &T::Elem, b: &T::Elem, c: &T::Elem) -> (T::Elem, T::Elem) {
    (t.mul(a, b), t.mul(a, c))
}

/// The multiplication equations on every tuple drawn from `universe`:
/// `μ∘ε = id`, `μᴸ = μᴿ`, `a·(c⊖b) = (a·c)⊖(a·b)` for `b ≤ c`, and that `ε`
/// and `β` are morphisms into the pair and interval posets.
///
/// `β` is checked in its interval argument for each fixed `a`, together
/// with `β(1,[0≤1]) = [0≤1]`; see [`beta_joint_monotonicity_failure`].
pub fn check_monoid_naturality_on<T: EffectMonoid>(t: &T, universe: &[T::Elem]) -> Report {
    let mut report = Report::default();
    let s = |a: &T::Elem| t.show(a);
    let (zero, one) = (t.zero(), t.one());
    for a in universe {
        let (x, y) = epsilon(t, a);
        if t.mul(&x, &y) != *a {
            report.push(Law::MulAfterEpsilon, [s(a)]);
        }
        for b in universe {
            if t.leq(a, b) {
                let (ea, eb) = (epsilon(t, a), epsilon(t, b));
                if !(t.leq(&ea.0, &eb.0) && t.leq(&ea.1, &eb.1)) {
                    report.push(Law::EpsilonMorphism, [s(a), s(b)]);
                }
            }
            for c in universe {
                if t.mul(&t.mul(a, b), c) != t.mul(a, &t.mul(b, c)) {
                    report.push(Law::MulLeftEqualsRight, [s(a), s(b), s(c)]);
                }
                let Some(d) = t.ominus(c, b) else { continue };
                let lhs = t.mul(a, &d);
                let (ab, ac) = beta(t, a, b, c);
                if !t.leq(&ab, &ac) {
                    report.push(Law::BetaLandsInIntervals, [s(a), s(b), s(c)]);
                    continue;
                }
                if t.ominus(&ac, &ab) != Some(lhs) {
                    report.push(Law::DifferenceDistributive, [s(a), s(b), s(c)]);
                }
            }
        }
    }
    let e0 = epsilon(t, &zero);
    let e1 = epsilon(t, &one);
    if e0 != (zero.clone(), zero.clone()) || e1 != (one.clone(), one.clone()) {
        report.push(Law::EpsilonMorphism, [s(&zero), s(&one)]);
    }
    if beta(t, &one, &zero, &one) != (zero.clone(), one.clone()) {
        report.push(Law::BetaPreservesTop, [s(&one), s(&zero), s(&one)]);
    }
    report
}

/// Monotonicity of `β(a, −)` on `I₂`, for finite monoids.
fn check_beta_interval_monotone(m: &FinEffectMonoid, report: &mut Report) {
    let intervals: Vec<(ElemId, ElemId)> = m
        .elements()
        .flat_map(|b| m.elements().map(move |c| (b, c)))
        .filter(|&(b, c)| m.ea().leq_id(b, c))
        .collect();
    for a in m.elements() {
        for &(b, c) in &intervals {
            for &(b2, c2) in &intervals {
                if !interval_leq(m, (&b, &c), (&b2, &c2)) {
                    continue;
                }
                let (x, y) = beta(m, &a, &b, &c);
                let (x2, y2) = beta(m, &a, &b2, &c2);
                if !interval_leq(m, (&x, &y), (&x2, &y2)) {
                    report.push(
                        Law::BetaMonotoneInInterval,
                        [m.label(a), m.label(b), m.label(c), m.label(b2), m.label(c2)],
                    );
                }
            }
        }
    }
}

/// All naturality equations on a finite monoid.
pub fn check_monoid_naturality(m: &FinEffectMonoid) -> Report {
    let all: Vec<ElemId> = m.elements().collect();
    let mut report = check_monoid_naturality_on(m, &all);
    check_beta_interval_monotone(m, &mut report);
    report
}

/// `⊖: I₂(E) → E` is monotone.
pub fn check_difference_monotone<T: EffectAlgebra>(t: &T, universe: &[T::Elem]) -> Report {
    let mut report = Report::default();
    let mut intervals = Vec::new();
    for b in universe {
        for c in universe {
            if let Some(d) = t.ominus(c, b) {
                intervals.push((b, c, d));
            }
        }
    }
    for (b, c, d) in &intervals {
        for (b2, c2, d2) in &intervals {
            if interval_leq(t, (b, c), (b2, c2)) && !t.leq(d, d2) {
                report.push(
                    Law::DifferenceMonotone,
                    [t.show(b), t.show(c), t.show(b2), t.show(c2)],
                );
            }
        }
    }
    report
}

/// A pair `(a,[b≤c]) ≤ (a',[b'≤c'])` in `A × I₂(A)` whose images under `β`
/// are not ordered, returned as `[a, b, c, a', b', c']`.
///
/// Already `{0,1}` has one: `(0,[1≤1]) ≤ (1,[1≤1])` goes to `[0≤0]` and
/// `[1≤1]`, which are incomparable. So `β` is only monotone in its interval
/// argument, not jointly.
pub fn beta_joint_monotonicity_failure(m: &FinEffectMonoid) -> Option<[ElemId; 6]> {
    let e = m.ea();
    let intervals: Vec<(ElemId, ElemId)> = m
        .elements()
        .flat_map(|b| m.elements().map(move |c| (b, c)))
        .filter(|&(b, c)| e.leq_id(b, c))
        .collect();
    for a in m.elements() {
        for a2 in m.elements().filter(|&a2| e.leq_id(a, a2)) {
            for &(b, c) in &intervals {
                for &(b2, c2) in &intervals {
                    if !interval_leq(m, (&b, &c), (&b2, &c2)) {
                        continue;
                    }
                    let (x, y) = beta(m, &a, &b, &c);
                    let (x2, y2) = beta(m, &a2, &b2, &c2);
                    if !interval_leq(m, (&x, &y), (&x2, &y2)) {
                        return Some([a, b, c, a2, b2, c2]);
                    }
                }
            }
        }
    }
    None
}
