//! Effect monoids: multiplication laws, idempotents, corners and the finite
//! classification.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    check_effect_algebra, ea_product, find_table_isomorphism, EffectAlgebra, FinEffectAlgebra,
};
use crate::canon::{invariant_blocks, least_encoding};
use crate::io::{serialize, Document};
use crate::omp::{check_boolean, omp_to_ea, OrthoPoset};
use crate::poset::bounded_labels;
use crate::report::{Law, Report};
use crate::{ElemId, Error, Result};

/// An effect algebra with a total multiplication.
pub trait EffectMonoid: EffectAlgebra {
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

/// Unitality, associativity and two-sided distributivity on every tuple
/// drawn from `universe`.
pub fn check_effect_monoid_on<T: EffectMonoid>(t: &T, universe: &[T::Elem]) -> Report {
    let mut report = Report::default();
    let s = |a: &T::Elem| t.show(a);
    let one = t.one();
    for x in universe {
        if t.mul(x, &one) != *x {
            report.push(Law::UnitalRight, [s(x)]);
        }
        if t.mul(&one, x) != *x {
            report.push(Law::UnitalLeft, [s(x)]);
        }
        for y in universe {
            let xy = t.mul(x, y);
            for z in universe {
                if t.mul(x, &t.mul(y, z)) != t.mul(&xy, z) {
                    report.push(Law::MulAssociative, [s(x), s(y), s(z)]);
                }
                let Some(yz) = t.sum(y, z) else { continue };
                let left = t.sum(&xy, &t.mul(x, z));
                if left != Some(t.mul(x, &yz)) {
                    report.push(Law::LeftDistributive, [s(x), s(y), s(z)]);
                }
                let right = t.sum(&t.mul(y, x), &t.mul(z, x));
                if right != Some(t.mul(&yz, x)) {
                    report.push(Law::RightDistributive, [s(x), s(y), s(z)]);
                }
            }
        }
    }
    report
}

/// A finite effect algebra with a multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinEffectMonoid {
    ea: FinEffectAlgebra,
    mul: Vec<ElemId>,
}

impl FinEffectMonoid {
    /// Shape check only; `mul` is row-major.
    pub fn new(ea: FinEffectAlgebra, mul: Vec<ElemId>) -> Result<Self> {
        let n = ea.size();
        if mul.len() != n * n || mul.iter().any(|&v| v >= n) {
            return Err(Error::malformed(format!(
                "multiplication table must assign an element to all {} pairs",
                n * n
            )));
        }
        Ok(FinEffectMonoid { ea, mul })
    }

    /// Accepts a partial table and rejects it when a product is missing.
    pub fn from_partial(ea: FinEffectAlgebra, mul: Vec<Option<ElemId>>) -> Result<Self> {
        let n = ea.size();
        if mul.len() != n * n {
            return Err(Error::malformed("multiplication table has the wrong shape"));
        }
        if let Some(i) = mul.iter().position(Option::is_none) {
            return Err(Error::malformed(format!(
                "multiplication is not total: {}·{} is missing",
                ea.label(i / n),
                ea.label(i % n)
            )));
        }
        Self::new(ea, mul.into_iter().flatten().collect())
    }

    /// `{0, 1}` with logical and.
    pub fn two() -> Self {
        Self::boolean(1)
    }

    /// The one-point monoid `{0}`, the final object.
    pub fn one_point() -> Self {
        let ea = FinEffectAlgebra::new(vec!["0".into()], 0, 0, vec![Some(0)], vec![0])
            .expect("well-formed");
        FinEffectMonoid { ea, mul: vec![0] }
    }

    /// The Boolean algebra on `atoms` atoms with meet.
    pub fn boolean(atoms: usize) -> Self {
        boolean_bridge(&OrthoPoset::boolean(atoms)).expect("Boolean")
    }

    pub fn ea(&self) -> &FinEffectAlgebra {
        &self.ea
    }

    pub fn size(&self) -> usize {
        self.ea.size()
    }

    pub fn elements(&self) -> std::ops::Range<ElemId> {
        self.ea.elements()
    }

    pub fn label(&self, x: ElemId) -> &str {
        self.ea.label(x)
    }

    #[inline]
    pub fn mul_id(&self, a: ElemId, b: ElemId) -> ElemId {
        self.mul[a * self.size() + b]
    }

    pub fn mul_table(&self) -> &[ElemId] {
        &self.mul
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul_id(a, b) == self.mul_id(b, a)))
    }

    pub fn with_labels(self, labels: Vec<String>) -> Self {
        FinEffectMonoid {
            ea: self.ea.with_labels(labels),
            mul: self.mul,
        }
    }

    pub fn relabeled(&self, order: &[ElemId]) -> Self {
        let n = self.size();
        let mut inv = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            inv[old] = new;
        }
        let mul = (0..n * n)
            .map(|i| inv[self.mul_id(order[i / n], order[i % n])])
            .collect();
        FinEffectMonoid {
            ea: self.ea.relabeled(order),
            mul,
        }
    }

    /// Relabeling order and code of the canonical form (effect algebra
    /// tables followed by the multiplication table).
    pub fn canonical_order(&self) -> (Vec<ElemId>, Vec<u8>) {
        let keys: Vec<_> = self
            .ea
            .invariant_keys()
            .into_iter()
            .zip(self.elements().map(|x| self.mul_id(x, x) == x))
            .collect();
        let blocks = invariant_blocks(&keys, Some(self.ea.zero_id()), Some(self.ea.one_id()));
        least_encoding(&blocks, |order, inverse| {
            let mut code = self.ea.encode(order, inverse);
            let n = order.len();
            code.extend((0..n * n).map(|i| inverse[self.mul_id(order[i / n], order[i % n])] as u8));
            code
        })
    }

    pub fn canonical_form(&self) -> Self {
        let (order, _) = self.canonical_order();
        self.relabeled(&order).with_labels(bounded_labels(self.size()))
    }

    pub fn find_isomorphism(&self, other: &FinEffectMonoid) -> Option<Vec<ElemId>> {
        find_table_isomorphism(&self.ea, &other.ea, Some((&self.mul, &other.mul)))
    }

    pub fn is_isomorphic(&self, other: &FinEffectMonoid) -> bool {
        self.find_isomorphism(other).is_some()
    }
}

impl EffectAlgebra for FinEffectMonoid {
    type Elem = ElemId;

    fn zero(&self) -> ElemId {
        self.ea.zero_id()
    }

    fn one(&self) -> ElemId {
        self.ea.one_id()
    }

    fn sum(&self, a: &ElemId, b: &ElemId) -> Option<ElemId> {
        self.ea.sum_id(*a, *b)
    }

    fn perp(&self, a: &ElemId) -> ElemId {
        self.ea.perp_id(*a)
    }

    fn ominus(&self, b: &ElemId, a: &ElemId) -> Option<ElemId> {
        self.ea.ominus_id(*b, *a)
    }

    fn show(&self, a: &ElemId) -> String {
        self.ea.label(*a).to_string()
    }

    fn leq(&self, a: &ElemId, b: &ElemId) -> bool {
        self.ea.leq_id(*a, *b)
    }
}

impl EffectMonoid for FinEffectMonoid {
    fn mul(&self, a: &ElemId, b: &ElemId) -> ElemId {
        self.mul_id(*a, *b)
    }
}

/// The effect algebra axioms, then the monoid laws.
pub fn check_effect_monoid(m: &FinEffectMonoid) -> Report {
    let report = check_effect_algebra(&m.ea);
    if !report.passed() {
        return report;
    }
    let all: Vec<ElemId> = m.elements().collect();
    check_effect_monoid_on(m, &all)
}

/// `f(1,1) = 1` and additivity in each argument for `f: E × F → G`.
pub fn check_bimorphism(
    e: &FinEffectAlgebra,
    f: &FinEffectAlgebra,
    g: &FinEffectAlgebra,
    pairing: impl Fn(ElemId, ElemId) -> ElemId,
) -> Report {
    let mut report = Report::default();
    if pairing(e.one_id(), f.one_id()) != g.one_id() {
        report.push(Law::BimorphismUnit, [e.label(e.one_id()), f.label(f.one_id())]);
    }
    for b in f.elements() {
        for a1 in e.elements() {
            for a2 in e.elements() {
                let Some(s) = e.sum_id(a1, a2) else { continue };
                if g.sum_id(pairing(a1, b), pairing(a2, b)) != Some(pairing(s, b)) {
                    report.push(
                        Law::BimorphismLeftAdditive,
                        [e.label(a1), e.label(a2), f.label(b)],
                    );
                }
            }
        }
    }
    for a in e.elements() {
        for b1 in f.elements() {
            for b2 in f.elements() {
                let Some(s) = f.sum_id(b1, b2) else { continue };
                if g.sum_id(pairing(a, b1), pairing(a, b2)) != Some(pairing(a, s)) {
                    report.push(
                        Law::BimorphismRightAdditive,
                        [e.label(a), f.label(b1), f.label(b2)],
                    );
                }
            }
        }
    }
    report
}

/// Elements with `p·p = p`.
pub fn idempotents(m: &FinEffectMonoid) -> Vec<ElemId> {
    m.elements().filter(|&p| m.mul_id(p, p) == p).collect()
}

/// Where a monoid sits with respect to splitting into corners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Irreducibility {
    /// The one-point monoid, where `0 = 1`.
    Final,
    /// The only idempotents are `0` and `1`.
    Irreducible,
    /// A nontrivial idempotent exists.
    Reducible { idempotent: ElemId },
}

pub fn irreducibility(m: &FinEffectMonoid) -> Irreducibility {
    if m.ea.is_degenerate() {
        return Irreducibility::Final;
    }
    let (zero, one) = (m.ea.zero_id(), m.ea.one_id());
    match idempotents(m).into_iter().find(|&p| p != zero && p != one) {
        Some(p) => Irreducibility::Reducible { idempotent: p },
        None => Irreducibility::Irreducible,
    }
}

/// True exactly for nontrivial monoids whose only idempotents are `0` and `1`.
pub fn is_irreducible(m: &FinEffectMonoid) -> bool {
    irreducibility(m) == Irreducibility::Irreducible
}

/// Nonzero pairs with zero product.
pub fn zero_divisors(m: &FinEffectMonoid) -> Vec<(ElemId, ElemId)> {
    let zero = m.ea.zero_id();
    let mut out = Vec::new();
    for a in m.elements().filter(|&a| a != zero) {
        for b in m.elements().filter(|&b| b != zero) {
            if m.mul_id(a, b) == zero {
                out.push((a, b));
            }
        }
    }
    out
}

/// Pointwise product of two monoids.
pub fn em_product(a: &FinEffectMonoid, b: &FinEffectMonoid) -> FinEffectMonoid {
    let p = ea_product(&Arc::new(a.ea.clone()), &Arc::new(b.ea.clone()));
    let nb = b.size();
    let n = p.ea.size();
    let mul = (0..n * n)
        .map(|i| {
            let (x, y) = (i / n, i % n);
            a.mul_id(x / nb, y / nb) * nb + b.mul_id(x % nb, y % nb)
        })
        .collect();
    FinEffectMonoid {
        ea: (*p.ea).clone(),
        mul,
    }
}

/// The corner `{a | a ≤ p}` with unit `p`, complement `p ⊖ a` and the
/// inherited sum (kept when it stays below `p`) and product. Returns the
/// corner and the ids of its elements in `m`.
pub fn corner(m: &FinEffectMonoid, p: ElemId) -> (FinEffectMonoid, Vec<ElemId>) {
    let ea = &m.ea;
    let keep: Vec<ElemId> = m.elements().filter(|&a| ea.leq_id(a, p)).collect();
    let k = keep.len();
    let pos = |x: ElemId| keep.iter().position(|&y| y == x);
    let sum = (0..k * k)
        .map(|i| ea.sum_id(keep[i / k], keep[i % k]).and_then(pos))
        .collect();
    let perp = keep
        .iter()
        .map(|&a| ea.ominus_id(p, a).and_then(pos).expect("a ≤ p"))
        .collect();
    let mul = (0..k * k)
        .map(|i| pos(m.mul_id(keep[i / k], keep[i % k])).unwrap_or(0))
        .collect();
    let labels = keep.iter().map(|&a| ea.label(a).to_string()).collect();
    let zero = pos(ea.zero_id()).expect("0 ≤ p");
    let one = pos(p).expect("p ≤ p");
    let cea = FinEffectAlgebra::new(labels, zero, one, sum, perp).expect("well-formed corner");
    (FinEffectMonoid { ea: cea, mul }, keep)
}

/// `M ≅ pM × p⊥M` with the certified isomorphism `a ↦ (p·a, p⊥·a)`.
#[derive(Debug, Clone)]
pub struct CornerDecomposition {
    pub idempotent: ElemId,
    pub left: FinEffectMonoid,
    pub right: FinEffectMonoid,
    /// Ids in `m` of the elements of `left` and `right`.
    pub left_elements: Vec<ElemId>,
    pub right_elements: Vec<ElemId>,
    pub product: FinEffectMonoid,
    /// `iso[a]` is the id of `(p·a, p⊥·a)` in `product`.
    pub iso: Vec<ElemId>,
}

/// Splits `m` along the idempotent `p`, certifying the isomorphism.
pub fn corner_decompose(m: &FinEffectMonoid, p: ElemId) -> Result<CornerDecomposition> {
    if p >= m.size() {
        return Err(Error::malformed(format!("element {p} is not in the monoid")));
    }
    if m.mul_id(p, p) != p {
        return Err(Error::precondition(format!("{} is not idempotent", m.label(p))));
    }
    let pp = m.ea.perp_id(p);
    let (left, left_elements) = corner(m, p);
    let (right, right_elements) = corner(m, pp);
    let product = em_product(&left, &right);
    let nr = right.size();
    let mut report = Report::new("corner decomposition");
    let mut iso = Vec::with_capacity(m.size());
    for a in m.elements() {
        let l = left_elements.iter().position(|&x| x == m.mul_id(p, a));
        let r = right_elements.iter().position(|&x| x == m.mul_id(pp, a));
        match (l, r) {
            (Some(l), Some(r)) => iso.push(l * nr + r),
            _ => {
                report.push_note(Law::CornerIsomorphism, [m.label(a)], "component leaves its corner");
                iso.push(0);
            }
        }
    }
    if report.passed() {
        certify_isomorphism(m, &product, &iso, &mut report);
    }
    report.into_result()?;
    Ok(CornerDecomposition {
        idempotent: p,
        left,
        right,
        left_elements,
        right_elements,
        product,
        iso,
    })
}

fn certify_isomorphism(
    m: &FinEffectMonoid,
    target: &FinEffectMonoid,
    iso: &[ElemId],
    report: &mut Report,
) {
    let mut seen = vec![false; target.size()];
    for &y in iso {
        seen[y] = true;
    }
    if iso.len() != target.size() || seen.iter().any(|s| !s) {
        report.push_note(Law::CornerIsomorphism, Vec::<String>::new(), "not a bijection");
        return;
    }
    if iso[m.ea.one_id()] != target.ea.one_id() {
        report.push_note(Law::CornerIsomorphism, [m.label(m.ea.one_id())], "unit not preserved");
    }
    for a in m.elements() {
        if iso[m.ea.perp_id(a)] != target.ea.perp_id(iso[a]) {
            report.push_note(Law::CornerIsomorphism, [m.label(a)], "complement not preserved");
        }
        for b in m.elements() {
            let s = m.ea.sum_id(a, b).map(|s| iso[s]);
            if s != target.ea.sum_id(iso[a], iso[b]) {
                report.push_note(Law::CornerIsomorphism, [m.label(a), m.label(b)], "sum not preserved");
            }
            if iso[m.mul_id(a, b)] != target.mul_id(iso[a], iso[b]) {
                report.push_note(
                    Law::CornerIsomorphism,
                    [m.label(a), m.label(b)],
                    "product not preserved",
                );
            }
        }
    }
}

/// A Boolean algebra as an effect monoid with `a·b = a ∧ b`.
pub fn boolean_bridge(b: &OrthoPoset) -> Result<FinEffectMonoid> {
    let report = check_boolean(b);
    if let Some(v) = report.violations.first() {
        return Err(Error::precondition(format!(
            "not a Boolean algebra: {} fails ({}) at ({})",
            v.law.code(),
            v.law.statement(),
            v.witness.join(",")
        )));
    }
    let ea = omp_to_ea(b)?;
    let p = b.poset();
    let n = p.size();
    let mul = (0..n * n)
        .map(|i| p.meet(i / n, i % n).expect("lattice"))
        .collect();
    FinEffectMonoid::new(ea, mul)
}

/// A valid effect monoid is a Boolean algebra under meet exactly when every
/// element is idempotent.
pub fn detect_boolean(m: &FinEffectMonoid) -> bool {
    idempotents(m).len() == m.size()
}

/// Every multiplication making `ea` an effect monoid, in lexicographic
/// table order.
///
/// Products with `0` and `1` are forced; each remaining product `x·y` is
/// drawn from the common lower bounds of `x` and `y`, and distributivity is
/// checked as soon as all cells of an instance are filled.
pub fn multiplications(ea: &FinEffectAlgebra) -> Vec<FinEffectMonoid> {
    if !check_effect_algebra(ea).passed() {
        return Vec::new();
    }
    let n = ea.size();
    if n == 1 {
        return vec![FinEffectMonoid {
            ea: ea.clone(),
            mul: vec![0],
        }];
    }
    let (zero, one) = (ea.zero_id(), ea.one_id());
    let mut mul: Vec<Option<ElemId>> = vec![None; n * n];
    for x in 0..n {
        mul[x * n + zero] = Some(zero);
        mul[zero * n + x] = Some(zero);
        mul[x * n + one] = Some(x);
        mul[one * n + x] = Some(x);
    }
    let cells: Vec<(ElemId, ElemId)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| mul[x * n + y].is_none())
        .collect();
    let candidates: Vec<Vec<ElemId>> = cells
        .iter()
        .map(|&(x, y)| {
            ea.elements()
                .filter(|&c| ea.leq_id(c, x) && ea.leq_id(c, y))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    fill(ea, &cells, &candidates, 0, &mut mul, &mut out);
    out
}

fn fill(
    ea: &FinEffectAlgebra,
    cells: &[(ElemId, ElemId)],
    candidates: &[Vec<ElemId>],
    depth: usize,
    mul: &mut Vec<Option<ElemId>>,
    out: &mut Vec<FinEffectMonoid>,
) {
    let n = ea.size();
    if depth == cells.len() {
        let m = FinEffectMonoid {
            ea: ea.clone(),
            mul: mul.iter().map(|v| v.expect("filled")).collect(),
        };
        if check_effect_monoid(&m).passed() {
            out.push(m);
        }
        return;
    }
    let (x, y) = cells[depth];
    for &c in &candidates[depth] {
        mul[x * n + y] = Some(c);
        if consistent(ea, mul, x, y) {
            fill(ea, cells, candidates, depth + 1, mul, out);
        }
    }
    mul[x * n + y] = None;
}

/// Distributivity instances touching cell `(x, y)` whose cells are all set.
fn consistent(ea: &FinEffectAlgebra, mul: &[Option<ElemId>], x: ElemId, y: ElemId) -> bool {
    let n = ea.size();
    let at = |a: ElemId, b: ElemId| mul[a * n + b];
    let sum_ok = |lhs: Option<ElemId>, a: Option<ElemId>, b: Option<ElemId>| match (lhs, a, b) {
        (Some(l), Some(a), Some(b)) => ea.sum_id(a, b) == Some(l),
        _ => true,
    };
    for z in 0..n {
        for w in 0..n {
            let Some(s) = ea.sum_id(z, w) else { continue };
            // row x: x·(z⊕w) = x·z ⊕ x·w
            if [z, w, s].contains(&y) && !sum_ok(at(x, s), at(x, z), at(x, w)) {
                return false;
            }
            // column y: (z⊕w)·y = z·y ⊕ w·y
            if [z, w, s].contains(&x) && !sum_ok(at(s, y), at(z, y), at(w, y)) {
                return false;
            }
        }
    }
    true
}

/// The outcome of a successful classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EmClass {
    /// `{0}`.
    OnePoint,
    /// `{0,1}^k`.
    BooleanPower(u32),
}

impl fmt::Display for EmClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmClass::OnePoint => f.write_str("{0}"),
            EmClass::BooleanPower(k) => write!(f, "2^{k}"),
        }
    }
}

/// One split of a factor along an idempotent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitStep {
    pub factor_size: usize,
    pub idempotent: String,
    pub left_size: usize,
    pub right_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub class: EmClass,
    pub steps: Vec<SplitStep>,
}

/// A finite monoid that did not split into copies of `{0,1}`, kept with
/// its serialized tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[error("classification failed: {reason}\n{document}")]
pub struct ClassificationFailure {
    pub reason: String,
    pub document: String,
}

/// Splits along nontrivial idempotents until every factor is irreducible,
/// then requires every factor to be `{0,1}`.
pub fn classify_finite_em(m: &FinEffectMonoid) -> std::result::Result<Classification, ClassificationFailure> {
    let fail = |reason: String, culprit: &FinEffectMonoid| ClassificationFailure {
        reason,
        document: serialize(&Document::EffectMonoid {
            name: "counterexample".into(),
            monoid: culprit.clone(),
        }),
    };
    let report = check_effect_monoid(m);
    if !report.passed() {
        return Err(fail(format!("not an effect monoid:\n{report}"), m));
    }
    if m.ea.is_degenerate() {
        return Ok(Classification {
            class: EmClass::OnePoint,
            steps: Vec::new(),
        });
    }
    let two = FinEffectMonoid::two();
    let mut steps = Vec::new();
    let mut atoms = 0u32;
    let mut work = vec![m.clone()];
    while let Some(factor) = work.pop() {
        match irreducibility(&factor) {
            Irreducibility::Final => {
                return Err(fail("a corner collapsed to the one-point monoid".into(), &factor));
            }
            Irreducibility::Irreducible => {
                if !factor.is_isomorphic(&two) {
                    return Err(fail(
                        format!("irreducible factor with {} elements", factor.size()),
                        &factor,
                    ));
                }
                atoms += 1;
            }
            Irreducibility::Reducible { idempotent } => {
                let d = corner_decompose(&factor, idempotent)
                    .map_err(|e| fail(e.to_string(), &factor))?;
                steps.push(SplitStep {
                    factor_size: factor.size(),
                    idempotent: factor.label(idempotent).to_string(),
                    left_size: d.left.size(),
                    right_size: d.right.size(),
                });
                work.push(d.right);
                work.push(d.left);
            }
        }
    }
    if 1usize.checked_shl(atoms) != Some(m.size()) {
        return Err(fail(format!("{atoms} factors do not account for the size"), m));
    }
    Ok(Classification {
        class: EmClass::BooleanPower(atoms),
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monoid_examples() {
        assert!(check_effect_monoid(&FinEffectMonoid::two()).passed());
        assert!(check_effect_monoid(&FinEffectMonoid::boolean(2)).passed());
        // {0,h,1} with h·h = h
        let ea = FinEffectAlgebra::three();
        let bad = FinEffectMonoid::new(ea, vec![0, 0, 0, 0, 1, 1, 0, 1, 2]).unwrap();
        let r = check_effect_monoid(&bad);
        assert_eq!(r.first(Law::LeftDistributive).unwrap().witness, ["h", "h", "h"]);
    }

    #[test]
    fn missing_product_is_malformed() {
        let ea = FinEffectAlgebra::two();
        let r = FinEffectMonoid::from_partial(ea, vec![Some(0), Some(0), Some(0), None]);
        assert!(matches!(r, Err(Error::Malformed(_))));
    }

    #[test]
    fn bimorphism_examples() {
        let m = FinEffectMonoid::boolean(2);
        assert!(check_bimorphism(m.ea(), m.ea(), m.ea(), |a, b| m.mul_id(a, b)).passed());
        let two = FinEffectAlgebra::two();
        let r = check_bimorphism(&two, &two, &two, |_, _| 1);
        assert!(r.violates(Law::BimorphismLeftAdditive));
    }

    #[test]
    fn idempotent_and_irreducibility() {
        assert_eq!(idempotents(&FinEffectMonoid::two()), vec![0, 1]);
        assert_eq!(idempotents(&FinEffectMonoid::boolean(2)).len(), 4);
        assert!(is_irreducible(&FinEffectMonoid::two()));
        assert_eq!(
            irreducibility(&FinEffectMonoid::boolean(2)),
            Irreducibility::Reducible { idempotent: 1 }
        );
        assert_eq!(irreducibility(&FinEffectMonoid::one_point()), Irreducibility::Final);
        assert!(!is_irreducible(&FinEffectMonoid::one_point()));
    }

    #[test]
    fn corners() {
        let b2 = FinEffectMonoid::boolean(2);
        let d = corner_decompose(&b2, 1).unwrap();
        assert!(d.left.is_isomorphic(&FinEffectMonoid::two()));
        assert!(d.right.is_isomorphic(&FinEffectMonoid::two()));

        let b3 = FinEffectMonoid::boolean(3);
        let d = corner_decompose(&b3, 1).unwrap();
        assert!(d.left.is_isomorphic(&FinEffectMonoid::two()));
        assert!(d.right.is_isomorphic(&b2));

        let d = corner_decompose(&b2, 3).unwrap();
        assert!(d.left.is_isomorphic(&b2));
        assert_eq!(d.right.size(), 1);

        let three = FinEffectMonoid::new(FinEffectAlgebra::three(), vec![0, 0, 0, 0, 0, 1, 0, 1, 2]).unwrap();
        assert!(matches!(corner_decompose(&three, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn zero_divisor_examples() {
        assert_eq!(zero_divisors(&FinEffectMonoid::boolean(2)), vec![(1, 2), (2, 1)]);
        assert!(zero_divisors(&FinEffectMonoid::two()).is_empty());
    }

    #[test]
    fn boolean_bridge_and_search() {
        let b = boolean_bridge(&OrthoPoset::boolean(2)).unwrap();
        assert!(detect_boolean(&b));
        assert!(matches!(
            boolean_bridge(&OrthoPoset::mo(2)),
            Err(Error::Precondition(_))
        ));
        assert!(multiplications(&FinEffectAlgebra::three()).is_empty());
        assert!(multiplications(&omp_to_ea(&OrthoPoset::mo(2)).unwrap()).is_empty());
        assert_eq!(multiplications(&FinEffectAlgebra::boolean(2)).len(), 1);
    }

    #[test]
    fn classification_examples() {
        let c = classify_finite_em(&FinEffectMonoid::one_point()).unwrap();
        assert_eq!(c.class.to_string(), "{0}");
        let c = classify_finite_em(&FinEffectMonoid::two()).unwrap();
        assert_eq!(c.class.to_string(), "2^1");
        let c = classify_finite_em(&FinEffectMonoid::boolean(3)).unwrap();
        assert_eq!(c.class, EmClass::BooleanPower(3));
        assert_eq!(c.steps.len(), 2);
    }
}
