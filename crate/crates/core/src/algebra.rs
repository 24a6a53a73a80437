//! Effect algebras: the axioms, derived order and difference, homomorphisms,
//! limits, the action of the Kalmbach monad and the free factorization.

use std::fmt::Debug;
use std::sync::Arc;

use crate::canon::{find_bijection, invariant_blocks, least_encoding};
use crate::kalmbach::{image_points, kalmbach_extension, kalmbach_map, unit_embedding, KalmbachExtension};
use crate::omp::{check_omp_morphism, omp_to_ea, OrthoPoset};
use crate::poset::{check_matrix, bounded_labels, FinBoundedPoset, PosetMap};
use crate::report::{Law, Report};
use crate::{Budget, ElemId, Error, Result};

/// The operations of an effect algebra, over any carrier.
///
/// Finite tables and the exact rational unit interval both implement this,
/// so the law checkers run unchanged on either.
pub trait EffectAlgebra {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// `a ⊕ b`, `None` when `a` and `b` are not orthogonal.
    fn sum(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    fn perp(&self, a: &Self::Elem) -> Self::Elem;
    /// `b ⊖ a`, defined exactly when `a ≤ b`.
    fn ominus(&self, b: &Self::Elem, a: &Self::Elem) -> Option<Self::Elem>;
    fn show(&self, a: &Self::Elem) -> String;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.ominus(b, a).is_some()
    }
}

/// The effect algebra axioms checked on every tuple drawn from `universe`.
///
/// Sums that leave the universe are still followed, so for infinite
/// carriers this checks every axiom instance whose variables are probed.
pub fn check_effect_algebra_on<T: EffectAlgebra>(t: &T, universe: &[T::Elem]) -> Report {
    let mut report = Report::default();
    let s = |a: &T::Elem| t.show(a);
    let (zero, one) = (t.zero(), t.one());
    if t.perp(&zero) != one {
        report.push(Law::OneIsZeroComplement, [s(&zero)]);
    }
    for a in universe {
        if t.sum(a, &zero).as_ref() != Some(a) || t.sum(&zero, a).as_ref() != Some(a) {
            report.push(Law::SumZero, [s(a)]);
        }
        let ap = t.perp(a);
        if t.sum(a, &ap) != Some(one.clone()) {
            report.push(Law::ComplementSums, [s(a), s(&ap)]);
        }
        if t.sum(a, &one).is_some() && *a != zero {
            report.push(Law::Positivity, [s(a)]);
        }
        for b in universe {
            let ab = t.sum(a, b);
            if ab != t.sum(b, a) {
                report.push(Law::SumCommutative, [s(a), s(b)]);
            }
            if ab == Some(one.clone()) && *b != ap {
                report.push(Law::ComplementUnique, [s(a), s(b)]);
            }
            let Some(ab) = ab else { continue };
            for c in universe {
                let Some(ab_c) = t.sum(&ab, c) else { continue };
                let a_bc = t.sum(b, c).and_then(|bc| t.sum(a, &bc));
                if a_bc.as_ref() != Some(&ab_c) {
                    report.push(Law::SumAssociative, [s(a), s(b), s(c)]);
                }
            }
        }
    }
    report
}

/// A finite effect algebra given by tables, not yet known to satisfy the axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinEffectAlgebra {
    labels: Vec<String>,
    zero: ElemId,
    one: ElemId,
    sum: Vec<Option<ElemId>>,
    perp: Vec<ElemId>,
    // derived relation, not certified to be a partial order
    order: Arc<FinBoundedPoset>,
}

impl FinEffectAlgebra {
    /// Shape checks only. `sum` is row-major, `None` meaning undefined.
    pub fn new(
        labels: Vec<String>,
        zero: ElemId,
        one: ElemId,
        sum: Vec<Option<ElemId>>,
        perp: Vec<ElemId>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::malformed("an effect algebra needs at least one element"));
        }
        if zero >= n || one >= n {
            return Err(Error::malformed("zero or one outside the carrier"));
        }
        if sum.len() != n * n {
            return Err(Error::malformed(format!(
                "sum table has {} cells, expected {}",
                sum.len(),
                n * n
            )));
        }
        if sum.iter().flatten().any(|&v| v >= n) {
            return Err(Error::malformed("sum value outside the carrier"));
        }
        if perp.len() != n || perp.iter().any(|&v| v >= n) {
            return Err(Error::malformed("complement must assign an element to every element"));
        }
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for c in 0..n {
                if let Some(b) = sum[a * n + c] {
                    leq[a * n + b] = true;
                }
            }
        }
        let order = Arc::new(FinBoundedPoset::new_unchecked(labels.clone(), leq, zero, one));
        Ok(FinEffectAlgebra {
            labels,
            zero,
            one,
            sum,
            perp,
            order,
        })
    }

    /// `{0, 1}`.
    pub fn two() -> Self {
        omp_to_ea(&OrthoPoset::boolean(1)).expect("well-formed")
    }

    /// `{0, h, 1}` with `h ⊕ h = 1`.
    #[rustfmt::skip]
    pub fn three() -> Self {
        let l = ["0", "h", "1"].map(String::from).to_vec();
        let u = None;
        let sum = vec![
            Some(0), Some(1), Some(2),
            Some(1), Some(2), u,
            Some(2), u, u,
        ];
        FinEffectAlgebra::new(l, 0, 2, sum, vec![2, 1, 0]).expect("well-formed")
    }

    /// The Boolean algebra on `atoms` atoms.
    pub fn boolean(atoms: usize) -> Self {
        omp_to_ea(&OrthoPoset::boolean(atoms)).expect("well-formed")
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn elements(&self) -> std::ops::Range<ElemId> {
        0..self.size()
    }

    pub fn is_degenerate(&self) -> bool {
        self.size() == 1
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: ElemId) -> &str {
        &self.labels[x]
    }

    pub fn find(&self, label: &str) -> Option<ElemId> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn with_labels(self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.size());
        FinEffectAlgebra::new(labels, self.zero, self.one, self.sum, self.perp).expect("same shape")
    }

    pub fn zero_id(&self) -> ElemId {
        self.zero
    }

    pub fn one_id(&self) -> ElemId {
        self.one
    }

    #[inline]
    pub fn sum_id(&self, a: ElemId, b: ElemId) -> Option<ElemId> {
        self.sum[a * self.size() + b]
    }

    #[inline]
    pub fn perp_id(&self, a: ElemId) -> ElemId {
        self.perp[a]
    }

    #[inline]
    pub fn orthogonal(&self, a: ElemId, b: ElemId) -> bool {
        self.sum_id(a, b).is_some()
    }

    /// Derived order `a ≤ b` iff `a ⊕ c = b` for some `c`.
    #[inline]
    pub fn leq_id(&self, a: ElemId, b: ElemId) -> bool {
        self.order.leq(a, b)
    }

    /// `b ⊖ a`: the first `c` with `a ⊕ c = b`.
    pub fn ominus_id(&self, b: ElemId, a: ElemId) -> Option<ElemId> {
        self.elements().find(|&c| self.sum_id(a, c) == Some(b))
    }

    pub fn sum_table(&self) -> &[Option<ElemId>] {
        &self.sum
    }

    pub fn perp_table(&self) -> &[ElemId] {
        &self.perp
    }

    /// The algebra with element `order[i]` moved to position `i`.
    pub fn relabeled(&self, order: &[ElemId]) -> Self {
        let n = self.size();
        let mut inv = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            inv[old] = new;
        }
        let sum = (0..n * n)
            .map(|i| self.sum_id(order[i / n], order[i % n]).map(|v| inv[v]))
            .collect();
        let perp = order.iter().map(|&o| inv[self.perp[o]]).collect();
        let labels = order.iter().map(|&o| self.labels[o].clone()).collect();
        FinEffectAlgebra::new(labels, inv[self.zero], inv[self.one], sum, perp).expect("same shape")
    }

    pub(crate) fn invariant_keys(&self) -> Vec<(usize, usize, bool, usize)> {
        self.elements()
            .map(|x| {
                (
                    self.order.down_count(x),
                    self.order.up_count(x),
                    self.perp[x] == x,
                    self.elements().filter(|&y| self.orthogonal(x, y)).count(),
                )
            })
            .collect()
    }

    pub(crate) fn encode(&self, order: &[ElemId], inverse: &[ElemId]) -> Vec<u8> {
        let n = order.len();
        let mut code = Vec::with_capacity(n * n + n);
        for &o in order {
            code.push(inverse[self.perp[o]] as u8);
        }
        for i in 0..n * n {
            code.push(match self.sum_id(order[i / n], order[i % n]) {
                Some(v) => inverse[v] as u8 + 1,
                None => 0,
            });
        }
        code
    }

    /// Relabeling order and code of the canonical form: the least table
    /// encoding over relabelings fixing `0` first and `1` last that only
    /// permute elements with equal invariants.
    pub fn canonical_order(&self) -> (Vec<ElemId>, Vec<u8>) {
        let keys = self.invariant_keys();
        let blocks = invariant_blocks(&keys, Some(self.zero), Some(self.one));
        least_encoding(&blocks, |order, inverse| self.encode(order, inverse))
    }

    /// Canonical representative with labels `0, a, b, …, 1`.
    pub fn canonical_form(&self) -> Self {
        let (order, _) = self.canonical_order();
        self.relabeled(&order).with_labels(bounded_labels(self.size()))
    }

    /// An isomorphism of effect algebras `self → other`.
    pub fn find_isomorphism(&self, other: &FinEffectAlgebra) -> Option<Vec<ElemId>> {
        find_table_isomorphism(self, other, None)
    }

    pub fn is_isomorphic(&self, other: &FinEffectAlgebra) -> bool {
        self.find_isomorphism(other).is_some()
    }
}

/// Backtracking isomorphism search for table algebras, optionally also
/// respecting multiplication tables `(mul_a, mul_b)`.
///
/// Every partial assignment is checked on all operation instances whose
/// result is already mapped, so a complete assignment is checked fully.
pub(crate) fn find_table_isomorphism(
    a: &FinEffectAlgebra,
    b: &FinEffectAlgebra,
    mul: Option<(&[ElemId], &[ElemId])>,
) -> Option<Vec<ElemId>> {
    if a.size() != b.size() {
        return None;
    }
    let n = a.size();
    let ka = a.invariant_keys();
    let kb = b.invariant_keys();
    let order = a.order.linear_extension();
    find_bijection(&ka, &kb, &order, |assigned, x, y| {
        if (x == a.zero) != (y == b.zero) || (x == a.one) != (y == b.one) {
            return false;
        }
        let mut image = vec![None; n];
        for &(z, w) in assigned {
            image[z] = Some(w);
        }
        image[x] = Some(y);
        let agrees = |lhs: Option<ElemId>, rhs: Option<ElemId>| match (lhs, rhs) {
            (None, None) => true,
            (Some(s), Some(t)) => image[s].is_none_or(|is| is == t),
            _ => false,
        };
        let pairs = assigned.iter().copied().chain(std::iter::once((x, y)));
        pairs.clone().all(|(z, w)| {
            image[a.perp[z]].is_none_or(|v| v == b.perp[w])
                && pairs.clone().all(|(u, v)| {
                    agrees(a.sum_id(z, u), b.sum_id(w, v))
                        && mul.is_none_or(|(ma, mb)| {
                            agrees(Some(ma[z * n + u]), Some(mb[w * n + v]))
                        })
                })
        })
    })
}

impl EffectAlgebra for FinEffectAlgebra {
    type Elem = ElemId;

    fn zero(&self) -> ElemId {
        self.zero
    }

    fn one(&self) -> ElemId {
        self.one
    }

    fn sum(&self, a: &ElemId, b: &ElemId) -> Option<ElemId> {
        self.sum_id(*a, *b)
    }

    fn perp(&self, a: &ElemId) -> ElemId {
        self.perp[*a]
    }

    fn ominus(&self, b: &ElemId, a: &ElemId) -> Option<ElemId> {
        self.ominus_id(*b, *a)
    }

    fn show(&self, a: &ElemId) -> String {
        self.labels[*a].clone()
    }

    fn leq(&self, a: &ElemId, b: &ElemId) -> bool {
        self.leq_id(*a, *b)
    }
}

/// The five axioms plus, when they hold, the derived-order invariants.
pub fn check_effect_algebra(e: &FinEffectAlgebra) -> Report {
    let all: Vec<ElemId> = e.elements().collect();
    let mut report = check_effect_algebra_on(e, &all);
    if !report.passed() {
        return report;
    }
    let l = |x: ElemId| e.label(x).to_string();
    let n = e.size();
    for v in check_matrix(e.order.relation_matrix(), n, e.zero, e.one, &e.labels).violations {
        let law = match v.law {
            Law::BottomLeast | Law::TopGreatest => Law::DerivedOrderBounds,
            _ => Law::DerivedOrderPartial,
        };
        report.push(law, v.witness);
    }
    for a in e.elements() {
        for b in e.elements() {
            if e.leq_id(a, b) != e.leq_id(e.perp[b], e.perp[a]) {
                report.push(Law::PerpAntiIsomorphism, [l(a), l(b)]);
            }
            if e.orthogonal(a, b) != e.leq_id(a, e.perp[b]) {
                report.push(Law::OrthogonalIffBelowComplement, [l(a), l(b)]);
            }
            for c in (b + 1)..n {
                if e.sum_id(a, b).is_some() && e.sum_id(a, b) == e.sum_id(a, c) {
                    report.push(Law::DifferenceUnique, [l(a), l(b), l(c)]);
                }
            }
        }
    }
    report
}

/// The derived order, certified to be a bounded poset.
pub fn induced_order(e: &FinEffectAlgebra) -> Result<Arc<FinBoundedPoset>> {
    check_matrix(e.order.relation_matrix(), e.size(), e.zero, e.one, &e.labels).into_result()?;
    Ok(e.order.clone())
}

/// `b ⊖ a`, or `None` when `a ≰ b`.
pub fn ominus(e: &FinEffectAlgebra, b: ElemId, a: ElemId) -> Option<ElemId> {
    e.ominus_id(b, a)
}

/// A map of finite effect algebras, not yet known to be a homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EaHom {
    source: Arc<FinEffectAlgebra>,
    target: Arc<FinEffectAlgebra>,
    assignment: Vec<ElemId>,
}

impl EaHom {
    pub fn new(
        source: Arc<FinEffectAlgebra>,
        target: Arc<FinEffectAlgebra>,
        assignment: Vec<ElemId>,
    ) -> Result<Self> {
        if assignment.len() != source.size() || assignment.iter().any(|&y| y >= target.size()) {
            return Err(Error::malformed("assignment does not fit source and target"));
        }
        Ok(EaHom {
            source,
            target,
            assignment,
        })
    }

    pub fn identity(e: Arc<FinEffectAlgebra>) -> Self {
        let assignment = e.elements().collect();
        EaHom {
            source: e.clone(),
            target: e,
            assignment,
        }
    }

    pub fn source(&self) -> &Arc<FinEffectAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinEffectAlgebra> {
        &self.target
    }

    pub fn assignment(&self) -> &[ElemId] {
        &self.assignment
    }

    #[inline]
    pub fn apply(&self, x: ElemId) -> ElemId {
        self.assignment[x]
    }
}

/// Homomorphism laws for a finite map.
pub fn check_ea_hom(f: &EaHom) -> Report {
    check_ea_hom_into(&f.source, &*f.target, |x| f.apply(x))
}

/// Homomorphism laws for a map from a finite algebra into any effect algebra.
pub fn check_ea_hom_into<T: EffectAlgebra>(
    source: &FinEffectAlgebra,
    target: &T,
    f: impl Fn(ElemId) -> T::Elem,
) -> Report {
    let mut report = Report::default();
    let l = |x: ElemId| source.label(x).to_string();
    if f(source.one) != target.one() {
        report.push(Law::HomPreservesOne, [l(source.one)]);
    }
    if f(source.zero) != target.zero() {
        report.push(Law::HomPreservesZero, [l(source.zero)]);
    }
    for a in source.elements() {
        if f(source.perp[a]) != target.perp(&f(a)) {
            report.push(Law::HomPreservesComplement, [l(a)]);
        }
        for b in source.elements() {
            if let Some(s) = source.sum_id(a, b) {
                if target.sum(&f(a), &f(b)) != Some(f(s)) {
                    report.push(Law::HomPreservesSum, [l(a), l(b)]);
                }
            }
        }
    }
    report
}

/// A product effect algebra with its projections.
#[derive(Debug, Clone)]
pub struct EaProduct {
    pub ea: Arc<FinEffectAlgebra>,
    pub left: EaHom,
    pub right: EaHom,
}

impl EaProduct {
    pub fn pair_id(&self, a: ElemId, b: ElemId) -> ElemId {
        a * self.right.target.size() + b
    }

    /// `x ↦ (f(x), g(x))`.
    pub fn pairing(&self, f: &EaHom, g: &EaHom) -> Result<EaHom> {
        if *f.source != *g.source
            || *f.target != *self.left.target
            || *g.target != *self.right.target
        {
            return Err(Error::precondition("pairing needs a cone over the two factors"));
        }
        let assignment = f
            .source
            .elements()
            .map(|x| self.pair_id(f.apply(x), g.apply(x)))
            .collect();
        EaHom::new(f.source.clone(), self.ea.clone(), assignment)
    }
}

/// Cartesian product with pointwise sum and complement.
pub fn ea_product(e: &Arc<FinEffectAlgebra>, f: &Arc<FinEffectAlgebra>) -> EaProduct {
    let (ne, nf) = (e.size(), f.size());
    let n = ne * nf;
    let sum = (0..n * n)
        .map(|i| {
            let (x, y) = (i / n, i % n);
            let a = e.sum_id(x / nf, y / nf)?;
            let b = f.sum_id(x % nf, y % nf)?;
            Some(a * nf + b)
        })
        .collect();
    let perp = (0..n).map(|x| e.perp[x / nf] * nf + f.perp[x % nf]).collect();
    let labels = (0..n)
        .map(|x| format!("({},{})", e.label(x / nf), f.label(x % nf)))
        .collect();
    let ea = Arc::new(
        FinEffectAlgebra::new(labels, e.zero * nf + f.zero, e.one * nf + f.one, sum, perp)
            .expect("pointwise tables are well-formed"),
    );
    let left = EaHom {
        source: ea.clone(),
        target: e.clone(),
        assignment: (0..n).map(|x| x / nf).collect(),
    };
    let right = EaHom {
        source: ea.clone(),
        target: f.clone(),
        assignment: (0..n).map(|x| x % nf).collect(),
    };
    EaProduct { ea, left, right }
}

/// The agreement set of two parallel homomorphisms with its inclusion.
#[derive(Debug, Clone)]
pub struct EaEqualizer {
    pub ea: Arc<FinEffectAlgebra>,
    pub inclusion: EaHom,
}

/// `{x | g(x) = h(x)}`, which is closed under `⊕` and `⊥` for homomorphisms.
pub fn ea_equalizer(g: &EaHom, h: &EaHom) -> Result<EaEqualizer> {
    if *g.source != *h.source || *g.target != *h.target {
        return Err(Error::precondition("equalizer needs a parallel pair"));
    }
    let e = &g.source;
    let keep: Vec<ElemId> = e.elements().filter(|&x| g.apply(x) == h.apply(x)).collect();
    let pos = |x: ElemId| keep.iter().position(|&k| k == x);
    let not_closed = || Error::precondition("agreement set is not closed; maps are not homomorphisms");
    let k = keep.len();
    let mut sum = vec![None; k * k];
    for (i, &a) in keep.iter().enumerate() {
        for (j, &b) in keep.iter().enumerate() {
            if let Some(s) = e.sum_id(a, b) {
                sum[i * k + j] = Some(pos(s).ok_or_else(not_closed)?);
            }
        }
    }
    let perp = keep
        .iter()
        .map(|&a| pos(e.perp[a]).ok_or_else(not_closed))
        .collect::<Result<Vec<_>>>()?;
    let zero = pos(e.zero).ok_or_else(not_closed)?;
    let one = pos(e.one).ok_or_else(not_closed)?;
    let labels = keep.iter().map(|&a| e.label(a).to_string()).collect();
    let ea = Arc::new(FinEffectAlgebra::new(labels, zero, one, sum, perp)?);
    let inclusion = EaHom {
        source: ea.clone(),
        target: e.clone(),
        assignment: keep,
    };
    Ok(EaEqualizer { ea, inclusion })
}

/// `(a₂⊖a₁) ⊕ … ⊕ (a₂ₙ⊖a₂ₙ₋₁)`, or the index of the first interval whose
/// difference or running sum is undefined.
pub fn act_chain<T: EffectAlgebra>(t: &T, points: &[T::Elem]) -> std::result::Result<T::Elem, usize> {
    let mut acc = t.zero();
    for (i, pair) in points.chunks_exact(2).enumerate() {
        let d = t.ominus(&pair[1], &pair[0]).ok_or(i)?;
        acc = t.sum(&acc, &d).ok_or(i)?;
    }
    Ok(acc)
}

/// The action `α: K(E) → E` as a map on the derived order.
///
/// `k` must be the Kalmbach extension of `e`'s derived order. An undefined
/// sum anywhere is reported as a law violation.
pub fn algebra_action(e: &FinEffectAlgebra, k: &KalmbachExtension) -> Result<PosetMap> {
    let base = k.base();
    if base.relation_matrix() != e.order.relation_matrix()
        || base.bottom() != e.zero
        || base.top() != e.one
    {
        return Err(Error::precondition(
            "Kalmbach extension is not built on the algebra's derived order",
        ));
    }
    let mut report = Report::new("action");
    let mut assignment = Vec::with_capacity(k.size());
    for c in k.chains() {
        match act_chain(e, c.points()) {
            Ok(v) => assignment.push(v),
            Err(i) => {
                report.push_note(
                    Law::ActionDefined,
                    [c.display(base).to_string()],
                    format!("interval {} has no sum", i + 1),
                );
                assignment.push(e.zero);
            }
        }
    }
    report.into_result()?;
    PosetMap::new(k.poset().clone(), e.order.clone(), assignment)
}

/// `α∘η = id` and, given `kk = K(K(E))`, `α∘K(α) = α∘μ`.
pub fn check_action_laws(
    e: &FinEffectAlgebra,
    k: &KalmbachExtension,
    kk: Option<&KalmbachExtension>,
) -> Result<Report> {
    let mut report = Report::default();
    let act = algebra_action(e, k)?;
    let eta = unit_embedding(k);
    for x in e.elements() {
        if act.apply(eta.apply(x)) != x {
            report.push(Law::ActionUnit, [e.label(x)]);
        }
    }
    if let Some(kk) = kk {
        let mu = crate::kalmbach::monad_mult(k, kk)?;
        let k_act = kalmbach_map(&act, kk, k)?;
        for t in kk.poset().elements() {
            if act.apply(k_act.apply(t)) != act.apply(mu.apply(t)) {
                report.push(Law::ActionMultiplication, [kk.poset().label(t)]);
            }
        }
    }
    Ok(report)
}

/// An effect algebra presented through its order and difference only.
#[derive(Debug, Clone)]
pub struct DPoset {
    size: usize,
    one: ElemId,
    diff: Vec<Option<ElemId>>,
}

impl DPoset {
    pub fn from_effect_algebra(e: &FinEffectAlgebra) -> Self {
        let n = e.size();
        let diff = (0..n * n).map(|i| e.ominus_id(i / n, i % n)).collect();
        DPoset {
            size: n,
            one: e.one,
            diff,
        }
    }

    /// `b ⊖ a`.
    pub fn ominus(&self, b: ElemId, a: ElemId) -> Option<ElemId> {
        self.diff[b * self.size + a]
    }
}

/// The sum rebuilt from `⊖`: `a ⊕ b = 1 ⊖ ((1 ⊖ a) ⊖ b)`.
pub fn dposet_sum(d: &DPoset) -> Vec<Option<ElemId>> {
    let n = d.size;
    (0..n * n)
        .map(|i| {
            let (a, b) = (i / n, i % n);
            let ap = d.ominus(d.one, a)?;
            let r = d.ominus(ap, b)?;
            d.ominus(d.one, r)
        })
        .collect()
}

/// Compares the rebuilt sum with the original table, cell by cell.
pub fn check_dposet_round_trip(e: &FinEffectAlgebra) -> Report {
    let rebuilt = dposet_sum(&DPoset::from_effect_algebra(e));
    let n = e.size();
    let mut report = Report::default();
    for (i, (&r, &s)) in rebuilt.iter().zip(e.sum_table()).enumerate() {
        if r != s {
            report.push(Law::DifferenceReconstructsSum, [e.label(i / n), e.label(i % n)]);
        }
    }
    report
}

/// How far the uniqueness of a factorization was established.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Uniqueness {
    /// Exhaustive search found no other OMP morphism extending `f`.
    Certified { searched: u128 },
    /// A second OMP morphism extending `f`, as an assignment on `K(P)`.
    Violated { alternative: Vec<ElemId> },
    /// The search space exceeded the budget and was not visited.
    NotCertified { candidates: u128 },
}

/// `h = α_A ∘ K(f)` and what is known about it.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub kalmbach: KalmbachExtension,
    pub h: PosetMap,
    /// Morphism laws for `h` and the unit law `h∘η = f`.
    pub report: Report,
    pub uniqueness: Uniqueness,
}

/// Extends `f: P → A` along the unit to an OMP morphism `K(P) → A`.
pub fn free_factorization(f: &PosetMap, a: &OrthoPoset, budget: &Budget) -> Result<Factorization> {
    if **f.target() != **a.poset() {
        return Err(Error::precondition("map does not land in the orthoposet"));
    }
    let k = kalmbach_extension(f.source(), budget)?;
    let ea = omp_to_ea(a)?;
    let mut h_values = Vec::with_capacity(k.size());
    for c in k.chains() {
        let points = image_points(|x| f.apply(x), c);
        let v = act_chain(&ea, &points).map_err(|_| {
            Error::precondition(format!(
                "{} is not orthomodular: action undefined on the image of {}",
                a.poset(),
                c.display(f.source())
            ))
        })?;
        h_values.push(v);
    }
    let h = PosetMap::new(k.poset().clone(), a.poset().clone(), h_values)?;
    let mut report = check_omp_morphism(&h, k.omp(), a)?;
    let eta = unit_embedding(&k);
    for x in f.source().elements() {
        if h.apply(eta.apply(x)) != f.apply(x) {
            report.push(Law::FactorizationUnit, [f.source().label(x)]);
        }
    }
    let uniqueness = search_extensions(&k, &eta, f, a, &h, budget)?;
    if let Uniqueness::Violated { alternative } = &uniqueness {
        let differs = alternative
            .iter()
            .zip(h.assignment())
            .position(|(x, y)| x != y)
            .expect("alternative differs from h");
        report.push(Law::FactorizationUnique, [k.poset().label(differs)]);
    }
    Ok(Factorization {
        kalmbach: k,
        h,
        report,
        uniqueness,
    })
}

fn search_extensions(
    k: &KalmbachExtension,
    eta: &PosetMap,
    f: &PosetMap,
    a: &OrthoPoset,
    h: &PosetMap,
    budget: &Budget,
) -> Result<Uniqueness> {
    let mut fixed: Vec<Option<ElemId>> = vec![None; k.size()];
    for x in f.source().elements() {
        fixed[eta.apply(x)] = Some(f.apply(x));
    }
    let free: Vec<ElemId> = (0..k.size()).filter(|&c| fixed[c].is_none()).collect();
    let candidates = (a.size() as u128)
        .checked_pow(free.len() as u32)
        .unwrap_or(u128::MAX);
    if candidates > budget.max_search {
        return Ok(Uniqueness::NotCertified { candidates });
    }
    let kp = k.poset();
    let ap = a.poset();
    let mut values: Vec<ElemId> = fixed.iter().map(|v| v.unwrap_or(0)).collect();
    let mut digits = vec![0usize; free.len()];
    loop {
        for (slot, &c) in free.iter().enumerate() {
            values[c] = digits[slot];
        }
        if values != h.assignment() {
            let g = PosetMap::new(kp.clone(), ap.clone(), values.clone())?;
            if check_omp_morphism(&g, k.omp(), a)?.passed() {
                return Ok(Uniqueness::Violated { alternative: values });
            }
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == digits.len() {
                return Ok(Uniqueness::Certified {
                    searched: candidates,
                });
            }
            digits[i] += 1;
            if digits[i] < a.size() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{RationalScalar, UnitInterval};

    fn q(n: i64, d: i64) -> RationalScalar {
        RationalScalar::new(n, d).unwrap()
    }

    #[test]
    fn axiom_examples() {
        assert!(check_effect_algebra(&FinEffectAlgebra::two()).passed());
        assert!(check_effect_algebra(&FinEffectAlgebra::three()).passed());
        let e = FinEffectAlgebra::three();
        let mut sum = e.sum_table().to_vec();
        sum[3 + 2] = Some(2);
        sum[2 * 3 + 1] = Some(2);
        let bad = FinEffectAlgebra::new(e.labels().to_vec(), 0, 2, sum, vec![2, 1, 0]).unwrap();
        let r = check_effect_algebra(&bad);
        assert!(r.violates(Law::Positivity));
        assert_eq!(Law::Positivity.statement(), "if a⊥1 then a=0");
    }

    #[test]
    fn asymmetric_definedness_is_a_commutativity_failure() {
        let e = FinEffectAlgebra::three();
        let mut sum = e.sum_table().to_vec();
        sum[3] = None;
        let bad = FinEffectAlgebra::new(e.labels().to_vec(), 0, 2, sum, vec![2, 1, 0]).unwrap();
        assert!(check_effect_algebra(&bad).violates(Law::SumCommutative));
    }

    #[test]
    fn derived_order_examples() {
        let three = induced_order(&FinEffectAlgebra::three()).unwrap();
        assert!(three.lt(0, 1) && three.lt(1, 2));
        let d = induced_order(&FinEffectAlgebra::boolean(2)).unwrap();
        assert!(!d.comparable(1, 2));
        let e = FinEffectAlgebra::boolean(2);
        assert_eq!(ominus(&e, e.one_id(), 1), Some(e.perp_id(1)));
        assert_eq!(ominus(&e, 2, 0), Some(2));
        assert_eq!(ominus(&e, 2, 1), None);
    }

    #[test]
    fn homomorphisms_into_rationals() {
        let e = FinEffectAlgebra::three();
        let ui = UnitInterval;
        let half = [q(0, 1), q(1, 2), q(1, 1)];
        assert!(check_ea_hom_into(&e, &ui, |x| half[x].clone()).passed());
        let third = [q(0, 1), q(1, 3), q(1, 1)];
        let r = check_ea_hom_into(&e, &ui, |x| third[x].clone());
        assert!(r.violates(Law::HomPreservesSum));
        let id = EaHom::identity(Arc::new(e));
        assert!(check_ea_hom(&id).passed());
    }

    #[test]
    fn products_and_equalizers() {
        let two = Arc::new(FinEffectAlgebra::two());
        let sq = ea_product(&two, &two);
        assert!(sq.ea.is_isomorphic(&FinEffectAlgebra::boolean(2)));
        let three = Arc::new(FinEffectAlgebra::three());
        let p = ea_product(&three, &two);
        assert_eq!(p.ea.size(), 6);
        assert!(check_effect_algebra(&p.ea).passed());
        assert!(check_ea_hom(&p.left).passed());

        let diag = ea_equalizer(&sq.left, &sq.right).unwrap();
        assert!(diag.ea.is_isomorphic(&two));
        assert!(check_ea_hom(&diag.inclusion).passed());
    }

    #[test]
    fn action_on_rationals() {
        let pts = [q(1, 4), q(1, 2), q(3, 4), q(1, 1)];
        assert_eq!(act_chain(&UnitInterval, &pts), Ok(q(1, 2)));
        assert_eq!(act_chain(&UnitInterval, &[]), Ok(q(0, 1)));
    }

    #[test]
    fn action_laws_on_three() {
        let b = Budget::default();
        let e = FinEffectAlgebra::three();
        let k = kalmbach_extension(&e.order, &b).unwrap();
        let kk = kalmbach_extension(k.poset(), &b).unwrap();
        let act = algebra_action(&e, &k).unwrap();
        let top = k.id_of_points(&[0, 2]).unwrap();
        assert_eq!(act.apply(0), 0);
        assert_eq!(act.apply(top), 2);
        assert!(check_action_laws(&e, &k, Some(&kk)).unwrap().passed());
    }

    #[test]
    fn dposet_round_trip() {
        for e in [
            FinEffectAlgebra::two(),
            FinEffectAlgebra::three(),
            FinEffectAlgebra::boolean(3),
            omp_to_ea(&OrthoPoset::mo(2)).unwrap(),
        ] {
            assert!(check_dposet_round_trip(&e).passed());
        }
    }

    #[test]
    fn factorization_through_the_diamond() {
        let c3 = Arc::new(FinBoundedPoset::chain(3));
        let a = OrthoPoset::boolean(2);
        let f = PosetMap::new(c3, a.poset().clone(), vec![0, 1, 3]).unwrap();
        let fac = free_factorization(&f, &a, &Budget::default()).unwrap();
        assert!(fac.report.passed(), "{}", fac.report);
        let m1 = fac.kalmbach.id_of_points(&[1, 2]).unwrap();
        assert_eq!(fac.h.apply(m1), a.perp(1));
        assert!(matches!(fac.uniqueness, Uniqueness::Certified { .. }));
    }
}
