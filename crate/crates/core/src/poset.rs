//! Finite bounded posets, their morphisms, limits and canonical enumeration.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::canon::{find_bijection, invariant_blocks, least_encoding};
use crate::report::{Law, Report};
use crate::{Budget, ElemId, Error, Result, POSET_SIZE_WALL};

/// A raw relation with designated bounds, not yet known to be a poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetCandidate {
    pub labels: Vec<String>,
    /// Pairs `(x, y)` meaning `x ≤ y`. Nothing is implied.
    pub relation: Vec<(ElemId, ElemId)>,
    pub bottom: ElemId,
    pub top: ElemId,
}

/// A finite poset with a least element `bottom` and a greatest element `top`.
///
/// Elements are the dense ids `0..size`; labels are for display only.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinBoundedPoset {
    size: usize,
    leq: Vec<bool>,
    bottom: ElemId,
    top: ElemId,
    labels: Vec<String>,
}

/// Checks a candidate against the bounded-poset laws.
///
/// Element ids outside `0..labels.len()` are reported as malformed input,
/// never as law violations.
pub fn validate_bounded_poset(candidate: &PosetCandidate) -> Result<Report> {
    let n = candidate.labels.len();
    if n == 0 {
        return Err(Error::malformed("a bounded poset needs at least one element"));
    }
    for &(x, y) in &candidate.relation {
        if x >= n || y >= n {
            return Err(Error::malformed(format!(
                "relation pair ({x},{y}) refers to an element outside 0..{n}"
            )));
        }
    }
    if candidate.bottom >= n || candidate.top >= n {
        return Err(Error::malformed("bottom or top outside the carrier"));
    }
    let mut leq = vec![false; n * n];
    for &(x, y) in &candidate.relation {
        leq[x * n + y] = true;
    }
    Ok(check_matrix(
        &leq,
        n,
        candidate.bottom,
        candidate.top,
        &candidate.labels,
    ))
}

pub(crate) fn check_matrix(leq: &[bool], n: usize, bottom: ElemId, top: ElemId, labels: &[String]) -> Report {
    let at = |x: usize, y: usize| leq[x * n + y];
    let l = |x: usize| labels[x].clone();
    let mut report = Report::default();
    for x in 0..n {
        if !at(x, x) {
            report.push(Law::Reflexivity, [l(x)]);
        }
    }
    for x in 0..n {
        for y in (x + 1)..n {
            if at(x, y) && at(y, x) {
                report.push(Law::Antisymmetry, [l(x), l(y)]);
            }
        }
    }
    'outer: for x in 0..n {
        for y in 0..n {
            if !at(x, y) {
                continue;
            }
            for z in 0..n {
                if at(y, z) && !at(x, z) {
                    report.push(Law::Transitivity, [l(x), l(y), l(z)]);
                    if report.violations.len() > 64 {
                        break 'outer;
                    }
                }
            }
        }
    }
    for x in 0..n {
        if !at(bottom, x) {
            report.push(Law::BottomLeast, [l(bottom), l(x)]);
        }
        if !at(x, top) {
            report.push(Law::TopGreatest, [l(x), l(top)]);
        }
    }
    if n > 1 && bottom == top {
        report.push(Law::DistinctBounds, [l(bottom)]);
    }
    report
}

/// Reflexive-transitive closure of a relation on `0..n`.
pub fn reflexive_transitive_closure(n: usize, pairs: &[(ElemId, ElemId)]) -> Vec<bool> {
    let mut leq = vec![false; n * n];
    for x in 0..n {
        leq[x * n + x] = true;
    }
    for &(x, y) in pairs {
        leq[x * n + y] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if !leq[i * n + k] {
                continue;
            }
            for j in 0..n {
                if leq[k * n + j] {
                    leq[i * n + j] = true;
                }
            }
        }
    }
    leq
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Labels `0, a, b, …, 1` with the bounds at the ends.
pub(crate) fn bounded_labels(n: usize) -> Vec<String> {
    match n {
        0 => Vec::new(),
        1 => vec!["0".into()],
        _ => {
            let mut labels = vec!["0".to_string()];
            for i in 0..n - 2 {
                labels.push(middle_label(i));
            }
            labels.push("1".into());
            labels
        }
    }
}

fn middle_label(i: usize) -> String {
    const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
    if i < LETTERS.len() {
        (LETTERS[i] as char).to_string()
    } else {
        format!("e{i}")
    }
}

impl FinBoundedPoset {
    /// Builds a poset from a full `size × size` relation matrix (row-major).
    pub fn new(labels: Vec<String>, leq: Vec<bool>, bottom: ElemId, top: ElemId) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::malformed("a bounded poset needs at least one element"));
        }
        if leq.len() != n * n {
            return Err(Error::malformed(format!(
                "relation matrix has {} entries, expected {}",
                leq.len(),
                n * n
            )));
        }
        if bottom >= n || top >= n {
            return Err(Error::malformed("bottom or top outside the carrier"));
        }
        check_matrix(&leq, n, bottom, top, &labels).into_result()?;
        Ok(Self::new_unchecked(labels, leq, bottom, top))
    }

    pub(crate) fn new_unchecked(
        labels: Vec<String>,
        leq: Vec<bool>,
        bottom: ElemId,
        top: ElemId,
    ) -> Self {
        FinBoundedPoset {
            size: labels.len(),
            leq,
            bottom,
            top,
            labels,
        }
    }

    /// Builds a poset whose order is the reflexive-transitive closure of `covers`.
    pub fn from_covers(
        labels: Vec<String>,
        covers: &[(ElemId, ElemId)],
        bottom: ElemId,
        top: ElemId,
    ) -> Result<Self> {
        let n = labels.len();
        if covers.iter().any(|&(x, y)| x >= n || y >= n) {
            return Err(Error::malformed("cover refers to an element outside the carrier"));
        }
        let leq = reflexive_transitive_closure(n, covers);
        Self::new(labels, leq, bottom, top)
    }

    pub fn from_candidate(candidate: &PosetCandidate) -> Result<Self> {
        validate_bounded_poset(candidate)?.into_result()?;
        let n = candidate.labels.len();
        let mut leq = vec![false; n * n];
        for &(x, y) in &candidate.relation {
            leq[x * n + y] = true;
        }
        Ok(Self::new_unchecked(
            candidate.labels.clone(),
            leq,
            candidate.bottom,
            candidate.top,
        ))
    }

    /// The one-point poset where `0 = 1`.
    pub fn one_point() -> Self {
        Self::new_unchecked(vec!["0".into()], vec![true], 0, 0)
    }

    /// The `n`-element chain `0 < … < 1`. The 3-chain's middle is called `m`.
    pub fn chain(n: usize) -> Self {
        assert!(n >= 1, "chain needs at least one element");
        let labels = if n == 3 {
            vec!["0".into(), "m".into(), "1".into()]
        } else {
            bounded_labels(n)
        };
        let leq = (0..n * n).map(|i| i / n <= i % n).collect();
        Self::new_unchecked(labels, leq, 0, n - 1)
    }

    /// `{0, a, b, 1}` with `a`, `b` incomparable.
    pub fn diamond() -> Self {
        Self::boolean(2)
    }

    /// The Boolean lattice of subsets of `atoms` atoms.
    ///
    /// Element `i` is the subset with bitmask `i`; labels concatenate atom
    /// letters, with `0` and `1` for the bounds.
    pub fn boolean(atoms: usize) -> Self {
        assert!(atoms < 16, "boolean lattice too large");
        let n = 1usize << atoms;
        let full = n - 1;
        let labels = (0..n)
            .map(|mask| {
                if mask == 0 {
                    "0".to_string()
                } else if mask == full {
                    "1".to_string()
                } else {
                    (0..atoms)
                        .filter(|b| mask & (1 << b) != 0)
                        .map(middle_label)
                        .collect()
                }
            })
            .collect();
        let leq = (0..n * n)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                x & y == x
            })
            .collect();
        Self::new_unchecked(labels, leq, 0, full)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bottom(&self) -> ElemId {
        self.bottom
    }

    pub fn top(&self) -> ElemId {
        self.top
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: ElemId) -> &str {
        &self.labels[x]
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.size);
        self.labels = labels;
        self
    }

    /// Position of the element carrying `label`, if any.
    pub fn find(&self, label: &str) -> Option<ElemId> {
        self.labels.iter().position(|l| l == label)
    }

    /// The one-point poset, where `0 = 1`.
    pub fn is_degenerate(&self) -> bool {
        self.size == 1
    }

    pub fn elements(&self) -> std::ops::Range<ElemId> {
        0..self.size
    }

    #[inline]
    pub fn leq(&self, x: ElemId, y: ElemId) -> bool {
        self.leq[x * self.size + y]
    }

    #[inline]
    pub fn lt(&self, x: ElemId, y: ElemId) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: ElemId, y: ElemId) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn relation_matrix(&self) -> &[bool] {
        &self.leq
    }

    pub fn down_count(&self, x: ElemId) -> usize {
        self.elements().filter(|&y| self.leq(y, x)).count()
    }

    pub fn up_count(&self, x: ElemId) -> usize {
        self.elements().filter(|&y| self.leq(x, y)).count()
    }

    /// Least upper bound of `set`, when it exists (the empty set has `bottom`).
    pub fn supremum(&self, set: &[ElemId]) -> Option<ElemId> {
        let ub: Vec<ElemId> = self
            .elements()
            .filter(|&u| set.iter().all(|&s| self.leq(s, u)))
            .collect();
        ub.iter()
            .copied()
            .find(|&u| ub.iter().all(|&v| self.leq(u, v)))
    }

    /// Greatest lower bound of `set`, when it exists (the empty set has `top`).
    pub fn infimum(&self, set: &[ElemId]) -> Option<ElemId> {
        let lb: Vec<ElemId> = self
            .elements()
            .filter(|&u| set.iter().all(|&s| self.leq(u, s)))
            .collect();
        lb.iter()
            .copied()
            .find(|&u| lb.iter().all(|&v| self.leq(v, u)))
    }

    pub fn join(&self, x: ElemId, y: ElemId) -> Option<ElemId> {
        if self.leq(x, y) {
            return Some(y);
        }
        if self.leq(y, x) {
            return Some(x);
        }
        self.supremum(&[x, y])
    }

    pub fn meet(&self, x: ElemId, y: ElemId) -> Option<ElemId> {
        if self.leq(x, y) {
            return Some(x);
        }
        if self.leq(y, x) {
            return Some(y);
        }
        self.infimum(&[x, y])
    }

    /// The cover relation: `x < y` with nothing strictly between. Sorted.
    pub fn hasse_covers(&self) -> Vec<(ElemId, ElemId)> {
        let mut covers = Vec::new();
        for x in self.elements() {
            for y in self.elements() {
                if self.lt(x, y) && !self.elements().any(|z| self.lt(x, z) && self.lt(z, y)) {
                    covers.push((x, y));
                }
            }
        }
        covers
    }

    /// Elements sorted so that `x < y` implies `x` comes first.
    pub fn linear_extension(&self) -> Vec<ElemId> {
        let mut order: Vec<ElemId> = self.elements().collect();
        order.sort_by_key(|&x| (self.down_count(x), x));
        order
    }

    /// Element ranks: length of the longest chain from `bottom`.
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.size];
        for x in self.linear_extension() {
            rank[x] = self
                .elements()
                .filter(|&y| self.lt(y, x))
                .map(|y| rank[y] + 1)
                .max()
                .unwrap_or(0);
        }
        rank
    }

    /// The poset with element `order[i]` moved to position `i`.
    pub fn relabeled(&self, order: &[ElemId]) -> Self {
        let n = self.size;
        let mut inverse = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            inverse[old] = new;
        }
        let leq = (0..n * n)
            .map(|i| self.leq(order[i / n], order[i % n]))
            .collect();
        FinBoundedPoset {
            size: n,
            leq,
            bottom: inverse[self.bottom],
            top: inverse[self.top],
            labels: order.iter().map(|&o| self.labels[o].clone()).collect(),
        }
    }

    fn invariant_keys(&self) -> Vec<(usize, usize)> {
        self.elements()
            .map(|x| (self.down_count(x), self.up_count(x)))
            .collect()
    }

    /// Relabeling order and relation code of the canonical form.
    ///
    /// The canonical labeling puts `bottom` first and `top` last, sorts the
    /// rest by (down-set size, up-set size) and breaks ties by the
    /// lexicographically least relation matrix.
    pub fn canonical_order(&self) -> (Vec<ElemId>, Vec<bool>) {
        let keys = self.invariant_keys();
        let blocks = invariant_blocks(&keys, Some(self.bottom), Some(self.top));
        least_encoding(&blocks, |order, _| {
            let n = order.len();
            (0..n * n)
                .map(|i| self.leq(order[i / n], order[i % n]))
                .collect::<Vec<bool>>()
        })
    }

    /// The canonical representative with labels `0, a, b, …, 1`.
    pub fn canonical_form(&self) -> Self {
        let (order, _) = self.canonical_order();
        self.relabeled(&order).with_labels(bounded_labels(self.size))
    }

    /// An order isomorphism `self → other`, found by backtracking.
    pub fn find_isomorphism(&self, other: &FinBoundedPoset) -> Option<Vec<ElemId>> {
        if self.size != other.size {
            return None;
        }
        let ka = self.invariant_keys();
        let kb = other.invariant_keys();
        let order = self.linear_extension();
        find_bijection(&ka, &kb, &order, |assigned, x, y| {
            assigned.iter().all(|&(z, w)| {
                self.leq(x, z) == other.leq(y, w) && self.leq(z, x) == other.leq(w, y)
            })
        })
    }

    pub fn is_isomorphic(&self, other: &FinBoundedPoset) -> bool {
        self.find_isomorphism(other).is_some()
    }
}

impl fmt::Display for FinBoundedPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "poset[{}]{{", self.size)?;
        for (i, (x, y)) in self.hasse_covers().into_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}<{}", self.labels[x], self.labels[y])?;
        }
        write!(f, "}}")
    }
}

/// A map of bounded posets, not yet known to be monotone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetMap {
    source: Arc<FinBoundedPoset>,
    target: Arc<FinBoundedPoset>,
    assignment: Vec<ElemId>,
}

impl PosetMap {
    pub fn new(
        source: Arc<FinBoundedPoset>,
        target: Arc<FinBoundedPoset>,
        assignment: Vec<ElemId>,
    ) -> Result<Self> {
        if assignment.len() != source.size() {
            return Err(Error::malformed(format!(
                "map assigns {} values for a source of size {}",
                assignment.len(),
                source.size()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&y| y >= target.size()) {
            return Err(Error::malformed(format!(
                "map value {bad} outside target of size {}",
                target.size()
            )));
        }
        Ok(PosetMap {
            source,
            target,
            assignment,
        })
    }

    pub fn identity(p: Arc<FinBoundedPoset>) -> Self {
        let assignment = p.elements().collect();
        PosetMap {
            source: p.clone(),
            target: p,
            assignment,
        }
    }

    pub fn source(&self) -> &Arc<FinBoundedPoset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinBoundedPoset> {
        &self.target
    }

    pub fn assignment(&self) -> &[ElemId] {
        &self.assignment
    }

    #[inline]
    pub fn apply(&self, x: ElemId) -> ElemId {
        self.assignment[x]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PosetMap) -> Result<PosetMap> {
        if *self.target != *next.source {
            return Err(Error::precondition("composing maps whose ends do not meet"));
        }
        Ok(PosetMap {
            source: self.source.clone(),
            target: next.target.clone(),
            assignment: self.assignment.iter().map(|&x| next.apply(x)).collect(),
        })
    }

    /// Same assignment, compared as functions on ids.
    pub fn same_values(&self, other: &PosetMap) -> bool {
        self.assignment == other.assignment
    }
}

/// Monotonicity and preservation of both bounds, with witnesses.
pub fn check_poset_map(f: &PosetMap) -> Report {
    let (p, q) = (&f.source, &f.target);
    let mut report = Report::default();
    for x in p.elements() {
        for y in p.elements() {
            if p.leq(x, y) && !q.leq(f.apply(x), f.apply(y)) {
                report.push(Law::Monotone, [p.label(x), p.label(y)]);
            }
        }
    }
    if f.apply(p.bottom()) != q.bottom() {
        report.push(Law::PreservesBottom, [p.label(p.bottom())]);
    }
    if f.apply(p.top()) != q.top() {
        report.push(Law::PreservesTop, [p.label(p.top())]);
    }
    report
}

/// A product poset together with its two projections.
#[derive(Debug, Clone)]
pub struct ProductPoset {
    pub poset: Arc<FinBoundedPoset>,
    pub left: PosetMap,
    pub right: PosetMap,
}

impl ProductPoset {
    /// Id of the pair `(a, b)`.
    pub fn pair_id(&self, a: ElemId, b: ElemId) -> ElemId {
        a * self.right.target.size() + b
    }

    /// The unique map `x ↦ (f(x), g(x))` into the product.
    pub fn pairing(&self, f: &PosetMap, g: &PosetMap) -> Result<PosetMap> {
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
        PosetMap::new(f.source.clone(), self.poset.clone(), assignment)
    }
}

/// Cartesian product with the componentwise order.
pub fn product_poset(p: &Arc<FinBoundedPoset>, q: &Arc<FinBoundedPoset>) -> ProductPoset {
    let (np, nq) = (p.size(), q.size());
    let n = np * nq;
    let leq = (0..n * n)
        .map(|i| {
            let (x, y) = (i / n, i % n);
            p.leq(x / nq, y / nq) && q.leq(x % nq, y % nq)
        })
        .collect();
    let labels = (0..n)
        .map(|x| format!("({},{})", p.label(x / nq), q.label(x % nq)))
        .collect();
    let poset = Arc::new(FinBoundedPoset::new_unchecked(
        labels,
        leq,
        p.bottom() * nq + q.bottom(),
        p.top() * nq + q.top(),
    ));
    let left = PosetMap {
        source: poset.clone(),
        target: p.clone(),
        assignment: (0..n).map(|x| x / nq).collect(),
    };
    let right = PosetMap {
        source: poset.clone(),
        target: q.clone(),
        assignment: (0..n).map(|x| x % nq).collect(),
    };
    ProductPoset { poset, left, right }
}

/// The agreement sub-poset of two parallel maps with its inclusion.
#[derive(Debug, Clone)]
pub struct Equalizer {
    pub poset: Arc<FinBoundedPoset>,
    pub inclusion: PosetMap,
}

impl Equalizer {
    /// The unique `k` with `inclusion ∘ k = h`, when `h` lands in the agreement set.
    pub fn factor(&self, h: &PosetMap) -> Option<PosetMap> {
        let inc = &self.inclusion;
        if *h.target != *inc.target {
            return None;
        }
        let assignment: Option<Vec<ElemId>> = h
            .assignment
            .iter()
            .map(|&y| inc.assignment.iter().position(|&z| z == y))
            .collect();
        PosetMap::new(h.source.clone(), self.poset.clone(), assignment?).ok()
    }
}

/// `{x | f(x) = g(x)}` with the inherited order.
pub fn equalizer_sub(f: &PosetMap, g: &PosetMap) -> Result<Equalizer> {
    if *f.source != *g.source || *f.target != *g.target {
        return Err(Error::precondition("equalizer needs a parallel pair of maps"));
    }
    let p = &f.source;
    let keep: Vec<ElemId> = p.elements().filter(|&x| f.apply(x) == g.apply(x)).collect();
    let bottom = keep
        .iter()
        .position(|&x| x == p.bottom())
        .ok_or_else(|| Error::precondition("maps disagree on the bottom element"))?;
    let top = keep
        .iter()
        .position(|&x| x == p.top())
        .ok_or_else(|| Error::precondition("maps disagree on the top element"))?;
    let k = keep.len();
    let leq = (0..k * k)
        .map(|i| p.leq(keep[i / k], keep[i % k]))
        .collect();
    let labels = keep.iter().map(|&x| p.label(x).to_string()).collect();
    let poset = Arc::new(FinBoundedPoset::new_unchecked(labels, leq, bottom, top));
    let inclusion = PosetMap {
        source: poset.clone(),
        target: p.clone(),
        assignment: keep,
    };
    Ok(Equalizer { poset, inclusion })
}

/// All bounded posets with at most `max_size` elements, one per isomorphism
/// class, sorted by (size, canonical relation matrix).
///
/// Posets are generated from naturally labelled inner posets (every element
/// added as a new maximal element above a down-closed set) and deduplicated by
/// canonical form. Parallel canonicalization does not affect the output order.
pub fn enumerate_bounded_posets(max_size: usize, budget: &Budget) -> Result<Vec<FinBoundedPoset>> {
    if max_size == 0 {
        return Err(Error::precondition("size bound must be at least 1"));
    }
    let limit = budget.max_enumeration_size.min(POSET_SIZE_WALL);
    if max_size > limit {
        return Err(Error::budget(
            "bounded poset enumeration",
            max_size as u128,
            limit as u128,
        ));
    }
    let mut out = vec![FinBoundedPoset::one_point()];
    for n in 2..=max_size {
        let inner = naturally_labelled_posets(n - 2);
        let classes: BTreeMap<Vec<bool>, FinBoundedPoset> = inner
            .par_iter()
            .map(|rel| {
                let p = bound_inner(n, rel);
                let (order, code) = p.canonical_order();
                (code, p.relabeled(&order).with_labels(bounded_labels(n)))
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        out.extend(classes.into_values());
    }
    Ok(out)
}

/// Strict-lower-set lists for every naturally labelled poset on `k` points.
fn naturally_labelled_posets(k: usize) -> Vec<Vec<Vec<bool>>> {
    let mut out = Vec::new();
    let mut below: Vec<Vec<bool>> = Vec::new();
    grow(k, &mut below, &mut out);
    out
}

fn grow(k: usize, below: &mut Vec<Vec<bool>>, out: &mut Vec<Vec<Vec<bool>>>) {
    let i = below.len();
    if i == k {
        out.push(below.clone());
        return;
    }
    for mask in 0u32..(1 << i) {
        let set: Vec<bool> = (0..i).map(|j| mask & (1 << j) != 0).collect();
        let closed = (0..i).all(|j| !set[j] || (0..j).all(|l| !below[j][l] || set[l]));
        if closed {
            below.push(set);
            grow(k, below, out);
            below.pop();
        }
    }
}

fn bound_inner(n: usize, below: &[Vec<bool>]) -> FinBoundedPoset {
    let mut leq = vec![false; n * n];
    for x in 0..n {
        leq[x] = true; // bottom row
        leq[x * n + n - 1] = true; // top column
        leq[x * n + x] = true;
    }
    for (i, set) in below.iter().enumerate() {
        for (j, &b) in set.iter().enumerate() {
            if b {
                leq[(j + 1) * n + (i + 1)] = true;
            }
        }
    }
    FinBoundedPoset::new_unchecked(default_labels(n), leq, 0, n - 1)
}
