//! Orthoposets and the orthomodular laws.

use std::sync::Arc;

use crate::algebra::FinEffectAlgebra;
use crate::canon::find_bijection;
use crate::poset::{check_poset_map, FinBoundedPoset, PosetMap};
use crate::report::{Law, Report};
use crate::{ElemId, Error, Result};

/// A bounded poset with a candidate orthocomplement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoPoset {
    poset: Arc<FinBoundedPoset>,
    perp: Vec<ElemId>,
}

impl OrthoPoset {
    /// Shape check only; the laws are checked by [`check_omp`].
    pub fn new(poset: Arc<FinBoundedPoset>, perp: Vec<ElemId>) -> Result<Self> {
        if perp.len() != poset.size() {
            return Err(Error::malformed(format!(
                "orthocomplement defined on {} elements, poset has {}",
                perp.len(),
                poset.size()
            )));
        }
        if let Some(&bad) = perp.iter().find(|&&y| y >= poset.size()) {
            return Err(Error::malformed(format!("orthocomplement value {bad} out of range")));
        }
        Ok(OrthoPoset { poset, perp })
    }

    /// The Boolean algebra on `atoms` atoms with set complement.
    pub fn boolean(atoms: usize) -> Self {
        let poset = FinBoundedPoset::boolean(atoms);
        let full = poset.top();
        let perp = poset.elements().map(|x| full ^ x).collect();
        OrthoPoset {
            poset: Arc::new(poset),
            perp,
        }
    }

    /// The horizontal sum of `pairs` four-element Boolean algebras:
    /// `0`, `1` and pairwise incomparable complement pairs `a, a'`, `b, b'`, …
    pub fn mo(pairs: usize) -> Self {
        let n = 2 * pairs + 2;
        let mut labels = vec!["0".to_string()];
        for i in 0..pairs {
            let base = (b'a' + i as u8) as char;
            labels.push(format!("{base}"));
            labels.push(format!("{base}'"));
        }
        labels.push("1".into());
        let leq = (0..n * n)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                x == y || x == 0 || y == n - 1
            })
            .collect();
        let poset = Arc::new(FinBoundedPoset::new_unchecked(labels, leq, 0, n - 1));
        let perp = (0..n)
            .map(|x| match x {
                0 => n - 1,
                _ if x == n - 1 => 0,
                _ if x % 2 == 1 => x + 1,
                _ => x - 1,
            })
            .collect();
        OrthoPoset { poset, perp }
    }

    pub fn poset(&self) -> &Arc<FinBoundedPoset> {
        &self.poset
    }

    pub fn size(&self) -> usize {
        self.poset.size()
    }

    #[inline]
    pub fn perp(&self, x: ElemId) -> ElemId {
        self.perp[x]
    }

    pub fn perp_table(&self) -> &[ElemId] {
        &self.perp
    }

    pub fn label(&self, x: ElemId) -> &str {
        self.poset.label(x)
    }

    /// `a ⊥ b`, i.e. `a ≤ b⊥`.
    #[inline]
    pub fn orthogonal(&self, a: ElemId, b: ElemId) -> bool {
        self.poset.leq(a, self.perp[b])
    }

    /// An isomorphism of orthoposets `self → other`.
    pub fn find_isomorphism(&self, other: &OrthoPoset) -> Option<Vec<ElemId>> {
        let (p, q) = (&self.poset, &other.poset);
        if p.size() != q.size() {
            return None;
        }
        let key = |o: &OrthoPoset, x: ElemId| {
            let p = &o.poset;
            (p.down_count(x), p.up_count(x), x == o.perp(x))
        };
        let ka: Vec<_> = p.elements().map(|x| key(self, x)).collect();
        let kb: Vec<_> = q.elements().map(|x| key(other, x)).collect();
        let order = p.linear_extension();
        find_bijection(&ka, &kb, &order, |assigned, x, y| {
            assigned.iter().all(|&(z, w)| {
                p.leq(x, z) == q.leq(y, w)
                    && p.leq(z, x) == q.leq(w, y)
                    && (self.perp(x) == z) == (other.perp(y) == w)
            })
        })
    }
}

/// The five orthomodular laws, with witnesses.
pub fn check_omp(a: &OrthoPoset) -> Report {
    let p = &a.poset;
    let l = |x: ElemId| p.label(x).to_string();
    let mut report = Report::default();
    for x in p.elements() {
        if a.perp(a.perp(x)) != x {
            report.push(Law::PerpInvolution, [l(x)]);
        }
    }
    for x in p.elements() {
        for y in p.elements() {
            if p.leq(x, y) != p.leq(a.perp(y), a.perp(x)) {
                report.push(Law::PerpAntitone, [l(x), l(y)]);
            }
        }
    }
    for x in p.elements() {
        match p.meet(x, a.perp(x)) {
            Some(m) if m == p.bottom() => {}
            Some(m) => report.push_note(
                Law::MeetWithComplement,
                [l(x), l(a.perp(x))],
                format!("meet is {}", l(m)),
            ),
            None => report.push_note(
                Law::MeetWithComplement,
                [l(x), l(a.perp(x))],
                "meet does not exist",
            ),
        }
    }
    for x in p.elements() {
        for y in p.elements() {
            if !a.orthogonal(x, y) {
                continue;
            }
            let Some(j) = p.join(x, y) else {
                report.push_note(Law::OrthogonalJoinExists, [l(x), l(y)], "join does not exist");
                continue;
            };
            match p.meet(a.perp(x), j) {
                Some(m) if m == y => {}
                Some(m) => report.push_note(
                    Law::Orthomodularity,
                    [l(x), l(y)],
                    format!("a⊥ ∧ (a∨b) is {}", l(m)),
                ),
                None => report.push_note(
                    Law::Orthomodularity,
                    [l(x), l(y)],
                    "a⊥ ∧ (a∨b) does not exist",
                ),
            }
        }
    }
    report
}

/// Bounded-poset morphism that preserves orthogonality and orthogonal joins.
pub fn check_omp_morphism(f: &PosetMap, source: &OrthoPoset, target: &OrthoPoset) -> Result<Report> {
    if **f.source() != *source.poset || **f.target() != *target.poset {
        return Err(Error::precondition("map does not run between the given orthoposets"));
    }
    let (p, q) = (&source.poset, &target.poset);
    let mut report = check_poset_map(f);
    for x in p.elements() {
        for y in p.elements() {
            if !source.orthogonal(x, y) {
                continue;
            }
            let (fx, fy) = (f.apply(x), f.apply(y));
            if !target.orthogonal(fx, fy) {
                report.push(Law::PreservesOrthogonality, [p.label(x), p.label(y)]);
                continue;
            }
            let Some(j) = p.join(x, y) else { continue };
            if q.join(fx, fy) != Some(f.apply(j)) {
                report.push(Law::PreservesOrthogonalJoin, [p.label(x), p.label(y)]);
            }
        }
    }
    Ok(report)
}

/// The effect algebra with `a ⊕ b = a ∨ b` whenever `a ≤ b⊥`.
///
/// The result shares the poset's labels; its derived order equals the
/// original order whenever the input is orthomodular.
pub fn omp_to_ea(a: &OrthoPoset) -> Result<FinEffectAlgebra> {
    let p = &a.poset;
    let n = p.size();
    let sum = (0..n * n)
        .map(|i| {
            let (x, y) = (i / n, i % n);
            if a.orthogonal(x, y) {
                p.join(x, y)
            } else {
                None
            }
        })
        .collect();
    FinEffectAlgebra::new(
        p.labels().to_vec(),
        p.bottom(),
        p.top(),
        sum,
        a.perp.clone(),
    )
}

/// Lattice, distributivity and complementation: the Boolean algebra laws.
pub fn check_boolean(a: &OrthoPoset) -> Report {
    let p = &a.poset;
    let l = |x: ElemId| p.label(x).to_string();
    let mut report = Report::default();
    for x in p.elements() {
        for y in p.elements() {
            if p.join(x, y).is_none() {
                report.push(Law::JoinExists, [l(x), l(y)]);
            }
            if p.meet(x, y).is_none() {
                report.push(Law::MeetExists, [l(x), l(y)]);
            }
        }
    }
    if !report.passed() {
        return report;
    }
    let join = |x, y| p.join(x, y).expect("lattice");
    let meet = |x, y| p.meet(x, y).expect("lattice");
    for x in p.elements() {
        if meet(x, a.perp(x)) != p.bottom() || join(x, a.perp(x)) != p.top() {
            report.push(Law::ComplementIsLatticeComplement, [l(x)]);
        }
        for y in p.elements() {
            for z in p.elements() {
                if meet(x, join(y, z)) != join(meet(x, y), meet(x, z)) {
                    report.push(Law::LatticeDistributive, [l(x), l(y), l(z)]);
                }
            }
        }
    }
    report
}
