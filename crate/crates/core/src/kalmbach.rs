//! The Kalmbach extension: even chains of a bounded poset read as finite
//! unions of half-open intervals, ordered by containment.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{algebra_action, FinEffectAlgebra};
use crate::omp::{omp_to_ea, OrthoPoset};
use crate::poset::{FinBoundedPoset, PosetMap};
use crate::report::{Law, Report};
use crate::{Budget, ElemId, Error, Result};

/// A strictly increasing chain of even length, `[a₁<a₂<…<a₂ₙ]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvenChain(Vec<ElemId>);

impl EvenChain {
    pub fn empty() -> Self {
        EvenChain(Vec::new())
    }

    /// Validates `points` against `base`.
    pub fn new(points: Vec<ElemId>, base: &FinBoundedPoset) -> Result<Self> {
        if let Some(&x) = points.iter().find(|&&x| x >= base.size()) {
            return Err(Error::malformed(format!("chain point {x} is not in the poset")));
        }
        if points.len() % 2 != 0 {
            return Err(Error::malformed("chain has odd length"));
        }
        if let Some(w) = points.windows(2).find(|w| !base.lt(w[0], w[1])) {
            return Err(Error::malformed(format!(
                "chain points {} and {} are not strictly increasing",
                base.label(w[0]),
                base.label(w[1])
            )));
        }
        Ok(EvenChain(points))
    }

    pub fn points(&self) -> &[ElemId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The intervals `[a₂ᵢ₋₁, a₂ᵢ)` as pairs.
    pub fn intervals(&self) -> impl Iterator<Item = (ElemId, ElemId)> + '_ {
        self.0.chunks_exact(2).map(|c| (c[0], c[1]))
    }

    pub fn display<'a>(&'a self, base: &'a FinBoundedPoset) -> ChainDisplay<'a> {
        ChainDisplay { chain: self, base }
    }

    fn in_range(&self, base: &FinBoundedPoset) -> Result<()> {
        match self.0.iter().find(|&&x| x >= base.size()) {
            Some(x) => Err(Error::malformed(format!("chain point {x} is not in the poset"))),
            None => Ok(()),
        }
    }
}

/// Renders a chain as `∅` or `[0<a<b<1]`.
pub struct ChainDisplay<'a> {
    chain: &'a EvenChain,
    base: &'a FinBoundedPoset,
}

impl fmt::Display for ChainDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.chain.is_empty() {
            return f.write_str("∅");
        }
        f.write_str("[")?;
        for (i, &x) in self.chain.0.iter().enumerate() {
            if i > 0 {
                f.write_str("<")?;
            }
            f.write_str(self.base.label(x))?;
        }
        f.write_str("]")
    }
}

/// Interval containment: every `[s₂ᵢ₋₁, s₂ᵢ)` lies inside some `[t₂ⱼ₋₁, t₂ⱼ)`.
pub fn chain_leq(s: &EvenChain, t: &EvenChain, base: &FinBoundedPoset) -> Result<bool> {
    s.in_range(base)?;
    t.in_range(base)?;
    Ok(leq_unchecked(s, t, base))
}

fn leq_unchecked(s: &EvenChain, t: &EvenChain, base: &FinBoundedPoset) -> bool {
    s.intervals()
        .all(|(lo, hi)| t.intervals().any(|(a, b)| base.leq(a, lo) && base.leq(hi, b)))
}

/// `S Δ {0, 1}`.
pub fn chain_perp(s: &EvenChain, base: &FinBoundedPoset) -> EvenChain {
    let (bottom, top) = (base.bottom(), base.top());
    if bottom == top {
        return EvenChain::empty();
    }
    let mut points = s.0.clone();
    if points.first() == Some(&bottom) {
        points.remove(0);
    } else {
        points.insert(0, bottom);
    }
    if points.last() == Some(&top) {
        points.pop();
    } else {
        points.push(top);
    }
    EvenChain(points)
}

/// Number of even chains (including the empty one), saturating.
pub fn count_even_chains(p: &FinBoundedPoset) -> u128 {
    if p.is_degenerate() {
        return 1;
    }
    let order = p.linear_extension();
    let mut odd = vec![0u128; p.size()];
    let mut even = vec![0u128; p.size()];
    for &x in &order {
        let (mut o, mut e) = (1u128, 0u128);
        for &y in &order {
            if p.lt(y, x) {
                o = o.saturating_add(even[y]);
                e = e.saturating_add(odd[y]);
            }
        }
        odd[x] = o;
        even[x] = e;
    }
    even.iter().fold(1u128, |acc, &c| acc.saturating_add(c))
}

fn all_even_chains(p: &FinBoundedPoset) -> Vec<EvenChain> {
    fn extend(p: &FinBoundedPoset, order: &[ElemId], path: &mut Vec<ElemId>, out: &mut Vec<EvenChain>) {
        if path.len() % 2 == 0 && !path.is_empty() {
            out.push(EvenChain(path.clone()));
        }
        let last = *path.last().expect("non-empty path");
        for &y in order {
            if p.lt(last, y) {
                path.push(y);
                extend(p, order, path, out);
                path.pop();
            }
        }
    }
    let mut out = vec![EvenChain::empty()];
    if p.is_degenerate() {
        return out;
    }
    let order = p.linear_extension();
    for &x in &order {
        extend(p, &order, &mut vec![x], &mut out);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.0.cmp(&b.0)));
    out
}

/// `K(P)` materialized as an orthoposet whose element ids index [`Self::chains`].
#[derive(Debug, Clone)]
pub struct KalmbachExtension {
    base: Arc<FinBoundedPoset>,
    chains: Vec<EvenChain>,
    index: HashMap<EvenChain, ElemId>,
    omp: OrthoPoset,
}

/// Builds `K(p)`, refusing when the even-chain count exceeds the budget.
///
/// Chains are ordered by length, then lexicographically by point ids, so
/// `∅` is element 0.
pub fn kalmbach_extension(p: &Arc<FinBoundedPoset>, budget: &Budget) -> Result<KalmbachExtension> {
    let count = count_even_chains(p);
    if count > budget.max_kalmbach_elements {
        return Err(Error::budget(
            "Kalmbach extension (even chains)",
            count,
            budget.max_kalmbach_elements,
        ));
    }
    let chains = all_even_chains(p);
    debug_assert_eq!(chains.len() as u128, count);
    let n = chains.len();
    let index: HashMap<EvenChain, ElemId> =
        chains.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let leq = (0..n * n)
        .map(|i| leq_unchecked(&chains[i / n], &chains[i % n], p))
        .collect();
    let labels = chains.iter().map(|c| c.display(p).to_string()).collect();
    let top_chain = if p.is_degenerate() {
        EvenChain::empty()
    } else {
        EvenChain(vec![p.bottom(), p.top()])
    };
    let top = index[&top_chain];
    let poset = Arc::new(FinBoundedPoset::new_unchecked(labels, leq, 0, top));
    let perp = chains.iter().map(|c| index[&chain_perp(c, p)]).collect();
    let omp = OrthoPoset::new(poset, perp)?;
    Ok(KalmbachExtension {
        base: p.clone(),
        chains,
        index,
        omp,
    })
}

impl KalmbachExtension {
    pub fn base(&self) -> &Arc<FinBoundedPoset> {
        &self.base
    }

    pub fn omp(&self) -> &OrthoPoset {
        &self.omp
    }

    pub fn poset(&self) -> &Arc<FinBoundedPoset> {
        self.omp.poset()
    }

    pub fn size(&self) -> usize {
        self.chains.len()
    }

    pub fn chains(&self) -> &[EvenChain] {
        &self.chains
    }

    pub fn chain(&self, id: ElemId) -> &EvenChain {
        &self.chains[id]
    }

    pub fn id_of(&self, chain: &EvenChain) -> Option<ElemId> {
        self.index.get(chain).copied()
    }

    /// True when the base is the one-point poset and `K` is `{∅}`.
    pub fn is_degenerate(&self) -> bool {
        self.base.is_degenerate()
    }

    /// Id of the chain with the given points.
    pub fn id_of_points(&self, points: &[ElemId]) -> Option<ElemId> {
        self.index.get(&EvenChain(points.to_vec())).copied()
    }
}

/// `Δ_{s∈S} {f(s)}` for a monotone `f`, as a sorted point list.
pub(crate) fn image_points(f: impl Fn(ElemId) -> ElemId, chain: &EvenChain) -> Vec<ElemId> {
    // f is monotone, so images arrive in non-decreasing order and equal
    // values are adjacent; pairs cancel.
    let mut out: Vec<ElemId> = Vec::with_capacity(chain.len());
    for &s in chain.points() {
        let y = f(s);
        if out.last() == Some(&y) {
            out.pop();
        } else {
            out.push(y);
        }
    }
    out
}

/// `K(f): K(source) → K(target)`.
pub fn kalmbach_map(
    f: &PosetMap,
    source: &KalmbachExtension,
    target: &KalmbachExtension,
) -> Result<PosetMap> {
    if **f.source() != *source.base || **f.target() != *target.base {
        return Err(Error::precondition(
            "Kalmbach extensions do not match the map's source and target",
        ));
    }
    let assignment = source
        .chains
        .iter()
        .map(|c| {
            let points = image_points(|x| f.apply(x), c);
            target.id_of_points(&points).ok_or_else(|| {
                Error::precondition(format!(
                    "image of {} is not a chain; the map is not monotone",
                    c.display(&source.base)
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    PosetMap::new(source.poset().clone(), target.poset().clone(), assignment)
}

/// `x ↦ [0<x]`, with `0 ↦ ∅`.
pub fn unit_embedding(k: &KalmbachExtension) -> PosetMap {
    let p = &k.base;
    let assignment = p
        .elements()
        .map(|x| {
            if x == p.bottom() {
                0
            } else {
                k.index[&EvenChain(vec![p.bottom(), x])]
            }
        })
        .collect();
    PosetMap::new(p.clone(), k.poset().clone(), assignment).expect("unit lands in K(p)")
}

/// `μ: K(K(p)) → K(p)`, the action of `K(p)` viewed as an effect algebra.
///
/// `kk` must be the extension of `k`'s own poset.
pub fn monad_mult(k: &KalmbachExtension, kk: &KalmbachExtension) -> Result<PosetMap> {
    let ea = kalmbach_effect_algebra(k)?;
    algebra_action(&ea, kk)
}

/// `K(p)` as an effect algebra, sharing the poset `Arc` of `k`.
pub fn kalmbach_effect_algebra(k: &KalmbachExtension) -> Result<FinEffectAlgebra> {
    omp_to_ea(&k.omp)
}

/// Unit laws, and associativity when `kkk = K(K(K(p)))` is supplied.
pub fn check_monad_laws(
    k: &KalmbachExtension,
    kk: &KalmbachExtension,
    kkk: Option<&KalmbachExtension>,
) -> Result<Report> {
    let mut report = Report::new(format!("K({})", k.base));
    let mu = monad_mult(k, kk)?;
    let eta_k = unit_embedding(kk);
    let eta = unit_embedding(k);
    let k_eta = kalmbach_map(&eta, k, kk)?;
    for s in k.poset().elements() {
        if mu.apply(eta_k.apply(s)) != s {
            report.push(Law::MonadLeftUnit, [k.poset().label(s)]);
        }
        if mu.apply(k_eta.apply(s)) != s {
            report.push(Law::MonadRightUnit, [k.poset().label(s)]);
        }
    }
    if let Some(kkk) = kkk {
        let mu_k = monad_mult(kk, kkk)?;
        let k_mu = kalmbach_map(&mu, kkk, kk)?;
        for t in kkk.poset().elements() {
            if mu.apply(k_mu.apply(t)) != mu.apply(mu_k.apply(t)) {
                report.push(Law::MonadAssociative, [kkk.poset().label(t)]);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::omp::check_omp;

    fn ext(p: FinBoundedPoset) -> KalmbachExtension {
        kalmbach_extension(&Arc::new(p), &Budget::default()).unwrap()
    }

    #[test]
    fn chain_order_examples() {
        let c4 = FinBoundedPoset::chain(4);
        let (a, b) = (1, 2);
        let ab = EvenChain::new(vec![a, b], &c4).unwrap();
        let oa = EvenChain::new(vec![0, a], &c4).unwrap();
        assert!(!chain_leq(&ab, &oa, &c4).unwrap());
        assert!(!chain_leq(&oa, &ab, &c4).unwrap());
        let top = EvenChain::new(vec![0, 3], &c4).unwrap();
        assert!(chain_leq(&oa, &top, &c4).unwrap());
        assert!(chain_leq(&EvenChain::empty(), &ab, &c4).unwrap());
        assert!(matches!(
            chain_leq(&EvenChain(vec![0, 9]), &top, &c4),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn perp_examples() {
        let c4 = FinBoundedPoset::chain(4);
        assert_eq!(chain_perp(&EvenChain::empty(), &c4).points(), &[0, 3]);
        assert_eq!(chain_perp(&EvenChain(vec![0, 2]), &c4).points(), &[2, 3]);
        assert_eq!(chain_perp(&EvenChain(vec![1, 2]), &c4).points(), &[0, 1, 2, 3]);
    }

    #[test]
    fn small_extensions() {
        let k2 = ext(FinBoundedPoset::chain(2));
        assert_eq!(k2.size(), 2);
        let k3 = ext(FinBoundedPoset::chain(3));
        assert_eq!(k3.size(), 4);
        assert!(k3.poset().is_isomorphic(&FinBoundedPoset::boolean(2)));
        let kd = ext(FinBoundedPoset::diamond());
        let labels: Vec<&str> = kd.poset().labels().iter().map(String::as_str).collect();
        assert_eq!(labels, ["∅", "[0<a]", "[0<b]", "[0<1]", "[a<1]", "[b<1]"]);
        assert!(check_omp(kd.omp()).passed());
    }

    #[test]
    fn chain_counts_match_materialization() {
        for p in [
            FinBoundedPoset::one_point(),
            FinBoundedPoset::chain(5),
            FinBoundedPoset::boolean(3),
        ] {
            assert_eq!(count_even_chains(&p) as usize, all_even_chains(&p).len());
        }
    }

    #[test]
    fn budget_refusal_reports_count() {
        let p = Arc::new(FinBoundedPoset::chain(6));
        let tight = Budget {
            max_kalmbach_elements: 8,
            ..Budget::default()
        };
        match kalmbach_extension(&p, &tight) {
            Err(Error::Budget { required, .. }) => assert_eq!(required, 32),
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn kalmbach_map_cancels_collisions() {
        let c3 = Arc::new(FinBoundedPoset::chain(3));
        let c2 = Arc::new(FinBoundedPoset::chain(2));
        let f = PosetMap::new(c3.clone(), c2.clone(), vec![0, 0, 1]).unwrap();
        let k3 = kalmbach_extension(&c3, &Budget::default()).unwrap();
        let k2 = kalmbach_extension(&c2, &Budget::default()).unwrap();
        let kf = kalmbach_map(&f, &k3, &k2).unwrap();
        let om = k3.id_of_points(&[0, 1]).unwrap();
        let m1 = k3.id_of_points(&[1, 2]).unwrap();
        assert!(k2.chain(kf.apply(om)).is_empty());
        assert_eq!(k2.chain(kf.apply(m1)).points(), &[0, 1]);
    }

    #[test]
    fn unit_examples() {
        let k3 = ext(FinBoundedPoset::chain(3));
        let eta = unit_embedding(&k3);
        assert_eq!(eta.apply(0), 0);
        assert_eq!(k3.chain(eta.apply(2)).points(), &[0, 2]);
        assert_eq!(k3.chain(eta.apply(1)).points(), &[0, 1]);
        assert!(k3.poset().leq(eta.apply(1), eta.apply(2)));
    }

    #[test]
    fn degenerate_base() {
        let k = ext(FinBoundedPoset::one_point());
        assert_eq!(k.size(), 1);
        assert!(k.is_degenerate());
    }

    #[test]
    fn monad_laws_on_three_chain() {
        let b = Budget::default();
        let k = ext(FinBoundedPoset::chain(3));
        let kk = kalmbach_extension(k.poset(), &b).unwrap();
        let kkk = kalmbach_extension(kk.poset(), &b).unwrap();
        let r = check_monad_laws(&k, &kk, Some(&kkk)).unwrap();
        assert!(r.passed(), "{r}");
    }
}
