//! Isomorph-free generation of small effect algebras, effect monoids and
//! orthomodular posets, and the census built on top.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{check_effect_algebra, FinEffectAlgebra};
use crate::canon::{invariant_blocks, least_encoding};
use crate::monoid::{
    classify_finite_em, is_irreducible, multiplications, ClassificationFailure, EmClass,
    FinEffectMonoid,
};
use crate::omp::{check_omp, OrthoPoset};
use crate::poset::{enumerate_bounded_posets, FinBoundedPoset};
use crate::{Budget, ElemId, Error, Result, ALGEBRA_SIZE_WALL};

fn algebra_limit(max_size: usize, budget: &Budget, what: &str) -> Result<()> {
    if max_size == 0 {
        return Err(Error::precondition("size bound must be at least 1"));
    }
    let limit = budget.max_enumeration_size.min(ALGEBRA_SIZE_WALL);
    if max_size > limit {
        return Err(Error::budget(what, max_size as u128, limit as u128));
    }
    Ok(())
}

/// Orthocomplements on `0..n` up to relabeling of the middle: `0 ↔ n−1`,
/// then `pairs` swapped pairs `(1,2), (3,4), …`, then fixed points.
fn perp_shapes(n: usize) -> Vec<Vec<ElemId>> {
    if n == 1 {
        return vec![vec![0]];
    }
    let middle = n - 2;
    (0..=middle / 2)
        .map(|pairs| {
            let mut perp: Vec<ElemId> = (0..n).collect();
            perp[0] = n - 1;
            perp[n - 1] = 0;
            for i in 0..pairs {
                let (a, b) = (1 + 2 * i, 2 + 2 * i);
                perp[a] = b;
                perp[b] = a;
            }
            perp
        })
        .collect()
}

/// Rough count of the sum tables the generator may visit at size `n`.
pub fn estimate_ea_candidates(n: usize) -> u128 {
    if n <= 2 {
        return 1;
    }
    let middle = n - 2;
    perp_shapes(n)
        .iter()
        .map(|perp| {
            let mut total: u128 = 1;
            for (a, &pa) in perp.iter().enumerate().take(middle + 1).skip(1) {
                for b in a..=middle {
                    if pa != b {
                        let options = 1 + middle.saturating_sub(if a == b { 1 } else { 2 });
                        total = total.saturating_mul(options as u128);
                    }
                }
            }
            total
        })
        .fold(0u128, |acc, t| acc.saturating_add(t))
}

struct SumSearch {
    n: usize,
    perp: Vec<ElemId>,
    cells: Vec<(ElemId, ElemId)>,
    // `None` = unknown, `Some(None)` = undefined, `Some(Some(c))` = c
    table: Vec<Option<Option<ElemId>>>,
}

impl SumSearch {
    fn new(perp: Vec<ElemId>) -> Self {
        let n = perp.len();
        let mut table = vec![None; n * n];
        let (zero, one) = (0, n - 1);
        for x in 0..n {
            for y in 0..n {
                let v = if x == zero {
                    Some(Some(y))
                } else if y == zero {
                    Some(Some(x))
                } else if perp[x] == y {
                    Some(Some(one))
                } else if x == one || y == one {
                    Some(None)
                } else {
                    None
                };
                table[x * n + y] = v;
            }
        }
        let cells = (1..n.saturating_sub(1))
            .flat_map(|a| (a..n - 1).map(move |b| (a, b)))
            .filter(|&(a, b)| table[a * n + b].is_none())
            .collect();
        SumSearch {
            n,
            perp,
            cells,
            table,
        }
    }

    fn options(&self, a: ElemId, b: ElemId) -> Vec<Option<ElemId>> {
        let mut out = vec![None];
        out.extend((1..self.n - 1).filter(|&c| c != a && c != b).map(Some));
        out
    }

    fn set(&mut self, a: ElemId, b: ElemId, v: Option<Option<ElemId>>) {
        let n = self.n;
        self.table[a * n + b] = v;
        self.table[b * n + a] = v;
    }

    /// Cancellation within rows and associativity instances that are fully known.
    fn consistent(&self) -> bool {
        let n = self.n;
        let at = |x: ElemId, y: ElemId| self.table[x * n + y];
        for a in 0..n {
            let mut seen = vec![false; n];
            for b in 0..n {
                if let Some(Some(c)) = at(a, b) {
                    if seen[c] {
                        return false;
                    }
                    seen[c] = true;
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let Some(Some(xy)) = at(x, y) else { continue };
                for z in 0..n {
                    let Some(xy_z) = at(xy, z) else { continue };
                    let Some(xy_z) = xy_z else { continue };
                    match at(y, z) {
                        None => continue,
                        Some(None) => return false,
                        Some(Some(yz)) => match at(x, yz) {
                            None => continue,
                            Some(v) => {
                                if v != Some(xy_z) {
                                    return false;
                                }
                            }
                        },
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, depth: usize, out: &mut Vec<FinEffectAlgebra>) {
        if depth == self.cells.len() {
            let sum = self.table.iter().map(|v| v.expect("filled")).collect();
            let ea = FinEffectAlgebra::new(
                (0..self.n).map(|i| i.to_string()).collect(),
                0,
                self.n - 1,
                sum,
                self.perp.clone(),
            )
            .expect("well-formed tables");
            if check_effect_algebra(&ea).passed() {
                out.push(ea);
            }
            return;
        }
        let (a, b) = self.cells[depth];
        for v in self.options(a, b) {
            self.set(a, b, Some(v));
            if self.consistent() {
                self.run(depth + 1, out);
            }
        }
        self.set(a, b, None);
    }
}

/// Effect algebras of exactly `n` elements, canonical and sorted by code.
fn effect_algebras_of_size(n: usize) -> Vec<FinEffectAlgebra> {
    let mut raw: Vec<FinEffectAlgebra> = if n == 1 {
        vec![FinEffectAlgebra::new(vec!["0".into()], 0, 0, vec![Some(0)], vec![0]).expect("point")]
    } else {
        perp_shapes(n)
            .into_par_iter()
            .flat_map_iter(|perp| {
                let mut search = SumSearch::new(perp);
                let mut out = Vec::new();
                search.run(0, &mut out);
                out
            })
            .collect()
    };
    let canon: BTreeMap<Vec<u8>, FinEffectAlgebra> = raw
        .par_drain(..)
        .map(|ea| {
            let (order, code) = ea.canonical_order();
            let c = ea
                .relabeled(&order)
                .with_labels(crate::poset::bounded_labels(n));
            (code, c)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    canon.into_values().collect()
}

/// All effect algebras with at most `max_size` elements, one per
/// isomorphism class, sorted by (size, canonical code).
pub fn enumerate_effect_algebras(max_size: usize, budget: &Budget) -> Result<Vec<FinEffectAlgebra>> {
    algebra_limit(max_size, budget, "effect algebra enumeration")?;
    Ok((1..=max_size).flat_map(effect_algebras_of_size).collect())
}

/// All effect monoids with at most `max_size` elements, one per
/// isomorphism class, sorted by (size, canonical code).
pub fn enumerate_effect_monoids(max_size: usize, budget: &Budget) -> Result<Vec<FinEffectMonoid>> {
    algebra_limit(max_size, budget, "effect monoid enumeration")?;
    let mut out = Vec::new();
    for n in 1..=max_size {
        let eas = effect_algebras_of_size(n);
        let canon: BTreeMap<Vec<u8>, FinEffectMonoid> = eas
            .par_iter()
            .flat_map_iter(multiplications)
            .map(|m| {
                let (order, code) = m.canonical_order();
                let c = m
                    .relabeled(&order)
                    .with_labels(crate::poset::bounded_labels(n));
                (code, c)
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        out.extend(canon.into_values());
    }
    Ok(out)
}

/// All orthomodular posets with at most `max_size` elements, one per
/// isomorphism class, sorted by (size, canonical code).
pub fn enumerate_orthomodular_posets(max_size: usize, budget: &Budget) -> Result<Vec<OrthoPoset>> {
    let posets = enumerate_bounded_posets(max_size, budget)?;
    let found: Vec<(usize, Vec<u8>, OrthoPoset)> = posets
        .par_iter()
        .flat_map_iter(orthocomplements)
        .map(|o| {
            let (order, code) = omp_canonical_order(&o);
            let p = o.poset().relabeled(&order);
            let mut inv = vec![0; order.len()];
            for (new, &old) in order.iter().enumerate() {
                inv[old] = new;
            }
            let perp = order.iter().map(|&x| inv[o.perp(x)]).collect();
            let c = OrthoPoset::new(std::sync::Arc::new(p), perp).expect("relabeled");
            (o.size(), code, c)
        })
        .collect();
    let canon: BTreeMap<(usize, Vec<u8>), OrthoPoset> =
        found.into_iter().map(|(n, code, o)| ((n, code), o)).collect();
    Ok(canon.into_values().collect())
}

fn omp_canonical_order(o: &OrthoPoset) -> (Vec<ElemId>, Vec<u8>) {
    let p = o.poset();
    let keys: Vec<_> = p
        .elements()
        .map(|x| (p.down_count(x), p.up_count(x), o.perp(x) == x))
        .collect();
    let blocks = invariant_blocks(&keys, Some(p.bottom()), Some(p.top()));
    least_encoding(&blocks, |order, inverse| {
        let n = order.len();
        let mut code: Vec<u8> = order.iter().map(|&x| inverse[o.perp(x)] as u8).collect();
        code.extend((0..n * n).map(|i| p.leq(order[i / n], order[i % n]) as u8));
        code
    })
}

/// Every orthocomplement on `p` satisfying the orthomodular laws.
fn orthocomplements(p: &FinBoundedPoset) -> Vec<OrthoPoset> {
    let n = p.size();
    let arc = std::sync::Arc::new(p.clone());
    let mut perp: Vec<Option<ElemId>> = vec![None; n];
    perp[p.bottom()] = Some(p.top());
    perp[p.top()] = Some(p.bottom());
    let mut out = Vec::new();
    involutions(p, &mut perp, &mut |perp| {
        let o = OrthoPoset::new(arc.clone(), perp.to_vec()).expect("total");
        if check_omp(&o).passed() {
            out.push(o);
        }
    });
    out
}

fn involutions(p: &FinBoundedPoset, perp: &mut Vec<Option<ElemId>>, visit: &mut impl FnMut(&[ElemId])) {
    let Some(x) = perp.iter().position(Option::is_none) else {
        let total: Vec<ElemId> = perp.iter().map(|v| v.expect("set")).collect();
        visit(&total);
        return;
    };
    for y in x..perp.len() {
        if perp[y].is_some() || (p.down_count(x) != p.up_count(y)) {
            continue;
        }
        perp[x] = Some(y);
        perp[y] = Some(x);
        involutions(p, perp, visit);
        perp[x] = None;
        perp[y] = None;
    }
}

/// Counts at one exact size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeCount {
    pub size: usize,
    pub effect_algebras: usize,
    pub effect_monoids: usize,
    pub irreducible_monoids: usize,
}

/// How many monoids fell into one classification outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCount {
    pub class: String,
    pub count: usize,
}

/// The result of classifying every effect monoid up to a size bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub max_size: usize,
    pub counts: Vec<SizeCount>,
    pub classes: Vec<ClassCount>,
    pub all_commutative: bool,
    /// Largest irreducible monoid found (0 if none).
    pub largest_irreducible: usize,
    /// The first monoid that broke the classification, if any.
    pub counterexample: Option<ClassificationFailure>,
    /// Wall-clock time; not part of the reproducible output.
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    /// Canonical line-oriented rendering, identical across runs.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "census max-size {}", self.max_size);
        for c in &self.counts {
            let _ = writeln!(
                s,
                "size {} effect-algebras {} effect-monoids {} irreducible {}",
                c.size, c.effect_algebras, c.effect_monoids, c.irreducible_monoids
            );
        }
        for c in &self.classes {
            let _ = writeln!(s, "class {} {}", c.class, c.count);
        }
        let _ = writeln!(s, "commutative {}", self.all_commutative);
        let _ = writeln!(s, "largest-irreducible {}", self.largest_irreducible);
        match &self.counterexample {
            None => {
                let _ = writeln!(s, "counterexample none");
            }
            Some(f) => {
                let _ = writeln!(s, "counterexample {}", f.reason.replace('\n', " "));
                s.push_str(&f.document);
            }
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

/// Enumerates, classifies and checks commutativity of every effect monoid
/// with at most `max_size` elements.
pub fn census(max_size: usize, budget: &Budget) -> Result<CensusReport> {
    let start = std::time::Instant::now();
    let eas = enumerate_effect_algebras(max_size, budget)?;
    let ems = enumerate_effect_monoids(max_size, budget)?;
    let outcomes: Vec<_> = ems
        .par_iter()
        .map(|m| (classify_finite_em(m), m.is_commutative(), is_irreducible(m)))
        .collect();
    let mut counts: Vec<SizeCount> = (1..=max_size)
        .map(|size| SizeCount {
            size,
            effect_algebras: eas.iter().filter(|e| e.size() == size).count(),
            effect_monoids: 0,
            irreducible_monoids: 0,
        })
        .collect();
    let mut classes: BTreeMap<(usize, String), usize> = BTreeMap::new();
    let mut counterexample = None;
    let mut all_commutative = true;
    let mut largest_irreducible = 0;
    for (m, (class, commutative, irreducible)) in ems.iter().zip(outcomes) {
        let c = &mut counts[m.size() - 1];
        c.effect_monoids += 1;
        if irreducible {
            c.irreducible_monoids += 1;
            largest_irreducible = largest_irreducible.max(m.size());
        }
        match class {
            Ok(cl) => {
                let rank = match cl.class {
                    EmClass::OnePoint => 0,
                    EmClass::BooleanPower(k) => k as usize + 1,
                };
                *classes.entry((rank, cl.class.to_string())).or_default() += 1;
            }
            Err(f) => {
                counterexample.get_or_insert(f);
            }
        }
        if !commutative {
            all_commutative = false;
            counterexample.get_or_insert_with(|| ClassificationFailure {
                reason: "multiplication is not commutative".into(),
                document: crate::io::serialize(&crate::io::Document::EffectMonoid {
                    name: "counterexample".into(),
                    monoid: m.clone(),
                }),
            });
        }
    }
    Ok(CensusReport {
        max_size,
        counts,
        classes: classes
            .into_iter()
            .map(|((_, class), count)| ClassCount { class, count })
            .collect(),
        all_commutative,
        largest_irreducible,
        counterexample,
        elapsed: Some(start.elapsed()),
    })
}
