//! Brute-force oracles written without the library's generators or
//! canonical forms, compared against the pruned enumerations.

use std::collections::BTreeSet;

use effectlab::monoid::{idempotents, is_irreducible, multiplications};
use effectlab::{
    check_effect_algebra, check_effect_monoid, enumerate_bounded_posets, enumerate_effect_algebras,
    enumerate_effect_monoids, Budget, FinEffectAlgebra, FinEffectMonoid, OrthoPoset,
};
use itertools::Itertools;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    (0..n).permutations(n).collect()
}

/// Least relabeled code over every permutation of the carrier.
fn min_code(n: usize, code: impl Fn(&[usize]) -> Vec<u16>) -> Vec<u16> {
    permutations(n).iter().map(|p| code(p)).min().expect("n ≥ 1")
}

// ---- posets: every relation on n labeled points ----

fn oracle_bounded_poset_classes(n: usize) -> usize {
    let mut classes = BTreeSet::new();
    for bits in 0u32..(1 << (n * n)) {
        let r = |x: usize, y: usize| bits & (1 << (x * n + y)) != 0;
        let reflexive = (0..n).all(|x| r(x, x));
        let antisym = (0..n).all(|x| (0..n).all(|y| x == y || !(r(x, y) && r(y, x))));
        let trans = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| !(r(x, y) && r(y, z)) || r(x, z))));
        let bottom = (0..n).any(|b| (0..n).all(|x| r(b, x)));
        let top = (0..n).any(|t| (0..n).all(|x| r(x, t)));
        if reflexive && antisym && trans && bottom && top {
            // sigma maps new position to old element
            classes.insert(min_code(n, |sigma| {
                (0..n * n).map(|i| r(sigma[i / n], sigma[i % n]) as u16).collect()
            }));
        }
    }
    classes.len()
}

#[test]
fn bounded_posets_match_all_relations() {
    let found = enumerate_bounded_posets(4, &Budget::default()).unwrap();
    for n in 1..=4 {
        let ours = found.iter().filter(|p| p.size() == n).count();
        assert_eq!(ours, oracle_bounded_poset_classes(n), "size {n}");
    }
}

// ---- effect algebras: every commutative sum table on n points ----

#[derive(Clone)]
struct Tables {
    n: usize,
    sum: Vec<Option<usize>>,
    perp: Vec<usize>,
}

/// Axioms checked directly; complements read off the table.
fn oracle_ea(n: usize, sum: &[Option<usize>]) -> Option<Tables> {
    let (zero, one) = (0, n - 1);
    let s = |a: usize, b: usize| sum[a * n + b];
    for x in 0..n {
        for y in 0..n {
            if s(x, y) != s(y, x) {
                return None;
            }
            for z in 0..n {
                let left = s(x, y).and_then(|xy| s(xy, z));
                let right = s(y, z).and_then(|yz| s(x, yz));
                if left.is_some() && left != right {
                    return None;
                }
            }
        }
    }
    let mut perp = vec![0; n];
    for (x, px) in perp.iter_mut().enumerate() {
        let comps: Vec<usize> = (0..n).filter(|&y| s(x, y) == Some(one)).collect();
        if comps.len() != 1 {
            return None;
        }
        *px = comps[0];
        if s(x, one).is_some() && x != zero {
            return None;
        }
    }
    if perp[zero] != one || (0..n).any(|x| s(zero, x) != Some(x)) {
        return None;
    }
    Some(Tables {
        n,
        sum: sum.to_vec(),
        perp,
    })
}

fn ea_code(t: &Tables, sigma: &[usize], inv: &[usize]) -> Vec<u16> {
    let n = t.n;
    let mut code = Vec::with_capacity(n * n);
    for i in 0..n * n {
        let v = t.sum[sigma[i / n] * n + sigma[i % n]];
        code.push(v.map_or(u16::MAX, |v| inv[v] as u16));
    }
    code
}

fn inverse(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s] = i;
    }
    inv
}

/// Every sum table with `0` as the zero (the zero row is forced by the
/// axioms) and `n−1` as the unit; other cells range over all values.
fn oracle_effect_algebras(n: usize) -> Vec<Tables> {
    if n == 1 {
        return vec![Tables {
            n,
            sum: vec![Some(0)],
            perp: vec![0],
        }];
    }
    let free: Vec<(usize, usize)> = (1..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    let choices = n + 1; // undefined or any element
    let total = choices.pow(free.len() as u32);
    for mut code in 0..total {
        let mut sum = vec![None; n * n];
        for x in 0..n {
            sum[x] = Some(x);
            sum[x * n] = Some(x);
        }
        for &(a, b) in &free {
            let c = code % choices;
            code /= choices;
            let v = (c > 0).then(|| c - 1);
            sum[a * n + b] = v;
            sum[b * n + a] = v;
        }
        if let Some(t) = oracle_ea(n, &sum) {
            out.push(t);
        }
    }
    out
}

fn to_library(t: &Tables) -> FinEffectAlgebra {
    FinEffectAlgebra::new(
        (0..t.n).map(|i| format!("x{i}")).collect(),
        0,
        t.n - 1,
        t.sum.clone(),
        t.perp.clone(),
    )
    .unwrap()
}

/// Isomorphism classes, keeping one representative each. Relabelings fix 0 and 1.
fn classes<T: Clone>(items: &[T], n: usize, code: impl Fn(&T, &[usize], &[usize]) -> Vec<u16>) -> Vec<T> {
    let perms: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .filter(|p| p[0] == 0 && p[n - 1] == n - 1)
        .collect();
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for t in items {
        let c = perms
            .iter()
            .map(|p| code(t, p, &inverse(p)))
            .min()
            .expect("identity");
        if seen.insert(c) {
            reps.push(t.clone());
        }
    }
    reps
}

#[test]
fn effect_algebras_match_all_tables() {
    let ours = enumerate_effect_algebras(4, &Budget::default()).unwrap();
    for n in 1..=4 {
        let all = oracle_effect_algebras(n);
        let reps = classes(&all, n, ea_code);
        let mine: Vec<&FinEffectAlgebra> = ours.iter().filter(|e| e.size() == n).collect();
        assert_eq!(mine.len(), reps.len(), "size {n}");
        for r in &reps {
            let e = to_library(r);
            assert!(check_effect_algebra(&e).passed(), "oracle table rejected at size {n}");
            assert_eq!(mine.iter().filter(|m| m.is_isomorphic(&e)).count(), 1);
        }
    }
}

// ---- effect monoids: every multiplication table on each oracle algebra ----

fn oracle_em(t: &Tables, mul: &[usize]) -> bool {
    let n = t.n;
    let one = n - 1;
    let m = |a: usize, b: usize| mul[a * n + b];
    let s = |a: usize, b: usize| t.sum[a * n + b];
    for a in 0..n {
        if m(a, one) != a || m(one, a) != a {
            return false;
        }
        for b in 0..n {
            for c in 0..n {
                if m(m(a, b), c) != m(a, m(b, c)) {
                    return false;
                }
                if let Some(bc) = s(b, c) {
                    if s(m(a, b), m(a, c)) != Some(m(a, bc)) || s(m(b, a), m(c, a)) != Some(m(bc, a)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// All products of middle elements; products with 0 and 1 follow from the axioms.
fn oracle_multiplications(t: &Tables) -> Vec<Vec<usize>> {
    let n = t.n;
    if n == 1 {
        return vec![vec![0]];
    }
    let middle: Vec<usize> = (1..n - 1).collect();
    let cells: Vec<(usize, usize)> = middle.iter().flat_map(|&a| middle.iter().map(move |&b| (a, b))).collect();
    let mut out = Vec::new();
    for code in 0..n.pow(cells.len() as u32) {
        let mut mul = vec![0; n * n];
        for x in 0..n {
            mul[(n - 1) * n + x] = x;
            mul[x * n + n - 1] = x;
        }
        let mut c = code;
        for &(a, b) in &cells {
            mul[a * n + b] = c % n;
            c /= n;
        }
        if oracle_em(t, &mul) {
            out.push(mul);
        }
    }
    out
}

/// Tables where each product of middle elements is a common lower bound.
fn oracle_bounded_multiplications(t: &Tables) -> Vec<Vec<usize>> {
    let n = t.n;
    if n == 1 {
        return vec![vec![0]];
    }
    let leq = |a: usize, b: usize| (0..n).any(|c| t.sum[a * n + c] == Some(b));
    let cells: Vec<(usize, Vec<usize>)> = (1..n - 1)
        .flat_map(|a| (1..n - 1).map(move |b| (a, b)))
        .map(|(a, b)| (a * n + b, (0..n).filter(|&z| leq(z, a) && leq(z, b)).collect()))
        .collect();
    let mut base = vec![0; n * n];
    for x in 0..n {
        base[(n - 1) * n + x] = x;
        base[x * n + n - 1] = x;
    }
    let total: usize = cells.iter().map(|(_, c): &(usize, Vec<usize>)| c.len()).product();
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut mul = base.clone();
        for (cell, options) in &cells {
            mul[*cell] = options[code % options.len()];
            code /= options.len();
        }
        if oracle_em(t, &mul) {
            out.push(mul);
        }
    }
    out
}

#[test]
fn effect_monoids_match_all_tables() {
    let ours = enumerate_effect_monoids(4, &Budget::default()).unwrap();
    for n in 1..=4 {
        let reps = classes(&oracle_effect_algebras(n), n, ea_code);
        let mut monoids: Vec<(Tables, Vec<usize>)> = Vec::new();
        for t in &reps {
            monoids.extend(oracle_multiplications(t).into_iter().map(|m| (t.clone(), m)));
        }
        let em_reps = classes(&monoids, n, |(t, m), sigma, inv| {
            let mut code = ea_code(t, sigma, inv);
            code.extend((0..n * n).map(|i| inv[m[sigma[i / n] * n + sigma[i % n]]] as u16));
            code
        });
        let mine: Vec<&FinEffectMonoid> = ours.iter().filter(|m| m.size() == n).collect();
        assert_eq!(mine.len(), em_reps.len(), "size {n}");
        for (t, m) in &em_reps {
            let em = FinEffectMonoid::new(to_library(t), m.clone()).unwrap();
            assert!(check_effect_monoid(&em).passed());
            assert_eq!(mine.iter().filter(|x| x.is_isomorphic(&em)).count(), 1);
        }
    }
}

#[test]
fn multiplication_search_matches_all_tables() {
    for n in 1..=4 {
        for t in oracle_effect_algebras(n) {
            let brute = oracle_multiplications(&t).len();
            let found = multiplications(&to_library(&t)).len();
            assert_eq!(found, brute, "size {n} table {:?}", t.sum);
        }
    }
    // Six elements are too many for every table. In an effect monoid
    // a = a·b ⊕ a·b⊥ and b = a·b ⊕ a⊥·b, so a·b lies below both factors;
    // only such tables are tried.
    let mo2 = effectlab::omp_to_ea(&OrthoPoset::mo(2)).unwrap();
    let t = Tables {
        n: 6,
        sum: mo2.sum_table().to_vec(),
        perp: mo2.perp_table().to_vec(),
    };
    assert!(oracle_bounded_multiplications(&t).is_empty());
    assert!(multiplications(&mo2).is_empty());
    for e in enumerate_effect_algebras(6, &Budget::default()).unwrap() {
        let t = Tables {
            n: e.size(),
            sum: e.sum_table().to_vec(),
            perp: e.perp_table().to_vec(),
        };
        assert_eq!(multiplications(&e).len(), oracle_bounded_multiplications(&t).len());
    }
}

/// Irreducible means no split `M ≅ A × B` with both factors nontrivial;
/// found here by trying every idempotent and comparing cardinalities of
/// the two corners `{a ≤ p}` and `{a ≤ p⊥}`.
#[test]
fn irreducibility_matches_definitional_test() {
    for m in enumerate_effect_monoids(6, &Budget::default()).unwrap() {
        let e = m.ea();
        let below = |p: usize| e.elements().filter(|&a| e.leq_id(a, p)).count();
        let splits = idempotents(&m).into_iter().any(|p| {
            let (l, r) = (below(p), below(e.perp_id(p)));
            l > 1 && r > 1 && l * r == m.size()
        });
        let expected = m.size() > 1 && !splits;
        assert_eq!(is_irreducible(&m), expected, "{}", m.size());
    }
}
