//! Canonical labelings and isomorphism search for small finite structures.
//!
//! Both routines work on dense ids `0..n` and are driven by an
//! isomorphism-invariant key per element (up/down-set cardinalities and the
//! like). Elements are only ever permuted within a block of equal keys.

use std::collections::BTreeMap;

use crate::ElemId;

/// Partition of `0..n` into ordered blocks of equal invariant key, with the
/// given `fixed` elements pinned to the front and back.
pub(crate) fn invariant_blocks<K: Ord + Clone>(
    keys: &[K],
    first: Option<ElemId>,
    last: Option<ElemId>,
) -> Vec<Vec<ElemId>> {
    let mut grouped: BTreeMap<K, Vec<ElemId>> = BTreeMap::new();
    for (x, k) in keys.iter().enumerate() {
        if Some(x) == first || Some(x) == last {
            continue;
        }
        grouped.entry(k.clone()).or_default().push(x);
    }
    let mut blocks = Vec::with_capacity(grouped.len() + 2);
    if let Some(f) = first {
        blocks.push(vec![f]);
    }
    blocks.extend(grouped.into_values());
    if let Some(l) = last {
        if Some(l) != first {
            blocks.push(vec![l]);
        }
    }
    blocks
}

/// Calls `visit(order)` for every ordering obtained by permuting each block
/// independently; `order[new_position] = old_id`.
pub(crate) fn for_each_arrangement(blocks: &[Vec<ElemId>], visit: &mut impl FnMut(&[ElemId])) {
    let mut order: Vec<ElemId> = blocks.iter().flatten().copied().collect();
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut at = 0;
    for b in blocks {
        offsets.push((at, b.len()));
        at += b.len();
    }
    arrange(&offsets, 0, &mut order, visit);
}

fn arrange(
    offsets: &[(usize, usize)],
    block: usize,
    order: &mut Vec<ElemId>,
    visit: &mut impl FnMut(&[ElemId]),
) {
    if block == offsets.len() {
        visit(order);
        return;
    }
    let (start, len) = offsets[block];
    permute(offsets, block, start, start + len, order, visit);
}

fn permute(
    offsets: &[(usize, usize)],
    block: usize,
    k: usize,
    end: usize,
    order: &mut Vec<ElemId>,
    visit: &mut impl FnMut(&[ElemId]),
) {
    if k + 1 >= end {
        arrange(offsets, block + 1, order, visit);
        return;
    }
    for i in k..end {
        order.swap(k, i);
        permute(offsets, block, k + 1, end, order, visit);
        order.swap(k, i);
    }
}

/// Lexicographically least encoding over all block arrangements.
///
/// Returns `(order, code)` where `order[new] = old`.
pub(crate) fn least_encoding<C: Ord>(
    blocks: &[Vec<ElemId>],
    encode: impl Fn(&[ElemId], &[ElemId]) -> C,
) -> (Vec<ElemId>, C) {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut inverse = vec![0; n];
    let mut best: Option<(Vec<ElemId>, C)> = None;
    for_each_arrangement(blocks, &mut |order| {
        for (new, &old) in order.iter().enumerate() {
            inverse[old] = new;
        }
        let code = encode(order, &inverse);
        let better = match &best {
            None => true,
            Some((_, b)) => code < *b,
        };
        if better {
            best = Some((order.to_vec(), code));
        }
    });
    best.expect("at least one arrangement")
}

/// Backtracking search for a bijection `a → b` respecting invariant keys.
///
/// `compatible(assigned, x, y)` must decide whether mapping `x ↦ y` agrees
/// with every pair already in `assigned` (a list of `(source, target)`).
/// The search visits source elements in `visit_order`.
pub(crate) fn find_bijection<K: PartialEq>(
    keys_a: &[K],
    keys_b: &[K],
    visit_order: &[ElemId],
    compatible: impl Fn(&[(ElemId, ElemId)], ElemId, ElemId) -> bool,
) -> Option<Vec<ElemId>> {
    let n = keys_a.len();
    if n != keys_b.len() || visit_order.len() != n {
        return None;
    }
    let mut used = vec![false; n];
    let mut assigned: Vec<(ElemId, ElemId)> = Vec::with_capacity(n);
    if extend(keys_a, keys_b, visit_order, &compatible, &mut used, &mut assigned) {
        let mut map = vec![0; n];
        for (x, y) in assigned {
            map[x] = y;
        }
        Some(map)
    } else {
        None
    }
}

fn extend<K: PartialEq>(
    keys_a: &[K],
    keys_b: &[K],
    visit_order: &[ElemId],
    compatible: &impl Fn(&[(ElemId, ElemId)], ElemId, ElemId) -> bool,
    used: &mut [bool],
    assigned: &mut Vec<(ElemId, ElemId)>,
) -> bool {
    let depth = assigned.len();
    if depth == visit_order.len() {
        return true;
    }
    let x = visit_order[depth];
    for y in 0..keys_b.len() {
        if used[y] || keys_a[x] != keys_b[y] || !compatible(assigned, x, y) {
            continue;
        }
        used[y] = true;
        assigned.push((x, y));
        if extend(keys_a, keys_b, visit_order, compatible, used, assigned) {
            return true;
        }
        assigned.pop();
        used[y] = false;
    }
    false
}
