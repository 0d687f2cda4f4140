//! Fixed-order clique enumeration over bitset adjacency.
//!
//! Cliques are produced as sorted vertex lists in lexicographic order, so a
//! `limit` always returns a prefix of the exhaustive list.

use fixedbitset::FixedBitSet;

use super::graph::Graph;

/// All `r`-cliques of `g` in lexicographic order, at most `limit` of them.
pub fn enumerate_cliques(g: &Graph, r: usize, limit: Option<usize>) -> Vec<Vec<usize>> {
    cliques_within(g, &g.full_set(), r, limit)
}

/// `r`-cliques of `g` whose vertices all lie in `allowed`, lexicographic.
pub fn cliques_within(g: &Graph, allowed: &FixedBitSet, r: usize, limit: Option<usize>) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r == 0 || limit == Some(0) {
        return out;
    }
    let mut stack = Vec::with_capacity(r);
    extend(g, allowed.clone(), r, limit.unwrap_or(usize::MAX), &mut stack, &mut |c| {
        out.push(c.to_vec());
    });
    out
}

/// Calls `visit` on every `r`-clique inside `allowed`, stopping after `limit` cliques.
pub fn for_each_clique_within(
    g: &Graph,
    allowed: &FixedBitSet,
    r: usize,
    limit: usize,
    mut visit: impl FnMut(&[usize]),
) -> usize {
    if r == 0 || limit == 0 {
        return 0;
    }
    let mut stack = Vec::with_capacity(r);
    extend(g, allowed.clone(), r, limit, &mut stack, &mut visit)
}

fn extend(
    g: &Graph,
    cand: FixedBitSet,
    r: usize,
    limit: usize,
    stack: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) -> usize {
    let need = r - stack.len();
    if cand.count_ones(..) < need {
        return 0;
    }
    let mut found = 0;
    for v in cand.ones() {
        if found >= limit {
            break;
        }
        stack.push(v);
        if need == 1 {
            visit(stack);
            found += 1;
        } else {
            let mut next = cand.clone();
            next.intersect_with(g.neighbors(v));
            // keep only vertices after v for lexicographic, duplicate-free output
            next.remove_range(..v + 1);
            found += extend(g, next, r, limit - found, stack, visit);
        }
        stack.pop();
    }
    found
}

/// First `r`-clique (lexicographic) inside `allowed`, if any.
pub fn find_clique_within(g: &Graph, allowed: &FixedBitSet, r: usize) -> Option<Vec<usize>> {
    if r == 0 {
        return Some(Vec::new());
    }
    cliques_within(g, allowed, r, Some(1)).pop()
}

/// First `r`-clique (lexicographic) inside `allowed` accepted by `pred`.
/// Stops after `limit` candidates have been offered.
pub fn find_clique_where(
    g: &Graph,
    allowed: &FixedBitSet,
    r: usize,
    limit: usize,
    mut pred: impl FnMut(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    if r == 0 {
        return pred(&[]).then(Vec::new);
    }
    let mut stack = Vec::with_capacity(r);
    let mut offered = 0;
    search_where(g, allowed.clone(), r, limit, &mut offered, &mut stack, &mut pred).then_some(stack)
}

fn search_where(
    g: &Graph,
    cand: FixedBitSet,
    r: usize,
    limit: usize,
    offered: &mut usize,
    stack: &mut Vec<usize>,
    pred: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let need = r - stack.len();
    if cand.count_ones(..) < need {
        return false;
    }
    for v in cand.ones() {
        if *offered >= limit {
            return false;
        }
        stack.push(v);
        if need == 1 {
            *offered += 1;
            if pred(stack) {
                return true;
            }
        } else {
            let mut next = cand.clone();
            next.intersect_with(g.neighbors(v));
            next.remove_range(..v + 1);
            if search_where(g, next, r, limit, offered, stack, pred) {
                return true;
            }
        }
        stack.pop();
    }
    false
}

pub fn has_clique_within(g: &Graph, allowed: &FixedBitSet, r: usize) -> bool {
    find_clique_within(g, allowed, r).is_some()
}

/// Number of `r`-cliques inside `allowed`, stopping at `cap`.
pub fn count_cliques_within(g: &Graph, allowed: &FixedBitSet, r: usize, cap: usize) -> usize {
    if r == 0 {
        return 1;
    }
    for_each_clique_within(g, allowed, r, cap, |_| {})
}

/// `r`-cliques through `v`, lexicographic.
pub fn cliques_containing(g: &Graph, v: usize, r: usize, limit: Option<usize>) -> Vec<Vec<usize>> {
    if r == 0 {
        return Vec::new();
    }
    let mut out = cliques_within(g, g.neighbors(v), r - 1, limit);
    for c in &mut out {
        let pos = c.partition_point(|&x| x < v);
        c.insert(pos, v);
    }
    out
}

/// `⋂_{v ∈ S} N(v)` with `S` itself removed.
pub fn common_neighborhood(g: &Graph, set: &[usize]) -> Vec<usize> {
    common_neighborhood_set(g, set).ones().collect()
}

pub fn common_neighborhood_set(g: &Graph, set: &[usize]) -> FixedBitSet {
    let mut acc = g.full_set();
    for &v in set {
        acc.intersect_with(g.neighbors(v));
    }
    for &v in set {
        acc.set(v, false);
    }
    acc
}

/// Order of a maximum clique (exhaustive; desk scale).
pub fn clique_number(g: &Graph) -> usize {
    let mut best = 0;
    for r in 1..=g.n() {
        if enumerate_cliques(g, r, Some(1)).is_empty() {
            break;
        }
        best = r;
    }
    best
}
