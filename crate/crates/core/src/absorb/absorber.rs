//! `(K_r, t)`-absorbers: sets `A_S` of size `rt` such that both `G[A_S]`
//! and `G[A_S ∪ S]` have `K_r`-factors.

use std::fmt;

use fixedbitset::FixedBitSet;
use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph_core::cliques::{find_clique_where, find_clique_within};
use crate::graph_core::Graph;
use crate::verify::factor::one_indexed;
use crate::verify::has_kr_factor;

/// Clique candidates offered per search before giving up.
pub const CANDIDATE_LIMIT: usize = 50_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsorberRecord {
    pub target: Vec<usize>,
    pub body: Vec<usize>,
    pub t: usize,
}

impl AbsorberRecord {
    /// Re-checks both factor conditions from scratch.
    pub fn verify(&self, g: &Graph, r: usize) -> bool {
        is_absorber(g, &self.target, &self.body, r, self.t).unwrap_or(false)
    }
}

impl fmt::Display for AbsorberRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "absorber t={} target={} body={}", self.t, one_indexed(&self.target), one_indexed(&self.body))
    }
}

fn factors(g: &Graph, set: &[usize], r: usize) -> bool {
    set.is_empty() || has_kr_factor(&g.induced(set), r).is_factor()
}

pub fn is_absorber(g: &Graph, s: &[usize], a: &[usize], r: usize, t: usize) -> Result<bool> {
    if r == 0 || t == 0 {
        return Err(Error::Precondition("absorbers need r >= 1 and t >= 1".into()));
    }
    if s.len() != r || s.iter().unique().count() != r {
        return Err(Error::Precondition(format!("target must be {r} distinct vertices")));
    }
    if a.len() != r * t || a.iter().unique().count() != r * t {
        return Err(Error::Precondition(format!("body must be {} distinct vertices", r * t)));
    }
    if let Some(&v) = s.iter().chain(a).find(|&&v| v >= g.n()) {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    if a.iter().any(|v| s.contains(v)) {
        return Err(Error::Precondition("body meets target".into()));
    }
    let mut both: Vec<usize> = a.iter().chain(s).copied().collect();
    both.sort_unstable();
    Ok(factors(g, a, r) && factors(g, &both, r))
}

/// Greedy family of vertex-disjoint absorbers for `s`.
pub fn find_disjoint_absorbers(g: &Graph, s: &[usize], r: usize, t: usize, want: usize) -> Vec<AbsorberRecord> {
    find_disjoint_absorbers_avoiding(g, s, r, t, want, &g.empty_set())
}

/// As [`find_disjoint_absorbers`], with bodies kept out of `forbidden`.
pub fn find_disjoint_absorbers_avoiding(
    g: &Graph,
    s: &[usize],
    r: usize,
    t: usize,
    want: usize,
    forbidden: &FixedBitSet,
) -> Vec<AbsorberRecord> {
    let mut out = Vec::new();
    if r == 0 || t == 0 || s.len() != r || s.iter().any(|&v| v >= g.n()) {
        return out;
    }
    let mut allowed = g.full_set();
    allowed.difference_with(forbidden);
    for &v in s {
        allowed.set(v, false);
    }
    let mut target = s.to_vec();
    target.sort_unstable();
    while out.len() < want {
        let Some(body) = next_body(g, &target, r, t, &allowed) else { break };
        for &v in &body {
            allowed.set(v, false);
        }
        let rec = AbsorberRecord { target: target.clone(), body, t };
        debug_assert!(rec.verify(g, r));
        out.push(rec);
    }
    out
}

fn next_body(g: &Graph, s: &[usize], r: usize, t: usize, allowed: &FixedBitSet) -> Option<Vec<usize>> {
    direct_body(g, s, r, t, allowed).or_else(|| if t >= r { composed_body(g, s, r, t, allowed) } else { None })
}

/// An `r`-clique `C` with `G[C ∪ S]` factorable, padded by `t - 1` further cliques.
fn direct_body(g: &Graph, s: &[usize], r: usize, t: usize, allowed: &FixedBitSet) -> Option<Vec<usize>> {
    let core = find_clique_where(g, allowed, r, CANDIDATE_LIMIT, |c| {
        let mut both: Vec<usize> = c.iter().chain(s).copied().collect();
        both.sort_unstable();
        factors(g, &both, r)
    })?;
    pad(g, core, r, t, allowed)
}

/// An `r`-clique `T = {w_1..w_r}` plus a `K_{r-1}` connector between each
/// `s_i` and `w_i`: `T` with the connectors factors `A`, and the connectors
/// with `S` factor `A ∪ S` once `T` is taken whole.
fn composed_body(g: &Graph, s: &[usize], r: usize, t: usize, allowed: &FixedBitSet) -> Option<Vec<usize>> {
    let mut found = None;
    find_clique_where(g, allowed, r, CANDIDATE_LIMIT, |tt| {
        for perm in tt.iter().copied().permutations(r) {
            let mut free = allowed.clone();
            tt.iter().for_each(|&w| free.set(w, false));
            let mut body = tt.to_vec();
            let ok = s.iter().zip(&perm).all(|(&si, &wi)| {
                let mut cand = free.clone();
                cand.intersect_with(g.neighbors(si));
                cand.intersect_with(g.neighbors(wi));
                match find_clique_within(g, &cand, r - 1) {
                    Some(c) => {
                        c.iter().for_each(|&x| free.set(x, false));
                        body.extend(c);
                        true
                    }
                    None => false,
                }
            });
            if ok {
                found = Some(body);
                return true;
            }
        }
        false
    });
    pad(g, found?, r, t, allowed)
}

/// Extends `core` by disjoint `r`-cliques until it has `r * t` vertices.
fn pad(g: &Graph, mut core: Vec<usize>, r: usize, t: usize, allowed: &FixedBitSet) -> Option<Vec<usize>> {
    let mut free = allowed.clone();
    core.iter().for_each(|&v| free.set(v, false));
    while core.len() < r * t {
        let c = find_clique_within(g, &free, r)?;
        c.iter().for_each(|&v| free.set(v, false));
        core.extend(c);
    }
    core.sort_unstable();
    Some(core)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::gen_two_cliques;

    #[test]
    fn clique_host_absorbs_anything() {
        let g = Graph::complete(12);
        assert!(is_absorber(&g, &[0, 1, 2, 3], &[4, 5, 6, 7], 4, 1).unwrap());
        assert!(is_absorber(&g, &[0, 1, 2, 3], &[4, 5, 6, 7, 8, 9, 10, 11], 4, 2).unwrap());
    }

    #[test]
    fn isolated_body_vertex_fails() {
        let mut g = Graph::complete(12);
        for u in 0..11 {
            g.remove_edge(u, 11);
        }
        assert!(!is_absorber(&g, &[0, 1, 2, 3], &[4, 5, 6, 11], 4, 1).unwrap());
    }

    #[test]
    fn size_violations_error() {
        let g = Graph::complete(12);
        assert!(is_absorber(&g, &[0, 1, 2], &[4, 5, 6, 7], 4, 1).is_err());
        assert!(is_absorber(&g, &[0, 1, 2, 3], &[3, 5, 6, 7], 4, 1).is_err());
        assert!(is_absorber(&g, &[0, 1, 2, 3], &[4, 5, 6], 4, 1).is_err());
    }

    #[test]
    fn target_across_cliques_is_never_absorbed() {
        let c = gen_two_cliques(12, 4).unwrap();
        let s = [0, 1, 6, 7];
        for a in (0..12).filter(|v| !s.contains(v)).combinations(4) {
            assert!(!is_absorber(&c.graph, &s, &a, 4, 1).unwrap());
        }
        assert!(find_disjoint_absorbers(&c.graph, &s, 4, 1, 3).is_empty());
    }

    #[test]
    fn four_absorbers_in_k20() {
        let g = Graph::complete(20);
        let found = find_disjoint_absorbers(&g, &[0, 1, 2, 3], 4, 1, 4);
        assert_eq!(found.len(), 4);
        assert!(found.iter().all(|a| a.verify(&g, 4)));
        let mut seen: Vec<usize> = found.iter().flat_map(|a| a.body.clone()).collect();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn independent_target_in_sparse_host() {
        let g = crate::graph_core::fixtures::cycle(16);
        assert!(find_disjoint_absorbers(&g, &[0, 4, 8, 12], 4, 1, 2).is_empty());
    }

    #[test]
    fn larger_t_pads_and_verifies() {
        let g = Graph::complete(20);
        let found = find_disjoint_absorbers(&g, &[0, 1, 2, 3], 4, 3, 2);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].body.len(), 12);
        assert!(found[0].verify(&g, 4));
    }

    #[test]
    fn composition_handles_non_clique_targets() {
        // s_i reaches w_i only through the private vertex c_i
        let mut g = Graph::new(9);
        for (a, b) in [(3, 4), (3, 5), (4, 5)] {
            g.add_edge(a, b).unwrap();
        }
        for (s, w, c) in [(0, 3, 6), (1, 4, 7), (2, 5, 8)] {
            for (a, b) in [(s, c), (w, c)] {
                g.add_edge(a, b).unwrap();
            }
        }
        // r = 2: K_1 connectors; bodies of size 2t with t >= 2
        let s = [0, 1];
        assert!(find_disjoint_absorbers(&g, &s, 2, 1, 1).is_empty());
        let found = find_disjoint_absorbers(&g, &s, 2, 2, 1);
        assert_eq!(found.len(), 1);
        assert!(found[0].verify(&g, 2));
    }
}
