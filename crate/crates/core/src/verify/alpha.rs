//! `K_ℓ`-independence number by branch and bound.
//!
//! Candidates are greedily split into cliques; a clique `Q` can contribute
//! at most `min(|Q|, ℓ-1)` vertices to a `K_ℓ`-free set, which gives the
//! bound. For `ℓ = 2` this is the classic coloring bound for maximum
//! clique in the complement.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph_core::cliques::has_clique_within;
use crate::graph_core::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaOptions {
    pub cap: usize,
    pub force: bool,
}

impl Default for AlphaOptions {
    fn default() -> Self {
        AlphaOptions { cap: 60, force: false }
    }
}

struct Search<'a> {
    g: &'a Graph,
    ell: usize,
    cur: Vec<usize>,
    cur_set: FixedBitSet,
    best: Vec<usize>,
}

impl Search<'_> {
    /// Can `u` join `cur` (which already holds `v`) without closing a `K_ℓ`?
    fn compatible(&self, u: usize, v: usize) -> bool {
        if !self.g.has_edge(u, v) {
            return true;
        }
        let mut common = self.g.neighbors(u).clone();
        common.intersect_with(self.g.neighbors(v));
        common.intersect_with(&self.cur_set);
        !has_clique_within(self.g, &common, self.ell - 2)
    }

    fn expand(&mut self, cand: Vec<usize>) {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in &cand {
            match classes.iter_mut().find(|q| q.iter().all(|&w| self.g.has_edge(v, w))) {
                Some(q) => q.push(v),
                None => classes.push(vec![v]),
            }
        }
        let cap = self.ell - 1;
        let mut order = Vec::with_capacity(cand.len());
        let mut bound = Vec::with_capacity(cand.len());
        let mut acc = 0;
        for q in &classes {
            for (i, &v) in q.iter().enumerate() {
                if i < cap {
                    acc += 1;
                }
                order.push(v);
                bound.push(acc);
            }
        }
        for idx in (0..order.len()).rev() {
            if self.cur.len() + bound[idx] <= self.best.len() {
                return;
            }
            let v = order[idx];
            self.cur.push(v);
            self.cur_set.insert(v);
            let next: Vec<usize> = order[..idx].iter().copied().filter(|&u| self.compatible(u, v)).collect();
            if next.is_empty() {
                if self.cur.len() > self.best.len() {
                    self.best = self.cur.clone();
                }
            } else {
                self.expand(next);
            }
            self.cur_set.set(v, false);
            self.cur.pop();
        }
    }
}

/// `α_ℓ(G)` together with a maximum `K_ℓ`-free witness (sorted).
pub fn alpha_ell(g: &Graph, ell: usize, opts: &AlphaOptions) -> Result<(usize, Vec<usize>)> {
    if ell < 2 {
        return Err(Error::Precondition(format!("clique order must be at least 2, got {ell}")));
    }
    if g.n() > opts.cap && !opts.force {
        return Err(Error::InstanceTooLarge { n: g.n(), cap: opts.cap });
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    // low-degree vertices last, so they are branched on first
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut s = Search { g, ell, cur: Vec::new(), cur_set: g.empty_set(), best: Vec::new() };
    if !order.is_empty() {
        s.expand(order);
    }
    let mut best = s.best;
    best.sort_unstable();
    Ok((best.len(), best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::cliques::{clique_number, enumerate_cliques};
    use crate::graph_core::fixtures::{cycle, petersen, random_graph};
    use proptest::prelude::*;

    fn alpha(g: &Graph, ell: usize) -> usize {
        alpha_ell(g, ell, &AlphaOptions::default()).unwrap().0
    }

    /// Oracle: largest subset (by bitmask) with no `K_ℓ`.
    fn naive_alpha(g: &Graph, ell: usize) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|m| {
                let vs: Vec<usize> = (0..n).filter(|i| m >> i & 1 == 1).collect();
                enumerate_cliques(&g.induced(&vs), ell, Some(1)).is_empty()
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn examples() {
        assert_eq!(alpha(&cycle(5), 2), 2);
        assert_eq!(alpha(&Graph::complete(4), 3), 2);
        assert_eq!(alpha(&petersen(), 2), 4);
        assert_eq!(naive_alpha(&petersen(), 2), 4);
        assert_eq!(alpha(&Graph::new(0), 2), 0);
        assert_eq!(alpha(&Graph::new(5), 3), 5);
    }

    #[test]
    fn guard() {
        let g = Graph::new(61);
        assert!(matches!(alpha_ell(&g, 2, &AlphaOptions::default()), Err(Error::InstanceTooLarge { n: 61, cap: 60 })));
        let forced = AlphaOptions { cap: 60, force: true };
        assert_eq!(alpha_ell(&g, 2, &forced).unwrap().0, 61);
        assert!(alpha_ell(&g, 1, &forced).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn matches_naive(n in 1usize..=10, seed in any::<u64>(), ell in 2usize..=4) {
            let g = random_graph(n, 0.55, seed);
            let (a, w) = alpha_ell(&g, ell, &AlphaOptions::default()).unwrap();
            prop_assert_eq!(a, naive_alpha(&g, ell));
            prop_assert_eq!(w.len(), a);
            prop_assert!(enumerate_cliques(&g.induced(&w), ell, Some(1)).is_empty());
        }

        #[test]
        fn alpha2_is_complement_clique_number(n in 1usize..=20, seed in any::<u64>()) {
            let g = random_graph(n, 0.5, seed);
            prop_assert_eq!(alpha(&g, 2), clique_number(&g.complement()));
        }
    }
}
