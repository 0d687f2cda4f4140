//! Reachability: `u` and `v` are `(K_r, m, t)`-reachable when, for every
//! forbidden set `W` of size `m`, some connector `S` of size `rt' - 1 ≤ rt - 1`
//! avoids `W` and both `G[S ∪ {u}]` and `G[S ∪ {v}]` have `K_r`-factors.

use std::fmt;

use fixedbitset::FixedBitSet;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph_core::cliques::{common_neighborhood_set, find_clique_within};
use crate::graph_core::{Graph, Partition};
use crate::rational::{ceil_times, floor_times, Rational};
use crate::sub_seed;
use crate::verify::factor::one_indexed;
use crate::verify::has_kr_factor;

/// Forbidden-set samples per pair unless told otherwise.
pub const DEFAULT_REACH_SAMPLES: usize = 200;
/// Search nodes allowed for connectors with `t > 1`.
pub const CHAIN_NODE_BUDGET: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReachabilityParams {
    pub r: usize,
    pub m: usize,
    pub t: usize,
}

impl ReachabilityParams {
    pub fn new(r: usize, m: usize, t: usize) -> Result<Self> {
        if r < 2 || t < 1 {
            return Err(Error::Precondition(format!("reachability needs r >= 2 and t >= 1, got r={r} t={t}")));
        }
        Ok(ReachabilityParams { r, m, t })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connector {
    pub u: usize,
    pub v: usize,
    /// Sorted; `|vertices| = r * scale - 1`.
    pub vertices: Vec<usize>,
    pub scale: usize,
}

impl Connector {
    /// Re-checks both factor conditions from scratch.
    pub fn verify(&self, g: &Graph, r: usize) -> bool {
        if self.vertices.contains(&self.u) || self.vertices.contains(&self.v) || self.u == self.v {
            return false;
        }
        [self.u, self.v].iter().all(|&end| {
            let mut set = self.vertices.clone();
            set.push(end);
            has_kr_factor(&g.induced(&set), r).is_factor()
        })
    }
}

impl fmt::Display for Connector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "connector u={} v={} scale={} set={}", self.u + 1, self.v + 1, self.scale, one_indexed(&self.vertices))
    }
}

/// Searches for a connector between `u` and `v` avoiding `w`. Scale 1 is
/// a `K_{r-1}` in the common neighborhood; larger scales chain scale-1
/// connectors through intermediate vertices, shortest chains first.
pub fn is_reachable(g: &Graph, u: usize, v: usize, params: &ReachabilityParams, w: &[usize]) -> Result<Option<Connector>> {
    let n = g.n();
    if let Some(&x) = [u, v].iter().chain(w).find(|&&x| x >= n) {
        return Err(Error::VertexOutOfRange { vertex: x, n });
    }
    if u == v {
        return Err(Error::Precondition("reachability needs u != v".into()));
    }
    if w.len() > params.m {
        return Err(Error::Precondition(format!("|W| = {} exceeds m = {}", w.len(), params.m)));
    }
    let mut free = g.full_set();
    for &x in w.iter().chain([u, v].iter()) {
        free.set(x, false);
    }
    for depth in 1..=params.t {
        let mut budget = CHAIN_NODE_BUDGET;
        let mut parts = Vec::new();
        if chain(g, u, v, params.r, depth, &mut free.clone(), &mut parts, &mut budget) {
            let mut vertices: Vec<usize> = parts.concat();
            vertices.sort_unstable();
            return Ok(Some(Connector { u, v, vertices, scale: depth }));
        }
    }
    Ok(None)
}

fn link(g: &Graph, a: usize, b: usize, r: usize, free: &FixedBitSet) -> Option<Vec<usize>> {
    let mut cand = common_neighborhood_set(g, &[a, b]);
    cand.intersect_with(free);
    find_clique_within(g, &cand, r - 1)
}

/// Chain `from = x_0, x_1, .., x_depth = to`, each step linked by a `K_{r-1}`;
/// the links and intermediate vertices together form the connector.
#[allow(clippy::too_many_arguments)]
fn chain(
    g: &Graph,
    from: usize,
    to: usize,
    r: usize,
    depth: usize,
    free: &mut FixedBitSet,
    parts: &mut Vec<Vec<usize>>,
    budget: &mut u64,
) -> bool {
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    if depth == 1 {
        return match link(g, from, to, r, free) {
            Some(c) => {
                parts.push(c);
                true
            }
            None => false,
        };
    }
    let mids: Vec<usize> = free.ones().collect();
    for x in mids {
        free.set(x, false);
        if let Some(c) = link(g, from, x, r, free) {
            c.iter().for_each(|&y| free.set(y, false));
            parts.push(c.clone());
            parts.push(vec![x]);
            if chain(g, x, to, r, depth - 1, free, parts, budget) {
                return true;
            }
            parts.truncate(parts.len() - 2);
            c.iter().for_each(|&y| free.set(y, true));
        }
        free.set(x, true);
        if *budget == 0 {
            return false;
        }
    }
    false
}

/// Outcome of testing reachability against a finite family of forbidden sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReachVerdict {
    /// Every tested `W` left a connector; sampled, not proven.
    Sampled { tested: usize },
    Blocked { w: Vec<usize> },
}

impl ReachVerdict {
    pub fn is_reachable(&self) -> bool {
        matches!(self, ReachVerdict::Sampled { .. })
    }
}

impl fmt::Display for ReachVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReachVerdict::Sampled { tested } => write!(f, "reachable (sampled, {tested} forbidden sets)"),
            ReachVerdict::Blocked { w } => write!(f, "blocked W={}", one_indexed(w)),
        }
    }
}

/// The `m` vertices most useful to connectors: common neighbors first, by
/// degree into the common neighborhood, then everything else by degree.
pub fn adversarial_w(g: &Graph, u: usize, v: usize, m: usize) -> Vec<usize> {
    let common = common_neighborhood_set(g, &[u, v]);
    let mut order: Vec<usize> = (0..g.n()).filter(|&x| x != u && x != v).collect();
    order.sort_by_key(|&x| {
        let inside = common.contains(x);
        let mut d = g.neighbors(x).clone();
        d.intersect_with(&common);
        (!inside, std::cmp::Reverse(d.count_ones(..)), std::cmp::Reverse(g.degree(x)), x)
    });
    order.truncate(m);
    order.sort_unstable();
    order
}

/// Tests `W = ∅`, the adversarial `W`, then `samples` uniform `m`-sets.
pub fn sampled_reachability(
    g: &Graph,
    u: usize,
    v: usize,
    params: &ReachabilityParams,
    samples: usize,
    seed: u64,
) -> Result<ReachVerdict> {
    let others: Vec<usize> = (0..g.n()).filter(|&x| x != u && x != v).collect();
    let m = params.m.min(others.len());
    let mut tested = 0;
    let mut try_w = |w: Vec<usize>| -> Result<Option<ReachVerdict>> {
        tested += 1;
        Ok(match is_reachable(g, u, v, params, &w)? {
            Some(_) => None,
            None => Some(ReachVerdict::Blocked { w }),
        })
    };
    if let Some(b) = try_w(Vec::new())? {
        return Ok(b);
    }
    if m > 0 {
        if let Some(b) = try_w(adversarial_w(g, u, v, m))? {
            return Ok(b);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let mut w: Vec<usize> = sample(&mut rng, others.len(), m).into_iter().map(|i| others[i]).collect();
            w.sort_unstable();
            if let Some(b) = try_w(w)? {
                return Ok(b);
            }
        }
    }
    Ok(ReachVerdict::Sampled { tested })
}

/// Pairwise 1-reachability (sampled with `m = ⌊β₁n⌋`), then components of
/// that relation over vertices with at least `⌈γ₁n⌉` reachable partners.
/// The rest form the exceptional set.
pub fn reachability_partition(
    g: &Graph,
    r: usize,
    beta1: Rational,
    gamma1: Rational,
    samples: usize,
    seed: u64,
) -> Result<Partition> {
    let n = g.n();
    let params = ReachabilityParams::new(r, floor_times(beta1, n), 1)?;
    let need = ceil_times(gamma1, n);
    let mut adj = vec![Vec::new(); n];
    for u in 0..n {
        for v in u + 1..n {
            let pair_seed = sub_seed(seed, (u * n + v) as u64);
            if sampled_reachability(g, u, v, &params, samples, pair_seed)?.is_reachable() {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
    }
    let good: Vec<bool> = adj.iter().map(|a| a.len() >= need).collect();
    let mut owner = vec![usize::MAX; n];
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if !good[s] || owner[s] != usize::MAX {
            continue;
        }
        let id = clusters.len();
        let mut comp = vec![s];
        owner[s] = id;
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            for &y in &adj[x] {
                if good[y] && owner[y] == usize::MAX {
                    owner[y] = id;
                    comp.push(y);
                }
            }
            i += 1;
        }
        clusters.push(comp);
    }
    let exceptional = (0..n).filter(|&x| !good[x]).collect();
    Partition::new(n, clusters, exceptional)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn p(r: usize, m: usize, t: usize) -> ReachabilityParams {
        ReachabilityParams::new(r, m, t).unwrap()
    }

    #[test]
    fn complete_host_connector_is_the_rest() {
        let g = Graph::complete(5);
        let c = is_reachable(&g, 0, 4, &p(4, 0, 1), &[]).unwrap().unwrap();
        assert_eq!(c.vertices, vec![1, 2, 3]);
        assert!(c.verify(&g, 4));
    }

    #[test]
    fn different_components_never_reach() {
        let g = Graph::complete(6).disjoint_union(&Graph::complete(6));
        for t in 1..=3 {
            assert!(is_reachable(&g, 0, 7, &p(3, 0, t), &[]).unwrap().is_none());
        }
    }

    #[test]
    fn chained_connector_at_scale_two() {
        // on the path 0..4 the ends share no neighbor, but 0 -[1]- 2 -[3]- 4
        // gives S = {1,2,3}
        let g = crate::graph_core::fixtures::path(5);
        assert!(is_reachable(&g, 0, 4, &p(2, 0, 1), &[]).unwrap().is_none());
        let c = is_reachable(&g, 0, 4, &p(2, 0, 2), &[]).unwrap().unwrap();
        assert_eq!((c.scale, c.vertices.len()), (2, 3));
        assert!(c.verify(&g, 2));
    }

    #[test]
    fn preconditions() {
        let g = Graph::complete(5);
        assert!(is_reachable(&g, 1, 1, &p(3, 0, 1), &[]).is_err());
        assert!(is_reachable(&g, 0, 1, &p(3, 0, 1), &[2]).is_err());
        assert!(ReachabilityParams::new(3, 0, 0).is_err());
    }

    #[test]
    fn two_dense_parts_survive_planted_w() {
        // u, v each complete to two disjoint 6-cliques; W wipes out one of them
        let mut g = Graph::complete(6).disjoint_union(&Graph::complete(6)).disjoint_union(&Graph::new(2));
        for x in 0..12 {
            g.add_edge(12, x).unwrap();
            g.add_edge(13, x).unwrap();
        }
        let params = p(4, 4, 1);
        let w = [0, 1, 2, 3];
        let c = is_reachable(&g, 12, 13, &params, &w).unwrap().unwrap();
        assert!(c.vertices.iter().all(|x| !w.contains(x)));
        assert!(c.verify(&g, 4));
        assert!(sampled_reachability(&g, 12, 13, &params, 50, 9).unwrap().is_reachable());
    }

    #[test]
    fn adversary_blocks_thin_links() {
        // a single common neighbor
        let g = Graph::from_edges(4, &[(0, 2), (1, 2), (2, 3)]).unwrap();
        let v = sampled_reachability(&g, 0, 1, &p(2, 1, 1), 10, 1).unwrap();
        assert_eq!(v, ReachVerdict::Blocked { w: vec![2] });
    }

    #[test]
    fn partitions_of_simple_hosts() {
        let k = Graph::complete(10);
        let pk = reachability_partition(&k, 3, ratio(1, 10), ratio(1, 5), 20, 1).unwrap();
        assert_eq!(pk.k(), 1);
        assert!(pk.exceptional().is_empty());
        let two = Graph::complete(8).disjoint_union(&Graph::complete(8));
        let pt = reachability_partition(&two, 3, ratio(1, 16), ratio(1, 8), 20, 1).unwrap();
        assert_eq!(pt.clusters(), &[(0..8).collect::<Vec<_>>(), (8..16).collect()]);
    }

    proptest! {
        #[test]
        fn complete_hosts_always_connect(n in 3usize..12, r in 2usize..6, seed in any::<u64>()) {
            prop_assume!(n > r);
            let g = Graph::complete(n);
            let m = n - r - 1;
            let params = p(r, m, 1);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let others: Vec<usize> = (2..n).collect();
            let w: Vec<usize> = sample(&mut rng, others.len(), m).into_iter().map(|i| others[i]).collect();
            let c = is_reachable(&g, 0, 1, &params, &w).unwrap();
            prop_assert!(c.is_some());
            prop_assert!(c.unwrap().verify(&g, r));
        }
    }
}
