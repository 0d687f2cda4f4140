use cliquefactor::absorb::*;
use cliquefactor::acceptance::bridged_cliques;
use cliquefactor::graph_core::cliques::enumerate_cliques;
use cliquefactor::graph_core::{index_vector, Graph};
use cliquefactor::rational::ratio;
use cliquefactor::verify::has_kr_factor;
use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn k24_minus_matching() -> Graph {
    let mut g = Graph::complete(24);
    for i in 0..12 {
        g.remove_edge(2 * i, 2 * i + 1);
    }
    g
}

/// Greedy over all 4-subsets in lexicographic order, checking both factor
/// conditions directly on the induced subgraphs.
fn oracle_absorbers(g: &Graph, s: &[usize]) -> Vec<Vec<usize>> {
    let mut used: Vec<usize> = s.to_vec();
    let mut out = Vec::new();
    for a in (0..g.n()).combinations(4) {
        if a.iter().any(|v| used.contains(v)) {
            continue;
        }
        let mut both = a.clone();
        both.extend_from_slice(s);
        both.sort_unstable();
        if has_kr_factor(&g.induced(&a), 4).is_factor() && has_kr_factor(&g.induced(&both), 4).is_factor() {
            used.extend(&a);
            out.push(a);
        }
    }
    out
}

#[test]
fn planted_matching_host_matches_exhaustive_bodies() {
    let g = k24_minus_matching();
    for s in [vec![0, 2, 4, 6], vec![0, 1, 2, 3], vec![0, 1, 4, 5], vec![3, 8, 13, 22]] {
        let found = find_disjoint_absorbers(&g, &s, 4, 1, 10);
        let oracle = oracle_absorbers(&g, &s);
        assert_eq!(found.len(), oracle.len(), "target {s:?}");
        assert_eq!(found.iter().map(|a| a.body.clone()).collect::<Vec<_>>(), oracle);
        assert!(found.iter().all(|a| a.verify(&g, 4)));
    }
}

/// Reachability with `W = ∅` and `t = 1`, by scanning all `(r-1)`-sets.
fn brute_reachable(g: &Graph, u: usize, v: usize, r: usize) -> bool {
    (0..g.n()).filter(|&x| x != u && x != v).combinations(r - 1).any(|c| {
        let mut a = c.clone();
        a.push(u);
        let mut b = c;
        b.push(v);
        g.is_clique(&a) && g.is_clique(&b)
    })
}

#[test]
fn bridged_partition_matches_brute_reachability() {
    for bridge in [0, 1, 2, 3, 5] {
        let (g, _) = bridged_cliques(9, bridge);
        let r = 3;
        let n = g.n();
        let need = 4;
        let part = reachability_partition(&g, r, ratio(0, 1), ratio(need as i64, n as i64), 0, 1).unwrap();
        let deg: Vec<usize> = (0..n).map(|u| (0..n).filter(|&v| v != u && brute_reachable(&g, u, v, r)).count()).collect();
        let exceptional: Vec<usize> = (0..n).filter(|&u| deg[u] < need).collect();
        assert_eq!(part.exceptional(), &exceptional[..], "bridge {bridge}");
        for u in 0..n {
            for v in 0..n {
                if u != v && deg[u] >= need && deg[v] >= need && brute_reachable(&g, u, v, r) {
                    assert_eq!(part.cluster_of(u), part.cluster_of(v));
                }
            }
        }
        let expect = if bridge >= 2 { 1 } else { 2 };
        assert_eq!(part.k(), expect, "bridge {bridge}");
    }
}

#[test]
fn certified_vectors_survive_random_forbidden_sets() {
    let (g, p) = bridged_cliques(10, 6);
    let n = g.n();
    let mu = ratio(1, 10);
    let set = robust_vectors(&g, &p, 4, mu, RobustMode::Certificate).unwrap();
    assert!(!set.vectors.is_empty());
    let cliques = enumerate_cliques(&g, 4, None);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let w: Vec<usize> = sample(&mut rng, n, set.m).into_vec();
        for v in &set.vectors {
            let alive = cliques
                .iter()
                .any(|c| c.iter().all(|x| !w.contains(x)) && &index_vector(c, &p).unwrap() == v);
            assert!(alive, "{v} killed by {w:?}");
        }
    }
}

#[test]
fn connectors_reverify_on_random_hosts() {
    for seed in 0..20 {
        let g = cliquefactor::graph_core::fixtures::random_graph(14, 0.6, seed);
        for (u, v) in [(0, 1), (2, 9), (5, 13)] {
            for t in 1..=2 {
                let params = ReachabilityParams::new(3, 0, t).unwrap();
                if let Some(c) = is_reachable(&g, u, v, &params, &[]).unwrap() {
                    assert!(c.verify(&g, 3), "{c}");
                    assert_eq!(c.vertices.len(), 3 * c.scale - 1);
                }
            }
        }
    }
}

#[test]
fn assembly_on_bridged_host_reverifies() {
    let (g, _) = bridged_cliques(10, 4);
    let opts = AbsorbOptions { reach_samples: 30, ..AbsorbOptions::default() };
    let asm = build_absorbing_set(&g, 4, ratio(1, 2), ratio(1, 5), 1, 2, &opts).unwrap();
    assert!(asm.within_cap());
    assert!(asm.absorbers.iter().all(|a| a.verify(&g, 4)));
    for c in &asm.covers {
        assert!(g.is_clique(c));
    }
}
