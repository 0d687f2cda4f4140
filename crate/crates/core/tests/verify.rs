use cliquefactor::acceptance::naive_factor_oracle;
use cliquefactor::graph_core::cliques::enumerate_cliques;
use cliquefactor::graph_core::fixtures::{complete_multipartite, random_graph};
use cliquefactor::verify::*;
use cliquefactor::Graph;
use itertools::Itertools;
use proptest::prelude::*;

/// Largest number of disjoint `r`-cliques, by trying every clique subset.
fn naive_max_tiling(g: &Graph, r: usize) -> usize {
    fn rec(cliques: &[Vec<usize>], used: &mut Vec<usize>) -> usize {
        let Some((first, rest)) = cliques.split_first() else { return 0 };
        let skip = rec(rest, used);
        if first.iter().any(|v| used.contains(v)) {
            return skip;
        }
        used.extend(first);
        let take = 1 + rec(rest, used);
        used.truncate(used.len() - first.len());
        skip.max(take)
    }
    rec(&enumerate_cliques(g, r, None), &mut Vec::new())
}

fn naive_alpha(g: &Graph, ell: usize) -> usize {
    (0..=g.n())
        .rev()
        .find(|&k| (0..g.n()).combinations(k).any(|s| enumerate_cliques(&g.induced(&s), ell, Some(1)).is_empty()))
        .unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn factor_agrees_with_partition_oracle(n in 0usize..=12, r in 2usize..=4, p in 0.3f64..1.0, seed in any::<u64>()) {
        let g = random_graph(n, p, seed);
        let cert = has_kr_factor(&g, r);
        prop_assert_eq!(cert.is_factor(), naive_factor_oracle(&g, r));
        if let Some(t) = cert.tiling() {
            prop_assert!(verify_tiling(t, Host::Graph(&g)));
            prop_assert!(t.uncovered(n).is_empty());
        }
    }

    #[test]
    fn max_tiling_is_maximum(n in 0usize..=10, r in 2usize..=4, p in 0.3f64..0.9, seed in any::<u64>()) {
        let g = random_graph(n, p, seed);
        let t = max_kr_tiling(&g, r, &TilingOptions::default()).unwrap();
        prop_assert!(verify_tiling(&t, Host::Graph(&g)));
        prop_assert_eq!(t.len(), naive_max_tiling(&g, r));
    }

    #[test]
    fn alpha_matches_subset_scan(n in 0usize..=9, ell in 2usize..=4, p in 0.2f64..0.9, seed in any::<u64>()) {
        let g = random_graph(n, p, seed);
        let (a, witness) = alpha_ell(&g, ell, &AlphaOptions::default()).unwrap();
        prop_assert_eq!(a, naive_alpha(&g, ell));
        prop_assert_eq!(witness.len(), a);
        prop_assert!(enumerate_cliques(&g.induced(&witness), ell, Some(1)).is_empty());
    }

    #[test]
    fn ks_free_agrees_with_enumeration(n in 0usize..=12, s in 2usize..=5, p in 0.2f64..0.9, seed in any::<u64>()) {
        let g = random_graph(n, p, seed);
        let (free, witness) = is_ks_free(&g, s);
        prop_assert_eq!(free, enumerate_cliques(&g, s, Some(1)).is_empty());
        if let Some(w) = witness {
            prop_assert!(g.is_clique(&w) && w.len() == s);
        }
    }
}

#[test]
fn no_factor_witnesses_are_honest() {
    // two cliques of orders 7 and 5
    let g = Graph::complete(7).disjoint_union(&Graph::complete(5));
    let cert = has_kr_factor(&g, 4);
    assert!(cert.is_no_factor());
    assert!(has_kr_factor(&complete_multipartite(&[2, 2, 2]), 3).is_factor());
    let mut k4 = Graph::complete(4);
    k4.remove_edge(0, 1);
    assert!(has_kr_factor(&k4, 4).is_no_factor());
}

#[test]
fn budget_yields_timeout_not_no_factor() {
    // K_24 minus a perfect matching has a K_4-factor but needs more than one node
    let mut g = Graph::complete(24);
    for i in 0..12 {
        g.remove_edge(2 * i, 2 * i + 1);
    }
    assert!(has_kr_factor(&g, 4).is_factor());
    let cert = has_kr_factor_with(&g, 4, &FactorOptions { max_nodes: Some(1) });
    assert!(matches!(cert.outcome, FactorOutcome::Timeout { .. }), "{}", cert.outcome_tag());
}
