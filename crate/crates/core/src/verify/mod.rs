//! Exact verifiers: minimum degree, `α_ℓ`, `K_s`-freeness, `K_r`-factors,
//! maximum `K_r`-tilings and tiling validity.

pub mod alpha;
pub mod factor;

pub use alpha::{alpha_ell, AlphaOptions};
pub use factor::{
    has_kr_factor, has_kr_factor_with, max_kr_tiling, FactorCertificate, FactorOptions, FactorOutcome, NoFactorWitness,
    TilingOptions,
};

use crate::graph_core::cliques::enumerate_cliques;
use crate::graph_core::{Graph, Multigraph2, Placement, Shape, Tiling};
use crate::tile::gadgets::{check_q1, check_q2};

/// `δ(G)`; zero for the empty graph.
pub fn min_degree(g: &Graph) -> usize {
    (0..g.n()).map(|v| g.degree(v)).min().unwrap_or(0)
}

/// `(true, None)` if `G` has no `K_s`, else `(false, Some(witness))`.
pub fn is_ks_free(g: &Graph, s: usize) -> (bool, Option<Vec<usize>>) {
    match enumerate_cliques(g, s, Some(1)).pop() {
        Some(c) => (false, Some(c)),
        None => (true, None),
    }
}

/// What a tiling is placed in.
#[derive(Clone, Copy, Debug)]
pub enum Host<'a> {
    Graph(&'a Graph),
    Reduced(&'a Multigraph2),
}

impl Host<'_> {
    fn order(&self) -> usize {
        match self {
            Host::Graph(g) => g.n(),
            Host::Reduced(r) => r.k(),
        }
    }

    fn is_clique(&self, vs: &[usize]) -> bool {
        match self {
            Host::Graph(g) => g.is_clique(vs),
            Host::Reduced(r) => vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| r.adjacent(a, b))),
        }
    }
}

/// Disjointness plus per-placement shape checks.
pub fn verify_tiling(t: &Tiling, host: Host<'_>) -> bool {
    let n = host.order();
    let covered = t.covered();
    if covered.iter().any(|&v| v >= n) || covered.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    let mut kr_size = None;
    t.placements.iter().all(|p| match (p, host) {
        (Placement::Simple { shape: Shape::Kr, vertices }, _) => {
            if *kr_size.get_or_insert(vertices.len()) != vertices.len() || vertices.is_empty() {
                return false;
            }
            host.is_clique(vertices)
        }
        (Placement::Simple { shape: Shape::K3, vertices }, _) => vertices.len() == 3 && host.is_clique(vertices),
        (Placement::Simple { shape: Shape::K2Double, vertices }, Host::Reduced(r)) => {
            vertices.len() == 2 && r.is_double(vertices[0], vertices[1])
        }
        (Placement::Q1(q), Host::Graph(g)) => check_q1(q, g),
        (Placement::Q2(q), Host::Graph(g)) => check_q2(q, g),
        _ => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::fixtures::{cycle, path, petersen};

    #[test]
    fn min_degree_examples() {
        assert_eq!(min_degree(&Graph::complete(5)), 4);
        assert_eq!(min_degree(&Graph::complete(7).disjoint_union(&Graph::complete(5))), 4);
        assert_eq!(min_degree(&cycle(5)), 2);
    }

    #[test]
    fn ks_free_examples() {
        assert_eq!(is_ks_free(&cycle(5), 3), (true, None));
        assert_eq!(is_ks_free(&Graph::complete(4), 4), (false, Some(vec![0, 1, 2, 3])));
        assert!(is_ks_free(&petersen(), 3).0);
    }

    #[test]
    fn verify_tiling_examples() {
        let k8 = Graph::complete(8);
        let cert = has_kr_factor(&k8, 4);
        assert!(verify_tiling(cert.tiling().unwrap(), Host::Graph(&k8)));
        let overlap = Tiling::from_cliques(vec![vec![0, 1, 2, 3], vec![3, 4, 5, 6]]);
        assert!(!verify_tiling(&overlap, Host::Graph(&k8)));
        let p3 = path(3);
        let tri = Tiling { placements: vec![Placement::Simple { shape: Shape::K3, vertices: vec![0, 1, 2] }] };
        assert!(!verify_tiling(&tri, Host::Graph(&p3)));
        assert!(verify_tiling(&tri, Host::Graph(&Graph::complete(3))));
    }

    #[test]
    fn verify_tiling_in_reduced_host() {
        let mut r = Multigraph2::new(4);
        r.set(0, 1, 2).unwrap();
        r.set(1, 2, 1).unwrap();
        let dbl = |a, b| Placement::Simple { shape: Shape::K2Double, vertices: vec![a, b] };
        assert!(verify_tiling(&Tiling { placements: vec![dbl(0, 1)] }, Host::Reduced(&r)));
        assert!(!verify_tiling(&Tiling { placements: vec![dbl(1, 2)] }, Host::Reduced(&r)));
        let k4 = Graph::complete(4);
        assert!(!verify_tiling(&Tiling { placements: vec![dbl(0, 1)] }, Host::Graph(&k4)));
        let mixed = Tiling::from_cliques(vec![vec![0, 1], vec![2, 3, 4]]);
        assert!(!verify_tiling(&mixed, Host::Graph(&Graph::complete(5))));
    }
}
