//! Named small graphs and seeded random graphs used as fixtures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::graph::Graph;
use super::multigraph::Multigraph2;

pub fn cycle(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for i in 0..n {
        g.add_edge_unchecked(i, (i + 1) % n);
    }
    g
}

pub fn path(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for i in 1..n {
        g.add_edge_unchecked(i - 1, i);
    }
    g
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i ~ i+5`.
pub fn petersen() -> Graph {
    let mut g = Graph::new(10);
    for i in 0..5 {
        g.add_edge_unchecked(i, (i + 1) % 5);
        g.add_edge_unchecked(5 + i, 5 + (i + 2) % 5);
        g.add_edge_unchecked(i, i + 5);
    }
    g
}

/// Complete multipartite graph with consecutive parts of the given sizes.
pub fn complete_multipartite(sizes: &[usize]) -> Graph {
    let n: usize = sizes.iter().sum();
    let mut part = Vec::with_capacity(n);
    for (i, &s) in sizes.iter().enumerate() {
        part.extend(std::iter::repeat_n(i, s));
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if part[u] != part[v] {
                g.add_edge_unchecked(u, v);
            }
        }
    }
    g
}

/// Consecutive vertex blocks of the given sizes, `0..s0`, `s0..s0+s1`, ...
pub fn blocks(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for &s in sizes {
        out.push((start..start + s).collect());
        start += s;
    }
    out
}

/// Erdős–Rényi `G(n, p)` from a ChaCha8 stream seeded with `seed`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge_unchecked(u, v);
            }
        }
    }
    g
}

/// Random multigraph on `k` vertices with weighted minimum degree at least
/// `min_degree`: a sparse random start, then random multiplicity bumps at
/// deficient vertices. `None` when `min_degree > 2(k-1)`.
pub fn random_multigraph_min_degree(k: usize, min_degree: usize, seed: u64) -> Option<Multigraph2> {
    if k == 0 || min_degree > 2 * (k - 1) {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Multigraph2::new(k);
    let p_double = rng.random_range(0.0..0.4);
    let p_single = rng.random_range(0.0..0.4);
    for i in 0..k {
        for j in i + 1..k {
            let x: f64 = rng.random();
            let m = if x < p_double { 2 } else if x < p_double + p_single { 1 } else { 0 };
            r.set(i, j, m).expect("in range");
        }
    }
    for i in 0..k {
        while r.weighted_degree(i) < min_degree {
            let open: Vec<usize> = (0..k).filter(|&j| j != i && r.mult(i, j) < 2).collect();
            let j = open[rng.random_range(0..open.len())];
            r.set(i, j, r.mult(i, j) + 1).expect("in range");
        }
    }
    Some(r)
}
