//! The `Q1` / `Q2` gadgets: checks and greedy embeddings.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::graph_core::cliques::{find_clique_within, has_clique_within};
use crate::graph_core::{GadgetQ1, GadgetQ2, Graph};
use crate::rational::Rational;

fn is_set(vs: &[usize]) -> bool {
    let mut s = vs.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

fn meet(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|v| b.contains(v)).count()
}

/// Union of the `U`s equals union of the `H`s, all pieces disjoint, each `H` a clique.
fn common_checks(u: &[Vec<usize>], h: &[Vec<usize>], g: &Graph) -> bool {
    let all_u: Vec<usize> = u.iter().flatten().copied().collect();
    let mut all_h: Vec<usize> = h.iter().flatten().copied().collect();
    if !is_set(&all_u) || !is_set(&all_h) || all_h.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let mut sorted_u = all_u;
    sorted_u.sort_unstable();
    all_h.sort_unstable();
    sorted_u == all_h && h.iter().all(|c| g.is_clique(c))
}

pub fn check_q1(q: &GadgetQ1, g: &Graph) -> bool {
    let r = q.h[0].len();
    if r < 2 || q.h[1].len() != r || !common_checks(&q.u, &q.h, g) {
        return false;
    }
    (0..2).all(|i| meet(&q.h[i], &q.u[i]) == 2 && meet(&q.h[i], &q.u[1 - i]) == r - 2)
}

pub fn check_q2(q: &GadgetQ2, g: &Graph) -> bool {
    let r = q.h[0].len();
    if r < 3 || q.h.iter().any(|h| h.len() != r) || !common_checks(&q.u, &q.h, g) {
        return false;
    }
    (0..3).all(|i| {
        meet(&q.h[i], &q.u[i]) == 1 && meet(&q.h[i], &q.u[(i + 1) % 3]) == 1 && meet(&q.h[i], &q.u[(i + 2) % 3]) == r - 2
    })
}

/// First greedy step that came up empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbedStep {
    /// No edge inside the high-cross-degree core.
    CoreEdge,
    /// No core edge has a `K_{r-2}` in its common neighborhood across.
    CommonNeighborhood,
    /// No core vertex has neighbors in both other parts.
    PickV,
    /// No neighbor `u` of `v` sees anything of `N(v)` in the third part.
    PickU,
    /// No `K_{r-2}` in `N(u) ∩ N(v)` inside the third part.
    PartClique,
}

impl EmbedStep {
    pub fn tag(self) -> &'static str {
        match self {
            EmbedStep::CoreEdge => "core-edge",
            EmbedStep::CommonNeighborhood => "common-neighborhood",
            EmbedStep::PickV => "pick-v",
            EmbedStep::PickU => "pick-u",
            EmbedStep::PartClique => "part-clique",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmbedFailure {
    /// Which copy `H_i` (0-based) could not be placed.
    pub copy: usize,
    pub step: EmbedStep,
}

impl fmt::Display for EmbedFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H{} failed at {}", self.copy + 1, self.step.tag())
    }
}

/// Vertices of `a` with at least `(d(a, b) - eps)|b|` neighbors in `b`.
fn core(g: &Graph, a: &[usize], b: &[usize], eps: Rational) -> Vec<usize> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let bset = g.set_of(b);
    let d = Rational::new(g.edges_between(a, &bset) as i64, (a.len() * b.len()) as i64);
    let need = (d - eps) * Rational::from_integer(b.len() as i64);
    a.iter()
        .copied()
        .filter(|&x| Rational::from_integer(g.neighbors(x).intersection(&bset).count() as i64) >= need)
        .collect()
}

fn inside(g: &Graph, base: &FixedBitSet, with: &[usize]) -> FixedBitSet {
    let mut s = base.clone();
    for &v in with {
        s.intersect_with(g.neighbors(v));
    }
    s
}

/// One `K_r` with 2 vertices in `a` and `r-2` in `b`.
fn place_two_plus(g: &Graph, a: &[usize], b: &[usize], r: usize, eps: Rational) -> Result<Vec<usize>, EmbedStep> {
    let c = core(g, a, b, eps);
    let bset = g.set_of(b);
    let mut saw_edge = false;
    for (i, &x) in c.iter().enumerate() {
        for &y in &c[i + 1..] {
            if !g.has_edge(x, y) {
                continue;
            }
            saw_edge = true;
            if let Some(rest) = find_clique_within(g, &inside(g, &bset, &[x, y]), r - 2) {
                let mut h = vec![x, y];
                h.extend(rest);
                h.sort_unstable();
                return Ok(h);
            }
        }
    }
    Err(if saw_edge { EmbedStep::CommonNeighborhood } else { EmbedStep::CoreEdge })
}

fn minus(part: &[usize], used: &[usize]) -> Vec<usize> {
    part.iter().copied().filter(|v| !used.contains(v)).collect()
}

/// Greedy `Q1` on parts `v1, v2`: `H1` takes an edge of the core of `v1`
/// plus a `K_{r-2}` of `v2`, then `H2` the same with roles swapped.
pub fn embed_q1(g: &Graph, v1: &[usize], v2: &[usize], r: usize, eps: Rational) -> Result<GadgetQ1, EmbedFailure> {
    assert!(r >= 2, "clique order must be at least 2");
    let h1 = place_two_plus(g, v1, v2, r, eps).map_err(|step| EmbedFailure { copy: 0, step })?;
    let (r1, r2) = (minus(v1, &h1), minus(v2, &h1));
    let h2 = place_two_plus(g, &r2, &r1, r, eps).map_err(|step| EmbedFailure { copy: 1, step })?;
    let pick = |part: &[usize]| -> Vec<usize> {
        let mut u: Vec<usize> = h1.iter().chain(&h2).copied().filter(|v| part.contains(v)).collect();
        u.sort_unstable();
        u
    };
    Ok(GadgetQ1 { u: [pick(v1), pick(v2)], h: [h1.clone(), h2.clone()] })
}

/// One `K_r` with split `(1, 1, r-2)` over `(a, b, c)`.
fn place_one_one(g: &Graph, a: &[usize], b: &[usize], c: &[usize], r: usize, eps: Rational) -> Result<Vec<usize>, EmbedStep> {
    let (bset, cset) = (g.set_of(b), g.set_of(c));
    let core_b = core(g, a, b, eps);
    let core_c = core(g, a, c, eps);
    let mut vs: Vec<usize> = core_b
        .into_iter()
        .filter(|x| core_c.contains(x))
        .filter(|&x| g.neighbors(x).intersection(&bset).next().is_some())
        .filter(|&x| g.neighbors(x).intersection(&cset).next().is_some())
        .collect();
    if vs.is_empty() {
        return Err(EmbedStep::PickV);
    }
    vs.sort_by_key(|&x| {
        let deg = g.neighbors(x).intersection(&bset).count() + g.neighbors(x).intersection(&cset).count();
        (std::cmp::Reverse(deg), x)
    });
    let mut saw_u = false;
    for v in vs {
        let nv_c = inside(g, &cset, &[v]);
        let mut us: Vec<usize> = g.neighbors(v).intersection(&bset).collect();
        us.sort_by_key(|&u| (std::cmp::Reverse(g.neighbors(u).intersection(&nv_c).count()), u));
        for u in us {
            let pocket = inside(g, &nv_c, &[u]);
            if r > 2 && pocket.count_ones(..) == 0 {
                continue;
            }
            saw_u = true;
            if has_clique_within(g, &pocket, r - 2) {
                let mut h = vec![v, u];
                h.extend(find_clique_within(g, &pocket, r - 2).unwrap_or_default());
                h.sort_unstable();
                return Ok(h);
            }
        }
    }
    Err(if saw_u { EmbedStep::PartClique } else { EmbedStep::PickU })
}

/// Greedy `Q2` on parts `v1, v2, v3`; copy `i` uses split `(1, 1, r-2)`
/// over parts `(i, i+1, i+2)` cyclically, each on what the previous left.
pub fn embed_q2(
    g: &Graph,
    v1: &[usize],
    v2: &[usize],
    v3: &[usize],
    r: usize,
    eps: Rational,
) -> Result<GadgetQ2, EmbedFailure> {
    assert!(r >= 3, "Q2 needs r >= 3");
    let parts = [v1, v2, v3];
    let mut used: Vec<usize> = Vec::new();
    let mut h: Vec<Vec<usize>> = Vec::with_capacity(3);
    for i in 0..3 {
        let [a, b, c] = [0, 1, 2].map(|j| minus(parts[(i + j) % 3], &used));
        let copy = place_one_one(g, &a, &b, &c, r, eps).map_err(|step| EmbedFailure { copy: i, step })?;
        used.extend(&copy);
        h.push(copy);
    }
    let pick = |part: &[usize]| -> Vec<usize> {
        let mut u: Vec<usize> = used.iter().copied().filter(|v| part.contains(v)).collect();
        u.sort_unstable();
        u
    };
    Ok(GadgetQ2 { u: [pick(v1), pick(v2), pick(v3)], h: [h[0].clone(), h[1].clone(), h[2].clone()] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::fixtures::{blocks, complete_multipartite, random_graph};
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn eps() -> Rational {
        ratio(1, 10)
    }

    #[test]
    fn q1_on_complete_graph() {
        let r = 4;
        let g = Graph::complete(2 * r);
        let b = blocks(&[r, r]);
        let q = embed_q1(&g, &b[0], &b[1], r, eps()).unwrap();
        assert!(check_q1(&q, &g));
        assert_eq!(meet(&q.h[0], &b[0]), 2);
    }

    #[test]
    fn q1_without_cross_edges_fails_at_common_neighborhood() {
        let g = Graph::complete(4).disjoint_union(&Graph::complete(4));
        let b = blocks(&[4, 4]);
        let err = embed_q1(&g, &b[0], &b[1], 4, eps()).unwrap_err();
        assert_eq!(err, EmbedFailure { copy: 0, step: EmbedStep::CommonNeighborhood });
    }

    #[test]
    fn q2_examples() {
        let r = 4;
        let tri = complete_multipartite(&[r, r, r]);
        let b = blocks(&[r, r, r]);
        let err = embed_q2(&tri, &b[0], &b[1], &b[2], r, eps()).unwrap_err();
        assert_eq!(err.step, EmbedStep::PartClique);
        let full = Graph::complete(3 * r);
        let q = embed_q2(&full, &b[0], &b[1], &b[2], r, eps()).unwrap();
        assert!(check_q2(&q, &full));
    }

    #[test]
    fn malformed_gadgets_fail_checks() {
        let g = Graph::complete(8);
        let q = GadgetQ1 { u: [vec![0, 1, 2, 3], vec![4, 5, 6, 7]], h: [vec![0, 1, 4, 5], vec![0, 1, 4, 5]] };
        assert!(!check_q1(&q, &g));
        let q = GadgetQ1 { u: [vec![0, 1, 2, 3], vec![4, 5, 6, 7]], h: [vec![0, 1, 2, 4], vec![3, 5, 6, 7]] };
        assert!(!check_q1(&q, &g));
        let ok = GadgetQ1 { u: [vec![0, 1, 2, 3], vec![4, 5, 6, 7]], h: [vec![0, 1, 4, 5], vec![2, 3, 6, 7]] };
        assert!(check_q1(&ok, &g));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn embeddings_always_check(seed in any::<u64>(), r in 3usize..=5) {
            let g = random_graph(24, 0.8, seed);
            let b = blocks(&[8, 8, 8]);
            if let Ok(q) = embed_q1(&g, &b[0], &b[1], r, eps()) {
                prop_assert!(check_q1(&q, &g));
            }
            if let Ok(q) = embed_q2(&g, &b[0], &b[1], &b[2], r, eps()) {
                prop_assert!(check_q2(&q, &g));
            }
        }
    }
}
