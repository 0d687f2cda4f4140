//! Reduced multigraphs from a graph and a cluster partition, the degree
//! facts they should satisfy, and an empirical regularity-defect probe.

use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph_core::{Graph, Multigraph2, Partition};
use crate::rational::{fmt_ratio, ratio, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReducedConfig {
    /// Density offset for single (`≥ β`) and double (`≥ 1/2 + β`) edges.
    pub beta: Rational,
    /// Regularity parameter; only the defect probe and embeddings read it.
    pub eps: Rational,
    /// Degree margin.
    pub mu: Rational,
}

impl ReducedConfig {
    pub fn new(beta: Rational, eps: Rational, mu: Rational) -> Self {
        ReducedConfig { beta, eps, mu }
    }

    /// `0 < β, ε ≤ μ/10`, the hypotheses of the degree facts.
    pub fn fact_hypotheses_hold(&self) -> bool {
        let zero = ratio(0, 1);
        let cap = self.mu / 10;
        self.beta > zero && self.eps > zero && self.beta <= cap && self.eps <= cap
    }
}

/// `e(A, B) / (|A||B|)`.
pub fn pair_density(g: &Graph, a: &[usize], b: &[usize]) -> Result<Rational> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Precondition("pair density needs two nonempty sets".into()));
    }
    let bset = g.set_of(b);
    if let Some(&v) = a.iter().find(|&&v| bset.contains(v)) {
        return Err(Error::Precondition(format!("sets overlap at vertex {}", v + 1)));
    }
    Ok(ratio(g.edges_between(a, &bset) as i64, (a.len() * b.len()) as i64))
}

/// Multiplicity for one pair density: 2 if `d ≥ 1/2 + β`, 1 if `β ≤ d`, else 0.
pub fn multiplicity(d: Rational, beta: Rational) -> u8 {
    if d >= ratio(1, 2) + beta {
        2
    } else if d >= beta {
        1
    } else {
        0
    }
}

/// One vertex per cluster; the exceptional set is ignored.
pub fn build_reduced(g: &Graph, p: &Partition, cfg: &ReducedConfig) -> Result<Multigraph2> {
    if p.n() != g.n() {
        return Err(Error::Precondition(format!("partition is over {} vertices, graph has {}", p.n(), g.n())));
    }
    if p.k() < 2 {
        return Err(Error::Precondition("need at least two clusters".into()));
    }
    let mut r = Multigraph2::new(p.k());
    for i in 0..p.k() {
        for j in i + 1..p.k() {
            let d = pair_density(g, p.cluster(i), p.cluster(j))?;
            r.set(i, j, multiplicity(d, cfg.beta))?;
        }
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeFact {
    /// Weighted degree `≥ (1 + μ)k`.
    Multi,
    /// Simple degree `≥ (1/2 + μ/2)k`.
    Simple,
}

impl DegreeFact {
    pub fn tag(self) -> &'static str {
        match self {
            DegreeFact::Multi => "multi",
            DegreeFact::Simple => "simple",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactReport {
    pub which: DegreeFact,
    pub k: usize,
    pub bound: Rational,
    pub min_degree: usize,
    /// `(vertex, degree)` for every vertex below the bound.
    pub violations: Vec<(usize, usize)>,
    pub hypotheses_hold: bool,
}

impl FactReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for FactReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "fact: {}", self.which.tag())?;
        writeln!(f, "k: {}", self.k)?;
        writeln!(f, "bound: {}", fmt_ratio(&self.bound))?;
        writeln!(f, "min-degree: {}", self.min_degree)?;
        writeln!(f, "hypotheses: {}", if self.hypotheses_hold { "hold" } else { "violated" })?;
        writeln!(f, "violations: {}", self.violations.len())?;
        for (v, d) in &self.violations {
            writeln!(f, "  vertex {} degree {}", v + 1, d)?;
        }
        writeln!(f, "verdict: {}", if self.passes() { "pass" } else { "fail" })
    }
}

pub fn check_fact_degree(r: &Multigraph2, cfg: &ReducedConfig, which: DegreeFact) -> FactReport {
    let k = r.k();
    let kk = Rational::from_integer(k as i64);
    let bound = match which {
        DegreeFact::Multi => (ratio(1, 1) + cfg.mu) * kk,
        DegreeFact::Simple => (ratio(1, 2) + cfg.mu / 2) * kk,
    };
    let degree = |i| match which {
        DegreeFact::Multi => r.weighted_degree(i),
        DegreeFact::Simple => r.simple_degree(i),
    };
    let degrees: Vec<usize> = (0..k).map(degree).collect();
    let violations = degrees
        .iter()
        .enumerate()
        .filter(|(_, &d)| Rational::from_integer(d as i64) < bound)
        .map(|(i, &d)| (i, d))
        .collect();
    FactReport {
        which,
        k,
        bound,
        min_degree: degrees.iter().copied().min().unwrap_or(0),
        violations,
        hypotheses_hold: cfg.fact_hypotheses_hold(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectEstimate {
    /// Largest `|d(X, Y) - d(A, B)|` seen.
    pub defect: Rational,
    pub witness: (Vec<usize>, Vec<usize>),
    /// True when every admissible `X` was scanned, so `defect` is exact.
    pub exhaustive: bool,
    pub subsets_examined: usize,
}

impl DefectEstimate {
    /// Sampled estimates only bound the true defect from below.
    pub fn is_lower_bound(&self) -> bool {
        !self.exhaustive
    }
}

/// Parts up to this size are scanned exhaustively.
pub const EXHAUSTIVE_PART_LIMIT: usize = 12;

fn abs_diff(a: Rational, b: Rational) -> Rational {
    if a >= b {
        a - b
    } else {
        b - a
    }
}

fn min_size(eps: Rational, len: usize) -> usize {
    crate::rational::ceil_times(eps, len).clamp(1, len)
}

/// For fixed `X` the best `Y` of each size is a prefix of `B` sorted by
/// degree into `X`, so only `X` needs enumerating or sampling.
struct DefectScan<'a> {
    g: &'a Graph,
    b: &'a [usize],
    d: Rational,
    y_sizes: Vec<usize>,
    best: Rational,
    witness: (Vec<usize>, Vec<usize>),
    examined: usize,
}

impl DefectScan<'_> {
    fn visit(&mut self, x: &[usize]) {
        self.examined += 1;
        let xset = self.g.set_of(x);
        let mut deg: Vec<(usize, usize)> =
            self.b.iter().map(|&v| (self.g.neighbors(v).intersection(&xset).count(), v)).collect();
        deg.sort_unstable();
        let n_b = deg.len();
        for &y in &self.y_sizes {
            let low: usize = deg[..y].iter().map(|p| p.0).sum();
            let high: usize = deg[n_b - y..].iter().map(|p| p.0).sum();
            let denom = (x.len() * y) as i64;
            for (sum, range) in [(low, 0..y), (high, n_b - y..n_b)] {
                let dev = abs_diff(ratio(sum as i64, denom), self.d);
                if dev > self.best {
                    self.best = dev;
                    let mut ys: Vec<usize> = deg[range].iter().map(|p| p.1).collect();
                    ys.sort_unstable();
                    self.witness = (x.to_vec(), ys);
                }
            }
        }
    }
}

/// Maximum observed `|d(X, Y) - d(A, B)|` over `X ⊆ A`, `Y ⊆ B` with
/// `|X| ≥ ε|A|`, `|Y| ≥ ε|B|`. Exact when both parts have at most
/// [`EXHAUSTIVE_PART_LIMIT`] vertices; otherwise `sample_budget` random
/// minimum-size `X` are tried.
pub fn regularity_defect(
    g: &Graph,
    a: &[usize],
    b: &[usize],
    eps: Rational,
    sample_budget: usize,
    seed: u64,
) -> Result<DefectEstimate> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::Precondition("both parts need at least two vertices".into()));
    }
    let d = pair_density(g, a, b)?;
    let (min_x, min_y) = (min_size(eps, a.len()), min_size(eps, b.len()));
    let mut scan = DefectScan {
        g,
        b,
        d,
        y_sizes: (min_y..=b.len()).collect(),
        best: ratio(0, 1),
        witness: (a.to_vec(), b.to_vec()),
        examined: 0,
    };
    let exhaustive = a.len() <= EXHAUSTIVE_PART_LIMIT && b.len() <= EXHAUSTIVE_PART_LIMIT;
    if exhaustive {
        for mask in 1u32..1 << a.len() {
            if (mask.count_ones() as usize) < min_x {
                continue;
            }
            let x: Vec<usize> = (0..a.len()).filter(|i| mask >> i & 1 == 1).map(|i| a[i]).collect();
            scan.visit(&x);
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        scan.y_sizes = vec![min_y];
        for _ in 0..sample_budget {
            let mut x: Vec<usize> = sample(&mut rng, a.len(), min_x).into_iter().map(|i| a[i]).collect();
            x.sort_unstable();
            scan.visit(&x);
        }
    }
    Ok(DefectEstimate { defect: scan.best, witness: scan.witness, exhaustive, subsets_examined: scan.examined })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::fixtures::{blocks, complete_multipartite, cycle, random_graph};
    use proptest::prelude::*;

    fn cfg(beta: Rational, mu: Rational) -> ReducedConfig {
        ReducedConfig::new(beta, beta, mu)
    }

    #[test]
    fn density_examples() {
        let kb = complete_multipartite(&[3, 3]);
        let b = blocks(&[3, 3]);
        assert_eq!(pair_density(&kb, &b[0], &b[1]).unwrap(), ratio(1, 1));
        assert_eq!(pair_density(&Graph::new(6), &b[0], &b[1]).unwrap(), ratio(0, 1));
        assert_eq!(pair_density(&Graph::complete(4), &[0, 1], &[2, 3]).unwrap(), ratio(1, 1));
        // C4 = 0-1-2-3-0: diagonals {0,2} vs {1,3} see all 4 edges; adjacent pairs {0,1} vs {2,3} see 2
        let c4 = cycle(4);
        assert_eq!(pair_density(&c4, &[0, 2], &[1, 3]).unwrap(), ratio(1, 1));
        assert_eq!(pair_density(&c4, &[0, 1], &[2, 3]).unwrap(), ratio(1, 2));
        assert!(pair_density(&c4, &[0, 1], &[1, 2]).is_err());
        assert!(pair_density(&c4, &[], &[1, 2]).is_err());
    }

    #[test]
    fn reduced_thresholds() {
        let beta = ratio(1, 4);
        let p = Partition::new(4, vec![vec![0, 1], vec![2, 3]], vec![]).unwrap();
        let full = build_reduced(&complete_multipartite(&[2, 2]), &p, &cfg(beta, ratio(1, 2))).unwrap();
        assert_eq!(full.mult(0, 1), 2);
        let none = build_reduced(&Graph::new(4), &p, &cfg(beta, ratio(1, 2))).unwrap();
        assert_eq!(none.mult(0, 1), 0);
        // one cross edge out of four: density exactly β
        let one = Graph::from_edges(4, &[(0, 2)]).unwrap();
        assert_eq!(build_reduced(&one, &p, &cfg(beta, ratio(1, 2))).unwrap().mult(0, 1), 1);
        assert_eq!(multiplicity(ratio(3, 4), beta), 2);
        assert_eq!(multiplicity(ratio(3, 4) - ratio(1, 100), beta), 1);
    }

    #[test]
    fn fact_examples() {
        let mut r = Multigraph2::new(4);
        for i in 0..4 {
            for j in i + 1..4 {
                r.set(i, j, 2).unwrap();
            }
        }
        let c = cfg(ratio(1, 20), ratio(1, 2));
        assert!(check_fact_degree(&r, &c, DegreeFact::Multi).passes());
        assert!(c.fact_hypotheses_hold());
        let mut iso = Multigraph2::new(4);
        iso.set(0, 1, 2).unwrap();
        iso.set(0, 2, 2).unwrap();
        iso.set(1, 2, 2).unwrap();
        for which in [DegreeFact::Multi, DegreeFact::Simple] {
            let rep = check_fact_degree(&iso, &c, which);
            assert!(rep.violations.iter().any(|&(v, d)| v == 3 && d == 0), "{rep}");
        }
    }

    #[test]
    fn defect_examples() {
        let kb = complete_multipartite(&[5, 5]);
        let b = blocks(&[5, 5]);
        let est = regularity_defect(&kb, &b[0], &b[1], ratio(3, 10), 100, 0).unwrap();
        assert_eq!(est.defect, ratio(0, 1));
        assert!(est.exhaustive);
        // halves A1 = 0..4, A2 = 4..8, B1 = 8..12, B2 = 12..16
        let mut g = Graph::new(16);
        for (xa, xb) in [(0, 8), (4, 12)] {
            for u in xa..xa + 4 {
                for v in xb..xb + 4 {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        let b = blocks(&[8, 8]);
        let est = regularity_defect(&g, &b[0], &b[1], ratio(3, 10), 100, 0).unwrap();
        assert!(est.defect >= ratio(1, 2));
        assert!(!est.is_lower_bound());
        let rnd = random_graph(24, 0.5, 9);
        let b = blocks(&[12, 12]);
        let est = regularity_defect(&rnd, &b[0], &b[1], ratio(3, 10), 100, 0).unwrap();
        assert!(est.defect <= ratio(1, 1));
    }

    /// Oracle: every admissible (X, Y) pair.
    fn brute_defect(g: &Graph, a: &[usize], b: &[usize], eps: Rational) -> Rational {
        let d = pair_density(g, a, b).unwrap();
        let (mx, my) = (min_size(eps, a.len()), min_size(eps, b.len()));
        let mut best = ratio(0, 1);
        for xm in 1u32..1 << a.len() {
            if (xm.count_ones() as usize) < mx {
                continue;
            }
            let x: Vec<usize> = (0..a.len()).filter(|i| xm >> i & 1 == 1).map(|i| a[i]).collect();
            for ym in 1u32..1 << b.len() {
                if (ym.count_ones() as usize) < my {
                    continue;
                }
                let y: Vec<usize> = (0..b.len()).filter(|i| ym >> i & 1 == 1).map(|i| b[i]).collect();
                best = best.max(abs_diff(pair_density(g, &x, &y).unwrap(), d));
            }
        }
        best
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn defect_exact_on_small_parts(seed in any::<u64>(), sa in 2usize..=6, sb in 2usize..=6) {
            let g = random_graph(sa + sb, 0.5, seed);
            let b = blocks(&[sa, sb]);
            let eps = ratio(1, 3);
            let est = regularity_defect(&g, &b[0], &b[1], eps, 0, 0).unwrap();
            prop_assert_eq!(est.defect, brute_defect(&g, &b[0], &b[1], eps));
            prop_assert!(est.defect <= ratio(1, 1));
        }

        #[test]
        fn multiplicity_monotone(n1 in 0i64..=100, n2 in 0i64..=100, beta_n in 1i64..=40) {
            let beta = ratio(beta_n, 100);
            let (lo, hi) = (n1.min(n2), n1.max(n2));
            prop_assert!(multiplicity(ratio(lo, 100), beta) <= multiplicity(ratio(hi, 100), beta));
        }
    }
}
