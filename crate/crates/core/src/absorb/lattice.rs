//! Robust index vectors, transferrals, and merging parts along them.

use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph_core::cliques::for_each_clique_within;
use crate::graph_core::{index_vector, Graph, IndexVector, Partition};
use crate::rational::{fmt_ratio, floor_times, Rational};

/// Largest host for exhaustive forbidden-set robustness.
pub const EXACT_SMALL_CAP: usize = 18;
/// Cliques enumerated per call before the scan stops.
pub const CLIQUE_SCAN_LIMIT: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RobustMode {
    /// Robust when a greedy disjoint family has more than `μn` members.
    Certificate,
    /// Robust when no `⌊μn⌋` vertices meet every realizing clique.
    ExactSmall,
}

impl RobustMode {
    pub fn tag(self) -> &'static str {
        match self {
            RobustMode::Certificate => "certificate",
            RobustMode::ExactSmall => "exact-small",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RobustVectorSet {
    pub mu: Rational,
    /// `⌊μn⌋`, the forbidden-set size.
    pub m: usize,
    pub mode: RobustMode,
    /// Sorted ascending.
    pub vectors: Vec<IndexVector>,
    /// Disjoint realizing cliques, parallel to `vectors`.
    pub certificates: Vec<Vec<Vec<usize>>>,
    /// Realized but not robust: vector and greedy family size.
    pub rejected: Vec<(IndexVector, usize)>,
    /// The clique scan hit [`CLIQUE_SCAN_LIMIT`].
    pub truncated: bool,
}

impl RobustVectorSet {
    pub fn contains(&self, v: &IndexVector) -> bool {
        self.vectors.binary_search(v).is_ok()
    }
}

impl fmt::Display for RobustVectorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode: {}", self.mode.tag())?;
        writeln!(f, "mu: {}", fmt_ratio(&self.mu))?;
        writeln!(f, "forbidden-size: {}", self.m)?;
        writeln!(f, "truncated: {}", self.truncated)?;
        for (v, fam) in self.vectors.iter().zip(&self.certificates) {
            writeln!(f, "robust {v} family={}", fam.len())?;
        }
        for (v, size) in &self.rejected {
            writeln!(f, "realized {v} family={size}")?;
        }
        Ok(())
    }
}

/// `I^μ(P)` over the `r`-cliques avoiding the exceptional set.
pub fn robust_vectors(g: &Graph, p: &Partition, r: usize, mu: Rational, mode: RobustMode) -> Result<RobustVectorSet> {
    let n = g.n();
    if p.n() != n {
        return Err(Error::InvalidPartition(format!("partition covers {} vertices, graph has {n}", p.n())));
    }
    if mode == RobustMode::ExactSmall && n > EXACT_SMALL_CAP {
        return Err(Error::InstanceTooLarge { n, cap: EXACT_SMALL_CAP });
    }
    let m = floor_times(mu, n);
    let mut allowed = g.full_set();
    for &x in p.exceptional() {
        allowed.set(x, false);
    }
    struct Bucket {
        used: FixedBitSet,
        family: Vec<Vec<usize>>,
        all: Vec<Vec<usize>>,
    }
    let mut buckets: BTreeMap<IndexVector, Bucket> = BTreeMap::new();
    let keep_all = mode == RobustMode::ExactSmall;
    let seen = if r == 0 {
        0
    } else {
        for_each_clique_within(g, &allowed, r, CLIQUE_SCAN_LIMIT, |c| {
            let v = index_vector(c, p).expect("cliques avoid exceptional vertices");
            let b = buckets.entry(v).or_insert_with(|| Bucket { used: g.empty_set(), family: Vec::new(), all: Vec::new() });
            if c.iter().all(|&x| !b.used.contains(x)) {
                c.iter().for_each(|&x| b.used.insert(x));
                b.family.push(c.to_vec());
            }
            if keep_all {
                b.all.push(c.to_vec());
            }
        })
    };
    let mut out = RobustVectorSet {
        mu,
        m,
        mode,
        vectors: Vec::new(),
        certificates: Vec::new(),
        rejected: Vec::new(),
        truncated: seen >= CLIQUE_SCAN_LIMIT,
    };
    for (v, b) in buckets {
        let robust = match mode {
            RobustMode::Certificate => b.family.len() > m,
            RobustMode::ExactSmall => !has_transversal(&b.all, m, &mut Vec::new()),
        };
        if robust {
            out.vectors.push(v);
            out.certificates.push(b.family);
        } else {
            out.rejected.push((v, b.family.len()));
        }
    }
    Ok(out)
}

/// Whether at most `budget` vertices can meet every set in `sets`.
fn has_transversal(sets: &[Vec<usize>], budget: usize, chosen: &mut Vec<usize>) -> bool {
    let Some(open) = sets.iter().find(|s| s.iter().all(|x| !chosen.contains(x))) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for &x in open {
        chosen.push(x);
        let hit = has_transversal(sets, budget - 1, chosen);
        chosen.pop();
        if hit {
            return true;
        }
    }
    false
}

/// `s - t = u_i - u_j`, with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transferral {
    pub i: usize,
    pub j: usize,
    pub s: IndexVector,
    pub t: IndexVector,
}

impl fmt::Display for Transferral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "transferral i={} j={} s={} t={}", self.i + 1, self.j + 1, self.s, self.t)
    }
}

/// First pair (in the given order) whose difference is a transferral.
pub fn find_transferral(vectors: &[IndexVector]) -> Option<Transferral> {
    for (a, x) in vectors.iter().enumerate() {
        for y in &vectors[a + 1..] {
            if let Some((i, j)) = x.transferral_to(y) {
                return Some(if i < j {
                    Transferral { i, j, s: x.clone(), t: y.clone() }
                } else {
                    Transferral { i: j, j: i, s: y.clone(), t: x.clone() }
                });
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeLog {
    pub partition: Partition,
    /// Transferrals in the order they were used, indexed against the
    /// partition current at that step.
    pub steps: Vec<Transferral>,
}

impl fmt::Display for MergeLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.steps.iter().enumerate() {
            writeln!(f, "merge {}: {s}", k + 1)?;
        }
        writeln!(f, "parts: {}", self.partition.k())
    }
}

/// Unions parts along transferrals, recomputing `I^μ` after every merge,
/// until none remains.
pub fn merge_closed_parts(g: &Graph, p: &Partition, r: usize, mu: Rational, mode: RobustMode) -> Result<MergeLog> {
    let mut partition = p.clone();
    let mut steps = Vec::new();
    while partition.k() > 1 {
        let set = robust_vectors(g, &partition, r, mu, mode)?;
        let Some(tr) = find_transferral(&set.vectors) else { break };
        partition = partition.merge(tr.i, tr.j);
        steps.push(tr);
    }
    Ok(MergeLog { partition, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::fixtures::blocks;
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn iv(c: &[usize]) -> IndexVector {
        IndexVector(c.to_vec())
    }

    #[test]
    fn k8_two_clusters_realizes_all_splits() {
        let g = Graph::complete(8);
        let p = Partition::new(8, blocks(&[4, 4]), vec![]).unwrap();
        let set = robust_vectors(&g, &p, 4, ratio(1, 100), RobustMode::Certificate).unwrap();
        let all = vec![iv(&[0, 4]), iv(&[1, 3]), iv(&[2, 2]), iv(&[3, 1]), iv(&[4, 0])];
        assert_eq!(set.vectors, all);
        let exact = robust_vectors(&g, &p, 4, ratio(1, 100), RobustMode::ExactSmall).unwrap();
        assert_eq!(exact.vectors, all);
        // with one forbidden vertex, (4,0) dies and every split survives
        let exact1 = robust_vectors(&g, &p, 4, ratio(1, 8), RobustMode::ExactSmall).unwrap();
        assert_eq!(exact1.vectors, vec![iv(&[1, 3]), iv(&[2, 2]), iv(&[3, 1])]);
        let cert1 = robust_vectors(&g, &p, 4, ratio(1, 8), RobustMode::Certificate).unwrap();
        assert!(cert1.vectors.iter().all(|v| exact1.contains(v)));
    }

    #[test]
    fn disconnected_cliques_realize_only_pure_vectors() {
        let g = Graph::complete(6).disjoint_union(&Graph::complete(6));
        let p = Partition::new(12, blocks(&[6, 6]), vec![]).unwrap();
        let set = robust_vectors(&g, &p, 4, ratio(1, 100), RobustMode::Certificate).unwrap();
        assert_eq!(set.vectors, vec![iv(&[0, 4]), iv(&[4, 0])]);
        assert!(find_transferral(&set.vectors).is_none());
    }

    #[test]
    fn empty_host_has_no_vectors() {
        let g = Graph::new(6);
        let p = Partition::new(6, blocks(&[3, 3]), vec![]).unwrap();
        let set = robust_vectors(&g, &p, 3, ratio(0, 1), RobustMode::Certificate).unwrap();
        assert!(set.vectors.is_empty() && set.rejected.is_empty());
    }

    #[test]
    fn certificates_are_disjoint_and_typed() {
        let g = crate::graph_core::fixtures::random_graph(16, 0.7, 4);
        let p = Partition::new(16, blocks(&[5, 5, 6]), vec![]).unwrap();
        let set = robust_vectors(&g, &p, 3, ratio(1, 16), RobustMode::Certificate).unwrap();
        for (v, fam) in set.vectors.iter().zip(&set.certificates) {
            let mut seen = g.empty_set();
            for c in fam {
                assert!(g.is_clique(c));
                assert_eq!(&index_vector(c, &p).unwrap(), v);
                for &x in c {
                    assert!(!seen.put(x));
                }
            }
            assert!(fam.len() > set.m);
        }
    }

    #[test]
    fn exact_small_refuses_big_hosts() {
        let g = Graph::complete(19);
        let p = Partition::new(19, blocks(&[19]), vec![]).unwrap();
        assert!(robust_vectors(&g, &p, 3, ratio(0, 1), RobustMode::ExactSmall).is_err());
    }

    #[test]
    fn transferral_examples() {
        let t = find_transferral(&[iv(&[1, 3]), iv(&[2, 2])]).unwrap();
        assert_eq!((t.i, t.j, t.s, t.t), (0, 1, iv(&[2, 2]), iv(&[1, 3])));
        assert!(find_transferral(&[iv(&[0, 4]), iv(&[4, 0])]).is_none());
        assert!(find_transferral(&[]).is_none());
    }

    #[test]
    fn merge_two_bridged_cliques() {
        let mut g = Graph::complete(6).disjoint_union(&Graph::complete(6));
        for a in 0..3 {
            for b in 6..9 {
                g.add_edge(a, b).unwrap();
            }
        }
        let p = Partition::new(12, blocks(&[6, 6]), vec![]).unwrap();
        let log = merge_closed_parts(&g, &p, 4, ratio(1, 100), RobustMode::Certificate).unwrap();
        assert_eq!((log.partition.k(), log.steps.len()), (1, 1));
        let apart = Graph::complete(6).disjoint_union(&Graph::complete(6));
        let same = merge_closed_parts(&apart, &p, 4, ratio(1, 100), RobustMode::Certificate).unwrap();
        assert_eq!(same.partition, p);
    }

    /// Parts A, B (8-cliques) and C (a triangle plus an edge on 6 vertices).
    /// A–B is bridged 4+4; {a1,a2} sees the C-edge and one B vertex sees the
    /// C-triangle, giving (2,0,2) and (0,1,3): no A–C or B–C transferral
    /// until A and B are one part.
    pub(crate) fn staged_host() -> (Graph, Partition) {
        let mut g = Graph::complete(8).disjoint_union(&Graph::complete(8)).disjoint_union(&Graph::new(6));
        for a in 0..4 {
            for b in 8..12 {
                g.add_edge(a, b).unwrap();
            }
        }
        for (x, y) in [(16, 17), (16, 18), (17, 18), (19, 20)] {
            g.add_edge(x, y).unwrap();
        }
        for a in [6, 7] {
            for c in [19, 20] {
                g.add_edge(a, c).unwrap();
            }
        }
        for c in [16, 17, 18] {
            g.add_edge(15, c).unwrap();
        }
        (g, Partition::new(22, blocks(&[8, 8, 6]), vec![]).unwrap())
    }

    #[test]
    fn staged_merge_needs_recomputation() {
        let (g, p) = staged_host();
        let mu = ratio(1, 25);
        let first = robust_vectors(&g, &p, 4, mu, RobustMode::Certificate).unwrap();
        assert!(first.contains(&iv(&[2, 0, 2])) && first.contains(&iv(&[0, 1, 3])));
        let tr = find_transferral(&first.vectors).unwrap();
        assert_eq!((tr.i, tr.j), (0, 1));
        let ac_or_bc = first.vectors.iter().any(|x| {
            first.vectors.iter().any(|y| matches!(x.transferral_to(y), Some((i, j)) if i == 2 || j == 2))
        });
        assert!(!ac_or_bc);
        let log = merge_closed_parts(&g, &p, 4, mu, RobustMode::Certificate).unwrap();
        assert_eq!(log.steps.len(), 2);
        assert_eq!((log.steps[1].i, log.steps[1].j), (0, 1));
        assert_eq!(log.partition.k(), 1);
    }

    fn all_vectors(k: usize, r: usize) -> Vec<IndexVector> {
        fn rec(k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<IndexVector>) {
            if cur.len() + 1 == k {
                cur.push(left);
                out.push(IndexVector(cur.clone()));
                cur.pop();
                return;
            }
            for c in 0..=left {
                cur.push(c);
                rec(k, left - c, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(k, r, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    fn brute_has_transferral(vs: &[IndexVector]) -> bool {
        vs.iter().any(|x| {
            vs.iter().any(|y| {
                let d: Vec<i64> = x.0.iter().zip(&y.0).map(|(&a, &b)| a as i64 - b as i64).collect();
                d.iter().filter(|&&c| c == 1).count() == 1
                    && d.iter().filter(|&&c| c == -1).count() == 1
                    && d.iter().filter(|&&c| c == 0).count() == d.len() - 2
            })
        })
    }

    #[test]
    fn transferral_scan_is_complete_over_small_lattices() {
        for k in 1..=3 {
            let vs = all_vectors(k, 4);
            for mask in 0u32..(1 << vs.len()) {
                let pick: Vec<IndexVector> =
                    vs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| v.clone()).collect();
                let got = find_transferral(&pick);
                assert_eq!(got.is_some(), brute_has_transferral(&pick), "{pick:?}");
                if let Some(t) = got {
                    assert!(t.i < t.j);
                    assert_eq!(t.s.transferral_to(&t.t), Some((t.i, t.j)));
                    assert!(pick.contains(&t.s) && pick.contains(&t.t));
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn merges_are_bounded(n in 8usize..16, k in 2usize..5, seed in any::<u64>()) {
            let g = crate::graph_core::fixtures::random_graph(n, 0.6, seed);
            let base = n / k;
            let mut sizes = vec![base; k];
            sizes[k - 1] += n - base * k;
            let p = Partition::new(n, blocks(&sizes), vec![]).unwrap();
            let log = merge_closed_parts(&g, &p, 3, ratio(1, 20), RobustMode::Certificate).unwrap();
            prop_assert!(log.steps.len() < k);
            prop_assert_eq!(log.partition.k(), k - log.steps.len());
        }

        #[test]
        fn certificates_imply_exact_robustness(n in 6usize..14, seed in any::<u64>(), mu_num in 0i64..3) {
            let g = crate::graph_core::fixtures::random_graph(n, 0.75, seed);
            let p = Partition::new(n, blocks(&[n / 2, n - n / 2]), vec![]).unwrap();
            let mu = ratio(mu_num, n as i64);
            let cert = robust_vectors(&g, &p, 3, mu, RobustMode::Certificate).unwrap();
            let exact = robust_vectors(&g, &p, 3, mu, RobustMode::ExactSmall).unwrap();
            for v in &cert.vectors {
                prop_assert!(exact.contains(v));
            }
        }
    }
}
