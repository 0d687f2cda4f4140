//! Covering single vertices by cliques, assembling an absorbing set, and
//! checking the absorbing property.

use std::fmt;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph_core::cliques::{common_neighborhood_set, find_clique_within};
use crate::graph_core::Graph;
use crate::rational::{floor_times, fmt_ratio, ratio, Rational};
use crate::sub_seed;
use crate::verify::factor::one_indexed;
use crate::verify::has_kr_factor;

use super::absorber::{find_disjoint_absorbers_avoiding, AbsorberRecord};
use super::reach::{reachability_partition, DEFAULT_REACH_SAMPLES};

/// A `K_r` through `v` avoiding `w`: a neighbor `u`, then a `K_{r-2}` in
/// the common neighborhood of `u` and `v`. Neighbors are tried in order.
pub fn cover_vertex(g: &Graph, v: usize, w: &FixedBitSet, r: usize) -> Option<Vec<usize>> {
    if r == 0 || v >= g.n() || w.contains(v) {
        return None;
    }
    if r == 1 {
        return Some(vec![v]);
    }
    let mut free = g.full_set();
    free.difference_with(w);
    let mut nbrs = g.neighbors(v).clone();
    nbrs.intersect_with(&free);
    for u in nbrs.ones() {
        let mut cand = common_neighborhood_set(g, &[u, v]);
        cand.intersect_with(&free);
        if let Some(rest) = find_clique_within(g, &cand, r - 2) {
            let mut k: Vec<usize> = rest;
            k.push(u);
            k.push(v);
            k.sort_unstable();
            return Some(k);
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsorbOptions {
    /// Forbidden-set fraction for the reachability relation.
    pub beta1: Rational,
    /// Minimum fraction of reachable partners to stay out of `B`.
    pub gamma1: Rational,
    pub reach_samples: usize,
    /// Random target `r`-sets drawn in stage 2.
    pub target_sets: usize,
    /// Absorbers kept per target set.
    pub per_set: usize,
}

impl Default for AbsorbOptions {
    fn default() -> Self {
        AbsorbOptions {
            beta1: ratio(1, 20),
            gamma1: ratio(1, 5),
            reach_samples: DEFAULT_REACH_SAMPLES,
            target_sets: 32,
            per_set: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsorbingAssembly {
    pub n: usize,
    pub r: usize,
    pub t: usize,
    pub gamma: Rational,
    pub xi: Rational,
    pub classes: Vec<Vec<usize>>,
    /// Vertices outside every reachability class.
    pub b: Vec<usize>,
    pub target_sets: usize,
    pub absorbers: Vec<AbsorberRecord>,
    pub covers: Vec<Vec<usize>>,
    pub set: Vec<usize>,
    /// `⌊γn⌋`.
    pub size_cap: usize,
}

impl AbsorbingAssembly {
    /// One reachability class and no exceptional vertex.
    pub fn closed(&self) -> bool {
        self.classes.len() == 1 && self.b.is_empty()
    }

    pub fn within_cap(&self) -> bool {
        self.set.len() <= self.size_cap
    }
}

impl fmt::Display for AbsorbingAssembly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n: {}", self.n)?;
        writeln!(f, "r: {}", self.r)?;
        writeln!(f, "t: {}", self.t)?;
        writeln!(f, "gamma: {}", fmt_ratio(&self.gamma))?;
        writeln!(f, "xi: {}", fmt_ratio(&self.xi))?;
        writeln!(f, "classes: {}", self.classes.len())?;
        writeln!(f, "closed: {}", self.closed())?;
        writeln!(f, "b: {}", one_indexed(&self.b))?;
        writeln!(f, "target-sets: {}", self.target_sets)?;
        writeln!(f, "absorbers: {}", self.absorbers.len())?;
        for a in &self.absorbers {
            writeln!(f, "{a}")?;
        }
        for c in &self.covers {
            writeln!(f, "cover {}", one_indexed(c))?;
        }
        writeln!(f, "size: {}", self.set.len())?;
        writeln!(f, "size-cap: {}", self.size_cap)?;
        writeln!(f, "within-cap: {}", self.within_cap())?;
        writeln!(f, "set: {}", one_indexed(&self.set))
    }
}

/// Stage 1 splits `V` into reachability classes and the exceptional set
/// `B`; stage 2 collects disjoint absorbers for random `r`-sets inside the
/// classes; stage 3 covers `B` by disjoint cliques avoiding the absorbers.
pub fn build_absorbing_set(
    g: &Graph,
    r: usize,
    gamma: Rational,
    xi: Rational,
    t: usize,
    seed: u64,
    opts: &AbsorbOptions,
) -> Result<AbsorbingAssembly> {
    let n = g.n();
    let fail = |stage: usize, reason: String| Error::Assembly { stage, reason };
    if r < 2 || t < 1 {
        return Err(Error::Precondition(format!("assembly needs r >= 2 and t >= 1, got r={r} t={t}")));
    }
    let part = reachability_partition(g, r, opts.beta1, opts.gamma1, opts.reach_samples, sub_seed(seed, 0))?;
    let classes = part.clusters().to_vec();
    let b = part.exceptional().to_vec();
    if classes.is_empty() {
        return Err(fail(1, "no vertex has enough reachable partners".into()));
    }

    let size_cap = floor_times(gamma, n);
    let reserve = r * b.len();
    if size_cap < reserve + r * t {
        return Err(fail(2, format!("gamma*n = {size_cap} leaves no room for an absorber of size {} after {reserve} reserved for B", r * t)));
    }
    let room = size_cap - reserve;
    let inner: Vec<usize> = classes.iter().flatten().copied().sorted().collect();
    if inner.len() < r {
        return Err(fail(2, format!("only {} vertices outside B", inner.len())));
    }
    let mut taken = g.empty_set();
    b.iter().for_each(|&x| taken.insert(x));
    let mut absorbers = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, 1));
    for _ in 0..opts.target_sets {
        if absorbers.len() * r * t + r * t > room {
            break;
        }
        let mut s: Vec<usize> = sample(&mut rng, inner.len(), r).into_iter().map(|i| inner[i]).collect();
        s.sort_unstable();
        let left = (room - absorbers.len() * r * t) / (r * t);
        for rec in find_disjoint_absorbers_avoiding(g, &s, r, t, opts.per_set.min(left), &taken) {
            rec.body.iter().for_each(|&x| taken.insert(x));
            absorbers.push(rec);
        }
    }
    if absorbers.is_empty() {
        return Err(fail(2, format!("no absorber found for {} sampled target sets", opts.target_sets)));
    }

    let mut blocked: FixedBitSet = g.empty_set();
    absorbers.iter().flat_map(|a| &a.body).for_each(|&x| blocked.insert(x));
    let mut covers: Vec<Vec<usize>> = Vec::new();
    for &v in &b {
        if blocked.contains(v) {
            continue;
        }
        let k = cover_vertex(g, v, &blocked, r).ok_or_else(|| fail(3, format!("vertex {} uncoverable", v + 1)))?;
        k.iter().for_each(|&x| blocked.insert(x));
        covers.push(k);
    }
    let set: Vec<usize> = blocked.ones().collect();
    Ok(AbsorbingAssembly {
        n,
        r,
        t,
        gamma,
        xi,
        classes,
        b,
        target_sets: opts.target_sets,
        absorbers,
        covers,
        set,
        size_cap,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckBudget {
    /// Enumerate every admissible `U` when there are at most this many.
    pub exhaustive_limit: u64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for CheckBudget {
    fn default() -> Self {
        CheckBudget { exhaustive_limit: 100_000, samples: 2_000, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbsorbVerdict {
    Proven { checked: u64 },
    Supported { sampled: u64 },
    Refuted { u: Vec<usize> },
}

impl AbsorbVerdict {
    pub fn tag(&self) -> &'static str {
        match self {
            AbsorbVerdict::Proven { .. } => "proven",
            AbsorbVerdict::Supported { .. } => "supported",
            AbsorbVerdict::Refuted { .. } => "refuted",
        }
    }
}

impl fmt::Display for AbsorbVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbsorbVerdict::Proven { checked } => write!(f, "proven checked={checked}"),
            AbsorbVerdict::Supported { sampled } => write!(f, "supported sampled={sampled}"),
            AbsorbVerdict::Refuted { u } => write!(f, "refuted u={}", one_indexed(u)),
        }
    }
}

fn binom(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Checks that `G[A ∪ U]` has a `K_r`-factor for every `U ⊆ V \ A` with
/// `|U| ≤ ⌊ξn⌋` and `r | |A ∪ U|`, exhaustively when the count allows.
pub fn is_absorbing_set(g: &Graph, a: &[usize], r: usize, xi: Rational, budget: &CheckBudget) -> Result<AbsorbVerdict> {
    let n = g.n();
    if r == 0 {
        return Err(Error::Precondition("r must be positive".into()));
    }
    if let Some(&v) = a.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    let a: Vec<usize> = a.iter().copied().sorted().dedup().collect();
    let rest: Vec<usize> = (0..n).filter(|v| a.binary_search(v).is_err()).collect();
    let m = floor_times(xi, n).min(rest.len());
    let sizes: Vec<usize> = (0..=m).filter(|k| (a.len() + k).is_multiple_of(r)).collect();
    let works = |u: &[usize]| {
        let mut set: Vec<usize> = a.iter().chain(u).copied().collect();
        set.sort_unstable();
        set.is_empty() || has_kr_factor(&g.induced(&set), r).is_factor()
    };
    let total: u128 = sizes.iter().map(|&k| binom(rest.len(), k)).sum();
    if total <= budget.exhaustive_limit as u128 {
        let mut checked = 0;
        for &k in &sizes {
            for pick in (0..rest.len()).combinations(k) {
                let u: Vec<usize> = pick.into_iter().map(|i| rest[i]).collect();
                checked += 1;
                if !works(&u) {
                    return Ok(AbsorbVerdict::Refuted { u });
                }
            }
        }
        return Ok(AbsorbVerdict::Proven { checked });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for _ in 0..budget.samples {
        let k = sizes[rng.random_range(0..sizes.len())];
        let mut u: Vec<usize> = sample(&mut rng, rest.len(), k).into_iter().map(|i| rest[i]).collect();
        u.sort_unstable();
        if !works(&u) {
            return Ok(AbsorbVerdict::Refuted { u });
        }
    }
    Ok(AbsorbVerdict::Supported { sampled: budget.samples as u64 })
}
