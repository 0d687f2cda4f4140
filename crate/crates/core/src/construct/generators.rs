//! Seeded generators for the extremal constructions. Each returns the
//! graph plus a manifest of claims for the verifiers to check; nothing a
//! generator says about its own output is trusted.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::sub_seed;
use crate::error::{Error, Result};
use crate::graph_core::fixtures::blocks;
use crate::graph_core::Graph;
use crate::rational::{ceil_times, floor_times, fmt_ratio, ratio, Rational};

use super::formulas::eval_threshold;
use super::manifest::{Claim, ClaimOp, Cmp, ConstructionManifest};

/// Largest order for which α claims are stated as exact-checkable.
pub const ALPHA_EXACT_CAP: usize = 60;

const RETRIES: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub graph: Graph,
    pub manifest: ConstructionManifest,
}

impl Construction {
    pub fn parts(&self) -> &[Vec<usize>] {
        &self.manifest.parts
    }
}

/// Independent sub-seed for component `i` of a construction.
/// α bounds of these constructions hold only with high probability.
fn alpha_claim(ell: usize, at_most: Option<usize>) -> Claim {
    Claim::statistical(ClaimOp::Alpha { ell, at_most })
}

/// Largest integer strictly below `frac * n`.
fn strictly_below(frac: Rational, n: usize) -> usize {
    ceil_times(frac, n).saturating_sub(1)
}

/// Disjoint `K_{n/2+1}` and `K_{n/2-1}`.
pub fn gen_two_cliques(n: usize, r: usize) -> Result<Construction> {
    if n % 2 == 1 || r < 2 || n < 4 {
        return Err(Error::Precondition(format!("need even n >= 4 and r >= 2, got n = {n}, r = {r}")));
    }
    let (a, b) = (n / 2 + 1, n / 2 - 1);
    if a % r == 0 || b % r == 0 {
        return Err(Error::Precondition(format!("r = {r} divides a clique order ({a} or {b})")));
    }
    let graph = Graph::complete(a).disjoint_union(&Graph::complete(b));
    let mut manifest = ConstructionManifest::new("two-cliques").param("n", n).param("r", r);
    manifest.parts = blocks(&[a, b]);
    manifest.claims = vec![
        Claim::exact(ClaimOp::MinDegree { cmp: Cmp::Eq, bound: Rational::from_integer((n / 2 - 2) as i64) }),
        Claim::exact(ClaimOp::NoFactor { r }),
    ];
    Ok(Construction { graph, manifest })
}

/// Random triangle-free process with degree cap `hi`, then a repair pass
/// lifting vertices below `lo`. Returns the graph and its degree range.
fn triangle_free_attempt(n: usize, lo: usize, hi: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::new(n);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    let addable = |g: &Graph, u: usize, v: usize| {
        !g.has_edge(u, v)
            && g.degree(u) < hi
            && g.degree(v) < hi
            && g.neighbors(u).intersection(g.neighbors(v)).next().is_none()
    };
    for (u, v) in pairs {
        if addable(&g, u, v) {
            g.add_edge_unchecked(u, v);
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for &v in &order {
        let mut cands: Vec<usize> = (0..n).filter(|&w| w != v).collect();
        cands.shuffle(rng);
        for w in cands {
            if g.degree(v) >= lo {
                break;
            }
            if addable(&g, v, w) {
                g.add_edge_unchecked(v, w);
            }
        }
    }
    g
}

fn window_violations(g: &Graph, lo: usize, hi: usize) -> usize {
    (0..g.n()).filter(|&v| g.degree(v) < lo || g.degree(v) > hi).count()
}

/// Best effort triangle-free graph with degrees in `[⌈εn/2⌉, ⌊3εn/2⌋]`:
/// the first attempt inside the window, else the attempt with the fewest
/// out-of-window vertices (flagged by `false`).
fn er_like_graph(n: usize, eps: Rational, seed: u64) -> (Graph, bool, usize, usize) {
    let lo = ceil_times(eps / 2, n);
    let hi = floor_times(eps * 3 / 2, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(usize, Graph)> = None;
    for _ in 0..RETRIES {
        let g = triangle_free_attempt(n, lo, hi, &mut rng);
        let bad = window_violations(&g, lo, hi);
        if bad == 0 {
            return (g, true, lo, hi);
        }
        if best.as_ref().is_none_or(|(b, _)| bad < *b) {
            best = Some((bad, g));
        }
    }
    let g = best.map(|(_, g)| g).unwrap_or_else(|| Graph::new(n));
    (g, false, lo, hi)
}

/// Triangle-free graph with every degree in `[εn/2, 3εn/2]` and small α,
/// by the random triangle-free process with retries.
pub fn gen_er_like(n: usize, alpha_target: Rational, eps: Rational, seed: u64) -> Result<Construction> {
    if eps <= ratio(0, 1) || eps >= ratio(2, 3) {
        return Err(Error::Precondition(format!("eps must lie in (0, 2/3), got {}", fmt_ratio(&eps))));
    }
    let (graph, ok, lo, hi) = er_like_graph(n, eps, seed);
    if !ok {
        return Err(Error::GenerationFailed {
            attempts: RETRIES,
            reason: format!(
                "best attempt has {} vertices outside the degree window [{lo},{hi}]",
                window_violations(&graph, lo, hi)
            ),
        });
    }
    let mut manifest = ConstructionManifest::new("er-like")
        .param("n", n)
        .param("alpha", fmt_ratio(&alpha_target))
        .param("eps", fmt_ratio(&eps))
        .param("seed", seed);
    manifest.claims = vec![
        Claim::exact(ClaimOp::KsFree { s: 3, part: None }),
        Claim::exact(ClaimOp::DegreeWindow { lo, hi }),
        alpha_claim(2, Some(strictly_below(alpha_target, n))),
    ];
    Ok(Construction { graph, manifest })
}

/// Random greedy graph keeping only edges whose endpoints are at distance
/// at least `g`, so every cycle is longer than `g`.
fn high_girth_graph(n: usize, girth_min: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(&mut rng);
    for (u, v) in pairs {
        if g.distance_within(u, v, girth_min - 1).is_none() {
            g.add_edge_unchecked(u, v);
        }
    }
    g
}

pub fn gen_high_girth(n: usize, alpha_target: Rational, girth_min: usize, seed: u64) -> Result<Construction> {
    if girth_min < 4 {
        return Err(Error::Precondition(format!("girth bound must be at least 4, got {girth_min}")));
    }
    let graph = high_girth_graph(n, girth_min, seed);
    if graph.girth().is_some_and(|x| x <= girth_min) {
        return Err(Error::GenerationFailed { attempts: 1, reason: "girth check failed".into() });
    }
    let mut manifest = ConstructionManifest::new("high-girth")
        .param("n", n)
        .param("alpha", fmt_ratio(&alpha_target))
        .param("girth-min", girth_min)
        .param("seed", seed);
    manifest.claims = vec![
        Claim::exact(ClaimOp::Girth { greater_than: girth_min }),
        alpha_claim(2, Some(strictly_below(alpha_target, n))),
    ];
    Ok(Construction { graph, manifest })
}

fn unit_vector(dim: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-9 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Sphere graph on two copies of one point set made of antipodal pairs.
/// Same side: `x·y < 2θ - 1` (nearly antipodal). Across: `x·y > θ`.
///
/// For `θ ≤ 1/4` each side is triangle-free, and no `K4` can take two
/// vertices per side: `(x1+x2)·(y1+y2) > 4θ` contradicts
/// `|x1+x2|, |y1+y2| < 2√θ`.
fn sphere_graph(n_half: usize, dim: usize, theta: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(n_half);
    while pts.len() < n_half {
        let x = unit_vector(dim, &mut rng);
        let anti: Vec<f64> = x.iter().map(|c| -c).collect();
        pts.push(x);
        if pts.len() < n_half {
            pts.push(anti);
        }
    }
    let mut g = Graph::new(2 * n_half);
    for i in 0..n_half {
        for j in 0..n_half {
            let d = dot(&pts[i], &pts[j]);
            if i < j && d < 2.0 * theta - 1.0 {
                g.add_edge_unchecked(i, j);
                g.add_edge_unchecked(n_half + i, n_half + j);
            }
            if d > theta {
                g.add_edge_unchecked(i, n_half + j);
            }
        }
    }
    g
}

/// Slack allowed on the cross density (`1/2 - ε` with this ε) at desk scale.
pub const BE_DENSITY_SLACK: (i64, i64) = (3, 20);

pub fn gen_bollobas_erdos(n_half: usize, dim: usize, theta: f64, seed: u64) -> Result<Construction> {
    if n_half < 4 || dim < 2 || !(theta > 0.0 && theta < 0.5) {
        return Err(Error::Precondition("need n_half >= 4, dim >= 2, 0 < theta < 1/2".into()));
    }
    let graph = sphere_graph(n_half, dim, theta, seed);
    let mut manifest = ConstructionManifest::new("bollobas-erdos")
        .param("n-half", n_half)
        .param("dim", dim)
        .param("theta", theta)
        .param("seed", seed);
    manifest.parts = blocks(&[n_half, n_half]);
    manifest.claims = be_claims(0, 1, 2 * n_half);
    Ok(Construction { graph, manifest })
}

fn be_claims(a: usize, b: usize, n: usize) -> Vec<Claim> {
    let slack = ratio(BE_DENSITY_SLACK.0, BE_DENSITY_SLACK.1);
    let mut claims = vec![
        Claim::exact(ClaimOp::KsFree { s: 3, part: Some(a) }),
        Claim::exact(ClaimOp::KsFree { s: 3, part: Some(b) }),
        Claim::statistical(ClaimOp::CrossDensity { a, b, at_least: ratio(1, 2) - slack }),
    ];
    if n <= ALPHA_EXACT_CAP {
        claims.push(alpha_claim(2, None));
    }
    claims
}

/// Part sizes: odd `r = 2ℓ+1`: `n/r - 1, 2n/r + 1` then `2n/r` (ℓ-1 times);
/// even `r = 2ℓ`: `2n/r + 1, 2n/r - 1` then `2n/r` (ℓ-2 times).
pub fn prop_1_6_sizes(r: usize, n: usize) -> Result<Vec<usize>> {
    if r < 3 || !n.is_multiple_of(r) || n / r < 2 {
        return Err(Error::Precondition(format!("need r >= 3 and r | n with n/r >= 2, got r = {r}, n = {n}")));
    }
    let q = n / r;
    let mut sizes = if r % 2 == 1 { vec![q - 1, 2 * q + 1] } else { vec![2 * q + 1, 2 * q - 1] };
    let extra = if r % 2 == 1 { (r - 1) / 2 - 1 } else { r / 2 - 2 };
    sizes.extend(std::iter::repeat_n(2 * q, extra));
    debug_assert_eq!(sizes.iter().sum::<usize>(), n);
    Ok(sizes)
}

/// Default ER degree parameter `μ`; the construction's `ε` is `μ/(2r)`.
pub fn default_prop_1_6_mu() -> Rational {
    ratio(3, 10)
}

/// Complete multipartite skeleton, every part filled with a random
/// triangle-free graph of degree parameter `mu`.
pub fn gen_prop_1_6(r: usize, n: usize, mu: Rational, alpha_target: Rational, seed: u64) -> Result<Construction> {
    let sizes = prop_1_6_sizes(r, n)?;
    let parts = blocks(&sizes);
    let mut graph = Graph::new(n);
    let mut owner = vec![0; n];
    for (i, p) in parts.iter().enumerate() {
        p.iter().for_each(|&v| owner[v] = i);
        let (inner, _, _, _) = er_like_graph(p.len(), mu, sub_seed(seed, i as u64));
        for (a, b) in inner.edges() {
            graph.add_edge_unchecked(p[a], p[b]);
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if owner[u] != owner[v] {
                graph.add_edge_unchecked(u, v);
            }
        }
    }
    let eps = mu / (2 * r as i64);
    let bound = (ratio(1, 1) - ratio(2, r as i64) + eps) * Rational::from_integer(n as i64);
    let free_order = if r % 2 == 1 { r + 2 } else { r + 1 };
    let mut manifest = ConstructionManifest::new("prop-1-6")
        .param("r", r)
        .param("n", n)
        .param("mu", fmt_ratio(&mu))
        .param("eps", fmt_ratio(&eps))
        .param("alpha", fmt_ratio(&alpha_target))
        .param("seed", seed)
        .param("sizes", sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","));
    let mut claims: Vec<Claim> =
        (0..parts.len()).map(|i| Claim::exact(ClaimOp::KsFree { s: 3, part: Some(i) })).collect();
    claims.push(Claim::exact(ClaimOp::KsFree { s: free_order, part: None }));
    claims.push(Claim::statistical(ClaimOp::MinDegree { cmp: Cmp::Ge, bound }));
    claims.push(Claim::exact(ClaimOp::NoFactor { r }));
    if n <= ALPHA_EXACT_CAP {
        claims.push(alpha_claim(2, Some(strictly_below(alpha_target, n))));
    }
    manifest.parts = parts;
    manifest.claims = claims;
    Ok(Construction { graph, manifest })
}

/// Part sizes `4n/(3r-1)` twice, then `6n/(3r-1)` for the remaining `(r-3)/2` parts.
pub fn prop_1_7_sizes(r: usize, n: usize) -> Result<Vec<usize>> {
    if r < 5 || r.is_multiple_of(2) {
        return Err(Error::Precondition(format!("need odd r >= 5, got {r}")));
    }
    let den = 3 * r - 1;
    if !(4 * n).is_multiple_of(den) || !(6 * n).is_multiple_of(den) {
        return Err(Error::Precondition(format!("n = {n} does not give integral parts 4n/{den}, 6n/{den}")));
    }
    let mut sizes = vec![4 * n / den, 4 * n / den];
    sizes.extend(std::iter::repeat_n(6 * n / den, r.div_ceil(2) - 2));
    if sizes.iter().sum::<usize>() != n {
        return Err(Error::Precondition("part sizes do not sum to n".into()));
    }
    Ok(sizes)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Prop17Options {
    pub dim: usize,
    pub theta: f64,
    /// Tolerance `ε` on the minimum-degree claim.
    pub eps: Rational,
    pub alpha_target: Rational,
}

impl Default for Prop17Options {
    fn default() -> Self {
        Prop17Options { dim: 8, theta: 0.1, eps: ratio(1, 10), alpha_target: ratio(1, 2) }
    }
}

/// Sphere graph on `V1 ∪ V2`, high-girth graphs on the remaining parts,
/// complete bipartite between every other pair of parts.
pub fn gen_prop_1_7(r: usize, n: usize, seed: u64, opts: &Prop17Options) -> Result<Construction> {
    let sizes = prop_1_7_sizes(r, n)?;
    let parts = blocks(&sizes);
    let mut graph = Graph::new(n);
    let be = sphere_graph(sizes[0], opts.dim, opts.theta, sub_seed(seed, 0));
    for (a, b) in be.edges() {
        graph.add_edge_unchecked(a, b);
    }
    for (i, p) in parts.iter().enumerate().skip(2) {
        let inner = high_girth_graph(p.len(), 4, sub_seed(seed, i as u64));
        for (a, b) in inner.edges() {
            graph.add_edge_unchecked(p[a], p[b]);
        }
    }
    let owner = |v: usize| parts.iter().position(|p| p.contains(&v)).unwrap_or(0);
    for u in 0..n {
        for v in u + 1..n {
            let (a, b) = (owner(u), owner(v));
            if a != b && !(a < 2 && b < 2) {
                graph.add_edge_unchecked(u, v);
            }
        }
    }
    let threshold = eval_threshold(r as i64)?;
    let bound = (threshold - opts.eps) * Rational::from_integer(n as i64);
    let mut manifest = ConstructionManifest::new("prop-1-7")
        .param("r", r)
        .param("n", n)
        .param("dim", opts.dim)
        .param("theta", opts.theta)
        .param("eps", fmt_ratio(&opts.eps))
        .param("seed", seed)
        .param("sizes", sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","));
    let mut claims = vec![Claim::exact(ClaimOp::KsFree { s: r + 1, part: None })];
    claims.extend((2..parts.len()).map(|i| Claim::exact(ClaimOp::KsFree { s: 3, part: Some(i) })));
    claims.extend(be_claims(0, 1, usize::MAX));
    claims.push(Claim::statistical(ClaimOp::MinDegree { cmp: Cmp::Ge, bound }));
    claims.push(Claim::exact(ClaimOp::KrMeets { r, parts: vec![0, 1], exactly: 3 }));
    claims.push(Claim::exact(ClaimOp::NoFactor { r }));
    manifest.parts = parts;
    manifest.claims = claims;
    Ok(Construction { graph, manifest })
}
