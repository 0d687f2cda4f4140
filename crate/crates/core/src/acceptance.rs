//! The acceptance suite: ten end-to-end criteria, each with a pinned time
//! limit, shared by the integration test target and the `selftest` command.

use std::fmt;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::absorb::{
    build_absorbing_set, find_transferral, is_absorbing_set, robust_vectors, AbsorbOptions, AbsorbVerdict,
    CheckBudget, RobustMode, RobustVectorSet,
};
use crate::construct::{
    check_manifest, default_prop_1_6_mu, eval_f_rt, eval_rt_edge_bound, eval_threshold, gen_bollobas_erdos,
    gen_er_like, gen_prop_1_6, gen_prop_1_7, gen_two_cliques, CheckOptions, Prop17Options,
};
use crate::graph_core::cliques::enumerate_cliques;
use crate::graph_core::fixtures::{blocks, random_graph, random_multigraph_min_degree};
use crate::graph_core::{serialize_graph, Graph, IndexVector, Partition};
use crate::rational::{fmt_ratio, ratio, to_f64, Rational};
use crate::reduce::{pair_density, regularity_defect, ReducedConfig};
use crate::tile::{almost_factor_pipeline, complete_with_residual, local_k2k3_tiling, max_k2k3_tiling, spans_no_tile, K2K3Mode};
use crate::verify::{has_kr_factor, is_ks_free, min_degree, verify_tiling, FactorOptions, Host};

pub const CRITERIA: usize = 10;

/// Wall-clock limits per criterion.
pub const TIME_LIMITS_SECS: [u64; CRITERIA] = [60, 1, 300, 1, 600, 300, 120, 120, 120, 300];

/// Random graphs per clique order in the factor-oracle comparison.
pub const ORACLE_GRAPHS: usize = 1000;
/// Seeds per `(μ, k)` cell in the deficiency check.
pub const DEFICIENCY_SEEDS: u64 = 200;
/// Seed of the Prop 1.7-type instance; chosen so that `K_5`s exist and the
/// "every `K_5`" check is not vacuous.
pub const PROP17_SEED: u64 = 0;
/// Minimum reported cross density of the sphere instance.
pub const BE_CROSS_DENSITY: (i64, i64) = (7, 20);
/// Robustness margin for the transferral criterion.
pub const TRANSFERRAL_MU: (i64, i64) = (1, 25);

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:>2} {}: {} [{:.2}s / {}s]",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        )
    }
}

pub fn name(id: usize) -> &'static str {
    match id {
        1 => "oracle-equivalence",
        2 => "tightness-instance",
        3 => "deficiency-bound",
        4 => "closed-forms",
        5 => "prop17-instance",
        6 => "sphere-instance",
        7 => "absorption-soundness",
        8 => "transferral-pipeline",
        9 => "end-to-end-pipeline",
        10 => "determinism",
        _ => "unknown",
    }
}

/// Runs criterion `id` (1-based) and times it against its limit.
pub fn run_criterion(id: usize) -> CriterionResult {
    assert!((1..=CRITERIA).contains(&id), "criterion {id} out of range");
    let start = Instant::now();
    let (ok, detail) = match id {
        1 => oracle_equivalence(),
        2 => tightness_instance(),
        3 => deficiency_bound(),
        4 => closed_forms(),
        5 => prop17_instance(),
        6 => sphere_instance(),
        7 => absorption_soundness(),
        8 => transferral_pipeline(),
        9 => end_to_end_pipeline(),
        _ => determinism(),
    };
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(TIME_LIMITS_SECS[id - 1]);
    CriterionResult { id, name: name(id), passed: ok && elapsed < limit, detail, elapsed, limit }
}

pub fn run_all() -> Vec<CriterionResult> {
    (1..=CRITERIA).map(run_criterion).collect()
}

/// Tries every partition of `V` into `r`-blocks and checks each block is a
/// clique. No pruning, no shared code with the exact-cover search.
pub fn naive_factor_oracle(g: &Graph, r: usize) -> bool {
    fn rec(g: &Graph, r: usize, left: &[usize]) -> bool {
        let Some((&first, rest)) = left.split_first() else { return true };
        rest.iter().copied().combinations(r - 1).any(|mate| {
            let mut block = mate.clone();
            block.push(first);
            let remaining: Vec<usize> = rest.iter().copied().filter(|v| !mate.contains(v)).collect();
            g.is_clique(&block) && rec(g, r, &remaining)
        })
    }
    r > 0 && g.n().is_multiple_of(r) && rec(g, r, &(0..g.n()).collect::<Vec<_>>())
}

fn oracle_equivalence() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut agree, mut factors) = (0, 0);
    let mut first_bad = None;
    for r in [3, 4] {
        for i in 0..ORACLE_GRAPHS {
            // mostly orders divisible by r, where the question is not trivial
            let n = if rng.random_bool(0.8) { r * rng.random_range(1..=10 / r) } else { rng.random_range(1..=10) };
            let p = rng.random_range(0.4..0.95);
            let g = random_graph(n, p, rng.random());
            let fast = has_kr_factor(&g, r);
            let naive = naive_factor_oracle(&g, r);
            let ok = fast.is_factor() == naive
                && fast.tiling().is_none_or(|t| t.uncovered(n).is_empty() && verify_tiling(t, Host::Graph(&g)));
            if ok {
                agree += 1;
            } else if first_bad.is_none() {
                first_bad = Some(format!(" first-mismatch=r{r}#{i}"));
            }
            factors += naive as usize;
        }
    }
    let total = 2 * ORACLE_GRAPHS;
    (agree == total, format!("{agree}/{total} agree over r=3,4 ({factors} with a factor){}", first_bad.unwrap_or_default()))
}

fn tightness_instance() -> (bool, String) {
    let Ok(c) = gen_two_cliques(12, 4) else { return (false, "generation failed".into()) };
    let delta = min_degree(&c.graph);
    let cert = has_kr_factor(&c.graph, 4);
    let ok = delta == 12 / 2 - 2 && cert.is_no_factor();
    (ok, format!("delta={delta} outcome={}", cert.outcome_tag()))
}

fn deficiency_bound() -> (bool, String) {
    let mut ok = true;
    let mut worst = Vec::new();
    for (mu, cap) in [(ratio(3, 10), 3), (ratio(1, 2), 1)] {
        let mut max_left = 0;
        let mut instances = 0;
        for k in 6..=14usize {
            let need = ((Rational::from_integer(1) + mu) * Rational::from_integer(k as i64)).ceil().to_integer() as usize;
            for seed in 0..DEFICIENCY_SEEDS {
                let Some(r) = random_multigraph_min_degree(k, need, seed * 31 + k as u64) else {
                    ok = false;
                    continue;
                };
                let Ok(rep) = max_k2k3_tiling(&r) else {
                    ok = false;
                    continue;
                };
                instances += 1;
                let left = rep.uncovered.len();
                max_left = max_left.max(left);
                if !(rep.below_inverse_mu(mu) && left <= cap && spans_no_tile(&r, &rep.uncovered)) {
                    ok = false;
                }
            }
        }
        worst.push(format!("mu={} instances={instances} max|B|={max_left} (cap {cap})", fmt_ratio(&mu)));
    }
    (ok, worst.join("; "))
}

fn closed_forms() -> (bool, String) {
    let checks = [
        ("f_rt(5)", eval_f_rt(5), ratio(1, 2)),
        ("f_rt(6)", eval_f_rt(6), ratio(4, 7)),
        ("threshold(5)", eval_threshold(5), ratio(4, 7)),
        ("threshold(7)", eval_threshold(7), ratio(7, 10)),
        ("rt_edge_bound(6,10)", eval_rt_edge_bound(6, 10), ratio(200, 7)),
    ];
    let ok = checks.iter().all(|(_, got, want)| got.as_ref() == Ok(want));
    let detail = checks
        .iter()
        .map(|(label, got, _)| format!("{label}={}", got.as_ref().map(fmt_ratio).unwrap_or_else(|e| e.to_string())))
        .join(" ");
    (ok, detail)
}

fn prop17_instance() -> (bool, String) {
    let (r, n) = (5, 70);
    let opts = Prop17Options::default();
    let Ok(c) = gen_prop_1_7(r, n, PROP17_SEED, &opts) else { return (false, "generation failed".into()) };
    let g = &c.graph;
    let (k6_free, _) = is_ks_free(g, r + 1);
    let inside: Vec<bool> = (0..n).map(|v| c.manifest.parts[0].contains(&v) || c.manifest.parts[1].contains(&v)).collect();
    let k5s = enumerate_cliques(g, r, None);
    let off = k5s.iter().filter(|k| k.iter().filter(|&&v| inside[v]).count() != 3).count();
    let cert = has_kr_factor(g, r);
    let delta = min_degree(g);
    let target = eval_threshold(r as i64).map(|t| to_f64(&t) * n as f64).unwrap_or(f64::NAN);
    let tol = to_f64(&opts.eps) * n as f64;
    let within = (delta as f64 - target).abs() <= tol || delta as f64 >= target;
    let ok = k6_free && !k5s.is_empty() && off == 0 && cert.is_no_factor();
    (
        ok,
        format!(
            "seed={PROP17_SEED} k6-free={k6_free} k5={} off={off} factor={} delta={delta} target={target:.1}±{tol:.1} [tolerance-tagged: {}]",
            k5s.len(),
            cert.outcome_tag(),
            if within { "within" } else { "outside" }
        ),
    )
}

fn sphere_instance() -> (bool, String) {
    let min_density = ratio(BE_CROSS_DENSITY.0, BE_CROSS_DENSITY.1);
    let mut passing = Vec::new();
    let mut best_density = None;
    for seed in 0..20u64 {
        let Ok(c) = gen_bollobas_erdos(30, 8, 0.1, seed) else { continue };
        let (a, b) = (&c.manifest.parts[0], &c.manifest.parts[1]);
        let sides = is_ks_free(&c.graph.induced(a), 3).0 && is_ks_free(&c.graph.induced(b), 3).0;
        let whole = is_ks_free(&c.graph, 4).0;
        if sides && whole {
            passing.push(seed);
            if best_density.is_none() {
                best_density = pair_density(&c.graph, a, b).ok();
            }
        }
    }
    let density = best_density.map(|d| format!("{:.4}", to_f64(&d))).unwrap_or_else(|| "-".into());
    let dense = best_density.is_some_and(|d| d >= min_density);
    (
        !passing.is_empty(),
        format!(
            "passing-seeds={}/20 first={} cross-density={density} >= {}: {dense} [reported]",
            passing.len(),
            passing.first().map(|s| s.to_string()).unwrap_or_else(|| "-".into()),
            fmt_ratio(&min_density)
        ),
    )
}

fn absorption_soundness() -> (bool, String) {
    let g = Graph::complete(20);
    let (r, xi) = (4, ratio(1, 5));
    let asm = match build_absorbing_set(&g, r, ratio(1, 2), xi, 1, 7, &AbsorbOptions::default()) {
        Ok(a) => a,
        Err(e) => return (false, e.to_string()),
    };
    let records_ok = asm.absorbers.iter().all(|a| a.verify(&g, r));
    let verdict = is_absorbing_set(&g, &asm.set, r, xi, &CheckBudget::default());
    let proven = matches!(verdict, Ok(AbsorbVerdict::Proven { .. }));
    let ok = proven && records_ok && asm.set.len() <= 10;
    let verdict = verdict.map(|v| v.to_string()).unwrap_or_else(|e| e.to_string());
    (ok, format!("|A|={} absorbers={} reverified={records_ok} verdict={verdict}", asm.set.len(), asm.absorbers.len()))
}

/// Two `side`-cliques with a complete bipartite bridge between the first
/// `bridge` vertices of each.
pub fn bridged_cliques(side: usize, bridge: usize) -> (Graph, Partition) {
    let mut g = Graph::complete(side).disjoint_union(&Graph::complete(side));
    for a in 0..bridge {
        for b in side..side + bridge {
            g.add_edge(a, b).expect("in range");
        }
    }
    let p = Partition::new(2 * side, blocks(&[side, side]), vec![]).expect("valid blocks");
    (g, p)
}

fn has_type(set: &RobustVectorSet, a: usize, b: usize) -> bool {
    set.contains(&IndexVector(vec![a, b])) || set.contains(&IndexVector(vec![b, a]))
}

fn transferral_pipeline() -> (bool, String) {
    let mu = ratio(TRANSFERRAL_MU.0, TRANSFERRAL_MU.1);
    let (g, p) = bridged_cliques(10, 4);
    let Ok(set) = robust_vectors(&g, &p, 4, mu, RobustMode::Certificate) else { return (false, "robust_vectors failed".into()) };
    let planted = has_type(&set, 2, 2) && has_type(&set, 1, 3) && find_transferral(&set.vectors).is_some();
    let (apart, pa) = (Graph::complete(10).disjoint_union(&Graph::complete(10)), p.clone());
    let none = robust_vectors(&apart, &pa, 4, mu, RobustMode::Certificate)
        .map(|s| find_transferral(&s.vectors).is_none())
        .unwrap_or(false);
    // n = 16 twin, both modes
    let (gs, ps) = bridged_cliques(8, 3);
    let small = (|| {
        let cert = robust_vectors(&gs, &ps, 4, mu, RobustMode::Certificate).ok()?;
        let exact = robust_vectors(&gs, &ps, 4, mu, RobustMode::ExactSmall).ok()?;
        let sound = cert.vectors.iter().all(|v| exact.contains(v));
        Some(sound && has_type(&exact, 2, 2) && has_type(&exact, 1, 3) && find_transferral(&exact.vectors).is_some())
    })()
    .unwrap_or(false);
    let tr = find_transferral(&set.vectors).map(|t| t.to_string()).unwrap_or_else(|| "none".into());
    (
        planted && none && small,
        format!("planted: {} vectors, {tr}; disjoint: none={none}; exact-small n=16 agrees={small}", set.vectors.len()),
    )
}

fn end_to_end_pipeline() -> (bool, String) {
    let r = 4;
    let g = Graph::complete(32);
    let p = Partition::new(32, blocks(&[8, 8, 8, 8]), vec![]).expect("valid blocks");
    let cfg = ReducedConfig::new(ratio(1, 20), ratio(1, 20), ratio(1, 2));
    let res = match almost_factor_pipeline(&g, &p, &cfg, r, K2K3Mode::Auto { seed: 1 }) {
        Ok(x) => x,
        Err(e) => return (false, e.to_string()),
    };
    let Some(full) = complete_with_residual(&g, &res, r, &FactorOptions::default()) else {
        return (false, format!("residual of {} vertices did not factor", res.uncovered.len()));
    };
    let ok = full.uncovered(32).is_empty() && full.len() == 8 && verify_tiling(&full, Host::Graph(&g));
    (
        ok,
        format!(
            "q1={} q2={} pipeline-placements={} residual={} factor-placements={}",
            res.q1_count,
            res.q2_count,
            res.tiling.len(),
            res.uncovered.len(),
            full.len()
        ),
    )
}

/// Report text for every seeded path, for byte comparison across runs.
pub fn seeded_reports(seed: u64) -> Vec<(&'static str, String)> {
    let mut out: Vec<(&'static str, String)> = Vec::new();
    let show = |c: crate::Result<crate::construct::Construction>| match c {
        Ok(c) => format!("{}{}", c.manifest.to_text(), serialize_graph(&c.graph)),
        Err(e) => e.to_string(),
    };
    out.push(("er-like", show(gen_er_like(40, ratio(1, 2), ratio(3, 10), seed))));
    out.push(("sphere", show(gen_bollobas_erdos(20, 8, 0.1, seed))));
    out.push(("prop16", show(gen_prop_1_6(4, 40, default_prop_1_6_mu(), ratio(1, 2), seed))));
    out.push(("prop17", show(gen_prop_1_7(5, 70, seed, &Prop17Options::default()))));
    let checks = gen_prop_1_6(3, 9, default_prop_1_6_mu(), ratio(1, 2), seed).and_then(|c| {
        check_manifest(&c.graph, &c.manifest, &CheckOptions::default())
            .map(|rs| rs.iter().map(|r| r.to_string()).join("\n"))
    });
    out.push(("manifest-check", checks.unwrap_or_else(|e| e.to_string())));
    let multi = random_multigraph_min_degree(18, 24, seed).expect("feasible degree");
    out.push(("local-k2k3", local_k2k3_tiling(&multi, seed).to_string()));
    let g = random_graph(40, 0.5, seed);
    let (a, b): (Vec<usize>, Vec<usize>) = ((0..20).collect(), (20..40).collect());
    out.push((
        "defect",
        regularity_defect(&g, &a, &b, ratio(1, 4), 50, seed).map(|d| format!("{d:?}")).unwrap_or_else(|e| e.to_string()),
    ));
    let asm = build_absorbing_set(
        &Graph::complete(16),
        4,
        ratio(1, 2),
        ratio(1, 4),
        1,
        seed,
        &AbsorbOptions { reach_samples: 20, ..AbsorbOptions::default() },
    );
    out.push(("absorb-build", asm.map(|a| a.to_string()).unwrap_or_else(|e| e.to_string())));
    let budget = CheckBudget { exhaustive_limit: 0, samples: 30, seed };
    out.push((
        "absorb-check",
        is_absorbing_set(&random_graph(20, 0.8, seed), &[0, 1, 2, 3], 4, ratio(1, 4), &budget)
            .map(|v| v.to_string())
            .unwrap_or_else(|e| e.to_string()),
    ));
    out
}

fn determinism() -> (bool, String) {
    let mut differing = Vec::new();
    let mut paths = 0;
    for seed in [3, 11] {
        let (first, second) = (seeded_reports(seed), seeded_reports(seed));
        for ((name, x), (_, y)) in first.iter().zip(&second) {
            paths += 1;
            if x != y {
                differing.push(format!("{name}@{seed}"));
            }
        }
    }
    let ok = differing.is_empty();
    (ok, if ok { format!("{paths} seeded reports byte-identical") } else { format!("differ: {}", differing.join(",")) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naive_oracle_basics() {
        assert!(naive_factor_oracle(&Graph::complete(6), 3));
        assert!(!naive_factor_oracle(&Graph::complete(7), 3));
        assert!(!naive_factor_oracle(&crate::graph_core::fixtures::cycle(6), 3));
        assert!(naive_factor_oracle(&Graph::new(0), 3));
        let two = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert!(naive_factor_oracle(&two, 3));
    }

    #[test]
    fn report_lines_have_a_verdict() {
        let line = run_criterion(4).to_string();
        assert!(line.starts_with("PASS  4 closed-forms:"), "{line}");
    }
}
