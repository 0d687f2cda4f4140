use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cliquefactor::absorb::{
    build_absorbing_set, find_disjoint_absorbers, is_absorbing_set, is_reachable, merge_closed_parts, robust_vectors,
    sampled_reachability, AbsorbOptions, AbsorbVerdict, CheckBudget, ReachabilityParams, RobustMode,
};
use cliquefactor::acceptance;
use cliquefactor::construct::{
    check_manifest, default_prop_1_6_mu, eval_f_rt, eval_rt_edge_bound, eval_threshold, gen_bollobas_erdos,
    gen_er_like, gen_high_girth, gen_prop_1_6, gen_prop_1_7, gen_two_cliques, CheckOptions, ClaimStatus, Construction,
    ConstructionManifest, Prop17Options,
};
use cliquefactor::graph_core::{
    parse_graph, parse_multigraph, parse_partition, parse_tiling, serialize_graph, serialize_multigraph,
    serialize_partition,
};
use cliquefactor::rational::{fmt_ratio, parse_fraction, ratio, Rational};
use cliquefactor::reduce::{build_reduced, check_fact_degree, regularity_defect, DegreeFact, ReducedConfig};
use cliquefactor::tile::{
    almost_factor_pipeline, complete_with_residual, local_k2k3_tiling, max_k2k3_tiling, K2K3Mode,
};
use cliquefactor::verify::{
    alpha_ell, has_kr_factor_with, is_ks_free, max_kr_tiling, min_degree, verify_tiling, AlphaOptions, FactorOptions,
    Host, TilingOptions,
};
use cliquefactor::{Graph, Multigraph2, Partition};

#[derive(Parser, Debug)]
#[command(name = "cliquefactor", version, about = "Clique factors, tilings and absorbers on concrete graphs")]
struct Cli {
    /// Worker count; runs are sequential, so any value gives the same report.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Generate a construction and its claim manifest.
    Gen(GenArgs),
    /// Verify a property of a graph.
    Check(CheckArgs),
    /// Build the reduced multigraph of a clustered graph.
    Reduce(ReduceArgs),
    /// Tile a reduced multigraph, or run the almost-factor pipeline on a graph.
    Tile(TileArgs),
    /// Absorbers, reachability, robust vectors and absorbing sets.
    Absorb {
        #[command(subcommand)]
        verb: AbsorbCmd,
    },
    /// Evaluate closed-form thresholds.
    Bound {
        #[command(subcommand)]
        what: BoundCmd,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Run only this criterion (1-based).
        #[arg(long)]
        only: Option<usize>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GenKind {
    TwoCliques,
    Er,
    HighGirth,
    Be,
    Prop16,
    Prop17,
}

fn frac(s: &str) -> Result<Rational, String> {
    parse_fraction(s).map_err(|e| e.to_string())
}

/// A 1-indexed vertex, stored 0-indexed.
fn vertex(s: &str) -> Result<usize, String> {
    match s.trim().parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v - 1),
        _ => Err(format!("not a 1-indexed vertex: {s:?}")),
    }
}

#[derive(Args, Debug)]
struct GenArgs {
    kind: GenKind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_parser = frac)]
    mu: Option<Rational>,
    #[arg(long, value_parser = frac)]
    alpha: Option<Rational>,
    #[arg(long, value_parser = frac)]
    eps: Option<Rational>,
    #[arg(long)]
    girth: Option<usize>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    theta: Option<f64>,
    /// Write the graph here instead of into the report.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the manifest here.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CheckKind {
    Factor,
    KsFree,
    Alpha,
    MinDegree,
    Manifest,
    Tiling,
    MaxTiling,
}

#[derive(Args, Debug)]
struct CheckArgs {
    what: CheckKind,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long)]
    manifest: Option<PathBuf>,
    #[arg(long)]
    tiling: Option<PathBuf>,
    /// Search-node budget for factor searches.
    #[arg(long)]
    budget: Option<u64>,
    /// Lift the size caps of the exponential searches.
    #[arg(long)]
    force: bool,
}

#[derive(Args, Debug)]
struct ConfigArgs {
    #[arg(long, value_parser = frac, default_value = "1/20")]
    beta: Rational,
    #[arg(long, value_parser = frac, default_value = "1/20")]
    eps: Rational,
    #[arg(long, value_parser = frac, default_value = "3/10")]
    mu: Rational,
}

impl ConfigArgs {
    fn cfg(&self) -> ReducedConfig {
        ReducedConfig::new(self.beta, self.eps, self.mu)
    }

    fn pairs(&self) -> Vec<(&'static str, String)> {
        vec![("beta", fmt_ratio(&self.beta)), ("eps", fmt_ratio(&self.eps)), ("mu", fmt_ratio(&self.mu))]
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FactKind {
    Multi,
    Simple,
    Both,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    partition: PathBuf,
    #[command(flatten)]
    config: ConfigArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    fact: Option<FactKind>,
    /// Two 1-indexed clusters whose regularity defect to estimate.
    #[arg(long, value_delimiter = ',', value_parser = vertex)]
    defect: Option<Vec<usize>>,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ModeArg {
    Exact,
    Local,
    Auto,
}

#[derive(Args, Debug)]
struct TileArgs {
    /// Tile this reduced multigraph by double edges and triangles.
    #[arg(long, conflicts_with_all = ["graph", "partition"])]
    reduced: Option<PathBuf>,
    #[arg(long, requires = "partition")]
    graph: Option<PathBuf>,
    #[arg(long)]
    partition: Option<PathBuf>,
    #[arg(long)]
    r: Option<usize>,
    #[command(flatten)]
    config: ConfigArgs,
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeArg,
    #[arg(long)]
    seed: Option<u64>,
    /// Finish the leftover vertices with the exact solver.
    #[arg(long)]
    residual: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RobustArg {
    Certificate,
    ExactSmall,
}

#[derive(Subcommand, Debug)]
enum AbsorbCmd {
    /// Disjoint absorbers for a target r-set.
    Absorbers {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long, required = true, value_delimiter = ',', value_parser = vertex)]
        target: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = 1)]
        want: usize,
    },
    /// Connector between two vertices, tested against forbidden sets.
    Reach {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Robust index vectors, transferrals and part merging.
    Lattice {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long, value_parser = frac, default_value = "1/25")]
        mu: Rational,
        #[arg(long, value_enum, default_value = "certificate")]
        mode: RobustArg,
        /// Merge parts along transferrals until none remains.
        #[arg(long)]
        merge: bool,
    },
    /// Assemble an absorbing set.
    Build {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long, value_parser = frac)]
        gamma: Rational,
        #[arg(long, value_parser = frac)]
        xi: Rational,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_parser = frac, default_value = "1/20")]
        beta1: Rational,
        #[arg(long, value_parser = frac, default_value = "1/5")]
        gamma1: Rational,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 32)]
        target_sets: usize,
    },
    /// Check the absorbing property of a vertex set.
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long, required = true, value_delimiter = ',', value_parser = vertex)]
        set: Vec<usize>,
        #[arg(long, value_parser = frac)]
        xi: Rational,
        #[arg(long, default_value_t = 100_000)]
        limit: u64,
        #[arg(long, default_value_t = 2_000)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
enum BoundCmd {
    FRt {
        #[arg(long)]
        s: i64,
    },
    Threshold {
        #[arg(long)]
        r: i64,
    },
    RtEdge {
        #[arg(long)]
        ell: i64,
        #[arg(long)]
        n: i64,
    },
}

/// Usage and IO problems; both exit with status 1.
#[derive(Debug)]
struct Fail(String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(e.to_string())
    }
}

type Out = Result<Report, Fail>;

/// `key: value` lines, opened by the command and its effective config.
struct Report {
    lines: Vec<String>,
    refuted: bool,
}

impl Report {
    fn new(command: &str, config: &[(&str, String)]) -> Self {
        let mut lines = vec![format!("command: {command}")];
        lines.extend(config.iter().map(|(k, v)| format!("config.{k}: {v}")));
        Report { lines, refuted: false }
    }

    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        self.lines.push(format!("{key}: {value}"));
    }

    fn block(&mut self, text: &str) {
        self.lines.extend(text.lines().map(str::to_string));
    }

    fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Fail> {
    fs::write(path, text).map_err(|e| Fail(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Fail> {
    parse_graph(&read(path)?).map_err(|e| Fail(format!("{}: {e}", path.display())))
}

fn load_partition(path: &Path) -> Result<Partition, Fail> {
    parse_partition(&read(path)?).map_err(|e| Fail(format!("{}: {e}", path.display())))
}

fn load_multigraph(path: &Path) -> Result<Multigraph2, Fail> {
    parse_multigraph(&read(path)?).map_err(|e| Fail(format!("{}: {e}", path.display())))
}

fn need<T>(v: Option<T>, flag: &str, what: &str) -> Result<T, Fail> {
    v.ok_or_else(|| Fail(format!("{what} needs --{flag}")))
}

fn tag<E: ValueEnum>(e: E) -> String {
    e.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

fn one_indexed(vs: &[usize]) -> String {
    vs.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn show_path(p: &Option<PathBuf>) -> String {
    p.as_ref().map(|p| p.display().to_string()).unwrap_or_else(|| "-".into())
}

fn gen(a: &GenArgs) -> Out {
    let seed = || need(a.seed, "seed", "randomized generation");
    let n = || need(a.n, "n", "this generator");
    let r = || need(a.r, "r", "this generator");
    let alpha = a.alpha.unwrap_or(ratio(1, 2));
    let c: Construction = match a.kind {
        GenKind::TwoCliques => gen_two_cliques(n()?, r()?)?,
        GenKind::Er => gen_er_like(n()?, alpha, a.eps.unwrap_or(ratio(3, 10)), seed()?)?,
        GenKind::HighGirth => gen_high_girth(n()?, alpha, a.girth.unwrap_or(4), seed()?)?,
        GenKind::Be => gen_bollobas_erdos(need(a.n, "n", "be (half size)")?, a.dim.unwrap_or(8), a.theta.unwrap_or(0.1), seed()?)?,
        GenKind::Prop16 => gen_prop_1_6(r()?, n()?, a.mu.unwrap_or_else(default_prop_1_6_mu), alpha, seed()?)?,
        GenKind::Prop17 => {
            let mut opts = Prop17Options::default();
            opts.dim = a.dim.unwrap_or(opts.dim);
            opts.theta = a.theta.unwrap_or(opts.theta);
            opts.eps = a.eps.unwrap_or(opts.eps);
            opts.alpha_target = alpha;
            gen_prop_1_7(r()?, n()?, seed()?, &opts)?
        }
    };
    let kind = tag(a.kind);
    let mut config: Vec<(&str, String)> = Vec::new();
    let opt = |v: Option<String>| v.unwrap_or_else(|| "default".into());
    config.push(("n", opt(a.n.map(|v| v.to_string()))));
    config.push(("r", opt(a.r.map(|v| v.to_string()))));
    config.push(("seed", opt(a.seed.map(|v| v.to_string()))));
    config.push(("mu", opt(a.mu.map(|v| fmt_ratio(&v)))));
    config.push(("alpha", opt(a.alpha.map(|v| fmt_ratio(&v)))));
    config.push(("eps", opt(a.eps.map(|v| fmt_ratio(&v)))));
    config.push(("girth", opt(a.girth.map(|v| v.to_string()))));
    config.push(("dim", opt(a.dim.map(|v| v.to_string()))));
    config.push(("theta", opt(a.theta.map(|v| v.to_string()))));
    config.push(("out", show_path(&a.out)));
    config.push(("manifest", show_path(&a.manifest)));
    let mut rep = Report::new(&format!("gen {kind}"), &config);
    rep.kv("n", c.graph.n());
    rep.kv("edges", c.graph.num_edges());
    rep.kv("min-degree", min_degree(&c.graph));
    let manifest = c.manifest.to_text();
    for line in manifest.lines() {
        rep.kv("manifest", line);
    }
    if let Some(p) = &a.manifest {
        write(p, &manifest)?;
    }
    let graph = serialize_graph(&c.graph);
    match &a.out {
        Some(p) => write(p, &graph)?,
        None => rep.block(&graph),
    }
    Ok(rep)
}

fn check(a: &CheckArgs) -> Out {
    let g = load_graph(&a.graph)?;
    let what = tag(a.what);
    let mut config = vec![("graph", a.graph.display().to_string())];
    for (k, v) in [("r", a.r), ("s", a.s), ("ell", a.ell)] {
        if let Some(v) = v {
            config.push((k, v.to_string()));
        }
    }
    if let Some(b) = a.budget {
        config.push(("budget", b.to_string()));
    }
    if a.force {
        config.push(("force", "true".into()));
    }
    let mut rep = Report::new(&format!("check {what}"), &config);
    rep.kv("n", g.n());
    match a.what {
        CheckKind::Factor => {
            let cert = has_kr_factor_with(&g, need(a.r, "r", "check factor")?, &FactorOptions { max_nodes: a.budget });
            rep.block(&cert.to_string());
        }
        CheckKind::KsFree => {
            let (free, w) = is_ks_free(&g, need(a.s, "s", "check ks-free")?);
            rep.kv("ks-free", free);
            if let Some(w) = w {
                rep.kv("witness", one_indexed(&w));
            }
        }
        CheckKind::Alpha => {
            let (value, set) = alpha_ell(&g, need(a.ell, "ell", "check alpha")?, &AlphaOptions { force: a.force, ..AlphaOptions::default() })?;
            rep.kv("alpha", value);
            rep.kv("witness", one_indexed(&set));
        }
        CheckKind::MinDegree => rep.kv("min-degree", min_degree(&g)),
        CheckKind::Manifest => {
            let path = need(a.manifest.as_ref(), "manifest", "check manifest")?;
            let m = ConstructionManifest::parse(&read(path)?)?;
            let results = check_manifest(&g, &m, &CheckOptions::default())?;
            for res in &results {
                rep.lines.push(res.to_string());
            }
            let failed = results.iter().filter(|r| r.status == ClaimStatus::Fails).count();
            rep.kv("failed", failed);
            rep.refuted = failed > 0;
        }
        CheckKind::Tiling => {
            let t = parse_tiling(&read(need(a.tiling.as_ref(), "tiling", "check tiling")?)?, g.n())?;
            let ok = verify_tiling(&t, Host::Graph(&g));
            rep.kv("placements", t.len());
            rep.kv("uncovered", t.uncovered(g.n()).len());
            rep.kv("valid", ok);
            rep.refuted = !ok;
        }
        CheckKind::MaxTiling => {
            let t = max_kr_tiling(&g, need(a.r, "r", "check max-tiling")?, &TilingOptions { force: a.force, max_nodes: a.budget, ..TilingOptions::default() })?;
            rep.kv("placements", t.len());
            rep.kv("uncovered", t.uncovered(g.n()).len());
            rep.block(&t.to_text());
        }
    }
    Ok(rep)
}

fn reduce(a: &ReduceArgs) -> Out {
    let g = load_graph(&a.graph)?;
    let p = load_partition(&a.partition)?;
    let cfg = a.config.cfg();
    let mut config = vec![("graph", a.graph.display().to_string()), ("partition", a.partition.display().to_string())];
    config.extend(a.config.pairs());
    config.push(("out", show_path(&a.out)));
    let mut rep = Report::new("reduce", &config);
    let r = build_reduced(&g, &p, &cfg)?;
    rep.kv("k", r.k());
    rep.kv("double-edges", r.edges().iter().filter(|e| e.2 == 2).count());
    rep.kv("single-edges", r.edges().iter().filter(|e| e.2 == 1).count());
    rep.kv("min-weighted-degree", r.min_weighted_degree());
    let text = serialize_multigraph(&r);
    match &a.out {
        Some(path) => write(path, &text)?,
        None => rep.block(&text),
    }
    let facts: &[DegreeFact] = match a.fact {
        None => &[],
        Some(FactKind::Multi) => &[DegreeFact::Multi],
        Some(FactKind::Simple) => &[DegreeFact::Simple],
        Some(FactKind::Both) => &[DegreeFact::Multi, DegreeFact::Simple],
    };
    for &which in facts {
        let fr = check_fact_degree(&r, &cfg, which);
        rep.block(&fr.to_string());
        rep.refuted |= !fr.passes();
    }
    if let Some(pair) = &a.defect {
        let [i, j] = pair[..] else { return Err(Fail("--defect takes two cluster indices".into())) };
        if i >= p.k() || j >= p.k() || i == j {
            return Err(Fail(format!("--defect clusters must be distinct and in 1..={}", p.k())));
        }
        let seed = need(a.seed, "seed", "sampled defect estimation")?;
        let d = regularity_defect(&g, p.cluster(i), p.cluster(j), cfg.eps, a.samples, seed)?;
        rep.kv("defect-pair", format!("{},{}", i + 1, j + 1));
        rep.kv("defect", fmt_ratio(&d.defect));
        rep.kv("defect-exact", d.exhaustive);
        rep.kv("defect-subsets", d.subsets_examined);
        rep.kv("defect-witness-x", one_indexed(&d.witness.0));
        rep.kv("defect-witness-y", one_indexed(&d.witness.1));
        rep.kv("defect-regular", d.defect <= cfg.eps);
    }
    Ok(rep)
}

fn tile(a: &TileArgs) -> Out {
    let seed_for = |mode: ModeArg| -> Result<Option<u64>, Fail> {
        match mode {
            ModeArg::Exact => Ok(a.seed),
            _ => need(a.seed, "seed", "local tiling").map(Some),
        }
    };
    let seed = seed_for(a.mode)?;
    let mut config: Vec<(&str, String)> = vec![("mode", tag(a.mode))];
    if let Some(s) = seed {
        config.push(("seed", s.to_string()));
    }
    config.extend(a.config.pairs());
    if let Some(path) = &a.reduced {
        config.insert(0, ("reduced", path.display().to_string()));
        let r = load_multigraph(path)?;
        let report = match a.mode {
            ModeArg::Exact => max_k2k3_tiling(&r)?,
            ModeArg::Local => local_k2k3_tiling(&r, seed.unwrap_or(0)),
            ModeArg::Auto if r.k() > cliquefactor::tile::k2k3::EXACT_CAP => local_k2k3_tiling(&r, seed.unwrap_or(0)),
            ModeArg::Auto => max_k2k3_tiling(&r)?,
        };
        let mut rep = Report::new("tile reduced", &config);
        rep.block(&report.to_string());
        rep.lines.push(cliquefactor::tile::k2k3::bound_line(&report, a.config.mu));
        if let Some(out) = &a.out {
            write(out, &report.tiling.to_text())?;
        }
        return Ok(rep);
    }
    let gpath = need(a.graph.as_ref(), "graph", "the pipeline (or pass --reduced)")?;
    let ppath = need(a.partition.as_ref(), "partition", "the pipeline")?;
    let r = need(a.r, "r", "the pipeline")?;
    let g = load_graph(gpath)?;
    let p = load_partition(ppath)?;
    config.splice(0..0, [("graph", gpath.display().to_string()), ("partition", ppath.display().to_string()), ("r", r.to_string())]);
    config.push(("residual", a.residual.to_string()));
    let mode = match a.mode {
        ModeArg::Exact => K2K3Mode::Exact,
        ModeArg::Local => K2K3Mode::Local { seed: seed.unwrap_or(0) },
        ModeArg::Auto => K2K3Mode::Auto { seed: seed.unwrap_or(0) },
    };
    let res = almost_factor_pipeline(&g, &p, &a.config.cfg(), r, mode)?;
    let mut rep = Report::new("tile pipeline", &config);
    let mut final_tiling = res.tiling.clone();
    rep.block(&res.to_string());
    if a.residual {
        match complete_with_residual(&g, &res, r, &FactorOptions::default()) {
            Some(full) => {
                rep.kv("residual", "factor-completed");
                final_tiling = full;
            }
            None => rep.kv("residual", "no-completion"),
        }
        rep.kv("final-placements", final_tiling.len());
        rep.kv("final-uncovered", final_tiling.uncovered(g.n()).len());
    }
    let ok = verify_tiling(&final_tiling, Host::Graph(&g));
    rep.kv("verified", ok);
    rep.refuted = !ok;
    if let Some(out) = &a.out {
        write(out, &final_tiling.to_text())?;
    }
    Ok(rep)
}

fn absorb(verb: &AbsorbCmd) -> Out {
    match verb {
        AbsorbCmd::Absorbers { graph, r, target, t, want } => {
            let g = load_graph(graph)?;
            let mut rep = Report::new(
                "absorb absorbers",
                &[
                    ("graph", graph.display().to_string()),
                    ("r", r.to_string()),
                    ("target", one_indexed(target)),
                    ("t", t.to_string()),
                    ("want", want.to_string()),
                ],
            );
            if target.len() != *r || target.iter().any(|&v| v >= g.n()) {
                return Err(Fail(format!("--target must list {r} vertices in 1..={}", g.n())));
            }
            let found = find_disjoint_absorbers(&g, target, *r, *t, *want);
            rep.kv("found", found.len());
            for a in &found {
                rep.lines.push(format!("{a} verified={}", a.verify(&g, *r)));
            }
            Ok(rep)
        }
        AbsorbCmd::Reach { graph, r, u, v, m, t, samples, seed } => {
            let g = load_graph(graph)?;
            let mut config = vec![
                ("graph", graph.display().to_string()),
                ("r", r.to_string()),
                ("u", u.to_string()),
                ("v", v.to_string()),
                ("m", m.to_string()),
                ("t", t.to_string()),
                ("samples", samples.to_string()),
            ];
            if let Some(s) = seed {
                config.push(("seed", s.to_string()));
            }
            let mut rep = Report::new("absorb reach", &config);
            let (u, v) = (u.checked_sub(1).ok_or(Fail("--u is 1-indexed".into()))?, v.checked_sub(1).ok_or(Fail("--v is 1-indexed".into()))?);
            let params = ReachabilityParams::new(*r, *m, *t)?;
            match is_reachable(&g, u, v, &params, &[])? {
                Some(c) => rep.lines.push(format!("{c} verified={}", c.verify(&g, *r))),
                None => rep.kv("connector", "none"),
            }
            if *m > 0 {
                let seed = need(*seed, "seed", "sampled forbidden sets")?;
                let verdict = sampled_reachability(&g, u, v, &params, *samples, seed)?;
                rep.kv("verdict", &verdict);
            }
            Ok(rep)
        }
        AbsorbCmd::Lattice { graph, partition, r, mu, mode, merge } => {
            let g = load_graph(graph)?;
            let p = load_partition(partition)?;
            let mode = match mode {
                RobustArg::Certificate => RobustMode::Certificate,
                RobustArg::ExactSmall => RobustMode::ExactSmall,
            };
            let mut rep = Report::new(
                "absorb lattice",
                &[
                    ("graph", graph.display().to_string()),
                    ("partition", partition.display().to_string()),
                    ("r", r.to_string()),
                    ("mu", fmt_ratio(mu)),
                    ("mode", mode.tag().into()),
                    ("merge", merge.to_string()),
                ],
            );
            let set = robust_vectors(&g, &p, *r, *mu, mode)?;
            rep.block(&set.to_string());
            match cliquefactor::absorb::find_transferral(&set.vectors) {
                Some(tr) => rep.lines.push(tr.to_string()),
                None => rep.kv("transferral", "none"),
            }
            if *merge {
                let log = merge_closed_parts(&g, &p, *r, *mu, mode)?;
                rep.block(&log.to_string());
                rep.block(&serialize_partition(&log.partition));
            }
            Ok(rep)
        }
        AbsorbCmd::Build { graph, r, gamma, xi, t, seed, beta1, gamma1, samples, target_sets } => {
            let g = load_graph(graph)?;
            let seed = need(*seed, "seed", "absorbing-set assembly")?;
            let rep_config = [
                ("graph", graph.display().to_string()),
                ("r", r.to_string()),
                ("gamma", fmt_ratio(gamma)),
                ("xi", fmt_ratio(xi)),
                ("t", t.to_string()),
                ("seed", seed.to_string()),
                ("beta1", fmt_ratio(beta1)),
                ("gamma1", fmt_ratio(gamma1)),
                ("samples", samples.to_string()),
                ("target-sets", target_sets.to_string()),
            ];
            let mut rep = Report::new("absorb build", &rep_config);
            let opts = AbsorbOptions {
                beta1: *beta1,
                gamma1: *gamma1,
                reach_samples: *samples,
                target_sets: *target_sets,
                ..AbsorbOptions::default()
            };
            match build_absorbing_set(&g, *r, *gamma, *xi, *t, seed, &opts) {
                Ok(asm) => {
                    rep.block(&asm.to_string());
                    let all = asm.absorbers.iter().all(|a| a.verify(&g, *r));
                    rep.kv("absorbers-verified", all);
                    let v = is_absorbing_set(&g, &asm.set, *r, *xi, &CheckBudget { seed, ..CheckBudget::default() })?;
                    rep.kv("absorbing", &v);
                    rep.refuted = !all || matches!(v, AbsorbVerdict::Refuted { .. });
                }
                Err(e @ cliquefactor::Error::Assembly { .. }) => {
                    rep.kv("assembly", e);
                    rep.refuted = true;
                }
                Err(e) => return Err(e.into()),
            }
            Ok(rep)
        }
        AbsorbCmd::Check { graph, r, set, xi, limit, samples, seed } => {
            let g = load_graph(graph)?;
            let mut config = vec![
                ("graph", graph.display().to_string()),
                ("r", r.to_string()),
                ("set", one_indexed(set)),
                ("xi", fmt_ratio(xi)),
                ("limit", limit.to_string()),
                ("samples", samples.to_string()),
            ];
            if let Some(s) = seed {
                config.push(("seed", s.to_string()));
            }
            let mut rep = Report::new("absorb check", &config);
            let budget = CheckBudget { exhaustive_limit: *limit, samples: *samples, seed: seed.unwrap_or(0) };
            let v = is_absorbing_set(&g, set, *r, *xi, &budget)?;
            if matches!(v, AbsorbVerdict::Supported { .. }) && seed.is_none() {
                return Err(Fail("sampled absorbing checks need --seed".into()));
            }
            rep.kv("verdict", v.tag());
            rep.kv("detail", &v);
            rep.refuted = matches!(v, AbsorbVerdict::Refuted { .. });
            Ok(rep)
        }
    }
}

fn bound(what: &BoundCmd) -> Out {
    let (name, config, value) = match what {
        BoundCmd::FRt { s } => ("f-rt", vec![("s", s.to_string())], eval_f_rt(*s)?),
        BoundCmd::Threshold { r } => ("threshold", vec![("r", r.to_string())], eval_threshold(*r)?),
        BoundCmd::RtEdge { ell, n } => {
            ("rt-edge", vec![("ell", ell.to_string()), ("n", n.to_string())], eval_rt_edge_bound(*ell, *n)?)
        }
    };
    let mut rep = Report::new(&format!("bound {name}"), &config);
    rep.kv("value", fmt_ratio(&value));
    Ok(rep)
}

fn selftest(only: Option<usize>) -> Out {
    let ids: Vec<usize> = match only {
        Some(id) if (1..=acceptance::CRITERIA).contains(&id) => vec![id],
        Some(id) => return Err(Fail(format!("--only {id}: must be in 1..={}", acceptance::CRITERIA))),
        None => (1..=acceptance::CRITERIA).collect(),
    };
    let mut rep = Report::new("selftest", &[("only", only.map(|i| i.to_string()).unwrap_or_else(|| "all".into()))]);
    let mut failed = 0;
    for id in ids {
        let res = acceptance::run_criterion(id);
        failed += usize::from(!res.passed);
        rep.lines.push(res.to_string());
    }
    rep.kv("failed", failed);
    rep.refuted = failed > 0;
    Ok(rep)
}

fn run(cli: &Cli) -> Out {
    match &cli.cmd {
        Cmd::Gen(a) => gen(a),
        Cmd::Check(a) => check(a),
        Cmd::Reduce(a) => reduce(a),
        Cmd::Tile(a) => tile(a),
        Cmd::Absorb { verb } => absorb(verb),
        Cmd::Bound { what } => bound(what),
        Cmd::Selftest { only } => selftest(*only),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.jobs == 0 {
        eprintln!("error: --jobs must be at least 1");
        return ExitCode::from(1);
    }
    match run(&cli) {
        Ok(rep) => {
            let text = rep.text();
            print!("{text}");
            if let Some(path) = &cli.report {
                if let Err(Fail(msg)) = write(path, &text) {
                    eprintln!("error: {msg}");
                    return ExitCode::from(1);
                }
            }
            ExitCode::from(if rep.refuted { 2 } else { 0 })
        }
        Err(Fail(msg)) => {
            eprintln!("error: {msg}\n\nFor the flag grammar, try '--help'.");
            ExitCode::from(1)
        }
    }
}
