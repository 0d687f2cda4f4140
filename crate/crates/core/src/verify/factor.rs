//! Exact `K_r`-factor decision and maximum `K_r`-tiling.
//!
//! Both searches run over the clique list of the host as an exact-cover
//! instance: pick the uncovered vertex lying in the fewest live cliques,
//! branch on those cliques, and undo by replaying the killed-clique log.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph_core::cliques::{enumerate_cliques, has_clique_within};
use crate::graph_core::{Graph, Tiling};

#[derive(Clone, Debug, PartialEq, Eq)]
#[derive(Default)]
pub struct FactorOptions {
    /// Search-node budget; exceeding it yields [`FactorOutcome::Timeout`].
    pub max_nodes: Option<u64>,
}


/// Why no factor exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NoFactorWitness {
    /// `r` does not divide `n`.
    Divisibility,
    /// A connected component whose order is not a multiple of `r`.
    ComponentSize { component: Vec<usize> },
    /// A `K_{c+1}`-free set meets every `K_r` in at most `c` vertices, but
    /// is larger than `c * n / r`.
    CliqueFreeExcess { set: Vec<usize>, c: usize },
    /// The complete search found nothing.
    ExhaustedSearch { nodes: u64 },
}

impl NoFactorWitness {
    pub fn tag(&self) -> &'static str {
        match self {
            NoFactorWitness::Divisibility => "divisibility",
            NoFactorWitness::ComponentSize { .. } => "component-size",
            NoFactorWitness::CliqueFreeExcess { .. } => "clique-free-excess",
            NoFactorWitness::ExhaustedSearch { .. } => "exhausted-search",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorOutcome {
    FactorFound(Tiling),
    NoFactor(NoFactorWitness),
    /// Budget exhausted; says nothing about existence.
    Timeout { nodes: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorCertificate {
    pub n: usize,
    pub r: usize,
    pub outcome: FactorOutcome,
}

impl FactorCertificate {
    pub fn is_factor(&self) -> bool {
        matches!(self.outcome, FactorOutcome::FactorFound(_))
    }

    pub fn is_no_factor(&self) -> bool {
        matches!(self.outcome, FactorOutcome::NoFactor(_))
    }

    pub fn tiling(&self) -> Option<&Tiling> {
        match &self.outcome {
            FactorOutcome::FactorFound(t) => Some(t),
            _ => None,
        }
    }

    pub fn outcome_tag(&self) -> &'static str {
        match self.outcome {
            FactorOutcome::FactorFound(_) => "factor-found",
            FactorOutcome::NoFactor(_) => "no-factor",
            FactorOutcome::Timeout { .. } => "timeout",
        }
    }
}

impl fmt::Display for FactorCertificate {
    /// `outcome:` line, then either `factor:` with one placement per line or `witness:`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "outcome: {}", self.outcome_tag())?;
        match &self.outcome {
            FactorOutcome::FactorFound(t) => {
                writeln!(f, "factor:")?;
                write!(f, "{}", t.to_text())
            }
            FactorOutcome::NoFactor(w) => {
                writeln!(f, "witness: {}", w.tag())?;
                match w {
                    NoFactorWitness::ComponentSize { component } => writeln!(f, "component: {}", one_indexed(component)),
                    NoFactorWitness::CliqueFreeExcess { set, c } => {
                        writeln!(f, "clique-free-order: {}", c + 1)?;
                        writeln!(f, "set-size: {}", set.len())?;
                        writeln!(f, "set: {}", one_indexed(set))
                    }
                    NoFactorWitness::ExhaustedSearch { nodes } => writeln!(f, "nodes: {nodes}"),
                    NoFactorWitness::Divisibility => Ok(()),
                }
            }
            FactorOutcome::Timeout { nodes } => writeln!(f, "nodes: {nodes}"),
        }
    }
}

pub(crate) fn one_indexed(vs: &[usize]) -> String {
    vs.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")
}

struct Timeout;

/// Exact-cover state over a fixed clique list.
struct CoverSearch {
    cliques: Vec<Vec<usize>>,
    by_vertex: Vec<Vec<usize>>,
    alive: Vec<bool>,
    live_count: Vec<usize>,
    covered: Vec<bool>,
    chosen: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
}

impl CoverSearch {
    fn new(n: usize, cliques: Vec<Vec<usize>>, max_nodes: Option<u64>) -> Self {
        let mut by_vertex = vec![Vec::new(); n];
        for (id, c) in cliques.iter().enumerate() {
            for &v in c {
                by_vertex[v].push(id);
            }
        }
        let live_count = by_vertex.iter().map(Vec::len).collect();
        CoverSearch {
            alive: vec![true; cliques.len()],
            cliques,
            by_vertex,
            live_count,
            covered: vec![false; n],
            chosen: Vec::new(),
            nodes: 0,
            max_nodes: max_nodes.unwrap_or(u64::MAX),
        }
    }

    fn tick(&mut self) -> std::result::Result<(), Timeout> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            Err(Timeout)
        } else {
            Ok(())
        }
    }

    /// Marks `vertices` covered and kills every live clique touching them.
    fn cover(&mut self, vertices: &[usize]) -> Vec<usize> {
        let mut killed = Vec::new();
        for &u in vertices {
            self.covered[u] = true;
            for idx in 0..self.by_vertex[u].len() {
                let d = self.by_vertex[u][idx];
                if self.alive[d] {
                    self.alive[d] = false;
                    for &w in &self.cliques[d] {
                        self.live_count[w] -= 1;
                    }
                    killed.push(d);
                }
            }
        }
        killed
    }

    fn uncover(&mut self, vertices: &[usize], killed: Vec<usize>) {
        for d in killed.into_iter().rev() {
            self.alive[d] = true;
            for &w in &self.cliques[d] {
                self.live_count[w] += 1;
            }
        }
        for &u in vertices {
            self.covered[u] = false;
        }
    }

    fn live_cliques_of(&self, v: usize) -> Vec<usize> {
        self.by_vertex[v].iter().copied().filter(|&c| self.alive[c]).collect()
    }

    /// Uncovered vertex with the fewest live cliques (ties: smallest index).
    fn pick(&self, skip_dead: bool) -> Option<usize> {
        (0..self.covered.len())
            .filter(|&v| !self.covered[v] && (!skip_dead || self.live_count[v] > 0))
            .min_by_key(|&v| (self.live_count[v], v))
    }

    fn solve_exact(&mut self) -> std::result::Result<bool, Timeout> {
        self.tick()?;
        let Some(v) = self.pick(false) else {
            return Ok(true);
        };
        if self.live_count[v] == 0 {
            return Ok(false);
        }
        for c in self.live_cliques_of(v) {
            let verts = self.cliques[c].clone();
            let killed = self.cover(&verts);
            self.chosen.push(c);
            if self.solve_exact()? {
                return Ok(true);
            }
            self.chosen.pop();
            self.uncover(&verts, killed);
        }
        Ok(false)
    }

    fn coverable(&self) -> usize {
        (0..self.covered.len()).filter(|&v| !self.covered[v] && self.live_count[v] > 0).count()
    }

    fn solve_max(&mut self, r: usize, best: &mut Vec<usize>) -> std::result::Result<(), Timeout> {
        self.tick()?;
        if self.chosen.len() + self.coverable() / r <= best.len() {
            return Ok(());
        }
        let Some(v) = self.pick(true) else {
            if self.chosen.len() > best.len() {
                *best = self.chosen.clone();
            }
            return Ok(());
        };
        for c in self.live_cliques_of(v) {
            let verts = self.cliques[c].clone();
            let killed = self.cover(&verts);
            self.chosen.push(c);
            self.solve_max(r, best)?;
            self.chosen.pop();
            self.uncover(&verts, killed);
        }
        // leave v uncovered
        let killed = self.cover(&[v]);
        self.solve_max(r, best)?;
        self.uncover(&[v], killed);
        Ok(())
    }

    fn chosen_cliques(&self, ids: &[usize]) -> Vec<Vec<usize>> {
        ids.iter().map(|&c| self.cliques[c].clone()).collect()
    }
}

/// Greedy search for a `K_{c+1}`-free set `S` with `|S| * r > c * n`, which
/// rules out a `K_r`-factor since every `K_r` meets `S` in at most `c` vertices.
pub fn clique_free_excess(g: &Graph, r: usize) -> Option<(Vec<usize>, usize)> {
    let n = g.n();
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (g.degree(v), v));
    let mut by_degree_desc = by_degree.clone();
    by_degree_desc.reverse();
    for c in 1..r {
        for order in [&by_degree, &by_degree_desc] {
            let mut set = g.empty_set();
            let mut members = Vec::new();
            for &u in order.iter() {
                let mut inside = g.neighbors(u).clone();
                inside.intersect_with(&set);
                if !has_clique_within(g, &inside, c) {
                    set.insert(u);
                    members.push(u);
                }
            }
            if members.len() * r > c * n {
                members.sort_unstable();
                return Some((members, c));
            }
        }
    }
    None
}

/// Exact `K_r`-factor decision with default options.
pub fn has_kr_factor(g: &Graph, r: usize) -> FactorCertificate {
    has_kr_factor_with(g, r, &FactorOptions::default())
}

pub fn has_kr_factor_with(g: &Graph, r: usize, opts: &FactorOptions) -> FactorCertificate {
    let n = g.n();
    let done = |outcome| FactorCertificate { n, r, outcome };
    if r == 0 {
        return done(FactorOutcome::NoFactor(NoFactorWitness::Divisibility));
    }
    if n == 0 {
        return done(FactorOutcome::FactorFound(Tiling::new()));
    }
    if !n.is_multiple_of(r) {
        return done(FactorOutcome::NoFactor(NoFactorWitness::Divisibility));
    }
    let comps = g.components();
    if comps.len() > 1 {
        if let Some(bad) = comps.iter().find(|c| c.len() % r != 0) {
            return done(FactorOutcome::NoFactor(NoFactorWitness::ComponentSize { component: bad.clone() }));
        }
    }
    let mut tiling = Tiling::new();
    let mut nodes_left = opts.max_nodes;
    let mut total_nodes = 0;
    for comp in &comps {
        let sub = g.induced(comp);
        let relabel = |vs: Vec<usize>| -> Vec<usize> { vs.into_iter().map(|v| comp[v]).collect() };
        if let Some((set, c)) = clique_free_excess(&sub, r) {
            return done(FactorOutcome::NoFactor(NoFactorWitness::CliqueFreeExcess { set: relabel(set), c }));
        }
        let mut search = CoverSearch::new(sub.n(), enumerate_cliques(&sub, r, None), nodes_left);
        let result = search.solve_exact();
        total_nodes += search.nodes;
        if let Some(left) = nodes_left.as_mut() {
            *left = left.saturating_sub(search.nodes);
        }
        match result {
            Err(Timeout) => return done(FactorOutcome::Timeout { nodes: total_nodes }),
            Ok(false) => return done(FactorOutcome::NoFactor(NoFactorWitness::ExhaustedSearch { nodes: total_nodes })),
            Ok(true) => {
                for c in search.chosen_cliques(&search.chosen) {
                    tiling.push(crate::graph_core::Placement::clique(relabel(c)));
                }
            }
        }
    }
    done(FactorOutcome::FactorFound(tiling))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingOptions {
    pub cap: usize,
    pub force: bool,
    pub max_nodes: Option<u64>,
}

impl Default for TilingOptions {
    fn default() -> Self {
        TilingOptions { cap: 60, force: false, max_nodes: None }
    }
}

/// A maximum-cardinality `K_r`-tiling by branch and bound.
pub fn max_kr_tiling(g: &Graph, r: usize, opts: &TilingOptions) -> Result<Tiling> {
    if r == 0 {
        return Err(Error::Precondition("r must be positive".into()));
    }
    if g.n() > opts.cap && !opts.force {
        return Err(Error::InstanceTooLarge { n: g.n(), cap: opts.cap });
    }
    let mut search = CoverSearch::new(g.n(), enumerate_cliques(g, r, None), opts.max_nodes);
    let mut best = Vec::new();
    if search.solve_max(r, &mut best).is_err() {
        return Err(Error::Precondition(format!("search budget of {} nodes exhausted", search.max_nodes)));
    }
    Ok(Tiling::from_cliques(search.chosen_cliques(&best)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::fixtures::{complete_multipartite, cycle};

    fn two_cliques(a: usize, b: usize) -> Graph {
        Graph::complete(a).disjoint_union(&Graph::complete(b))
    }

    #[test]
    fn factor_examples() {
        assert!(has_kr_factor(&Graph::complete(4), 4).is_factor());
        let mut k4_minus = Graph::complete(4);
        k4_minus.remove_edge(0, 1);
        assert!(has_kr_factor(&k4_minus, 4).is_no_factor());
        let cert = has_kr_factor(&two_cliques(7, 5), 4);
        assert!(cert.is_no_factor());
        assert_eq!(cert.outcome, FactorOutcome::NoFactor(NoFactorWitness::ComponentSize { component: (0..7).collect() }));
        let k222 = complete_multipartite(&[2, 2, 2]);
        let cert = has_kr_factor(&k222, 3);
        assert_eq!(cert.tiling().unwrap().len(), 2);
    }

    #[test]
    fn divisibility_fast_fail() {
        let cert = has_kr_factor(&Graph::complete(7), 3);
        assert_eq!(cert.outcome, FactorOutcome::NoFactor(NoFactorWitness::Divisibility));
    }

    #[test]
    fn clique_free_excess_catches_counting_obstruction() {
        // K_{1,3} plus nothing: the independent leaves exceed n/r for r = 2.
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let cert = has_kr_factor(&star, 2);
        assert!(matches!(cert.outcome, FactorOutcome::NoFactor(NoFactorWitness::CliqueFreeExcess { c: 1, .. })));
    }

    #[test]
    fn timeout_is_distinct() {
        let g = Graph::complete(12);
        let cert = has_kr_factor_with(&g, 3, &FactorOptions { max_nodes: Some(2) });
        assert!(matches!(cert.outcome, FactorOutcome::Timeout { .. }));
        assert_eq!(cert.outcome_tag(), "timeout");
    }

    #[test]
    fn max_tiling_examples() {
        let opts = TilingOptions::default();
        assert!(max_kr_tiling(&cycle(5), 3, &opts).unwrap().is_empty());
        let t = max_kr_tiling(&two_cliques(7, 5), 4, &opts).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.uncovered(12).len(), 4);
        let t = max_kr_tiling(&Graph::complete(9), 3, &opts).unwrap();
        assert_eq!(t.len(), 3);
        assert!(t.uncovered(9).is_empty());
        let big = Graph::new(61);
        assert!(matches!(max_kr_tiling(&big, 3, &opts), Err(Error::InstanceTooLarge { .. })));
    }

    #[test]
    fn certificate_text() {
        let text = has_kr_factor(&Graph::complete(4), 2).to_string();
        assert!(text.starts_with("outcome: factor-found\nfactor:\nKr 1 2\nKr 3 4\n"), "{text}");
    }
}
