//! Almost-perfect `K_r`-tiling: reduce, tile the reduced multigraph, then
//! realize each tile by repeated gadget embeddings inside its clusters.

use std::fmt;

use crate::error::Result;
use crate::graph_core::{Graph, Partition, Placement, Shape, Tiling};
use crate::reduce::{build_reduced, ReducedConfig};
use crate::verify::factor::one_indexed;
use crate::verify::{has_kr_factor_with, FactorOptions, FactorOutcome};

use super::gadgets::{embed_q1, embed_q2, EmbedFailure};
use super::k2k3::{local_k2k3_tiling, max_k2k3_tiling, TilingReport, EXACT_CAP};
use crate::graph_core::Multigraph2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum K2K3Mode {
    Exact,
    Local { seed: u64 },
    /// Exact up to the cap, local beyond it.
    Auto { seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineResult {
    pub reduced: Multigraph2,
    pub reduced_tiling: TilingReport,
    /// `K_r` placements only.
    pub tiling: Tiling,
    pub uncovered: Vec<usize>,
    pub q1_count: usize,
    pub q2_count: usize,
    /// Per reduced tile that stopped on a failed embedding: tile index and failure.
    pub failures: Vec<(usize, EmbedFailure)>,
}

impl fmt::Display for PipelineResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "reduced-k: {}", self.reduced.k())?;
        writeln!(f, "reduced-placements: {}", self.reduced_tiling.tiling.len())?;
        writeln!(f, "reduced-uncovered: {}", self.reduced_tiling.uncovered.len())?;
        writeln!(f, "q1: {}", self.q1_count)?;
        writeln!(f, "q2: {}", self.q2_count)?;
        for (idx, fail) in &self.failures {
            writeln!(f, "stopped: tile {} {}", idx + 1, fail)?;
        }
        writeln!(f, "kr-placements: {}", self.tiling.len())?;
        writeln!(f, "uncovered: {}", self.uncovered.len())?;
        writeln!(f, "uncovered-set: {}", one_indexed(&self.uncovered))?;
        write!(f, "{}", self.tiling.to_text())
    }
}

fn take(pool: &mut Vec<usize>, used: &[usize]) {
    pool.retain(|v| !used.contains(v));
}

pub fn almost_factor_pipeline(g: &Graph, p: &Partition, cfg: &ReducedConfig, r: usize, mode: K2K3Mode) -> Result<PipelineResult> {
    let reduced = build_reduced(g, p, cfg)?;
    let reduced_tiling = match mode {
        K2K3Mode::Exact => max_k2k3_tiling(&reduced)?,
        K2K3Mode::Local { seed } => local_k2k3_tiling(&reduced, seed),
        K2K3Mode::Auto { seed } if reduced.k() > EXACT_CAP => local_k2k3_tiling(&reduced, seed),
        K2K3Mode::Auto { .. } => max_k2k3_tiling(&reduced)?,
    };
    let mut tiling = Tiling::new();
    let (mut q1_count, mut q2_count) = (0, 0);
    let mut failures = Vec::new();
    for (idx, tile) in reduced_tiling.tiling.placements.iter().enumerate() {
        let mut pools: Vec<Vec<usize>> = tile.vertices().iter().map(|&c| p.cluster(c).to_vec()).collect();
        // a pair (or triple) stops as soon as some side has fewer than r vertices left
        while pools.iter().all(|q| q.len() >= r) {
            let copies = match tile.shape() {
                Shape::K2Double => embed_q1(g, &pools[0], &pools[1], r, cfg.eps).map(|q| {
                    q1_count += 1;
                    q.h.to_vec()
                }),
                Shape::K3 => embed_q2(g, &pools[0], &pools[1], &pools[2], r, cfg.eps).map(|q| {
                    q2_count += 1;
                    q.h.to_vec()
                }),
                _ => unreachable!("reduced tilings hold only K2= and K3"),
            };
            match copies {
                Ok(hs) => {
                    for h in hs {
                        pools.iter_mut().for_each(|q| take(q, &h));
                        tiling.push(Placement::clique(h));
                    }
                }
                Err(fail) => {
                    failures.push((idx, fail));
                    break;
                }
            }
        }
    }
    let uncovered = tiling.uncovered(g.n());
    Ok(PipelineResult { reduced, reduced_tiling, tiling, uncovered, q1_count, q2_count, failures })
}

/// Tries to extend the pipeline's tiling to a factor by solving the
/// leftover vertices exactly; `None` if the residue has no `K_r`-factor
/// (or the budget ran out).
pub fn complete_with_residual(g: &Graph, result: &PipelineResult, r: usize, opts: &FactorOptions) -> Option<Tiling> {
    let rest = &result.uncovered;
    let cert = has_kr_factor_with(&g.induced(rest), r, opts);
    match cert.outcome {
        FactorOutcome::FactorFound(t) => {
            let mut full = result.tiling.clone();
            for p in t.placements {
                full.push(Placement::clique(p.vertices().into_iter().map(|v| rest[v]).collect()));
            }
            Some(full)
        }
        _ => None,
    }
}
