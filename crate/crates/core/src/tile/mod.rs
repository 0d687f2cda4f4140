//! Tilings of the reduced multigraph, the `Q1`/`Q2` gadgets, and the
//! pipeline that turns them into an almost-perfect `K_r`-tiling.

pub mod gadgets;
pub mod k2k3;
pub mod pipeline;

pub use gadgets::{check_q1, check_q2, embed_q1, embed_q2, EmbedFailure, EmbedStep};
pub use k2k3::{find_move, local_k2k3_tiling, max_k2k3_tiling, spans_no_tile, TilingReport};

pub use pipeline::{almost_factor_pipeline, complete_with_residual, K2K3Mode, PipelineResult};
