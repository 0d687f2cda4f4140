//! Generators for the extremal constructions, their property manifests,
//! and the closed-form threshold evaluators.

pub mod formulas;
pub mod generators;
pub mod manifest;

pub use formulas::{eval_f_rt, eval_rt_edge_bound, eval_threshold};
pub use generators::{
    default_prop_1_6_mu, gen_bollobas_erdos, gen_er_like, gen_high_girth, gen_prop_1_6, gen_prop_1_7, gen_two_cliques,
    prop_1_6_sizes,
    prop_1_7_sizes, Construction, Prop17Options,
};
pub use manifest::{
    check_manifest, exact_claims_hold, CheckOptions, Claim, ClaimKind, ClaimOp, ClaimResult, ClaimStatus, Cmp,
    ConstructionManifest,
};
