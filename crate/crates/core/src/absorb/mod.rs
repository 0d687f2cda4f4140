//! Absorption: absorbers, reachability classes, robust index vectors and
//! transferrals, and desk-scale absorbing-set assembly.

pub mod absorber;
pub mod assemble;
pub mod lattice;
pub mod reach;

pub use absorber::{find_disjoint_absorbers, find_disjoint_absorbers_avoiding, is_absorber, AbsorberRecord};
pub use assemble::{
    build_absorbing_set, cover_vertex, is_absorbing_set, AbsorbOptions, AbsorbVerdict, AbsorbingAssembly, CheckBudget,
};
pub use lattice::{find_transferral, merge_closed_parts, robust_vectors, MergeLog, RobustMode, RobustVectorSet, Transferral};
pub use reach::{
    adversarial_w, is_reachable, reachability_partition, sampled_reachability, Connector, ReachVerdict, ReachabilityParams,
};
