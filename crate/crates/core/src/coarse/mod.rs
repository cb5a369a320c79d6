//! Finite-scale coarse structures: threshold graphs, relation algebra, path
//! metrics, growth functions and structure comparison.

mod growth;
mod matrix;
mod metric;
mod relation;
mod structure;

pub use growth::{asdim_bound, growth_obstruction, AsdimBound, AsdimConfig, GrowthCurve};
pub use matrix::{DecayMatrix, Filtration};
pub use metric::{
    monotone_domination, quasi_isometry_fit, DominationTable, PathMetric, QiDirection,
    QuasiIsometryReport,
};
pub use relation::{in_generated, Relation};
pub use structure::{
    coarse_profile, connected_profile, default_dust_cutoff, higher_order_closure,
    semicontinuity_check, stable_range, ClosureResult, CoarseProfile, ComponentProfile,
    ProfileConfig, StableInterval,
};
