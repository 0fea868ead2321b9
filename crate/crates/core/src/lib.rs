//! Simulation of a transportation fleet whose genotype-phenotype map is built
//! either from redundant (identical) or degenerate (partially overlapping)
//! vehicles, with tools to explore the resulting neutral networks and count
//! the distinct phenotypes reachable from them.

pub mod adaptation;
pub mod config;
pub mod error;
pub mod experiments;
pub mod explorer;
pub mod model;
pub mod oracle;
pub mod output;
pub mod space;

pub use error::{Error, Result};
pub use model::{
    canonical_form, compute_phenotype, fitness, is_neutral, neutrality_threshold,
    neutrality_threshold_with, validate, Alpha, Allocation, CanonicalKey, Fitness, Genotype,
    LoadRule, TaskPair, Threshold, ThresholdRule, TraitVector, Violation,
};
pub use space::{FleetConfig, ModelKind, MutationMode};
