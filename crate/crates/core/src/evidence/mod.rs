//! Finite-domain belief-function algebra.
//!
//! Subsets of the value domain are bitmasks ([`ValueSet`]); a
//! [`MassAssignment`] stores only its nonzero subsets. Both Dempster's
//! normalized rule and the unnormalized conjunctive rule are provided, the
//! latter keeping the conflict as mass on the empty set.

mod combine;
mod domain;
mod mass;

pub use combine::{combine, combine_many, conflict_degree, CombinationMode};
pub use domain::{ValueDomain, ValueSet, MAX_DOMAIN_SIZE};
pub use mass::{MassAssignment, ProbabilityDistribution, MASS_TOLERANCE};

/// Kept mass at or below which normalization reports total conflict.
pub const CONFLICT_THRESHOLD: f64 = 1e-12;
