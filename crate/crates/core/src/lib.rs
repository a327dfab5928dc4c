//! Plausible extrapolation of pointwise spatial observations.
//!
//! Each observation lends a simple support function to every other point,
//! with a strength that decays with distance. The supports reaching a point
//! are discounted for mutual dependence (observations close to each other are
//! not independent sources) and combined with Dempster's rule. The combined
//! beliefs yield belief, entropy, conflict and plausible-value maps, and a
//! ranking of where to measure next.
//!
//! ```
//! use plausimap::prelude::*;
//!
//! let domain = ValueDomain::new(["white", "black"]).unwrap();
//! let grid = Grid2d::new(16, 16).unwrap();
//! let obs = plausimap::io::parse_observations(
//!     "values: white,black\n3,3,black\n12,12,white\n",
//!     &grid,
//! )
//! .unwrap();
//! let field = extrapolate_field(
//!     &grid,
//!     &obs,
//!     &DecayModel::uniform(&domain, 3.0).unwrap(),
//!     &InteractionModel::new(3.0).unwrap(),
//!     CombinationConfig::default(),
//! )
//! .unwrap();
//! let black = domain.singleton("black").unwrap();
//! let near = field.at(4, 3).unwrap().mass().unwrap();
//! assert!(near.belief(black).unwrap() > 0.6);
//! ```

pub mod combination;
pub mod error;
pub mod evidence;
pub mod io;
pub mod mapping;
pub mod persistence;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::combination::{
        combine_at_focus, combine_at_focus_precise, CombinationConfig, Discount, InteractionModel,
    };
    pub use crate::evidence::{
        combine, combine_many, conflict_degree, CombinationMode, MassAssignment,
        ProbabilityDistribution, ValueDomain, ValueSet,
    };
    pub use crate::mapping::{
        conflict_map, entropy_map, extrapolate_field, information_map, plausible_map,
        suggest_next_measurement, BeliefField, CellBelief, Grid2d, Observation, ObservationSet,
        PointId, Space, SuggestOptions,
    };
    pub use crate::persistence::{lambda_from_half_distance, DecayModel};
}
