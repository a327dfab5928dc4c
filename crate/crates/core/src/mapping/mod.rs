//! Spaces, observations and whole-grid maps derived from the combined
//! beliefs.

mod field;
mod maps;
mod observation;
mod space;
mod suggest;

pub use field::{extrapolate_field, BeliefField, CellBelief, FieldConfig};
pub use maps::{
    binary_information_map, conflict_map, entropy_map, information_map, plausible_map,
    plausible_value, total_entropy, ScalarField, ValueField, TIE_TOLERANCE,
};
pub use observation::{Observation, ObservationSet};
pub use space::{ExplicitSpace, Grid2d, PointId, Space};
pub use suggest::{expected_entropy_loss, suggest_next_measurement, SuggestOptions, Suggestion};

/// Evaluates `f` on `0..n`, in parallel when the `parallel` feature is on.
#[cfg(feature = "parallel")]
pub(crate) fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}
