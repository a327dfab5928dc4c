use crate::combination::{CombinationConfig, InteractionModel};
use crate::error::{Error, Result};
use crate::evidence::ValueSet;
use crate::persistence::DecayModel;

use super::field::extrapolate_field;
use super::maps::total_entropy;
use super::observation::{Observation, ObservationSet};
use super::space::{Grid2d, PointId, Space};

/// A candidate measurement location and its expected entropy loss.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Suggestion {
    pub point: PointId,
    pub x: usize,
    pub y: usize,
    pub expected_loss: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuggestOptions {
    /// Number of suggestions returned.
    pub top: usize,
    /// Only cells whose coordinates are both multiples of `stride` are
    /// considered. 1 means every cell.
    pub stride: usize,
}

impl Default for SuggestOptions {
    fn default() -> Self {
        Self { top: 5, stride: 1 }
    }
}

/// One-step expected loss of total grid entropy from measuring at `candidate`.
///
/// The current pignistic distribution at the candidate is the predictive
/// distribution of the outcome. `baseline` is the current total entropy.
#[allow(clippy::too_many_arguments)]
fn expected_loss_with_baseline(
    grid: &Grid2d,
    obs: &ObservationSet,
    decay: &DecayModel,
    interaction: &InteractionModel,
    cfg: CombinationConfig,
    candidate: PointId,
    baseline: f64,
    predictive: &[f64],
) -> Result<f64> {
    let mut expected_after = 0.0;
    for (v, &p) in predictive.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let extended = obs.with(Observation::new(candidate, ValueSet::singleton(v)))?;
        let field = extrapolate_field(grid, &extended, decay, interaction, cfg)?;
        expected_after += p * total_entropy(&field);
    }
    Ok(baseline - expected_after)
}

/// Expected reduction of the summed cell entropy if a complete observation
/// were made at `candidate`.
pub fn expected_entropy_loss(
    grid: &Grid2d,
    obs: &ObservationSet,
    decay: &DecayModel,
    interaction: &InteractionModel,
    cfg: CombinationConfig,
    candidate: PointId,
) -> Result<f64> {
    grid.check(candidate)?;
    let field = extrapolate_field(grid, obs, decay, interaction, cfg)?;
    let baseline = total_entropy(&field);
    let predictive = field.cell(candidate).pignistic(obs.domain());
    expected_loss_with_baseline(
        grid,
        obs,
        decay,
        interaction,
        cfg,
        candidate,
        baseline,
        predictive.probabilities(),
    )
}

/// Ranks candidate cells by expected entropy loss, highest first. Equal
/// losses keep point-index order.
pub fn suggest_next_measurement(
    grid: &Grid2d,
    obs: &ObservationSet,
    decay: &DecayModel,
    interaction: &InteractionModel,
    cfg: CombinationConfig,
    opts: SuggestOptions,
) -> Result<Vec<Suggestion>> {
    if opts.top == 0 {
        return Err(Error::InvalidParameter("top must be at least 1".into()));
    }
    if opts.stride == 0 {
        return Err(Error::InvalidParameter("stride must be at least 1".into()));
    }
    let field = extrapolate_field(grid, obs, decay, interaction, cfg)?;
    let baseline = total_entropy(&field);
    let candidates: Vec<PointId> = grid
        .points()
        .filter(|&p| {
            let (x, y) = grid.coords(p);
            x % opts.stride == 0 && y % opts.stride == 0
        })
        .collect();

    let losses = super::map_indices(candidates.len(), |i| {
        let c = candidates[i];
        let predictive = field.cell(c).pignistic(obs.domain());
        expected_loss_with_baseline(
            grid,
            obs,
            decay,
            interaction,
            cfg,
            c,
            baseline,
            predictive.probabilities(),
        )
    });

    let mut ranked = candidates
        .into_iter()
        .zip(losses)
        .map(|(point, loss)| {
            let (x, y) = grid.coords(point);
            Ok(Suggestion {
                point,
                x,
                y,
                expected_loss: loss?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ranked.sort_by(|a, b| {
        b.expected_loss
            .total_cmp(&a.expected_loss)
            .then(a.point.cmp(&b.point))
    });
    ranked.truncate(opts.top);
    Ok(ranked)
}
