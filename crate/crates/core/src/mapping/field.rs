use std::borrow::Cow;

use crate::combination::{CombinationConfig, FocusCombiner, InteractionModel};
use crate::error::{Error, Result};
use crate::evidence::{CombinationMode, MassAssignment, ProbabilityDistribution, ValueDomain};
use crate::persistence::DecayModel;

use super::observation::ObservationSet;
use super::space::{Grid2d, PointId, Space};

/// Combined belief at one grid cell.
#[derive(Debug, Clone, PartialEq)]
pub enum CellBelief {
    Mass(MassAssignment),
    /// Normalized combination failed because the sources contradict each
    /// other completely.
    TotalConflict,
}

impl CellBelief {
    pub fn mass(&self) -> Option<&MassAssignment> {
        match self {
            CellBelief::Mass(m) => Some(m),
            CellBelief::TotalConflict => None,
        }
    }

    /// Normalized assignment used for decisions, or `None` when nothing is
    /// left after removing the conflict.
    pub fn decision_mass(&self) -> Option<Cow<'_, MassAssignment>> {
        let m = self.mass()?;
        if m.conflict() == 0.0 {
            Some(Cow::Borrowed(m))
        } else {
            m.normalize().ok().map(Cow::Owned)
        }
    }

    /// Pignistic distribution; uniform for totally conflicting cells.
    pub fn pignistic(&self, domain: &ValueDomain) -> ProbabilityDistribution {
        self.decision_mass()
            .and_then(|m| m.pignistic().ok())
            .unwrap_or_else(|| ProbabilityDistribution::uniform(domain))
    }
}

/// Settings a field was built with.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldConfig {
    pub decay: DecayModel,
    pub interaction: InteractionModel,
    pub combination: CombinationConfig,
}

/// Combined mass assignment for every cell of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BeliefField {
    grid: Grid2d,
    domain: ValueDomain,
    cells: Vec<CellBelief>,
    config: FieldConfig,
}

impl BeliefField {
    pub fn grid(&self) -> &Grid2d {
        &self.grid
    }

    pub fn domain(&self) -> &ValueDomain {
        &self.domain
    }

    pub fn config(&self) -> &FieldConfig {
        &self.config
    }

    pub fn mode(&self) -> CombinationMode {
        self.config.combination.mode
    }

    pub fn cells(&self) -> &[CellBelief] {
        &self.cells
    }

    pub fn cell(&self, p: PointId) -> &CellBelief {
        &self.cells[p.0]
    }

    pub fn at(&self, x: usize, y: usize) -> Option<&CellBelief> {
        self.grid.point(x, y).map(|p| self.cell(p))
    }

    pub fn conflict_cells(&self) -> usize {
        self.cells
            .iter()
            .filter(|c| matches!(c, CellBelief::TotalConflict))
            .count()
    }
}

/// Evaluates [`combine_at_focus`](crate::combination::combine_at_focus) at every cell of `grid`.
///
/// Total conflict at a cell (normalized mode) is recorded in that cell
/// rather than failing the whole field.
pub fn extrapolate_field(
    grid: &Grid2d,
    obs: &ObservationSet,
    decay: &DecayModel,
    interaction: &InteractionModel,
    cfg: CombinationConfig,
) -> Result<BeliefField> {
    if obs.domain() != decay.domain() {
        return Err(Error::DomainMismatch);
    }
    if obs.range().next().is_none() {
        return Err(Error::NoObservations);
    }
    for o in obs.observations() {
        grid.check(o.location)?;
    }
    let combiner = FocusCombiner::new(obs, grid, decay, interaction, cfg)?;
    let cells = super::map_indices(grid.len(), |i| match combiner.combine(PointId(i)) {
        Ok(m) => Ok(CellBelief::Mass(m)),
        Err(Error::TotalConflict(_)) => Ok(CellBelief::TotalConflict),
        Err(e) => Err(e),
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(BeliefField {
        grid: *grid,
        domain: obs.domain().clone(),
        cells,
        config: FieldConfig {
            decay: decay.clone(),
            interaction: *interaction,
            combination: cfg,
        },
    })
}
