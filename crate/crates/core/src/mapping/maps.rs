use crate::error::{Error, Result};
use crate::evidence::{CombinationMode, MassAssignment, ValueDomain, ValueSet};

use super::field::{BeliefField, CellBelief};
use super::space::Grid2d;

/// Probabilities closer than this are treated as a tie.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// One real number per grid cell, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    width: usize,
    height: usize,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn new(width: usize, height: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != width * height {
            return Err(Error::InvalidParameter(format!(
                "expected {} values for a {width}x{height} field, got {}",
                width * height,
                values.len()
            )));
        }
        Ok(Self {
            width,
            height,
            values,
        })
    }

    fn from_grid(grid: &Grid2d, values: Vec<f64>) -> Self {
        Self {
            width: grid.width(),
            height: grid.height(),
            values,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.values[y * self.width + x]
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// Most plausible value per cell, `None` where undetermined.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueField {
    width: usize,
    height: usize,
    domain: ValueDomain,
    values: Vec<Option<usize>>,
}

impl ValueField {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn domain(&self) -> &ValueDomain {
        &self.domain
    }

    pub fn values(&self) -> &[Option<usize>] {
        &self.values
    }

    pub fn get(&self, x: usize, y: usize) -> Option<usize> {
        self.values[y * self.width + x]
    }

    pub fn label(&self, x: usize, y: usize) -> Option<&str> {
        self.get(x, y).and_then(|i| self.domain.label(i))
    }
}

fn cell_entropy(cell: &CellBelief, domain: &ValueDomain) -> f64 {
    cell.pignistic(domain).entropy()
}

/// Entropy (nats) of each cell's pignistic distribution. Totally conflicting
/// cells get the maximum, `ln |S|`.
pub fn entropy_map(field: &BeliefField) -> ScalarField {
    let domain = field.domain();
    let values = super::map_indices(field.cells().len(), |i| {
        cell_entropy(&field.cells()[i], domain)
    });
    ScalarField::from_grid(field.grid(), values)
}

/// Sum of the entropy map.
pub fn total_entropy(field: &BeliefField) -> f64 {
    entropy_map(field).sum()
}

/// Information level `1 - H / ln |S|`, in `[0, 1]`.
pub fn information_map(field: &BeliefField) -> ScalarField {
    let max = (field.domain().len() as f64).ln();
    let mut map = entropy_map(field);
    for v in &mut map.values {
        *v = (1.0 - *v / max).clamp(0.0, 1.0);
    }
    map
}

/// Binary-domain information level `2 |p(v0) - 1/2|`, in `[0, 1]`.
pub fn binary_information_map(field: &BeliefField) -> Result<ScalarField> {
    let domain = field.domain();
    if domain.len() != 2 {
        return Err(Error::UnsupportedDomainSize(domain.len()));
    }
    let values = field
        .cells()
        .iter()
        .map(|c| ((c.pignistic(domain).get(0) - 0.5).abs() * 2.0).min(1.0))
        .collect();
    Ok(ScalarField::from_grid(field.grid(), values))
}

/// Mass on the empty set per cell. Only meaningful for unnormalized fields.
pub fn conflict_map(field: &BeliefField) -> Result<ScalarField> {
    if field.mode() != CombinationMode::Unnormalized {
        return Err(Error::WrongMode);
    }
    let values = field
        .cells()
        .iter()
        .map(|c| c.mass().map_or(1.0, MassAssignment::conflict))
        .collect();
    Ok(ScalarField::from_grid(field.grid(), values))
}

/// Decision for a single (normalized) assignment: the value with the highest
/// pignistic probability, unless every singleton belief is below `threshold`
/// or the top probability is tied.
pub fn plausible_value(m: &MassAssignment, threshold: f64) -> Result<Option<usize>> {
    if !(0.0..1.0).contains(&threshold) {
        return Err(Error::InvalidThreshold(threshold));
    }
    let best_belief = (0..m.domain().len())
        .map(|i| m.belief(ValueSet::singleton(i)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    if best_belief < threshold {
        return Ok(None);
    }
    Ok(m.pignistic()?.unique_argmax(TIE_TOLERANCE))
}

/// Per-cell [`plausible_value`]; conflicting cells are undetermined.
pub fn plausible_map(field: &BeliefField, threshold: f64) -> Result<ValueField> {
    if !(0.0..1.0).contains(&threshold) {
        return Err(Error::InvalidThreshold(threshold));
    }
    let values = field
        .cells()
        .iter()
        .map(|c| match c.decision_mass() {
            Some(m) => plausible_value(&m, threshold),
            None => Ok(None),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ValueField {
        width: field.grid().width(),
        height: field.grid().height(),
        domain: field.domain().clone(),
        values,
    })
}
