use crate::error::{Error, Result};
use crate::evidence::{ValueDomain, ValueSet};

use super::space::PointId;

/// A pointwise observation: the value at `location` is known to lie in `value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Observation {
    pub location: PointId,
    pub value: ValueSet,
}

impl Observation {
    pub fn new(location: PointId, value: ValueSet) -> Self {
        Self { location, value }
    }

    /// A singleton value.
    pub fn is_complete(&self) -> bool {
        self.value.is_singleton()
    }
}

/// Observations over a common value domain.
///
/// Trivial observations (whose value is the whole domain) may be stored but
/// are excluded from [`ObservationSet::range`].
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationSet {
    domain: ValueDomain,
    observations: Vec<Observation>,
}

impl ObservationSet {
    pub fn new(domain: &ValueDomain) -> Self {
        Self {
            domain: domain.clone(),
            observations: Vec::new(),
        }
    }

    pub fn from_observations<I>(domain: &ValueDomain, observations: I) -> Result<Self>
    where
        I: IntoIterator<Item = Observation>,
    {
        let mut set = Self::new(domain);
        for o in observations {
            set.push(o)?;
        }
        Ok(set)
    }

    pub fn push(&mut self, observation: Observation) -> Result<()> {
        if observation.value.is_empty() {
            return Err(Error::EmptyValueSet);
        }
        self.domain.check(observation.value)?;
        self.observations.push(observation);
        Ok(())
    }

    /// A copy extended by one more observation.
    pub fn with(&self, observation: Observation) -> Result<Self> {
        let mut out = self.clone();
        out.push(observation)?;
        Ok(out)
    }

    pub fn domain(&self) -> &ValueDomain {
        &self.domain
    }

    pub fn observations(&self) -> &[Observation] {
        &self.observations
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    /// Nontrivial observations, i.e. those that carry evidence.
    pub fn range(&self) -> impl Iterator<Item = &Observation> + '_ {
        let full = self.domain.full();
        self.observations.iter().filter(move |o| o.value != full)
    }
}
