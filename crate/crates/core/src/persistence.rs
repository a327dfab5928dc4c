//! Spatial persistence: how strongly an observation at one point supports the
//! same value at another point, as a function of their distance.
//!
//! A decay function `f(V, d)` is non-increasing in `d`, equals 1 exactly at
//! `d = 0` and vanishes as `d` grows. The exponential family
//! `f(V, d) = exp(-d / λ(V))` is the only one provided; `λ(V)` is the
//! smallest persistence scale among the members of `V`.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::evidence::{MassAssignment, ValueDomain, ValueSet};
use crate::mapping::{Observation, PointId, Space};

/// Family of decay functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DecayKind {
    #[default]
    Exponential,
}

/// Strength of a simple support, in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SupportStrength(f64);

impl SupportStrength {
    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(Error::InvalidParameter(format!(
                "support strength must lie in [0, 1], got {value}"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Per-value persistence scales `λ(v)`, in distance units.
///
/// `λ = 0` marks a non-persistent value and `λ = ∞` a strongly persistent
/// one.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayModel {
    domain: ValueDomain,
    lambdas: Vec<f64>,
    kind: DecayKind,
}

fn check_lambda(lambda: f64) -> Result<f64> {
    if lambda.is_nan() || lambda < 0.0 {
        Err(Error::InvalidLambda(lambda))
    } else {
        Ok(lambda)
    }
}

impl DecayModel {
    /// Same scale for every value.
    pub fn uniform(domain: &ValueDomain, lambda: f64) -> Result<Self> {
        Self::from_lambdas(domain, vec![lambda; domain.len()])
    }

    /// One scale per value, in domain order.
    pub fn from_lambdas(domain: &ValueDomain, lambdas: Vec<f64>) -> Result<Self> {
        if lambdas.len() != domain.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} persistence scales, got {}",
                domain.len(),
                lambdas.len()
            )));
        }
        for &l in &lambdas {
            check_lambda(l)?;
        }
        Ok(Self {
            domain: domain.clone(),
            lambdas,
            kind: DecayKind::Exponential,
        })
    }

    pub fn with_lambda(mut self, label: &str, lambda: f64) -> Result<Self> {
        let i = self
            .domain
            .index_of(label)
            .ok_or_else(|| Error::UnknownValue(label.to_owned()))?;
        self.lambdas[i] = check_lambda(lambda)?;
        Ok(self)
    }

    pub fn domain(&self) -> &ValueDomain {
        &self.domain
    }

    pub fn kind(&self) -> DecayKind {
        self.kind
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    /// `λ(V) = min over v in V of λ(v)`.
    pub fn lambda_of_set(&self, set: ValueSet) -> Result<f64> {
        self.domain.check(set)?;
        set.iter()
            .map(|i| self.lambdas[i])
            .reduce(f64::min)
            .ok_or(Error::EmptyValueSet)
    }

    /// Support strength `f(V, dist)`.
    pub fn decay(&self, set: ValueSet, dist: f64) -> Result<SupportStrength> {
        if dist.is_nan() || dist < 0.0 {
            return Err(Error::NegativeDistance(dist));
        }
        let lambda = self.lambda_of_set(set)?;
        Ok(SupportStrength(self.decay_with(lambda, dist)))
    }

    fn decay_with(&self, lambda: f64, dist: f64) -> f64 {
        match self.kind {
            DecayKind::Exponential => {
                if dist == 0.0 || lambda == f64::INFINITY {
                    1.0
                } else if lambda == 0.0 {
                    0.0
                } else {
                    (-dist / lambda).exp()
                }
            }
        }
    }
}

/// Persistence scale for which support halves at distance `d_half`.
pub fn lambda_from_half_distance(d_half: f64) -> Result<f64> {
    if d_half.is_nan() || d_half <= 0.0 {
        return Err(Error::NonPositiveDistance(d_half));
    }
    Ok(d_half / LN_2)
}

/// The simple support that `obs` lends to its own value at `focus`.
pub fn support_from_observation<S: Space + ?Sized>(
    obs: &Observation,
    focus: PointId,
    space: &S,
    model: &DecayModel,
) -> Result<MassAssignment> {
    let domain = model.domain();
    if obs.value.is_empty() {
        return Err(Error::EmptyValueSet);
    }
    if obs.value == domain.full() {
        return Err(Error::TrivialObservation);
    }
    space.check(focus)?;
    space.check(obs.location)?;
    let strength = model.decay(obs.value, space.distance(focus, obs.location))?;
    MassAssignment::simple_support(domain, obs.value, strength.value())
}
