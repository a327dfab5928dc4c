use crate::error::{Error, Result};

use super::domain::{ValueDomain, ValueSet};

/// Tolerance on the total mass of a freshly built assignment.
pub const MASS_TOLERANCE: f64 = 1e-9;

/// A mass assignment `m : 2^S -> [0, 1]` over a finite value domain.
///
/// Only subsets with nonzero mass are stored, sorted by their bitmask.
/// Assignments with mass on the empty set (unnormalized ones) are
/// representable; the empty-set mass is the conflict left over by
/// unnormalized combination.
#[derive(Debug, Clone, PartialEq)]
pub struct MassAssignment {
    domain: ValueDomain,
    entries: Vec<(ValueSet, f64)>,
}

impl MassAssignment {
    /// Builds an assignment from `(subset, mass)` pairs. Repeated subsets are
    /// summed. The total must equal 1 within [`MASS_TOLERANCE`].
    pub fn new<I>(domain: &ValueDomain, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ValueSet, f64)>,
    {
        let mut acc = Accumulator::default();
        for (set, mass) in entries {
            domain.check(set)?;
            if !mass.is_finite() {
                return Err(Error::NonFiniteMass);
            }
            if mass < 0.0 {
                return Err(Error::NegativeMass(mass));
            }
            acc.add(set, mass);
        }
        let entries = acc.finish();
        let sum: f64 = entries.iter().map(|e| e.1).sum();
        let deviation = (sum - 1.0).abs();
        if deviation > MASS_TOLERANCE {
            return Err(Error::SumNotOne { sum, deviation });
        }
        Ok(Self {
            domain: domain.clone(),
            entries,
        })
    }

    /// Total ignorance: `m(S) = 1`.
    pub fn vacuous(domain: &ValueDomain) -> Self {
        Self {
            domain: domain.clone(),
            entries: vec![(domain.full(), 1.0)],
        }
    }

    /// Simple support function: `m(focal) = strength`, `m(S) = 1 - strength`.
    pub fn simple_support(domain: &ValueDomain, focal: ValueSet, strength: f64) -> Result<Self> {
        domain.check(focal)?;
        if !(0.0..=1.0).contains(&strength) {
            return Err(Error::InvalidParameter(format!(
                "support strength must lie in [0, 1], got {strength}"
            )));
        }
        let full = domain.full();
        let entries = if focal == full || strength == 0.0 {
            vec![(full, 1.0)]
        } else if strength == 1.0 {
            vec![(focal, 1.0)]
        } else {
            let mut e = vec![(focal, strength), (full, 1.0 - strength)];
            e.sort_by_key(|x| x.0);
            e
        };
        Ok(Self {
            domain: domain.clone(),
            entries,
        })
    }

    /// Internal constructor for already-accumulated entries.
    pub(crate) fn from_parts(domain: &ValueDomain, entries: Vec<(ValueSet, f64)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        Self {
            domain: domain.clone(),
            entries,
        }
    }

    pub fn domain(&self) -> &ValueDomain {
        &self.domain
    }

    /// Mass of exactly `set` (zero when not focal).
    pub fn mass(&self, set: ValueSet) -> f64 {
        self.entries
            .binary_search_by_key(&set, |e| e.0)
            .map(|i| self.entries[i].1)
            .unwrap_or(0.0)
    }

    /// Stored `(subset, mass)` pairs in canonical order.
    pub fn entries(&self) -> &[(ValueSet, f64)] {
        &self.entries
    }

    /// Subsets with strictly positive mass.
    pub fn focal_elements(&self) -> impl Iterator<Item = ValueSet> + '_ {
        self.entries.iter().filter(|e| e.1 > 0.0).map(|e| e.0)
    }

    pub fn total(&self) -> f64 {
        self.entries.iter().map(|e| e.1).sum()
    }

    /// Mass on the empty set.
    pub fn conflict(&self) -> f64 {
        self.mass(ValueSet::EMPTY)
    }

    pub fn is_normalized(&self) -> bool {
        self.conflict() <= MASS_TOLERANCE
    }

    pub fn is_vacuous(&self) -> bool {
        self.entries.len() == 1 && self.entries[0].0 == self.domain.full()
    }

    /// `Bel(B)`: total mass of the nonempty subsets of `B`.
    ///
    /// On unnormalized assignments the same sum is returned; reading it as a
    /// degree of belief is then up to the caller.
    pub fn belief(&self, set: ValueSet) -> Result<f64> {
        self.domain.check(set)?;
        Ok(self
            .entries
            .iter()
            .filter(|(a, _)| !a.is_empty() && a.is_subset_of(set))
            .map(|e| e.1)
            .sum())
    }

    /// `Pl(B)`: total mass of the subsets intersecting `B`.
    pub fn plausibility(&self, set: ValueSet) -> Result<f64> {
        self.domain.check(set)?;
        Ok(self
            .entries
            .iter()
            .filter(|(a, _)| a.intersects(set))
            .map(|e| e.1)
            .sum())
    }

    /// Dempster normalization: moves the empty-set mass proportionally onto
    /// the other focal elements.
    pub fn normalize(&self) -> Result<Self> {
        let kept: f64 = self
            .entries
            .iter()
            .filter(|e| !e.0.is_empty())
            .map(|e| e.1)
            .sum();
        if kept <= super::CONFLICT_THRESHOLD {
            return Err(Error::TotalConflict(kept));
        }
        if self.conflict() == 0.0 {
            return Ok(self.clone());
        }
        let entries = self
            .entries
            .iter()
            .filter(|e| !e.0.is_empty())
            .map(|&(s, m)| (s, m / kept))
            .collect();
        Ok(Self::from_parts(&self.domain, entries))
    }

    /// Pignistic transform: each focal element's mass is split evenly among
    /// its members. Requires a normalized assignment.
    pub fn pignistic(&self) -> Result<ProbabilityDistribution> {
        let conflict = self.conflict();
        if conflict > MASS_TOLERANCE {
            return Err(Error::Unnormalized(conflict));
        }
        let mut probabilities = vec![0.0; self.domain.len()];
        for &(set, mass) in &self.entries {
            if set.is_empty() {
                continue;
            }
            let share = mass / set.len() as f64;
            for i in set.iter() {
                probabilities[i] += share;
            }
        }
        Ok(ProbabilityDistribution {
            domain: self.domain.clone(),
            probabilities,
        })
    }
}

/// A probability distribution over the values of a domain.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityDistribution {
    domain: ValueDomain,
    probabilities: Vec<f64>,
}

impl ProbabilityDistribution {
    pub fn uniform(domain: &ValueDomain) -> Self {
        let n = domain.len();
        Self {
            domain: domain.clone(),
            probabilities: vec![1.0 / n as f64; n],
        }
    }

    pub fn domain(&self) -> &ValueDomain {
        &self.domain
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn get(&self, index: usize) -> f64 {
        self.probabilities[index]
    }

    /// Shannon entropy in nats, with `0 ln 0 = 0`.
    pub fn entropy(&self) -> f64 {
        self.probabilities
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.ln())
            .sum()
    }

    /// Index of the most probable value, or `None` when the top two are
    /// within `tie_tolerance` of each other.
    pub fn unique_argmax(&self, tie_tolerance: f64) -> Option<usize> {
        let mut best = 0;
        for (i, &p) in self.probabilities.iter().enumerate().skip(1) {
            if p > self.probabilities[best] {
                best = i;
            }
        }
        let top = self.probabilities[best];
        let tied = self
            .probabilities
            .iter()
            .enumerate()
            .any(|(i, &p)| i != best && top - p <= tie_tolerance);
        (!tied).then_some(best)
    }
}

/// Sums masses per subset. Linear scan while small, which is the common case
/// for simple supports over small domains.
#[derive(Default)]
pub(crate) struct Accumulator {
    entries: Vec<(ValueSet, f64)>,
}

impl Accumulator {
    pub(crate) fn with_capacity(n: usize) -> Self {
        Self {
            entries: Vec::with_capacity(n),
        }
    }

    pub(crate) fn add(&mut self, set: ValueSet, mass: f64) {
        match self.entries.iter_mut().find(|e| e.0 == set) {
            Some(e) => e.1 += mass,
            None => self.entries.push((set, mass)),
        }
    }

    pub(crate) fn finish(mut self) -> Vec<(ValueSet, f64)> {
        self.entries.retain(|e| e.1 != 0.0);
        self.entries.sort_by_key(|e| e.0);
        self.entries
    }
}
