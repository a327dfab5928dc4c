use crate::error::{Error, Result};

use super::mass::{Accumulator, MassAssignment};
use super::CONFLICT_THRESHOLD;

/// Whether the conflict mass is redistributed after combination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CombinationMode {
    /// Dempster's rule: the empty-set mass is divided out.
    #[default]
    Normalized,
    /// Conjunctive rule keeping the conflict on the empty set.
    Unnormalized,
}

/// Conjunctive product-sum: `m(A) = sum over X ∩ Y = A of m1(X) m2(Y)`.
fn product_sum(m1: &MassAssignment, m2: &MassAssignment) -> Vec<(super::ValueSet, f64)> {
    let mut acc = Accumulator::with_capacity(m1.entries().len() * m2.entries().len());
    for &(x, a) in m1.entries() {
        for &(y, b) in m2.entries() {
            acc.add(x.intersection(y), a * b);
        }
    }
    acc.finish()
}

/// Combines two assignments over the same domain.
///
/// In normalized mode both inputs must be normalized and the result is
/// divided by `R(m1, m2)`, the mass not sent to the empty set.
pub fn combine(
    m1: &MassAssignment,
    m2: &MassAssignment,
    mode: CombinationMode,
) -> Result<MassAssignment> {
    if m1.domain() != m2.domain() {
        return Err(Error::DomainMismatch);
    }
    match mode {
        CombinationMode::Unnormalized => {
            Ok(MassAssignment::from_parts(m1.domain(), product_sum(m1, m2)))
        }
        CombinationMode::Normalized => {
            for m in [m1, m2] {
                if !m.is_normalized() {
                    return Err(Error::Unnormalized(m.conflict()));
                }
            }
            let mut entries = product_sum(m1, m2);
            entries.retain(|e| !e.0.is_empty());
            // Scaling by the kept mass also absorbs rounding drift in the inputs.
            let kept: f64 = entries.iter().map(|e| e.1).sum();
            if kept <= CONFLICT_THRESHOLD {
                return Err(Error::TotalConflict(kept));
            }
            for e in &mut entries {
                e.1 /= kept;
            }
            Ok(MassAssignment::from_parts(m1.domain(), entries))
        }
    }
}

/// Left fold of [`combine`] over a nonempty list.
pub fn combine_many<'a, I>(ms: I, mode: CombinationMode) -> Result<MassAssignment>
where
    I: IntoIterator<Item = &'a MassAssignment>,
{
    let mut it = ms.into_iter();
    let first = it.next().ok_or(Error::EmptyList)?.clone();
    it.try_fold(first, |acc, m| combine(&acc, m, mode))
}

/// Degree of conflict `m1 ⊕_U m2 (∅) = 1 - R(m1, m2)`.
pub fn conflict_degree(m1: &MassAssignment, m2: &MassAssignment) -> Result<f64> {
    if m1.domain() != m2.domain() {
        return Err(Error::DomainMismatch);
    }
    let mut conflict = 0.0;
    for &(x, a) in m1.entries() {
        for &(y, b) in m2.entries() {
            if !x.intersects(y) {
                conflict += a * b;
            }
        }
    }
    Ok(conflict)
}
