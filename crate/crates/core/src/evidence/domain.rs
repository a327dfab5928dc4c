use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest number of values a domain may hold. Subsets are stored as bitmasks,
/// and tests enumerate the whole `2^n` lattice.
pub const MAX_DOMAIN_SIZE: usize = 16;

/// An ordered, finite set of qualitative value labels.
///
/// Cloning is cheap: the labels live behind an `Arc`.
#[derive(Clone)]
pub struct ValueDomain {
    labels: Arc<[String]>,
}

impl ValueDomain {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if !(2..=MAX_DOMAIN_SIZE).contains(&labels.len()) {
            return Err(Error::DomainSize(labels.len()));
        }
        for (i, label) in labels.iter().enumerate() {
            if label.trim().is_empty() || label.trim() != label {
                return Err(Error::InvalidLabel(label.clone()));
            }
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self {
            labels: labels.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> Option<&str> {
        self.labels.get(index).map(String::as_str)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The whole frame `S`.
    pub fn full(&self) -> ValueSet {
        ValueSet((1u32 << self.len()) - 1)
    }

    pub fn singleton(&self, label: &str) -> Result<ValueSet> {
        self.index_of(label)
            .map(ValueSet::singleton)
            .ok_or_else(|| Error::UnknownValue(label.to_owned()))
    }

    /// Builds a value set from labels; duplicates are ignored.
    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<ValueSet> {
        labels.iter().try_fold(ValueSet::EMPTY, |acc, l| {
            Ok(acc.union(self.singleton(l.as_ref())?))
        })
    }

    pub fn contains(&self, set: ValueSet) -> bool {
        set.bits() & !self.full().bits() == 0
    }

    pub fn check(&self, set: ValueSet) -> Result<ValueSet> {
        if self.contains(set) {
            Ok(set)
        } else {
            Err(Error::InvalidSubset(set.bits()))
        }
    }

    /// Every subset of the frame, in bitmask order (starting with the empty set).
    pub fn subsets(&self) -> impl Iterator<Item = ValueSet> {
        (0..=self.full().bits()).map(ValueSet)
    }

    pub fn complement(&self, set: ValueSet) -> ValueSet {
        ValueSet(self.full().bits() & !set.bits())
    }

    /// Renders a set as `a|b`; the empty set renders as `{}`.
    pub fn format_set(&self, set: ValueSet) -> String {
        if set.is_empty() {
            return "{}".to_owned();
        }
        set.iter()
            .filter_map(|i| self.label(i))
            .collect::<Vec<_>>()
            .join("|")
    }
}

impl PartialEq for ValueDomain {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl Eq for ValueDomain {}

impl fmt::Debug for ValueDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels.iter()).finish()
    }
}

/// A subset of a value domain, encoded as a bitmask over the domain ordering.
///
/// Ordering follows the numeric bitmask, which gives a canonical total order
/// on subsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ValueSet(u32);

impl ValueSet {
    pub const EMPTY: ValueSet = ValueSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        ValueSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn singleton(index: usize) -> Self {
        debug_assert!(index < MAX_DOMAIN_SIZE);
        ValueSet(1 << index)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(Self::EMPTY, |acc, i| acc.union(Self::singleton(i)))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_singleton(self) -> bool {
        self.0.count_ones() == 1
    }

    /// Index of the only member, if the set is a singleton.
    pub fn single_index(self) -> Option<usize> {
        self.is_singleton()
            .then(|| self.0.trailing_zeros() as usize)
    }

    pub fn contains(self, index: usize) -> bool {
        index < 32 && self.0 & (1 << index) != 0
    }

    pub fn intersection(self, other: Self) -> Self {
        ValueSet(self.0 & other.0)
    }

    pub fn union(self, other: Self) -> Self {
        ValueSet(self.0 | other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// Member indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            (bits != 0).then(|| {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                i
            })
        })
    }
}
