//! Objects of a finite additive Krull-Schmidt category: formal direct sums
//! of named indecomposables. The empty sum is the zero object.

use serde::{Deserialize, Serialize};

/// A formal direct sum, stored as a sequence of indecomposable indices.
///
/// The stored order is significant for morphism block layout, but two
/// objects with the same summand multiset are isomorphic; use
/// [`Obj::multiset_eq`] for that comparison. Derived equality is literal
/// (same order), which is what caches and deduplication want.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Obj {
    pub summands: Vec<usize>,
}

impl Obj {
    pub fn zero() -> Self {
        Obj { summands: Vec::new() }
    }

    pub fn single(i: usize) -> Self {
        Obj { summands: vec![i] }
    }

    pub fn from_summands(summands: Vec<usize>) -> Self {
        Obj { summands }
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    /// Number of indecomposable summands, with multiplicity.
    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    /// Sorted copy of the summand list; equal keys mean isomorphic objects.
    pub fn multiset_key(&self) -> Vec<usize> {
        let mut k = self.summands.clone();
        k.sort_unstable();
        k
    }

    pub fn multiset_eq(&self, other: &Obj) -> bool {
        self.multiset_key() == other.multiset_key()
    }

    /// Concatenation, the canonical direct sum order.
    pub fn sum(&self, other: &Obj) -> Obj {
        let mut summands = self.summands.clone();
        summands.extend_from_slice(&other.summands);
        Obj { summands }
    }
}
