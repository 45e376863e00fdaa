use std::fmt;

use crate::{Error, Result};

/// Largest supported ground-set size for subset masks.
pub const MAX_GROUND: usize = 20;

/// A subset of `[m] = {1, ..., m}` stored as a bitmask, with bit `i - 1`
/// standing for element `i`. The ground size `m` is supplied by context.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct SubsetMask {
    bits: u32,
}

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask { bits: 0 };

    pub fn from_bits(bits: u32, ground: usize) -> Result<Self> {
        if ground > MAX_GROUND {
            return Err(Error::bounds(format!(
                "ground size {ground} exceeds maximum {MAX_GROUND}"
            )));
        }
        if u64::from(bits) >= 1u64 << ground {
            return Err(Error::domain(format!(
                "mask {bits:#b} does not fit in ground set [{ground}]"
            )));
        }
        Ok(SubsetMask { bits })
    }

    /// Builds a mask from 1-based elements.
    pub fn from_elements<I: IntoIterator<Item = usize>>(elems: I, ground: usize) -> Result<Self> {
        let mut bits = 0u32;
        for e in elems {
            if e == 0 || e > ground {
                return Err(Error::domain(format!(
                    "element {e} outside ground set [{ground}]"
                )));
            }
            bits |= 1 << (e - 1);
        }
        Self::from_bits(bits, ground)
    }

    /// The prefix subset `{1, ..., k}`.
    pub fn prefix(k: usize, ground: usize) -> Result<Self> {
        Self::from_bits(((1u64 << k) - 1) as u32, ground.max(k))
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Membership of the 1-based element `e`.
    pub fn contains(self, e: usize) -> bool {
        e >= 1 && e <= 32 && self.bits >> (e - 1) & 1 == 1
    }

    pub fn complement(self, ground: usize) -> SubsetMask {
        SubsetMask {
            bits: !self.bits & (((1u64 << ground) - 1) as u32),
        }
    }

    pub fn symmetric_difference(self, other: SubsetMask) -> SubsetMask {
        SubsetMask {
            bits: self.bits ^ other.bits,
        }
    }

    /// Iterates the 1-based elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (1..=32usize).filter(move |e| bits >> (e - 1) & 1 == 1)
    }

    /// All nonempty subsets of `[ground]` in ascending bitmask order.
    pub fn nonempty_subsets(ground: usize) -> impl Iterator<Item = SubsetMask> {
        (1..1u64 << ground).map(|bits| SubsetMask { bits: bits as u32 })
    }

    /// All subsets of `[ground]`, including the empty one, in ascending
    /// bitmask order.
    pub fn all_subsets(ground: usize) -> impl Iterator<Item = SubsetMask> {
        (0..1u64 << ground).map(|bits| SubsetMask { bits: bits as u32 })
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}
