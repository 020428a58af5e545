use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::MAX_ELEMENTS;

/// Membership indicator over the ground set `0..universe` of a host poset.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subset {
    bits: u64,
    universe: usize,
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the set bits of a mask, lowest first.
#[derive(Clone, Copy)]
pub(crate) struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

impl Subset {
    pub fn empty(universe: usize) -> Self {
        assert!(universe <= MAX_ELEMENTS);
        Subset { bits: 0, universe }
    }

    pub fn full(universe: usize) -> Self {
        assert!(universe <= MAX_ELEMENTS);
        Subset {
            bits: full_mask(universe),
            universe,
        }
    }

    pub fn from_mask(universe: usize, bits: u64) -> Result<Self> {
        if universe > MAX_ELEMENTS {
            return Err(Error::TooLarge(universe));
        }
        if bits & !full_mask(universe) != 0 {
            return Err(Error::Index {
                index: 63 - bits.leading_zeros() as usize,
                n: universe,
            });
        }
        Ok(Subset { bits, universe })
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(
        universe: usize,
        indices: I,
    ) -> Result<Self> {
        let mut s = Subset::empty(universe);
        for i in indices {
            if i >= universe {
                return Err(Error::Index {
                    index: i,
                    n: universe,
                });
            }
            s.bits |= 1 << i;
        }
        Ok(s)
    }

    pub(crate) fn from_mask_unchecked(universe: usize, bits: u64) -> Self {
        debug_assert_eq!(bits & !full_mask(universe), 0);
        Subset { bits, universe }
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == full_mask(self.universe)
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.bits >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe, "index {i} out of range");
        self.bits |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.universe {
            self.bits &= !(1 << i);
        }
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_proper_subset_of(&self, other: &Subset) -> bool {
        self.is_subset_of(other) && self.bits != other.bits
    }

    pub fn union(&self, other: &Subset) -> Subset {
        Subset {
            bits: self.bits | other.bits,
            universe: self.universe.max(other.universe),
        }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset {
            bits: self.bits & other.bits,
            universe: self.universe.min(other.universe),
        }
    }

    pub fn complement(&self) -> Subset {
        Subset {
            bits: !self.bits & full_mask(self.universe),
            universe: self.universe,
        }
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        Bits(self.bits)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}
