//! Subsets of the input coordinates `{0, .., m-1}` stored as bitmasks.
//!
//! A set `v` names the coordinates a mixed partial derivative is taken
//! with respect to (once each). The same type is used for the blocks of a
//! set partition in the Faa di Bruno expansion.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest number of coordinates a [`MultiIndexSet`] can address.
pub const MAX_COORDS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MultiIndexSet(u32);

impl MultiIndexSet {
    pub const EMPTY: MultiIndexSet = MultiIndexSet(0);

    pub fn from_mask(mask: u32) -> Self {
        MultiIndexSet(mask)
    }

    /// `{0, .., m-1}`.
    pub fn full(m: usize) -> Self {
        assert!(m <= MAX_COORDS, "at most {MAX_COORDS} coordinates");
        if m == MAX_COORDS {
            MultiIndexSet(u32::MAX)
        } else {
            MultiIndexSet((1u32 << m) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_COORDS);
        MultiIndexSet(1 << i)
    }

    /// Builds a set from zero-based coordinate indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut mask = 0u32;
        for i in indices {
            assert!(i < MAX_COORDS);
            mask |= 1 << i;
        }
        MultiIndexSet(mask)
    }

    /// Parses a comma separated list of one-based indices such as `"1,2,3"`.
    /// The empty string is the empty set.
    pub fn parse_one_based(s: &str) -> Result<Self> {
        let mut mask = 0u32;
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let i: usize = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad coordinate index {tok:?}")))?;
            if i == 0 || i > MAX_COORDS {
                return Err(Error::Parse(format!(
                    "coordinate index {i} outside 1..={MAX_COORDS}"
                )));
            }
            mask |= 1 << (i - 1);
        }
        Ok(MultiIndexSet(mask))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_COORDS && self.0 & (1 << i) != 0
    }

    pub fn union(self, other: Self) -> Self {
        MultiIndexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        MultiIndexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        MultiIndexSet(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest element, if any.
    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros();
                rest &= rest - 1;
                Some(i as usize)
            }
        })
    }

    /// All non-empty subsets, in increasing mask order.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = MultiIndexSet> {
        let full = self.0;
        let mut sub = 0u32;
        let mut done = full == 0;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            // standard "next submask" walk in increasing order
            sub = (sub.wrapping_sub(full)) & full;
            if sub == 0 {
                done = true;
                None
            } else {
                Some(MultiIndexSet(sub))
            }
        })
    }

    /// The graded order on binary multi-indices: smaller cardinality first;
    /// on equal cardinality, `self` precedes `other` when at the smallest
    /// index where they differ, `self` has a 0 and `other` a 1.
    pub fn prec_cmp(self, other: Self) -> Ordering {
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {
                let diff = self.0 ^ other.0;
                if diff == 0 {
                    Ordering::Equal
                } else if other.0 & (1 << diff.trailing_zeros()) != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            ord => ord,
        }
    }
}

impl PartialOrd for MultiIndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.prec_cmp(*other)
    }
}

/// One-based, e.g. `{1,3}`.
impl fmt::Display for MultiIndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}
