//! Finite subsets of a carrier `{0..n-1}` packed into a single `u64`.

use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

/// Largest supported carrier.
pub const MAX_CARRIER: usize = 64;

/// The carrier `{0, .., n-1}` of a structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Carrier(u8);

impl Carrier {
    pub fn new(n: usize) -> Result<Self> {
        if (1..=MAX_CARRIER).contains(&n) {
            Ok(Carrier(n as u8))
        } else {
            Err(Error::InvalidCarrier(n))
        }
    }

    #[inline]
    pub fn size(self) -> usize {
        self.0 as usize
    }

    /// Bit mask with one bit per carrier element.
    #[inline]
    pub fn mask(self) -> u64 {
        if self.0 as usize == MAX_CARRIER {
            u64::MAX
        } else {
            (1u64 << self.0) - 1
        }
    }

    pub fn full(self) -> Subset {
        Subset {
            n: self.0,
            bits: self.mask(),
        }
    }

    pub fn empty(self) -> Subset {
        Subset { n: self.0, bits: 0 }
    }

    pub fn singleton(self, x: usize) -> Result<Subset> {
        self.check(x)?;
        Ok(Subset {
            n: self.0,
            bits: 1 << x,
        })
    }

    pub(crate) fn check(self, x: usize) -> Result<()> {
        if x < self.size() {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                element: x,
                n: self.size(),
            })
        }
    }

    /// Subset with the given bits; bits beyond the carrier are rejected.
    pub fn subset_from_bits(self, bits: u64) -> Result<Subset> {
        if bits & !self.mask() != 0 {
            let element = (bits & !self.mask()).trailing_zeros() as usize;
            return Err(Error::OutOfRange {
                element,
                n: self.size(),
            });
        }
        Ok(Subset { n: self.0, bits })
    }

    pub fn subset<I: IntoIterator<Item = usize>>(self, elements: I) -> Result<Subset> {
        let mut bits = 0u64;
        for x in elements {
            self.check(x)?;
            bits |= 1 << x;
        }
        Ok(Subset { n: self.0, bits })
    }

    pub(crate) fn subset_unchecked(self, bits: u64) -> Subset {
        debug_assert_eq!(bits & !self.mask(), 0);
        Subset { n: self.0, bits }
    }
}

/// A subset of a finite carrier. Plain value; equality is extensional.
///
/// Ordering is by bit-vector value, which is the enumeration order used
/// throughout the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    n: u8,
    bits: u64,
}

impl Subset {
    #[inline]
    pub fn carrier(self) -> Carrier {
        Carrier(self.n)
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn contains(self, x: usize) -> bool {
        x < self.n as usize && self.bits >> x & 1 == 1
    }

    pub fn is_full(self) -> bool {
        self.bits == self.carrier().mask()
    }

    /// Members in ascending order.
    pub fn iter(self) -> Elements {
        Elements(self.bits)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    fn same_carrier(self, other: Subset) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::CarrierMismatch {
                left: self.n as usize,
                right: other.n as usize,
            })
        }
    }

    pub fn union(self, other: Subset) -> Result<Subset> {
        self.same_carrier(other)?;
        Ok(Subset {
            n: self.n,
            bits: self.bits | other.bits,
        })
    }

    pub fn intersection(self, other: Subset) -> Result<Subset> {
        self.same_carrier(other)?;
        Ok(Subset {
            n: self.n,
            bits: self.bits & other.bits,
        })
    }

    pub fn is_subset_of(self, other: Subset) -> Result<bool> {
        self.same_carrier(other)?;
        Ok(self.bits & !other.bits == 0)
    }

    /// Image of the subset under a relabeling `x -> perm[x]`.
    pub(crate) fn map(self, perm: &[usize]) -> Subset {
        let bits = self.iter().fold(0u64, |acc, x| acc | 1 << perm[x]);
        Subset { n: self.n, bits }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_elements(self.iter()))
    }
}

/// Formats elements as a JSON-style array, e.g. `[0,2]`.
pub fn format_elements<I: IntoIterator<Item = usize>>(elements: I) -> String {
    let parts: Vec<String> = elements.into_iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for x in self.iter() {
            seq.serialize_element(&x)?;
        }
        seq.end()
    }
}

/// Iterator over the set bits of a mask, lowest first.
#[derive(Clone, Debug)]
pub struct Elements(u64);

impl Elements {
    #[inline]
    pub fn of_bits(bits: u64) -> Self {
        Elements(bits)
    }
}

impl Iterator for Elements {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let len = self.0.count_ones() as usize;
        (len, Some(len))
    }
}

impl ExactSizeIterator for Elements {}

/// All nonempty subsets of the carrier in ascending bit-vector order.
pub fn enumerate_nonempty_subsets(carrier: Carrier) -> impl Iterator<Item = Subset> {
    (1..=carrier.mask()).map(move |bits| carrier.subset_unchecked(bits))
}
