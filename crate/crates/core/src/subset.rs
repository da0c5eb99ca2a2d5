//! Subsets of a ground set `[n] = {1, ..., n}` packed into one machine word.
//!
//! Element `i` lives in bit `i - 1`. Ordering two subsets of equal size by
//! their bit patterns as integers is exactly colexicographic order, which is
//! the vertex order used everywhere else in the crate.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{constraint, Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND: usize = 64;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    num_integer::binomial(n as u64, k as u64)
}

fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of the ground set `[n]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct KSubset {
    bits: u64,
    n: u8,
}

impl KSubset {
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(constraint("n <= 64", format!("ground set of size {n}")));
        }
        if bits & !low_mask(n) != 0 {
            return Err(Error::Domain(format!(
                "bit pattern {bits:#x} has elements outside [1, {n}]"
            )));
        }
        Ok(Self { bits, n: n as u8 })
    }

    /// Builds a subset from 1-based elements. Repeated elements are rejected.
    pub fn new(n: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(constraint("n <= 64", format!("ground set of size {n}")));
        }
        let mut bits = 0u64;
        for e in elements {
            if e == 0 || e > n {
                return Err(Error::Domain(format!("element {e} outside [1, {n}]")));
            }
            let b = 1u64 << (e - 1);
            if bits & b != 0 {
                return Err(Error::Domain(format!("element {e} repeated")));
            }
            bits |= b;
        }
        Ok(Self { bits, n: n as u8 })
    }

    pub(crate) fn from_bits_unchecked(n: usize, bits: u64) -> Self {
        debug_assert!(bits & !low_mask(n) == 0);
        Self { bits, n: n as u8 }
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::from_bits(n, 0)
    }

    pub fn full(n: usize) -> Result<Self> {
        Self::from_bits(n, low_mask(n))
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn ground(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(&self, element: usize) -> bool {
        element >= 1 && element <= self.ground() && self.bits >> (element - 1) & 1 == 1
    }

    /// Elements in ascending order, 1-based.
    pub fn elements(&self) -> Elements {
        Elements { rest: self.bits }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.elements().collect()
    }

    #[inline]
    pub fn intersection_size(&self, other: &KSubset) -> usize {
        (self.bits & other.bits).count_ones() as usize
    }

    #[inline]
    pub fn is_disjoint(&self, other: &KSubset) -> bool {
        self.bits & other.bits == 0
    }

    #[inline]
    pub fn is_subset_of(&self, other: &KSubset) -> bool {
        self.bits & !other.bits == 0
    }

    /// `[n] \ self`.
    pub fn complement(&self) -> KSubset {
        Self::from_bits_unchecked(self.ground(), !self.bits & low_mask(self.ground()))
    }

    pub fn union(&self, other: &KSubset) -> KSubset {
        Self::from_bits_unchecked(self.ground().max(other.ground()), self.bits | other.bits)
    }

    /// Rank of this set among all subsets of the same size in colex order.
    pub fn colex_rank(&self) -> u64 {
        self.elements()
            .enumerate()
            .map(|(i, e)| binomial(e - 1, i + 1))
            .sum()
    }

    /// Inverse of [`KSubset::colex_rank`].
    pub fn colex_unrank(n: usize, k: usize, rank: u64) -> Result<Self> {
        if k > n || n > MAX_GROUND {
            return Err(constraint("k <= n <= 64", format!("n = {n}, k = {k}")));
        }
        if rank >= binomial(n, k) {
            return Err(Error::Domain(format!(
                "rank {rank} out of range for C({n}, {k})"
            )));
        }
        let mut rank = rank;
        let mut bits = 0u64;
        let mut top = n;
        for i in (1..=k).rev() {
            // largest position p (0-based) with C(p, i) <= rank
            let mut p = top - 1;
            while binomial(p, i) > rank {
                p -= 1;
            }
            bits |= 1u64 << p;
            rank -= binomial(p, i);
            top = p;
        }
        Ok(Self { bits, n: n as u8 })
    }
}

impl PartialOrd for KSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Size first, then colex.
impl Ord for KSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then(self.bits.cmp(&other.bits))
            .then(self.n.cmp(&other.n))
    }
}

impl fmt::Debug for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for KSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements())
    }
}

pub struct Elements {
    rest: u64,
}

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.rest == 0 {
            return None;
        }
        let e = self.rest.trailing_zeros() as usize + 1;
        self.rest &= self.rest - 1;
        Some(e)
    }
}

/// Next larger word with the same popcount (Gosper), `None` past bit `width`.
fn next_same_weight(x: u64, width: usize) -> Option<u64> {
    if x == 0 {
        return None;
    }
    let x = x as u128;
    let c = x & x.wrapping_neg();
    let r = x + c;
    let next = (((r ^ x) >> 2) / c) | r;
    if next >> width != 0 {
        None
    } else {
        Some(next as u64)
    }
}

/// All `k`-subsets of `[n]` in colex order.
pub struct KSubsets {
    n: usize,
    next: Option<u64>,
}

impl KSubsets {
    pub fn new(n: usize, k: usize) -> Self {
        let next = if k > n || n > MAX_GROUND {
            None
        } else {
            Some(low_mask(k))
        };
        Self { n, next }
    }
}

impl Iterator for KSubsets {
    type Item = KSubset;

    fn next(&mut self) -> Option<KSubset> {
        let cur = self.next?;
        self.next = next_same_weight(cur, self.n);
        Some(KSubset::from_bits_unchecked(self.n, cur))
    }
}

/// All `r`-element subsets of the bits of `mask`, in colex order, as words.
pub struct SubMasks {
    positions: Vec<u32>,
    next: Option<u64>,
}

impl SubMasks {
    pub fn new(mask: u64, r: usize) -> Self {
        let positions: Vec<u32> = (0..64).filter(|&b| mask >> b & 1 == 1).collect();
        let next = if r > positions.len() {
            None
        } else {
            Some(low_mask(r))
        };
        Self { positions, next }
    }
}

impl Iterator for SubMasks {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        self.next = next_same_weight(cur, self.positions.len());
        let mut out = 0u64;
        let mut rest = cur;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            out |= 1u64 << self.positions[i];
            rest &= rest - 1;
        }
        Some(out)
    }
}
