//! Nested chains `S_0 ⊂ S_1 ⊂ … ⊂ S_m` and the moves that alter them.
//!
//! The ground set is always `{0, …, m-1}` and subsets are bitmasks via
//! `S ↦ Σ_{i∈S} 2^i`. Other labellings (for instance `{1, …, m}`) are a
//! matter of display, see [`DifferenceSequence::display_relabeled`].

use std::fmt;

use crate::bits::low_mask;
use crate::error::{Error, Result};

/// Largest supported chain length; a subset must fit one machine word.
pub const MAX_WIDTH: usize = 64;

/// A subset of `{0, …, 63}` encoded as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetMask(u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    #[inline]
    pub const fn new(bits: u64) -> Self {
        SubsetMask(bits)
    }

    /// The set `{0, …, m-1}`.
    #[inline]
    pub fn full(m: usize) -> Self {
        SubsetMask(low_mask(m))
    }

    pub fn from_elements<I: IntoIterator<Item = u8>>(elements: I) -> Self {
        SubsetMask(elements.into_iter().fold(0, |acc, e| acc | 1 << e))
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Cardinality, i.e. the Hamming weight of the mask.
    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, element: u8) -> bool {
        element < 64 && self.0 & (1 << element) != 0
    }

    #[inline]
    pub const fn with(self, element: u8) -> Self {
        SubsetMask(self.0 | 1 << element)
    }

    #[inline]
    pub const fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    /// Elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = u8> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let e = rest.trailing_zeros() as u8;
            rest &= rest - 1;
            Some(e)
        })
    }

    /// Exactly `m` binary digits, high bit first.
    pub fn to_binary(self, m: usize) -> String {
        (0..m)
            .rev()
            .map(|i| if self.0 >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

/// Braced, comma-separated, sorted elements: `{0,2}`; the empty set is `{}`.
impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, e) in self.elements().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// The difference sequence `⟨q_1, …, q_m⟩` of a nested chain, where `q_i`
/// is the element of `S_i \ S_{i-1}`.
///
/// The prefix masks `S_0, …, S_m` are cached alongside the labels so that a
/// move and the lookup of any `S_i` are both O(1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DifferenceSequence {
    labels: Vec<u8>,
    prefix: Vec<SubsetMask>,
}

fn check_move(m: usize, i: usize) -> Result<()> {
    if i < 1 || i >= m {
        return Err(Error::OutOfRange {
            what: "move index",
            value: i as u64,
            min: 1,
            max: m as u64 - 1,
        });
    }
    Ok(())
}

impl DifferenceSequence {
    /// The identity chain `⟨0, 1, …, m-1⟩`, so `S_i = {0, …, i-1}`.
    pub fn new_chain(m: usize) -> Result<Self> {
        if !(2..=MAX_WIDTH).contains(&m) {
            return Err(Error::OutOfRange {
                what: "m",
                value: m as u64,
                min: 2,
                max: MAX_WIDTH as u64,
            });
        }
        Ok(Self::from_labels_unchecked((0..m as u8).collect()))
    }

    /// Chain with the given difference sequence, which must be a permutation
    /// of `{0, …, m-1}` with `2 <= m <= 64`.
    pub fn from_labels(labels: Vec<u8>) -> Result<Self> {
        let m = labels.len();
        if !(2..=MAX_WIDTH).contains(&m) {
            return Err(Error::OutOfRange {
                what: "m",
                value: m as u64,
                min: 2,
                max: MAX_WIDTH as u64,
            });
        }
        let seen = labels.iter().try_fold(0u64, |acc, &q| {
            if (q as usize) < m && acc & 1 << q == 0 {
                Some(acc | 1 << q)
            } else {
                None
            }
        });
        if seen.is_none() {
            return Err(Error::NotAPermutation(labels));
        }
        Ok(Self::from_labels_unchecked(labels))
    }

    fn from_labels_unchecked(labels: Vec<u8>) -> Self {
        let mut prefix = Vec::with_capacity(labels.len() + 1);
        let mut acc = SubsetMask::EMPTY;
        prefix.push(acc);
        for &q in &labels {
            acc = acc.with(q);
            prefix.push(acc);
        }
        DifferenceSequence { labels, prefix }
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.labels.len()
    }

    /// `q_1, …, q_m` (position 0 holds `q_1`).
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// `S_i` for `0 <= i <= m`.
    pub fn subset_at(&self, i: usize) -> Result<SubsetMask> {
        self.prefix.get(i).copied().ok_or(Error::OutOfRange {
            what: "i",
            value: i as u64,
            min: 0,
            max: self.m() as u64,
        })
    }

    /// The alteration `S_i^* = S_{i-1} ∪ (S_{i+1} \ S_i)` that move `i`
    /// would produce, without applying it.
    pub fn alteration(&self, i: usize) -> Result<SubsetMask> {
        check_move(self.m(), i)?;
        Ok(self.alteration_unchecked(i))
    }

    #[inline]
    pub(crate) fn alteration_unchecked(&self, i: usize) -> SubsetMask {
        self.prefix[i - 1].with(self.labels[i])
    }

    /// Applies move `i`, returning the new chain and the new `S_i`.
    pub fn apply_move(&self, i: usize) -> Result<(Self, SubsetMask)> {
        let mut next = self.clone();
        let s = next.step(i)?;
        Ok((next, s))
    }

    /// In-place form of [`apply_move`](Self::apply_move).
    pub fn step(&mut self, i: usize) -> Result<SubsetMask> {
        check_move(self.m(), i)?;
        Ok(self.step_unchecked(i))
    }

    /// Transposes `q_i` and `q_{i+1}`. Requires `1 <= i < m`.
    #[inline]
    pub(crate) fn step_unchecked(&mut self, i: usize) -> SubsetMask {
        let s = self.alteration_unchecked(i);
        self.labels.swap(i - 1, i);
        self.prefix[i] = s;
        s
    }

    /// Labels shifted by `offset`, comma-separated. `display_relabeled(1)`
    /// shows the chain over `{1, …, m}`.
    pub fn display_relabeled(&self, offset: u32) -> String {
        join_labels(self.labels.iter().map(|&q| q as u32 + offset))
    }
}

fn join_labels<I: Iterator<Item = u32>>(labels: I) -> String {
    labels.map(|q| q.to_string()).collect::<Vec<_>>().join(",")
}

/// Comma-separated labels, e.g. `0,1,3,2`.
impl fmt::Display for DifferenceSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_relabeled(0))
    }
}
