//! Gray codes derived from stepping sequences.
//!
//! Simulating a stepping sequence lists every subset of `{0, …, m-1}` once;
//! read as bitmasks this is an ordering of the `m`-bit integers, and its
//! weight-`k` members form a Gray code through `k`-element subsets.

use crate::bits::low_mask;
use crate::chain::{DifferenceSequence, SubsetMask};
use crate::error::{Error, Result};
use crate::sequence::{verify_with_limit, SteppingSequence, DEFAULT_VERIFY_LIMIT};

/// The non-`R_6` strongly contiguous stepping sequence for `m = 6`.
pub const A6: [u8; 57] = [
    5, 4, 5, 4, 3, 2, 3, 4, 5, 4, 3, 2, 3, 4, 3, 2, 3, 2, 1, 2, 3, 4, 5, 4, 3, 4, 3, 2, 3, 4, 3, 2,
    3, 2, 1, 2, 3, 4, 5, 4, 3, 4, 3, 2, 3, 4, 3, 2, 1, 2, 3, 4, 3, 2, 1, 2, 1,
];

pub fn a6() -> SteppingSequence {
    SteppingSequence::from_parts(6, A6.to_vec())
}

/// Every `m`-bit word exactly once, in some order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayOrdering {
    m: usize,
    words: Vec<SubsetMask>,
}

impl GrayOrdering {
    /// Checks that `words` is a permutation of `0 .. 2^m`; `m <= 32`.
    pub fn new(m: usize, words: Vec<SubsetMask>) -> Result<Self> {
        if m > 32 || words.len() as u64 != 1u64 << m {
            return Err(Error::NotAPermutationOfWords(m));
        }
        let mut seen = vec![false; words.len()];
        for w in &words {
            if w.bits() > low_mask(m) || std::mem::replace(&mut seen[w.bits() as usize], true) {
                return Err(Error::NotAPermutationOfWords(m));
            }
        }
        Ok(GrayOrdering { m, words })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn words(&self) -> &[SubsetMask] {
        &self.words
    }

    /// Consecutive words differ in exactly one bit.
    pub fn is_gray(&self) -> bool {
        self.words
            .windows(2)
            .all(|w| (w[0].bits() ^ w[1].bits()).count_ones() == 1)
    }
}

/// The initial chain `S_0, …, S_m` followed by each subset `seq` generates.
pub fn to_ordering(seq: &SteppingSequence) -> Result<GrayOrdering> {
    to_ordering_with_limit(seq, DEFAULT_VERIFY_LIMIT)
}

pub fn to_ordering_with_limit(seq: &SteppingSequence, limit: usize) -> Result<GrayOrdering> {
    verify_with_limit(seq, limit)?.into_result()?;
    let m = seq.m();
    let mut words = Vec::with_capacity(1 << m);
    if m == 1 {
        words.extend([SubsetMask::EMPTY, SubsetMask::full(1)]);
        return Ok(GrayOrdering { m, words });
    }
    let mut chain = DifferenceSequence::new_chain(m)?;
    words.extend((0..=m).map(SubsetMask::full));
    for &mv in seq.moves() {
        words.push(chain.step_unchecked(mv as usize));
    }
    Ok(GrayOrdering { m, words })
}

/// Adjacent moves differ by exactly one.
pub fn is_contiguous(seq: &SteppingSequence) -> bool {
    seq.moves().windows(2).all(|w| w[0].abs_diff(w[1]) == 1)
}

/// Contiguous, first move `m - 1`, last move `1`.
pub fn is_strongly_contiguous(seq: &SteppingSequence) -> Result<bool> {
    let (Some(&first), Some(&last)) = (seq.moves().first(), seq.moves().last()) else {
        return Err(Error::EmptySequence);
    };
    Ok(is_contiguous(seq) && first as usize == seq.m() - 1 && last == 1)
}

/// Consecutive words, and the last and first, differ in exactly one bit.
pub fn is_cyclic_gray(ordering: &GrayOrdering) -> bool {
    let words = ordering.words();
    match (words.first(), words.last()) {
        (Some(first), Some(last)) if words.len() > 1 => {
            ordering.is_gray() && (first.bits() ^ last.bits()).count_ones() == 1
        }
        _ => false,
    }
}

/// The weight-`k` subsets in the order a stepping sequence visits them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KSubsetOrdering {
    pub m: usize,
    pub k: usize,
    pub sets: Vec<SubsetMask>,
}

impl KSubsetOrdering {
    /// Consecutive sets share exactly `k - 1` elements.
    pub fn is_gray(&self) -> bool {
        self.sets
            .windows(2)
            .all(|w| (w[0].bits() & w[1].bits()).count_ones() as usize + 1 == self.k)
    }

    /// The first and last sets also share `k - 1` elements.
    pub fn is_cyclic(&self) -> bool {
        match (self.sets.first(), self.sets.last()) {
            (Some(a), Some(b)) if self.sets.len() > 1 => {
                self.is_gray() && (a.bits() & b.bits()).count_ones() as usize + 1 == self.k
            }
            _ => false,
        }
    }
}

pub fn restrict_to_k(seq: &SteppingSequence, k: usize) -> Result<KSubsetOrdering> {
    restrict_to_k_with_limit(seq, k, DEFAULT_VERIFY_LIMIT)
}

pub fn restrict_to_k_with_limit(
    seq: &SteppingSequence,
    k: usize,
    limit: usize,
) -> Result<KSubsetOrdering> {
    if k > seq.m() {
        return Err(Error::OutOfRange {
            what: "k",
            value: k as u64,
            min: 0,
            max: seq.m() as u64,
        });
    }
    let ordering = to_ordering_with_limit(seq, limit)?;
    let sets = ordering
        .words
        .into_iter()
        .filter(|w| w.len() == k)
        .collect();
    Ok(KSubsetOrdering {
        m: seq.m(),
        k,
        sets,
    })
}

/// Binary reflected Gray code, `G_1 = [0, 1]` and
/// `G_m = 0·G_{m-1} ∪ 1·reverse(G_{m-1})` with the prefix as the high bit.
pub fn brgc(m: usize) -> Result<GrayOrdering> {
    if !(1..=20).contains(&m) {
        return Err(Error::OutOfRange {
            what: "m",
            value: m as u64,
            min: 1,
            max: 20,
        });
    }
    let mut words = vec![0u64, 1];
    for bit in 1..m {
        let high = 1u64 << bit;
        let reflected: Vec<u64> = words.iter().rev().map(|w| w | high).collect();
        words.extend(reflected);
    }
    Ok(GrayOrdering {
        m,
        words: words.into_iter().map(SubsetMask::new).collect(),
    })
}

/// Where an ordering stops being readable as a walk through nested chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestingViolation {
    /// 0-based index of the offending word.
    pub position: usize,
    pub word: SubsetMask,
    /// Latest subset of each cardinality seen so far, by cardinality.
    pub family: Vec<SubsetMask>,
}

/// Scans `ordering` keeping the latest subset of each cardinality and
/// reports the first position where those representatives stop forming a
/// chain. Cardinalities not yet seen are unconstrained.
pub fn nesting_violation(ordering: &GrayOrdering) -> Option<NestingViolation> {
    let mut latest: Vec<Option<SubsetMask>> = vec![None; ordering.m() + 1];
    for (position, &word) in ordering.words().iter().enumerate() {
        latest[word.len()] = Some(word);
        let family: Vec<SubsetMask> = latest.iter().flatten().copied().collect();
        if !family.windows(2).all(|w| w[0].is_subset_of(w[1])) {
            return Some(NestingViolation {
                position,
                word,
                family,
            });
        }
    }
    None
}
