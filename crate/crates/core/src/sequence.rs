//! Stepping sequences and simulation-based verification.

use std::fmt;

use crate::bits::BitTable;
use crate::chain::{DifferenceSequence, SubsetMask, MAX_WIDTH};
use crate::error::{Error, Result};

/// Default cap on `m` for [`verify`]; the visited table takes `2^m` bits.
pub const DEFAULT_VERIFY_LIMIT: usize = 28;

/// A move list together with the chain length `m` it acts on.
///
/// Construction only checks `1 <= m <= 64`; whether the moves actually form
/// a stepping sequence is the job of [`verify`]. Ordering is lexicographic on
/// the move list for equal `m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SteppingSequence {
    m: usize,
    moves: Vec<u8>,
}

impl SteppingSequence {
    pub fn new(m: usize, moves: Vec<u8>) -> Result<Self> {
        if !(1..=MAX_WIDTH).contains(&m) {
            return Err(Error::OutOfRange {
                what: "m",
                value: m as u64,
                min: 1,
                max: MAX_WIDTH as u64,
            });
        }
        Ok(SteppingSequence { m, moves })
    }

    pub(crate) fn from_parts(m: usize, moves: Vec<u8>) -> Self {
        debug_assert!((1..=MAX_WIDTH).contains(&m));
        SteppingSequence { m, moves }
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn moves(&self) -> &[u8] {
        &self.moves
    }

    pub fn into_moves(self) -> Vec<u8> {
        self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Every move lies in `[1, m-1]` and no two consecutive moves are equal.
    pub fn is_well_formed(&self) -> bool {
        self.moves.iter().all(|&i| i >= 1 && (i as usize) < self.m)
            && self.moves.windows(2).all(|w| w[0] != w[1])
    }
}

/// Space-separated decimal moves.
impl fmt::Display for SteppingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_moves(&self.moves))
    }
}

/// `2^m - m - 1`, the length of any stepping sequence for `m`.
pub fn expected_len(m: usize) -> u64 {
    assert!((1..=MAX_WIDTH).contains(&m));
    if m == 64 {
        u64::MAX - 64
    } else {
        (1u64 << m) - m as u64 - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FailureReason {
    RepeatedSubset,
    InitialSubsetRevisited,
    WrongLength,
    IndexOutOfRange,
    ConsecutiveEqualMoves,
}

impl FailureReason {
    /// Kebab-case name used in reports.
    pub fn as_str(self) -> &'static str {
        match self {
            FailureReason::RepeatedSubset => "repeated-subset",
            FailureReason::InitialSubsetRevisited => "initial-subset-revisited",
            FailureReason::WrongLength => "wrong-length",
            FailureReason::IndexOutOfRange => "index-out-of-range",
            FailureReason::ConsecutiveEqualMoves => "consecutive-equal-moves",
        }
    }
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The earliest violated condition found while simulating a candidate.
///
/// `step` is 1-based: step `p` is the application of `moves[p-1]`. A
/// sequence that runs out early fails with `WrongLength` at step
/// `moves.len() + 1`, the first step that should have existed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VerificationFailure {
    pub step: usize,
    pub reason: FailureReason,
    /// The regenerated subset, for `RepeatedSubset` and `InitialSubsetRevisited`.
    pub repeated_subset: Option<SubsetMask>,
}

impl fmt::Display for VerificationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at step {}", self.reason, self.step)?;
        if let Some(s) = self.repeated_subset {
            write!(f, " (subset {s})")?;
        }
        Ok(())
    }
}

/// Outcome of [`verify`]: valid exactly when no failure was recorded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VerificationReport {
    pub failure: Option<VerificationFailure>,
}

impl VerificationReport {
    pub const VALID: VerificationReport = VerificationReport { failure: None };

    #[inline]
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }

    fn fail(step: usize, reason: FailureReason, repeated_subset: Option<SubsetMask>) -> Self {
        VerificationReport {
            failure: Some(VerificationFailure {
                step,
                reason,
                repeated_subset,
            }),
        }
    }

    /// `Ok(())` when valid, otherwise the failure as an error.
    pub fn into_result(self) -> Result<()> {
        match self.failure {
            None => Ok(()),
            Some(f) => Err(Error::NotStepping(f)),
        }
    }
}

/// Simulates `seq` from the identity chain and reports whether it visits
/// every non-initial subset exactly once. Uses [`DEFAULT_VERIFY_LIMIT`].
pub fn verify(seq: &SteppingSequence) -> Result<VerificationReport> {
    verify_with_limit(seq, DEFAULT_VERIFY_LIMIT)
}

pub fn verify_with_limit(seq: &SteppingSequence, limit: usize) -> Result<VerificationReport> {
    let m = seq.m();
    if m > limit {
        return Err(Error::LimitExceeded {
            what: "verification",
            m,
            limit,
        });
    }
    if m == 1 {
        return Ok(if seq.is_empty() {
            VerificationReport::VALID
        } else {
            VerificationReport::fail(1, FailureReason::IndexOutOfRange, None)
        });
    }

    let mut chain = DifferenceSequence::new_chain(m)?;
    let mut visited = BitTable::with_width(m);
    let mut prev = 0u8;
    for (n, &mv) in seq.moves().iter().enumerate() {
        let step = n + 1;
        if mv < 1 || mv as usize >= m {
            return Ok(VerificationReport::fail(
                step,
                FailureReason::IndexOutOfRange,
                None,
            ));
        }
        if mv == prev {
            return Ok(VerificationReport::fail(
                step,
                FailureReason::ConsecutiveEqualMoves,
                None,
            ));
        }
        prev = mv;
        let s = chain.step_unchecked(mv as usize);
        // Initial subsets {0,…,i-1} are exactly the masks of the form 2^i - 1.
        if s.bits() & s.bits().wrapping_add(1) == 0 {
            return Ok(VerificationReport::fail(
                step,
                FailureReason::InitialSubsetRevisited,
                Some(s),
            ));
        }
        if visited.get(s.bits()) {
            return Ok(VerificationReport::fail(
                step,
                FailureReason::RepeatedSubset,
                Some(s),
            ));
        }
        visited.set(s.bits());
    }
    // With no repeats, a sequence longer than expected is impossible, so the
    // only remaining length failure is running out early.
    if (seq.len() as u64) < expected_len(m) {
        return Ok(VerificationReport::fail(
            seq.len() + 1,
            FailureReason::WrongLength,
            None,
        ));
    }
    Ok(VerificationReport::VALID)
}

/// Occurrence counts of each move index: entry `k` counts move `k + 1`, so
/// the result has `m - 1` entries. Out-of-range moves are not counted.
pub fn occurrence_profile(seq: &SteppingSequence) -> Vec<u64> {
    let mut counts = vec![0u64; seq.m() - 1];
    for &mv in seq.moves() {
        if mv >= 1 && (mv as usize) < seq.m() {
            counts[mv as usize - 1] += 1;
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(m: usize, moves: &[u8]) -> SteppingSequence {
        SteppingSequence::new(m, moves.to_vec()).unwrap()
    }

    fn failure(m: usize, moves: &[u8]) -> VerificationFailure {
        verify(&seq(m, moves))
            .unwrap()
            .failure
            .expect("should be invalid")
    }

    #[test]
    fn valid_small_sequences() {
        assert!(verify(&seq(3, &[2, 1, 2, 1])).unwrap().is_valid());
        assert!(verify(&seq(3, &[1, 2, 1, 2])).unwrap().is_valid());
        assert!(verify(&seq(4, &[3, 2, 3, 2, 1, 2, 3, 1, 2, 1, 2]))
            .unwrap()
            .is_valid());
        assert!(verify(&seq(2, &[1])).unwrap().is_valid());
        assert!(verify(&seq(1, &[])).unwrap().is_valid());
    }

    #[test]
    fn consecutive_equal_reported_first() {
        let f = failure(2, &[1, 1]);
        assert_eq!(f.reason, FailureReason::ConsecutiveEqualMoves);
        assert_eq!(f.step, 2);
        assert_eq!(f.repeated_subset, None);
    }

    #[test]
    fn short_sequence_is_wrong_length() {
        let f = failure(3, &[2, 1, 2]);
        assert_eq!(f.reason, FailureReason::WrongLength);
        assert_eq!(f.step, 4);
        assert_eq!(failure(3, &[]).reason, FailureReason::WrongLength);
    }

    #[test]
    fn out_of_range_moves() {
        assert_eq!(failure(3, &[0]).reason, FailureReason::IndexOutOfRange);
        let f = failure(3, &[2, 3]);
        assert_eq!((f.reason, f.step), (FailureReason::IndexOutOfRange, 2));
        assert_eq!(failure(1, &[1]).reason, FailureReason::IndexOutOfRange);
    }

    #[test]
    fn initial_subset_revisited() {
        // Overshooting R_3: the fifth move regenerates S_2 = {0,1}.
        let f = failure(3, &[2, 1, 2, 1, 2]);
        assert_eq!(f.reason, FailureReason::InitialSubsetRevisited);
        assert_eq!(f.step, 5);
        assert_eq!(f.repeated_subset, Some(SubsetMask::new(0b011)));

        let f = failure(3, &[1, 2, 1, 2, 1]);
        assert_eq!(f.reason, FailureReason::InitialSubsetRevisited);
        assert_eq!(f.repeated_subset, Some(SubsetMask::new(0b001)));

        // {0,1,3}, {0,3}, {0,2,3}, {0,2}, then S_3 = {0,1,2} again.
        let f = failure(4, &[3, 2, 3, 2, 3]);
        assert_eq!(
            (f.reason, f.step),
            (FailureReason::InitialSubsetRevisited, 5)
        );

        // {0,1,3}, {0,3}, {3}, {1,3}, {1}, then S_2 = {0,1} again.
        let f = failure(4, &[3, 2, 1, 2, 1, 2]);
        assert_eq!(
            (f.reason, f.step),
            (FailureReason::InitialSubsetRevisited, 6)
        );
    }

    #[test]
    fn repeated_subset_detected() {
        // {1}, {1,2}, {2}, {1,2,3}, {2,3}, {3}, {1,3}, then {1} again.
        let f = failure(4, &[1, 2, 1, 3, 2, 1, 2, 1]);
        assert_eq!(f.reason, FailureReason::RepeatedSubset);
        assert_eq!(f.step, 8);
        assert_eq!(f.repeated_subset, Some(SubsetMask::new(0b0010)));
    }

    #[test]
    fn limit_is_enforced() {
        let s = seq(29, &[]);
        assert!(matches!(verify(&s), Err(Error::LimitExceeded { .. })));
        assert!(verify_with_limit(&seq(5, &[]), 4).is_err());
    }

    #[test]
    fn profile_examples() {
        assert_eq!(occurrence_profile(&seq(3, &[2, 1, 2, 1])), vec![2, 2]);
        assert_eq!(
            occurrence_profile(&seq(4, &[3, 2, 3, 2, 1, 2, 3, 2, 1, 2, 1])),
            vec![3, 5, 3]
        );
        assert!(occurrence_profile(&seq(1, &[])).is_empty());
    }

    #[test]
    fn expected_lengths() {
        assert_eq!(expected_len(1), 0);
        assert_eq!(expected_len(2), 1);
        assert_eq!(expected_len(4), 11);
        assert_eq!(expected_len(64), u64::MAX - 64);
    }

    #[test]
    fn well_formedness() {
        assert!(seq(3, &[2, 1, 2, 1]).is_well_formed());
        assert!(!seq(3, &[2, 2]).is_well_formed());
        assert!(!seq(3, &[3]).is_well_formed());
        assert!(SteppingSequence::new(0, vec![]).is_err());
        assert!(SteppingSequence::new(65, vec![]).is_err());
    }
}
