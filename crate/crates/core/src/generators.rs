//! Constructions of the canonical stepping sequence `R_m` and the two
//! combinators that build stepping sequences for `m` from ones for `m - 1`.
//!
//! `R_2 = [1]` and `R_m = (R_{m-1} + 1) ∪ [1, …, m-1] ∪ R_{m-1}`. The same
//! sequence comes out of the greedy search, the for-`c` loop, and the
//! for-`j` loop; the two loops are streamed in constant space.

use std::ops::RangeInclusive;

use crate::bits::BitTable;
use crate::chain::{DifferenceSequence, MAX_WIDTH};
use crate::error::{Error, Result};
use crate::sequence::{expected_len, verify, SteppingSequence};

/// Default cap on `m` for materialized sequences (`R_30` has ~10^9 moves).
pub const DEFAULT_MATERIALIZE_LIMIT: usize = 30;
/// Default cap on `m` for greedy and humble, which keep a `2^m`-bit seen set.
pub const DEFAULT_GREEDY_LIMIT: usize = 24;

fn check_width(m: usize, what: &'static str, limit: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::OutOfRange {
            what: "m",
            value: m as u64,
            min: 2,
            max: limit.min(MAX_WIDTH) as u64,
        });
    }
    if m > limit || m > MAX_WIDTH {
        return Err(Error::LimitExceeded {
            what,
            m,
            limit: limit.min(MAX_WIDTH),
        });
    }
    Ok(())
}

/// `R_m` by the defining recursion.
pub fn recursive_r(m: usize) -> Result<SteppingSequence> {
    recursive_r_with_limit(m, DEFAULT_MATERIALIZE_LIMIT)
}

pub fn recursive_r_with_limit(m: usize, limit: usize) -> Result<SteppingSequence> {
    check_width(m, "materialization", limit)?;
    let mut r: Vec<u8> = Vec::with_capacity(expected_len(m) as usize);
    r.push(1);
    for k in 3..=m {
        let half = r.len();
        r.extend_from_within(..half);
        for mv in &mut r[..half] {
            *mv += 1;
        }
        // [R+1 | R] -> [R+1 | 1..k-1 | R]
        r.splice(half..half, 1..k as u8);
    }
    Ok(SteppingSequence::from_parts(m, r))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Preference {
    Largest,
    Smallest,
}

fn greedy_walk(m: usize, limit: usize, pref: Preference) -> Result<SteppingSequence> {
    check_width(m, "greedy", limit)?;
    let mut chain = DifferenceSequence::new_chain(m)?;
    let mut seen = BitTable::with_width(m);
    for i in 1..=m {
        seen.set(chain.subset_at(i)?.bits());
    }
    let mut out = Vec::with_capacity(expected_len(m) as usize);
    loop {
        // J = { i : S_i^* not seen }; pick its max (or min) without building it.
        let unseen = |i: &usize| !seen.get(chain.alteration_unchecked(*i).bits());
        let pick = match pref {
            Preference::Largest => (1..m).rev().find(unseen),
            Preference::Smallest => (1..m).find(unseen),
        };
        let Some(j) = pick else { break };
        let s = chain.step_unchecked(j);
        seen.set(s.bits());
        out.push(j as u8);
    }
    Ok(SteppingSequence::from_parts(m, out))
}

/// Always alters the largest set whose alteration has not been seen.
pub fn greedy(m: usize) -> Result<SteppingSequence> {
    greedy_with_limit(m, DEFAULT_GREEDY_LIMIT)
}

pub fn greedy_with_limit(m: usize, limit: usize) -> Result<SteppingSequence> {
    greedy_walk(m, limit, Preference::Largest)
}

/// Always alters the smallest set whose alteration has not been seen.
pub fn humble(m: usize) -> Result<SteppingSequence> {
    humble_with_limit(m, DEFAULT_GREEDY_LIMIT)
}

pub fn humble_with_limit(m: usize, limit: usize) -> Result<SteppingSequence> {
    greedy_walk(m, limit, Preference::Smallest)
}

/// A pull-based generator of move indices.
pub trait MoveStream: Iterator<Item = u8> {
    fn m(&self) -> usize;

    /// Moves returned by `next` so far.
    fn emitted(&self) -> u64;

    /// Moves a full drain returns, `2^m - m - 1`.
    fn total_expected(&self) -> u64 {
        expected_len(self.m())
    }

    /// Internal loop variable `t` of the for-`j` loop, if the stream has one.
    fn final_t(&self) -> Option<i64> {
        None
    }

    /// Machine words of working state. Streams hold no heap data, so this is
    /// their inline size and does not depend on `m` or on progress.
    fn live_state_words(&self) -> usize;
}

fn check_stream_width(m: usize) -> Result<()> {
    check_width(m, "stream", MAX_WIDTH)
}

/// The block `[d, d+1, …, d+v]` emitted at step `c` of the for-`c` loop,
/// with `v = v2(c)`, `h` the Hamming weight of `c` and `d = m - v - h`.
/// Requires `1 <= c < 2^(m-1)`.
pub fn for_c_block(m: usize, c: u64) -> RangeInclusive<u8> {
    debug_assert!(c >= 1 && (m == 64 || c < 1u64 << (m - 1)));
    let v = c.trailing_zeros() as u8;
    let h = c.count_ones() as u8;
    let d = m as u8 - v - h;
    d..=d + v
}

/// `R_m` from the for-`c` loop, one block per `c = 1 … 2^(m-1) - 1`.
#[derive(Clone, Debug)]
pub struct ForCStream {
    m: u8,
    c: u64,
    last_c: u64,
    next: u8,
    end: u8,
    emitted: u64,
}

pub fn stream_for_c(m: usize) -> Result<ForCStream> {
    check_stream_width(m)?;
    Ok(ForCStream {
        m: m as u8,
        c: 0,
        last_c: (1u64 << (m - 1)) - 1,
        next: 1,
        end: 0,
        emitted: 0,
    })
}

impl Iterator for ForCStream {
    type Item = u8;

    #[inline]
    fn next(&mut self) -> Option<u8> {
        if self.next > self.end {
            if self.c == self.last_c {
                return None;
            }
            self.c += 1;
            let block = for_c_block(self.m as usize, self.c);
            self.next = *block.start();
            self.end = *block.end();
        }
        let mv = self.next;
        self.next += 1;
        self.emitted += 1;
        Some(mv)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.total_expected() - self.emitted;
        (
            usize::try_from(left).unwrap_or(usize::MAX),
            usize::try_from(left).ok(),
        )
    }
}

impl MoveStream for ForCStream {
    fn m(&self) -> usize {
        self.m as usize
    }

    fn emitted(&self) -> u64 {
        self.emitted
    }

    fn live_state_words(&self) -> usize {
        std::mem::size_of::<Self>().div_ceil(8)
    }
}

/// One iteration of the for-`j` loop: the run `[t, …, t+v+1]` followed by
/// the single move `t+v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForJBlock {
    pub j: u64,
    pub run: RangeInclusive<u8>,
    pub tail: u8,
}

impl ForJBlock {
    pub fn moves(&self) -> impl Iterator<Item = u8> + '_ {
        self.run.clone().chain(std::iter::once(self.tail))
    }
}

/// The for-`j` loop as a sequence of blocks, excluding the leading `[m-1]`.
#[derive(Clone, Debug)]
pub struct ForJBlocks {
    j: u64,
    last_j: u64,
    t: i64,
}

pub fn for_j_blocks(m: usize) -> Result<ForJBlocks> {
    check_stream_width(m)?;
    Ok(ForJBlocks {
        j: 0,
        last_j: (1u64 << (m - 2)) - 1,
        t: m as i64 - 2,
    })
}

impl ForJBlocks {
    /// Current value of `t`; zero once the loop is exhausted.
    pub fn t(&self) -> i64 {
        self.t
    }
}

impl Iterator for ForJBlocks {
    type Item = ForJBlock;

    #[inline]
    fn next(&mut self) -> Option<ForJBlock> {
        if self.j == self.last_j {
            return None;
        }
        self.j += 1;
        let v = self.j.trailing_zeros() as i64;
        let t = self.t;
        debug_assert!(t >= 1);
        self.t += v - 1;
        Some(ForJBlock {
            j: self.j,
            run: t as u8..=(t + v + 1) as u8,
            tail: (t + v) as u8,
        })
    }
}

/// `R_m` from the for-`j` loop: `[m-1]` and then one block per
/// `j = 1 … 2^(m-2) - 1`.
#[derive(Clone, Debug)]
pub struct ForJStream {
    m: u8,
    started: bool,
    blocks: ForJBlocks,
    next: u8,
    end: u8,
    tail: Option<u8>,
    emitted: u64,
}

pub fn stream_for_j(m: usize) -> Result<ForJStream> {
    Ok(ForJStream {
        m: m as u8,
        started: false,
        blocks: for_j_blocks(m)?,
        next: 1,
        end: 0,
        tail: None,
        emitted: 0,
    })
}

impl ForJStream {
    fn pull(&mut self) -> Option<u8> {
        if !self.started {
            self.started = true;
            return Some(self.m - 1);
        }
        if self.next <= self.end {
            let mv = self.next;
            self.next += 1;
            return Some(mv);
        }
        if let Some(tail) = self.tail.take() {
            return Some(tail);
        }
        let block = self.blocks.next()?;
        self.next = *block.run.start() + 1;
        self.end = *block.run.end();
        self.tail = Some(block.tail);
        Some(*block.run.start())
    }
}

impl Iterator for ForJStream {
    type Item = u8;

    #[inline]
    fn next(&mut self) -> Option<u8> {
        let mv = self.pull()?;
        self.emitted += 1;
        Some(mv)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.total_expected() - self.emitted;
        (
            usize::try_from(left).unwrap_or(usize::MAX),
            usize::try_from(left).ok(),
        )
    }
}

impl MoveStream for ForJStream {
    fn m(&self) -> usize {
        self.m as usize
    }

    fn emitted(&self) -> u64 {
        self.emitted
    }

    fn final_t(&self) -> Option<i64> {
        Some(self.blocks.t())
    }

    fn live_state_words(&self) -> usize {
        std::mem::size_of::<Self>().div_ceil(8)
    }
}

/// Drains a stream into a sequence, subject to the materialization limit.
pub fn materialize<S: MoveStream>(stream: S, limit: usize) -> Result<SteppingSequence> {
    let m = stream.m();
    check_width(m, "materialization", limit)?;
    let moves: Vec<u8> = stream.collect();
    Ok(SteppingSequence::from_parts(m, moves))
}

fn combinator_width(a: &SteppingSequence, b: &SteppingSequence) -> Result<usize> {
    if a.m() != b.m() {
        return Err(Error::WidthMismatch {
            left: a.m(),
            right: b.m(),
        });
    }
    let m = a.m() + 1;
    if m > MAX_WIDTH {
        return Err(Error::OutOfRange {
            what: "m",
            value: m as u64,
            min: 2,
            max: MAX_WIDTH as u64,
        });
    }
    Ok(m)
}

fn shifted(moves: &[u8]) -> impl Iterator<Item = u8> + '_ {
    moves.iter().map(|&i| i + 1)
}

/// `(A + 1) ∪ [1, …, m-1] ∪ B` for stepping sequences `A`, `B` on `m - 1`.
///
/// Inputs are not verified; see [`combine_first_checked`].
pub fn combine_first(a: &SteppingSequence, b: &SteppingSequence) -> Result<SteppingSequence> {
    let m = combinator_width(a, b)?;
    let moves = shifted(a.moves())
        .chain(1..m as u8)
        .chain(b.moves().iter().copied())
        .collect();
    Ok(SteppingSequence::from_parts(m, moves))
}

/// `A ∪ [m-1, …, 1] ∪ (B + 1)` for stepping sequences `A`, `B` on `m - 1`.
///
/// Inputs are not verified; see [`combine_second_checked`].
pub fn combine_second(a: &SteppingSequence, b: &SteppingSequence) -> Result<SteppingSequence> {
    let m = combinator_width(a, b)?;
    let moves = a
        .moves()
        .iter()
        .copied()
        .chain((1..m as u8).rev())
        .chain(shifted(b.moves()))
        .collect();
    Ok(SteppingSequence::from_parts(m, moves))
}

fn verify_inputs(a: &SteppingSequence, b: &SteppingSequence) -> Result<()> {
    verify(a)?.into_result()?;
    verify(b)?.into_result()
}

/// [`combine_first`] after verifying both inputs.
pub fn combine_first_checked(
    a: &SteppingSequence,
    b: &SteppingSequence,
) -> Result<SteppingSequence> {
    combinator_width(a, b)?;
    verify_inputs(a, b)?;
    combine_first(a, b)
}

/// [`combine_second`] after verifying both inputs.
pub fn combine_second_checked(
    a: &SteppingSequence,
    b: &SteppingSequence,
) -> Result<SteppingSequence> {
    combinator_width(a, b)?;
    verify_inputs(a, b)?;
    combine_second(a, b)
}
