//! Reverse, complement and commutation, and closure under them.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::sequence::SteppingSequence;

/// Default cap on `m` for [`orbit_closure`].
pub const DEFAULT_ORBIT_WIDTH_LIMIT: usize = 8;
/// Default cap on the number of sequences in an orbit.
pub const DEFAULT_ORBIT_SIZE_LIMIT: usize = 1 << 20;

/// Replaces every move `i` by `m - i`.
pub fn complement(seq: &SteppingSequence) -> SteppingSequence {
    let m = seq.m() as u8;
    let moves = seq.moves().iter().map(|&i| m.wrapping_sub(i)).collect();
    SteppingSequence::from_parts(seq.m(), moves)
}

pub fn reverse(seq: &SteppingSequence) -> SteppingSequence {
    let moves = seq.moves().iter().rev().copied().collect();
    SteppingSequence::from_parts(seq.m(), moves)
}

/// Every sequence obtained by swapping one adjacent pair of moves that
/// differ by at least 2, in order of the swapped position.
pub fn commutations(seq: &SteppingSequence) -> Vec<SteppingSequence> {
    let moves = seq.moves();
    (0..moves.len().saturating_sub(1))
        .filter(|&p| moves[p].abs_diff(moves[p + 1]) >= 2)
        .map(|p| {
            let mut swapped = moves.to_vec();
            swapped.swap(p, p + 1);
            SteppingSequence::from_parts(seq.m(), swapped)
        })
        .collect()
}

/// Which operations generate an orbit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct OrbitOps {
    pub reverse: bool,
    pub complement: bool,
    pub commutation: bool,
}

impl OrbitOps {
    pub const ALL: OrbitOps = OrbitOps {
        reverse: true,
        complement: true,
        commutation: true,
    };
    pub const COMMUTATION: OrbitOps = OrbitOps {
        reverse: false,
        complement: false,
        commutation: true,
    };
    pub const REVERSE_COMPLEMENT: OrbitOps = OrbitOps {
        reverse: true,
        complement: true,
        commutation: false,
    };
}

/// Smallest set containing `seeds` and closed under `ops`, sorted
/// lexicographically. Uses the default width and size caps.
pub fn orbit_closure(seeds: &[SteppingSequence], ops: OrbitOps) -> Result<Vec<SteppingSequence>> {
    orbit_closure_with_limits(
        seeds,
        ops,
        DEFAULT_ORBIT_WIDTH_LIMIT,
        DEFAULT_ORBIT_SIZE_LIMIT,
    )
}

pub fn orbit_closure_with_limits(
    seeds: &[SteppingSequence],
    ops: OrbitOps,
    width_limit: usize,
    size_limit: usize,
) -> Result<Vec<SteppingSequence>> {
    let Some(first) = seeds.first() else {
        return Ok(Vec::new());
    };
    let m = first.m();
    if let Some(other) = seeds.iter().find(|s| s.m() != m) {
        return Err(Error::WidthMismatch {
            left: m,
            right: other.m(),
        });
    }
    if m > width_limit {
        return Err(Error::LimitExceeded {
            what: "orbit width",
            m,
            limit: width_limit,
        });
    }

    let mut seen: HashSet<SteppingSequence> = HashSet::new();
    let mut frontier = VecDeque::new();
    let mut admit = |s: SteppingSequence, frontier: &mut VecDeque<SteppingSequence>| {
        if seen.contains(&s) {
            return Ok(());
        }
        if seen.len() == size_limit {
            return Err(Error::OrbitTooLarge { limit: size_limit });
        }
        seen.insert(s.clone());
        frontier.push_back(s);
        Ok(())
    };
    for s in seeds {
        admit(s.clone(), &mut frontier)?;
    }
    while let Some(s) = frontier.pop_front() {
        if ops.reverse {
            admit(reverse(&s), &mut frontier)?;
        }
        if ops.complement {
            admit(complement(&s), &mut frontier)?;
        }
        if ops.commutation {
            for n in commutations(&s) {
                admit(n, &mut frontier)?;
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}
