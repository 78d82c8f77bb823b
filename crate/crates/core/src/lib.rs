//! Gray codes through nested set chains.
//!
//! A chain `S_0 ⊂ S_1 ⊂ … ⊂ S_m` with `|S_i| = i` is altered one set at a
//! time; move `i` replaces `S_i` by the only other set that fits between
//! `S_{i-1}` and `S_{i+1}`. A *stepping sequence* is a list of moves that
//! visits every subset of `S_m` (other than the initial chain) exactly once.
//!
//! - [`chain`] and [`sequence`]: the chain state machine and verification.
//! - [`generators`]: four constructions of the canonical sequence `R_m`, plus
//!   the two combinators that build sequences for `m` from ones for `m - 1`.
//! - [`transforms`]: reverse, complement, commutation and orbit closure.
//! - [`search`]: exhaustive enumeration and the small-`m` census.
//! - [`graycode`]: the induced Gray codes on `m`-bit words and `k`-subsets.

pub mod bits;
pub mod chain;
pub mod error;
pub mod generators;
pub mod graycode;
pub mod search;
pub mod sequence;
pub mod text;
pub mod transforms;

pub use bits::{hamming_weight, v2};
pub use chain::{DifferenceSequence, SubsetMask, MAX_WIDTH};
pub use error::{Error, Result};
pub use generators::{
    combine_first, combine_second, greedy, humble, recursive_r, stream_for_c, stream_for_j,
    MoveStream,
};
pub use graycode::{GrayOrdering, KSubsetOrdering};
pub use search::{Filter, Mode, SearchConfig};
pub use sequence::{
    expected_len, occurrence_profile, verify, FailureReason, SteppingSequence, VerificationFailure,
    VerificationReport,
};
pub use transforms::{complement, reverse, OrbitOps};
