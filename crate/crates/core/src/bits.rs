//! Bit kernels shared by the generators and the simulators.

use crate::error::{Error, Result};

/// 2-adic valuation: the largest `v` with `2^v` dividing `c`.
pub fn v2(c: u64) -> Result<u32> {
    if c == 0 {
        return Err(Error::OutOfRange {
            what: "c",
            value: 0,
            min: 1,
            max: u64::MAX,
        });
    }
    Ok(c.trailing_zeros())
}

/// Number of one bits in `c`.
#[inline]
pub fn hamming_weight(c: u64) -> u32 {
    c.count_ones()
}

/// Mask with the low `m` bits set, valid for `m <= 64`.
#[inline]
pub(crate) fn low_mask(m: usize) -> u64 {
    if m >= 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// Flat bit table indexed by subset mask.
#[derive(Clone, Debug)]
pub(crate) struct BitTable {
    words: Vec<u64>,
}

impl BitTable {
    /// Table with `2^m` bits, all clear.
    pub(crate) fn with_width(m: usize) -> Self {
        assert!(m < usize::BITS as usize);
        let len = (1usize << m).div_ceil(64);
        BitTable {
            words: vec![0; len],
        }
    }

    #[inline]
    pub(crate) fn get(&self, index: u64) -> bool {
        let i = index as usize;
        self.words[i >> 6] & (1 << (i & 63)) != 0
    }

    #[inline]
    pub(crate) fn set(&mut self, index: u64) {
        let i = index as usize;
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub(crate) fn clear(&mut self, index: u64) {
        let i = index as usize;
        self.words[i >> 6] &= !(1 << (i & 63));
    }
}
