//! Line-oriented text formats.
//!
//! A stepping sequence is one line of decimal move indices separated by
//! single spaces. Gray orderings are one word per line (binary or decimal)
//! and k-subset orderings one braced set per line.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::chain::SubsetMask;
use crate::error::{Error, Result};

pub fn format_moves(moves: &[u8]) -> String {
    let mut out = String::with_capacity(moves.len() * 3);
    for (n, mv) in moves.iter().enumerate() {
        if n > 0 {
            out.push(' ');
        }
        write!(out, "{mv}").unwrap();
    }
    out
}

/// Parses whitespace-separated move indices. Values above 255 cannot be a
/// move for any supported width and are rejected here.
pub fn parse_moves(line: &str) -> Result<Vec<u8>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<u8>()
                .map_err(|e| Error::Parse(format!("bad move index {tok:?}: {e}")))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WordFormat {
    /// Exactly `m` digits, high bit first.
    #[default]
    Binary,
    Decimal,
}

impl FromStr for WordFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "binary" => Ok(WordFormat::Binary),
            "decimal" => Ok(WordFormat::Decimal),
            other => Err(Error::Parse(format!("unknown word format {other:?}"))),
        }
    }
}

pub fn format_word(word: SubsetMask, m: usize, format: WordFormat) -> String {
    match format {
        WordFormat::Binary => word.to_binary(m),
        WordFormat::Decimal => word.bits().to_string(),
    }
}
