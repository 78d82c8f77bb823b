//! Reference implementations used only to check the library. Everything
//! here works on explicit element sets rather than bitmasks and prefix
//! caches, and shares no code with the crate under test.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

pub type Set = BTreeSet<u8>;

/// Simulates moves on a chain stored as a list of explicit sets and
/// returns the newly produced sets, or `None` if the moves do not form a
/// stepping sequence for `m`.
pub fn naive_stepping_walk(m: usize, moves: &[u8]) -> Option<Vec<Set>> {
    let mut chain: Vec<Set> = (0..=m).map(|i| (0..i as u8).collect()).collect();
    let mut seen: HashSet<Set> = chain.iter().cloned().collect();
    let mut produced = Vec::new();
    for &mv in moves {
        let i = mv as usize;
        if i < 1 || i >= m {
            return None;
        }
        // S_i^* = S_{i-1} ∪ (S_{i+1} \ S_i)
        let mut next: Set = chain[i - 1].clone();
        next.extend(chain[i + 1].difference(&chain[i]).copied());
        if !seen.insert(next.clone()) {
            return None;
        }
        chain[i] = next.clone();
        produced.push(next);
    }
    (seen.len() == 1 << m).then_some(produced)
}

pub fn naive_is_stepping(m: usize, moves: &[u8]) -> bool {
    naive_stepping_walk(m, moves).is_some()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Every sequence in `{1, …, m-1}^len` that is a stepping sequence.
pub fn brute_force_stepping(m: usize) -> Vec<Vec<u8>> {
    let len = (1usize << m) - m - 1;
    let base = m - 1;
    let total = base.pow(len as u32);
    let mut out = Vec::new();
    let mut digits = vec![0usize; len];
    for n in 0..total {
        let mut x = n;
        for d in digits.iter_mut().rev() {
            *d = x % base;
            x /= base;
        }
        let moves: Vec<u8> = digits.iter().map(|&d| d as u8 + 1).collect();
        if moves.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        if naive_is_stepping(m, &moves) {
            out.push(moves);
        }
    }
    out
}

/// `R_m` written out literally from its recursive definition.
pub fn r_by_definition(m: usize) -> Vec<u8> {
    if m == 2 {
        return vec![1];
    }
    let prev = r_by_definition(m - 1);
    let mut out: Vec<u8> = prev.iter().map(|i| i + 1).collect();
    out.extend(1..m as u8);
    out.extend(prev);
    out
}

#[allow(clippy::manual_is_multiple_of)]
pub fn trailing_zeros_by_division(mut c: u64) -> u64 {
    let mut v = 0;
    while c % 2 == 0 {
        c /= 2;
        v += 1;
    }
    v
}

pub fn ones_by_division(mut c: u64) -> u64 {
    let mut h = 0;
    while c > 0 {
        h += c % 2;
        c /= 2;
    }
    h
}

/// Integer encoding `S ↦ Σ 2^i`.
pub fn encode(set: &Set) -> u64 {
    set.iter().map(|&i| 1u64 << i).sum()
}
