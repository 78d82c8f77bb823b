//! Exhaustive backtracking enumeration of stepping sequences.
//!
//! The state is one difference sequence, a `2^m`-bit visited table with the
//! initial subsets pre-marked, and the move stack. A move is admissible iff
//! the subset it would produce is unmarked; backtracking re-applies the same
//! transposition and clears the bit.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::bits::BitTable;
use crate::chain::DifferenceSequence;
use crate::error::{Error, Result};
use crate::generators::{combine_first, combine_second};
use crate::graycode::is_strongly_contiguous;
use crate::sequence::{expected_len, SteppingSequence, DEFAULT_VERIFY_LIMIT};
use crate::transforms::{complement, orbit_closure, reverse, OrbitOps};

/// Default cap on `m` for [`Mode::Collect`].
pub const DEFAULT_COLLECT_LIMIT: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Filter {
    All,
    /// Adjacent moves differ by exactly one.
    Contiguous,
    /// Contiguous, starting with `m - 1` and ending with `1`.
    StronglyContiguous,
}

impl Filter {
    /// Largest `m` searched without an explicit node budget.
    pub fn default_width_limit(self) -> usize {
        match self {
            Filter::All => 5,
            Filter::Contiguous | Filter::StronglyContiguous => 6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Count,
    Collect,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub m: usize,
    pub filter: Filter,
    pub mode: Mode,
    /// Maximum number of search nodes. When set, the per-filter width limit
    /// is not applied; the budget bounds the cost instead.
    pub node_budget: Option<u64>,
    /// Overrides [`Filter::default_width_limit`].
    pub width_limit: Option<usize>,
    pub collect_limit: usize,
    pub threads: usize,
}

impl SearchConfig {
    pub fn new(m: usize, filter: Filter) -> Self {
        SearchConfig {
            m,
            filter,
            mode: Mode::Count,
            node_budget: None,
            width_limit: None,
            collect_limit: DEFAULT_COLLECT_LIMIT,
            threads: 1,
        }
    }

    pub fn collect(mut self) -> Self {
        self.mode = Mode::Collect;
        self
    }

    pub fn budget(mut self, nodes: u64) -> Self {
        self.node_budget = Some(nodes);
        self
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn width_limit(mut self, limit: usize) -> Self {
        self.width_limit = Some(limit);
        self
    }

    /// Checks width, collect and table limits without searching.
    pub fn validate(&self) -> Result<()> {
        let m = self.m;
        if m < 2 {
            return Err(Error::OutOfRange {
                what: "m",
                value: m as u64,
                min: 2,
                max: DEFAULT_VERIFY_LIMIT as u64,
            });
        }
        let limit = match (self.node_budget, self.width_limit) {
            (_, Some(limit)) => limit,
            (Some(_), None) => DEFAULT_VERIFY_LIMIT,
            (None, None) => self.filter.default_width_limit(),
        };
        // The visited table is 2^m bits whatever the caller asks for.
        let limit = limit.min(DEFAULT_VERIFY_LIMIT);
        if m > limit {
            return Err(Error::LimitExceeded {
                what: "search",
                m,
                limit,
            });
        }
        if self.mode == Mode::Collect && m > self.collect_limit {
            return Err(Error::LimitExceeded {
                what: "collect",
                m,
                limit: self.collect_limit,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub count: u64,
    /// Search nodes expanded, leaves included.
    pub nodes: u64,
    /// Present in [`Mode::Collect`], in lexicographic order.
    pub sequences: Option<Vec<SteppingSequence>>,
}

struct Exhausted;

struct Budget<'a> {
    limit: u64,
    spent: &'a AtomicU64,
    flush_every: u64,
}

struct Searcher<'a> {
    m: usize,
    filter: Filter,
    target: usize,
    chain: DifferenceSequence,
    visited: BitTable,
    moves: Vec<u8>,
    nodes: u64,
    pending: u64,
    found: u64,
    budget: Budget<'a>,
}

impl<'a> Searcher<'a> {
    fn new(m: usize, filter: Filter, budget: Budget<'a>) -> Result<Self> {
        let chain = DifferenceSequence::new_chain(m)?;
        let mut visited = BitTable::with_width(m);
        for i in 0..=m {
            visited.set(chain.subset_at(i)?.bits());
        }
        Ok(Searcher {
            m,
            filter,
            target: expected_len(m) as usize,
            chain,
            visited,
            moves: Vec::with_capacity(expected_len(m) as usize),
            nodes: 0,
            pending: 0,
            found: 0,
            budget,
        })
    }

    #[inline]
    fn tick(&mut self) -> std::result::Result<(), Exhausted> {
        self.nodes += 1;
        self.pending += 1;
        if self.pending >= self.budget.flush_every {
            let total = self.budget.spent.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
            self.pending = 0;
            if total > self.budget.limit {
                return Err(Exhausted);
            }
        }
        Ok(())
    }

    fn flush(&mut self) {
        self.budget.spent.fetch_add(self.pending, Ordering::Relaxed);
        self.pending = 0;
    }

    /// Moves admissible after `prev` under the filter, before the visited check.
    #[inline]
    fn candidates(&self, prev: Option<u8>) -> std::ops::RangeInclusive<u8> {
        let top = self.m as u8 - 1;
        match (self.filter, prev) {
            (Filter::StronglyContiguous, None) => top..=top,
            (Filter::Contiguous | Filter::StronglyContiguous, Some(p)) => {
                p.saturating_sub(1).max(1)..=(p + 1).min(top)
            }
            _ => 1..=top,
        }
    }

    #[inline]
    fn push(&mut self, i: u8) -> Option<u64> {
        let s = self.chain.alteration_unchecked(i as usize).bits();
        if self.visited.get(s) {
            return None;
        }
        self.chain.step_unchecked(i as usize);
        self.visited.set(s);
        self.moves.push(i);
        Some(s)
    }

    #[inline]
    fn pop(&mut self, s: u64) {
        let i = self.moves.pop().expect("pop on empty stack");
        self.chain.step_unchecked(i as usize);
        self.visited.clear(s);
    }

    fn dfs<F: FnMut(&[u8])>(&mut self, visit: &mut F) -> std::result::Result<(), Exhausted> {
        self.tick()?;
        if self.moves.len() == self.target {
            if self.filter != Filter::StronglyContiguous || self.moves.last() == Some(&1) {
                self.found += 1;
                visit(&self.moves);
            }
            return Ok(());
        }
        let prev = self.moves.last().copied();
        for i in self.candidates(prev) {
            if Some(i) == prev {
                continue;
            }
            if let Some(s) = self.push(i) {
                let r = self.dfs(visit);
                self.pop(s);
                r?;
            }
        }
        Ok(())
    }
}

/// Visits every sequence passing `filter`, in lexicographic order, on the
/// calling thread. Returns `(count, nodes)`. Width limits are the caller's
/// responsibility beyond the hard `2^m` table cap.
pub fn for_each<F: FnMut(&[u8])>(
    m: usize,
    filter: Filter,
    node_budget: Option<u64>,
    mut visit: F,
) -> Result<(u64, u64)> {
    let config = SearchConfig {
        node_budget: Some(node_budget.unwrap_or(u64::MAX)),
        ..SearchConfig::new(m, filter)
    };
    config.validate()?;
    let spent = AtomicU64::new(0);
    let mut searcher = Searcher::new(
        m,
        filter,
        Budget {
            limit: node_budget.unwrap_or(u64::MAX),
            spent: &spent,
            flush_every: 1,
        },
    )?;
    match searcher.dfs(&mut visit) {
        Ok(()) => Ok((searcher.found, searcher.nodes)),
        Err(Exhausted) => Err(Error::BudgetExhausted {
            nodes: searcher.nodes,
            found: searcher.found,
        }),
    }
}

struct Branch {
    found: u64,
    sequences: Vec<SteppingSequence>,
}

/// Counts (and optionally collects) the sequences passing the filter.
///
/// With `threads > 1` the first-level move choices are split across
/// workers; counts and collected order do not depend on the thread count.
pub fn enumerate(config: &SearchConfig) -> Result<SearchOutcome> {
    config.validate()?;
    let m = config.m;
    let collect = config.mode == Mode::Collect;
    let spent = AtomicU64::new(0);
    let limit = config.node_budget.unwrap_or(u64::MAX);
    let flush_every = if config.threads > 1 { 256 } else { 1 };

    let mut root = Searcher::new(
        m,
        config.filter,
        Budget {
            limit,
            spent: &spent,
            flush_every: 1,
        },
    )?;
    if root.tick().is_err() {
        return Err(Error::BudgetExhausted { nodes: 1, found: 0 });
    }
    let first_moves: Vec<u8> = root.candidates(None).collect();

    let next = AtomicUsize::new(0);
    let branches: Mutex<Vec<Option<Branch>>> =
        Mutex::new(first_moves.iter().map(|_| None).collect());
    let exhausted = AtomicU64::new(0);

    let worker = || -> Result<()> {
        loop {
            let idx = next.fetch_add(1, Ordering::Relaxed);
            let Some(&first) = first_moves.get(idx) else {
                return Ok(());
            };
            let mut s = Searcher::new(
                m,
                config.filter,
                Budget {
                    limit,
                    spent: &spent,
                    flush_every,
                },
            )?;
            let mut sequences = Vec::new();
            let mut visit = |moves: &[u8]| {
                if collect {
                    sequences.push(SteppingSequence::from_parts(m, moves.to_vec()));
                }
            };
            let pushed = s.push(first);
            debug_assert!(pushed.is_some());
            let r = s.dfs(&mut visit);
            s.flush();
            let found = s.found;
            if r.is_err() {
                exhausted.fetch_add(found, Ordering::Relaxed);
                return Ok(());
            }
            branches.lock().unwrap()[idx] = Some(Branch { found, sequences });
        }
    };

    let threads = config.threads.min(first_moves.len()).max(1);
    if threads == 1 {
        worker()?;
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads).map(|_| scope.spawn(worker)).collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("search worker panicked"))
                .collect::<Result<Vec<()>>>()
        })?;
    }

    let nodes = spent.load(Ordering::Relaxed);
    let branches = branches.into_inner().unwrap();
    if nodes > limit || branches.iter().any(Option::is_none) {
        let found = exhausted.load(Ordering::Relaxed)
            + branches.iter().flatten().map(|b| b.found).sum::<u64>();
        return Err(Error::BudgetExhausted {
            nodes: nodes.min(limit),
            found,
        });
    }
    let count = branches.iter().flatten().map(|b| b.found).sum();
    let sequences = collect.then(|| {
        branches
            .into_iter()
            .flatten()
            .flat_map(|b| b.sequences)
            .collect()
    });
    Ok(SearchOutcome {
        count,
        nodes,
        sequences,
    })
}

/// Collects all stepping sequences for `m` passing `filter`.
pub fn collect(m: usize, filter: Filter) -> Result<Vec<SteppingSequence>> {
    Ok(enumerate(&SearchConfig::new(m, filter).collect())?
        .sequences
        .unwrap_or_default())
}

/// Breakdown of the 34 stepping sequences for `m = 4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusM4 {
    pub all: Vec<SteppingSequence>,
    /// Both combinators applied to every pair of `m = 3` sequences.
    pub combinator_products: Vec<SteppingSequence>,
    /// Closure of the products under commutation.
    pub commutation_closure: Vec<SteppingSequence>,
    /// Closure of the products under reverse, complement and commutation.
    pub combinator_orbit: Vec<SteppingSequence>,
    /// Closure of `[2,1,2,3,2,3,1,2,3,2,1]` and `[2,3,1,2,3,2,1,2,3,1,2]`
    /// under reverse, complement and commutation.
    pub remaining_orbit: Vec<SteppingSequence>,
    pub reverse_equals_complement: Vec<SteppingSequence>,
    /// The two full orbits share no sequence.
    pub orbits_disjoint: bool,
}

pub const REMAINING_SEEDS_M4: [[u8; 11]; 2] = [
    [2, 1, 2, 3, 2, 3, 1, 2, 3, 2, 1],
    [2, 3, 1, 2, 3, 2, 1, 2, 3, 1, 2],
];

pub fn census_m4() -> Result<CensusM4> {
    let all = collect(4, Filter::All)?;
    let m3 = collect(3, Filter::All)?;
    let mut products = Vec::new();
    for a in &m3 {
        for b in &m3 {
            products.push(combine_first(a, b)?);
            products.push(combine_second(a, b)?);
        }
    }
    products.sort();
    products.dedup();
    let commutation_closure = orbit_closure(&products, OrbitOps::COMMUTATION)?;
    let combinator_orbit = orbit_closure(&products, OrbitOps::ALL)?;
    let seeds: Vec<SteppingSequence> = REMAINING_SEEDS_M4
        .iter()
        .map(|s| SteppingSequence::from_parts(4, s.to_vec()))
        .collect();
    let remaining_orbit = orbit_closure(&seeds, OrbitOps::ALL)?;
    let orbits_disjoint = remaining_orbit
        .iter()
        .all(|s| combinator_orbit.binary_search(s).is_err());
    let reverse_equals_complement = all
        .iter()
        .filter(|s| reverse(s) == complement(s))
        .cloned()
        .collect();
    Ok(CensusM4 {
        all,
        combinator_products: products,
        commutation_closure,
        combinator_orbit,
        remaining_orbit,
        reverse_equals_complement,
        orbits_disjoint,
    })
}

/// Checks the endpoint parities of every contiguous stepping sequence for
/// `m`: for even `m` both endpoints are odd, and for any `m` the sequence or
/// its reverse starts with a move `≡ m - 1` and ends with a move `≡ 1 (mod 2)`.
pub fn parity_check(m: usize) -> Result<bool> {
    let mut ok = true;
    for_each_limited(m, Filter::Contiguous, |moves| {
        let (first, last) = (moves[0] as usize, moves[moves.len() - 1] as usize);
        let even_rule = m % 2 == 1 || (first % 2 == 1 && last % 2 == 1);
        let oriented = |f: usize, l: usize| f % 2 == (m - 1) % 2 && l % 2 == 1;
        ok &= even_rule && (oriented(first, last) || oriented(last, first));
    })?;
    Ok(ok)
}

/// True iff every contiguous stepping sequence for `m`, or its reverse, is
/// strongly contiguous.
pub fn contiguous_reduces_to_strong(m: usize) -> Result<bool> {
    let mut ok = true;
    for_each_limited(m, Filter::Contiguous, |moves| {
        let s = SteppingSequence::from_parts(m, moves.to_vec());
        let strong = |s: &SteppingSequence| is_strongly_contiguous(s).unwrap_or(false);
        ok &= strong(&s) || strong(&reverse(&s));
    })?;
    Ok(ok)
}

fn for_each_limited<F: FnMut(&[u8])>(m: usize, filter: Filter, visit: F) -> Result<(u64, u64)> {
    SearchConfig::new(m, filter).validate()?;
    for_each(m, filter, None, visit)
}
