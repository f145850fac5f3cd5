//! Finite-scale certificates for the coin-counting arguments showing that
//! the groups with negligible NS or NC counts do not act paradoxically on
//! infinite words.
//!
//! Suppose `h_1..h_d` moved one coin from every word of `A_i` to its image
//! under `h_i` and every word ended with two coins. Take a block `F` of
//! `s·|X|^l` consecutive words (odometer order) inside a slightly larger
//! block `F'`. Each run of `|X|^l` consecutive words has every length-`l`
//! prefix exactly once, so at most `s·NS(h_i, l)` coins reach `F` from
//! outside `F'`. Once `s·Σ NS(h_i, l) <= s·|X|^l / 4` the block receives at
//! most `3/2·|F|` coins, short of `2·|F|`. The NC version runs the same
//! count inside every class of almost periodic words with a fixed period.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Pow;

use crate::automaton::Transformation;
use crate::counting::{count, nc_counter, ns_counter, CountKind, LevelCounter};
use crate::error::{Error, Result};
use crate::periodic::{check_divisor, count_periods};
use crate::word::{Alphabet, Word};

pub const DEFAULT_BLOCK_FACTOR: u64 = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParadoxReport {
    pub kind: CountKind,
    pub transformations: Vec<String>,
    pub alphabet_size: usize,
    pub level: usize,
    /// `s`; only the NS certificate uses blocks.
    pub block_factor: Option<u64>,
    pub per_item: Vec<BigUint>,
    /// `s·Σ NS(h_i, l)` for NS, `Σ NC(h_i, l)` per period class for NC.
    pub aggregate: BigUint,
    /// `s·|X|^l / 4` for NS, `|X|^l / 4` for NC.
    pub threshold: BigRational,
    pub satisfied: bool,
    /// Number of admissible periods and the divisor bound defining them (NC only).
    pub period_classes: Option<(usize, BigUint)>,
}

impl ParadoxReport {
    pub fn conclusion(&self) -> String {
        match (self.kind, self.satisfied) {
            (CountKind::Ns, true) => format!(
                "at most {} coins reach a block of {}·{}^{} consecutive words from outside its neighbourhood; \
                 the block receives at most 3/2 of its size, so doubling fails",
                self.aggregate,
                self.block_factor.unwrap_or(DEFAULT_BLOCK_FACTOR),
                self.alphabet_size,
                self.level
            ),
            (CountKind::Nc, true) => format!(
                "at most {} coins per period class enter the almost periodic words of level {}; \
                 below a quarter of the class, so doubling fails",
                self.aggregate, self.level
            ),
            (_, false) => format!(
                "bound {} exceeds threshold {}; no certificate at level {}",
                self.aggregate, self.threshold, self.level
            ),
        }
    }
}

impl fmt::Display for ParadoxReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind:       {}", self.kind)?;
        writeln!(f, "level:      {}", self.level)?;
        if let Some(s) = self.block_factor {
            writeln!(f, "block:      {s}")?;
        }
        for (name, c) in self.transformations.iter().zip(&self.per_item) {
            writeln!(f, "  {}({name}, {}) = {c}", self.kind, self.level)?;
        }
        if let Some((m, t)) = &self.period_classes {
            writeln!(f, "periods:    {t} (length dividing {m})")?;
        }
        writeln!(f, "aggregate:  {}", self.aggregate)?;
        writeln!(f, "threshold:  {}", self.threshold)?;
        writeln!(f, "satisfied:  {}", self.satisfied)?;
        write!(f, "{}", self.conclusion())
    }
}

fn common_alphabet(hs: &[Transformation]) -> Result<&Alphabet> {
    let first = hs.first().ok_or(Error::NoTransformations)?;
    for h in &hs[1..] {
        first.automaton().same_alphabet(h.automaton())?;
    }
    Ok(first.alphabet())
}

fn power(k: usize, l: usize) -> BigUint {
    Pow::pow(&BigUint::from(k), l)
}

fn quarter(n: BigUint) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(4))
}

fn check_block_factor(s: u64) -> Result<()> {
    if s < 8 {
        Err(Error::BlockFactorTooSmall(s))
    } else {
        Ok(())
    }
}

fn ns_report(
    hs: &[Transformation],
    k: usize,
    l: usize,
    s: u64,
    per_item: Vec<BigUint>,
) -> ParadoxReport {
    let total: BigUint = per_item.iter().sum();
    let aggregate = total * s;
    let threshold = quarter(power(k, l) * s);
    let satisfied = BigRational::from(BigInt::from(aggregate.clone())) <= threshold;
    ParadoxReport {
        kind: CountKind::Ns,
        transformations: hs.iter().map(|h| h.name().to_string()).collect(),
        alphabet_size: k,
        level: l,
        block_factor: Some(s),
        per_item,
        aggregate,
        threshold,
        satisfied,
        period_classes: None,
    }
}

/// Evaluates `s·Σ NS(h_i, l) <= s·|X|^l / 4` exactly.
pub fn theorem1_report(hs: &[Transformation], l: usize, s: u64) -> Result<ParadoxReport> {
    check_block_factor(s)?;
    let k = common_alphabet(hs)?.size();
    let per_item = hs
        .iter()
        .map(|h| count(h, CountKind::Ns, l).map(|t| t.counts[l].clone()))
        .collect::<Result<_>>()?;
    Ok(ns_report(hs, k, l, s, per_item))
}

/// Smallest `l` in `1..=l_max` at which [`theorem1_report`] is satisfied.
pub fn find_minimal_level(hs: &[Transformation], s: u64, l_max: usize) -> Result<Option<usize>> {
    check_block_factor(s)?;
    let k = common_alphabet(hs)?.size();
    let mut counters: Vec<LevelCounter> = hs.iter().map(ns_counter).collect();
    for l in 1..=l_max {
        for c in &mut counters {
            c.advance()?;
        }
        let per_item = counters.iter().map(LevelCounter::total).collect();
        if ns_report(hs, k, l, s, per_item).satisfied {
            return Ok(Some(l));
        }
    }
    Ok(None)
}

/// Evaluates `Σ NC(h_i, l) <= |X|^l / 4` within one period class; both sides
/// of the full inequality carry the same factor `count_periods(k, m)`.
pub fn theorem2_report(hs: &[Transformation], l: usize, divisor: usize) -> Result<ParadoxReport> {
    let k = common_alphabet(hs)?.size();
    for h in hs {
        check_divisor(h, l, divisor)?;
    }
    let per_item: Vec<BigUint> = hs
        .iter()
        .map(|h| count(h, CountKind::Nc, l).map(|t| t.counts[l].clone()))
        .collect::<Result<_>>()?;
    let aggregate: BigUint = per_item.iter().sum();
    let threshold = quarter(power(k, l));
    let satisfied = BigRational::from(BigInt::from(aggregate.clone())) <= threshold;
    Ok(ParadoxReport {
        kind: CountKind::Nc,
        transformations: hs.iter().map(|h| h.name().to_string()).collect(),
        alphabet_size: k,
        level: l,
        block_factor: None,
        per_item,
        aggregate,
        threshold,
        satisfied,
        period_classes: Some((divisor, count_periods(k, divisor))),
    })
}

/// Smallest `l` in `1..=l_max` at which [`theorem2_report`] is satisfied.
pub fn find_minimal_level_nc(
    hs: &[Transformation],
    divisor: usize,
    l_max: usize,
) -> Result<Option<usize>> {
    let k = common_alphabet(hs)?.size();
    let mut counters: Vec<LevelCounter> = hs.iter().map(nc_counter).collect();
    for l in 1..=l_max {
        for c in &mut counters {
            c.advance()?;
        }
        let total: BigUint = counters.iter().map(LevelCounter::total).sum();
        if BigRational::from(BigInt::from(total)) <= quarter(power(k, l)) {
            for h in hs {
                check_divisor(h, l, divisor)?;
            }
            return Ok(Some(l));
        }
    }
    Ok(None)
}

/// Outcome of moving one coin from every word of `A_i` to its `h_i`-image
/// at a fixed level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoinAudit {
    pub level: usize,
    pub alphabet: Alphabet,
    /// Piece index for every word, indexed by [`Word::rank`].
    pub assignments: Vec<usize>,
    /// Coins held by every word after the move, indexed by [`Word::rank`].
    pub coin_counts: Vec<u64>,
    /// Words left with fewer than two coins.
    pub deficit: Vec<Word>,
}

impl CoinAudit {
    pub fn total_coins(&self) -> u64 {
        self.coin_counts.iter().sum()
    }

    /// Whether every word ended with at least two coins.
    pub fn doubling(&self) -> bool {
        self.deficit.is_empty()
    }
}

/// Runs the coin move for the partition `pieces` of `X^level`; piece `i` is
/// moved by `hs[i]`.
pub fn coin_audit(hs: &[Transformation], level: usize, pieces: &[Vec<Word>]) -> Result<CoinAudit> {
    if hs.len() != pieces.len() {
        return Err(Error::PieceCountMismatch {
            pieces: pieces.len(),
            transformations: hs.len(),
        });
    }
    let alphabet = common_alphabet(hs)?.clone();
    let k = alphabet.size();
    let size = k
        .checked_pow(level as u32)
        .expect("audit level too large to enumerate");
    let mut assignments = vec![usize::MAX; size];
    for (i, piece) in pieces.iter().enumerate() {
        for w in piece {
            alphabet.check_word(w)?;
            if w.len() != level {
                return Err(Error::WrongLength {
                    word: alphabet.format_word(w),
                    expected: level,
                    found: w.len(),
                });
            }
            let slot = &mut assignments[w.rank(k)];
            if *slot != usize::MAX {
                return Err(Error::PartitionOverlap(alphabet.format_word(w)));
            }
            *slot = i;
        }
    }
    if let Some(rank) = assignments.iter().position(|&i| i == usize::MAX) {
        return Err(Error::PartitionNotTotal(
            alphabet.format_word(&Word::from_rank(rank, k, level)),
        ));
    }
    let mut coin_counts = vec![0u64; size];
    for (rank, &i) in assignments.iter().enumerate() {
        let image = hs[i].apply(&Word::from_rank(rank, k, level))?;
        coin_counts[image.rank(k)] += 1;
    }
    let deficit = coin_counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c < 2)
        .map(|(rank, _)| Word::from_rank(rank, k, level))
        .collect();
    Ok(CoinAudit {
        level,
        alphabet,
        assignments,
        coin_counts,
        deficit,
    })
}
