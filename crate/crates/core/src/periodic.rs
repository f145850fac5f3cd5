//! Eventually periodic infinite words and the action of automata on them.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Pow, Zero};

use crate::automaton::Transformation;
use crate::counting::{max_uc_length, reachable_uc_lengths, uc_membership};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

/// `prefix · period^ω` with a primitive period.
///
/// The prefix length is the presentation level `l`: the same infinite word
/// presented at different levels is a different value, and the period is
/// read starting at position `l + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EpWord {
    prefix: Word,
    period: Word,
}

/// Smallest `p` dividing `|word|` such that `word` is a power of its first `p` letters.
pub fn primitive_root_len(word: &[Letter]) -> usize {
    let n = word.len();
    (1..=n)
        .filter(|p| n.is_multiple_of(*p))
        .find(|&p| (p..n).all(|i| word[i] == word[i - p]))
        .unwrap_or(n)
}

pub fn is_primitive(word: &[Letter]) -> bool {
    !word.is_empty() && primitive_root_len(word) == word.len()
}

impl EpWord {
    /// Builds `prefix · period^ω`, reducing `period` to its primitive root.
    pub fn new(prefix: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        let root = primitive_root_len(&period);
        Ok(EpWord {
            prefix,
            period: period.prefix(root),
        })
    }

    /// Parses `u(v)`, e.g. `0(1)` for `0111...` or `(01)` for `0101...`.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let text = text.trim();
        let open = text
            .find('(')
            .ok_or_else(|| Error::syntax(1, text.len() + 1, "expected `(` before the period"))?;
        let body = text[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| Error::syntax(1, text.len(), "expected `)` after the period"))?;
        Self::new(
            alphabet.parse_word(&text[..open])?,
            alphabet.parse_word(body)?,
        )
    }

    pub fn format(&self, alphabet: &Alphabet) -> String {
        format!(
            "{}({})",
            alphabet.format_word(&self.prefix),
            alphabet.format_word(&self.period)
        )
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    pub fn level(&self) -> usize {
        self.prefix.len()
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    pub fn letter_at(&self, i: usize) -> Letter {
        match i.checked_sub(self.prefix.len()) {
            None => self.prefix[i],
            Some(j) => self.period[j % self.period.len()],
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.prefix
            .iter()
            .copied()
            .chain(self.period.iter().copied().cycle())
    }

    pub fn take(&self, n: usize) -> Word {
        self.letters().take(n).collect()
    }

    /// The same infinite word presented at level `l`. Raising the level
    /// unrolls the period; lowering it requires the tail from position
    /// `l + 1` to be purely periodic.
    pub fn present_at(&self, l: usize) -> Result<EpWord> {
        let mut prefix = self.prefix.clone().into_letters();
        let mut period = self.period.clone().into_letters();
        while prefix.len() < l {
            prefix.push(period[0]);
            period.rotate_left(1);
        }
        while prefix.len() > l {
            if prefix.last() != period.last() {
                return Err(Error::InvalidPresentation(l));
            }
            prefix.pop();
            period.rotate_right(1);
        }
        Ok(EpWord {
            prefix: Word::new(prefix),
            period: Word::new(period),
        })
    }

    /// Lowest level at which this word can be presented.
    pub fn canonical(&self) -> EpWord {
        let mut w = self.clone();
        while let Ok(lower) = w.present_at(w.level().saturating_sub(1)) {
            if lower.level() == w.level() {
                break;
            }
            w = lower;
        }
        w
    }
}

impl fmt::Display for EpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.prefix, self.period)
    }
}

/// Applies `g` to an eventually periodic word exactly.
///
/// After the prefix the pair (state, position in period) evolves
/// deterministically, so it repeats; the output between the two visits is
/// the output period. The result is presented at the input level plus the
/// transient before the first repeated pair.
pub fn apply_to_ep_word(g: &Transformation, w: &EpWord) -> Result<EpWord> {
    if let Some(horizon) = g.horizon() {
        return Err(Error::NotMaterializable {
            horizon,
            requested: "unbounded".into(),
        });
    }
    g.alphabet().check_word(w.prefix())?;
    g.alphabet().check_word(w.period())?;
    let a = g.automaton();
    let mut runner = g.runner();
    let mut out: Vec<Letter> = w
        .prefix()
        .iter()
        .map(|&x| runner.step(x))
        .collect::<Result<_>>()?;
    let head = out.len();
    let t = w.period_len();
    let mut state = runner.state();
    let mut first_seen = HashMap::new();
    let mut step = 0usize;
    let start = loop {
        let phase = step % t;
        if let Some(&i) = first_seen.get(&(state, phase)) {
            break i;
        }
        first_seen.insert((state, phase), step);
        let x = w.period()[phase];
        out.push(a.output(state, x));
        state = a.next(state, x);
        step += 1;
    };
    let period = out.split_off(head + start);
    EpWord::new(Word::new(out), Word::new(period))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma1Verdict {
    pub holds: bool,
    /// Period length of the input at the checked level.
    pub input_period: usize,
    /// Length of the unconditional cycle reached.
    pub cycle: usize,
    /// Period length of the image at the checked level, if it can be
    /// presented there.
    pub output_period: Option<usize>,
    pub image: EpWord,
}

/// Checks that `g(w)` is `l`-almost periodic with period length dividing
/// `lcm(t, c)`, where `t` is the period of `w` at level `l` and `c` the
/// length of the unconditional cycle `g` has entered after `l` letters.
///
/// Fails with [`Error::NotApplicable`] when no cycle is reached within `l`
/// steps.
pub fn check_lemma1(g: &Transformation, w: &EpWord, l: usize) -> Result<Lemma1Verdict> {
    let w = w.present_at(l)?;
    let (cycles, member) = uc_membership(g.automaton());
    g.alphabet().check_word(w.prefix())?;
    let end = g.automaton().run(g.initial(), w.prefix());
    let cycle = member[end]
        .map(|i| cycles[i].len())
        .ok_or(Error::NotApplicable { level: l })?;
    let input_period = w.period_len();
    let image = apply_to_ep_word(g, &w)?;
    let output_period = image.present_at(l).ok().map(|p| p.period_len());
    let bound = input_period.lcm(&cycle);
    Ok(Lemma1Verdict {
        holds: output_period.is_some_and(|p| bound % p == 0),
        input_period,
        cycle,
        output_period,
        image,
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lemma2Verdict {
    pub checked: usize,
    /// Samples whose first `l` letters avoid every cycle.
    pub skipped: usize,
    pub failures: Vec<EpWord>,
}

impl Lemma2Verdict {
    pub fn failed(&self) -> usize {
        self.failures.len()
    }

    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `g` maps every sample outside the NC-set back into the class
/// of `l`-almost periodic words with period length dividing `divisor`.
///
/// `divisor` stands in for `c!`: it must be a multiple of every cycle
/// length reachable within `l` steps, and `cycle_bound` must be at least the
/// largest of them.
pub fn check_lemma2(
    g: &Transformation,
    l: usize,
    cycle_bound: usize,
    divisor: usize,
    sample: &[EpWord],
) -> Result<Lemma2Verdict> {
    let required = max_uc_length(g, l);
    if cycle_bound < required {
        return Err(Error::CycleBoundTooSmall {
            bound: cycle_bound,
            required,
        });
    }
    check_divisor(g, l, divisor)?;
    let (_, member) = uc_membership(g.automaton());
    let mut verdict = Lemma2Verdict::default();
    for w in sample {
        let w = w.present_at(l)?;
        if !divisor.is_multiple_of(w.period_len()) {
            return Err(Error::SampleOutOfClass {
                period: w.period_len(),
                bound: divisor,
            });
        }
        g.alphabet().check_word(w.prefix())?;
        if member[g.automaton().run(g.initial(), w.prefix())].is_none() {
            verdict.skipped += 1;
            continue;
        }
        let image = apply_to_ep_word(g, &w)?;
        match image.present_at(l) {
            Ok(p) if divisor.is_multiple_of(p.period_len()) => verdict.checked += 1,
            _ => verdict.failures.push(w),
        }
    }
    Ok(verdict)
}

/// Every cycle length `g` can reach within `l` steps must divide `divisor`.
pub(crate) fn check_divisor(g: &Transformation, l: usize, divisor: usize) -> Result<()> {
    if divisor == 0 {
        return Err(Error::PeriodBoundInvalid {
            bound: 0,
            length: 1,
        });
    }
    match reachable_uc_lengths(g, l)
        .into_iter()
        .find(|len| !divisor.is_multiple_of(*len))
    {
        Some(length) => Err(Error::PeriodBoundInvalid {
            bound: divisor,
            length,
        }),
        None => Ok(()),
    }
}

fn mobius(mut n: usize) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn divisors(n: usize) -> impl Iterator<Item = usize> {
    (1..=n).filter(move |d| n.is_multiple_of(*d))
}

/// Number of primitive words of length exactly `d` over `k` letters.
pub fn primitive_count(k: usize, d: usize) -> BigUint {
    let k = BigInt::from(k);
    let total: BigInt = divisors(d)
        .map(|e| BigInt::from(mobius(e)) * Pow::pow(&k, (d / e) as u32))
        .sum();
    total
        .to_biguint()
        .expect("primitive word count is non-negative")
}

/// Number of primitive words whose length divides `m`.
pub fn count_periods(k: usize, m: usize) -> BigUint {
    divisors(m).fold(BigUint::zero(), |acc, d| acc + primitive_count(k, d))
}

/// All primitive words over `alphabet` whose length divides `m`, shortest first.
pub fn primitive_words(alphabet: &Alphabet, m: usize) -> Vec<Word> {
    divisors(m)
        .flat_map(|d| alphabet.words(d).filter(|w| is_primitive(w)))
        .collect()
}

/// Number of `v` in `X^l` such that the first `l` letters of `v·T^ω` never
/// bring `g` into an unconditional cycle, found by running `g` on the
/// periodic words themselves.
pub fn period_class_nc_count(g: &Transformation, l: usize, period: &Word) -> Result<usize> {
    let (_, member) = uc_membership(g.automaton());
    let mut count = 0;
    for v in g.alphabet().words(l) {
        let w = EpWord::new(v, period.clone())?;
        let mut runner = g.runner();
        let mut avoided = member[runner.state()].is_none();
        for x in w.letters().take(l) {
            if !avoided {
                break;
            }
            runner.step(x)?;
            avoided = member[runner.state()].is_none();
        }
        count += usize::from(avoided);
    }
    Ok(count)
}
