//! Invertible synchronous automata and the transformations they define.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

pub type StateId = usize;

/// Unvalidated automaton tables keyed by symbol and state names.
#[derive(Debug, Clone, Default)]
pub struct RawAutomaton {
    pub alphabet: Vec<String>,
    pub states: Vec<RawState>,
}

#[derive(Debug, Clone, Default)]
pub struct RawState {
    pub name: String,
    /// `(input, next state, output)` triples.
    pub transitions: Vec<(String, String, String)>,
}

/// A finite invertible letter-to-letter automaton `(X, Q, π, λ)`.
///
/// Tables are total and every output row is a permutation of the alphabet.
/// Values are immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    alphabet: Alphabet,
    names: Vec<String>,
    next: Vec<StateId>,
    output: Vec<Letter>,
    /// Per-state bound on the processing length for which a truncated
    /// materialization agrees with the infinite automaton it stands for.
    horizons: Option<Vec<usize>>,
}

/// Checks raw tables and canonicalizes symbols and state names to indices.
pub fn validate(raw: &RawAutomaton) -> Result<Automaton> {
    let alphabet = Alphabet::new(raw.alphabet.iter().cloned())?;
    let k = alphabet.size();

    let mut index = HashMap::new();
    for (i, st) in raw.states.iter().enumerate() {
        if index.insert(st.name.as_str(), i).is_some() {
            return Err(Error::DuplicateState(st.name.clone()));
        }
    }
    if raw.states.is_empty() {
        return Err(Error::UnknownState(String::new()));
    }

    let mut next = vec![usize::MAX; raw.states.len() * k];
    let mut output = vec![usize::MAX; raw.states.len() * k];
    for (q, st) in raw.states.iter().enumerate() {
        for (input, target, out) in &st.transitions {
            let x = alphabet.letter(input)?;
            let y = alphabet.letter(out)?;
            let t = *index
                .get(target.as_str())
                .ok_or_else(|| Error::UnknownState(target.clone()))?;
            if next[q * k + x] != usize::MAX {
                return Err(Error::DuplicateTransition {
                    state: st.name.clone(),
                    letter: input.clone(),
                });
            }
            next[q * k + x] = t;
            output[q * k + x] = y;
        }
    }
    let names = raw.states.iter().map(|s| s.name.clone()).collect();
    Automaton::build(alphabet, names, next, output)
}

impl Automaton {
    /// Builds an automaton from dense row-major tables (`table[q * k + x]`).
    /// Entries equal to `usize::MAX` are treated as missing.
    pub fn build(
        alphabet: Alphabet,
        names: Vec<String>,
        next: Vec<StateId>,
        output: Vec<Letter>,
    ) -> Result<Self> {
        let k = alphabet.size();
        let n = names.len();
        if n == 0 {
            return Err(Error::UnknownState(String::new()));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateState(name.clone()));
            }
        }
        for q in 0..n {
            for x in 0..k {
                let i = q * k + x;
                if next.get(i).is_none_or(|&t| t == usize::MAX)
                    || output.get(i).is_none_or(|&y| y == usize::MAX)
                {
                    return Err(Error::MissingTransition {
                        state: names[q].clone(),
                        letter: alphabet.symbol(x).to_string(),
                    });
                }
                if next[i] >= n {
                    return Err(Error::UnknownState(format!("#{}", next[i])));
                }
                if output[i] >= k {
                    return Err(Error::LetterOutOfRange {
                        letter: output[i],
                        size: k,
                    });
                }
            }
            let mut hit = vec![false; k];
            for &y in &output[q * k..(q + 1) * k] {
                if std::mem::replace(&mut hit[y], true) {
                    return Err(Error::NonBijectiveOutput(names[q].clone()));
                }
            }
        }
        Ok(Automaton {
            alphabet,
            names,
            next,
            output,
            horizons: None,
        })
    }

    /// Convenience constructor from per-state rows.
    pub fn from_rows(
        alphabet: Alphabet,
        names: &[&str],
        next: &[&[StateId]],
        output: &[&[Letter]],
    ) -> Result<Self> {
        Self::build(
            alphabet,
            names.iter().map(|s| s.to_string()).collect(),
            next.iter().flat_map(|r| r.iter().copied()).collect(),
            output.iter().flat_map(|r| r.iter().copied()).collect(),
        )
    }

    pub(crate) fn with_horizons(mut self, horizons: Option<Vec<usize>>) -> Self {
        self.horizons = horizons;
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn arity(&self) -> usize {
        self.alphabet.size()
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn states(&self) -> std::ops::Range<StateId> {
        0..self.names.len()
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn state(&self, name: &str) -> Result<StateId> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    #[inline]
    pub fn next(&self, q: StateId, x: Letter) -> StateId {
        self.next[q * self.arity() + x]
    }

    #[inline]
    pub fn output(&self, q: StateId, x: Letter) -> Letter {
        self.output[q * self.arity() + x]
    }

    pub fn next_row(&self, q: StateId) -> &[StateId] {
        let k = self.arity();
        &self.next[q * k..(q + 1) * k]
    }

    pub fn output_row(&self, q: StateId) -> &[Letter] {
        let k = self.arity();
        &self.output[q * k..(q + 1) * k]
    }

    pub fn has_identity_output(&self, q: StateId) -> bool {
        self.output_row(q).iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Longest processing length from `q` for which this automaton is a
    /// faithful stand-in. `None` for ordinary finite automata.
    pub fn horizon(&self, q: StateId) -> Option<usize> {
        self.horizons.as_ref().map(|h| h[q])
    }

    pub fn horizons(&self) -> Option<&[usize]> {
        self.horizons.as_deref()
    }

    pub fn is_truncated(&self) -> bool {
        self.horizons.is_some()
    }

    /// The state reached from `q` after reading `word`.
    pub fn run(&self, q: StateId, word: &[Letter]) -> StateId {
        word.iter().fold(q, |s, &x| self.next(s, x))
    }

    /// `λ(q, w)`.
    pub fn apply(&self, q: StateId, word: &[Letter]) -> Result<Word> {
        self.alphabet.check_word(word)?;
        let mut state = q;
        Ok(word
            .iter()
            .map(|&x| {
                let y = self.output(state, x);
                state = self.next(state, x);
                y
            })
            .collect())
    }

    /// Checks that both automata use the same alphabet symbols.
    pub fn same_alphabet(&self, other: &Automaton) -> Result<()> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    /// Equality of tables after matching states by name, ignoring state order.
    pub fn same_up_to_state_order(&self, other: &Automaton) -> bool {
        if self.alphabet != other.alphabet || self.num_states() != other.num_states() {
            return false;
        }
        let Ok(map) = self
            .names
            .iter()
            .map(|n| other.state(n))
            .collect::<Result<Vec<_>>>()
        else {
            return false;
        };
        self.states().all(|q| {
            (0..self.arity()).all(|x| {
                map[self.next(q, x)] == other.next(map[q], x)
                    && self.output(q, x) == other.output(map[q], x)
            })
        })
    }

    pub fn to_raw(&self) -> RawAutomaton {
        RawAutomaton {
            alphabet: self.alphabet.symbols().to_vec(),
            states: self
                .states()
                .map(|q| RawState {
                    name: self.names[q].clone(),
                    transitions: (0..self.arity())
                        .map(|x| {
                            (
                                self.alphabet.symbol(x).to_string(),
                                self.names[self.next(q, x)].clone(),
                                self.alphabet.symbol(self.output(q, x)).to_string(),
                            )
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// An automaton with a distinguished initial state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transformation {
    automaton: Arc<Automaton>,
    initial: StateId,
}

impl Transformation {
    pub fn new(automaton: impl Into<Arc<Automaton>>, state: &str) -> Result<Self> {
        let automaton = automaton.into();
        let initial = automaton.state(state)?;
        Ok(Transformation { automaton, initial })
    }

    pub fn at(automaton: impl Into<Arc<Automaton>>, initial: StateId) -> Result<Self> {
        let automaton = automaton.into();
        if initial >= automaton.num_states() {
            return Err(Error::UnknownState(format!("#{initial}")));
        }
        Ok(Transformation { automaton, initial })
    }

    pub fn automaton(&self) -> &Automaton {
        &self.automaton
    }

    pub fn shared_automaton(&self) -> &Arc<Automaton> {
        &self.automaton
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn name(&self) -> &str {
        self.automaton.state_name(self.initial)
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.automaton.alphabet()
    }

    pub fn horizon(&self) -> Option<usize> {
        self.automaton.horizon(self.initial)
    }

    pub fn apply(&self, word: &[Letter]) -> Result<Word> {
        self.automaton.apply(self.initial, word)
    }

    pub fn runner(&self) -> Runner<'_> {
        Runner {
            automaton: &self.automaton,
            state: self.initial,
        }
    }

    /// Lazily transforms a (possibly infinite) letter stream.
    pub fn stream<I>(&self, input: I) -> Stream<'_, I::IntoIter>
    where
        I: IntoIterator<Item = Letter>,
    {
        Stream {
            runner: self.runner(),
            input: input.into_iter(),
        }
    }

    /// The inverse transformation, realized by the inverse automaton.
    pub fn inverse(&self) -> Transformation {
        Transformation {
            automaton: Arc::new(crate::algebra::invert(&self.automaton)),
            initial: self.initial,
        }
    }

    /// `self` followed by `other`: the output of `self` feeds `other`.
    /// Only the pairs reachable from the initial pair are kept.
    pub fn then(&self, other: &Transformation) -> Result<Transformation> {
        crate::algebra::compose_reachable(
            &self.automaton,
            self.initial,
            &other.automaton,
            other.initial,
        )
    }
}

/// Letter-at-a-time execution of a transformation.
#[derive(Debug, Clone)]
pub struct Runner<'a> {
    automaton: &'a Automaton,
    state: StateId,
}

impl Runner<'_> {
    pub fn state(&self) -> StateId {
        self.state
    }

    pub fn step(&mut self, x: Letter) -> Result<Letter> {
        let k = self.automaton.arity();
        if x >= k {
            return Err(Error::LetterOutOfRange { letter: x, size: k });
        }
        let y = self.automaton.output(self.state, x);
        self.state = self.automaton.next(self.state, x);
        Ok(y)
    }
}

pub struct Stream<'a, I> {
    runner: Runner<'a>,
    input: I,
}

impl<I: Iterator<Item = Letter>> Iterator for Stream<'_, I> {
    type Item = Result<Letter>;

    fn next(&mut self) -> Option<Self::Item> {
        let x = self.input.next()?;
        Some(self.runner.step(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    type Row<'a> = (&'a str, &'a [(&'a str, &'a str, &'a str)]);

    fn raw(rows: &[Row]) -> RawAutomaton {
        RawAutomaton {
            alphabet: vec!["0".into(), "1".into()],
            states: rows
                .iter()
                .map(|(name, ts)| RawState {
                    name: name.to_string(),
                    transitions: ts
                        .iter()
                        .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
                        .collect(),
                })
                .collect(),
        }
    }

    #[test]
    fn validate_adding_machine() {
        let a = validate(&raw(&[
            ("q", &[("0", "e", "1"), ("1", "q", "0")]),
            ("e", &[("0", "e", "0"), ("1", "e", "1")]),
        ]))
        .unwrap();
        assert_eq!(a.num_states(), 2);
        assert_eq!(a.next(0, 1), 0);
        assert_eq!(a.output(0, 0), 1);
    }

    #[test]
    fn validate_identity() {
        let a = validate(&raw(&[("e", &[("0", "e", "0"), ("1", "e", "1")])])).unwrap();
        assert!(a.has_identity_output(0));
        let w = [1, 0, 1, 1];
        assert_eq!(a.apply(0, &w).unwrap().letters(), &w);
    }

    #[test]
    fn validate_errors() {
        assert_eq!(
            validate(&raw(&[("r", &[("0", "r", "0"), ("1", "r", "0")])])),
            Err(Error::NonBijectiveOutput("r".into()))
        );
        assert_eq!(
            validate(&raw(&[("r", &[("0", "r", "1")])])),
            Err(Error::MissingTransition {
                state: "r".into(),
                letter: "1".into()
            })
        );
        assert_eq!(
            validate(&raw(&[("r", &[("0", "s", "1"), ("1", "r", "0")])])),
            Err(Error::UnknownState("s".into()))
        );
        let mut small = raw(&[("r", &[("0", "r", "0")])]);
        small.alphabet = vec!["0".into()];
        assert_eq!(validate(&small), Err(Error::AlphabetTooSmall(1)));
    }

    #[test]
    fn apply_adding_machine() {
        let q = builtin::adding();
        let bin = q.alphabet().clone();
        let run = |w: &str| bin.format_word(&q.apply(&bin.parse_word(w).unwrap()).unwrap());
        assert_eq!(run("111"), "000");
        assert_eq!(run("011"), "111");
        assert_eq!(run(""), "");
        assert_eq!(
            q.apply(&[0, 2]),
            Err(Error::LetterOutOfRange { letter: 2, size: 2 })
        );
    }

    #[test]
    fn stream_matches_apply() {
        let q = builtin::adding();
        let out: Vec<Letter> = q
            .stream(std::iter::repeat(1))
            .take(20)
            .collect::<Result<_>>()
            .unwrap();
        assert_eq!(out, vec![0; 20]);
        let w = [1, 1, 0, 1, 0];
        let streamed: Vec<Letter> = q.stream(w).collect::<Result<_>>().unwrap();
        assert_eq!(streamed, q.apply(&w).unwrap().into_letters());
    }
}
