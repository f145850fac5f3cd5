use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::algebra::{minimize, trivial_classes};
use crate::automaton::{Automaton, StateId, Transformation};
use crate::error::{Error, Result};
use crate::word::Word;

use super::ucs::uc_membership;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountKind {
    /// Words leaving the transformation in a non-trivial state.
    Ns,
    /// Words that never lead the transformation into an unconditional cycle.
    Nc,
}

impl fmt::Display for CountKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountKind::Ns => "NS",
            CountKind::Nc => "NC",
        })
    }
}

/// Exact counts indexed by level `l = 0..=L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub transformation: String,
    pub kind: CountKind,
    pub counts: Vec<BigUint>,
}

impl CountTable {
    pub fn at(&self, l: usize) -> &BigUint {
        &self.counts[l]
    }

    pub fn max_level(&self) -> usize {
        self.counts.len() - 1
    }
}

/// Path-count DP restricted to a set of live states: after `l` steps the
/// total weight is the number of length-`l` words whose whole state path
/// stays live.
#[derive(Debug, Clone)]
pub struct LevelCounter {
    edges: Vec<Vec<(StateId, u32)>>,
    weights: Vec<BigUint>,
    level: usize,
    horizon: Option<usize>,
}

impl LevelCounter {
    fn new(a: &Automaton, start: StateId, live: &[bool], horizon: Option<usize>) -> Self {
        let edges = a
            .states()
            .map(|q| {
                let mut out: Vec<(StateId, u32)> = Vec::new();
                if live[q] {
                    for &t in a.next_row(q).iter().filter(|&&t| live[t]) {
                        match out.iter_mut().find(|(s, _)| *s == t) {
                            Some((_, m)) => *m += 1,
                            None => out.push((t, 1)),
                        }
                    }
                }
                out
            })
            .collect();
        let mut weights = vec![BigUint::zero(); a.num_states()];
        if live[start] {
            weights[start] = BigUint::one();
        }
        LevelCounter {
            edges,
            weights,
            level: 0,
            horizon,
        }
    }

    /// Count at the current level.
    pub fn total(&self) -> BigUint {
        self.weights.iter().sum()
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn advance(&mut self) -> Result<()> {
        if let Some(h) = self.horizon.filter(|&h| self.level + 1 > h) {
            return Err(Error::NotMaterializable {
                horizon: h,
                requested: (self.level + 1).to_string(),
            });
        }
        let mut next = vec![BigUint::zero(); self.weights.len()];
        for (q, w) in self.weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for &(t, m) in &self.edges[q] {
                next[t] += w * m;
            }
        }
        self.weights = next;
        self.level += 1;
        Ok(())
    }

    fn table(mut self, name: &str, kind: CountKind, max_level: usize) -> Result<CountTable> {
        if let Some(h) = self.horizon.filter(|&h| max_level > h) {
            return Err(Error::NotMaterializable {
                horizon: h,
                requested: max_level.to_string(),
            });
        }
        let mut counts = vec![self.total()];
        for _ in 0..max_level {
            self.advance()?;
            counts.push(self.total());
        }
        Ok(CountTable {
            transformation: name.to_string(),
            kind,
            counts,
        })
    }
}

/// Level-by-level NS counter. The automaton is minimized first so trivial
/// states are semantic and absorbing.
pub fn ns_counter(g: &Transformation) -> LevelCounter {
    let min = minimize(g.automaton());
    let live: Vec<bool> = trivial_classes(&min.automaton).iter().map(|t| !t).collect();
    LevelCounter::new(
        &min.automaton,
        min.class_of[g.initial()],
        &live,
        g.horizon(),
    )
}

/// Level-by-level NC counter on the automaton as given.
pub fn nc_counter(g: &Transformation) -> LevelCounter {
    let (_, member) = uc_membership(g.automaton());
    let live: Vec<bool> = member.iter().map(Option::is_none).collect();
    LevelCounter::new(g.automaton(), g.initial(), &live, g.horizon())
}

/// `NS(g, l)` for `l = 0..=max_level`.
pub fn count_ns(g: &Transformation, max_level: usize) -> Result<CountTable> {
    ns_counter(g).table(g.name(), CountKind::Ns, max_level)
}

/// `NC(g, l)` for `l = 0..=max_level`.
pub fn count_nc(g: &Transformation, max_level: usize) -> Result<CountTable> {
    nc_counter(g).table(g.name(), CountKind::Nc, max_level)
}

pub fn count(g: &Transformation, kind: CountKind, max_level: usize) -> Result<CountTable> {
    match kind {
        CountKind::Ns => count_ns(g, max_level),
        CountKind::Nc => count_nc(g, max_level),
    }
}

fn enumerate(
    g: &Transformation,
    l: usize,
    keep: impl Fn(&Automaton, StateId, &Word) -> bool,
) -> Vec<Word> {
    let a = g.automaton();
    a.alphabet()
        .words(l)
        .filter(|w| keep(a, g.initial(), w))
        .collect()
}

/// Explicit set of length-`l` words leading `g` to a trivial state.
pub fn s_set(g: &Transformation, l: usize) -> Vec<Word> {
    let triv = crate::algebra::trivial_states(g.automaton());
    enumerate(g, l, |a, q, w| triv[a.run(q, w)])
}

/// Complement of [`s_set`] in `X^l`.
pub fn ns_set(g: &Transformation, l: usize) -> Vec<Word> {
    let triv = crate::algebra::trivial_states(g.automaton());
    enumerate(g, l, |a, q, w| !triv[a.run(q, w)])
}

/// Length-`l` words that bring `g` into some unconditional cycle.
pub fn c_set(g: &Transformation, l: usize) -> Vec<Word> {
    let (_, member) = uc_membership(g.automaton());
    enumerate(g, l, |a, q, w| member[a.run(q, w)].is_some())
}

/// Length-`l` words whose first `l` letters avoid every unconditional cycle.
pub fn nc_set(g: &Transformation, l: usize) -> Vec<Word> {
    let (_, member) = uc_membership(g.automaton());
    enumerate(g, l, |a, q, w| member[a.run(q, w)].is_none())
}
