//! Inversion, composition and minimization of automata.

use std::collections::{HashMap, VecDeque};

use crate::automaton::{Automaton, StateId, Transformation};
use crate::error::Result;

const INVERSE_SUFFIX: &str = "^-1";

fn inverse_name(name: &str) -> String {
    match name.strip_suffix(INVERSE_SUFFIX) {
        Some(base) => base.to_string(),
        None => format!("{name}{INVERSE_SUFFIX}"),
    }
}

/// Swaps input and output labels on every edge and renames `q` to `q^-1`.
///
/// State indices are kept, so state `q` of the result defines the inverse of
/// state `q` of `a`. Inverting twice gives back the original names.
pub fn invert(a: &Automaton) -> Automaton {
    let k = a.arity();
    let n = a.num_states();
    let mut next = vec![0; n * k];
    let mut output = vec![0; n * k];
    for q in a.states() {
        for x in 0..k {
            let y = a.output(q, x);
            next[q * k + y] = a.next(q, x);
            output[q * k + y] = x;
        }
    }
    let names = a.state_names().iter().map(|s| inverse_name(s)).collect();
    Automaton::build(a.alphabet().clone(), names, next, output)
        .expect("inverse of a valid automaton is valid")
        .with_horizons(a.horizons().map(<[usize]>::to_vec))
}

fn pair_name(a: &Automaton, q: StateId, b: &Automaton, s: StateId) -> String {
    format!("({},{})", a.state_name(q), b.state_name(s))
}

fn pair_horizons(a: &Automaton, b: &Automaton, pairs: &[(StateId, StateId)]) -> Option<Vec<usize>> {
    if !a.is_truncated() && !b.is_truncated() {
        return None;
    }
    let h = |m: &Automaton, q| m.horizon(q).unwrap_or(usize::MAX);
    Some(pairs.iter().map(|&(q, s)| h(a, q).min(h(b, s))).collect())
}

/// Full product automaton on `Q × S`; pair `(q, s)` has index `q * |S| + s`.
///
/// `(q, s)` acts as `q` followed by `s`.
pub fn compose(a: &Automaton, b: &Automaton) -> Result<Automaton> {
    a.same_alphabet(b)?;
    let k = a.arity();
    let m = b.num_states();
    let pairs: Vec<_> = a
        .states()
        .flat_map(|q| b.states().map(move |s| (q, s)))
        .collect();
    let mut next = Vec::with_capacity(pairs.len() * k);
    let mut output = Vec::with_capacity(pairs.len() * k);
    for &(q, s) in &pairs {
        for x in 0..k {
            let y = a.output(q, x);
            next.push(a.next(q, x) * m + b.next(s, y));
            output.push(b.output(s, y));
        }
    }
    let names = pairs.iter().map(|&(q, s)| pair_name(a, q, b, s)).collect();
    Ok(Automaton::build(a.alphabet().clone(), names, next, output)
        .expect("product of valid automata is valid")
        .with_horizons(pair_horizons(a, b, &pairs)))
}

/// Product restricted to pairs reachable from `(q, s)`, which becomes state 0.
pub fn compose_reachable(
    a: &Automaton,
    q: StateId,
    b: &Automaton,
    s: StateId,
) -> Result<Transformation> {
    a.same_alphabet(b)?;
    let k = a.arity();
    let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut pairs = vec![(q, s)];
    index.insert((q, s), 0);
    let mut queue = VecDeque::from([0]);
    let mut next = Vec::new();
    let mut output = Vec::new();
    while let Some(i) = queue.pop_front() {
        let (p, t) = pairs[i];
        for x in 0..k {
            let y = a.output(p, x);
            let target = (a.next(p, x), b.next(t, y));
            let j = *index.entry(target).or_insert_with(|| {
                pairs.push(target);
                queue.push_back(pairs.len() - 1);
                pairs.len() - 1
            });
            // rows are emitted in index order because the queue is FIFO
            next.push(j);
            output.push(b.output(t, y));
        }
    }
    let names = pairs.iter().map(|&(p, t)| pair_name(a, p, b, t)).collect();
    let product = Automaton::build(a.alphabet().clone(), names, next, output)
        .expect("product of valid automata is valid")
        .with_horizons(pair_horizons(a, b, &pairs));
    Transformation::at(product, 0)
}

/// Result of [`minimize`].
#[derive(Debug, Clone)]
pub struct Minimized {
    pub automaton: Automaton,
    /// Class index in `automaton` for every original state.
    pub class_of: Vec<StateId>,
}

impl Minimized {
    pub fn transformation(&self, original: StateId) -> Transformation {
        Transformation::at(self.automaton.clone(), self.class_of[original])
            .expect("class index is in range")
    }
}

/// Quotient by behavioral equivalence (Moore partition refinement).
///
/// States start grouped by output row and are split by the classes of
/// their successors until the partition is stable. Classes are numbered by
/// their lowest original member and carry that member's name.
pub fn minimize(a: &Automaton) -> Minimized {
    let k = a.arity();
    let n = a.num_states();

    let mut class_of = number_by_first_appearance(a.states().map(|q| a.output_row(q).to_vec()));
    let mut count = class_of.iter().max().map_or(0, |m| m + 1);
    loop {
        let refined = number_by_first_appearance(a.states().map(|q| {
            let mut sig = Vec::with_capacity(k + 1);
            sig.push(class_of[q]);
            sig.extend(a.next_row(q).iter().map(|&t| class_of[t]));
            sig
        }));
        let refined_count = refined.iter().max().map_or(0, |m| m + 1);
        class_of = refined;
        if refined_count == count {
            break;
        }
        count = refined_count;
    }

    let mut representative = vec![usize::MAX; count];
    for q in (0..n).rev() {
        representative[class_of[q]] = q;
    }
    let names = representative
        .iter()
        .map(|&r| a.state_name(r).to_string())
        .collect();
    let next = representative
        .iter()
        .flat_map(|&r| a.next_row(r).iter().map(|&t| class_of[t]))
        .collect();
    let output = representative
        .iter()
        .flat_map(|&r| a.output_row(r).iter().copied())
        .collect();
    let horizons = a.horizons().map(|h| {
        let mut merged = vec![usize::MAX; count];
        for q in 0..n {
            merged[class_of[q]] = merged[class_of[q]].min(h[q]);
        }
        merged
    });
    let automaton = Automaton::build(a.alphabet().clone(), names, next, output)
        .expect("quotient of a valid automaton is valid")
        .with_horizons(horizons);
    Minimized {
        automaton,
        class_of,
    }
}

fn number_by_first_appearance<K: std::hash::Hash + Eq>(
    keys: impl Iterator<Item = K>,
) -> Vec<usize> {
    let mut ids = HashMap::new();
    keys.map(|key| {
        let fresh = ids.len();
        *ids.entry(key).or_insert(fresh)
    })
    .collect()
}

/// States of a minimized automaton that are trivial: identity output row and
/// only self-loops.
pub(crate) fn trivial_classes(min: &Automaton) -> Vec<bool> {
    min.states()
        .map(|c| min.has_identity_output(c) && min.next_row(c).iter().all(|&t| t == c))
        .collect()
}

/// Whether every state's transformation is the identity, decided on the
/// minimized automaton.
pub fn trivial_states(a: &Automaton) -> Vec<bool> {
    let min = minimize(a);
    let classes = trivial_classes(&min.automaton);
    min.class_of.iter().map(|&c| classes[c]).collect()
}

/// Whether state `q` defines the identity on all words.
pub fn is_trivial_state(a: &Automaton, q: StateId) -> Result<bool> {
    if q >= a.num_states() {
        return Err(crate::Error::UnknownState(format!("#{q}")));
    }
    Ok(trivial_states(a)[q])
}
