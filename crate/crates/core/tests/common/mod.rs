//! Shared test corpus and brute-force oracles.
//!
//! The oracles only read the raw transition and output tables; they never
//! call minimization, cycle detection or the counting DP.

#![allow(dead_code)]

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use selfsim::builtin;
use selfsim::{Alphabet, Automaton, Letter, StateId, Transformation, Word};

pub const CORPUS_SEED: u64 = 0x5e1f_5151;

/// Runs the tables directly: returns output word and final state.
pub fn simulate(a: &Automaton, q: StateId, w: &[Letter]) -> (Vec<Letter>, StateId) {
    let k = a.arity();
    let mut state = q;
    let mut out = Vec::with_capacity(w.len());
    for &x in w {
        assert!(x < k);
        out.push(a.output_row(state)[x]);
        state = a.next_row(state)[x];
    }
    (out, state)
}

/// All words of length `l` over `k` letters, by odometer counting.
pub fn all_words(k: usize, l: usize) -> Vec<Vec<Letter>> {
    let mut words = Vec::new();
    let mut w = vec![0; l];
    loop {
        words.push(w.clone());
        let mut i = 0;
        loop {
            if i == l {
                return words;
            }
            w[i] += 1;
            if w[i] < k {
                break;
            }
            w[i] = 0;
            i += 1;
        }
    }
}

/// A state is trivial iff it fixes every word of length at most `|Q|`:
/// two states of an `n`-state machine that differ are told apart by a word
/// of length below `n`, and here the comparison runs against an added
/// identity state.
pub fn oracle_trivial(a: &Automaton, q: StateId) -> bool {
    (0..=a.num_states()).all(|l| {
        all_words(a.arity(), l)
            .iter()
            .all(|w| simulate(a, q, w).0 == *w)
    })
}

/// A state lies on an unconditional cycle iff following input-independent
/// successors returns to it.
pub fn oracle_in_uc(a: &Automaton, q: StateId) -> bool {
    let mut s = q;
    for _ in 0..a.num_states() {
        let row = a.next_row(s);
        if row.iter().any(|&t| t != row[0]) {
            return false;
        }
        s = row[0];
        if s == q {
            return true;
        }
    }
    false
}

/// A state is trivial iff every state reachable from it copies its input.
pub fn oracle_trivial_by_reach(a: &Automaton, q: StateId) -> bool {
    let mut seen = vec![false; a.num_states()];
    let mut stack = vec![q];
    seen[q] = true;
    while let Some(s) = stack.pop() {
        if a.output_row(s).iter().enumerate().any(|(x, &y)| x != y) {
            return false;
        }
        for &t in a.next_row(s) {
            if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    true
}

pub fn oracle_ns(g: &Transformation, l: usize) -> u64 {
    let a = g.automaton();
    let trivial: Vec<bool> = a.states().map(|q| oracle_trivial_by_reach(a, q)).collect();
    all_words(a.arity(), l)
        .iter()
        .filter(|w| !trivial[simulate(a, g.initial(), w).1])
        .count() as u64
}

pub fn oracle_nc(g: &Transformation, l: usize) -> u64 {
    let a = g.automaton();
    let uc: Vec<bool> = a.states().map(|q| oracle_in_uc(a, q)).collect();
    all_words(a.arity(), l)
        .iter()
        .filter(|w| (0..=l).all(|i| !uc[simulate(a, g.initial(), &w[..i]).1]))
        .count() as u64
}

/// Random invertible automaton with `n` states over `k` letters. With
/// `identity_sink` the last state is a trivial sink.
pub fn random_automaton(rng: &mut impl Rng, n: usize, k: usize, identity_sink: bool) -> Automaton {
    let alphabet = Alphabet::numeric(k).unwrap();
    let names = (0..n).map(|i| format!("s{i}")).collect();
    let mut next = Vec::with_capacity(n * k);
    let mut output = Vec::with_capacity(n * k);
    for q in 0..n {
        let mut perm: Vec<Letter> = (0..k).collect();
        if identity_sink && q == n - 1 {
            next.extend(std::iter::repeat_n(q, k));
        } else {
            perm.shuffle(rng);
            for _ in 0..k {
                // lean towards the sink so some machines have negligible NS
                let t = if identity_sink && rng.gen_bool(0.4) {
                    n - 1
                } else {
                    rng.gen_range(0..n)
                };
                next.push(t);
            }
        }
        output.extend(perm);
    }
    Automaton::build(alphabet, names, next, output).unwrap()
}

pub fn random_machines(count: usize, seed: u64) -> Vec<Automaton> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let k = rng.gen_range(2..=3);
            let n = rng.gen_range(1..=5);
            random_automaton(&mut rng, n, k, i % 2 == 0 && n >= 2)
        })
        .collect()
}

/// Named finite machines over {0,1}.
pub fn named_binary() -> Vec<Automaton> {
    vec![
        builtin::adding_machine(),
        builtin::flip_all_machine(),
        builtin::flip_alternator_machine(),
        builtin::uv_core_machine(),
        builtin::identity_machine(),
    ]
}

pub fn every_state(a: Automaton) -> Vec<Transformation> {
    let a = Arc::new(a);
    a.states()
        .map(|q| Transformation::at(a.clone(), q).unwrap())
        .collect()
}

/// Every state of every named machine, the depth-9 remark chain and
/// `random` random machines.
pub fn corpus(random: usize) -> Vec<Transformation> {
    let mut machines = named_binary();
    machines.push(builtin::remark_chain(9, None).unwrap());
    machines.extend(random_machines(random, CORPUS_SEED));
    machines.into_iter().flat_map(every_state).collect()
}

/// Finite (non-truncated) members of [`corpus`].
pub fn finite_corpus(random: usize) -> Vec<Transformation> {
    corpus(random)
        .into_iter()
        .filter(|g| g.horizon().is_none())
        .collect()
}

pub fn word(letters: &[Letter]) -> Word {
    Word::new(letters.to_vec())
}
