use std::collections::{BTreeSet, HashSet};

use crate::automaton::{Automaton, StateId, Transformation};

/// States `g_1 -> ... -> g_n -> g_1` whose successor ignores the input letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnconditionalCycle {
    states: Vec<StateId>,
}

impl UnconditionalCycle {
    /// States in cycle order, starting from the lowest index.
    pub fn states(&self) -> &[StateId] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn contains(&self, q: StateId) -> bool {
        self.states.contains(&q)
    }
}

/// The successor of `q` when it does not depend on the letter read.
pub fn unconditional_successor(a: &Automaton, q: StateId) -> Option<StateId> {
    let row = a.next_row(q);
    row.iter().all(|&t| t == row[0]).then_some(row[0])
}

/// All unconditional cycles, ordered by their lowest state.
pub fn find_ucs(a: &Automaton) -> Vec<UnconditionalCycle> {
    let sigma: Vec<Option<StateId>> = a.states().map(|q| unconditional_successor(a, q)).collect();
    let mut done = vec![false; a.num_states()];
    let mut cycles = Vec::new();
    for start in a.states() {
        if done[start] {
            continue;
        }
        let mut path = Vec::new();
        let mut on_path = HashSet::new();
        let mut cur = Some(start);
        while let Some(q) = cur {
            if done[q] {
                break;
            }
            if on_path.contains(&q) {
                let from = path.iter().position(|&p| p == q).unwrap();
                let mut states = path[from..].to_vec();
                let lowest = (0..states.len()).min_by_key(|&i| states[i]).unwrap();
                states.rotate_left(lowest);
                cycles.push(UnconditionalCycle { states });
                break;
            }
            on_path.insert(q);
            path.push(q);
            cur = sigma[q];
        }
        for q in path {
            done[q] = true;
        }
    }
    cycles.sort_by_key(|c| c.states[0]);
    cycles
}

/// For every state, the index into `find_ucs(a)` of the cycle containing it.
pub fn uc_membership(a: &Automaton) -> (Vec<UnconditionalCycle>, Vec<Option<usize>>) {
    let cycles = find_ucs(a);
    let mut member = vec![None; a.num_states()];
    for (i, c) in cycles.iter().enumerate() {
        for &q in c.states() {
            member[q] = Some(i);
        }
    }
    (cycles, member)
}

/// States reachable from `g` by words of length at most `l`.
pub(crate) fn reachable_within(g: &Transformation, l: usize) -> BTreeSet<StateId> {
    let a = g.automaton();
    let mut seen = BTreeSet::from([g.initial()]);
    let mut frontier = vec![g.initial()];
    for _ in 0..l {
        let mut next = Vec::new();
        for q in frontier {
            for &t in a.next_row(q) {
                if seen.insert(t) {
                    next.push(t);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    seen
}

/// Lengths of the unconditional cycles `g` can enter within `l` steps.
pub fn reachable_uc_lengths(g: &Transformation, l: usize) -> BTreeSet<usize> {
    let (cycles, member) = uc_membership(g.automaton());
    reachable_within(g, l)
        .into_iter()
        .filter_map(|q| member[q].map(|i| cycles[i].len()))
        .collect()
}

/// Largest unconditional cycle reachable from `g` within `l` steps, 0 if none.
pub fn max_uc_length(g: &Transformation, l: usize) -> usize {
    reachable_uc_lengths(g, l).into_iter().max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn ucs_of_builtins() {
        let fa = builtin::flip_alternator_machine();
        let ucs = find_ucs(&fa);
        assert_eq!(ucs.len(), 1);
        assert_eq!(ucs[0].states(), &[0, 1]);

        let add = builtin::adding_machine();
        let ucs = find_ucs(&add);
        assert_eq!(ucs.len(), 1);
        assert_eq!(ucs[0].states(), &[add.state("e").unwrap()]);

        let ucs = find_ucs(&builtin::flip_all_machine());
        assert_eq!(ucs.len(), 1);
        assert_eq!(ucs[0].len(), 1);

        assert!(find_ucs(&builtin::uv_core_machine()).is_empty());
    }

    #[test]
    fn tail_into_cycle_is_not_a_cycle() {
        // p -> a -> b -> a, all unconditional; p is not on the cycle
        let alphabet = crate::word::Alphabet::numeric(2).unwrap();
        let m = Automaton::from_rows(
            alphabet,
            &["p", "a", "b"],
            &[&[1, 1], &[2, 2], &[1, 1]],
            &[&[0, 1], &[1, 0], &[0, 1]],
        )
        .unwrap();
        let ucs = find_ucs(&m);
        assert_eq!(ucs.len(), 1);
        assert_eq!(ucs[0].states(), &[1, 2]);
    }

    #[test]
    fn max_uc_length_examples() {
        for l in 0..5 {
            assert_eq!(max_uc_length(&builtin::flip_alternator(), l), 2);
            assert_eq!(max_uc_length(&builtin::flip_all(), l), 1);
        }
        assert_eq!(max_uc_length(&builtin::adding(), 0), 0);
        assert_eq!(max_uc_length(&builtin::adding(), 1), 1);
    }
}
