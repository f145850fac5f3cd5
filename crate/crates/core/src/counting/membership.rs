//! Exact decision of `NS(g,l) = o(|X|^l)` and `NC(g,l) = o(|X|^l)` for finite
//! automata.
//!
//! Both counts are path counts in a sub-automaton of live states. Such a
//! count grows like `|X|^l` exactly when some set of live states reachable
//! from `g` keeps all `|X|` transitions inside itself (the full-degree core);
//! otherwise its growth base is strictly below `|X|`.

use std::collections::VecDeque;

use crate::algebra::{minimize, trivial_classes};
use crate::automaton::{Automaton, StateId, Transformation};
use crate::error::{Error, Result};
use crate::word::Word;

use super::growth::LiveGraph;
use super::ucs::uc_membership;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// For non-members, a shortest word leading `g` into the full-degree
    /// core. Then the count at level `l >= |witness|` is at least
    /// `|X|^(l - |witness|)`.
    pub witness: Option<Word>,
}

/// Live states that keep every transition inside the set.
fn full_degree_core(a: &Automaton, live: &[bool]) -> Vec<bool> {
    let mut core = live.to_vec();
    loop {
        let mut changed = false;
        for q in a.states() {
            if core[q] && a.next_row(q).iter().any(|&t| !core[t]) {
                core[q] = false;
                changed = true;
            }
        }
        if !changed {
            return core;
        }
    }
}

pub(crate) fn full_degree_core_reachable(graph: &LiveGraph, k: usize) -> bool {
    let mut core: Vec<bool> = graph.edges.iter().map(|e| e.len() == k).collect();
    loop {
        let mut changed = false;
        for (q, targets) in graph.edges.iter().enumerate() {
            if core[q] && targets.iter().any(|&t| !core[t]) {
                core[q] = false;
                changed = true;
            }
        }
        if !changed {
            return core.iter().any(|&c| c);
        }
    }
}

/// Shortest word moving `start` into the core through live states only.
fn witness_to_core(a: &Automaton, start: StateId, live: &[bool], core: &[bool]) -> Option<Word> {
    if !live[start] {
        return None;
    }
    let mut parent: Vec<Option<(StateId, usize)>> = vec![None; a.num_states()];
    let mut seen = vec![false; a.num_states()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(q) = queue.pop_front() {
        if core[q] {
            let mut letters = Vec::new();
            let mut cur = q;
            while let Some((p, x)) = parent[cur] {
                letters.push(x);
                cur = p;
            }
            letters.reverse();
            return Some(Word::new(letters));
        }
        for (x, &t) in a.next_row(q).iter().enumerate() {
            if live[t] && !seen[t] {
                seen[t] = true;
                parent[t] = Some((q, x));
                queue.push_back(t);
            }
        }
    }
    None
}

fn decide(a: &Automaton, start: StateId, live: &[bool]) -> Membership {
    let core = full_degree_core(a, live);
    let witness = witness_to_core(a, start, live, &core);
    Membership {
        member: witness.is_none(),
        witness,
    }
}

fn require_finite(g: &Transformation) -> Result<()> {
    match g.horizon() {
        Some(horizon) => Err(Error::NotMaterializable {
            horizon,
            requested: "unbounded".into(),
        }),
        None => Ok(()),
    }
}

/// Whether `NS(g, l) = o(|X|^l)`.
pub fn decide_g0(g: &Transformation) -> Result<Membership> {
    require_finite(g)?;
    let min = minimize(g.automaton());
    let live: Vec<bool> = trivial_classes(&min.automaton).iter().map(|t| !t).collect();
    Ok(decide(&min.automaton, min.class_of[g.initial()], &live))
}

/// Whether `NC(g, l) = o(|X|^l)` for the automaton realizing `g`.
pub fn decide_g1(g: &Transformation) -> Result<Membership> {
    require_finite(g)?;
    let (_, member) = uc_membership(g.automaton());
    let live: Vec<bool> = member.iter().map(Option::is_none).collect();
    Ok(decide(g.automaton(), g.initial(), &live))
}
