//! Unconditional cycles, exact NS/NC counts, growth classification and
//! membership in the groups of transformations with negligible counts.

mod counts;
mod growth;
mod membership;
mod ucs;

pub use counts::{
    c_set, count, count_nc, count_ns, nc_counter, nc_set, ns_counter, ns_set, s_set, CountKind,
    CountTable, LevelCounter,
};
pub use growth::{
    classify_growth, GrowthClass, GrowthReport, POWER_ITERATION_STEPS, POWER_ITERATION_TOLERANCE,
};
pub use membership::{decide_g0, decide_g1, Membership};
pub use ucs::{
    find_ucs, max_uc_length, reachable_uc_lengths, uc_membership, unconditional_successor,
    UnconditionalCycle,
};

use crate::automaton::{StateId, Transformation};
use crate::word::Letter;

/// The product state `(g, h)` reached after reading `word`, and the length of
/// the unconditional cycle of the product automaton containing it, if any.
///
/// Used to exercise the fact that if `word` brings `g` into a cycle of length
/// `n` and `g(word)` brings `h` into one of length `m`, then `word` brings
/// `g` followed by `h` into a cycle of length `lcm(n, m)`.
pub fn product_cycle_after(
    g: &Transformation,
    h: &Transformation,
    word: &[Letter],
) -> crate::Result<(StateId, Option<usize>)> {
    let product = crate::algebra::compose(g.automaton(), h.automaton())?;
    let start = g.initial() * h.automaton().num_states() + h.initial();
    product.alphabet().check_word(word)?;
    let end = product.run(start, word);
    let (cycles, member) = uc_membership(&product);
    Ok((end, member[end].map(|i| cycles[i].len())))
}

/// Length of the unconditional cycle containing the state `g` reaches after
/// `word`, if any.
pub fn cycle_after(g: &Transformation, word: &[Letter]) -> Option<usize> {
    let (cycles, member) = uc_membership(g.automaton());
    member[g.automaton().run(g.initial(), word)].map(|i| cycles[i].len())
}
