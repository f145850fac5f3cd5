//! Builtin example automata and depth-bounded materialization of the
//! infinite remark chain.

use crate::automaton::{Automaton, Transformation};
use crate::error::{Error, Result};
use crate::word::Alphabet;

pub const FAMILIES: &[&str] = &[
    "adding",
    "flip_all",
    "flip_alternator",
    "remark_chain",
    "identity",
    "uv_core",
];

fn binary() -> Alphabet {
    Alphabet::numeric(2).expect("two symbols")
}

/// Binary odometer: state `q` adds 1 to a word read lowest digit first.
pub fn adding_machine() -> Automaton {
    Automaton::from_rows(
        binary(),
        &["q", "e"],
        &[&[1, 0], &[1, 1]],
        &[&[1, 0], &[0, 1]],
    )
    .expect("valid tables")
}

pub fn adding() -> Transformation {
    Transformation::at(adding_machine(), 0).unwrap()
}

/// One state `r` flipping every letter and looping on itself.
pub fn flip_all_machine() -> Automaton {
    Automaton::from_rows(binary(), &["r"], &[&[0, 0]], &[&[1, 0]]).expect("valid tables")
}

pub fn flip_all() -> Transformation {
    Transformation::at(flip_all_machine(), 0).unwrap()
}

/// `a` flips and moves to `b`, `b` copies and moves to `a`.
pub fn flip_alternator_machine() -> Automaton {
    Automaton::from_rows(
        binary(),
        &["a", "b"],
        &[&[1, 1], &[0, 0]],
        &[&[1, 0], &[0, 1]],
    )
    .expect("valid tables")
}

pub fn flip_alternator() -> Transformation {
    Transformation::at(flip_alternator_machine(), 0).unwrap()
}

pub fn identity_machine() -> Automaton {
    Automaton::from_rows(binary(), &["e"], &[&[0, 0]], &[&[0, 1]]).expect("valid tables")
}

/// Two flipping states whose successor depends on the input letter, with
/// no unconditional cycle anywhere.
pub fn uv_core_machine() -> Automaton {
    Automaton::from_rows(
        binary(),
        &["u", "v"],
        &[&[0, 1], &[0, 1]],
        &[&[1, 0], &[1, 0]],
    )
    .expect("valid tables")
}

/// Finite stand-in for the infinite chain `q_1, q_2, ...` over `{0,1,2,3}`.
///
/// Every `q_i` swaps 0 and 1 and fixes 2 and 3. Letter 0 sends `q_i` to the
/// trivial state `e`, letter 1 steps down to `q_{i-1}` (`q_0 = e`), letters
/// 2 and 3 step up to `q_{i+1}`. The top state `q_depth` steps up to itself.
///
/// That clamp is invisible to any run of length at most `depth - i + 1`
/// starting from `q_i`; these horizons are recorded on the automaton and
/// checked by the counting routines. If `requested_length` is given it must
/// not exceed `depth`.
pub fn remark_chain(depth: usize, requested_length: Option<usize>) -> Result<Automaton> {
    if depth == 0 {
        return Err(Error::DepthTooSmallForRequestedLength {
            depth,
            requested: requested_length.unwrap_or(1),
        });
    }
    if let Some(requested) = requested_length.filter(|&l| l > depth) {
        return Err(Error::DepthTooSmallForRequestedLength { depth, requested });
    }
    let alphabet = Alphabet::numeric(4).expect("four symbols");
    // q_i has index i - 1, e has index depth
    let e = depth;
    let chain = |i: usize| if i == 0 { e } else { i.min(depth) - 1 };
    let mut names: Vec<String> = (1..=depth).map(|i| format!("q_{i}")).collect();
    names.push("e".into());
    let mut next = Vec::with_capacity((depth + 1) * 4);
    let mut output = Vec::with_capacity((depth + 1) * 4);
    for i in 1..=depth {
        next.extend([e, chain(i - 1), chain(i + 1), chain(i + 1)]);
        output.extend([1, 0, 2, 3]);
    }
    next.extend([e; 4]);
    output.extend([0, 1, 2, 3]);
    let mut horizons: Vec<usize> = (1..=depth).map(|i| depth - i + 1).collect();
    horizons.push(usize::MAX);
    Ok(Automaton::build(alphabet, names, next, output)
        .expect("valid tables")
        .with_horizons(Some(horizons)))
}

/// A builtin family together with the bound on how many chain states to
/// generate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaterializationPolicy {
    pub family: String,
    pub depth: usize,
}

impl MaterializationPolicy {
    pub fn new(family: impl Into<String>, depth: usize) -> Self {
        MaterializationPolicy {
            family: family.into(),
            depth,
        }
    }

    /// Materializes the family, refusing when `requested_length` exceeds
    /// what the depth can soundly represent.
    pub fn materialize(&self, requested_length: Option<usize>) -> Result<Automaton> {
        generate_builtin(&self.family, Some(self.depth), requested_length)
    }
}

/// Looks up a builtin family by name. `depth` is only used by `remark_chain`
/// (default 16).
pub fn generate_builtin(
    name: &str,
    depth: Option<usize>,
    requested_length: Option<usize>,
) -> Result<Automaton> {
    match name {
        "adding" => Ok(adding_machine()),
        "flip_all" => Ok(flip_all_machine()),
        "flip_alternator" => Ok(flip_alternator_machine()),
        "identity" => Ok(identity_machine()),
        "uv_core" => Ok(uv_core_machine()),
        "remark_chain" => remark_chain(depth.unwrap_or(16), requested_length),
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}
