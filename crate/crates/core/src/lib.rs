//! Invertible letter-to-letter automata acting on finite and eventually
//! periodic words.
//!
//! The crate covers the algebra of such automata (application, inversion,
//! composition, minimization), exact counts of how many words of each length
//! leave a transformation outside the trivial state or outside every
//! unconditional cycle, growth classification built on those counts, and
//! finite-scale checks of the counting argument that rules out paradoxical
//! decompositions of the space of infinite words.

pub mod algebra;
pub mod automaton;
pub mod builtin;
pub mod counting;
mod error;
pub mod io;
pub mod paradox;
pub mod periodic;
pub mod word;

pub use algebra::{compose, invert, is_trivial_state, minimize, Minimized};
pub use automaton::{validate, Automaton, RawAutomaton, RawState, StateId, Transformation};
pub use error::{Error, Result};
pub use periodic::EpWord;
pub use word::{Alphabet, Letter, Word};
