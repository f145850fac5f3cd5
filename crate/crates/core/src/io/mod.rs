//! Text formats for automata: the `.maut` line format, JSON and DOT export.

mod dot;
mod dsl;
mod json;

pub use dot::render_dot;
pub use dsl::{parse_dsl, render_dsl};
pub use json::{parse_json, render_json, to_json_value};

use crate::automaton::Automaton;
use crate::error::Result;

/// An automaton with optional descriptive metadata. The initial state is
/// not part of the document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomatonDocument {
    pub name: Option<String>,
    pub description: Option<String>,
    pub automaton: Automaton,
}

impl AutomatonDocument {
    pub fn new(automaton: Automaton) -> Self {
        AutomatonDocument {
            name: None,
            description: None,
            automaton,
        }
    }
}

/// Parses either format; text starting with `{` is read as JSON.
pub fn parse_document(text: &str) -> Result<AutomatonDocument> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_dsl(text)
    }
}

pub fn parse_automaton(text: &str) -> Result<Automaton> {
    parse_document(text).map(|d| d.automaton)
}
