//! Line-oriented automaton format.
//!
//! ```text
//! # binary odometer
//! name: adding
//! alphabet: 0 1
//! state q:
//!   0 -> e | 1
//!   1 -> q | 0
//! state e:
//!   0 -> e | 0
//!   1 -> e | 1
//! ```
//!
//! Transition lines read `input -> next | output`.

use std::collections::HashSet;
use std::fmt::Write;

use crate::automaton::{validate, RawAutomaton, RawState};
use crate::error::{Error, Result};

use super::AutomatonDocument;

fn column_of(line: &str, part: &str) -> usize {
    // `part` is always a subslice of `line`
    let offset = part.as_ptr() as usize - line.as_ptr() as usize;
    line[..offset].chars().count() + 1
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && !s.contains(|c: char| c.is_whitespace() || c == ':' || c == '|' || c == '#')
}

pub fn parse_dsl(text: &str) -> Result<AutomatonDocument> {
    let mut name = None;
    let mut description = None;
    let mut raw = RawAutomaton::default();
    let mut alphabet_seen = false;
    let mut names = HashSet::new();
    let mut letters_seen: HashSet<String> = HashSet::new();

    for (i, full) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = full.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let err = |part: &str, msg: String| Error::syntax(line_no, column_of(full, part), msg);

        if let Some(rest) = trimmed.strip_prefix("name:") {
            name = Some(rest.trim().to_string());
        } else if let Some(rest) = trimmed.strip_prefix("description:") {
            description = Some(rest.trim().to_string());
        } else if let Some(rest) = trimmed.strip_prefix("alphabet:") {
            if alphabet_seen {
                return Err(err(trimmed, "duplicate alphabet".into()));
            }
            if !raw.states.is_empty() {
                return Err(err(trimmed, "alphabet must precede states".into()));
            }
            alphabet_seen = true;
            for tok in rest.split_whitespace() {
                if raw.alphabet.iter().any(|s| s == tok) {
                    return Err(err(tok, format!("duplicate letter `{tok}`")));
                }
                if tok == "->" || tok.contains('|') {
                    return Err(err(tok, format!("invalid letter `{tok}`")));
                }
                raw.alphabet.push(tok.to_string());
            }
        } else if let Some(rest) = trimmed.strip_prefix("state ") {
            if !alphabet_seen {
                return Err(err(trimmed, "expected `alphabet:` before states".into()));
            }
            let rest = rest.trim();
            let ident = rest
                .strip_suffix(':')
                .map(str::trim)
                .ok_or_else(|| err(rest, "expected `:` after state name".into()))?;
            if !is_ident(ident) {
                return Err(err(rest, format!("invalid state name `{ident}`")));
            }
            if !names.insert(ident.to_string()) {
                return Err(err(ident, format!("duplicate state `{ident}`")));
            }
            letters_seen.clear();
            raw.states.push(RawState {
                name: ident.to_string(),
                transitions: Vec::new(),
            });
        } else if let Some((input, rest)) = trimmed.split_once("->") {
            let state = raw
                .states
                .last_mut()
                .ok_or_else(|| err(trimmed, "transition outside of a state block".into()))?;
            let input = input.trim();
            let (target, output) = rest
                .rsplit_once('|')
                .ok_or_else(|| err(rest, "expected `| output`".into()))?;
            let (target, output) = (target.trim(), output.trim());
            for tok in [input, output] {
                if !raw.alphabet.iter().any(|s| s == tok) {
                    return Err(err(tok, format!("unknown letter `{tok}`")));
                }
            }
            if !is_ident(target) {
                return Err(err(rest, format!("invalid state name `{target}`")));
            }
            if !letters_seen.insert(input.to_string()) {
                return Err(err(input, format!("duplicate transition on `{input}`")));
            }
            state
                .transitions
                .push((input.to_string(), target.to_string(), output.to_string()));
        } else {
            return Err(err(trimmed, format!("unexpected line `{trimmed}`")));
        }
    }
    if !alphabet_seen {
        return Err(Error::syntax(1, 1, "missing `alphabet:` line"));
    }
    if raw.states.is_empty() {
        return Err(Error::syntax(
            text.lines().count().max(1),
            1,
            "no states defined",
        ));
    }
    Ok(AutomatonDocument {
        name,
        description,
        automaton: validate(&raw)?,
    })
}

pub fn render_dsl(doc: &AutomatonDocument) -> String {
    let a = &doc.automaton;
    let mut out = String::new();
    if let Some(name) = &doc.name {
        writeln!(out, "name: {name}").unwrap();
    }
    if let Some(desc) = &doc.description {
        writeln!(out, "description: {desc}").unwrap();
    }
    writeln!(out, "alphabet: {}", a.alphabet().symbols().join(" ")).unwrap();
    for q in a.states() {
        writeln!(out, "state {}:", a.state_name(q)).unwrap();
        for x in 0..a.arity() {
            writeln!(
                out,
                "  {} -> {} | {}",
                a.alphabet().symbol(x),
                a.state_name(a.next(q, x)),
                a.alphabet().symbol(a.output(q, x))
            )
            .unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    const ADDING: &str = "\
# binary odometer
alphabet: 0 1
state q:
  0 -> e | 1
  1 -> q | 0
state e:
  0 -> e | 0
  1 -> e | 1
";

    #[test]
    fn parses_adding_machine() {
        let doc = parse_dsl(ADDING).unwrap();
        assert_eq!(&doc.automaton, &builtin::adding_machine());
    }

    #[test]
    fn missing_row_names_state_and_letter() {
        let text = ADDING.replace("  1 -> e | 1\n", "");
        assert_eq!(
            parse_dsl(&text).unwrap_err(),
            Error::MissingTransition {
                state: "e".into(),
                letter: "1".into()
            }
        );
    }

    #[test]
    fn duplicate_state_is_a_syntax_error() {
        let text = format!("{ADDING}state q:\n  0 -> q | 0\n  1 -> q | 1\n");
        match parse_dsl(&text).unwrap_err() {
            Error::Syntax {
                line,
                column,
                message,
            } => {
                assert_eq!((line, column), (9, 7));
                assert!(message.contains("duplicate state"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reports_locations() {
        let text = "alphabet: 0 1\nstate q:\n  0 -> q | 2\n";
        assert_eq!(
            parse_dsl(text).unwrap_err(),
            Error::Syntax {
                line: 3,
                column: 12,
                message: "unknown letter `2`".into()
            }
        );
        assert!(matches!(
            parse_dsl("state q:\n").unwrap_err(),
            Error::Syntax { line: 1, .. }
        ));
        assert!(matches!(
            parse_dsl("alphabet: 0 1\n  0 -> q | 1\n").unwrap_err(),
            Error::Syntax { line: 2, .. }
        ));
    }

    #[test]
    fn render_then_parse() {
        let mut doc = AutomatonDocument::new(builtin::remark_chain(3, None).unwrap());
        doc.name = Some("chain".into());
        let text = render_dsl(&doc);
        let back = parse_dsl(&text).unwrap();
        assert_eq!(back.name.as_deref(), Some("chain"));
        assert!(back.automaton.same_up_to_state_order(&doc.automaton));
    }
}
