//! Graphviz export of Moore diagrams: one edge per `(state, letter)`,
//! labelled `input|output`.

use std::fmt::Write;

use crate::automaton::Automaton;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Renders `a` as a DOT digraph. Output is ordered by state then letter.
pub fn render_dot(a: &Automaton) -> String {
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
    for q in a.states() {
        writeln!(out, "  {};", quote(a.state_name(q))).unwrap();
    }
    for q in a.states() {
        for x in 0..a.arity() {
            let label = format!(
                "{}|{}",
                a.alphabet().symbol(x),
                a.alphabet().symbol(a.output(q, x))
            );
            writeln!(
                out,
                "  {} -> {} [label={}];",
                quote(a.state_name(q)),
                quote(a.state_name(a.next(q, x))),
                quote(&label)
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}
