//! JSON form: `{"alphabet": [...], "states": {"q": {"0": ["e", "1"], ...}}}`,
//! with optional `name` and `description`. Object keys are emitted sorted.

use serde_json::{json, Map, Value};

use crate::automaton::{validate, RawAutomaton, RawState};
use crate::error::{Error, Result};

use super::AutomatonDocument;

fn shape(message: impl Into<String>) -> Error {
    Error::syntax(1, 1, message)
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| shape(format!("{what} must be a string")))
}

pub fn parse_json(text: &str) -> Result<AutomatonDocument> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::syntax(e.line(), e.column(), e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| shape("top level must be an object"))?;

    let alphabet = obj
        .get("alphabet")
        .and_then(Value::as_array)
        .ok_or_else(|| shape("missing `alphabet` array"))?
        .iter()
        .map(|v| as_str(v, "alphabet symbol").map(str::to_string))
        .collect::<Result<Vec<_>>>()?;

    let states = obj
        .get("states")
        .and_then(Value::as_object)
        .ok_or_else(|| shape("missing `states` object"))?
        .iter()
        .map(|(name, row)| {
            let row = row.as_object().ok_or_else(|| {
                shape(format!("state `{name}` must map letters to [next, output]"))
            })?;
            let transitions = row
                .iter()
                .map(|(input, pair)| match pair.as_array().map(Vec::as_slice) {
                    Some([next, out]) => Ok((
                        input.clone(),
                        as_str(next, "next state")?.to_string(),
                        as_str(out, "output letter")?.to_string(),
                    )),
                    _ => Err(shape(format!(
                        "transition `{name}`/`{input}` must be [next, output]"
                    ))),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(RawState {
                name: name.clone(),
                transitions,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let text_field = |key: &str| -> Result<Option<String>> {
        obj.get(key)
            .map(|v| as_str(v, key).map(str::to_string))
            .transpose()
    };
    Ok(AutomatonDocument {
        name: text_field("name")?,
        description: text_field("description")?,
        automaton: validate(&RawAutomaton { alphabet, states })?,
    })
}

pub fn to_json_value(doc: &AutomatonDocument) -> Value {
    let a = &doc.automaton;
    let sym = |x| a.alphabet().symbol(x).to_string();
    let states: Map<String, Value> = a
        .states()
        .map(|q| {
            let row: Map<String, Value> = (0..a.arity())
                .map(|x| {
                    (
                        sym(x),
                        json!([a.state_name(a.next(q, x)), sym(a.output(q, x))]),
                    )
                })
                .collect();
            (a.state_name(q).to_string(), Value::Object(row))
        })
        .collect();
    let mut obj = Map::new();
    obj.insert("alphabet".into(), json!(a.alphabet().symbols()));
    obj.insert("states".into(), Value::Object(states));
    if let Some(name) = &doc.name {
        obj.insert("name".into(), json!(name));
    }
    if let Some(desc) = &doc.description {
        obj.insert("description".into(), json!(desc));
    }
    Value::Object(obj)
}

pub fn render_json(doc: &AutomatonDocument) -> String {
    let mut text =
        serde_json::to_string_pretty(&to_json_value(doc)).expect("JSON values serialize");
    text.push('\n');
    text
}
