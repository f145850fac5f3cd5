use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::Args;
use selfsim::builtin::generate_builtin;
use selfsim::io::{parse_document, AutomatonDocument};
use selfsim::{Automaton, Transformation};

use crate::error::CliError;

/// Where to read an automaton from.
#[derive(Debug, Clone, Args)]
pub struct Source {
    /// Automaton file (`.maut` line format or JSON)
    #[arg(short, long, conflicts_with = "gen")]
    pub file: Option<PathBuf>,

    /// Builtin family: adding, flip_all, flip_alternator, remark_chain, identity, uv_core
    #[arg(short, long)]
    pub gen: Option<String>,

    /// Number of chain states for remark_chain
    #[arg(long)]
    pub depth: Option<usize>,
}

impl Source {
    pub fn document(&self) -> Result<AutomatonDocument, CliError> {
        match (&self.file, &self.gen) {
            (Some(path), _) => read_file(path),
            (None, Some(name)) => builtin(name, self.depth),
            (None, None) => Err(CliError::usage("one of --file or --gen is required")),
        }
    }

    pub fn automaton(&self) -> Result<Automaton, CliError> {
        self.document().map(|d| d.automaton)
    }

    pub fn transformation(&self, state: Option<&str>) -> Result<Transformation, CliError> {
        let state = state.ok_or_else(|| CliError::usage("--state is required"))?;
        Transformation::new(self.automaton()?, state).map_err(CliError::parse)
    }
}

fn read_file(path: &Path) -> Result<AutomatonDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| CliError::parse(e).context(path.display().to_string()))
}

fn builtin(name: &str, depth: Option<usize>) -> Result<AutomatonDocument, CliError> {
    let automaton = generate_builtin(name, depth, None).map_err(CliError::parse)?;
    Ok(AutomatonDocument {
        name: Some(name.to_string()),
        description: None,
        automaton,
    })
}

/// Parses `SOURCE:STATE`, where `SOURCE` is a file path or
/// `gen:NAME[@DEPTH]`.
pub fn parse_spec(
    spec: &str,
    cache: &mut Vec<(String, Arc<Automaton>)>,
) -> Result<Transformation, CliError> {
    let (source, state) = spec
        .rsplit_once(':')
        .ok_or_else(|| CliError::usage(format!("`{spec}` is not of the form SOURCE:STATE")))?;
    let automaton = match cache.iter().find(|(s, _)| s == source) {
        Some((_, a)) => a.clone(),
        None => {
            let doc = match source.strip_prefix("gen:") {
                Some(rest) => {
                    let (name, depth) = match rest.split_once('@') {
                        Some((name, d)) => (
                            name,
                            Some(d.parse().map_err(|_| {
                                CliError::usage(format!("invalid depth in `{spec}`"))
                            })?),
                        ),
                        None => (rest, None),
                    };
                    builtin(name, depth)?
                }
                None => read_file(Path::new(source))?,
            };
            let a = Arc::new(doc.automaton);
            cache.push((source.to_string(), a.clone()));
            a
        }
    };
    Transformation::new(automaton, state).map_err(CliError::parse)
}

/// A list of transformations: either repeated `--h SOURCE:STATE` or a single
/// source with `--state`.
#[derive(Debug, Clone, Args)]
pub struct Transformations {
    #[command(flatten)]
    pub source: Source,

    /// Initial state
    #[arg(long)]
    pub state: Option<String>,

    /// Transformation as SOURCE:STATE, where SOURCE is a file or gen:NAME[@DEPTH]; repeatable
    #[arg(long = "h", value_name = "SPEC")]
    pub specs: Vec<String>,
}

impl Transformations {
    pub fn resolve(&self) -> Result<Vec<Transformation>, CliError> {
        if self.specs.is_empty() {
            return Ok(vec![self.source.transformation(self.state.as_deref())?]);
        }
        let mut cache = Vec::new();
        self.specs
            .iter()
            .map(|s| parse_spec(s, &mut cache))
            .collect()
    }
}
