mod error;
mod source;

use std::io::{self, BufRead, Write};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use selfsim::counting::{
    self, classify_growth, decide_g0, decide_g1, find_ucs, CountKind, GrowthClass, Membership,
};
use selfsim::io::{render_dot, render_dsl, render_json, AutomatonDocument};
use selfsim::paradox::{self, ParadoxReport};
use selfsim::periodic::{self, primitive_words};
use selfsim::{Alphabet, EpWord, Transformation, Word};
use serde_json::{json, Value};

use error::CliError;
use source::{Source, Transformations};

#[derive(Debug, Parser)]
#[command(
    name = "selfsim",
    version,
    about = "Invertible automata acting on words"
)]
struct Cli {
    /// Emit machine-readable JSON
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct Target {
    #[command(flatten)]
    source: Source,

    /// Initial state
    #[arg(long)]
    state: Option<String>,
}

impl Target {
    fn transformation(&self) -> Result<Transformation, CliError> {
        self.source.transformation(self.state.as_deref())
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check an automaton and summarize it
    Validate(Source),
    /// Apply a transformation to words (arguments or stdin, one per line)
    Apply {
        #[command(flatten)]
        target: Target,
        /// Read words as eventually periodic `u(v)`
        #[arg(long)]
        periodic: bool,
        words: Vec<String>,
    },
    /// Print the inverse automaton
    Invert(Source),
    /// Print the composition: the first automaton's output feeds the second
    Compose {
        #[command(flatten)]
        first: Source,
        #[arg(long)]
        second_file: Option<std::path::PathBuf>,
        #[arg(long)]
        second_gen: Option<String>,
        #[arg(long)]
        second_depth: Option<usize>,
        /// Keep only pairs reachable from (--state, --second-state)
        #[arg(long, requires = "second_state")]
        state: Option<String>,
        #[arg(long, requires = "state")]
        second_state: Option<String>,
    },
    /// Print the minimized automaton and the state-to-class map
    Minimize(Source),
    /// List unconditional cycles
    Ucs(Source),
    /// NS(g,l) for l = 1..=max-level
    Ns {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        max_level: usize,
    },
    /// NC(g,l) for l = 1..=max-level
    Nc {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        max_level: usize,
    },
    /// Growth class of NS(g,l)
    Classify(Target),
    /// Decide whether NS(g,l) = o(|X|^l)
    MemberG0(Target),
    /// Decide whether NC(g,l) = o(|X|^l)
    MemberG1(Target),
    /// Check the period bound for the image of an almost periodic word
    Lemma1 {
        #[command(flatten)]
        target: Target,
        /// Level l at which the word is presented
        #[arg(long)]
        level: usize,
        /// Word as `u(v)`
        word: String,
    },
    /// Check that the class of almost periodic words is preserved outside the NC-set
    Lemma2 {
        #[command(flatten)]
        target: Target,
        /// Level l at which samples are presented
        #[arg(long)]
        level: usize,
        /// Upper bound c on the cycle lengths reachable within l steps
        #[arg(long)]
        cycle_bound: usize,
        /// Period lengths must divide this bound
        #[arg(long)]
        divisor: usize,
        /// Sample words as `u(v)`; defaults to every prefix with every admissible period
        samples: Vec<String>,
    },
    /// Number of primitive periods with length dividing m
    Periods {
        /// Alphabet size
        #[arg(short)]
        k: usize,
        /// Period lengths must divide m
        #[arg(short)]
        m: usize,
    },
    /// Block-counting certificate with NS counts
    T1Report {
        #[command(flatten)]
        hs: Transformations,
        #[arg(long)]
        level: usize,
        #[arg(short = 's', long = "block", default_value_t = paradox::DEFAULT_BLOCK_FACTOR)]
        block: u64,
    },
    /// Period-class certificate with NC counts
    T2Report {
        #[command(flatten)]
        hs: Transformations,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        divisor: usize,
    },
    /// Smallest level at which the NS certificate holds
    MinLevel {
        #[command(flatten)]
        hs: Transformations,
        #[arg(short = 's', long = "block", default_value_t = paradox::DEFAULT_BLOCK_FACTOR)]
        block: u64,
        #[arg(long)]
        l_max: usize,
    },
    /// Move coins along a partition of X^level and report words short of two
    Audit {
        #[command(flatten)]
        hs: Transformations,
        #[arg(long)]
        level: usize,
        /// Comma-separated words of one piece, in transformation order; repeatable
        #[arg(long = "piece", value_name = "WORDS", allow_hyphen_values = true)]
        pieces: Vec<String>,
    },
    /// Moore diagram in Graphviz DOT
    ExportDot(Source),
    /// Print a builtin automaton
    Gen {
        name: String,
        #[arg(long)]
        depth: Option<usize>,
    },
}

fn main() {
    let cli = Cli::parse();
    let mut stdout = io::stdout().lock();
    let code = match run(&cli, &mut stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = stdout.flush();
            eprintln!("{e}");
            e.code
        }
    };
    std::process::exit(code);
}

fn emit(out: &mut impl Write, text: impl AsRef<str>) -> Result<(), CliError> {
    let text = text.as_ref();
    let res = if text.ends_with('\n') {
        out.write_all(text.as_bytes())
    } else {
        writeln!(out, "{text}")
    };
    res.map_err(|e| CliError::usage(format!("write failed: {e}")))
}

fn emit_json(out: &mut impl Write, value: Value) -> Result<(), CliError> {
    emit(
        out,
        serde_json::to_string_pretty(&value).expect("serializable"),
    )
}

fn render_doc(doc: &AutomatonDocument, as_json: bool) -> String {
    if as_json {
        render_json(doc)
    } else {
        render_dsl(doc)
    }
}

fn word_list(args: &[String]) -> Result<Vec<String>, CliError> {
    if !args.is_empty() {
        return Ok(args.to_vec());
    }
    io::stdin()
        .lock()
        .lines()
        .map(|l| l.map_err(|e| CliError::usage(format!("cannot read stdin: {e}"))))
        .filter(|l| !matches!(l, Ok(s) if s.trim().is_empty()))
        .collect()
}

fn display_word(alphabet: &Alphabet, w: &Word) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        alphabet.format_word(w)
    }
}

fn parse_word(alphabet: &Alphabet, text: &str) -> Result<Word, CliError> {
    alphabet.parse_word(text).map_err(CliError::parse)
}

fn parse_ep(alphabet: &Alphabet, text: &str) -> Result<EpWord, CliError> {
    EpWord::parse(alphabet, text).map_err(CliError::parse)
}

fn big(n: &BigUint) -> Value {
    Value::String(n.to_string())
}

fn membership_json(g: &Transformation, m: &Membership) -> Value {
    json!({
        "transformation": g.name(),
        "member": m.member,
        "witness": m.witness.as_ref().map(|w| g.alphabet().format_word(w)),
    })
}

fn report_json(r: &ParadoxReport) -> Value {
    json!({
        "kind": r.kind.to_string(),
        "transformations": r.transformations,
        "level": r.level,
        "block_factor": r.block_factor,
        "per_item": r.per_item.iter().map(big).collect::<Vec<_>>(),
        "aggregate": big(&r.aggregate),
        "threshold": r.threshold.to_string(),
        "satisfied": r.satisfied,
        "period_classes": r.period_classes.as_ref().map(|(m, t)| json!({"divisor": m, "count": big(t)})),
        "conclusion": r.conclusion(),
    })
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<(), CliError> {
    let as_json = cli.json;
    match &cli.command {
        Command::Validate(source) => {
            let a = source.automaton()?;
            if as_json {
                emit_json(
                    out,
                    json!({"valid": true, "alphabet": a.alphabet().symbols(), "states": a.state_names()}),
                )
            } else {
                emit(
                    out,
                    format!(
                        "ok: {} states over {} letters",
                        a.num_states(),
                        a.alphabet().size()
                    ),
                )
            }
        }

        Command::Apply {
            target,
            periodic,
            words,
        } => {
            let g = target.transformation()?;
            let alphabet = g.alphabet().clone();
            let mut results = Vec::new();
            for text in word_list(words)? {
                let (input, output) = if *periodic {
                    let w = parse_ep(&alphabet, &text)?;
                    let image = periodic::apply_to_ep_word(&g, &w)?;
                    (w.format(&alphabet), image.format(&alphabet))
                } else {
                    let w = parse_word(&alphabet, &text)?;
                    let image = g.apply(&w)?;
                    (alphabet.format_word(&w), alphabet.format_word(&image))
                };
                if as_json {
                    results.push(json!({"input": input, "output": output}));
                } else {
                    emit(out, output)?;
                }
            }
            if as_json {
                emit_json(out, Value::Array(results))?;
            }
            Ok(())
        }

        Command::Invert(source) => {
            let doc = source.document()?;
            let inv = AutomatonDocument {
                name: doc.name.map(|n| format!("{n}^-1")),
                description: None,
                automaton: selfsim::invert(&doc.automaton),
            };
            emit(out, render_doc(&inv, as_json))
        }

        Command::Compose {
            first,
            second_file,
            second_gen,
            second_depth,
            state,
            second_state,
        } => {
            let a = first.automaton()?;
            let second = Source {
                file: second_file.clone(),
                gen: second_gen.clone(),
                depth: *second_depth,
            };
            let b = second.automaton()?;
            let product = match (state, second_state) {
                (Some(q), Some(s)) => {
                    let g = Transformation::new(a, q).map_err(CliError::parse)?;
                    let h = Transformation::new(b, s).map_err(CliError::parse)?;
                    g.then(&h)?.automaton().clone()
                }
                _ => selfsim::compose(&a, &b)?,
            };
            emit(out, render_doc(&AutomatonDocument::new(product), as_json))
        }

        Command::Minimize(source) => {
            let a = source.automaton()?;
            let min = selfsim::minimize(&a);
            if as_json {
                let classes: serde_json::Map<String, Value> = a
                    .states()
                    .map(|q| {
                        let c = min.class_of[q];
                        (
                            a.state_name(q).to_string(),
                            json!(min.automaton.state_name(c)),
                        )
                    })
                    .collect();
                let mut doc = selfsim::io::to_json_value(&AutomatonDocument::new(min.automaton));
                doc["classes"] = Value::Object(classes);
                emit_json(out, doc)
            } else {
                emit(
                    out,
                    render_dsl(&AutomatonDocument::new(min.automaton.clone())),
                )?;
                for q in a.states() {
                    emit(
                        out,
                        format!(
                            "# {} -> {}",
                            a.state_name(q),
                            min.automaton.state_name(min.class_of[q])
                        ),
                    )?;
                }
                Ok(())
            }
        }

        Command::Ucs(source) => {
            let a = source.automaton()?;
            let cycles: Vec<Vec<&str>> = find_ucs(&a)
                .iter()
                .map(|c| c.states().iter().map(|&q| a.state_name(q)).collect())
                .collect();
            if as_json {
                emit_json(out, json!(cycles))
            } else {
                for c in cycles {
                    emit(out, format!("{} (length {})", c.join(" -> "), c.len()))?;
                }
                Ok(())
            }
        }

        Command::Ns { target, max_level } | Command::Nc { target, max_level } => {
            let kind = if matches!(cli.command, Command::Ns { .. }) {
                CountKind::Ns
            } else {
                CountKind::Nc
            };
            let g = target.transformation()?;
            let table = counting::count(&g, kind, *max_level)?;
            if as_json {
                emit_json(
                    out,
                    json!({
                        "transformation": table.transformation,
                        "kind": kind.to_string(),
                        "counts": table.counts.iter().map(big).collect::<Vec<_>>(),
                    }),
                )
            } else {
                for (l, c) in table.counts.iter().enumerate().skip(1) {
                    emit(out, format!("{l}\t{c}"))?;
                }
                Ok(())
            }
        }

        Command::Classify(target) => {
            let g = target.transformation()?;
            let r = classify_growth(&g)?;
            if as_json {
                emit_json(
                    out,
                    json!({"class": r.label(), "degree": r.degree(), "rate": r.rate()}),
                )
            } else {
                emit(
                    out,
                    match r.class {
                        GrowthClass::Bounded => "bounded".to_string(),
                        GrowthClass::Polynomial(d) => format!("polynomial degree {d}"),
                        GrowthClass::Exponential(rate) => format!("exponential rate {rate:.9}"),
                    },
                )
            }
        }

        Command::MemberG0(target) | Command::MemberG1(target) => {
            let g = target.transformation()?;
            let m = if matches!(cli.command, Command::MemberG0(_)) {
                decide_g0(&g)?
            } else {
                decide_g1(&g)?
            };
            if as_json {
                emit_json(out, membership_json(&g, &m))
            } else {
                match &m.witness {
                    None => emit(out, "member"),
                    Some(w) => emit(
                        out,
                        format!("not a member; witness `{}`", display_word(g.alphabet(), w)),
                    ),
                }
            }
        }

        Command::Lemma1 {
            target,
            level,
            word,
        } => {
            let g = target.transformation()?;
            let w = parse_ep(g.alphabet(), word)?;
            let v = match periodic::check_lemma1(&g, &w, *level) {
                Ok(v) => v,
                Err(selfsim::Error::NotApplicable { level }) => {
                    // a verdict, not a failure
                    return if as_json {
                        emit_json(out, json!({ "applicable": false, "level": level }))
                    } else {
                        emit(
                            out,
                            format!("not applicable: no cycle reached within {level} letters"),
                        )
                    };
                }
                Err(e) => return Err(e.into()),
            };
            if as_json {
                emit_json(
                    out,
                    json!({
                        "applicable": true,
                        "holds": v.holds,
                        "input_period": v.input_period,
                        "cycle": v.cycle,
                        "output_period": v.output_period,
                        "image": v.image.format(g.alphabet()),
                    }),
                )
            } else {
                emit(
                    out,
                    format!(
                        "image {}; t = {}, c = {}, observed period {}; holds: {}",
                        v.image.format(g.alphabet()),
                        v.input_period,
                        v.cycle,
                        v.output_period
                            .map_or("none".to_string(), |p| p.to_string()),
                        v.holds
                    ),
                )
            }
        }

        Command::Lemma2 {
            target,
            level,
            cycle_bound,
            divisor,
            samples,
        } => {
            let g = target.transformation()?;
            let alphabet = g.alphabet();
            let sample: Vec<EpWord> = if samples.is_empty() {
                let periods = primitive_words(alphabet, *divisor);
                alphabet
                    .words(*level)
                    .flat_map(|v| {
                        periods.iter().map(move |p| {
                            EpWord::new(v.clone(), p.clone()).expect("non-empty period")
                        })
                    })
                    .collect()
            } else {
                samples
                    .iter()
                    .map(|s| parse_ep(alphabet, s))
                    .collect::<Result<_, _>>()?
            };
            let v = periodic::check_lemma2(&g, *level, *cycle_bound, *divisor, &sample)?;
            if as_json {
                emit_json(
                    out,
                    json!({
                        "checked": v.checked,
                        "skipped": v.skipped,
                        "failed": v.failed(),
                        "failures": v.failures.iter().map(|w| w.format(alphabet)).collect::<Vec<_>>(),
                    }),
                )
            } else {
                emit(
                    out,
                    format!(
                        "checked {}, skipped {}, failed {}",
                        v.checked,
                        v.skipped,
                        v.failed()
                    ),
                )
            }
        }

        Command::Periods { k, m } => {
            if *k < 2 || *m < 1 {
                return Err(CliError::usage("need k >= 2 and m >= 1"));
            }
            let n = periodic::count_periods(*k, *m);
            if as_json {
                emit_json(out, json!({"k": k, "m": m, "count": big(&n)}))
            } else {
                emit(out, n.to_string())
            }
        }

        Command::T1Report { hs, level, block } => {
            let r = paradox::theorem1_report(&hs.resolve()?, *level, *block)?;
            if as_json {
                emit_json(out, report_json(&r))
            } else {
                emit(out, r.to_string())
            }
        }

        Command::T2Report { hs, level, divisor } => {
            let r = paradox::theorem2_report(&hs.resolve()?, *level, *divisor)?;
            if as_json {
                emit_json(out, report_json(&r))
            } else {
                emit(out, r.to_string())
            }
        }

        Command::MinLevel { hs, block, l_max } => {
            let level = paradox::find_minimal_level(&hs.resolve()?, *block, *l_max)?;
            if as_json {
                emit_json(out, json!({"level": level}))
            } else {
                emit(out, level.map_or("none".to_string(), |l| l.to_string()))
            }
        }

        Command::Audit { hs, level, pieces } => {
            let hs = hs.resolve()?;
            let alphabet = hs[0].alphabet().clone();
            let pieces = pieces
                .iter()
                .map(|p| {
                    p.split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(|s| parse_word(&alphabet, s))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let audit = paradox::coin_audit(&hs, *level, &pieces)?;
            let fmt = |w: &Word| alphabet.format_word(w);
            if as_json {
                let coins: serde_json::Map<String, Value> = alphabet
                    .words(*level)
                    .zip(&audit.coin_counts)
                    .map(|(w, c)| (fmt(&w), json!(c)))
                    .collect();
                emit_json(
                    out,
                    json!({
                        "level": level,
                        "coins": coins,
                        "total": audit.total_coins(),
                        "deficit": audit.deficit.iter().map(fmt).collect::<Vec<_>>(),
                        "doubling": audit.doubling(),
                    }),
                )
            } else {
                for (w, c) in alphabet.words(*level).zip(&audit.coin_counts) {
                    emit(out, format!("{}\t{c}", fmt(&w)))?;
                }
                emit(
                    out,
                    format!(
                        "total {}; {} words below two coins; doubling: {}",
                        audit.total_coins(),
                        audit.deficit.len(),
                        audit.doubling()
                    ),
                )
            }
        }

        Command::ExportDot(source) => emit(out, render_dot(&source.automaton()?)),

        Command::Gen { name, depth } => {
            let a =
                selfsim::builtin::generate_builtin(name, *depth, None).map_err(CliError::parse)?;
            let doc = AutomatonDocument {
                name: Some(name.clone()),
                description: None,
                automaton: a,
            };
            emit(out, render_doc(&doc, as_json))
        }
    }
}
