use std::io::{self, IsTerminal, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gfgcanon::canon::{canonical_form, Flavor};
use gfgcanon::hoa::{parse_hoa, write_hoa};
use gfgcanon::iso::{isomorphic, safe_isomorphic, IsoWitness, Refusal};
use gfgcanon::minimize::minimize_traced;
use gfgcanon::oracle::{
    dbp_check, gfg_verify, lasso_equiv_bounded, min_tdcw_search_with, DEFAULT_DBP_BOUND,
    DEFAULT_SEARCH_BOUND,
};
use gfgcanon::semantics::{compute_relations, language_counterexample};
use gfgcanon::structure::safe_components;
use gfgcanon::{dot, fixtures, random, Automaton, Error, Exec};

#[derive(Parser)]
#[command(name = "gfgcanon", version, about = "Minimize and canonize transition-based co-Buchi automata")]
struct Cli {
    /// Print structured reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

/// An input is a file path, a fixture name, or `-` for stdin.
#[derive(clap::Args)]
struct Input {
    #[arg(default_value = "-")]
    input: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Max,
    Homogeneous,
}

#[derive(Subcommand)]
enum Command {
    /// Check the automaton invariants.
    Validate(Input),
    /// Print the safe components, one JSON object per line.
    SafeComponents(Input),
    /// Print the ∼, safe-containment, ≈ and ≾ tables.
    Relations(Input),
    /// Decide language equivalence (exit 1 if different).
    Equiv { a: String, b: String },
    /// Minimize a tDCW or nice GFG-tNCW.
    Minimize {
        #[command(flatten)]
        input: Input,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the H relation, frontier and class map as JSON to stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Minimize, then saturate with α-transitions.
    Canonize {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "max")]
        mode: Mode,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide isomorphism (exit 1 with the refusal reason if none).
    Iso {
        a: String,
        b: String,
        /// Only require ᾱ-transitions to be respected.
        #[arg(long)]
        safe_only: bool,
    },
    /// Decide whether the automaton is good for games.
    VerifyGfg(Input),
    /// Find a deterministic pruning with the same language.
    Dbp {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_DBP_BOUND as u64)]
        bound: u64,
    },
    /// Compare two automata on all lassos up to the given lengths.
    LassoEquiv {
        a: String,
        b: String,
        #[arg(long, default_value_t = 4)]
        max_u: usize,
        #[arg(long, default_value_t = 4)]
        max_v: usize,
    },
    /// Exhaustively search for the smallest equivalent tDCW.
    SearchMinTdcw {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        max_states: usize,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND as u64)]
        bound: u64,
        /// Run on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Render as Graphviz DOT.
    Dot(Input),
    /// Emit a random total tDCW.
    Random {
        #[arg(long, default_value_t = 3)]
        states: usize,
        #[arg(long, default_value_t = 2)]
        letters: usize,
        #[arg(long, default_value_t = 0.35)]
        density: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Emit a built-in example automaton, or list their names.
    Fixtures { name: Option<String> },
}

enum Failure {
    /// The question was answered negatively.
    Negative(String),
    /// Bad input, usage or bound.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read_input(source: &str) -> Result<Automaton, Failure> {
    let text = if source == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else if Path::new(source).exists() {
        std::fs::read_to_string(source)?
    } else if fixtures::NAMES.contains(&source) {
        return Ok(fixtures::fixture(source)?);
    } else {
        return Err(Failure::Usage(format!("{source}: no such file or fixture")));
    };
    parse_hoa(&text).map_err(|e| Failure::Usage(format!("{source}: {e}")))
}

fn emit(text: &str, output: Option<&Path>) -> Outcome {
    match output {
        Some(p) => std::fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

fn matrix(n: usize, f: impl Fn(usize, usize) -> bool) -> Vec<Vec<bool>> {
    (0..n).map(|q| (0..n).map(|s| f(q, s)).collect()).collect()
}

fn print_matrix(title: &str, m: &[Vec<bool>]) {
    println!("{title}");
    for row in m {
        let cells: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "." }).collect();
        println!("  {}", cells.join(" "));
    }
}

#[derive(Serialize)]
struct IsoReport<'a> {
    isomorphic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a IsoWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    refusal: Option<&'a Refusal>,
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Validate(i) => {
            let a = read_input(&i.input).map_err(|f| match f {
                Failure::Usage(m) => Failure::Negative(m),
                other => other,
            })?;
            let v = a.validate();
            if json {
                let msgs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                print_json(&serde_json::json!({ "valid": v.is_empty(), "violations": msgs }));
            } else if v.is_empty() {
                println!("valid: {} states, {} letters", a.num_states(), a.num_letters());
            }
            if !v.is_empty() {
                let msgs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                return Err(Failure::Negative(msgs.join("\n")));
            }
        }
        Command::SafeComponents(i) => {
            let a = read_input(&i.input)?;
            for (idx, c) in safe_components(&a).components.iter().enumerate() {
                print_json(&serde_json::json!({ "component": idx, "states": c }));
            }
        }
        Command::Relations(i) => {
            let a = read_input(&i.input)?;
            let rel = compute_relations(&a);
            let n = a.num_states();
            let tables = [
                ("equiv", matrix(n, |q, s| rel.equiv(q, s))),
                ("safe_contained", matrix(n, |q, s| rel.safe_contained(q, s))),
                ("strongly_equiv", matrix(n, |q, s| rel.strongly_equiv(q, s))),
                ("subsafe", matrix(n, |q, s| rel.subsafe(q, s))),
            ];
            if json {
                let obj: serde_json::Map<String, serde_json::Value> = tables
                    .iter()
                    .map(|(k, m)| (k.to_string(), serde_json::json!(m)))
                    .collect();
                print_json(&obj);
            } else {
                for (k, m) in &tables {
                    print_matrix(k, m);
                }
            }
        }
        Command::Equiv { a, b } => {
            let (x, y) = (read_input(&a)?, read_input(&b)?);
            let cex = language_counterexample(&x, &y)?;
            let shown = cex.as_ref().map(|w| w.display(x.alphabet()).to_string());
            if json {
                print_json(&serde_json::json!({ "equivalent": cex.is_none(), "counterexample": shown }));
            } else if let Some(w) = &shown {
                println!("different: {w}");
            } else {
                println!("equivalent");
            }
            if let Some(w) = shown {
                return Err(Failure::Negative(format!("languages differ on {w}")));
            }
        }
        Command::Minimize { input, output, trace } => {
            let a = read_input(&input.input)?;
            let (m, t) = minimize_traced(&a)?;
            if trace {
                eprintln!("{}", serde_json::to_string(&t).expect("serializable"));
            }
            emit(&write_hoa(&m)?, output.as_deref())?;
        }
        Command::Canonize { input, mode, output } => {
            let a = read_input(&input.input)?;
            let flavor = match mode {
                Mode::Max => Flavor::Max,
                Mode::Homogeneous => Flavor::Homogeneous,
            };
            let c = canonical_form(&a, flavor)?;
            emit(&write_hoa(&c)?, output.as_deref())?;
        }
        Command::Iso { a, b, safe_only } => {
            let (x, y) = (read_input(&a)?, read_input(&b)?);
            let res = if safe_only {
                safe_isomorphic(&x, &y)?
            } else {
                isomorphic(&x, &y)?
            };
            let report = IsoReport {
                isomorphic: res.is_ok(),
                witness: res.as_ref().ok(),
                refusal: res.as_ref().err(),
            };
            print_json(&report);
            if let Err(r) = res {
                return Err(Failure::Negative(r.to_string()));
            }
        }
        Command::VerifyGfg(i) => {
            let a = read_input(&i.input)?;
            let s = gfg_verify(&a)?;
            if json {
                let moves: Vec<_> = s.iter().flat_map(|s| s.moves()).collect();
                print_json(&serde_json::json!({ "gfg": s.is_some(), "moves": moves }));
            } else if let Some(s) = &s {
                println!("GFG: winning strategy with {} moves", s.len());
            }
            if s.is_none() {
                return Err(Failure::Negative("not good for games".into()));
            }
        }
        Command::Dbp { input, bound } => {
            let a = read_input(&input.input)?;
            match dbp_check(&a, bound as u128)? {
                Some(d) => emit(&write_hoa(&d)?, None)?,
                None => return Err(Failure::Negative("no deterministic pruning".into())),
            }
        }
        Command::LassoEquiv { a, b, max_u, max_v } => {
            let (x, y) = (read_input(&a)?, read_input(&b)?);
            let cex = lasso_equiv_bounded(&x, &y, max_u, max_v)?;
            let shown = cex.as_ref().map(|w| w.display(x.alphabet()).to_string());
            if json {
                print_json(&serde_json::json!({ "agree": cex.is_none(), "counterexample": shown }));
            } else if cex.is_none() {
                println!("pass");
            } else if let Some(w) = &shown {
                println!("counterexample: {w}");
            }
            if let Some(w) = shown {
                return Err(Failure::Negative(format!("automata disagree on {w}")));
            }
        }
        Command::SearchMinTdcw {
            input,
            max_states,
            bound,
            sequential,
        } => {
            let a = read_input(&input.input)?;
            let exec = if sequential { Exec::Sequential } else { Exec::Parallel };
            match min_tdcw_search_with(&a, max_states, bound as u128, exec)? {
                Some(d) => emit(&write_hoa(&d)?, None)?,
                None => {
                    return Err(Failure::Negative(format!(
                        "no equivalent tDCW with at most {max_states} states"
                    )))
                }
            }
        }
        Command::Dot(i) => {
            let a = read_input(&i.input)?;
            emit(&dot::to_dot(&a)?, None)?;
        }
        Command::Random {
            states,
            letters,
            density,
            seed,
        } => {
            let a = random::random_tdcw(states, letters, density, seed)?;
            emit(&write_hoa(&a)?, None)?;
        }
        Command::Fixtures { name } => match name {
            Some(n) => emit(&write_hoa(&fixtures::fixture(&n)?)?, None)?,
            None => {
                for n in fixtures::NAMES {
                    println!("{n}");
                }
            }
        },
    }
    Ok(())
}

fn colored() -> bool {
    match std::env::var("GFGCANON_COLOR").as_deref() {
        Ok("always") | Ok("1") => true,
        Ok("never") | Ok("0") => false,
        _ => io::stderr().is_terminal(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (code, msg) = match run(cli) {
        Ok(()) => return ExitCode::SUCCESS,
        Err(Failure::Negative(m)) => (1, m),
        Err(Failure::Usage(m)) => (2, m),
    };
    let tag = if code == 1 { "no" } else { "error" };
    if colored() {
        eprintln!("\x1b[1;31m{tag}:\x1b[0m {msg}");
    } else {
        eprintln!("{tag}: {msg}");
    }
    ExitCode::from(code)
}
