//! The `tracelab` command line.
//!
//! Every subcommand reads JSON documents (see [`crate::json`]), calls one
//! library operation and prints a deterministic result. Exit status is 0 on
//! success, 1 when the library reports a domain error and 2 when the
//! arguments or input files cannot be parsed. Error messages start with the
//! library error's name.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::automata::{async_to_monoidal, monoidal_to_async, MonoidalAutomaton};
use crate::diagram::{to_generator_sequence, Diagram};
use crate::grammar::{membership, Grammar};
use crate::json::{
    self, AsyncAutomatonDoc, DiagramDoc, DistributionDoc, GrammarDoc, GraphDoc, IndependenceDoc,
    JsonError, MonoidalAutomatonDoc, StateWordDoc, TraceDoc,
};
use crate::premonoidal::{
    erase_runtime, names_to_premonoidal, runtime_graph, serialization_preimage, PremonoidalDiagram,
};
use crate::signature::{
    distribution_leq, distribution_to_independence, independence_to_distribution,
    DistributedAlphabet, GenId, MonoidalGraph,
};
use crate::trace::{quotient_names, Trace};

/// What a finished command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    /// Exit status 2.
    Parse(String),
    /// Exit status 1.
    Domain(String),
}

impl From<JsonError> for Failure {
    fn from(e: JsonError) -> Self {
        if e.is_parse_error() {
            Failure::Parse(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

macro_rules! domain_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Domain(e.to_string())
            }
        }
    )*};
}

domain_errors!(
    crate::signature::SignatureError,
    crate::diagram::DiagramError,
    crate::trace::TraceError,
    crate::automata::AutomatonError,
    crate::grammar::GrammarError,
    crate::premonoidal::PremonoidalError
);

type Result<T> = std::result::Result<T, Failure>;

#[derive(Debug, Parser)]
#[command(name = "tracelab", version, about = "String diagrams for Mazurkiewicz traces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Debug, Args)]
struct Global {
    /// Write the result to this file instead of standard output.
    #[arg(short = 'o', long, global = true)]
    output: Option<PathBuf>,
    /// Maximum number of words an enumeration may produce.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_results: usize,
    /// Maximum length of a word whose serializations or preimage are enumerated.
    #[arg(long, global = true, default_value_t = 12)]
    max_word_length: usize,
    /// Output format for diagrams.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Distributed alphabets.
    Alphabet {
        #[command(subcommand)]
        verb: AlphabetVerb,
    },
    /// Independence relation to distribution (maximal cliques of dependence).
    Ind2dist {
        #[arg(short = 'i', long)]
        input: PathBuf,
    },
    /// Distribution to independence relation (disjoint locations).
    Dist2ind {
        #[arg(short = 'i', long)]
        input: PathBuf,
    },
    /// Distributions.
    Dist {
        #[command(subcommand)]
        verb: DistVerb,
    },
    /// Traces over a distributed alphabet.
    Trace {
        #[command(subcommand)]
        verb: TraceVerb,
    },
    /// String diagrams.
    Diagram {
        #[command(subcommand)]
        verb: DiagramVerb,
    },
    /// Regular monoidal grammars.
    Grammar {
        #[command(subcommand)]
        verb: GrammarVerb,
    },
    /// Symmetric monoidal automata.
    Automaton {
        #[command(subcommand)]
        verb: AutomatonVerb,
    },
    /// Asynchronous automata.
    Async {
        #[command(subcommand)]
        verb: AsyncVerb,
    },
    /// Conversions from symmetric monoidal automata.
    Sma {
        #[command(subcommand)]
        verb: SmaVerb,
    },
    /// Runtime-threaded diagrams.
    Premonoidal {
        #[command(subcommand)]
        verb: PremonoidalVerb,
    },
}

#[derive(Debug, Subcommand)]
enum AlphabetVerb {
    /// Check that a monoidal graph is a distributed alphabet.
    Check {
        #[arg(short = 'a', long, visible_short_alias = 'i')]
        alphabet: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum DistVerb {
    /// Whether the first distribution is below the second.
    Leq {
        #[arg(short = 'i', long)]
        left: PathBuf,
        #[arg(short = 'j', long)]
        right: PathBuf,
    },
}

#[derive(Debug, Args)]
struct WordSource {
    #[arg(short = 'a', long)]
    alphabet: PathBuf,
    /// Space-separated action names.
    #[arg(short = 'w', long, conflicts_with = "input")]
    word: Option<String>,
    /// A trace document.
    #[arg(short = 'i', long)]
    input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum TraceVerb {
    /// Foata normal form.
    Nf(WordSource),
    /// Whether two words denote the same trace.
    Eq {
        #[arg(short = 'a', long)]
        alphabet: PathBuf,
        #[arg(long)]
        w1: String,
        #[arg(long)]
        w2: String,
    },
    /// Every word in the trace, one JSON array per line.
    Serialize(WordSource),
}

#[derive(Debug, Subcommand)]
enum DiagramVerb {
    /// Whether two diagrams are equal in the free prop.
    Eq {
        #[arg(short = 'a', long)]
        signature: PathBuf,
        #[arg(short = 'd', long = "diagram", num_args = 1, required = true)]
        diagrams: Vec<PathBuf>,
    },
    /// Cut a full-boundary diagram into one generator per slice.
    Slice {
        #[arg(short = 'a', long)]
        alphabet: PathBuf,
        #[arg(short = 'd', long, visible_short_alias = 'i')]
        diagram: PathBuf,
    },
    /// Render as Graphviz DOT (default) or normalized JSON.
    Render {
        #[arg(short = 'a', long)]
        signature: Option<PathBuf>,
        #[arg(short = 'd', long, visible_short_alias = 'i')]
        diagram: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum GrammarVerb {
    /// Validate a grammar.
    Check {
        #[arg(short = 'g', long, visible_short_alias = 'i')]
        grammar: PathBuf,
    },
    /// Whether a diagram over the grammar's alphabet is in its language.
    Member {
        #[arg(short = 'g', long, visible_short_alias = 'i')]
        grammar: PathBuf,
        #[arg(short = 'd', long)]
        diagram: PathBuf,
    },
}

#[derive(Debug, Args)]
struct AutomatonSource {
    /// The monoidal graph the automaton reads.
    #[arg(short = 'a', long)]
    alphabet: PathBuf,
    #[arg(short = 'm', long, visible_short_alias = 'i')]
    automaton: PathBuf,
}

#[derive(Debug, Subcommand)]
enum AutomatonVerb {
    /// Whether the automaton accepts a diagram.
    Accept {
        #[command(flatten)]
        source: AutomatonSource,
        #[arg(short = 'd', long)]
        diagram: PathBuf,
    },
    /// The state words reachable through a diagram.
    Eval {
        #[command(flatten)]
        source: AutomatonSource,
        #[arg(short = 'd', long)]
        diagram: PathBuf,
        /// Starting state word as JSON `[[sort, state], ...]`; the initial word by default.
        #[arg(short = 's', long)]
        state: Option<String>,
    },
    /// Whether every transition relation is a partial function.
    Deterministic {
        #[command(flatten)]
        source: AutomatonSource,
    },
}

#[derive(Debug, Subcommand)]
enum AsyncVerb {
    /// Whether an asynchronous automaton accepts a word.
    Accept {
        #[arg(short = 'i', long)]
        input: PathBuf,
        #[arg(short = 'w', long)]
        word: String,
    },
    /// Read as a symmetric monoidal automaton.
    ToSma {
        #[arg(short = 'i', long)]
        input: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum SmaVerb {
    /// Read as an asynchronous automaton.
    ToAsync {
        #[command(flatten)]
        source: AutomatonSource,
    },
}

#[derive(Debug, Subcommand)]
enum PremonoidalVerb {
    /// The runtime diagram of a word.
    Lift {
        #[arg(short = 'a', long)]
        alphabet: PathBuf,
        #[arg(short = 'w', long)]
        word: String,
    },
    /// Delete the runtime wire of a runtime diagram.
    Erase {
        #[arg(short = 'a', long)]
        alphabet: PathBuf,
        #[arg(short = 'd', long, visible_short_alias = 'i')]
        diagram: PathBuf,
    },
    /// Every word whose runtime diagram erases to the given diagram.
    Preimage {
        #[arg(short = 'a', long)]
        alphabet: PathBuf,
        #[arg(short = 'd', long, visible_short_alias = 'i')]
        diagram: PathBuf,
    },
}

/// `-w1`/`-w2` are accepted as spellings of `--w1`/`--w2`.
fn normalize_args<I: IntoIterator<Item = String>>(args: I) -> Vec<String> {
    args.into_iter()
        .map(|a| match a.as_str() {
            "-w1" => "--w1".to_string(),
            "-w2" => "--w2".to_string(),
            _ => a,
        })
        .collect()
}

/// Runs one command line (including the program name) and collects its output.
pub fn run<I: IntoIterator<Item = String>>(args: I) -> Outcome {
    let cli = match Cli::try_parse_from(normalize_args(args)) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let result = dispatch(&cli).and_then(|out| match &cli.global.output {
        Some(path) => fs::write(path, &out)
            .map(|_| String::new())
            .map_err(|e| Failure::Parse(format!("IoError: {}: {e}", path.display()))),
        None => Ok(out),
    });
    match result {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(Failure::Parse(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Domain(msg)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Failure::Parse(format!("IoError: {}: {e}", path.display())))
}

fn load<T: for<'de> serde::Deserialize<'de>>(path: &Path) -> Result<T> {
    Ok(json::parse(&read(path)?)?)
}

fn load_graph(path: &Path) -> Result<Arc<MonoidalGraph>> {
    Ok(Arc::new(load::<GraphDoc>(path)?.to_graph()?))
}

fn load_alphabet(path: &Path) -> Result<Arc<DistributedAlphabet>> {
    Ok(Arc::new(load::<GraphDoc>(path)?.to_alphabet()?))
}

fn load_diagram(path: &Path, signature: Arc<MonoidalGraph>) -> Result<Diagram> {
    Ok(load::<DiagramDoc>(path)?.to_diagram(signature)?)
}

fn word_line(words: &[String]) -> String {
    let mut s = serde_json::to_string(words).expect("strings serialize");
    s.push('\n');
    s
}

fn render(d: &Diagram, format: Option<Format>) -> String {
    match format {
        Some(Format::Dot) => d.to_dot(),
        _ => json::print(&DiagramDoc::from_diagram(d)),
    }
}

fn verdict(b: bool, yes: &str, no: &str) -> String {
    format!("{}\n", if b { yes } else { no })
}

fn source_trace(src: &WordSource) -> Result<Trace> {
    let alphabet = load_alphabet(&src.alphabet)?;
    match (&src.word, &src.input) {
        (Some(w), _) => Ok(quotient_names(&alphabet, &json::parse_word(w))?),
        (None, Some(path)) => Ok(load::<TraceDoc>(path)?.to_trace(&alphabet)?),
        (None, None) => Err(Failure::Parse("either -w or -i is required".into())),
    }
}

fn check_length(len: usize, max: usize) -> Result<()> {
    if len > max {
        return Err(Failure::Domain(format!(
            "WordTooLong: {len} actions exceed --max-word-length {max}"
        )));
    }
    Ok(())
}

fn load_automaton(src: &AutomatonSource) -> Result<MonoidalAutomaton> {
    let graph = load_graph(&src.alphabet)?;
    Ok(load::<MonoidalAutomatonDoc>(&src.automaton)?.to_automaton(graph)?)
}

fn names(graph: &MonoidalGraph, word: &[GenId]) -> Vec<String> {
    word.iter().map(|g| graph.gen(*g).name.clone()).collect()
}

fn dispatch(cli: &Cli) -> Result<String> {
    let g = &cli.global;
    match &cli.command {
        Command::Alphabet { verb: AlphabetVerb::Check { alphabet } } => {
            let a = load_alphabet(alphabet)?;
            Ok(format!(
                "valid distributed alphabet: {} locations, {} actions\n",
                a.locations(),
                a.graph().boxes().len()
            ))
        }
        Command::Ind2dist { input } => {
            let rel = load::<IndependenceDoc>(input)?.to_relation()?;
            Ok(json::print(&DistributionDoc::from_distribution(&independence_to_distribution(&rel))))
        }
        Command::Dist2ind { input } => {
            let dist = load::<DistributionDoc>(input)?.to_distribution()?;
            Ok(json::print(&IndependenceDoc::from_relation(&distribution_to_independence(&dist))))
        }
        Command::Dist { verb: DistVerb::Leq { left, right } } => {
            let l = load::<DistributionDoc>(left)?.to_distribution()?;
            let r = load::<DistributionDoc>(right)?.to_distribution()?;
            Ok(verdict(distribution_leq(&l, &r)?, "true", "false"))
        }
        Command::Trace { verb } => match verb {
            TraceVerb::Nf(src) => Ok(json::print(&TraceDoc::from_trace(&source_trace(src)?))),
            TraceVerb::Eq { alphabet, w1, w2 } => {
                let a = load_alphabet(alphabet)?;
                let t1 = quotient_names(&a, &json::parse_word(w1))?;
                let t2 = quotient_names(&a, &json::parse_word(w2))?;
                Ok(verdict(t1 == t2, "equal", "not equal"))
            }
            TraceVerb::Serialize(src) => {
                let t = source_trace(src)?;
                check_length(t.len(), g.max_word_length)?;
                let graph = t.alphabet().graph().clone();
                let words = t.serializations(g.max_results)?;
                Ok(words.iter().map(|w| word_line(&names(&graph, w))).collect())
            }
        },
        Command::Diagram { verb } => match verb {
            DiagramVerb::Eq { signature, diagrams } => {
                let [first, second] = diagrams.as_slice() else {
                    return Err(Failure::Parse("diagram eq takes exactly two -d files".into()));
                };
                let sig = load_graph(signature)?;
                let d1 = load_diagram(first, sig.clone())?;
                let d2 = load_diagram(second, sig)?;
                Ok(verdict(d1.equals(&d2)?, "equal", "not equal"))
            }
            DiagramVerb::Slice { alphabet, diagram } => {
                let a = load_alphabet(alphabet)?;
                let d = load_diagram(diagram, a.graph().clone())?;
                let word = to_generator_sequence(&a, &d)?;
                Ok(word_line(&names(a.graph(), &word)))
            }
            DiagramVerb::Render { signature, diagram } => {
                let doc = load::<DiagramDoc>(diagram)?;
                let sig = match signature {
                    Some(path) => load_graph(path)?,
                    None => Arc::new(doc.infer_signature()?),
                };
                let d = doc.to_diagram(sig)?;
                Ok(render(&d, Some(g.format.unwrap_or(Format::Dot))))
            }
        },
        Command::Grammar { verb } => match verb {
            GrammarVerb::Check { grammar } => {
                let gr: Grammar = load::<GrammarDoc>(grammar)?.to_grammar()?;
                Ok(format!(
                    "valid grammar: {} productions over {} generators\n",
                    gr.productions().boxes().len(),
                    gr.alphabet().boxes().len()
                ))
            }
            GrammarVerb::Member { grammar, diagram } => {
                let gr = load::<GrammarDoc>(grammar)?.to_grammar()?;
                let d = load_diagram(diagram, gr.alphabet().clone())?;
                Ok(verdict(membership(&gr, &d)?, "member", "not member"))
            }
        },
        Command::Automaton { verb } => match verb {
            AutomatonVerb::Accept { source, diagram } => {
                let a = load_automaton(source)?;
                let d = load_diagram(diagram, a.alphabet().clone())?;
                Ok(verdict(a.accepts(&d)?, "accepted", "rejected"))
            }
            AutomatonVerb::Eval { source, diagram, state } => {
                let a = load_automaton(source)?;
                let d = load_diagram(diagram, a.alphabet().clone())?;
                let start = match state {
                    Some(text) => a.state_word(&json::parse::<StateWordDoc>(text)?)?,
                    None => a.initial().clone(),
                };
                let graph = a.alphabet();
                let reached: Vec<StateWordDoc> = a
                    .eval_diagram(&d, &start)?
                    .iter()
                    .map(|w| {
                        w.0.iter()
                            .map(|(s, q)| (graph.sort_name(*s).to_string(), a.state_name(*s, *q).to_string()))
                            .collect()
                    })
                    .collect::<std::collections::BTreeSet<_>>()
                    .into_iter()
                    .collect();
                Ok(json::print(&reached))
            }
            AutomatonVerb::Deterministic { source } => {
                let a = load_automaton(source)?;
                Ok(verdict(a.is_deterministic(), "deterministic", "nondeterministic"))
            }
        },
        Command::Async { verb } => match verb {
            AsyncVerb::Accept { input, word } => {
                let a = load::<AsyncAutomatonDoc>(input)?.to_automaton()?;
                Ok(verdict(a.accepts_names(&json::parse_word(word))?, "accepted", "rejected"))
            }
            AsyncVerb::ToSma { input } => {
                let a = load::<AsyncAutomatonDoc>(input)?.to_automaton()?;
                Ok(json::print(&MonoidalAutomatonDoc::from_automaton(&async_to_monoidal(&a))))
            }
        },
        Command::Sma { verb: SmaVerb::ToAsync { source } } => {
            let a = monoidal_to_async(&load_automaton(source)?)?;
            Ok(json::print(&AsyncAutomatonDoc::from_automaton(&a)))
        }
        Command::Premonoidal { verb } => match verb {
            PremonoidalVerb::Lift { alphabet, word } => {
                let a = load_alphabet(alphabet)?;
                let pd = names_to_premonoidal(&a, &json::parse_word(word))?;
                Ok(render(pd.diagram(), g.format))
            }
            PremonoidalVerb::Erase { alphabet, diagram } => {
                let a = load_alphabet(alphabet)?;
                let rt = runtime_graph(a.graph().clone())?;
                let d = load_diagram(diagram, rt.graph().clone())?;
                let pd = PremonoidalDiagram::new(rt, d)?;
                Ok(render(&erase_runtime(&pd), g.format))
            }
            PremonoidalVerb::Preimage { alphabet, diagram } => {
                let a = load_alphabet(alphabet)?;
                let d = load_diagram(diagram, a.graph().clone())?;
                check_length(d.node_count(), g.max_word_length)?;
                let words = serialization_preimage(&a, &d, g.max_results)?;
                Ok(words.iter().map(|w| word_line(&names(a.graph(), w))).collect())
            }
        },
    }
}
