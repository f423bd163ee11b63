//! Regular monoidal grammars.
//!
//! A grammar is a morphism of monoidal graphs `φ: M → Γ` together with an
//! initial and a final word over the sorts of `M`. Boxes of `M` are
//! production rules labelled by their image in `Γ`. The language of the
//! grammar is the image under `φ` of all diagrams over `M` from the initial
//! to the final word.
//!
//! Membership is decided by reading the grammar as a nondeterministic
//! monoidal automaton: sorts of `M` become states of the sort they map to.

use std::sync::Arc;

use thiserror::Error;

use crate::automata::{AutomatonError, MonoidalAutomaton, StateWord};
use crate::diagram::{Diagram, DiagramError, Node};
use crate::signature::{GenId, GraphMorphism, MonoidalGraph, SortId};

/// Name of the padding state given to sorts of `Γ` with no preimage.
pub const DEAD_STATE: &str = "⊥";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("UnknownSort: `{0}` is not a sort of the grammar's source graph")]
    UnknownSort(String),
    #[error("SignatureMismatch: diagram is not over the grammar's alphabet")]
    SignatureMismatch,
    #[error("UnsupportedBoundaryLanguage: {0}")]
    UnsupportedBoundaryLanguage(String),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

pub type Result<T, E = GrammarError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    morphism: GraphMorphism,
    initial: Vec<SortId>,
    final_word: Vec<SortId>,
}

impl Grammar {
    pub fn new(morphism: GraphMorphism, initial: Vec<SortId>, final_word: Vec<SortId>) -> Result<Self> {
        for s in initial.iter().chain(&final_word) {
            if !morphism.source().has_sort(*s) {
                return Err(GrammarError::UnknownSort(s.to_string()));
            }
        }
        Ok(Grammar {
            morphism,
            initial,
            final_word,
        })
    }

    /// Builds a grammar with initial and final words given by sort names of `M`.
    pub fn from_names<S: AsRef<str>>(morphism: GraphMorphism, initial: &[S], final_word: &[S]) -> Result<Self> {
        let word = |names: &[S]| {
            names
                .iter()
                .map(|n| {
                    morphism
                        .source()
                        .sort(n.as_ref())
                        .map_err(|_| GrammarError::UnknownSort(n.as_ref().to_string()))
                })
                .collect::<Result<Vec<_>>>()
        };
        let (i, f) = (word(initial)?, word(final_word)?);
        Grammar::new(morphism, i, f)
    }

    pub fn morphism(&self) -> &GraphMorphism {
        &self.morphism
    }

    /// The graph of production rules.
    pub fn productions(&self) -> &Arc<MonoidalGraph> {
        self.morphism.source()
    }

    pub fn alphabet(&self) -> &Arc<MonoidalGraph> {
        self.morphism.target()
    }

    pub fn initial(&self) -> &[SortId] {
        &self.initial
    }

    pub fn final_word(&self) -> &[SortId] {
        &self.final_word
    }

    /// The transition-graph reading of the grammar.
    pub fn to_automaton(&self) -> MonoidalAutomaton {
        grammar_to_automaton(self)
    }

    /// Whether `d` belongs to the grammar's language. Diagrams whose
    /// boundary does not match the image of the initial and final words are
    /// simply not members.
    pub fn accepts(&self, d: &Diagram) -> Result<bool> {
        membership(self, d)
    }
}

pub fn grammar_to_automaton(g: &Grammar) -> MonoidalAutomaton {
    let (m, gamma) = (g.productions(), g.alphabet());
    // State index of each sort of M within the state set of its image.
    let mut states: Vec<Vec<String>> = vec![Vec::new(); gamma.sorts().len()];
    let mut index = vec![0; m.sorts().len()];
    for x in m.sort_ids() {
        let c = g.morphism.sort_image(x);
        index[x.0] = states[c.0].len();
        states[c.0].push(m.sort_name(x).to_string());
    }
    for set in &mut states {
        if set.is_empty() {
            set.push(DEAD_STATE.to_string());
        }
    }
    let read = |word: &[SortId]| {
        StateWord(
            word.iter()
                .map(|x| (g.morphism.sort_image(*x), index[x.0]))
                .collect(),
        )
    };
    let mut automaton =
        MonoidalAutomaton::new(gamma.clone(), states, read(&g.initial), [read(&g.final_word)])
            .expect("state sets are non-empty and words are well-sorted");
    for b in m.gen_ids() {
        let production = m.gen(b);
        let inputs = production.arity.iter().map(|x| index[x.0]).collect();
        let outputs = production.coarity.iter().map(|x| index[x.0]).collect();
        automaton
            .add_transition(g.morphism.box_image(b), inputs, outputs)
            .expect("a graph morphism preserves box boundaries");
    }
    automaton
}

pub fn membership(g: &Grammar, d: &Diagram) -> Result<bool> {
    if **d.signature() != **g.alphabet() {
        return Err(GrammarError::SignatureMismatch);
    }
    let automaton = grammar_to_automaton(g);
    if automaton.initial().profile() != d.dom() {
        return Ok(false);
    }
    match automaton.accepts(d) {
        Ok(b) => Ok(b),
        Err(AutomatonError::ProfileMismatch(_)) => Ok(false),
        Err(e) => Err(e.into()),
    }
}

/// The image of a diagram under a morphism of monoidal graphs: every wire
/// and box is relabelled, the connectivity is unchanged.
pub fn map_diagram(morphism: &GraphMorphism, d: &Diagram) -> Result<Diagram> {
    if **d.signature() != **morphism.source() {
        return Err(GrammarError::SignatureMismatch);
    }
    let nodes = d
        .nodes()
        .iter()
        .map(|n| Node {
            generator: morphism.box_image(n.generator),
            inputs: n.inputs.clone(),
        })
        .collect();
    Ok(Diagram::from_parts(
        morphism.target().clone(),
        morphism.map_word(d.dom()),
        morphism.map_word(d.cod()),
        nodes,
        d.outputs().to_vec(),
    )?)
}

/// The grammar whose language is all permutations of `n` wires of a single
/// sort `•`. With `extra_box`, the alphabet also has a box `b: • → •` that
/// no production produces.
pub fn permutation_grammar(n: usize, extra_box: bool) -> Grammar {
    let m = Arc::new(MonoidalGraph::build(&["•"], &[]).expect("valid graph"));
    let mut gamma = MonoidalGraph::build(&["•"], &[]).expect("valid graph");
    if extra_box {
        gamma = gamma.with_box("b", &["•"], &["•"]).expect("valid box");
    }
    let phi = GraphMorphism::new(m, Arc::new(gamma), vec![SortId(0)], vec![])
        .expect("valid morphism");
    Grammar::new(phi, vec![SortId(0); n], vec![SortId(0); n]).expect("valid grammar")
}

/// Series circuits: a voltage source and any number of capacitors between a
/// fork and a join. Productions `s: S → A B`, `c: A → A`, `v: B → C`,
/// `s': A C → S` map to `fork`, `capacitor`, `source`, `join` over one sort.
pub fn circuit_grammar() -> Grammar {
    let m = MonoidalGraph::build(
        &["S", "A", "B", "C"],
        &[
            ("s", &["S"], &["A", "B"]),
            ("c", &["A"], &["A"]),
            ("v", &["B"], &["C"]),
            ("s'", &["A", "C"], &["S"]),
        ],
    )
    .expect("valid graph");
    let gamma = circuit_alphabet();
    let phi = GraphMorphism::new(
        Arc::new(m),
        Arc::new(gamma),
        vec![SortId(0); 4],
        // s, c, v, s' to fork, capacitor, source, join
        (0..4).map(GenId).collect(),
    )
    .expect("valid morphism");
    Grammar::from_names(phi, &["S"], &["S"]).expect("valid grammar")
}

/// The circuit alphabet: one sort `•` and boxes `fork: • → ••`,
/// `capacitor: • → •`, `source: • → •`, `join: •• → •`.
pub fn circuit_alphabet() -> MonoidalGraph {
    MonoidalGraph::build(
        &["•"],
        &[
            ("fork", &["•"], &["•", "•"]),
            ("capacitor", &["•"], &["•"]),
            ("source", &["•"], &["•"]),
            ("join", &["•", "•"], &["•"]),
        ],
    )
    .expect("valid graph")
}
