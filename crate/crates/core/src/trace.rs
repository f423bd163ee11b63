//! The trace monoid over a distributed alphabet.
//!
//! Two actions commute iff their locations are disjoint. A [`Trace`] is kept
//! in Foata normal form: maximal steps of pairwise independent actions, each
//! action depending on something in the previous step, actions within a step
//! ordered by name.

use std::sync::Arc;

use thiserror::Error;

use crate::diagram::{fold_n, to_generator_sequence, Diagram, DiagramError};
use crate::signature::{DistributedAlphabet, GenId, SignatureError};

/// Default cap on the number of serializations enumerated at once.
pub const DEFAULT_SERIALIZATION_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("UnknownAction: `{0}`")]
    UnknownAction(String),
    #[error("AlphabetMismatch: traces are over different alphabets")]
    AlphabetMismatch,
    #[error("TooManySerializations: more than {0} serializations")]
    TooManySerializations(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

impl From<SignatureError> for TraceError {
    fn from(err: SignatureError) -> Self {
        match err {
            SignatureError::UnknownAction(a) | SignatureError::UnknownGenerator(a) => {
                TraceError::UnknownAction(a)
            }
            other => TraceError::UnknownAction(other.to_string()),
        }
    }
}

pub type Result<T, E = TraceError> = std::result::Result<T, E>;

#[derive(Debug, Clone)]
pub struct Trace {
    alphabet: Arc<DistributedAlphabet>,
    steps: Vec<Vec<GenId>>,
}

impl PartialEq for Trace {
    fn eq(&self, other: &Self) -> bool {
        self.steps == other.steps
            && (Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet)
    }
}

impl Eq for Trace {}

/// The trace `[w]` of a word.
pub fn quotient_word(alphabet: &Arc<DistributedAlphabet>, word: &[GenId]) -> Result<Trace> {
    let graph = alphabet.graph();
    if let Some(bad) = word.iter().find(|g| !graph.has_gen(**g)) {
        return Err(TraceError::UnknownAction(bad.to_string()));
    }
    // Height of the last step touching each location.
    let mut height = vec![0usize; alphabet.locations()];
    let mut steps: Vec<Vec<GenId>> = Vec::new();
    for &action in word {
        let loc = &graph.gen(action).arity;
        let level = loc.iter().map(|s| height[s.0]).max().unwrap_or(0);
        for s in loc {
            height[s.0] = level + 1;
        }
        if level == steps.len() {
            steps.push(Vec::new());
        }
        steps[level].push(action);
    }
    for step in &mut steps {
        step.sort_by(|a, b| graph.gen(*a).name.cmp(&graph.gen(*b).name));
    }
    Ok(Trace {
        alphabet: alphabet.clone(),
        steps,
    })
}

/// [`quotient_word`] on a word of action names.
pub fn quotient_names<S: AsRef<str>>(alphabet: &Arc<DistributedAlphabet>, word: &[S]) -> Result<Trace> {
    quotient_word(alphabet, &alphabet.actions(word)?)
}

/// `α`: the trace of a full-boundary endomorphism diagram.
pub fn diagram_to_trace(alphabet: &Arc<DistributedAlphabet>, d: &Diagram) -> Result<Trace> {
    quotient_word(alphabet, &to_generator_sequence(alphabet, d)?)
}

impl Trace {
    pub fn empty(alphabet: Arc<DistributedAlphabet>) -> Self {
        Trace {
            alphabet,
            steps: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Arc<DistributedAlphabet> {
        &self.alphabet
    }

    pub fn steps(&self) -> &[Vec<GenId>] {
        &self.steps
    }

    pub fn step_names(&self) -> Vec<Vec<String>> {
        self.steps
            .iter()
            .map(|s| self.alphabet.action_names(s))
            .collect()
    }

    /// Number of actions.
    pub fn len(&self) -> usize {
        self.steps.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The serialization read off the normal form step by step.
    pub fn flatten(&self) -> Vec<GenId> {
        self.steps.iter().flatten().copied().collect()
    }

    pub fn concat(&self, other: &Trace) -> Result<Trace> {
        if self.alphabet != other.alphabet {
            return Err(TraceError::AlphabetMismatch);
        }
        let mut word = self.flatten();
        word.extend(other.flatten());
        quotient_word(&self.alphabet, &word)
    }

    /// Lazily enumerates every word in the class, in lexicographic order of
    /// action names.
    pub fn iter_serializations(&self) -> Serializations<'_> {
        Serializations::new(self)
    }

    /// All serializations, failing once more than `cap` have been produced.
    pub fn serializations(&self, cap: usize) -> Result<Vec<Vec<GenId>>> {
        let mut out = Vec::new();
        for word in self.iter_serializations() {
            if out.len() == cap {
                return Err(TraceError::TooManySerializations(cap));
            }
            out.push(word);
        }
        Ok(out)
    }

    /// `β`: the monoidal trace `N(γ₁) ⊛ … ⊛ N(γ_m)`.
    pub fn to_diagram(&self) -> Result<Diagram> {
        Ok(fold_n(&self.alphabet, &self.flatten())?)
    }
}

/// Depth-first enumeration of the linear extensions of a trace's dependence
/// order. Events with the same letter are always ordered, so extensions and
/// words are in bijection.
pub struct Serializations<'a> {
    trace: &'a Trace,
    events: Vec<GenId>,
    preds: Vec<Vec<usize>>,
    placed: Vec<bool>,
    prefix: Vec<usize>,
    stack: Vec<(Vec<usize>, usize)>,
    fresh: bool,
}

impl<'a> Serializations<'a> {
    fn new(trace: &'a Trace) -> Self {
        let events = trace.flatten();
        let alphabet = &trace.alphabet;
        let preds = (0..events.len())
            .map(|j| {
                (0..j)
                    .filter(|&i| !alphabet.independent(events[i], events[j]))
                    .collect()
            })
            .collect();
        let mut it = Serializations {
            trace,
            placed: vec![false; events.len()],
            events,
            preds,
            prefix: Vec::new(),
            stack: Vec::new(),
            fresh: true,
        };
        let root = it.available();
        it.stack.push((root, 0));
        it
    }

    fn available(&self) -> Vec<usize> {
        let graph = self.trace.alphabet.graph();
        let mut ready: Vec<usize> = (0..self.events.len())
            .filter(|&e| !self.placed[e] && self.preds[e].iter().all(|&p| self.placed[p]))
            .collect();
        ready.sort_by(|a, b| {
            graph
                .gen(self.events[*a])
                .name
                .cmp(&graph.gen(self.events[*b]).name)
        });
        ready
    }
}

impl Iterator for Serializations<'_> {
    type Item = Vec<GenId>;

    fn next(&mut self) -> Option<Vec<GenId>> {
        if self.fresh {
            self.fresh = false;
            if self.events.is_empty() {
                self.stack.clear();
                return Some(Vec::new());
            }
        }
        while let Some((avail, cursor)) = self.stack.last_mut() {
            if *cursor == avail.len() {
                self.stack.pop();
                if let Some(e) = self.prefix.pop() {
                    self.placed[e] = false;
                }
                continue;
            }
            let e = avail[*cursor];
            *cursor += 1;
            self.placed[e] = true;
            self.prefix.push(e);
            if self.prefix.len() == self.events.len() {
                let word = self.prefix.iter().map(|i| self.events[*i]).collect();
                self.prefix.pop();
                self.placed[e] = false;
                return Some(word);
            }
            let next = self.available();
            self.stack.push((next, 0));
        }
        None
    }
}
