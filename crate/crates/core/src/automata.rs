//! Symmetric monoidal automata and asynchronous automata.
//!
//! A [`MonoidalAutomaton`] assigns a finite state set to every sort and a
//! finite relation to every generator; it extends to string diagrams by
//! composing relations along wires. Over a distributed alphabet this is the
//! same data as an [`AsyncAutomaton`], with sorts read as locations.
//!
//! Both kinds accept against a finite set of final state words. The single
//! final word of the textbook definition is the one-element case; a set is
//! needed so that converting an asynchronous automaton preserves its
//! language.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use crate::diagram::{Diagram, Source};
use crate::signature::{
    alphabet_to_distribution, distribution_to_alphabet, DistributedAlphabet, Distribution, GenId,
    MonoidalGraph, SignatureError, SortId,
};
use crate::trace::Trace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("ProfileMismatch: {0}")]
    ProfileMismatch(String),
    #[error("UnknownState: no state `{state}` of sort `{sort}`")]
    UnknownState { sort: String, state: String },
    #[error("EmptyStateSet: sort `{0}` has no states")]
    EmptyStateSet(String),
    #[error("DuplicateState: state `{state}` declared twice for sort `{sort}`")]
    DuplicateState { sort: String, state: String },
    #[error("UnknownGenerator: `{0}`")]
    UnknownGenerator(String),
    #[error("UnknownAction: `{0}`")]
    UnknownAction(String),
    #[error("SignatureMismatch: diagram and automaton have different alphabets")]
    SignatureMismatch,
    #[error("NotDistributedAlphabet: {0}")]
    NotDistributedAlphabet(String),
    #[error("BoundaryNotFull: {0}")]
    BoundaryNotFull(String),
    #[error("AlphabetMismatch: trace is over a different alphabet")]
    AlphabetMismatch,
}

pub type Result<T, E = AutomatonError> = std::result::Result<T, E>;

/// A word of states, each tagged with its sort. States are indices into the
/// automaton's per-sort state list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct StateWord(pub Vec<(SortId, usize)>);

impl StateWord {
    pub fn profile(&self) -> Vec<SortId> {
        self.0.iter().map(|(s, _)| *s).collect()
    }

    pub fn states(&self) -> Vec<usize> {
        self.0.iter().map(|(_, q)| *q).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A relation stored extensionally: input tuple to the set of output tuples.
pub type Relation = BTreeMap<Vec<usize>, BTreeSet<Vec<usize>>>;

fn check_state_sets(names: &[String], states: &[Vec<String>]) -> Result<()> {
    for (sort, set) in names.iter().zip(states) {
        if set.is_empty() {
            return Err(AutomatonError::EmptyStateSet(sort.clone()));
        }
        let distinct: BTreeSet<_> = set.iter().collect();
        if distinct.len() != set.len() {
            let dup = set
                .iter()
                .find(|s| set.iter().filter(|t| t == s).count() > 1)
                .expect("a duplicate exists");
            return Err(AutomatonError::DuplicateState {
                sort: sort.clone(),
                state: dup.clone(),
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidalAutomaton {
    alphabet: Arc<MonoidalGraph>,
    states: Vec<Vec<String>>,
    transitions: Vec<Relation>,
    initial: StateWord,
    finals: BTreeSet<StateWord>,
}

impl MonoidalAutomaton {
    /// An automaton with no transitions. `states[c]` lists the states of
    /// sort `c`; it must be non-empty.
    pub fn new(
        alphabet: Arc<MonoidalGraph>,
        states: Vec<Vec<String>>,
        initial: StateWord,
        finals: impl IntoIterator<Item = StateWord>,
    ) -> Result<Self> {
        if states.len() != alphabet.sorts().len() {
            return Err(AutomatonError::ProfileMismatch(format!(
                "{} state sets for {} sorts",
                states.len(),
                alphabet.sorts().len()
            )));
        }
        check_state_sets(alphabet.sorts(), &states)?;
        let automaton = MonoidalAutomaton {
            transitions: vec![Relation::new(); alphabet.boxes().len()],
            alphabet,
            states,
            initial,
            finals: finals.into_iter().collect(),
        };
        automaton.check_word(&automaton.initial)?;
        let mut profiles = BTreeSet::new();
        for f in &automaton.finals {
            automaton.check_word(f)?;
            profiles.insert(f.profile());
        }
        if profiles.len() > 1 {
            return Err(AutomatonError::ProfileMismatch(
                "final state words have different sort profiles".into(),
            ));
        }
        Ok(automaton)
    }

    fn check_word(&self, word: &StateWord) -> Result<()> {
        for (sort, q) in &word.0 {
            let set = self.states.get(sort.0).ok_or_else(|| {
                AutomatonError::ProfileMismatch(format!("unknown sort {sort}"))
            })?;
            if *q >= set.len() {
                return Err(AutomatonError::UnknownState {
                    sort: self.alphabet.sort_name(*sort).to_string(),
                    state: q.to_string(),
                });
            }
        }
        Ok(())
    }

    fn state_index(&self, sort: SortId, name: &str) -> Result<usize> {
        self.states[sort.0]
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| AutomatonError::UnknownState {
                sort: self.alphabet.sort_name(sort).to_string(),
                state: name.to_string(),
            })
    }

    /// Parses `(sort, state)` name pairs.
    pub fn state_word<S: AsRef<str>>(&self, pairs: &[(S, S)]) -> Result<StateWord> {
        pairs
            .iter()
            .map(|(sort, state)| {
                let sort = self
                    .alphabet
                    .sort(sort.as_ref())
                    .map_err(|e| AutomatonError::ProfileMismatch(e.to_string()))?;
                Ok((sort, self.state_index(sort, state.as_ref())?))
            })
            .collect::<Result<_>>()
            .map(StateWord)
    }

    /// The word of states along a sort profile, states given by name.
    pub fn states_along<S: AsRef<str>>(&self, profile: &[SortId], names: &[S]) -> Result<StateWord> {
        if profile.len() != names.len() {
            return Err(AutomatonError::ProfileMismatch(format!(
                "{} states for a boundary of length {}",
                names.len(),
                profile.len()
            )));
        }
        profile
            .iter()
            .zip(names)
            .map(|(s, n)| Ok((*s, self.state_index(*s, n.as_ref())?)))
            .collect::<Result<_>>()
            .map(StateWord)
    }

    /// Adds `inputs ↦ outputs` to the relation of `generator`; tuples are
    /// state indices along its arity and coarity.
    pub fn add_transition(
        &mut self,
        generator: GenId,
        inputs: Vec<usize>,
        outputs: Vec<usize>,
    ) -> Result<()> {
        if !self.alphabet.has_gen(generator) {
            return Err(AutomatonError::UnknownGenerator(generator.to_string()));
        }
        let g = self.alphabet.gen(generator).clone();
        for (profile, tuple) in [(&g.arity, &inputs), (&g.coarity, &outputs)] {
            if profile.len() != tuple.len() {
                return Err(AutomatonError::ProfileMismatch(format!(
                    "transition of `{}` has {} states for a boundary of length {}",
                    g.name,
                    tuple.len(),
                    profile.len()
                )));
            }
            self.check_word(&StateWord(
                profile.iter().copied().zip(tuple.iter().copied()).collect(),
            ))?;
        }
        self.transitions[generator.0]
            .entry(inputs)
            .or_default()
            .insert(outputs);
        Ok(())
    }

    /// [`add_transition`](Self::add_transition) with names.
    pub fn add_transition_names<S: AsRef<str>>(
        &mut self,
        generator: &str,
        inputs: &[S],
        outputs: &[S],
    ) -> Result<()> {
        let id = self
            .alphabet
            .generator(generator)
            .map_err(|_| AutomatonError::UnknownGenerator(generator.to_string()))?;
        let g = self.alphabet.gen(id).clone();
        let ins = self.states_along(&g.arity, inputs)?.states();
        let outs = self.states_along(&g.coarity, outputs)?.states();
        self.add_transition(id, ins, outs)
    }

    pub fn alphabet(&self) -> &Arc<MonoidalGraph> {
        &self.alphabet
    }

    pub fn states(&self) -> &[Vec<String>] {
        &self.states
    }

    pub fn state_name(&self, sort: SortId, state: usize) -> &str {
        &self.states[sort.0][state]
    }

    pub fn transitions(&self) -> &[Relation] {
        &self.transitions
    }

    pub fn relation(&self, generator: GenId) -> &Relation {
        &self.transitions[generator.0]
    }

    pub fn initial(&self) -> &StateWord {
        &self.initial
    }

    pub fn finals(&self) -> &BTreeSet<StateWord> {
        &self.finals
    }

    /// The image of `input` under the relation denoted by `d`.
    pub fn eval_diagram(&self, d: &Diagram, input: &StateWord) -> Result<BTreeSet<StateWord>> {
        if !(Arc::ptr_eq(&self.alphabet, d.signature()) || *self.alphabet == **d.signature()) {
            return Err(AutomatonError::SignatureMismatch);
        }
        if input.profile() != d.dom() {
            return Err(AutomatonError::ProfileMismatch(format!(
                "input profile {:?} but diagram domain {:?}",
                self.alphabet.sort_names(&input.profile()),
                self.alphabet.sort_names(d.dom())
            )));
        }
        self.check_word(input)?;
        // One slot per producer port: domain positions, then node outputs.
        let mut base = Vec::with_capacity(d.node_count());
        let mut slots = d.dom().len();
        for node in d.nodes() {
            base.push(slots);
            slots += self.alphabet.gen(node.generator).coarity.len();
        }
        let slot = |s: &Source| match s {
            Source::Dom(i) => *i,
            Source::Node { node, port } => base[*node] + port,
        };
        const SPENT: usize = usize::MAX;
        let mut initial = vec![SPENT; slots];
        for (i, (_, q)) in input.0.iter().enumerate() {
            initial[i] = *q;
        }
        let mut configs: BTreeSet<Vec<usize>> = BTreeSet::from([initial]);
        for n in d.topological_order_by(|i| i) {
            let node = &d.nodes()[n];
            let relation = &self.transitions[node.generator.0];
            let mut next = BTreeSet::new();
            for config in &configs {
                let inputs: Vec<usize> = node.inputs.iter().map(|s| config[slot(s)]).collect();
                let Some(images) = relation.get(&inputs) else {
                    continue;
                };
                for outs in images {
                    let mut c = config.clone();
                    for s in &node.inputs {
                        c[slot(s)] = SPENT;
                    }
                    for (p, q) in outs.iter().enumerate() {
                        c[base[n] + p] = *q;
                    }
                    next.insert(c);
                }
            }
            configs = next;
            if configs.is_empty() {
                break;
            }
        }
        Ok(configs
            .into_iter()
            .map(|c| {
                StateWord(
                    d.outputs()
                        .iter()
                        .zip(d.cod())
                        .map(|(s, sort)| (*sort, c[slot(s)]))
                        .collect(),
                )
            })
            .collect())
    }

    /// Whether the diagram relates the initial word to some final word.
    pub fn accepts(&self, d: &Diagram) -> Result<bool> {
        if let Some(f) = self.finals.first() {
            if f.profile() != d.cod() {
                return Err(AutomatonError::ProfileMismatch(format!(
                    "diagram codomain {:?} but final profile {:?}",
                    self.alphabet.sort_names(d.cod()),
                    self.alphabet.sort_names(&f.profile())
                )));
            }
        }
        let reached = self.eval_diagram(d, &self.initial)?;
        Ok(self.finals.iter().any(|f| reached.contains(f)))
    }

    /// Every input tuple has at most one image under every relation.
    pub fn is_deterministic(&self) -> bool {
        self.transitions
            .iter()
            .all(|r| r.values().all(|images| images.len() <= 1))
    }
}

/// An asynchronous automaton over a distribution: one local state set per
/// location, one local relation per action over the action's locations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsyncAutomaton {
    distribution: Distribution,
    alphabet: Arc<DistributedAlphabet>,
    states: Vec<Vec<String>>,
    transitions: Vec<Relation>,
    initial: Vec<usize>,
    finals: BTreeSet<Vec<usize>>,
}

impl AsyncAutomaton {
    /// `states[i]` lists the local states of location `i` (0-based);
    /// `initial` gives one state index per location.
    pub fn new(
        distribution: Distribution,
        states: Vec<Vec<String>>,
        initial: Vec<usize>,
    ) -> Result<Self> {
        let alphabet = Arc::new(distribution_to_alphabet(&distribution));
        if states.len() != alphabet.locations() {
            return Err(AutomatonError::ProfileMismatch(format!(
                "{} state sets for {} locations",
                states.len(),
                alphabet.locations()
            )));
        }
        check_state_sets(alphabet.graph().sorts(), &states)?;
        let automaton = AsyncAutomaton {
            transitions: vec![Relation::new(); alphabet.graph().boxes().len()],
            distribution,
            alphabet,
            states,
            initial,
            finals: BTreeSet::new(),
        };
        automaton.check_global(&automaton.initial)?;
        Ok(automaton)
    }

    fn check_global(&self, q: &[usize]) -> Result<()> {
        if q.len() != self.states.len() {
            return Err(AutomatonError::ProfileMismatch(format!(
                "global state has {} components, expected {}",
                q.len(),
                self.states.len()
            )));
        }
        for (i, s) in q.iter().enumerate() {
            if *s >= self.states[i].len() {
                return Err(AutomatonError::UnknownState {
                    sort: (i + 1).to_string(),
                    state: s.to_string(),
                });
            }
        }
        Ok(())
    }

    fn check_local(&self, action: GenId, tuple: &[usize]) -> Result<()> {
        let loc = self.loc(action);
        if loc.len() != tuple.len() {
            return Err(AutomatonError::ProfileMismatch(format!(
                "local tuple of `{}` has {} states for {} locations",
                self.alphabet.action_name(action),
                tuple.len(),
                loc.len()
            )));
        }
        for (l, s) in loc.iter().zip(tuple) {
            if *s >= self.states[l.0].len() {
                return Err(AutomatonError::UnknownState {
                    sort: (l.0 + 1).to_string(),
                    state: s.to_string(),
                });
            }
        }
        Ok(())
    }

    fn loc(&self, action: GenId) -> &[SortId] {
        &self.alphabet.graph().gen(action).arity
    }

    pub fn action(&self, name: &str) -> Result<GenId> {
        self.alphabet
            .action(name)
            .map_err(|_| AutomatonError::UnknownAction(name.to_string()))
    }

    /// Adds a local transition of `action` over its locations in increasing order.
    pub fn add_transition(&mut self, action: GenId, from: Vec<usize>, to: Vec<usize>) -> Result<()> {
        if !self.alphabet.graph().has_gen(action) {
            return Err(AutomatonError::UnknownAction(action.to_string()));
        }
        self.check_local(action, &from)?;
        self.check_local(action, &to)?;
        self.transitions[action.0].entry(from).or_default().insert(to);
        Ok(())
    }

    pub fn add_final(&mut self, q: Vec<usize>) -> Result<()> {
        self.check_global(&q)?;
        self.finals.insert(q);
        Ok(())
    }

    /// Index of a local state by name.
    pub fn state_index(&self, location: usize, name: &str) -> Result<usize> {
        self.states
            .get(location)
            .and_then(|set| set.iter().position(|s| s == name))
            .ok_or_else(|| AutomatonError::UnknownState {
                sort: (location + 1).to_string(),
                state: name.to_string(),
            })
    }

    pub fn distribution(&self) -> &Distribution {
        &self.distribution
    }

    pub fn alphabet(&self) -> &Arc<DistributedAlphabet> {
        &self.alphabet
    }

    pub fn states(&self) -> &[Vec<String>] {
        &self.states
    }

    pub fn transitions(&self) -> &[Relation] {
        &self.transitions
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn finals(&self) -> &BTreeSet<Vec<usize>> {
        &self.finals
    }

    /// Global successors of `q` under `action`: coordinates outside the
    /// action's locations are untouched.
    pub fn step(&self, q: &[usize], action: GenId) -> Result<BTreeSet<Vec<usize>>> {
        if !self.alphabet.graph().has_gen(action) {
            return Err(AutomatonError::UnknownAction(action.to_string()));
        }
        self.check_global(q)?;
        let loc = self.loc(action);
        let projection: Vec<usize> = loc.iter().map(|l| q[l.0]).collect();
        let Some(images) = self.transitions[action.0].get(&projection) else {
            return Ok(BTreeSet::new());
        };
        Ok(images
            .iter()
            .map(|image| {
                let mut next = q.to_vec();
                for (l, s) in loc.iter().zip(image) {
                    next[l.0] = *s;
                }
                next
            })
            .collect())
    }

    /// Global states reachable from the initial state along `word`.
    pub fn run(&self, word: &[GenId]) -> Result<BTreeSet<Vec<usize>>> {
        let mut current = BTreeSet::from([self.initial.clone()]);
        for &a in word {
            let mut next = BTreeSet::new();
            for q in &current {
                next.extend(self.step(q, a)?);
            }
            current = next;
        }
        Ok(current)
    }

    pub fn accepts_word(&self, word: &[GenId]) -> Result<bool> {
        Ok(self.run(word)?.iter().any(|q| self.finals.contains(q)))
    }

    pub fn accepts_names<S: AsRef<str>>(&self, word: &[S]) -> Result<bool> {
        let ids = word
            .iter()
            .map(|n| self.action(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        self.accepts_word(&ids)
    }

    /// Acceptance of a trace, decided on one of its serializations.
    pub fn accepts_trace(&self, t: &Trace) -> Result<bool> {
        if **t.alphabet() != *self.alphabet {
            return Err(AutomatonError::AlphabetMismatch);
        }
        self.accepts_word(&t.flatten())
    }
}

/// Reads an asynchronous automaton as a monoidal automaton over the
/// distributed alphabet of its distribution: the same local state sets and
/// relations, the initial tuple as initial word, every final tuple as a
/// final word.
pub fn async_to_monoidal(a: &AsyncAutomaton) -> MonoidalAutomaton {
    let along = |q: &[usize]| StateWord(q.iter().enumerate().map(|(i, s)| (SortId(i), *s)).collect());
    MonoidalAutomaton {
        alphabet: a.alphabet.graph().clone(),
        states: a.states.clone(),
        transitions: a.transitions.clone(),
        initial: along(&a.initial),
        finals: a.finals.iter().map(|q| along(q)).collect(),
    }
}

/// The inverse reading; requires a distributed alphabet and full-boundary
/// initial and final words.
pub fn monoidal_to_async(m: &MonoidalAutomaton) -> Result<AsyncAutomaton> {
    let alphabet = DistributedAlphabet::validate(m.alphabet.clone())
        .map_err(|e| AutomatonError::NotDistributedAlphabet(e.to_string()))?;
    let distribution = alphabet_to_distribution(&alphabet).map_err(|e| match e {
        SignatureError::EmptyComponent(_) => AutomatonError::NotDistributedAlphabet(e.to_string()),
        other => AutomatonError::NotDistributedAlphabet(other.to_string()),
    })?;
    let full = alphabet.full_boundary();
    for word in std::iter::once(&m.initial).chain(&m.finals) {
        if word.profile() != full {
            return Err(AutomatonError::BoundaryNotFull(format!(
                "state word over {:?}",
                m.alphabet.sort_names(&word.profile())
            )));
        }
    }
    // Generators of the rebuilt alphabet are sorted by name; realign relations.
    let rebuilt = Arc::new(distribution_to_alphabet(&distribution));
    let mut transitions = vec![Relation::new(); rebuilt.graph().boxes().len()];
    for (i, g) in m.alphabet.boxes().iter().enumerate() {
        let id = rebuilt.action(&g.name).expect("same action names");
        transitions[id.0] = m.transitions[i].clone();
    }
    Ok(AsyncAutomaton {
        distribution,
        alphabet: rebuilt,
        states: m.states.clone(),
        transitions,
        initial: m.initial.states(),
        finals: m.finals.iter().map(StateWord::states).collect(),
    })
}
