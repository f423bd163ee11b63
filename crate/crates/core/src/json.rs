//! JSON documents for every data type the command line reads or writes.
//!
//! Each document type is a plain serde struct mirroring the file format,
//! with conversions to and from the library types. Sorts, boxes, actions and
//! states are always referenced by name. Malformed documents (bad JSON,
//! missing fields, wrong types) are [`JsonError::Parse`]; well-formed
//! documents describing an invalid object report the library error.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::automata::{AsyncAutomaton, AutomatonError, MonoidalAutomaton, StateWord};
use crate::diagram::canonical::canonical_order;
use crate::diagram::{Diagram, DiagramError, Node, Source};
use crate::grammar::{Grammar, GrammarError};
use crate::signature::{
    DistributedAlphabet, Distribution, GraphMorphism, IndependenceRelation, MonoidalGraph,
    SignatureError, SortId,
};
use crate::trace::{quotient_names, Trace, TraceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JsonError {
    #[error("ParseError: {0}")]
    Parse(String),
    #[error("SignatureMismatch: document refers to `{found}` but the signature is `{expected}`")]
    NameMismatch { expected: String, found: String },
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Grammar(#[from] GrammarError),
}

impl JsonError {
    pub fn is_parse_error(&self) -> bool {
        matches!(self, JsonError::Parse(_))
    }
}

impl From<serde_json::Error> for JsonError {
    fn from(e: serde_json::Error) -> Self {
        JsonError::Parse(e.to_string())
    }
}

pub type Result<T, E = JsonError> = std::result::Result<T, E>;

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

pub fn print<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

fn check_name(expected: &str, found: &str) -> Result<()> {
    if !expected.is_empty() && !found.is_empty() && expected != found {
        return Err(JsonError::NameMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        });
    }
    Ok(())
}

// Graphs, independence relations, distributions.

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxDoc {
    pub name: String,
    pub arity: Vec<String>,
    pub coarity: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub name: String,
    pub sorts: Vec<String>,
    pub boxes: Vec<BoxDoc>,
}

impl GraphDoc {
    pub fn to_graph(&self) -> Result<MonoidalGraph> {
        let mut g = MonoidalGraph::new(self.sorts.iter().cloned())?.with_name(self.name.clone());
        for b in &self.boxes {
            g = g.with_box(&b.name, &b.arity, &b.coarity)?;
        }
        Ok(g)
    }

    pub fn from_graph(g: &MonoidalGraph) -> Self {
        GraphDoc {
            name: g.name().to_string(),
            sorts: g.sorts().to_vec(),
            boxes: g
                .boxes()
                .iter()
                .map(|b| BoxDoc {
                    name: b.name.clone(),
                    arity: g.sort_names(&b.arity),
                    coarity: g.sort_names(&b.coarity),
                })
                .collect(),
        }
    }

    pub fn to_alphabet(&self) -> Result<DistributedAlphabet> {
        Ok(DistributedAlphabet::new(self.to_graph()?)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceDoc {
    pub alphabet: Vec<String>,
    pub pairs: Vec<[String; 2]>,
}

impl IndependenceDoc {
    pub fn to_relation(&self) -> Result<IndependenceRelation> {
        Ok(IndependenceRelation::new(
            self.alphabet.iter().cloned(),
            self.pairs.iter().map(|[a, b]| (a.clone(), b.clone())),
        )?)
    }

    /// Each unordered pair once, smaller name first.
    pub fn from_relation(rel: &IndependenceRelation) -> Self {
        IndependenceDoc {
            alphabet: rel.alphabet().iter().cloned().collect(),
            pairs: rel
                .pairs()
                .iter()
                .filter(|(a, b)| a < b)
                .map(|(a, b)| [a.clone(), b.clone()])
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionDoc {
    pub components: Vec<Vec<String>>,
}

impl DistributionDoc {
    pub fn to_distribution(&self) -> Result<Distribution> {
        Ok(Distribution::new(
            self.components
                .iter()
                .map(|c| c.iter().cloned().collect())
                .collect(),
        )?)
    }

    pub fn from_distribution(d: &Distribution) -> Self {
        DistributionDoc {
            components: d
                .components()
                .iter()
                .map(|c| c.iter().cloned().collect())
                .collect(),
        }
    }
}

// Diagrams.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    In,
    Out,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PortRef {
    Boundary { boundary: usize },
    Node { node: String, port: usize, side: Side },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDoc {
    pub id: String,
    pub generator: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireDoc {
    pub sort: String,
    pub from: PortRef,
    pub to: PortRef,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDoc {
    #[serde(default)]
    pub signature: String,
    pub dom: Vec<String>,
    pub cod: Vec<String>,
    pub nodes: Vec<NodeDoc>,
    pub wires: Vec<WireDoc>,
}

fn incidence(msg: String) -> JsonError {
    DiagramError::PortIncidence(msg).into()
}

impl DiagramDoc {
    pub fn to_diagram(&self, signature: Arc<MonoidalGraph>) -> Result<Diagram> {
        check_name(signature.name(), &self.signature)?;
        let dom = signature.sort_word(&self.dom)?;
        let cod = signature.sort_word(&self.cod)?;
        let mut ids = BTreeMap::new();
        let mut generators = Vec::with_capacity(self.nodes.len());
        for (i, n) in self.nodes.iter().enumerate() {
            if ids.insert(n.id.as_str(), i).is_some() {
                return Err(incidence(format!("node id `{}` used twice", n.id)));
            }
            generators.push(signature.generator(&n.generator)?);
        }
        let mut inputs: Vec<Vec<Option<Source>>> = generators
            .iter()
            .map(|g| vec![None; signature.gen(*g).arity.len()])
            .collect();
        let mut outputs: Vec<Option<Source>> = vec![None; cod.len()];
        let node_index = |id: &str| {
            ids.get(id)
                .copied()
                .ok_or_else(|| incidence(format!("unknown node `{id}`")))
        };
        for w in &self.wires {
            let wire_sort = signature.sort(&w.sort)?;
            let (source, source_sort) = match &w.from {
                PortRef::Boundary { boundary } => {
                    let s = dom.get(*boundary).ok_or_else(|| {
                        incidence(format!("no domain position {boundary}"))
                    })?;
                    (Source::Dom(*boundary), *s)
                }
                PortRef::Node { node, port, side: Side::Out } => {
                    let n = node_index(node)?;
                    let s = signature.gen(generators[n]).coarity.get(*port).ok_or_else(|| {
                        incidence(format!("node `{node}` has no output port {port}"))
                    })?;
                    (Source::Node { node: n, port: *port }, *s)
                }
                PortRef::Node { node, side: Side::In, .. } => {
                    return Err(incidence(format!("wire starts at an input of `{node}`")))
                }
            };
            if source_sort != wire_sort {
                return Err(DiagramError::WireSortMismatch(format!(
                    "wire labelled `{}` leaves a port of sort `{}`",
                    w.sort,
                    signature.sort_name(source_sort)
                ))
                .into());
            }
            let slot = match &w.to {
                PortRef::Boundary { boundary } => outputs.get_mut(*boundary).ok_or_else(|| {
                    incidence(format!("no codomain position {boundary}"))
                })?,
                PortRef::Node { node, port, side: Side::In } => {
                    let n = node_index(node)?;
                    inputs[n].get_mut(*port).ok_or_else(|| {
                        incidence(format!("node `{node}` has no input port {port}"))
                    })?
                }
                PortRef::Node { node, side: Side::Out, .. } => {
                    return Err(incidence(format!("wire ends at an output of `{node}`")))
                }
            };
            if slot.replace(source).is_some() {
                return Err(incidence("a port receives two wires".into()));
            }
        }
        let nodes = generators
            .into_iter()
            .zip(inputs)
            .map(|(generator, ins)| {
                Ok(Node {
                    generator,
                    inputs: ins
                        .into_iter()
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| incidence("an input port has no wire".into()))?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let outputs = outputs
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| incidence("a codomain position has no wire".into()))?;
        Ok(Diagram::from_parts(signature, dom, cod, nodes, outputs)?)
    }

    /// Nodes are numbered `n0, n1, …` in canonical order, so equal diagrams
    /// print identically.
    pub fn from_diagram(d: &Diagram) -> Self {
        let g = d.signature();
        let order = canonical_order(d);
        let mut label = vec![0; d.node_count()];
        for (i, n) in order.iter().enumerate() {
            label[*n] = i;
        }
        let from = |s: &Source| match s {
            Source::Dom(i) => PortRef::Boundary { boundary: *i },
            Source::Node { node, port } => PortRef::Node {
                node: format!("n{}", label[*node]),
                port: *port,
                side: Side::Out,
            },
        };
        let sort_of = |s: &Source| match s {
            Source::Dom(i) => d.dom()[*i],
            Source::Node { node, port } => g.gen(d.nodes()[*node].generator).coarity[*port],
        };
        let mut wires = Vec::new();
        for &n in &order {
            for (p, s) in d.nodes()[n].inputs.iter().enumerate() {
                wires.push(WireDoc {
                    sort: g.sort_name(sort_of(s)).to_string(),
                    from: from(s),
                    to: PortRef::Node {
                        node: format!("n{}", label[n]),
                        port: p,
                        side: Side::In,
                    },
                });
            }
        }
        for (j, s) in d.outputs().iter().enumerate() {
            wires.push(WireDoc {
                sort: g.sort_name(sort_of(s)).to_string(),
                from: from(s),
                to: PortRef::Boundary { boundary: j },
            });
        }
        DiagramDoc {
            signature: g.name().to_string(),
            dom: g.sort_names(d.dom()),
            cod: g.sort_names(d.cod()),
            nodes: order
                .iter()
                .enumerate()
                .map(|(i, n)| NodeDoc {
                    id: format!("n{i}"),
                    generator: g.gen(d.nodes()[*n].generator).name.clone(),
                })
                .collect(),
            wires,
        }
    }

    /// The smallest signature the document can be read against. Sorts appear
    /// in order of first mention, with one box per generator name whose port
    /// sorts are implied by its wires.
    pub fn infer_signature(&self) -> Result<MonoidalGraph> {
        let mut sorts: Vec<String> = Vec::new();
        let mut note = |s: &str| {
            if !sorts.iter().any(|t| t == s) {
                sorts.push(s.to_string());
            }
        };
        self.dom.iter().chain(&self.cod).for_each(|s| note(s));
        self.wires.iter().for_each(|w| note(&w.sort));

        type Ports = BTreeMap<usize, String>;
        let mut ports: BTreeMap<&str, (Ports, Ports)> = BTreeMap::new();
        for n in &self.nodes {
            ports.entry(n.id.as_str()).or_default();
        }
        for w in &self.wires {
            for end in [&w.from, &w.to] {
                if let PortRef::Node { node, port, side } = end {
                    let entry = ports
                        .get_mut(node.as_str())
                        .ok_or_else(|| incidence(format!("unknown node `{node}`")))?;
                    let map = if *side == Side::In { &mut entry.0 } else { &mut entry.1 };
                    map.insert(*port, w.sort.clone());
                }
            }
        }
        let word = |m: &Ports, node: &str| -> Result<Vec<String>> {
            m.iter()
                .enumerate()
                .map(|(i, (p, s))| {
                    if i == *p {
                        Ok(s.clone())
                    } else {
                        Err(incidence(format!("node `{node}` is missing port {i}")))
                    }
                })
                .collect()
        };
        let mut g = MonoidalGraph::new(sorts)?.with_name(self.signature.clone());
        let mut seen: BTreeMap<&str, (Vec<String>, Vec<String>)> = BTreeMap::new();
        for n in &self.nodes {
            let (ins, outs) = &ports[n.id.as_str()];
            let profile = (word(ins, &n.id)?, word(outs, &n.id)?);
            match seen.get(n.generator.as_str()) {
                Some(p) if *p != profile => {
                    return Err(DiagramError::WireSortMismatch(format!(
                        "generator `{}` used with different port sorts",
                        n.generator
                    ))
                    .into())
                }
                Some(_) => {}
                None => {
                    g = g.with_box(&n.generator, &profile.0, &profile.1)?;
                    seen.insert(n.generator.as_str(), profile);
                }
            }
        }
        Ok(g)
    }
}

// Traces and words.

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDoc {
    #[serde(default)]
    pub alphabet: String,
    pub steps: Vec<Vec<String>>,
}

impl TraceDoc {
    pub fn to_trace(&self, alphabet: &Arc<DistributedAlphabet>) -> Result<Trace> {
        check_name(alphabet.graph().name(), &self.alphabet)?;
        let word: Vec<&String> = self.steps.iter().flatten().collect();
        Ok(quotient_names(alphabet, &word)?)
    }

    pub fn from_trace(t: &Trace) -> Self {
        TraceDoc {
            alphabet: t.alphabet().graph().name().to_string(),
            steps: t.step_names(),
        }
    }
}

/// A word given inline: action names separated by whitespace.
pub fn parse_word(text: &str) -> Vec<String> {
    text.split_whitespace().map(str::to_string).collect()
}

// Grammars.

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrammarDoc {
    #[serde(rename = "M")]
    pub m: GraphDoc,
    #[serde(rename = "Gamma")]
    pub gamma: GraphDoc,
    #[serde(rename = "sortMap")]
    pub sort_map: BTreeMap<String, String>,
    #[serde(rename = "boxMap")]
    pub box_map: BTreeMap<String, String>,
    pub initial: Value,
    #[serde(rename = "final")]
    pub final_word: Value,
}

fn boundary_word(field: &str, v: &Value) -> Result<Vec<String>> {
    match v {
        Value::Array(items) if items.iter().all(Value::is_string) => Ok(items
            .iter()
            .map(|s| s.as_str().expect("checked").to_string())
            .collect()),
        Value::Array(_) | Value::Object(_) => Err(GrammarError::UnsupportedBoundaryLanguage(format!(
            "`{field}` must be a single word of sort names"
        ))
        .into()),
        _ => Err(JsonError::Parse(format!("`{field}` must be an array of sort names"))),
    }
}

impl GrammarDoc {
    pub fn to_grammar(&self) -> Result<Grammar> {
        let m = Arc::new(self.m.to_graph()?);
        let gamma = Arc::new(self.gamma.to_graph()?);
        let phi = GraphMorphism::from_names(m, gamma, &self.sort_map, &self.box_map)?;
        let initial = boundary_word("initial", &self.initial)?;
        let final_word = boundary_word("final", &self.final_word)?;
        Ok(Grammar::from_names(phi, &initial, &final_word)?)
    }

    pub fn from_grammar(g: &Grammar) -> Self {
        let (m, gamma, phi) = (g.productions(), g.alphabet(), g.morphism());
        let names = |w: &[SortId]| Value::from(m.sort_names(w));
        GrammarDoc {
            m: GraphDoc::from_graph(m),
            gamma: GraphDoc::from_graph(gamma),
            sort_map: m
                .sort_ids()
                .map(|s| (m.sort_name(s).to_string(), gamma.sort_name(phi.sort_image(s)).to_string()))
                .collect(),
            box_map: m
                .gen_ids()
                .map(|b| (m.gen(b).name.clone(), gamma.gen(phi.box_image(b)).name.clone()))
                .collect(),
            initial: names(g.initial()),
            final_word: names(g.final_word()),
        }
    }
}

// Automata.

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionDoc {
    #[serde(rename = "in")]
    pub inputs: Vec<String>,
    #[serde(rename = "out")]
    pub outputs: Vec<String>,
}

/// A state word as `[sort, state]` pairs.
pub type StateWordDoc = Vec<(String, String)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidalAutomatonDoc {
    #[serde(default)]
    pub alphabet: String,
    pub states: BTreeMap<String, Vec<String>>,
    pub transitions: BTreeMap<String, Vec<TransitionDoc>>,
    pub initial: StateWordDoc,
    #[serde(rename = "final", default, skip_serializing_if = "Option::is_none")]
    pub final_word: Option<StateWordDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finals: Option<Vec<StateWordDoc>>,
}

impl MonoidalAutomatonDoc {
    pub fn to_automaton(&self, alphabet: Arc<MonoidalGraph>) -> Result<MonoidalAutomaton> {
        check_name(alphabet.name(), &self.alphabet)?;
        for sort in self.states.keys() {
            alphabet.sort(sort)?;
        }
        let states: Vec<Vec<String>> = alphabet
            .sorts()
            .iter()
            .map(|s| self.states.get(s).cloned().unwrap_or_default())
            .collect();
        let finals: Vec<&StateWordDoc> = self.final_word.iter().chain(self.finals.iter().flatten()).collect();
        // State words are resolved against a transition-free automaton first.
        let probe = MonoidalAutomaton::new(alphabet.clone(), states.clone(), StateWord::default(), [])?;
        let initial = probe.state_word(&self.initial)?;
        let finals = finals
            .into_iter()
            .map(|w| probe.state_word(w))
            .collect::<Result<Vec<_>, _>>()?;
        let mut a = MonoidalAutomaton::new(alphabet, states, initial, finals)?;
        for (generator, list) in &self.transitions {
            for t in list {
                a.add_transition_names(generator, &t.inputs, &t.outputs)?;
            }
        }
        Ok(a)
    }

    /// A single final word is written as `final`, any other number as `finals`.
    pub fn from_automaton(a: &MonoidalAutomaton) -> Self {
        let g = a.alphabet();
        let word = |w: &StateWord| -> StateWordDoc {
            w.0.iter()
                .map(|(s, q)| (g.sort_name(*s).to_string(), a.state_name(*s, *q).to_string()))
                .collect()
        };
        let mut transitions = BTreeMap::new();
        for id in g.gen_ids() {
            let b = g.gen(id);
            let name_along = |profile: &[SortId], tuple: &[usize]| -> Vec<String> {
                profile.iter().zip(tuple).map(|(s, q)| a.state_name(*s, *q).to_string()).collect()
            };
            let list: Vec<TransitionDoc> = a
                .relation(id)
                .iter()
                .flat_map(|(ins, outs)| {
                    outs.iter().map(|o| TransitionDoc {
                        inputs: name_along(&b.arity, ins),
                        outputs: name_along(&b.coarity, o),
                    })
                })
                .collect();
            if !list.is_empty() {
                transitions.insert(b.name.clone(), list);
            }
        }
        let finals: Vec<StateWordDoc> = a.finals().iter().map(word).collect();
        let (final_word, finals) = if finals.len() == 1 {
            (finals.into_iter().next(), None)
        } else {
            (None, Some(finals))
        };
        MonoidalAutomatonDoc {
            alphabet: g.name().to_string(),
            states: g
                .sort_ids()
                .map(|s| (g.sort_name(s).to_string(), a.states()[s.0].clone()))
                .collect(),
            transitions,
            initial: word(a.initial()),
            final_word,
            finals,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsyncAutomatonDoc {
    pub distribution: DistributionDoc,
    pub states: Vec<Vec<String>>,
    pub transitions: BTreeMap<String, Vec<TransitionDoc>>,
    pub initial: Vec<String>,
    #[serde(rename = "final")]
    pub finals: Vec<Vec<String>>,
}

impl AsyncAutomatonDoc {
    pub fn to_automaton(&self) -> Result<AsyncAutomaton> {
        let distribution = self.distribution.to_distribution()?;
        let global = |a: &AsyncAutomaton, names: &[String]| -> Result<Vec<usize>> {
            if names.len() != a.states().len() {
                return Err(AutomatonError::ProfileMismatch(format!(
                    "global state has {} components, expected {}",
                    names.len(),
                    a.states().len()
                ))
                .into());
            }
            Ok(names
                .iter()
                .enumerate()
                .map(|(i, n)| a.state_index(i, n))
                .collect::<Result<Vec<_>, _>>()?)
        };
        // State names are resolved against an automaton started anywhere.
        let probe = AsyncAutomaton::new(distribution.clone(), self.states.clone(), vec![0; self.states.len()])?;
        let initial = global(&probe, &self.initial)?;
        let mut a = AsyncAutomaton::new(distribution, self.states.clone(), initial)?;
        for f in &self.finals {
            let q = global(&a, f)?;
            a.add_final(q)?;
        }
        for (action, list) in &self.transitions {
            let id = a.action(action)?;
            let loc: Vec<usize> = a.alphabet().graph().gen(id).arity.iter().map(|s| s.0).collect();
            let local = |a: &AsyncAutomaton, names: &[String]| -> Result<Vec<usize>> {
                if names.len() != loc.len() {
                    return Err(AutomatonError::ProfileMismatch(format!(
                        "local tuple of `{action}` has {} states for {} locations",
                        names.len(),
                        loc.len()
                    ))
                    .into());
                }
                Ok(loc
                    .iter()
                    .zip(names)
                    .map(|(l, n)| a.state_index(*l, n))
                    .collect::<Result<Vec<_>, _>>()?)
            };
            for t in list {
                let (from, to) = (local(&a, &t.inputs)?, local(&a, &t.outputs)?);
                a.add_transition(id, from, to)?;
            }
        }
        Ok(a)
    }

    pub fn from_automaton(a: &AsyncAutomaton) -> Self {
        let graph = a.alphabet().graph();
        let global = |q: &[usize]| -> Vec<String> {
            q.iter().enumerate().map(|(i, s)| a.states()[i][*s].clone()).collect()
        };
        let mut transitions = BTreeMap::new();
        for id in graph.gen_ids() {
            let loc = &graph.gen(id).arity;
            let local = |t: &[usize]| -> Vec<String> {
                loc.iter().zip(t).map(|(l, s)| a.states()[l.0][*s].clone()).collect()
            };
            let list: Vec<TransitionDoc> = a.transitions()[id.0]
                .iter()
                .flat_map(|(from, tos)| {
                    tos.iter().map(|to| TransitionDoc {
                        inputs: local(from),
                        outputs: local(to),
                    })
                })
                .collect();
            if !list.is_empty() {
                transitions.insert(graph.gen(id).name.clone(), list);
            }
        }
        AsyncAutomatonDoc {
            distribution: DistributionDoc::from_distribution(a.distribution()),
            states: a.states().to_vec(),
            transitions,
            initial: global(a.initial()),
            finals: a.finals().iter().map(|q| global(q)).collect(),
        }
    }
}

/// Sorted, deduplicated names; used for printing sets.
pub fn sorted_names<I: IntoIterator<Item = String>>(names: I) -> Vec<String> {
    names.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::async_to_monoidal;

    const ABC: &str = r#"{"name":"abc","sorts":["1","2"],"boxes":[
        {"name":"a","arity":["1"],"coarity":["1"]},
        {"name":"b","arity":["2"],"coarity":["2"]},
        {"name":"c","arity":["1","2"],"coarity":["1","2"]}]}"#;

    fn abc() -> Arc<MonoidalGraph> {
        Arc::new(parse::<GraphDoc>(ABC).unwrap().to_graph().unwrap())
    }

    #[test]
    fn graph_round_trip() {
        let doc: GraphDoc = parse(ABC).unwrap();
        let g = doc.to_graph().unwrap();
        assert_eq!(GraphDoc::from_graph(&g), doc);
        assert_eq!(parse::<GraphDoc>(&print(&doc)).unwrap(), doc);
        assert!(doc.to_alphabet().is_ok());
    }

    #[test]
    fn malformed_documents_are_parse_errors() {
        assert!(parse::<GraphDoc>("{").unwrap_err().is_parse_error());
        assert!(parse::<GraphDoc>(r#"{"sorts":[1],"boxes":[]}"#).unwrap_err().is_parse_error());
        let dup = parse::<GraphDoc>(r#"{"sorts":["x","x"],"boxes":[]}"#).unwrap();
        assert_eq!(
            dup.to_graph().unwrap_err(),
            JsonError::Signature(SignatureError::DuplicateSort("x".into()))
        );
    }

    #[test]
    fn independence_and_distribution() {
        let doc: IndependenceDoc =
            parse(r#"{"alphabet":["a","b","c"],"pairs":[["c","a"]]}"#).unwrap();
        let rel = doc.to_relation().unwrap();
        assert!(rel.contains("a", "c"));
        let back = IndependenceDoc::from_relation(&rel);
        assert_eq!(back.pairs, vec![["a".to_string(), "c".to_string()]]);
        let d: DistributionDoc = parse(r#"{"components":[["a","b"],["b","c"]]}"#).unwrap();
        assert_eq!(DistributionDoc::from_distribution(&d.to_distribution().unwrap()), d);
    }

    #[test]
    fn diagram_round_trip() {
        let g = abc();
        let text = r#"{"signature":"abc","dom":["1","2"],"cod":["1","2"],
            "nodes":[{"id":"x","generator":"c"},{"id":"y","generator":"a"}],
            "wires":[
              {"sort":"1","from":{"boundary":0},"to":{"node":"y","port":0,"side":"in"}},
              {"sort":"1","from":{"node":"y","port":0,"side":"out"},"to":{"node":"x","port":0,"side":"in"}},
              {"sort":"2","from":{"boundary":1},"to":{"node":"x","port":1,"side":"in"}},
              {"sort":"1","from":{"node":"x","port":0,"side":"out"},"to":{"boundary":0}},
              {"sort":"2","from":{"node":"x","port":1,"side":"out"},"to":{"boundary":1}}]}"#;
        let doc: DiagramDoc = parse(text).unwrap();
        let d = doc.to_diagram(g.clone()).unwrap();
        assert_eq!(d.node_count(), 2);
        let printed = DiagramDoc::from_diagram(&d);
        let again = printed.to_diagram(g.clone()).unwrap();
        assert!(again.equals(&d).unwrap());
        assert_eq!(DiagramDoc::from_diagram(&again), printed);
        assert_eq!(parse::<DiagramDoc>(&print(&printed)).unwrap(), printed);
        let inferred = doc.infer_signature().unwrap();
        assert_eq!(inferred.sorts(), &["1", "2"]);
        assert_eq!(inferred.boxes().len(), 2);
    }

    #[test]
    fn diagram_errors() {
        let g = abc();
        let base = |wires: &str| {
            format!(
                r#"{{"signature":"abc","dom":["1"],"cod":["1"],"nodes":[{{"id":"y","generator":"a"}}],"wires":{wires}}}"#
            )
        };
        let missing = parse::<DiagramDoc>(&base("[]")).unwrap();
        assert!(matches!(
            missing.to_diagram(g.clone()),
            Err(JsonError::Diagram(DiagramError::PortIncidence(_)))
        ));
        let wrong_sort = parse::<DiagramDoc>(&base(
            r#"[{"sort":"2","from":{"boundary":0},"to":{"node":"y","port":0,"side":"in"}},
               {"sort":"1","from":{"node":"y","port":0,"side":"out"},"to":{"boundary":0}}]"#,
        ))
        .unwrap();
        assert!(matches!(
            wrong_sort.to_diagram(g.clone()),
            Err(JsonError::Diagram(DiagramError::WireSortMismatch(_)))
        ));
        let mut renamed = missing.clone();
        renamed.signature = "other".into();
        assert!(matches!(
            renamed.to_diagram(g),
            Err(JsonError::NameMismatch { .. })
        ));
    }

    #[test]
    fn trace_round_trip() {
        let alpha = Arc::new(DistributedAlphabet::validate(abc()).unwrap());
        let doc: TraceDoc = parse(r#"{"alphabet":"abc","steps":[["b","a"],["c"]]}"#).unwrap();
        let t = doc.to_trace(&alpha).unwrap();
        let back = TraceDoc::from_trace(&t);
        assert_eq!(back.steps, vec![vec!["a", "b"], vec!["c"]]);
        assert_eq!(parse_word("  a  b\tc "), vec!["a", "b", "c"]);
    }

    #[test]
    fn grammar_documents() {
        let g = crate::grammar::circuit_grammar();
        let doc = GrammarDoc::from_grammar(&g);
        let text = print(&doc);
        assert!(text.contains("\"sortMap\""));
        let back: GrammarDoc = parse(&text).unwrap();
        assert_eq!(back.to_grammar().unwrap(), g);

        let mut regular = doc.clone();
        regular.initial = serde_json::json!([["S"], ["S", "S"]]);
        assert!(matches!(
            regular.to_grammar(),
            Err(JsonError::Grammar(GrammarError::UnsupportedBoundaryLanguage(_)))
        ));
    }

    #[test]
    fn automaton_documents() {
        let text = r#"{"distribution":{"components":[["a","c"],["b","c"]]},
            "states":[["p0","p1"],["q0","q1"]],
            "transitions":{"a":[{"in":["p0"],"out":["p1"]}],"b":[{"in":["q0"],"out":["q1"]}],
                           "c":[{"in":["p1","q1"],"out":["p0","q0"]}]},
            "initial":["p0","q0"],"final":[["p0","q0"],["p1","q1"]]}"#;
        let doc: AsyncAutomatonDoc = parse(text).unwrap();
        let a = doc.to_automaton().unwrap();
        assert!(a.accepts_names(&["a", "b"]).unwrap());
        assert_eq!(AsyncAutomatonDoc::from_automaton(&a), doc);

        let m = async_to_monoidal(&a);
        let mdoc = MonoidalAutomatonDoc::from_automaton(&m);
        assert!(mdoc.final_word.is_none());
        assert_eq!(mdoc.finals.as_ref().unwrap().len(), 2);
        let back = parse::<MonoidalAutomatonDoc>(&print(&mdoc)).unwrap();
        assert_eq!(back.to_automaton(m.alphabet().clone()).unwrap(), m);

        let single = r#"{"alphabet":"","states":{"1":["p"],"2":["q"]},"transitions":{},
            "initial":[["1","p"],["2","q"]],"final":[["1","p"],["2","q"]]}"#;
        let sdoc: MonoidalAutomatonDoc = parse(single).unwrap();
        let s = sdoc.to_automaton(m.alphabet().clone()).unwrap();
        assert_eq!(s.finals().len(), 1);
        assert_eq!(MonoidalAutomatonDoc::from_automaton(&s), sdoc);
    }
}
