//! String diagrams of the free prop on a monoidal graph.
//!
//! A [`Diagram`] is stored as an acyclic port graph anchored at its two
//! boundaries. Every consumer port (a codomain position or a node input)
//! records the producer port (a domain position or a node output) its wire
//! comes from; since each port carries exactly one wire this is a bijection.
//! Two diagrams are equal in the free prop iff their port graphs are
//! isomorphic relative to the boundaries, which [`canonical`] decides.

pub mod canonical;
pub mod dot;

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::signature::{DistributedAlphabet, GenId, MonoidalGraph, SortId};

pub use canonical::CanonicalForm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("UnknownSort: {0}")]
    UnknownSort(String),
    #[error("UnknownGenerator: {0}")]
    UnknownGenerator(String),
    #[error("BoundaryMismatch: codomain {left:?} does not match domain {right:?}")]
    BoundaryMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("SignatureMismatch: diagrams are over different signatures")]
    SignatureMismatch,
    #[error("NotAPermutation: {0:?} is not a permutation of the positions")]
    NotAPermutation(Vec<usize>),
    #[error("BoundaryNotFull: {0}")]
    BoundaryNotFull(String),
    #[error("PortIncidence: {0}")]
    PortIncidence(String),
    #[error("WireSortMismatch: {0}")]
    WireSortMismatch(String),
    #[error("Cyclic: the wiring contains a directed cycle")]
    Cyclic,
}

pub type Result<T, E = DiagramError> = std::result::Result<T, E>;

/// Where a wire starts: a domain position or an output port of a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    Dom(usize),
    Node { node: usize, port: usize },
}

/// Where a wire ends: a codomain position or an input port of a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    Cod(usize),
    Node { node: usize, port: usize },
}

/// A box instance and the sources feeding each of its input ports.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Node {
    pub generator: GenId,
    pub inputs: Vec<Source>,
}

#[derive(Debug, Clone)]
pub struct Diagram {
    signature: Arc<MonoidalGraph>,
    dom: Vec<SortId>,
    cod: Vec<SortId>,
    nodes: Vec<Node>,
    outputs: Vec<Source>,
}

/// Reverse wiring: the consumer of every producer port.
pub(crate) struct Consumers {
    pub dom: Vec<Target>,
    pub nodes: Vec<Vec<Target>>,
}

impl Consumers {
    pub fn of(&self, source: Source) -> Target {
        match source {
            Source::Dom(i) => self.dom[i],
            Source::Node { node, port } => self.nodes[node][port],
        }
    }
}

fn check_sorts(signature: &MonoidalGraph, word: &[SortId]) -> Result<()> {
    match word.iter().find(|s| !signature.has_sort(**s)) {
        Some(s) => Err(DiagramError::UnknownSort(s.to_string())),
        None => Ok(()),
    }
}

fn same_signature(a: &Arc<MonoidalGraph>, b: &Arc<MonoidalGraph>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Diagram {
    /// Builds a diagram from raw wiring, checking port incidence, wire
    /// sorts and acyclicity.
    pub fn from_parts(
        signature: Arc<MonoidalGraph>,
        dom: Vec<SortId>,
        cod: Vec<SortId>,
        nodes: Vec<Node>,
        outputs: Vec<Source>,
    ) -> Result<Self> {
        check_sorts(&signature, &dom)?;
        check_sorts(&signature, &cod)?;
        if outputs.len() != cod.len() {
            return Err(DiagramError::PortIncidence(format!(
                "{} codomain positions but {} wires reach the codomain",
                cod.len(),
                outputs.len()
            )));
        }
        for node in &nodes {
            if !signature.has_gen(node.generator) {
                return Err(DiagramError::UnknownGenerator(node.generator.to_string()));
            }
            let arity = signature.gen(node.generator).arity.len();
            if node.inputs.len() != arity {
                return Err(DiagramError::PortIncidence(format!(
                    "node of `{}` has {} input wires, expected {}",
                    signature.gen(node.generator).name,
                    node.inputs.len(),
                    arity
                )));
            }
        }
        let diagram = Diagram {
            signature,
            dom,
            cod,
            nodes,
            outputs,
        };
        diagram.validate()?;
        Ok(diagram)
    }

    fn validate(&self) -> Result<()> {
        let mut used_dom = vec![false; self.dom.len()];
        let mut used_out: Vec<Vec<bool>> = self
            .nodes
            .iter()
            .map(|n| vec![false; self.signature.gen(n.generator).coarity.len()])
            .collect();
        let consumers = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(i, n)| {
                n.inputs.iter().enumerate().map(move |(p, s)| {
                    (*s, Target::Node { node: i, port: p })
                })
            })
            .chain(
                self.outputs
                    .iter()
                    .enumerate()
                    .map(|(j, s)| (*s, Target::Cod(j))),
            );
        for (source, target) in consumers {
            let slot = match source {
                Source::Dom(i) => used_dom.get_mut(i),
                Source::Node { node, port } => {
                    used_out.get_mut(node).and_then(|ports| ports.get_mut(port))
                }
            };
            let slot = slot.ok_or_else(|| {
                DiagramError::PortIncidence(format!("wire from nonexistent port {source:?}"))
            })?;
            if *slot {
                return Err(DiagramError::PortIncidence(format!(
                    "port {source:?} feeds more than one wire"
                )));
            }
            *slot = true;
            if self.source_sort(source) != self.target_sort(target) {
                return Err(DiagramError::WireSortMismatch(format!(
                    "wire {source:?} -> {target:?} joins sort `{}` to `{}`",
                    self.signature.sort_name(self.source_sort(source)),
                    self.signature.sort_name(self.target_sort(target)),
                )));
            }
        }
        let dangling = used_dom
            .iter()
            .position(|u| !u)
            .map(Source::Dom)
            .or_else(|| {
                used_out.iter().enumerate().find_map(|(node, ports)| {
                    ports
                        .iter()
                        .position(|u| !u)
                        .map(|port| Source::Node { node, port })
                })
            });
        if let Some(port) = dangling {
            return Err(DiagramError::PortIncidence(format!(
                "port {port:?} has no wire"
            )));
        }
        if self.topological_order_by(|i| i).len() != self.nodes.len() {
            return Err(DiagramError::Cyclic);
        }
        Ok(())
    }

    /// The identity on a sort word: one straight wire per position.
    pub fn identity(signature: Arc<MonoidalGraph>, word: &[SortId]) -> Result<Self> {
        check_sorts(&signature, word)?;
        Ok(Diagram {
            signature,
            dom: word.to_vec(),
            cod: word.to_vec(),
            nodes: Vec::new(),
            outputs: (0..word.len()).map(Source::Dom).collect(),
        })
    }

    /// The empty diagram on the monoidal unit.
    pub fn empty(signature: Arc<MonoidalGraph>) -> Self {
        Self::identity(signature, &[]).expect("empty word is well sorted")
    }

    /// A single box.
    pub fn generator(signature: Arc<MonoidalGraph>, id: GenId) -> Result<Self> {
        if !signature.has_gen(id) {
            return Err(DiagramError::UnknownGenerator(id.to_string()));
        }
        let g = signature.gen(id).clone();
        Ok(Diagram {
            dom: g.arity.clone(),
            cod: g.coarity.clone(),
            nodes: vec![Node {
                generator: id,
                inputs: (0..g.arity.len()).map(Source::Dom).collect(),
            }],
            outputs: (0..g.coarity.len())
                .map(|port| Source::Node { node: 0, port })
                .collect(),
            signature,
        })
    }

    /// The symmetry `left . right -> right . left`, crossing the two blocks.
    pub fn symmetry(
        signature: Arc<MonoidalGraph>,
        left: &[SortId],
        right: &[SortId],
    ) -> Result<Self> {
        let word: Vec<SortId> = left.iter().chain(right).copied().collect();
        let (m, n) = (left.len(), right.len());
        let perm: Vec<usize> = (0..m + n)
            .map(|i| if i < m { n + i } else { i - m })
            .collect();
        Self::permutation(signature, &word, &perm)
    }

    /// Wire `i` runs from domain position `i` to codomain position `perm[i]`.
    pub fn permutation(
        signature: Arc<MonoidalGraph>,
        word: &[SortId],
        perm: &[usize],
    ) -> Result<Self> {
        check_sorts(&signature, word)?;
        let n = word.len();
        let mut outputs = vec![None; n];
        if perm.len() != n {
            return Err(DiagramError::NotAPermutation(perm.to_vec()));
        }
        for (i, &p) in perm.iter().enumerate() {
            match outputs.get_mut(p) {
                Some(slot @ None) => *slot = Some(Source::Dom(i)),
                _ => return Err(DiagramError::NotAPermutation(perm.to_vec())),
            }
        }
        let mut cod = vec![SortId(0); n];
        for (i, &p) in perm.iter().enumerate() {
            cod[p] = word[i];
        }
        Ok(Diagram {
            signature,
            dom: word.to_vec(),
            cod,
            nodes: Vec::new(),
            outputs: outputs.into_iter().map(Option::unwrap).collect(),
        })
    }

    /// Sequential composition in diagrammatic order: `self` first.
    pub fn compose(&self, next: &Diagram) -> Result<Self> {
        if !same_signature(&self.signature, &next.signature) {
            return Err(DiagramError::SignatureMismatch);
        }
        if self.cod != next.dom {
            return Err(DiagramError::BoundaryMismatch {
                left: self.signature.sort_names(&self.cod),
                right: self.signature.sort_names(&next.dom),
            });
        }
        let offset = self.nodes.len();
        let relink = |s: Source| match s {
            Source::Dom(i) => self.outputs[i],
            Source::Node { node, port } => Source::Node {
                node: node + offset,
                port,
            },
        };
        let mut nodes = self.nodes.clone();
        nodes.extend(next.nodes.iter().map(|n| Node {
            generator: n.generator,
            inputs: n.inputs.iter().map(|s| relink(*s)).collect(),
        }));
        Ok(Diagram {
            signature: self.signature.clone(),
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            nodes,
            outputs: next.outputs.iter().map(|s| relink(*s)).collect(),
        })
    }

    /// Parallel composition: `self` above `other`.
    pub fn tensor(&self, other: &Diagram) -> Result<Self> {
        if !same_signature(&self.signature, &other.signature) {
            return Err(DiagramError::SignatureMismatch);
        }
        let (dom_offset, node_offset) = (self.dom.len(), self.nodes.len());
        let shift = |s: Source| match s {
            Source::Dom(i) => Source::Dom(i + dom_offset),
            Source::Node { node, port } => Source::Node {
                node: node + node_offset,
                port,
            },
        };
        let mut nodes = self.nodes.clone();
        nodes.extend(other.nodes.iter().map(|n| Node {
            generator: n.generator,
            inputs: n.inputs.iter().map(|s| shift(*s)).collect(),
        }));
        let mut outputs = self.outputs.clone();
        outputs.extend(other.outputs.iter().map(|s| shift(*s)));
        Ok(Diagram {
            signature: self.signature.clone(),
            dom: [self.dom.as_slice(), &other.dom].concat(),
            cod: [self.cod.as_slice(), &other.cod].concat(),
            nodes,
            outputs,
        })
    }

    /// Composes a non-empty sequence in diagrammatic order.
    pub fn compose_all<'a>(diagrams: impl IntoIterator<Item = &'a Diagram>) -> Result<Self> {
        let mut iter = diagrams.into_iter();
        let first = iter
            .next()
            .ok_or_else(|| DiagramError::BoundaryNotFull("empty composite".into()))?
            .clone();
        iter.try_fold(first, |acc, d| acc.compose(d))
    }

    pub fn signature(&self) -> &Arc<MonoidalGraph> {
        &self.signature
    }

    pub fn dom(&self) -> &[SortId] {
        &self.dom
    }

    pub fn cod(&self) -> &[SortId] {
        &self.cod
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn outputs(&self) -> &[Source] {
        &self.outputs
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub(crate) fn source_sort(&self, source: Source) -> SortId {
        match source {
            Source::Dom(i) => self.dom[i],
            Source::Node { node, port } => {
                self.signature.gen(self.nodes[node].generator).coarity[port]
            }
        }
    }

    pub(crate) fn target_sort(&self, target: Target) -> SortId {
        match target {
            Target::Cod(j) => self.cod[j],
            Target::Node { node, port } => {
                self.signature.gen(self.nodes[node].generator).arity[port]
            }
        }
    }

    pub(crate) fn output_arity(&self, node: usize) -> usize {
        self.signature.gen(self.nodes[node].generator).coarity.len()
    }

    pub(crate) fn consumers(&self) -> Consumers {
        let mut dom = vec![Target::Cod(usize::MAX); self.dom.len()];
        let mut nodes: Vec<Vec<Target>> = (0..self.nodes.len())
            .map(|i| vec![Target::Cod(usize::MAX); self.output_arity(i)])
            .collect();
        let mut record = |s: Source, t: Target| match s {
            Source::Dom(i) => dom[i] = t,
            Source::Node { node, port } => nodes[node][port] = t,
        };
        for (i, n) in self.nodes.iter().enumerate() {
            for (p, s) in n.inputs.iter().enumerate() {
                record(*s, Target::Node { node: i, port: p });
            }
        }
        for (j, s) in self.outputs.iter().enumerate() {
            record(*s, Target::Cod(j));
        }
        Consumers { dom, nodes }
    }

    /// Kahn's algorithm; among ready nodes the smallest `key` goes first.
    /// Returns fewer than `node_count` nodes iff the wiring is cyclic.
    pub(crate) fn topological_order_by<K: Ord>(&self, key: impl Fn(usize) -> K) -> Vec<usize> {
        let n = self.nodes.len();
        let mut pending: Vec<usize> = self
            .nodes
            .iter()
            .map(|node| {
                node.inputs
                    .iter()
                    .filter(|s| matches!(s, Source::Node { .. }))
                    .count()
            })
            .collect();
        let mut successors: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, node) in self.nodes.iter().enumerate() {
            for s in &node.inputs {
                if let Source::Node { node: pred, .. } = s {
                    if *pred < n {
                        successors[*pred].push(i);
                    }
                }
            }
        }
        let mut ready: BTreeSet<(K, usize)> = (0..n)
            .filter(|i| pending[*i] == 0)
            .map(|i| (key(i), i))
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some((k, i)) = ready.pop_first() {
            drop(k);
            order.push(i);
            for &succ in &successors[i] {
                pending[succ] -= 1;
                if pending[succ] == 0 {
                    ready.insert((key(succ), succ));
                }
            }
        }
        order
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        canonical::canonical_form(self)
    }

    /// Equality in the free prop: same boundaries and isomorphic wiring.
    pub fn equals(&self, other: &Diagram) -> Result<bool> {
        if !same_signature(&self.signature, &other.signature) {
            return Err(DiagramError::SignatureMismatch);
        }
        if self.dom != other.dom
            || self.cod != other.cod
            || self.nodes.len() != other.nodes.len()
        {
            return Ok(false);
        }
        Ok(self.canonical_form() == other.canonical_form())
    }

    pub fn to_dot(&self) -> String {
        dot::to_dot(self)
    }
}

/// Wire positions occupied by `arity` inside `boundary`, in order, provided
/// `arity` is a subsequence of a boundary whose sorts are pairwise distinct.
fn embedding_positions(boundary: &[SortId], arity: &[SortId]) -> Option<Vec<usize>> {
    let distinct: BTreeSet<_> = boundary.iter().collect();
    if distinct.len() != boundary.len() {
        return None;
    }
    let positions: Vec<usize> = arity
        .iter()
        .map(|s| boundary.iter().position(|b| b == s))
        .collect::<Option<_>>()?;
    positions.windows(2).all(|w| w[0] < w[1]).then_some(positions)
}

/// The generator `id` acting on its own wires of `boundary`, everything else
/// passing straight through: a block permutation bringing those wires to the
/// top (keeping relative order on both sides), the box tensored with
/// identities, then the inverse permutation.
pub fn embed_generator(
    signature: Arc<MonoidalGraph>,
    boundary: &[SortId],
    id: GenId,
) -> Result<Diagram> {
    if !signature.has_gen(id) {
        return Err(DiagramError::UnknownGenerator(id.to_string()));
    }
    let g = signature.gen(id).clone();
    let positions = (g.arity == g.coarity)
        .then(|| embedding_positions(boundary, &g.arity))
        .flatten()
        .ok_or_else(|| {
            DiagramError::BoundaryNotFull(format!(
                "`{}` cannot act on boundary {:?}",
                g.name,
                signature.sort_names(boundary)
            ))
        })?;
    let n = boundary.len();
    let chosen = positions.len();
    let mut perm = vec![0; n];
    let mut rest = Vec::with_capacity(n - chosen);
    let (mut top, mut bottom) = (0, chosen);
    for (i, slot) in perm.iter_mut().enumerate() {
        if positions.contains(&i) {
            *slot = top;
            top += 1;
        } else {
            *slot = bottom;
            bottom += 1;
            rest.push(boundary[i]);
        }
    }
    let mut inverse = vec![0; n];
    for (i, p) in perm.iter().enumerate() {
        inverse[*p] = i;
    }
    let gather = Diagram::permutation(signature.clone(), boundary, &perm)?;
    let act = Diagram::generator(signature.clone(), id)?
        .tensor(&Diagram::identity(signature.clone(), &rest)?)?;
    let scatter = Diagram::permutation(signature, gather.cod(), &inverse)?;
    gather.compose(&act)?.compose(&scatter)
}

/// `N(γ)`: the full-boundary slice containing the single action `γ`.
pub fn build_n(alphabet: &DistributedAlphabet, id: GenId) -> Result<Diagram> {
    embed_generator(alphabet.graph().clone(), &alphabet.full_boundary(), id)
}

/// `N(γ₁) ⊛ … ⊛ N(γ_m)`, or the identity on the full boundary for `m = 0`.
pub fn fold_n(alphabet: &DistributedAlphabet, word: &[GenId]) -> Result<Diagram> {
    let mut acc = Diagram::identity(alphabet.graph().clone(), &alphabet.full_boundary())?;
    for id in word {
        acc = acc.compose(&build_n(alphabet, *id)?)?;
    }
    Ok(acc)
}

/// Slices a full-boundary endomorphism into one generator per slice. Ready
/// nodes are taken by smallest location, then by generator name.
pub fn to_generator_sequence(alphabet: &DistributedAlphabet, d: &Diagram) -> Result<Vec<GenId>> {
    if !same_signature(alphabet.graph(), d.signature()) {
        return Err(DiagramError::SignatureMismatch);
    }
    let full = alphabet.full_boundary();
    if d.dom() != full.as_slice() || d.cod() != full.as_slice() {
        return Err(DiagramError::BoundaryNotFull(format!(
            "expected {:?} -> {:?}, found {:?} -> {:?}",
            d.signature.sort_names(&full),
            d.signature.sort_names(&full),
            d.signature.sort_names(d.dom()),
            d.signature.sort_names(d.cod()),
        )));
    }
    let graph = d.signature();
    let order = d.topological_order_by(|i| {
        let g = graph.gen(d.nodes[i].generator);
        (g.arity.iter().min().copied(), g.name.clone())
    });
    Ok(order.into_iter().map(|i| d.nodes[i].generator).collect())
}
