//! Canonical labelling of boundary-anchored port graphs.
//!
//! Box ports are ordered, so once one node of a connected component is
//! placed, a breadth-first walk over ports fixes the numbering of the whole
//! component. Components touching the boundary are numbered by a walk seeded
//! from the domain then codomain positions. Floating components (closed
//! subdiagrams such as scalars) are each numbered from whichever root yields
//! the lexicographically least encoding, and then sorted.

use std::collections::VecDeque;

use super::{Consumers, Diagram, Source, Target};
use crate::signature::{GenId, SortId};

/// A complete invariant of a diagram up to equality in the free prop.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    dom: Vec<SortId>,
    cod: Vec<SortId>,
    nodes: Vec<(GenId, Vec<Source>)>,
    outputs: Vec<Source>,
}

impl CanonicalForm {
    /// Flat byte encoding; equal forms give identical bytes.
    pub fn encoding(&self) -> Vec<u8> {
        let mut out = Vec::new();
        let mut put = |v: usize| out.extend_from_slice(&(v as u32).to_le_bytes());
        let source = |s: &Source| match s {
            Source::Dom(i) => (0, *i, 0),
            Source::Node { node, port } => (1, *node, *port),
        };
        put(self.dom.len());
        self.dom.iter().for_each(|s| put(s.0));
        put(self.cod.len());
        self.cod.iter().for_each(|s| put(s.0));
        put(self.nodes.len());
        for (g, inputs) in &self.nodes {
            put(g.0);
            put(inputs.len());
            for s in inputs {
                let (tag, a, b) = source(s);
                put(tag);
                put(a);
                put(b);
            }
        }
        for s in &self.outputs {
            let (tag, a, b) = source(s);
            put(tag);
            put(a);
            put(b);
        }
        out
    }

    pub fn node_labels(&self) -> impl Iterator<Item = GenId> + '_ {
        self.nodes.iter().map(|(g, _)| *g)
    }
}

struct Walk<'a> {
    diagram: &'a Diagram,
    consumers: &'a Consumers,
    label: Vec<Option<usize>>,
    order: Vec<usize>,
    queue: VecDeque<usize>,
}

impl<'a> Walk<'a> {
    fn new(diagram: &'a Diagram, consumers: &'a Consumers) -> Self {
        Walk {
            diagram,
            consumers,
            label: vec![None; diagram.nodes.len()],
            order: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    fn visit(&mut self, node: usize) {
        if self.label[node].is_none() {
            self.label[node] = Some(self.order.len());
            self.order.push(node);
            self.queue.push_back(node);
        }
    }

    fn run(&mut self) {
        while let Some(node) = self.queue.pop_front() {
            for i in 0..self.diagram.nodes[node].inputs.len() {
                if let Source::Node { node: pred, .. } = self.diagram.nodes[node].inputs[i] {
                    self.visit(pred);
                }
            }
            for port in 0..self.diagram.output_arity(node) {
                if let Target::Node { node: succ, .. } =
                    self.consumers.of(Source::Node { node, port })
                {
                    self.visit(succ);
                }
            }
        }
    }
}

fn relabel(source: Source, label: &dyn Fn(usize) -> usize) -> Source {
    match source {
        Source::Dom(i) => Source::Dom(i),
        Source::Node { node, port } => Source::Node {
            node: label(node),
            port,
        },
    }
}

fn encode_nodes(diagram: &Diagram, order: &[usize]) -> Vec<(GenId, Vec<Source>)> {
    let mut local = vec![usize::MAX; diagram.nodes.len()];
    for (i, n) in order.iter().enumerate() {
        local[*n] = i;
    }
    order
        .iter()
        .map(|n| {
            let node = &diagram.nodes[*n];
            let inputs = node
                .inputs
                .iter()
                .map(|s| relabel(*s, &|x| local[x]))
                .collect();
            (node.generator, inputs)
        })
        .collect()
}

/// Node order (canonical position -> node index) of the canonical labelling.
pub(crate) fn canonical_order(diagram: &Diagram) -> Vec<usize> {
    let consumers = diagram.consumers();
    let mut walk = Walk::new(diagram, &consumers);
    for j in 0..diagram.dom.len() {
        if let Target::Node { node, .. } = consumers.dom[j] {
            walk.visit(node);
        }
    }
    for j in 0..diagram.outputs.len() {
        if let Source::Node { node, .. } = diagram.outputs[j] {
            walk.visit(node);
        }
    }
    walk.run();
    let mut order = walk.order;
    let mut placed: Vec<bool> = walk.label.iter().map(Option::is_some).collect();

    let mut floating: Vec<(Vec<(GenId, Vec<Source>)>, Vec<usize>)> = Vec::new();
    for start in 0..diagram.nodes.len() {
        if placed[start] {
            continue;
        }
        let mut component = Walk::new(diagram, &consumers);
        component.visit(start);
        component.run();
        let members = component.order;
        let mut best: Option<(Vec<(GenId, Vec<Source>)>, Vec<usize>)> = None;
        for &root in &members {
            let mut rooted = Walk::new(diagram, &consumers);
            rooted.visit(root);
            rooted.run();
            let code = encode_nodes(diagram, &rooted.order);
            if best.as_ref().map_or(true, |(b, _)| code < *b) {
                best = Some((code, rooted.order));
            }
        }
        for &m in &members {
            placed[m] = true;
        }
        floating.push(best.expect("component has a node"));
    }
    floating.sort();
    order.extend(floating.into_iter().flat_map(|(_, o)| o));
    order
}

pub(crate) fn canonical_form(diagram: &Diagram) -> CanonicalForm {
    let order = canonical_order(diagram);
    let mut label = vec![0; diagram.nodes.len()];
    for (i, n) in order.iter().enumerate() {
        label[*n] = i;
    }
    CanonicalForm {
        dom: diagram.dom.clone(),
        cod: diagram.cod.clone(),
        nodes: encode_nodes(diagram, &order),
        outputs: diagram
            .outputs
            .iter()
            .map(|s| relabel(*s, &|x| label[x]))
            .collect(),
    }
}
