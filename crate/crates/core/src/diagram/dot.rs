//! Graphviz rendering. Boxes become record nodes with one field per port,
//! boundary positions become points pinned to the first and last rank, and
//! every wire is an edge labelled by its sort. Nodes are numbered by the
//! canonical labelling so equal diagrams render identically.

use std::fmt::Write;

use super::canonical::canonical_order;
use super::{Diagram, Source};

fn escape_record(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        if matches!(c, '{' | '}' | '|' | '<' | '>' | '"' | '\\' | ' ') {
            out.push('\\');
        }
        out.push(c);
    }
    out
}

fn escape_quoted(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn to_dot(diagram: &Diagram) -> String {
    let graph = diagram.signature();
    let order = canonical_order(diagram);
    let mut label = vec![0; diagram.nodes.len()];
    for (i, n) in order.iter().enumerate() {
        label[*n] = i;
    }
    let mut out = String::new();
    out.push_str("digraph diagram {\n  rankdir=LR;\n");
    if !diagram.dom.is_empty() {
        out.push_str("  subgraph dom {\n    rank=source;\n");
        for (i, s) in diagram.dom.iter().enumerate() {
            let _ = writeln!(
                out,
                "    dom{i} [shape=point, xlabel=\"{}\"];",
                escape_quoted(graph.sort_name(*s))
            );
        }
        out.push_str("  }\n");
    }
    for (pos, &n) in order.iter().enumerate() {
        let g = graph.gen(diagram.nodes[n].generator);
        let ins: Vec<String> = (0..g.arity.len()).map(|p| format!("<i{p}>")).collect();
        let outs: Vec<String> = (0..g.coarity.len()).map(|p| format!("<o{p}>")).collect();
        let _ = writeln!(
            out,
            "  n{pos} [shape=record, label=\"{{{{{}}}|{}|{{{}}}}}\"];",
            ins.join("|"),
            escape_record(&g.name),
            outs.join("|")
        );
    }
    if !diagram.cod.is_empty() {
        out.push_str("  subgraph cod {\n    rank=sink;\n");
        for (j, s) in diagram.cod.iter().enumerate() {
            let _ = writeln!(
                out,
                "    cod{j} [shape=point, xlabel=\"{}\"];",
                escape_quoted(graph.sort_name(*s))
            );
        }
        out.push_str("  }\n");
    }
    let from = |s: Source| match s {
        Source::Dom(i) => format!("dom{i}"),
        Source::Node { node, port } => format!("n{}:o{port}", label[node]),
    };
    let mut edges = Vec::new();
    for &n in &order {
        for (p, s) in diagram.nodes[n].inputs.iter().enumerate() {
            let to = format!("n{}:i{p}", label[n]);
            edges.push((from(*s), to, diagram.source_sort(*s)));
        }
    }
    for (j, s) in diagram.outputs.iter().enumerate() {
        edges.push((from(*s), format!("cod{j}"), diagram.source_sort(*s)));
    }
    for (from, to, sort) in edges {
        let _ = writeln!(
            out,
            "  {from} -> {to} [label=\"{}\"];",
            escape_quoted(graph.sort_name(sort))
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::signature::MonoidalGraph;

    #[test]
    fn empty_diagram_is_an_empty_digraph() {
        let g = Arc::new(MonoidalGraph::new(Vec::<String>::new()).unwrap());
        let dot = Diagram::empty(g).to_dot();
        assert_eq!(dot, "digraph diagram {\n  rankdir=LR;\n}\n");
    }

    #[test]
    fn equal_diagrams_render_identically() {
        let g = Arc::new(
            MonoidalGraph::build(&["A", "B"], &[("f", &["A"], &["A"]), ("g", &["B"], &["B"])])
                .unwrap(),
        );
        let f = Diagram::generator(g.clone(), g.generator("f").unwrap()).unwrap();
        let k = Diagram::generator(g.clone(), g.generator("g").unwrap()).unwrap();
        let ia = Diagram::identity(g.clone(), &[g.sort("A").unwrap()]).unwrap();
        let ib = Diagram::identity(g.clone(), &[g.sort("B").unwrap()]).unwrap();
        let one = f.tensor(&ib).unwrap().compose(&ia.tensor(&k).unwrap()).unwrap();
        let two = ia.tensor(&k).unwrap().compose(&f.tensor(&ib).unwrap()).unwrap();
        assert_eq!(one.to_dot(), two.to_dot());
        let dot = one.to_dot();
        assert!(dot.contains("n0 [shape=record, label=\"{{<i0>}|f|{<o0>}}\"];"));
        assert!(dot.contains("dom0 -> n0:i0 [label=\"A\"];"));
        assert!(dot.contains("n1:o0 -> cod1 [label=\"B\"];"));
    }
}
