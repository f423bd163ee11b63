//! Independent oracles and random generators shared by the integration tests.
//!
//! Nothing here calls the library's equality, normal forms or evaluation:
//! trace equivalence is a breadth-first closure under swaps of adjacent
//! independent letters, diagram isomorphism is a brute-force search over
//! node bijections, and automaton semantics is computed on terms by
//! composing explicit relations.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use tracelab::automata::{AsyncAutomaton, MonoidalAutomaton, StateWord};
use tracelab::diagram::{Diagram, Source};
use tracelab::signature::{DistributedAlphabet, Distribution, GenId, MonoidalGraph, SortId};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

// Words.

/// All words over `letters` of length at most `max`, shortest first.
pub fn all_words(letters: &[GenId], max: usize) -> Vec<Vec<GenId>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &layer {
            for &l in letters {
                let mut v: Vec<GenId> = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Independence read straight off the boundaries: disjoint sort sets.
pub fn independent(graph: &MonoidalGraph, a: GenId, b: GenId) -> bool {
    let la: BTreeSet<_> = graph.gen(a).arity.iter().collect();
    graph.gen(b).arity.iter().all(|s| !la.contains(s))
}

/// Every word reachable from `w` by swapping adjacent independent letters.
pub fn swap_closure(graph: &MonoidalGraph, w: &[GenId]) -> BTreeSet<Vec<GenId>> {
    let mut seen = BTreeSet::from([w.to_vec()]);
    let mut queue = VecDeque::from([w.to_vec()]);
    while let Some(u) = queue.pop_front() {
        for i in 0..u.len().saturating_sub(1) {
            if u[i] != u[i + 1] && independent(graph, u[i], u[i + 1]) {
                let mut v = u.clone();
                v.swap(i, i + 1);
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
    }
    seen
}

// Random alphabets.

/// A distributed alphabet with `sorts` locations and `gens` actions named
/// `g0, g1, …`, each on a random non-empty set of locations.
pub fn random_alphabet(rng: &mut ChaCha8Rng, sorts: usize, gens: usize) -> DistributedAlphabet {
    let names: Vec<String> = (1..=sorts).map(|i| i.to_string()).collect();
    let mut g = MonoidalGraph::new(names.clone()).unwrap();
    for j in 0..gens {
        let mut loc: Vec<&str> = Vec::new();
        while loc.is_empty() {
            loc = names.iter().filter(|_| rng.gen_bool(0.4)).map(String::as_str).collect();
        }
        g = g.with_box(&format!("g{j}"), &loc, &loc).unwrap();
    }
    DistributedAlphabet::new(g).unwrap()
}

pub fn random_distribution(rng: &mut ChaCha8Rng, letters: &[&str], locations: usize) -> Distribution {
    loop {
        let mut comps = vec![BTreeSet::new(); locations];
        for l in letters {
            let mut placed = false;
            for c in comps.iter_mut() {
                if rng.gen_bool(0.5) {
                    c.insert(l.to_string());
                    placed = true;
                }
            }
            if !placed {
                let k = rng.gen_range(0..locations);
                comps[k].insert(l.to_string());
            }
        }
        if let Ok(d) = Distribution::new(comps) {
            return d;
        }
    }
}

// Brute-force isomorphism.

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Whether some relabelling of nodes turns `a` into `b`, wire for wire.
pub fn isomorphic(a: &Diagram, b: &Diagram) -> bool {
    if a.dom() != b.dom() || a.cod() != b.cod() || a.node_count() != b.node_count() {
        return false;
    }
    let mut la: Vec<GenId> = a.nodes().iter().map(|n| n.generator).collect();
    let mut lb: Vec<GenId> = b.nodes().iter().map(|n| n.generator).collect();
    la.sort();
    lb.sort();
    if la != lb {
        return false;
    }
    let n = a.node_count();
    let map_source = |s: &Source, pi: &[usize]| match s {
        Source::Dom(i) => Source::Dom(*i),
        Source::Node { node, port } => Source::Node { node: pi[*node], port: *port },
    };
    let mut pi: Vec<usize> = (0..n).collect();
    loop {
        let ok = (0..n).all(|i| {
            let (x, y) = (&a.nodes()[i], &b.nodes()[pi[i]]);
            x.generator == y.generator
                && x.inputs.iter().zip(&y.inputs).all(|(s, t)| map_source(s, &pi) == *t)
        }) && a
            .outputs()
            .iter()
            .zip(b.outputs())
            .all(|(s, t)| map_source(s, &pi) == *t);
        if ok {
            return true;
        }
        if !next_permutation(&mut pi) {
            return false;
        }
    }
}

// Terms with explicit relational semantics.

#[derive(Debug, Clone)]
pub enum Term {
    Id(Vec<SortId>),
    Gen(GenId),
    Sym(Vec<SortId>, Vec<SortId>),
    Seq(Box<Term>, Box<Term>),
    Par(Box<Term>, Box<Term>),
}

impl Term {
    pub fn dom(&self, g: &MonoidalGraph) -> Vec<SortId> {
        match self {
            Term::Id(w) => w.clone(),
            Term::Gen(x) => g.gen(*x).arity.clone(),
            Term::Sym(l, r) => l.iter().chain(r).copied().collect(),
            Term::Seq(a, _) => a.dom(g),
            Term::Par(a, b) => [a.dom(g), b.dom(g)].concat(),
        }
    }

    pub fn cod(&self, g: &MonoidalGraph) -> Vec<SortId> {
        match self {
            Term::Id(w) => w.clone(),
            Term::Gen(x) => g.gen(*x).coarity.clone(),
            Term::Sym(l, r) => r.iter().chain(l).copied().collect(),
            Term::Seq(_, b) => b.cod(g),
            Term::Par(a, b) => [a.cod(g), b.cod(g)].concat(),
        }
    }

    pub fn to_diagram(&self, g: &Arc<MonoidalGraph>) -> Diagram {
        match self {
            Term::Id(w) => Diagram::identity(g.clone(), w).unwrap(),
            Term::Gen(x) => Diagram::generator(g.clone(), *x).unwrap(),
            Term::Sym(l, r) => Diagram::symmetry(g.clone(), l, r).unwrap(),
            Term::Seq(a, b) => a.to_diagram(g).compose(&b.to_diagram(g)).unwrap(),
            Term::Par(a, b) => a.to_diagram(g).tensor(&b.to_diagram(g)).unwrap(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Gen(_) => 1,
            Term::Id(_) | Term::Sym(..) => 0,
            Term::Seq(a, b) | Term::Par(a, b) => a.size() + b.size(),
        }
    }
}

/// Every state tuple along a sort word.
pub fn tuples(a: &MonoidalAutomaton, word: &[SortId]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for s in word {
        let k = a.states()[s.0].len();
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..k).map(move |q| {
                    let mut t = t.clone();
                    t.push(q);
                    t
                })
            })
            .collect();
    }
    out
}

pub type Rel = BTreeSet<(Vec<usize>, Vec<usize>)>;

/// The relation a term denotes: identities are diagonals, symmetries swap
/// blocks, sequencing is relational composition, tensor is product.
pub fn relation(a: &MonoidalAutomaton, t: &Term) -> Rel {
    let g = a.alphabet();
    match t {
        Term::Id(w) => tuples(a, w).into_iter().map(|x| (x.clone(), x)).collect(),
        Term::Gen(x) => a
            .relation(*x)
            .iter()
            .flat_map(|(i, outs)| outs.iter().map(move |o| (i.clone(), o.clone())))
            .collect(),
        Term::Sym(l, r) => tuples(a, &[l.clone(), r.clone()].concat())
            .into_iter()
            .map(|x| {
                let (p, q) = x.split_at(l.len());
                (x.clone(), [q, p].concat())
            })
            .collect(),
        Term::Seq(p, q) => {
            let (rp, rq) = (relation(a, p), relation(a, q));
            let mut by_mid: BTreeMap<&Vec<usize>, Vec<&Vec<usize>>> = BTreeMap::new();
            for (m, o) in &rq {
                by_mid.entry(m).or_default().push(o);
            }
            rp.iter()
                .flat_map(|(i, m)| {
                    by_mid
                        .get(m)
                        .into_iter()
                        .flatten()
                        .map(move |o| (i.clone(), (*o).clone()))
                })
                .collect()
        }
        Term::Par(p, q) => {
            let (rp, rq) = (relation(a, p), relation(a, q));
            let _ = g;
            rp.iter()
                .flat_map(|(i1, o1)| {
                    rq.iter()
                        .map(move |(i2, o2)| ([i1.clone(), i2.clone()].concat(), [o1.clone(), o2.clone()].concat()))
                })
                .collect()
        }
    }
}

/// A random well-typed term with the given domain.
pub fn random_term(rng: &mut ChaCha8Rng, g: &MonoidalGraph, dom: &[SortId], depth: usize) -> Term {
    let fitting: Vec<GenId> = g.gen_ids().filter(|x| g.gen(*x).arity == dom).collect();
    let choice = if depth == 0 { 0 } else { rng.gen_range(0..6) };
    match choice {
        1 if dom.len() >= 2 => {
            let k = rng.gen_range(1..dom.len());
            Term::Sym(dom[..k].to_vec(), dom[k..].to_vec())
        }
        2 | 3 => {
            let first = random_term(rng, g, dom, depth - 1);
            let mid = first.cod(g);
            Term::Seq(Box::new(first), Box::new(random_term(rng, g, &mid, depth - 1)))
        }
        4 => {
            let k = rng.gen_range(0..=dom.len());
            Term::Par(
                Box::new(random_term(rng, g, &dom[..k], depth - 1)),
                Box::new(random_term(rng, g, &dom[k..], depth - 1)),
            )
        }
        5 if !fitting.is_empty() => Term::Gen(*fitting.choose(rng).unwrap()),
        _ => {
            if !fitting.is_empty() && rng.gen_bool(0.6) {
                Term::Gen(*fitting.choose(rng).unwrap())
            } else {
                Term::Id(dom.to_vec())
            }
        }
    }
}

// Random diagrams.

/// A graph over sorts `A`, `B` with boxes of small arity, including a scalar
/// and a state and an effect.
pub fn small_graph() -> Arc<MonoidalGraph> {
    Arc::new(
        MonoidalGraph::build(
            &["A", "B"],
            &[
                ("f", &["A"], &["A"]),
                ("g", &["B"], &["A"]),
                ("m", &["A", "B"], &["B"]),
                ("d", &["A"], &["A", "B"]),
                ("u", &[], &["B"]),
                ("e", &["A"], &[]),
                ("s", &[], &[]),
            ],
        )
        .unwrap(),
    )
}

/// A random diagram with about `steps` construction steps: boxes applied to
/// randomly chosen wires, permutations, and boxes placed alongside.
pub fn random_diagram(rng: &mut ChaCha8Rng, g: &Arc<MonoidalGraph>, steps: usize) -> Diagram {
    let sorts: Vec<SortId> = g.sort_ids().collect();
    let width = rng.gen_range(0..=3);
    let dom: Vec<SortId> = (0..width).map(|_| *sorts.choose(rng).unwrap()).collect();
    let mut d = Diagram::identity(g.clone(), &dom).unwrap();
    for _ in 0..steps {
        let gens: Vec<GenId> = g.gen_ids().collect();
        let x = *gens.choose(rng).unwrap();
        let arity = g.gen(x).arity.clone();
        match rng.gen_range(0..4) {
            0 => {
                let b = Diagram::generator(g.clone(), x).unwrap();
                d = if rng.gen_bool(0.5) { d.tensor(&b).unwrap() } else { b.tensor(&d).unwrap() };
            }
            1 => {
                let n = d.cod().len();
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(rng);
                let p = Diagram::permutation(g.clone(), d.cod(), &perm).unwrap();
                d = d.compose(&p).unwrap();
            }
            _ => {
                // Gather wires matching the arity to the top, in random order.
                let cod = d.cod().to_vec();
                let mut free: Vec<usize> = (0..cod.len()).collect();
                free.shuffle(rng);
                let mut chosen = Vec::new();
                for s in &arity {
                    match free.iter().position(|i| cod[*i] == *s) {
                        Some(k) => chosen.push(free.remove(k)),
                        None => break,
                    }
                }
                if chosen.len() != arity.len() {
                    continue;
                }
                let mut perm = vec![0; cod.len()];
                for (k, i) in chosen.iter().chain(free.iter()).enumerate() {
                    perm[*i] = k;
                }
                let gather = Diagram::permutation(g.clone(), &cod, &perm).unwrap();
                let rest: Vec<SortId> = free.iter().map(|i| cod[*i]).collect();
                let act = Diagram::generator(g.clone(), x)
                    .unwrap()
                    .tensor(&Diagram::identity(g.clone(), &rest).unwrap())
                    .unwrap();
                d = d.compose(&gather).unwrap().compose(&act).unwrap();
            }
        }
    }
    d
}

// Random automata.

pub fn random_async(rng: &mut ChaCha8Rng) -> AsyncAutomaton {
    let locations = rng.gen_range(1..=3);
    let actions = rng.gen_range(1..=4);
    let letters: Vec<String> = (0..actions).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let refs: Vec<&str> = letters.iter().map(String::as_str).collect();
    let dist = random_distribution(rng, &refs, locations);
    let states: Vec<Vec<String>> = (0..locations)
        .map(|l| (0..rng.gen_range(1..=3)).map(|q| format!("q{l}_{q}")).collect())
        .collect();
    let initial: Vec<usize> = states.iter().map(|s| rng.gen_range(0..s.len())).collect();
    let mut a = AsyncAutomaton::new(dist, states.clone(), initial).unwrap();
    let graph = a.alphabet().graph().clone();
    for x in graph.gen_ids() {
        let loc = graph.gen(x).arity.clone();
        let local: Vec<Vec<usize>> = loc.iter().fold(vec![Vec::new()], |acc, l| {
            acc.into_iter()
                .flat_map(|t| {
                    (0..states[l.0].len()).map(move |q| {
                        let mut t = t.clone();
                        t.push(q);
                        t
                    })
                })
                .collect()
        });
        for from in &local {
            for to in &local {
                if rng.gen_bool(0.3) {
                    a.add_transition(x, from.clone(), to.clone()).unwrap();
                }
            }
        }
    }
    let globals: Vec<Vec<usize>> = states.iter().fold(vec![Vec::new()], |acc, s| {
        acc.into_iter()
            .flat_map(|t| {
                (0..s.len()).map(move |q| {
                    let mut t = t.clone();
                    t.push(q);
                    t
                })
            })
            .collect()
    });
    for q in globals {
        if rng.gen_bool(0.35) {
            a.add_final(q).unwrap();
        }
    }
    a
}

/// A random monoidal automaton over `g` with up to three states per sort.
pub fn random_monoidal(rng: &mut ChaCha8Rng, g: &Arc<MonoidalGraph>) -> MonoidalAutomaton {
    let states: Vec<Vec<String>> = g
        .sort_ids()
        .map(|s| (0..rng.gen_range(1..=3)).map(|q| format!("{}{q}", g.sort_name(s))).collect())
        .collect();
    let mut a = MonoidalAutomaton::new(g.clone(), states, StateWord::default(), []).unwrap();
    for x in g.gen_ids() {
        let b = g.gen(x).clone();
        for i in tuples(&a, &b.arity) {
            for o in tuples(&a, &b.coarity) {
                if rng.gen_bool(0.3) {
                    a.add_transition(x, i.clone(), o).unwrap();
                }
            }
        }
    }
    a
}
