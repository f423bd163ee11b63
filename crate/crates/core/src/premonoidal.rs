//! Premonoidal diagrams as string diagrams threaded by a runtime wire.
//!
//! Every box of a monoidal graph `Γ` gets an extra input and output of a
//! fresh sort `R` (the runtime), always in first position. Diagrams over the
//! resulting runtime graph whose boundaries carry exactly one `R`, also in
//! first position, are the morphisms of the free symmetric premonoidal
//! category on `Γ`: the runtime wire totally orders the boxes, so the
//! interchange law no longer holds. Erasing the runtime recovers a diagram
//! over `Γ`, forgetting that order.

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::diagram::{embed_generator, Diagram, DiagramError, Node, Source};
use crate::signature::{DistributedAlphabet, GenId, Generator, MonoidalGraph, SignatureError, SortId};

/// Name of the runtime sort. Graphs declaring it cannot be lifted.
pub const RUNTIME_SORT: &str = "_R";

/// Default bound on the number of words returned by [`serialization_preimage`].
pub const DEFAULT_PREIMAGE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PremonoidalError {
    #[error("ReservedSortName: `{0}` is reserved for the runtime")]
    ReservedSortName(String),
    #[error("RuntimeNotThreaded: {0}")]
    RuntimeNotThreaded(String),
    #[error("UnknownAction: `{0}`")]
    UnknownAction(String),
    #[error("SignatureMismatch: diagram is over a different graph")]
    SignatureMismatch,
    #[error("BoundaryNotFull: {0}")]
    BoundaryNotFull(String),
    #[error("TooManySerializations: more than {0} words")]
    TooManySerializations(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Signature(#[from] SignatureError),
}

pub type Result<T, E = PremonoidalError> = std::result::Result<T, E>;

/// A graph `Γ` with its runtime graph `Γ_R`. The runtime is sort 0 of `Γ_R`,
/// so sort `i` of `Γ` becomes sort `i + 1`. Boxes keep their indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuntimeGraph {
    base: Arc<MonoidalGraph>,
    graph: Arc<MonoidalGraph>,
}

pub fn runtime_graph(base: Arc<MonoidalGraph>) -> Result<RuntimeGraph> {
    if base.sorts().iter().any(|s| s == RUNTIME_SORT) {
        return Err(PremonoidalError::ReservedSortName(RUNTIME_SORT.into()));
    }
    let mut graph = MonoidalGraph::new(
        std::iter::once(RUNTIME_SORT.to_string()).chain(base.sorts().iter().cloned()),
    )?
    .with_name(base.name());
    let lift = |w: &[SortId]| {
        std::iter::once(SortId(0))
            .chain(w.iter().map(|s| SortId(s.0 + 1)))
            .collect::<Vec<_>>()
    };
    for g in base.boxes() {
        graph.push_box(Generator {
            name: g.name.clone(),
            arity: lift(&g.arity),
            coarity: lift(&g.coarity),
        })?;
    }
    Ok(RuntimeGraph {
        base,
        graph: Arc::new(graph),
    })
}

impl RuntimeGraph {
    pub fn base(&self) -> &Arc<MonoidalGraph> {
        &self.base
    }

    pub fn graph(&self) -> &Arc<MonoidalGraph> {
        &self.graph
    }

    pub fn runtime_sort(&self) -> SortId {
        SortId(0)
    }

    pub fn lift_sort(&self, s: SortId) -> SortId {
        SortId(s.0 + 1)
    }

    pub fn lift_word(&self, w: &[SortId]) -> Vec<SortId> {
        w.iter().map(|s| self.lift_sort(*s)).collect()
    }

    fn check_base_word(&self, w: &[SortId]) -> Result<()> {
        match w.iter().find(|s| !self.base.has_sort(**s)) {
            Some(s) => Err(DiagramError::UnknownSort(s.to_string()).into()),
            None => Ok(()),
        }
    }
}

/// A diagram over a runtime graph with the runtime first on both sides and
/// nowhere else on the boundary.
#[derive(Debug, Clone)]
pub struct PremonoidalDiagram {
    runtime: RuntimeGraph,
    diagram: Diagram,
}

impl PremonoidalDiagram {
    pub fn new(runtime: RuntimeGraph, diagram: Diagram) -> Result<Self> {
        if **diagram.signature() != **runtime.graph() {
            return Err(PremonoidalError::SignatureMismatch);
        }
        let r = runtime.runtime_sort();
        for (side, word) in [("domain", diagram.dom()), ("codomain", diagram.cod())] {
            let threaded = word.first() == Some(&r) && !word[1..].contains(&r);
            if !threaded {
                return Err(PremonoidalError::RuntimeNotThreaded(format!(
                    "{side} {:?} must start with the only `{RUNTIME_SORT}`",
                    runtime.graph().sort_names(word)
                )));
            }
        }
        Ok(PremonoidalDiagram { runtime, diagram })
    }

    /// The identity on `R·w` for a word `w` over `Γ`.
    pub fn identity(runtime: RuntimeGraph, w: &[SortId]) -> Result<Self> {
        runtime.check_base_word(w)?;
        let mut word = vec![runtime.runtime_sort()];
        word.extend(runtime.lift_word(w));
        let diagram = Diagram::identity(runtime.graph().clone(), &word)?;
        Ok(PremonoidalDiagram { runtime, diagram })
    }

    /// The box `γ: R·w → R·w'`.
    pub fn generator(runtime: RuntimeGraph, id: GenId) -> Result<Self> {
        let diagram = Diagram::generator(runtime.graph().clone(), id)?;
        Ok(PremonoidalDiagram { runtime, diagram })
    }

    /// Lifts a diagram over `Γ` without boxes (a permutation) to `id_R ⊗ d`.
    /// Such diagrams are central: they commute with everything.
    pub fn lift_structural(runtime: RuntimeGraph, d: &Diagram) -> Result<Self> {
        if **d.signature() != **runtime.base() {
            return Err(PremonoidalError::SignatureMismatch);
        }
        if d.node_count() != 0 {
            return Err(PremonoidalError::RuntimeNotThreaded(
                "only box-free diagrams lift without a runtime".into(),
            ));
        }
        let shift = |s: &Source| match s {
            Source::Dom(i) => Source::Dom(i + 1),
            other => *other,
        };
        let mut outputs = vec![Source::Dom(0)];
        outputs.extend(d.outputs().iter().map(shift));
        let mut dom = vec![runtime.runtime_sort()];
        dom.extend(runtime.lift_word(d.dom()));
        let mut cod = vec![runtime.runtime_sort()];
        cod.extend(runtime.lift_word(d.cod()));
        let diagram = Diagram::from_parts(runtime.graph().clone(), dom, cod, Vec::new(), outputs)?;
        Ok(PremonoidalDiagram { runtime, diagram })
    }

    pub fn runtime(&self) -> &RuntimeGraph {
        &self.runtime
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn into_diagram(self) -> Diagram {
        self.diagram
    }

    /// Composition in diagrammatic order.
    pub fn compose(&self, next: &PremonoidalDiagram) -> Result<Self> {
        if self.runtime != next.runtime {
            return Err(PremonoidalError::SignatureMismatch);
        }
        Ok(PremonoidalDiagram {
            runtime: self.runtime.clone(),
            diagram: self.diagram.compose(&next.diagram)?,
        })
    }

    /// Canonical-form equality of the underlying diagrams.
    pub fn equals(&self, other: &PremonoidalDiagram) -> Result<bool> {
        Ok(self.diagram.equals(&other.diagram)?)
    }
}

/// `w ◁ pd`: the wires `w` pass alongside `pd`, placed just after the runtime.
pub fn whisker_left(w: &[SortId], pd: &PremonoidalDiagram) -> Result<PremonoidalDiagram> {
    let rt = &pd.runtime;
    rt.check_base_word(w)?;
    let g = rt.graph().clone();
    let a = rt.lift_word(w);
    let (k, dom, cod) = (a.len(), pd.diagram.dom(), pd.diagram.cod());
    // R·A·X → A·R·X: the runtime moves below A.
    let in_word: Vec<SortId> = std::iter::once(dom[0]).chain(a.iter().copied()).chain(dom[1..].iter().copied()).collect();
    let to_inner: Vec<usize> = (0..in_word.len())
        .map(|i| if i == 0 { k } else if i <= k { i - 1 } else { i })
        .collect();
    let before = Diagram::permutation(g.clone(), &in_word, &to_inner)?;
    let middle = Diagram::identity(g.clone(), &a)?.tensor(&pd.diagram)?;
    // A·R·Y → R·A·Y.
    let inner_cod: Vec<SortId> = a.iter().copied().chain(cod.iter().copied()).collect();
    let to_outer: Vec<usize> = (0..inner_cod.len())
        .map(|i| if i < k { i + 1 } else if i == k { 0 } else { i })
        .collect();
    let after = Diagram::permutation(g, &inner_cod, &to_outer)?;
    Ok(PremonoidalDiagram {
        runtime: rt.clone(),
        diagram: before.compose(&middle)?.compose(&after)?,
    })
}

/// `pd ▷ w`: the wires `w` pass below `pd`.
pub fn whisker_right(pd: &PremonoidalDiagram, w: &[SortId]) -> Result<PremonoidalDiagram> {
    let rt = &pd.runtime;
    rt.check_base_word(w)?;
    let id = Diagram::identity(rt.graph().clone(), &rt.lift_word(w))?;
    Ok(PremonoidalDiagram {
        runtime: rt.clone(),
        diagram: pd.diagram.tensor(&id)?,
    })
}

/// The runtime slices of `word`, one box per slice, composed in order, on the
/// boundary `R·1·…·k`.
pub fn word_to_premonoidal(alphabet: &DistributedAlphabet, word: &[GenId]) -> Result<PremonoidalDiagram> {
    let rt = runtime_graph(alphabet.graph().clone())?;
    let mut boundary = vec![rt.runtime_sort()];
    boundary.extend(rt.lift_word(&alphabet.full_boundary()));
    let mut diagram = Diagram::identity(rt.graph().clone(), &boundary)?;
    for &a in word {
        if !alphabet.graph().has_gen(a) {
            return Err(PremonoidalError::UnknownAction(a.to_string()));
        }
        diagram = diagram.compose(&embed_generator(rt.graph().clone(), &boundary, a)?)?;
    }
    Ok(PremonoidalDiagram { runtime: rt, diagram })
}

/// [`word_to_premonoidal`] on action names.
pub fn names_to_premonoidal<S: AsRef<str>>(alphabet: &DistributedAlphabet, word: &[S]) -> Result<PremonoidalDiagram> {
    let ids = word
        .iter()
        .map(|n| {
            alphabet
                .action(n.as_ref())
                .map_err(|_| PremonoidalError::UnknownAction(n.as_ref().to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    word_to_premonoidal(alphabet, &ids)
}

/// Deletes the runtime wire, giving a diagram over the base graph.
pub fn erase_runtime(pd: &PremonoidalDiagram) -> Diagram {
    let d = &pd.diagram;
    // Runtime ports are port 0 of every box and position 0 of each boundary.
    let lower = |s: &Source| match s {
        Source::Dom(i) => Source::Dom(i - 1),
        Source::Node { node, port } => Source::Node {
            node: *node,
            port: port - 1,
        },
    };
    let nodes = d
        .nodes()
        .iter()
        .map(|n| Node {
            generator: n.generator,
            inputs: n.inputs[1..].iter().map(lower).collect(),
        })
        .collect();
    let unlift = |w: &[SortId]| w[1..].iter().map(|s| SortId(s.0 - 1)).collect();
    Diagram::from_parts(
        pd.runtime.base().clone(),
        unlift(d.dom()),
        unlift(d.cod()),
        nodes,
        d.outputs()[1..].iter().map(lower).collect(),
    )
    .expect("erasing the runtime preserves well-formedness")
}

/// All words whose runtime diagram erases to `d`, in lexicographic order of
/// action names. Candidates are the linear extensions of the causal order of
/// `d`'s boxes, each confirmed by comparing canonical forms.
pub fn serialization_preimage(
    alphabet: &DistributedAlphabet,
    d: &Diagram,
    cap: usize,
) -> Result<Vec<Vec<GenId>>> {
    if **d.signature() != **alphabet.graph() {
        return Err(PremonoidalError::SignatureMismatch);
    }
    let full = alphabet.full_boundary();
    if d.dom() != full.as_slice() || d.cod() != full.as_slice() {
        return Err(PremonoidalError::BoundaryNotFull(format!(
            "{:?} -> {:?}",
            alphabet.graph().sort_names(d.dom()),
            alphabet.graph().sort_names(d.cod())
        )));
    }
    let n = d.node_count();
    let mut preds: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (i, node) in d.nodes().iter().enumerate() {
        for s in &node.inputs {
            if let Source::Node { node: p, .. } = s {
                preds[i].insert(*p);
            }
        }
    }
    let mut candidates = BTreeSet::new();
    let mut placed = vec![false; n];
    let mut prefix = Vec::with_capacity(n);
    linear_extensions(d, &preds, &mut placed, &mut prefix, &mut candidates, cap)?;

    let target = d.canonical_form();
    let mut words = Vec::new();
    for word in candidates {
        if erase_runtime(&word_to_premonoidal(alphabet, &word)?).canonical_form() == target {
            words.push(word);
        }
    }
    let name = |w: &Vec<GenId>| alphabet.action_names(w);
    words.sort_by_key(name);
    Ok(words)
}

fn linear_extensions(
    d: &Diagram,
    preds: &[BTreeSet<usize>],
    placed: &mut [bool],
    prefix: &mut Vec<GenId>,
    out: &mut BTreeSet<Vec<GenId>>,
    cap: usize,
) -> Result<()> {
    if prefix.len() == placed.len() {
        out.insert(prefix.clone());
        if out.len() > cap {
            return Err(PremonoidalError::TooManySerializations(cap));
        }
        return Ok(());
    }
    let mut tried = BTreeSet::new();
    for i in 0..placed.len() {
        if placed[i] || !preds[i].iter().all(|p| placed[*p]) {
            continue;
        }
        // Two ready boxes with the same label and the same history lead to
        // the same set of words.
        let generator = d.nodes()[i].generator;
        if !tried.insert(generator) {
            continue;
        }
        placed[i] = true;
        prefix.push(generator);
        linear_extensions(d, preds, placed, prefix, out, cap)?;
        prefix.pop();
        placed[i] = false;
    }
    Ok(())
}
