//! Monoidal graphs and distributed alphabets.
//!
//! A [`MonoidalGraph`] is a signature of boxes whose source and target are
//! words over a finite set of sorts. A [`DistributedAlphabet`] is the special
//! case where sorts are locations `1 < 2 < ... < k` and every box is an
//! action that conserves the locations it touches. The classical side of the
//! same data is a [`Distribution`] (a cover of the action set by locations)
//! or an [`IndependenceRelation`]; conversions between the three live here.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Index of a sort in a [`MonoidalGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SortId(pub usize);

/// Index of a generator (box) in a [`MonoidalGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId(pub usize);

impl fmt::Display for SortId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("DuplicateSort: sort `{0}` declared twice")]
    DuplicateSort(String),
    #[error("DuplicateGenerator: generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("UnknownSort: `{0}`")]
    UnknownSort(String),
    #[error("UnknownGenerator: `{0}`")]
    UnknownGenerator(String),
    #[error("SortsNotOrdinal: sorts must be named 1..k in order with k >= 1, found {0:?}")]
    SortsNotOrdinal(Vec<String>),
    #[error("SortsOutOfOrder: boundary of `{0}` does not list its sorts in increasing order")]
    SortsOutOfOrder(String),
    #[error("SortRepeated: a sort appears more than once in the boundary of `{0}`")]
    SortRepeated(String),
    #[error("SourceTargetMismatch: source and target of `{0}` differ")]
    SourceTargetMismatch(String),
    #[error("EmptyBoundary: `{0}` has an empty source/target")]
    EmptyBoundary(String),
    #[error("IncompatibleBoxImage: image of box `{0}` does not match its boundary")]
    IncompatibleBoxImage(String),
    #[error("IncompleteMorphism: no image given for `{0}`")]
    IncompleteMorphism(String),
    #[error("ReflexivePair: `{0}` cannot be independent of itself")]
    ReflexivePair(String),
    #[error("UnknownAction: `{0}`")]
    UnknownAction(String),
    #[error("AlphabetMismatch: distributions are over different alphabets")]
    AlphabetMismatch,
    #[error("EmptyComponent: location {0} has no actions")]
    EmptyComponent(usize),
}

pub type Result<T, E = SignatureError> = std::result::Result<T, E>;

/// A box `name : arity -> coarity`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub arity: Vec<SortId>,
    pub coarity: Vec<SortId>,
}

/// A finite monoidal graph: named sorts and boxes with sorted boundaries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonoidalGraph {
    name: String,
    sorts: Vec<String>,
    boxes: Vec<Generator>,
}

impl MonoidalGraph {
    /// A graph with the given sorts and no boxes.
    pub fn new<S: Into<String>>(sorts: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut graph = MonoidalGraph {
            name: String::new(),
            sorts: Vec::new(),
            boxes: Vec::new(),
        };
        for sort in sorts {
            let sort = sort.into();
            if graph.sorts.contains(&sort) {
                return Err(SignatureError::DuplicateSort(sort));
            }
            graph.sorts.push(sort);
        }
        Ok(graph)
    }

    /// Convenience constructor from sort names and `(name, arity, coarity)`
    /// triples whose boundaries are given by sort name.
    pub fn build(sorts: &[&str], boxes: &[(&str, &[&str], &[&str])]) -> Result<Self> {
        let mut graph = Self::new(sorts.iter().copied())?;
        for (name, arity, coarity) in boxes {
            graph = graph.with_box(*name, arity, coarity)?;
        }
        Ok(graph)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Adds a box whose boundaries are given by sort name.
    pub fn with_box<S: AsRef<str>>(
        mut self,
        name: impl Into<String>,
        arity: &[S],
        coarity: &[S],
    ) -> Result<Self> {
        let name = name.into();
        let arity = self.sort_word(arity)?;
        let coarity = self.sort_word(coarity)?;
        self.push_box(Generator {
            name,
            arity,
            coarity,
        })?;
        Ok(self)
    }

    pub(crate) fn push_box(&mut self, generator: Generator) -> Result<GenId> {
        if self.boxes.iter().any(|b| b.name == generator.name) {
            return Err(SignatureError::DuplicateGenerator(generator.name));
        }
        if let Some(bad) = generator
            .arity
            .iter()
            .chain(&generator.coarity)
            .find(|s| s.0 >= self.sorts.len())
        {
            return Err(SignatureError::UnknownSort(bad.to_string()));
        }
        self.boxes.push(generator);
        Ok(GenId(self.boxes.len() - 1))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn sorts(&self) -> &[String] {
        &self.sorts
    }

    pub fn boxes(&self) -> &[Generator] {
        &self.boxes
    }

    pub fn sort_ids(&self) -> impl Iterator<Item = SortId> {
        (0..self.sorts.len()).map(SortId)
    }

    pub fn gen_ids(&self) -> impl Iterator<Item = GenId> {
        (0..self.boxes.len()).map(GenId)
    }

    pub fn sort(&self, name: &str) -> Result<SortId> {
        self.sorts
            .iter()
            .position(|s| s == name)
            .map(SortId)
            .ok_or_else(|| SignatureError::UnknownSort(name.to_string()))
    }

    pub fn generator(&self, name: &str) -> Result<GenId> {
        self.boxes
            .iter()
            .position(|b| b.name == name)
            .map(GenId)
            .ok_or_else(|| SignatureError::UnknownGenerator(name.to_string()))
    }

    pub fn sort_word<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<SortId>> {
        names.iter().map(|n| self.sort(n.as_ref())).collect()
    }

    pub fn sort_name(&self, sort: SortId) -> &str {
        &self.sorts[sort.0]
    }

    pub fn gen(&self, id: GenId) -> &Generator {
        &self.boxes[id.0]
    }

    pub fn has_sort(&self, sort: SortId) -> bool {
        sort.0 < self.sorts.len()
    }

    pub fn has_gen(&self, id: GenId) -> bool {
        id.0 < self.boxes.len()
    }

    pub fn sort_names(&self, word: &[SortId]) -> Vec<String> {
        word.iter().map(|s| self.sort_name(*s).to_string()).collect()
    }
}

/// A morphism of monoidal graphs, checked to commute with source and target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMorphism {
    source: Arc<MonoidalGraph>,
    target: Arc<MonoidalGraph>,
    sort_map: Vec<SortId>,
    box_map: Vec<GenId>,
}

impl GraphMorphism {
    /// Builds and validates a morphism. `sort_map[i]` is the image of source
    /// sort `i`, `box_map[j]` the image of source box `j`.
    pub fn new(
        source: Arc<MonoidalGraph>,
        target: Arc<MonoidalGraph>,
        sort_map: Vec<SortId>,
        box_map: Vec<GenId>,
    ) -> Result<Self> {
        if sort_map.len() != source.sorts.len() {
            let missing = source.sorts.get(sort_map.len()).cloned().unwrap_or_default();
            return Err(SignatureError::IncompleteMorphism(missing));
        }
        if box_map.len() != source.boxes.len() {
            let missing = source
                .boxes
                .get(box_map.len())
                .map(|b| b.name.clone())
                .unwrap_or_default();
            return Err(SignatureError::IncompleteMorphism(missing));
        }
        if let Some(s) = sort_map.iter().find(|s| !target.has_sort(**s)) {
            return Err(SignatureError::UnknownSort(s.to_string()));
        }
        if let Some(g) = box_map.iter().find(|g| !target.has_gen(**g)) {
            return Err(SignatureError::UnknownGenerator(g.to_string()));
        }
        let morphism = GraphMorphism {
            source,
            target,
            sort_map,
            box_map,
        };
        morphism.validate()?;
        Ok(morphism)
    }

    /// Builds a morphism from name-keyed maps.
    pub fn from_names(
        source: Arc<MonoidalGraph>,
        target: Arc<MonoidalGraph>,
        sort_map: &BTreeMap<String, String>,
        box_map: &BTreeMap<String, String>,
    ) -> Result<Self> {
        let sorts = source
            .sorts
            .iter()
            .map(|s| {
                let image = sort_map
                    .get(s)
                    .ok_or_else(|| SignatureError::IncompleteMorphism(s.clone()))?;
                target.sort(image)
            })
            .collect::<Result<Vec<_>>>()?;
        let boxes = source
            .boxes
            .iter()
            .map(|b| {
                let image = box_map
                    .get(&b.name)
                    .ok_or_else(|| SignatureError::IncompleteMorphism(b.name.clone()))?;
                target.generator(image)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, sorts, boxes)
    }

    pub fn identity(graph: Arc<MonoidalGraph>) -> Self {
        let sort_map = graph.sort_ids().collect();
        let box_map = graph.gen_ids().collect();
        GraphMorphism {
            source: graph.clone(),
            target: graph,
            sort_map,
            box_map,
        }
    }

    fn validate(&self) -> Result<()> {
        for (src, image) in self.source.boxes.iter().zip(&self.box_map) {
            let tgt = self.target.gen(*image);
            if self.map_word(&src.arity) != tgt.arity || self.map_word(&src.coarity) != tgt.coarity
            {
                return Err(SignatureError::IncompatibleBoxImage(src.name.clone()));
            }
        }
        Ok(())
    }

    /// Letterwise image of a sort word.
    pub fn map_word(&self, word: &[SortId]) -> Vec<SortId> {
        word.iter().map(|s| self.sort_map[s.0]).collect()
    }

    pub fn source(&self) -> &Arc<MonoidalGraph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<MonoidalGraph> {
        &self.target
    }

    pub fn sort_image(&self, sort: SortId) -> SortId {
        self.sort_map[sort.0]
    }

    pub fn box_image(&self, id: GenId) -> GenId {
        self.box_map[id.0]
    }
}

/// A monoidal graph satisfying the distributed-alphabet conditions: sorts are
/// the locations `1..k`. Each generator has the same non-empty, strictly
/// increasing word as source and target.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DistributedAlphabet {
    graph: Arc<MonoidalGraph>,
}

impl DistributedAlphabet {
    pub fn new(graph: MonoidalGraph) -> Result<Self> {
        Self::validate(Arc::new(graph))
    }

    /// Checks the four distributed-alphabet conditions.
    pub fn validate(graph: Arc<MonoidalGraph>) -> Result<Self> {
        let ordinal = !graph.sorts.is_empty()
            && graph
                .sorts
                .iter()
                .enumerate()
                .all(|(i, s)| *s == (i + 1).to_string());
        if !ordinal {
            return Err(SignatureError::SortsNotOrdinal(graph.sorts.clone()));
        }
        for b in &graph.boxes {
            if b.arity != b.coarity {
                return Err(SignatureError::SourceTargetMismatch(b.name.clone()));
            }
            if b.arity.is_empty() {
                return Err(SignatureError::EmptyBoundary(b.name.clone()));
            }
            let distinct: BTreeSet<_> = b.arity.iter().collect();
            if distinct.len() != b.arity.len() {
                return Err(SignatureError::SortRepeated(b.name.clone()));
            }
            if b.arity.windows(2).any(|w| w[0] >= w[1]) {
                return Err(SignatureError::SortsOutOfOrder(b.name.clone()));
            }
        }
        Ok(DistributedAlphabet { graph })
    }

    pub fn graph(&self) -> &Arc<MonoidalGraph> {
        &self.graph
    }

    /// Number of locations `k`.
    pub fn locations(&self) -> usize {
        self.graph.sorts.len()
    }

    /// The full boundary `1 . 2 . ... . k`.
    pub fn full_boundary(&self) -> Vec<SortId> {
        self.graph.sort_ids().collect()
    }

    pub fn action(&self, name: &str) -> Result<GenId> {
        self.graph
            .generator(name)
            .map_err(|_| SignatureError::UnknownAction(name.to_string()))
    }

    pub fn actions<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<GenId>> {
        names.iter().map(|n| self.action(n.as_ref())).collect()
    }

    pub fn action_name(&self, id: GenId) -> &str {
        &self.graph.gen(id).name
    }

    pub fn action_names(&self, word: &[GenId]) -> Vec<String> {
        word.iter().map(|g| self.action_name(*g).to_string()).collect()
    }

    /// Locations of an action, in increasing order.
    pub fn loc(&self, id: GenId) -> Result<&[SortId]> {
        if !self.graph.has_gen(id) {
            return Err(SignatureError::UnknownGenerator(id.to_string()));
        }
        Ok(&self.graph.gen(id).arity)
    }

    /// Locations of an action looked up by name.
    pub fn loc_of(&self, name: &str) -> Result<BTreeSet<SortId>> {
        let id = self.graph.generator(name)?;
        Ok(self.graph.gen(id).arity.iter().copied().collect())
    }

    /// Two distinct actions are independent iff their locations are disjoint.
    pub fn independent(&self, a: GenId, b: GenId) -> bool {
        if a == b {
            return false;
        }
        let (la, lb) = (&self.graph.gen(a).arity, &self.graph.gen(b).arity);
        !la.iter().any(|s| lb.contains(s))
    }
}

/// A symmetric, irreflexive relation on a finite action set. Pairs are stored
/// once with the smaller name first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IndependenceRelation {
    alphabet: BTreeSet<String>,
    pairs: BTreeSet<(String, String)>,
}

impl IndependenceRelation {
    pub fn new<A, P>(alphabet: A, pairs: P) -> Result<Self>
    where
        A: IntoIterator,
        A::Item: Into<String>,
        P: IntoIterator<Item = (String, String)>,
    {
        let alphabet: BTreeSet<String> = alphabet.into_iter().map(Into::into).collect();
        let mut stored = BTreeSet::new();
        for (a, b) in pairs {
            for x in [&a, &b] {
                if !alphabet.contains(x) {
                    return Err(SignatureError::UnknownAction(x.clone()));
                }
            }
            if a == b {
                return Err(SignatureError::ReflexivePair(a));
            }
            stored.insert(if a < b { (a, b) } else { (b, a) });
        }
        Ok(IndependenceRelation {
            alphabet,
            pairs: stored,
        })
    }

    pub fn alphabet(&self) -> &BTreeSet<String> {
        &self.alphabet
    }

    pub fn pairs(&self) -> &BTreeSet<(String, String)> {
        &self.pairs
    }

    pub fn contains(&self, a: &str, b: &str) -> bool {
        let key = if a < b {
            (a.to_string(), b.to_string())
        } else {
            (b.to_string(), a.to_string())
        };
        self.pairs.contains(&key)
    }

    /// Inclusion of relations over the same alphabet.
    pub fn is_subset(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.pairs.is_subset(&other.pairs)
    }
}

/// A finite tuple of non-empty action sets; the alphabet is their union.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Distribution {
    components: Vec<BTreeSet<String>>,
}

impl Distribution {
    pub fn new(components: Vec<BTreeSet<String>>) -> Result<Self> {
        if let Some(i) = components.iter().position(BTreeSet::is_empty) {
            return Err(SignatureError::EmptyComponent(i + 1));
        }
        Ok(Distribution { components })
    }

    /// Convenience constructor from string slices.
    pub fn from_slices(components: &[&[&str]]) -> Result<Self> {
        Self::new(
            components
                .iter()
                .map(|c| c.iter().map(|s| s.to_string()).collect())
                .collect(),
        )
    }

    pub fn components(&self) -> &[BTreeSet<String>] {
        &self.components
    }

    pub fn alphabet(&self) -> BTreeSet<String> {
        self.components.iter().flatten().cloned().collect()
    }

    /// 0-based indices of the components containing `action`.
    pub fn loc(&self, action: &str) -> BTreeSet<usize> {
        self.components
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(action))
            .map(|(i, _)| i)
            .collect()
    }

    fn cohabit(&self, a: &str, b: &str) -> bool {
        self.components
            .iter()
            .any(|c| c.contains(a) && c.contains(b))
    }
}

/// Locations are the maximal cliques of the dependency graph, listed in
/// lexicographic order of their sorted members.
pub fn independence_to_distribution(rel: &IndependenceRelation) -> Distribution {
    let names: Vec<&String> = rel.alphabet.iter().collect();
    let n = names.len();
    let adjacency: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i != j && !rel.contains(names[i], names[j]))
                .collect()
        })
        .collect();
    let mut components: Vec<BTreeSet<String>> = maximal_cliques(&adjacency)
        .into_iter()
        .map(|clique| clique.into_iter().map(|i| names[i].clone()).collect())
        .collect();
    components.sort_by(|a, b| a.iter().cmp(b.iter()));
    Distribution { components }
}

/// Two distinct actions are independent iff they share no location.
pub fn distribution_to_independence(dist: &Distribution) -> IndependenceRelation {
    let alphabet = dist.alphabet();
    let locs: BTreeMap<&String, BTreeSet<usize>> =
        alphabet.iter().map(|a| (a, dist.loc(a))).collect();
    let mut pairs = BTreeSet::new();
    for (a, la) in &locs {
        for (b, lb) in &locs {
            if a < b && la.is_disjoint(lb) {
                pairs.insert(((*a).clone(), (*b).clone()));
            }
        }
    }
    IndependenceRelation { alphabet, pairs }
}

/// The preorder on distributions: `left <= right` iff every pair of distinct
/// actions sharing a component of `right` also shares one of `left`.
pub fn distribution_leq(left: &Distribution, right: &Distribution) -> Result<bool> {
    let alphabet = left.alphabet();
    if alphabet != right.alphabet() {
        return Err(SignatureError::AlphabetMismatch);
    }
    for a in &alphabet {
        for b in &alphabet {
            if a < b && right.cohabit(a, b) && !left.cohabit(a, b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Distributions equal up to the preorder in both directions.
pub fn distribution_equivalent(left: &Distribution, right: &Distribution) -> Result<bool> {
    Ok(distribution_leq(left, right)? && distribution_leq(right, left)?)
}

/// Location `i` becomes sort `"i"`; action `a` becomes the generator
/// `a : loc(a) -> loc(a)`. Generators are listed in alphabetical order.
pub fn distribution_to_alphabet(dist: &Distribution) -> DistributedAlphabet {
    let sorts = (1..=dist.components.len()).map(|i| i.to_string());
    let mut graph = MonoidalGraph::new(sorts).expect("ordinal sort names are distinct");
    for action in dist.alphabet() {
        let loc: Vec<SortId> = dist.loc(&action).into_iter().map(SortId).collect();
        graph
            .push_box(Generator {
                name: action,
                arity: loc.clone(),
                coarity: loc,
            })
            .expect("alphabet entries are distinct");
    }
    DistributedAlphabet {
        graph: Arc::new(graph),
    }
}

/// Component `i` collects the generators touching location `i`. A location
/// used by no generator has no component to map to and is rejected.
pub fn alphabet_to_distribution(alphabet: &DistributedAlphabet) -> Result<Distribution> {
    let mut components = vec![BTreeSet::new(); alphabet.locations()];
    for b in alphabet.graph.boxes() {
        for s in &b.arity {
            components[s.0].insert(b.name.clone());
        }
    }
    Distribution::new(components)
}

/// Brute-force subset enumeration below this many vertices, Bron–Kerbosch above.
const BRUTE_FORCE_CLIQUE_LIMIT: usize = 20;

/// Maximal cliques of a simple undirected graph, each as a sorted vertex list.
pub(crate) fn maximal_cliques(adjacency: &[Vec<bool>]) -> Vec<Vec<usize>> {
    if adjacency.len() <= BRUTE_FORCE_CLIQUE_LIMIT {
        maximal_cliques_by_subsets(adjacency)
    } else {
        maximal_cliques_bron_kerbosch(adjacency)
    }
}

fn maximal_cliques_by_subsets(adjacency: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = adjacency.len();
    if n == 0 {
        return Vec::new();
    }
    let neighbours: Vec<u32> = adjacency
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, e)| **e)
                .fold(0u32, |m, (j, _)| m | (1 << j))
        })
        .collect();
    let mut cliques = Vec::new();
    for set in 1u32..(1u32 << n) {
        let members = (0..n).filter(|i| set & (1 << i) != 0);
        let is_clique = members
            .clone()
            .all(|i| set & !(1 << i) & !neighbours[i] == 0);
        if !is_clique {
            continue;
        }
        let extendable = (0..n).any(|v| set & (1 << v) == 0 && set & !neighbours[v] == 0);
        if !extendable {
            cliques.push(members.collect());
        }
    }
    cliques
}

fn maximal_cliques_bron_kerbosch(adjacency: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn expand(
        adjacency: &[Vec<bool>],
        current: &mut Vec<usize>,
        mut candidates: BTreeSet<usize>,
        mut excluded: BTreeSet<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if candidates.is_empty() && excluded.is_empty() {
            let mut clique = current.clone();
            clique.sort_unstable();
            out.push(clique);
            return;
        }
        let pivot = *candidates
            .union(&excluded)
            .max_by_key(|u| candidates.iter().filter(|v| adjacency[**u][**v]).count())
            .expect("non-empty");
        let branch: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|v| !adjacency[pivot][*v])
            .collect();
        for v in branch {
            let nbrs = |set: &BTreeSet<usize>| -> BTreeSet<usize> {
                set.iter().copied().filter(|u| adjacency[v][*u]).collect()
            };
            current.push(v);
            expand(adjacency, current, nbrs(&candidates), nbrs(&excluded), out);
            current.pop();
            candidates.remove(&v);
            excluded.insert(v);
        }
    }
    let mut out = Vec::new();
    let all = (0..adjacency.len()).collect();
    if adjacency.is_empty() {
        return out;
    }
    expand(adjacency, &mut Vec::new(), all, BTreeSet::new(), &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    fn ind(alphabet: &[&str], pairs: &[(&str, &str)]) -> IndependenceRelation {
        IndependenceRelation::new(
            alphabet.iter().copied(),
            pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())),
        )
        .unwrap()
    }

    // Five generators over three locations; δ and β are independent, γ and α are not.
    fn greek_chain_graph() -> MonoidalGraph {
        MonoidalGraph::build(
            &["1", "2", "3"],
            &[
                ("α", &["1"], &["1"]),
                ("β", &["3"], &["3"]),
                ("γ", &["1", "2"], &["1", "2"]),
                ("δ", &["2"], &["2"]),
                ("ε", &["2", "3"], &["2", "3"]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn three_location_alphabet_is_valid() {
        let a = DistributedAlphabet::new(greek_chain_graph()).unwrap();
        let g = |n| a.action(n).unwrap();
        assert!(a.independent(g("δ"), g("β")));
        assert!(!a.independent(g("γ"), g("α")));
    }

    #[test]
    fn alphabet_violations() {
        let empty = MonoidalGraph::build(&["1"], &[("e", &[], &[])]).unwrap();
        assert_eq!(
            DistributedAlphabet::new(empty),
            Err(SignatureError::EmptyBoundary("e".into()))
        );
        let mismatch = MonoidalGraph::build(&["1", "2"], &[("g", &["1", "2"], &["1"])]).unwrap();
        assert_eq!(
            DistributedAlphabet::new(mismatch),
            Err(SignatureError::SourceTargetMismatch("g".into()))
        );
        let repeated = MonoidalGraph::build(&["1"], &[("g", &["1", "1"], &["1", "1"])]).unwrap();
        assert_eq!(
            DistributedAlphabet::new(repeated),
            Err(SignatureError::SortRepeated("g".into()))
        );
        let unordered =
            MonoidalGraph::build(&["1", "2"], &[("g", &["2", "1"], &["2", "1"])]).unwrap();
        assert_eq!(
            DistributedAlphabet::new(unordered),
            Err(SignatureError::SortsOutOfOrder("g".into()))
        );
        let named = MonoidalGraph::build(&["A"], &[]).unwrap();
        assert!(matches!(
            DistributedAlphabet::new(named),
            Err(SignatureError::SortsNotOrdinal(_))
        ));
        let none = MonoidalGraph::new(Vec::<String>::new()).unwrap();
        assert!(matches!(
            DistributedAlphabet::new(none),
            Err(SignatureError::SortsNotOrdinal(_))
        ));
    }

    #[test]
    fn loc_reads_arity() {
        let g = MonoidalGraph::build(
            &["1", "2", "3"],
            &[("g", &["1", "2"], &["1", "2"]), ("h", &["2"], &["2"])],
        )
        .unwrap();
        let a = DistributedAlphabet::new(g).unwrap();
        assert_eq!(a.loc(GenId(0)).unwrap(), &[SortId(0), SortId(1)]);
        assert_eq!(a.loc(GenId(1)).unwrap(), &[SortId(1)]);
        assert!(matches!(
            a.loc(GenId(7)),
            Err(SignatureError::UnknownGenerator(_))
        ));

        let d = Distribution::from_slices(&[&["a", "b"], &["b", "c"]]).unwrap();
        assert_eq!(d.loc("b"), [0, 1].into_iter().collect());
        let a = distribution_to_alphabet(&d);
        assert_eq!(a.loc_of("b").unwrap(), [SortId(0), SortId(1)].into());
    }

    #[test]
    fn independence_to_distribution_examples() {
        let d = independence_to_distribution(&ind(&["a", "b", "c"], &[("a", "c")]));
        assert_eq!(d.components(), &[set(&["a", "b"]), set(&["b", "c"])]);
        let d = independence_to_distribution(&ind(&["a", "b"], &[]));
        assert_eq!(d.components(), &[set(&["a", "b"])]);
        let d = independence_to_distribution(&ind(
            &["a", "b", "c"],
            &[("a", "b"), ("a", "c"), ("b", "c")],
        ));
        assert_eq!(d.components(), &[set(&["a"]), set(&["b"]), set(&["c"])]);
        let d = independence_to_distribution(&IndependenceRelation::default());
        assert!(d.components().is_empty());
        assert!(distribution_to_independence(&d).is_subset(&IndependenceRelation::default()));
        let a = distribution_to_alphabet(&d);
        assert!(a.graph().sorts().is_empty());
        assert_eq!(alphabet_to_distribution(&a).unwrap(), d);
    }

    #[test]
    fn distribution_to_independence_examples() {
        let r = distribution_to_independence(
            &Distribution::from_slices(&[&["a", "b"], &["b", "c"]]).unwrap(),
        );
        assert_eq!(r, ind(&["a", "b", "c"], &[("a", "c")]));
        let r = distribution_to_independence(&Distribution::from_slices(&[&["a", "b"]]).unwrap());
        assert!(r.pairs().is_empty());
        let r = distribution_to_independence(&Distribution::from_slices(&[&["a"], &["b"]]).unwrap());
        assert_eq!(r, ind(&["a", "b"], &[("a", "b")]));
    }

    #[test]
    fn leq_examples() {
        let whole = Distribution::from_slices(&[&["a", "b", "c"]]).unwrap();
        let split = Distribution::from_slices(&[&["a", "b"], &["b", "c"]]).unwrap();
        let singles = Distribution::from_slices(&[&["a"], &["b"], &["c"]]).unwrap();
        assert!(distribution_leq(&whole, &split).unwrap());
        assert!(distribution_leq(&split, &split).unwrap());
        assert!(!distribution_leq(&singles, &whole).unwrap());
        let other = Distribution::from_slices(&[&["a", "z"]]).unwrap();
        assert_eq!(
            distribution_leq(&whole, &other),
            Err(SignatureError::AlphabetMismatch)
        );
        let permuted = Distribution::from_slices(&[&["b", "c"], &["a", "b"]]).unwrap();
        assert!(distribution_equivalent(&split, &permuted).unwrap());
    }

    #[test]
    fn alphabet_round_trip() {
        let d = Distribution::from_slices(&[&["a", "b"], &["b", "c"]]).unwrap();
        let a = distribution_to_alphabet(&d);
        let expected = MonoidalGraph::build(
            &["1", "2"],
            &[
                ("a", &["1"], &["1"]),
                ("b", &["1", "2"], &["1", "2"]),
                ("c", &["2"], &["2"]),
            ],
        )
        .unwrap();
        assert_eq!(**a.graph(), expected);
        assert_eq!(alphabet_to_distribution(&a).unwrap(), d);

        let single = Distribution::from_slices(&[&["x"]]).unwrap();
        let a = distribution_to_alphabet(&single);
        assert_eq!(a.graph().boxes()[0].arity, vec![SortId(0)]);

        let unused = DistributedAlphabet::new(
            MonoidalGraph::build(&["1", "2"], &[("a", &["1"], &["1"])]).unwrap(),
        )
        .unwrap();
        assert_eq!(
            alphabet_to_distribution(&unused),
            Err(SignatureError::EmptyComponent(2))
        );
    }

    #[test]
    fn morphisms() {
        let g = Arc::new(greek_chain_graph());
        GraphMorphism::identity(g.clone()).validate().unwrap();

        let big = Arc::new(
            MonoidalGraph::build(&["X"], &[("f", &["X", "X"], &["X"]), ("u", &["X"], &["X"])])
                .unwrap(),
        );
        let small = Arc::new(MonoidalGraph::build(&["Y"], &[("h", &["Y"], &["Y"])]).unwrap());
        let err = GraphMorphism::new(
            big.clone(),
            small.clone(),
            vec![SortId(0)],
            vec![GenId(0), GenId(0)],
        )
        .unwrap_err();
        assert_eq!(err, SignatureError::IncompatibleBoxImage("f".into()));

        let err = GraphMorphism::new(big, small, vec![SortId(0)], vec![GenId(0)]).unwrap_err();
        assert!(matches!(err, SignatureError::IncompleteMorphism(_)));
    }

    #[test]
    fn circuit_grammar_morphism_is_valid() {
        let m = Arc::new(
            MonoidalGraph::build(
                &["S", "A", "B", "C"],
                &[
                    ("s", &["S"], &["A", "B"]),
                    ("c", &["A"], &["A"]),
                    ("v", &["B"], &["C"]),
                    ("s'", &["A", "C"], &["S"]),
                ],
            )
            .unwrap(),
        );
        let gamma = Arc::new(
            MonoidalGraph::build(
                &["•"],
                &[
                    ("fork", &["•"], &["•", "•"]),
                    ("capacitor", &["•"], &["•"]),
                    ("source", &["•"], &["•"]),
                    ("join", &["•", "•"], &["•"]),
                ],
            )
            .unwrap(),
        );
        GraphMorphism::new(
            m,
            gamma,
            vec![SortId(0); 4],
            vec![GenId(0), GenId(1), GenId(2), GenId(3)],
        )
        .unwrap();
    }

    #[test]
    fn reflexive_pairs_are_rejected() {
        let err = IndependenceRelation::new(["a"], [("a".to_string(), "a".to_string())]);
        assert_eq!(err, Err(SignatureError::ReflexivePair("a".into())));
        let err = IndependenceRelation::new(["a"], [("a".to_string(), "b".to_string())]);
        assert_eq!(err, Err(SignatureError::UnknownAction("b".into())));
    }

    #[test]
    fn clique_algorithms_agree() {
        // Deterministic pseudo-random graphs on up to 9 vertices.
        let mut seed = 0x2545_f491_u64;
        for n in 0..=9 {
            for _ in 0..20 {
                let mut adj = vec![vec![false; n]; n];
                for i in 0..n {
                    for j in (i + 1)..n {
                        seed ^= seed << 13;
                        seed ^= seed >> 7;
                        seed ^= seed << 17;
                        let edge = seed % 3 != 0;
                        adj[i][j] = edge;
                        adj[j][i] = edge;
                    }
                }
                let mut brute = maximal_cliques_by_subsets(&adj);
                brute.sort();
                assert_eq!(brute, maximal_cliques_bron_kerbosch(&adj));
            }
        }
    }
}
