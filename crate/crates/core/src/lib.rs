//! String-diagrammatic trace theory.
//!
//! Mazurkiewicz traces over a distributed alphabet are exactly the
//! full-boundary endomorphism string diagrams of the free prop on the
//! corresponding monoidal distributed alphabet. This crate implements both
//! sides of that correspondence and the machinery around it:
//!
//! - [`signature`]: monoidal graphs, distributions, independence relations;
//! - [`diagram`]: free-prop string diagrams with decidable equality;
//! - [`trace`]: trace monoids, Foata normal forms, serializations;
//! - [`grammar`]: regular monoidal grammars and their languages;
//! - [`automata`]: symmetric monoidal and asynchronous automata;
//! - [`premonoidal`]: runtime-threaded diagrams and serialization;
//! - [`json`] and [`cli`]: file formats and the `tracelab` command line.

pub mod automata;
pub mod cli;
pub mod diagram;
pub mod grammar;
pub mod json;
pub mod premonoidal;
pub mod signature;
pub mod trace;

pub use diagram::{CanonicalForm, Diagram, DiagramError};
pub use signature::{
    DistributedAlphabet, Distribution, GenId, GraphMorphism, IndependenceRelation, MonoidalGraph,
    SignatureError, SortId,
};

pub use trace::{Trace, TraceError};
