//! Self-similar groups given by finite Mealy automata.
//!
//! The crate parses recursion text into automata, solves the word problem
//! through minimal automata, computes nuclei of contracting groups, builds
//! Schreier graphs on the levels of the rooted tree and approximates the
//! limit space through asymptotic equivalence and the self-similarity graph.

pub mod alphabet;
pub mod automaton;
pub mod catalog;
pub mod element;
pub mod error;
pub mod export;
pub mod group;
pub mod limit;
pub mod minimize;
pub mod nucleus;
pub mod parser;
pub mod schreier;
pub mod spectrum;

pub use alphabet::{Alphabet, Letter, Permutation};
pub use automaton::{MealyAutomaton, State, StateId};
pub use catalog::{
    catalog_get, catalog_list, check, mother_group, CatalogEntry, CheckOutcome, ExpectedProperty,
};
pub use element::CanonicalElement;
pub use error::{Error, Result};
pub use export::{parse_edges_tsv, ExportGraph, Format};
pub use group::{AutomatonGroup, GroupWord, Recurrence, Signed};
pub use limit::{
    asymptotic_equivalent, equivalence_class, gh_sequence, self_similarity_graph, BoundaryPoint,
    EdgeKind, EquivalenceWitness, NucleusDiagram, SelfSimilarityGraph,
};
pub use minimize::{partition_refinement, MealyTable};
pub use nucleus::{compute_nucleus, Bound, NucleusBounds, NucleusResult, Verdict};
pub use parser::{parse, parse_bytes, ParseError, ParseErrorKind, RecursionDocument, StateDef};
pub use schreier::{
    build_schreier, dual_moore_check, pointed_component, Arrow, LabeledSchreierGraph, RootedGraph,
    SchreierLimits, SimplicialGraph, SymbolicAdjacencyMatrix, VERTEX_CAP_ENV,
};
pub use spectrum::{multiplicity, spectrum, walk_operator};
