//! Structural controllability analysis of zero/star system patterns and
//! minimum constrained input selection.
//!
//! The crate is organised bottom-up:
//!
//! - [`structmat`]: zero/star patterns, problem instances, file formats
//! - [`graph`]: state/system digraphs, SCCs, condensation
//! - [`matching`]: bipartite graphs and Hopcroft-Karp
//! - [`ctrl`]: structural controllability tests and a numeric probe
//! - [`setcover`]: minimum set covering and the set-cover construction
//! - [`mincis`]: input selection solvers and leader selection

pub mod ctrl;
pub mod error;
pub mod graph;
pub mod matching;
pub mod mincis;
pub mod setcover;
pub mod structmat;

pub use ctrl::{is_structurally_controllable, is_structurally_controllable_pm, numeric_probe};
pub use error::{Error, Result};
pub use graph::{condense, input_coverage, state_digraph, system_digraph, Condensation, Digraph, VertexKind};
pub use matching::{has_perfect_matching, maximum_matching, state_bipartite, BipartiteGraph, Matching};
pub use mincis::{
    brute_force_mincis, dedicated_input_selection, leader_selection_constrained,
    leader_selection_unconstrained, mincis_reduce, solve_mincis, Certificate, SelectionResult, SolveMode,
    DEFAULT_BRUTE_CAP,
};
pub use setcover::{exact_min_cover, greedy_cover, is_cover, setcover_to_mincis, SetCoverInstance};
pub use structmat::{identity_pattern, parse_struct_matrix, ProblemInstance, StructMatrix};
