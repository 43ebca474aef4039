//! Directed 4-cycles in oriented bipartite graphs and rainbow 4-cycles in
//! edge-colored bipartite graphs.
//!
//! The crate provides the extremal orientation `D*(m, n)`, certificate-producing
//! finders with independent checkers, the reduction from a colored graph to an
//! auxiliary orientation, and exhaustive and randomized verification harnesses.

mod bits;
pub mod constructions;
pub mod detect;
pub mod dstar;
pub mod error;
pub mod format;
pub mod graph;
pub mod harness;
pub mod hypothesis;
pub mod reduction;

pub use constructions::{
    gen_dstar, gen_proper_coloring_complete, gen_random_colored, gen_random_oriented,
    pad_to_multiple_of_three, ArcProfile, ColoredParams, PaddingResult,
};
pub use detect::{
    find_directed_c4, find_rainbow_c4_exhaustive, verify_directed_c4, verify_rainbow_c4, Rejection,
};
pub use error::{ConstructionError, GraphError, HarnessError, ReductionError};
pub use graph::{
    Color, ColoredBipartiteGraph, Direction, DirectedC4Certificate, OrientedBipartiteGraph,
    RainbowC4Certificate, Side, Vertex, Violation,
};
pub use hypothesis::{check_thm10_hypothesis, check_thm9_hypothesis, HypothesisCheck, ThresholdMode};
pub use dstar::{is_dstar, BlockDecomposition};
pub use reduction::{
    build_reduction, build_reduction_sized, extremal_escape, find_rainbow_c4_guided, lift_directed_c4,
    GuidedOutcome, ProofBranch, ReductionContext, ReductionOutcome,
};
pub use format::{parse_graph, to_json, AnyGraph, FormatError, GraphFile};
pub use harness::{
    verify_thm10_random, verify_thm9_exhaustive, verify_thm9_random, Thm10Params, VerificationReport,
};
