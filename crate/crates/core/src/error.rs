use thiserror::Error;

use crate::graph::{Vertex, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid vertex {0}")]
    InvalidVertex(Vertex),
    #[error("vertex {w} on the opposite side is not adjacent to {v}")]
    NotAdjacent { v: Vertex, w: usize },
    #[error("graph violates {} invariant(s): {}", .0.len(), join(.0))]
    Invalid(Vec<Violation>),
}

fn join(vs: &[Violation]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error("side sizes ({m},{n}) must both be positive multiples of 3")]
    Divisibility { m: usize, n: usize },
    #[error("invalid arc probability profile ({0}, {1}, {2}): entries must be nonnegative and sum to 1")]
    BadProfile(f64, f64, f64),
    #[error("edge probability {0} is outside [0, 1]")]
    BadEdgeProbability(f64),
    #[error("palette must contain at least one color")]
    EmptyPalette,
    #[error("could not meet the degree hypothesis within {attempts} attempts (seed {seed}, last deficient vertex {vertex})")]
    GenerationFailed { seed: u64, attempts: u32, vertex: Vertex },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("edge ({x},{y}) is not present")]
    MissingEdge { x: usize, y: usize },
    #[error("color degree of {vertex} is {have}, below the required {need}")]
    HypothesisTooWeak { vertex: Vertex, have: usize, need: usize },
    #[error("certificate does not describe a directed 4-cycle of the auxiliary orientation: {0}")]
    InvalidCertificate(crate::detect::Rejection),
    #[error("lifted cycle is not rainbow: {0:?}")]
    LiftNotRainbow(crate::graph::RainbowC4Certificate),
    #[error("block decomposition does not match the auxiliary orientation")]
    BlocksMismatch,
    #[error("no rainbow 4-cycle exists; the colored graph is a counterexample")]
    CounterexampleFound,
    #[error("graph has no edges")]
    NoEdges,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error("3^{cells} = {instances} instances exceeds the exhaustive budget of 3^16")]
    BudgetExceeded { cells: usize, instances: u128 },
    #[error("side sizes must be at least 2, got ({m},{n})")]
    SidesTooSmall { m: usize, n: usize },
    #[error("at least one trial is required")]
    NoTrials,
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("could not build a worker pool: {0}")]
    Pool(String),
}
