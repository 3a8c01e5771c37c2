use thiserror::Error;

use crate::feasibility::InfeasibilityCut;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {tail} -> {head}")]
    DuplicateEdge { tail: usize, head: usize },
    #[error("expected {expected} weights, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("edge {edge} has negative weight {weight}")]
    NegativeWeight { edge: usize, weight: Rational },
    #[error("vertex {vertex} is not balanced: out-sum {out_sum}, in-sum {in_sum}")]
    NotBalanced {
        vertex: usize,
        out_sum: Box<Rational>,
        in_sum: Box<Rational>,
    },
    #[error("vertex {vertex} has non-integer weight {weight}")]
    NonIntegerVertexWeight { vertex: usize, weight: Rational },
    #[error("cycle edge {edge} has integer weight")]
    NotCompletelyDecimal { edge: usize },
    #[error("malformed cycle: {0}")]
    MalformedCycle(String),
    #[error("graph is not strongly connected")]
    NotStronglyConnected,
    #[error("infeasible vertex weights: {0}")]
    Infeasible(Box<InfeasibilityCut>),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
