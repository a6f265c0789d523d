use thiserror::Error;

use crate::degree::Degree;

/// A pair of edge names, printed as `f.g`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EdgePair(pub String, pub String);

impl std::fmt::Display for EdgePair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}.{}", self.0, self.1)
    }
}

fn list<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KgError {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("edge {0} is malformed (unknown endpoint or colour out of range)")]
    MalformedEdge(String),
    #[error("square #{index} ({text}) is malformed: {reason}")]
    MalformedSquare {
        index: usize,
        text: String,
        reason: String,
    },
    #[error("composable pairs without a square: {}", list(.0))]
    IncompleteSquares(Vec<EdgePair>),
    #[error("composable pairs covered by more than one square: {}", list(.0))]
    AmbiguousSquares(Vec<EdgePair>),
    #[error("square resolution is not associative on {}", .0.iter().map(|t| t.join(".")).collect::<Vec<_>>().join(", "))]
    NonAssociative(Vec<[String; 3]>),
    #[error("paths are not composable")]
    NotComposable,
    #[error("degree {requested} is out of range for a path of degree {available}")]
    DegreeOutOfRange {
        requested: Degree,
        available: Degree,
    },
    #[error("degree subtraction {lhs} - {rhs} underflows")]
    DegreeUnderflow { lhs: Degree, rhs: Degree },
    #[error("paths have different ranges")]
    RangeMismatch,
    #[error("path does not have range at the given vertex")]
    NotAtVertex,
    #[error("graph is not locally convex (witness edges {0} and {1})")]
    NotLocallyConvex(String, String),
    #[error("fragment is not determined far enough to evaluate this (needs degree {needed})")]
    InsufficientDepth { needed: Degree },
    #[error("depth {depth} is too small for degree {needed}")]
    DepthTooSmall { depth: u32, needed: Degree },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("vertex set is not saturated and hereditary")]
    NotSaturatedHereditary,
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("internal invariant breached: {0}")]
    Invariant(String),
}

pub type Result<T, E = KgError> = std::result::Result<T, E>;
