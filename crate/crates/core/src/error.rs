use thiserror::Error;

use crate::graph::{Color, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("K_{n} is too small: need n >= {min}")]
    TooFewVertices { n: usize, min: usize },

    #[error("K_{n} is too large for this operation (n <= {max})")]
    TooManyVertices { n: usize, max: usize },

    #[error("({i}, {j}) is not an edge of K_{n}")]
    InvalidEdge { i: Vertex, j: Vertex, n: usize },

    #[error("vertices {0:?} do not form a triangle")]
    InvalidTriangle([Vertex; 3]),

    #[error("n must be odd, got {0}")]
    NotOdd(usize),

    #[error("n must be even, got {0}")]
    NotEven(usize),

    #[error("expected {expected} edge colors for K_{n}, got {got}")]
    ColorArrayLength { n: usize, expected: usize, got: usize },

    #[error("edge {edge} has color {color}, which is not below k = {k}")]
    ColorOutOfRange { edge: usize, color: Color, k: usize },

    #[error("color {color} is not a residue mod {n}")]
    ColorNotResidue { color: Color, n: usize },

    #[error("colors ({0}, {1}, {2}) are not pairwise distinct")]
    DegenerateTriple(Color, Color, Color),

    #[error("rainbow palettes need a proper coloring; vertex {vertex} has two edges colored {color}")]
    ImproperForRainbow { vertex: Vertex, color: Color },

    #[error("edge mask is for K_{mask}, coloring is for K_{coloring}")]
    MaskMismatch { mask: usize, coloring: usize },

    #[error("invalid search problem: {0}")]
    InvalidProblem(String),

    #[error("encoding needs {clauses} clauses, over the budget of {budget}")]
    ClauseBudget { clauses: usize, budget: usize },

    #[error("malformed model: {0}")]
    MalformedModel(String),

    #[error("unknown palette mode {0:?} (expected rainbow, set or multiset)")]
    UnknownMode(String),
}

pub type Result<T> = std::result::Result<T, Error>;
