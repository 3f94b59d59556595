use thiserror::Error;

use crate::geometry::Violation;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("denominator must be positive")]
    ZeroDenominator,
    #[error("point ids {0} and {1} coincide or are identical")]
    CoincidentPoints(usize, usize),
    #[error("unknown point id {0}")]
    UnknownPoint(usize),
    #[error("coordinate precision exceeds the supported lattice range (|value| <= 2^61 after scaling)")]
    CoordinateRange,
    #[error("point set violates general position: {}", format_violations(.0))]
    GeneralPosition(Vec<Violation>),
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("square side must be positive")]
    NonPositiveSide,
    #[error("point {0} is not on the square boundary")]
    NotOnBoundary(usize),
}

fn format_violations(v: &[Violation]) -> String {
    let shown: Vec<String> = v.iter().take(8).map(|x| x.to_string()).collect();
    if v.len() > 8 {
        format!("{} (and {} more)", shown.join(", "), v.len() - 8)
    } else {
        shown.join(", ")
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TriangulationError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("face {0:?} has no empty circumscribing square")]
    MissingCircumsquare(Vec<usize>),
    #[error("triangulation is invalid: {0}")]
    Invalid(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RouteError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("({0}, {1}) is an edge of the triangulation")]
    DirectEdge(usize, usize),
    #[error("segment ({0}, {1}) passes through vertex {2}")]
    VertexOnSegment(usize, usize, usize),
    #[error("segment ({0}, {1}) leaves the triangulated region")]
    LeavesTriangulation(usize, usize),
    #[error("rectangle R({0}, {1}) is not empty")]
    RectangleNotEmpty(usize, usize),
    #[error("structural violation: {0}")]
    Structure(String),
    #[error("certificate slack violated: {label}: bound {bound} < value {value}")]
    Slack {
        label: String,
        bound: f64,
        value: f64,
    },
    #[error("recursion depth cap {0} exceeded")]
    DepthExceeded(usize),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeneratorError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
