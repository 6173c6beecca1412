use thiserror::Error;

use crate::geometry::Point;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon edges {0} and {1} intersect")]
    SelfIntersecting(usize, usize),
    #[error("polygon has zero signed area")]
    DegenerateArea,
    #[error("non-finite coordinate at vertex {0}")]
    NonFinite(usize),
    #[error("curve has no vertices")]
    EmptyCurve,
    #[error("consecutive duplicate vertex at index {0}")]
    DuplicateVertex(usize),
    #[error("point ({}, {}) lies outside the polygon", .0.x, .0.y)]
    PointOutsidePolygon(Point),
    #[error("segment from ({}, {}) to ({}, {}) leaves the polygon", .0.x, .0.y, .1.x, .1.y)]
    SegmentOutsidePolygon(Point, Point),
    #[error("epsilon must be non-negative and finite, got {0}")]
    NegativeEpsilon(f64),
    #[error("curve {0} violates its monotonicity contract")]
    MonotonicityViolation(usize),
    #[error("no red-blue intersection in the slab")]
    EmptySlab,
    #[error("empty input")]
    EmptyInput,
    #[error("optimizer exceeded its iteration guard ({0} iterations)")]
    NonTermination(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
