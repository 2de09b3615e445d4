use thiserror::Error;

use crate::geom::Point;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("coordinate is not finite: ({0}, {1})")]
    NonFinite(f64, f64),
    #[error("segment endpoints coincide at {0:?}")]
    DegenerateSegment(Point),
    #[error("polygon needs at least 3 non-collinear vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon is clockwise (signed area {0}); vertices must be counter-clockwise")]
    Clockwise(f64),
    #[error("polygon boundary is not simple: edges {0} and {1} intersect")]
    NotSimple(usize, usize),
    #[error("polygon is not convex at vertex {0}")]
    NotConvex(usize),
    #[error(
        "polygon violates general position ({0} coordinate pairs shared); \
         enable the general-position rotation (`rotate_gp` / `--rotate-gp`)"
    )]
    GeneralPosition(usize),
    #[error("point {0:?} is not strictly inside the polygon")]
    NotInterior(Point),
    #[error("empty chain: nothing to search")]
    EmptyChain,
    #[error("polygon has {0} vertices; equal-area cuts need at least 5")]
    NoCutNeeded(usize),
    #[error("weight of face {0} must be positive (got {1})")]
    NonPositiveWeight(usize, f64),
    #[error("weights must sum to 1 (sum = {0})")]
    WeightSum(f64),
    #[error("segments {0} and {1} cross")]
    CrossingSegments(usize, usize),
    #[error("query point {0:?} lies outside the bounding box")]
    OutsideBounds(Point),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid subdivision: {0}")]
    InvalidSubdivision(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("oracle mismatch at query {qid} ({point:?}): structure says {got:?}, brute force says {want:?}")]
    OracleMismatch {
        qid: usize,
        point: Point,
        got: Option<usize>,
        want: Option<usize>,
    },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
