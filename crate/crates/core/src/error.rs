use thiserror::Error;

#[derive(Debug, Error)]
pub enum BoyError {
    #[error("resolution must be at least 2, got {0}")]
    InvalidResolution(usize),
    #[error("truncation factor must exceed 1, got {0}")]
    InvalidTruncation(f64),
    #[error("gluing entry {entry} ({detail}): chain lengths differ ({left} vs {right})")]
    ChainLengthMismatch {
        entry: usize,
        detail: String,
        left: usize,
        right: usize,
    },
    #[error("gluing entry {entry} ({detail}): positions differ by {deviation:e}")]
    PositionMismatch {
        entry: usize,
        detail: String,
        deviation: f64,
    },
    #[error("gluing entry {entry}: unknown arc {arc}")]
    UnknownArc { entry: usize, arc: String },
    #[error("arc {0} appears in more than one gluing entry")]
    DuplicateArc(String),
    #[error("face {0} degenerates after gluing")]
    DegenerateFace(usize),
    #[error("edge {0:?} borders more than two faces")]
    NonManifoldEdge((usize, usize)),
    #[error("boundary is not a union of simple loops at vertex {0}")]
    NonManifoldBoundary(usize),
    #[error("circuit expansion failed: {0}")]
    CircuitNotSingleCycle(String),
    #[error("boundary is not a single loop of 18 arcs: {0}")]
    BoundaryShape(String),
    #[error("loop passes through the origin at vertex {0}")]
    LoopTouchesOrigin(usize),
    #[error("boundary is not cone-friendly: segments {0} and {1} overlap radially")]
    NotConeFriendly(usize, usize),
    #[error("degenerate (zero-length) segment at boundary vertex {0}")]
    DegenerateSegment(usize),
    #[error("complex has a vertex at infinity; request clamping to export it")]
    VertexAtInfinity,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, BoyError>;
