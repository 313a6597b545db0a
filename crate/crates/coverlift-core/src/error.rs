use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("surface S_{{{genus},{punctures}}} is not hyperbolic (euler characteristic {chi} >= 0)")]
    NotHyperbolic { genus: u32, punctures: u32, chi: i64 },
    #[error("closed surfaces are not supported (punctures = 0)")]
    Closed,
    #[error("curve complex requires complexity >= 2, got {0}")]
    LowComplexity(i64),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangulationError {
    #[error("side {0} is glued to itself")]
    SelfGluedSide(String),
    #[error("side {0} appears in {1} gluings, expected exactly 1")]
    BadGluingCount(String, usize),
    #[error("triangle index {0} out of range")]
    BadTriangleIndex(usize),
    #[error("edge {0} is not flippable: both sides lie in one triangle")]
    NotFlippable(usize),
    #[error("edge index {0} out of range")]
    BadEdgeIndex(usize),
    #[error("triangulation census mismatch: {0}")]
    CensusMismatch(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("coordinate vector has {got} entries, triangulation has {expected} edges")]
    WrongLength { got: usize, expected: usize },
    #[error("coordinates violate the matching conditions: {0:?}")]
    Invalid(Vec<MatchingViolation>),
    #[error("curve weights too large for tracing (edge {edge} has weight {weight})")]
    WeightsTooLarge { edge: usize, weight: String },
    #[error("expected a connected curve, got {0} components")]
    Disconnected(usize),
    #[error("expected an essential non-peripheral curve")]
    NotEssential,
    #[error("the empty multicurve has no curve class")]
    Empty,
    #[error("curves live on different triangulations")]
    SurfaceMismatch,
    #[error("operation budget exceeded: {0}")]
    Budget(String),
}

/// One failed matching condition in a triangle, reported by `validate`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct MatchingViolation {
    pub triangle: usize,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum ViolationKind {
    Parity,
    TriangleInequality,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("degree must be >= 1, got {0}")]
    BadDegree(usize),
    #[error("permutation for edge {0} is not a bijection of 1..=degree")]
    NotBijection(usize),
    #[error("cover specification has {got} edge permutations, triangulation has {expected} edges")]
    WrongEdgeCount { got: usize, expected: usize },
    #[error("cover is disconnected: sheet action is not transitive")]
    Disconnected,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CuspError {
    #[error("parameter {name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("delta' must not exceed delta ({delta_prime} > {delta})")]
    Ordering { delta: f64, delta_prime: f64 },
    #[error("cover degree must be >= 1, got {0}")]
    BadDegree(i64),
    #[error("path point {index} has non-positive height {height}")]
    BadHeight { index: usize, height: f64 },
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("bad experiment config: {0}")]
    BadConfig(String),
    #[error("hard invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}
