use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("point ({x}, {y}) is not inside the open unit disk")]
    OutsideDisk { x: f64, y: f64 },
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("curvature scale must be finite and positive, got {0}")]
    InvalidCurvature(f64),
    #[error("angle is undefined for a zero tangent vector")]
    ZeroVector,
    #[error("tangent vectors are attached to different base points")]
    BaseMismatch,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("{oracles} oracles but {weights} weights")]
    LengthMismatch { oracles: usize, weights: usize },
    #[error("cannot combine an empty list of oracles")]
    Empty,
    #[error("weights must be finite and positive, got {0}")]
    InvalidWeight(f64),
    #[error("radius must be finite and positive, got {0}")]
    InvalidRadius(f64),
    #[error("Busemann direction must have unit modulus, got |eta| = {0}")]
    NotUnitDirection(f64),
    #[error("unknown oracle `{0}`")]
    Unknown(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScheduleError {
    #[error("step-size coefficient must be finite and positive, got {0}")]
    NonPositive(f64),
    #[error("power-law exponent must lie in (0.5, 1], got {0}")]
    BadExponent(f64),
    #[error("step table must be nonempty")]
    EmptyTable,
    #[error("cannot parse schedule `{spec}`: {reason}")]
    Parse { spec: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("max_iters must be at least 1")]
    NoIterations,
    #[error("record_every must be at least 1")]
    ZeroRecordEvery,
    #[error("stop_grad_tol must be finite and nonnegative, got {0}")]
    BadStopTolerance(f64),
    #[error("subgradient vanished; the method stops here")]
    ZeroSubgradient,
    #[error("oracle has no known optimal value")]
    MissingFStar,
    #[error("oracle has no known solution point")]
    MissingSolutionPoint,
    #[error("complexity constants must be positive, got A = {a}, B = {b}")]
    BadConstants { a: f64, b: f64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("degenerate triangle: side {0} is below 1e-12")]
    DegenerateTriangle(f64),
    #[error("hypothesis f(u) < f(x) on B[x_bar, delta] failed on the sampled net")]
    HypothesisUnverified,
    #[error("hypothesis d(x, x_bar) >= 2 delta failed: d = {distance}, delta = {delta}")]
    TooClose { distance: f64, delta: f64 },
    #[error("f stays below the level along ray {ray} (direction angle {angle})")]
    WitnessNotFound { ray: usize, angle: f64 },
    #[error("oracle has no known solution point to cast rays from")]
    NoSolutionPoint,
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}
