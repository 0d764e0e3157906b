use thiserror::Error;

/// Errors surfaced by the library. Classification deliberately fails loudly in
/// ambiguous bands instead of guessing: a wrong parabolic/elliptic call shifts
/// rho by 1 or 2 and silently corrupts every downstream signature.
#[derive(Debug, Error)]
pub enum Error {
    #[error("trace {trace} is within {eps} of ±2 and no exact tag resolves the class")]
    AmbiguousTrace { trace: f64, eps: f64 },
    #[error("element is not elliptic")]
    NotElliptic,
    #[error("lift evaluation unstable under refinement: {0} vs {1}")]
    RefinementUnstable(f64, f64),
    #[error("euler cocycle not near an integer: {0}")]
    NonIntegerCocycle(f64),
    #[error("boundary holonomy is elliptic; relative Euler class undefined")]
    EllipticBoundary,
    #[error("relator image is not central (distance {0} from ±I)")]
    NonCentralProduct(f64),
    #[error("2T + rho = {0} is not within tolerance of an integer")]
    IntegralityFailure(f64),
    #[error("invalid surface: genus {g}, {n} boundary components")]
    InvalidSurface { g: usize, n: usize },
    #[error("holonomy mismatch along glued boundary: distance {0}")]
    HolonomyMismatch(f64),
    #[error("gluing only supports last boundary of the left factor against first of the right")]
    NonStandardIndex,
    #[error("value {m} is not achievable: {reason}")]
    UnachievableValue { m: i64, reason: String },
    #[error("plan incomplete: {0}")]
    PlanIncomplete(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("target trace {0} out of range for this commutator family: {1}")]
    OutOfFamilyRange(f64, String),
    #[error("unsupported surface for this family: {0}")]
    UnsupportedSurface(String),
    #[error("coefficient shape not supported by the cohomology model: {0}")]
    RealificationUnsupported(String),
    #[error("intersection form ill-conditioned: spectral gap ratio {0:e}")]
    IllConditioned(f64),
    #[error("certificate malformed: {0}")]
    BadCertificate(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
