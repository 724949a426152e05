//! Error type shared by every module in the crate.

use thiserror::Error;

/// Errors produced by geometry construction, validity checks, and numerics.
#[derive(Debug, Error)]
pub enum Error {
    #[error("periodic grid needs an even sample count of at least 8, got {0}")]
    InvalidGridSize(usize),

    #[error("samples must all be finite")]
    NonFiniteSamples,

    #[error("finite-difference step must be positive, got {0}")]
    NonPositiveStep(f64),

    #[error("function evaluation failed inside the finite-difference stencil at t = {0}")]
    StencilEvaluation(f64),

    #[error("leading quadratic coefficient must be nonzero")]
    ZeroLeadingCoefficient,

    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("points are collinear or degenerate; no convex polygon exists")]
    DegeneratePolygon,

    #[error(
        "polygon is not convex: vertices {prev:?}, {apex:?}, {next:?} (indices {index_prev}, {index}, {index_next}) turn clockwise"
    )]
    NonConvex {
        index_prev: usize,
        index: usize,
        index_next: usize,
        prev: [f64; 2],
        apex: [f64; 2],
        next: [f64; 2],
    },

    #[error("offset radius must be nonnegative, got {0}")]
    NegativeRadius(f64),

    #[error("rounding radius must be positive, got {0}")]
    NonPositiveRounding(f64),

    #[error("arc subdivision count must be at least 1")]
    ZeroArcSteps,

    #[error("support function constant term must be positive, got {0}")]
    NonPositiveMean(f64),

    #[error("support function fails the positive-curvature check: min(p + p'') = {min:e} at theta = {theta:.6}")]
    NonPositiveCurvature { min: f64, theta: f64 },

    #[error("area and perimeter must be positive, got A = {area}, L = {perimeter}")]
    NonPositiveBody { area: f64, perimeter: f64 },

    #[error("t = {t} lies outside the smooth extension domain (-delta, inf) with delta = {delta}")]
    OutsideFlowDomain { t: f64, delta: f64 },

    #[error("flow sampling needs at least 2 steps, got {0}")]
    TooFewSteps(usize),

    #[error("flow sampling needs t_max > 0, got {0}")]
    NonPositiveRange(f64),

    #[error("input must have zero mean, got mean {0:e}")]
    NonzeroMean(f64),

    #[error("translation direction must be nonzero")]
    ZeroTranslation,

    #[error("scaling rate must be positive, got {0}")]
    NonPositiveScaling(f64),

    #[error("variation family does not start at a disk: deviation from constant is {0:e}")]
    NotADiskAtZero(f64),

    #[error(
        "assembled {order} derivative {assembled:e} disagrees with finite differences {direct:e} beyond tolerance {tolerance:e}"
    )]
    DerivativeMismatch {
        order: &'static str,
        assembled: f64,
        direct: f64,
        tolerance: f64,
    },

    #[error("Wirtinger equality certificate is inconsistent: residual norm {0:e}")]
    InconsistentCertificate(f64),

    #[error("first-harmonic profile mismatch: relative residual {0:e}; the body is not a disk despite its small deficit")]
    ProfileMismatch(f64),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
