use thiserror::Error;

/// Everything that can go wrong across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be positive and finite, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },

    #[error("{name} must be finite, got {value}")]
    NonFiniteParameter { name: &'static str, value: f64 },

    #[error("grid needs at least {min} points, got {got}")]
    GridTooSmall { min: usize, got: usize },

    #[error("grid bounds out of order: y_min = {y_min}, y_max = {y_max}")]
    GridBounds { y_min: f64, y_max: f64 },

    #[error("y = {y} lies outside the mass positivity domain ({lower}, {upper})")]
    OutsideDomain { y: f64, lower: f64, upper: f64 },

    #[error("sample length {got} does not match grid length {expected}")]
    LengthMismatch { got: usize, expected: usize },

    #[error("gauge solution underflowed to zero near y = {y}")]
    GaugeUnderflow { y: f64 },

    #[error("custom couplings have no closed-form gauge; integrate the gauge ODE instead")]
    NoClosedFormGauge,

    #[error("case c preset needs alpha0 = 2*sqrt(gamma_tilde), which is not real for gamma_tilde = {gamma_tilde}")]
    CasePresetUndefined { gamma_tilde: f64 },

    #[error("ordering exponents must satisfy a + b + c = -1, got sum = {sum}")]
    OrderingConstraint { sum: f64 },

    #[error("closed-form levels need gamma_tilde >= 0, got {gamma_tilde}; use the negative-gamma continuation")]
    NegativeGamma { gamma_tilde: f64 },

    #[error("negative-gamma continuation needs gamma_tilde < 0, got {gamma_tilde}")]
    NonNegativeGamma { gamma_tilde: f64 },

    #[error(
        "case {case} level n = {n}: energy radicand {radicand} < 0 at gamma_tilde = {gamma_tilde}"
    )]
    EnergyRadicand {
        case: char,
        n: usize,
        gamma_tilde: f64,
        radicand: f64,
    },

    #[error("energy threshold needs gamma_tilde > 0, got {gamma_tilde}")]
    NoThreshold { gamma_tilde: f64 },

    #[error("asymptotic gap is defined for n >= 1")]
    AsymptoticGapIndex,

    #[error("states must share the same case and gamma_tilde")]
    MismatchedStates,

    #[error("eigenvalue index {index} out of range for matrix dimension {dim}")]
    EigenIndex { index: usize, dim: usize },

    #[error("bisection stalled on bracket [{lower}, {upper}]")]
    Bisection { lower: f64, upper: f64 },

    #[error("inverse iteration failed to converge for eigenvalue index {index}")]
    InverseIteration { index: usize },

    #[error("quadrature needs at least 3 samples, got {got}")]
    QuadratureTooShort { got: usize },

    #[error("convergence study needs at least {min} grids, got {got}")]
    TooFewGrids { min: usize, got: usize },

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),

    #[error("unknown case `{0}`, expected a, b or c")]
    UnknownCase(String),
}

pub type Result<T> = std::result::Result<T, Error>;
