use thiserror::Error;

/// Every failure an evaluator can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by vanishing factor: {0}")]
    DivisionByVanishingFactor(String),
    #[error("ill-conditioned: {0}")]
    IllConditioned(String),
    #[error("term budget exceeded after {0} terms")]
    BudgetExceeded(usize),
    #[error("series does not decay within {terms} terms ({detail})")]
    NoDecay { terms: usize, detail: String },
    #[error("domain violation: {0}")]
    DomainViolation(String),
    #[error("pole of gamma at nonpositive integer {0}")]
    PoleAtNonpositiveInteger(i64),
    #[error("quadrature node cap {cap} exceeded (last change {last_delta:e})")]
    NodeCapExceeded { cap: usize, last_delta: f64 },
    #[error("integrand does not decay on the half-line (window {0})")]
    NoDecayDetected(f64),
    #[error("contour is ill-conditioned: {0}")]
    IllConditionedContour(String),
    #[error("non-finite result: {0}")]
    NonFinite(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("missing parameter `{0}`")]
    MissingParameter(String),
    #[error("bad parameter `{name}`: {reason}")]
    BadParameter { name: String, reason: String },
    #[error("sampler exhausted for `{0}` after 1000 draws")]
    SamplerExhausted(String),
    #[error("unknown trend family `{0}`")]
    UnknownFamily(String),
}

pub type Result<T> = std::result::Result<T, Error>;
