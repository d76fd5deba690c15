use thiserror::Error;

use crate::construct::CyclicCertificate;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field degree {0} is outside 1..=24")]
    UnsupportedDegree(u32),
    #[error("modulus {modulus:#x} does not have degree {degree}")]
    ModulusDegree { degree: u32, modulus: u32 },
    #[error("modulus {0:#x} is reducible over GF(2)")]
    ReducibleModulus(u32),
    #[error("default modulus {0:#x} is not primitive")]
    NonPrimitiveDefault(u32),
    #[error("no primitive element found modulo {0:#x}")]
    NoPrimitiveElement(u32),
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("discrete log of zero")]
    ZeroLog,
    #[error("{r} does not divide the field degree {degree}")]
    NotADivisor { r: u32, degree: u32 },
    #[error("index {index} is not an element of GF(2^{degree})")]
    NotAnElement { index: u32, degree: u32 },

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("truth table has {got} bits, expected {expected}")]
    TableLength { expected: usize, got: usize },
    #[error("function is not quadratic (algebraic degree {0})")]
    NotQuadratic(u32),

    #[error("m must be even and at least 4, got {0}")]
    BadEvenM(u32),
    #[error("n must be odd and at least 3, got {0}")]
    BadOddN(u32),
    #[error("invalid chain spec: {0}")]
    InvalidChain(String),
    #[error("m = {m} exceeds the {mode} certification cap of {cap}; pass an override to force it")]
    CertificationCap { m: u32, mode: &'static str, cap: u32 },
    #[error("affine-difference hypothesis fails: f(x1,x2+1)+f(x1,x2) is not tr(λx1)+ν")]
    HypothesisViolation,
    #[error("certification failed: {0:?}")]
    NotCertified(Box<CyclicCertificate>),
    #[error("function is not normalized: f(0,0) and f(0,1) must both be 0")]
    NotNormalized,
    #[error("trace-difference hypothesis fails: f(x1,0)+f(x1,1) != tr(x1)")]
    TraceDifference,
    #[error("eps vector has length {got}, expected {expected}")]
    EpsLength { expected: usize, got: usize },

    #[error("Levenshtein bound not applicable for N = {n}, K = {k}")]
    BoundInapplicable { n: i64, k: i64 },
    #[error("codebook needs at least two rows")]
    TooFewRows,
    #[error("sequences have different periods ({0} vs {1})")]
    PeriodMismatch(usize, usize),
    #[error("shift {tau} outside 0..{period}")]
    ShiftOutOfRange { tau: usize, period: usize },

    #[error("block set B(k) is empty for k = {0}")]
    EmptyBlocks(usize),
    #[error("design strength t = {t} must satisfy 1 <= t <= k = {k}")]
    BadStrength { t: usize, k: usize },

    #[error("linearized polynomial has {got} coefficients, field degree is {degree}")]
    LinPolyLength { degree: u32, got: usize },
    #[error("division by the zero skew polynomial")]
    SkewDivByZero,
    #[error("tau must lie outside GF(2)")]
    TauInPrimeField,
    #[error("field degree must be odd, got {0}")]
    EvenDegree(u32),

    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
