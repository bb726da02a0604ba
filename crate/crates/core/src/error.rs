//! Error taxonomy shared by every module of the crate.

use thiserror::Error;

/// Errors raised by series arithmetic, seed construction, geometry
/// evaluation, Fuchsian reconstruction, and the verification harness.
#[derive(Debug, Clone, Error)]
pub enum TodaError {
    /// Division by a series whose constant term vanishes.
    #[error("division by a series with vanishing constant term")]
    DegenerateDivision,

    /// An operation needs more truncation order than the operand carries.
    #[error("insufficient truncation order: need {needed}, have {got}")]
    InsufficientOrder { needed: usize, got: usize },

    /// Fractional power or logarithm of a series with vanishing constant term.
    #[error("fractional power of a series with vanishing constant term")]
    DegenerateRoot,

    /// Composition `a(b(z))` with `b(0) != 0`.
    #[error("composition requires the inner series to vanish at the origin")]
    IllegalComposition,

    /// Reversion of a series with vanishing linear coefficient.
    #[error("series is not invertible at the origin (linear coefficient vanishes)")]
    NotInvertibleAtOrigin,

    /// Evaluation of a negative branched power at z = 0.
    #[error("singular evaluation at the origin")]
    SingularEvaluation,

    /// Evaluation outside the configured validity radius.
    #[error("evaluation point |z| = {radius} outside validity radius {validity}")]
    OutOfDomain { radius: f64, validity: f64 },

    /// A weight gamma_i <= -1.
    #[error("illegal weight: gamma[{index}] = {value} must be > -1")]
    IllegalWeight { index: usize, value: f64 },

    /// Two redundant computation routes disagreed beyond tolerance.
    #[error("internal inconsistency in {context}: discrepancy {discrepancy:.3e}")]
    InternalInconsistency { context: String, discrepancy: f64 },

    /// The curve is not totally un-ramified at the origin (some g_i(0) = 0,
    /// equivalently the top reduced Wronskian vanishes at 0).
    #[error("degenerate seed: top reduced Wronskian vanishes at the origin")]
    DegenerateSeed,

    /// Length mismatch between configured vectors.
    #[error("arity mismatch: expected {expected} {what}, got {got}")]
    ArityMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    /// An operation requires a seed in normalized form.
    #[error("seed is not normalized (call normalize first)")]
    NotNormalized,

    /// Indicial roots with non-negligible imaginary parts.
    #[error("indicial polynomial has non-real roots (max |Im| = {max_imag:.3e})")]
    NonRealExponents { max_imag: f64 },

    /// Indicial roots closer than the separation tolerance.
    #[error("indicial polynomial has repeated roots (min gap = {min_gap:.3e})")]
    RepeatedExponents { min_gap: f64 },

    /// The reconstructed trace coefficient (of y^(n)) does not vanish.
    #[error("non-vanishing trace coefficient ({max_coeff:.3e}): seed normalization violated upstream")]
    NonvanishingTrace { max_coeff: f64 },

    /// A Frobenius recursion hit a resonance with non-vanishing obstruction.
    #[error("logarithmic solution required at order {order} (obstruction {obstruction:.3e})")]
    LogarithmRequired { order: usize, obstruction: f64 },

    /// Frobenius construction at a value that is not an indicial root.
    #[error("{rho} is not an indicial root (|I(rho)| = {indicial_value:.3e})")]
    NotAnExponent { rho: f64, indicial_value: f64 },

    /// Quadrature failed to converge to the requested accuracy.
    #[error("quadrature failure: {context}")]
    QuadratureFailure { context: String },

    /// A grid specification violates its invariants.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, TodaError>;
