//! Error type shared by all modules.
//!
//! Numerical refusals are first-class here: several operations are only
//! well-posed under hypotheses (irrationality to working precision, a symbol
//! bounded away from zero, divisors above a noise floor) and the contract is
//! to refuse loudly rather than return amplified noise.

use thiserror::Error;

/// Library-wide error enum.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum EhmError {
    /// Continued-fraction expansion of a value that is rational to working
    /// precision (fewer than two trustworthy terms).
    #[error("rational input")]
    RationalInput,

    /// A parameter outside its documented domain (message names the offender).
    #[error("domain error: {0}")]
    Domain(String),

    /// Subsequence selection found no index satisfying the exponential-gap
    /// rule within the stored convergent range.
    #[error("extend expansion: no stored index satisfies the gap rule")]
    ExtendExpansion,

    /// Analytic continuation of |c| hit a zero of c·c̃ off the real axis,
    /// where the square-root branch is ambiguous.
    #[error("branch undefined")]
    BranchUndefined,

    /// Root query for a symbol with no quadratic (or linear) part.
    #[error("constant symbol, no roots")]
    ConstantSymbol,

    /// Winding factorization outside its hypothesis (a root on or inside the
    /// unit circle).
    #[error("factorization not defined")]
    FactorizationNotDefined,

    /// Cohomological solve met a divisor |1 − e^{2πinα}| below the noise
    /// floor; the caller should switch to the quantitative-bound path.
    #[error("small divisor at mode n = {n}")]
    SmallDivisor { n: i64 },

    /// Transfer-matrix evaluation at a zero of the symbol.
    #[error("symbol zero at x = {x}")]
    SymbolZero { x: f64 },

    /// Cocycle iteration hit a symbol zero at the given step.
    #[error("symbol zero at step {step}")]
    SymbolZeroAtStep { step: usize },

    /// Fourier-series sampling grid too small for the sequence bandwidth.
    #[error("aliasing error: grid {grid} < 2x bandwidth {needed}")]
    Aliasing { grid: usize, needed: usize },

    /// Singularity probe on couplings whose dual symbol has no real zero.
    #[error("not in singular regime")]
    NotSingularRegime,

    /// Catch-all for violated preconditions (message names the contract).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A numerical invariant that two independent computations were supposed
    /// to agree on did not hold; results would be untrustworthy.
    #[error("numerical contract violated: {0}")]
    Contract(String),
}

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, EhmError>;
