//! Numerics for the extended Harper model (EHM) in its self-dual regime.
//!
//! The EHM is the quasi-periodic Jacobi operator on l²(ℤ)
//!
//! ```text
//! (H_{λ,α,θ} u)_n = c_λ(θ + nα) u_{n+1} + c̃_λ(θ + (n−1)α) u_{n−1} + 2cos(2π(θ + nα)) u_n
//! c_λ(θ)          = λ1 e^{−2πi(θ + α/2)} + λ2 + λ3 e^{2πi(θ + α/2)},    c̃_λ = complex conjugate on ℝ
//! ```
//!
//! with coupling triple λ = (λ1, λ2, λ3) and frequency α. Setting λ1 = λ3 = 0
//! recovers the almost Mathieu operator, which serves as the known-answer
//! oracle throughout. The crate implements, at desk scale, the computable
//! objects surrounding this operator family:
//!
//! - [`contfrac`] — continued-fraction convergents of α, the distance law
//!   1/(2q_{m+1}) ≤ ‖q_mα‖ ≤ 1/q_{m+1}, the approximation exponent β(α), and
//!   the denominator-subsequence selection used for Birkhoff decay.
//! - [`model`] — coupling taxonomy (regions I/II/III and their boundary
//!   lines), the duality involution σ, and the symbol functions c, c̃, |c|, v
//!   with their zeros.
//! - [`winding`] — the zero-mean analytic phase f(θ) that factorizes the
//!   unimodular part of the dual symbol, with Fourier-decay estimation.
//! - [`birkhoff`] — Birkhoff sums along rotation orbits, the cohomological
//!   solver in the good-frequency case, and certified quantitative bounds in
//!   the Liouville case.
//! - [`cocycle`] — 2×2 transfer cocycles, renormalized iteration, Lyapunov
//!   exponents with singular-symbol regularization, and the determinant
//!   cascade along orbits.
//! - [`duality`] — Fourier conjugacy between the operator and its dual:
//!   residuals of the dual eigenvalue equations, the 2×2 conjugacy field
//!   M_θ(x), the determinant identity |det M|·|c| = const, and the
//!   singular-regime contradiction probe.
//! - [`spectral`] — periodic (Bloch) approximant band spectra at rational α,
//!   Aubry-duality spectrum comparison, truncated-operator eigensystems, and
//!   eigenvector localization diagnostics (IPR).
//! - [`verify`] — the numbered end-to-end verification suite binding all of
//!   the above together with pinned tolerances.
//!
//! Everything is deterministic: fixed summation orders (compensated where it
//! matters), seeded sampling, and parallel sweeps that reduce in a fixed
//! order, so repeated runs agree bitwise.

pub mod error;

pub mod birkhoff;
pub mod cocycle;
pub mod contfrac;
pub mod duality;
pub mod model;
pub mod spectral;
pub mod verify;
pub mod winding;

pub use error::{EhmError, Result};

/// Golden-ratio frequency (√5 − 1)/2, the canonical bounded-type irrational
/// used by examples and the verification suite.
pub const GOLDEN: f64 = 0.618033988749894848;

/// 2π, spelled once.
pub(crate) const TAU: f64 = std::f64::consts::TAU;

/// Complex double shorthand used across the crate.
pub type C64 = num_complex::Complex<f64>;
