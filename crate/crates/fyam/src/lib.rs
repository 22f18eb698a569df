//! Desk-scale numerics for the fractional Yamabe / prescribed fractional
//! curvature framework on the extension side.
//!
//! The crate is organized around the degenerate extension problem
//!
//! ```text
//! -div(x_N^{1-2γ} ∇U) + E·U = 0   in the upper half space / a chart,
//! ∂^γ_ν U = -κ_γ lim x_N^{1-2γ} ∂_N U   on the boundary,
//! ```
//!
//! whose weighted Neumann trace realizes the nonlocal operator P^γ with
//! principal symbol |ξ|^{2γ}. The modules:
//!
//! * [`fracparams`] — every closed-form scalar constant (κ_γ, α_{n,γ}, 2*,
//!   the coefficient functions 𝓜₁/𝓜₂₁/𝓜₂₂ and c¹/c², correction quadratics).
//! * [`bubbles`] — the extremal bubbles w_{λ,σ}, their γ = 1/2 extensions,
//!   Neumann traces, moments, and the correction fields Ψ₁/Ψ₂.
//! * [`wquad`] — Gauss rules for the weight x_N^{1-2γ}, sphere rules and
//!   exact angular moments, weighted grids, Monte-Carlo cross-checks.
//! * [`extsolve`] — model-metric expansions in Fermi coordinates and the
//!   numerical extension solvers (per-mode on flat tori, CG on charts,
//!   a radial half-space solver), with the Dirichlet-to-Neumann map.
//! * [`yamin`] — the constrained subcritical minimization scheme, the
//!   β-continuation toward the critical exponent, blow-up diagnostics and
//!   the existence-criterion check.
//! * [`expfit`] — quadrature + least-squares recovery of the test-function
//!   energy expansions and their log-term coefficients.
//! * [`verify`] — the acceptance suite driven by both `cargo test` and the
//!   `fyam verify` subcommand.

pub mod bubbles;
pub mod error;
pub mod expfit;
pub mod extsolve;
pub mod fit;
pub mod fracparams;
pub mod special;
pub mod verify;
pub mod wquad;
pub mod yamin;

pub use error::FyamError;
pub use fracparams::GammaParams;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, FyamError>;
