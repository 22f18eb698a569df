//! Bubbles: the extremals w_{λ,σ} of the fractional trace inequality, their
//! explicit half-space extensions at γ = 1/2, Neumann traces, moments, and
//! the quadratic correction fields Ψ₁/Ψ₂ used by the energy expansions.
//!
//! The boundary bubble is
//!
//! ```text
//! w_{λ,σ}(x̄) = α_{n,γ} ( λ / (λ² + |x̄-σ|²) )^{(n-2γ)/2},
//! ```
//!
//! and at γ = 1/2 its extension has the closed form
//! W_{λ,σ}(x) = α ( λ / ((λ+x_N)² + |x̄-σ|²) )^{(n-1)/2}. For other γ the
//! extension has no elementary formula and is produced numerically by
//! `extsolve::radial_profile`; everything downstream consumes it through the
//! [`RadialProfile`] trait so both sources interchange.

use crate::fracparams::GammaParams;
use crate::special::sphere_area;
use crate::wquad::{gauss_legendre, Rule1d};
use crate::{FyamError, Result};

/// A concentration bubble: parameters, scale λ and center σ ∈ R^n.
#[derive(Debug, Clone)]
pub struct Bubble {
    pub params: GammaParams,
    pub lambda: f64,
    pub sigma: Vec<f64>,
}

impl Bubble {
    pub fn new(params: GammaParams, lambda: f64, sigma: Vec<f64>) -> Result<Self> {
        if lambda <= 0.0 || !lambda.is_finite() {
            return Err(FyamError::InvalidParameter(format!(
                "lambda must be positive, got {lambda}"
            )));
        }
        if sigma.len() != params.n {
            return Err(FyamError::InvalidParameter(format!(
                "center has {} coordinates for n = {}",
                sigma.len(),
                params.n
            )));
        }
        Ok(Self { params, lambda, sigma })
    }

    /// Unit bubble at the origin.
    pub fn unit(params: GammaParams) -> Self {
        let n = params.n;
        Self { params, lambda: 1.0, sigma: vec![0.0; n] }
    }

    fn dist2(&self, xbar: &[f64]) -> f64 {
        xbar.iter()
            .zip(&self.sigma)
            .map(|(x, s)| (x - s) * (x - s))
            .sum()
    }

    /// Boundary value w_{λ,σ}(x̄).
    pub fn w_eval(&self, xbar: &[f64]) -> f64 {
        let p = &self.params;
        p.alpha
            * (self.lambda / (self.lambda * self.lambda + self.dist2(xbar)))
                .powf(p.half_deficit())
    }

    /// Explicit extension W_{λ,σ}(x̄, x_N), available only at γ = 1/2.
    pub fn w_half_eval(&self, xbar: &[f64], x_n: f64) -> Result<f64> {
        self.require_half()?;
        let p = &self.params;
        let lz = self.lambda + x_n;
        let d = lz * lz + self.dist2(xbar);
        Ok(p.alpha * (self.lambda / d).powf((p.nf() - 1.0) / 2.0))
    }

    /// Weighted Neumann trace -κ_{1/2} ∂_N W at (x̄, 0), from the
    /// differentiated closed form; equals w^{2*} identically.
    pub fn neumann_trace_half(&self, xbar: &[f64]) -> Result<f64> {
        self.require_half()?;
        let p = &self.params;
        let m = (p.nf() - 1.0) / 2.0;
        let d0 = self.lambda * self.lambda + self.dist2(xbar);
        // ∂_N W|₀ = -2m α λ^{m+1} D₀^{-m-1}; κ_{1/2} = 1
        Ok(p.kappa * 2.0 * m * p.alpha * (self.lambda / d0).powf(m + 1.0))
    }

    fn require_half(&self) -> Result<()> {
        if self.params.gamma != 0.5 {
            return Err(FyamError::Domain(format!(
                "closed-form extension requires gamma = 1/2 exactly (got {}); \
                 use extsolve::radial_profile",
                self.params.gamma
            )));
        }
        Ok(())
    }
}

/// Evaluator interface for a radial extension profile W_{λ,0}(r, x_N) and the
/// derivatives the correction fields and energy assembly need. Implemented by
/// the γ = 1/2 closed form here and by spline-backed numerical profiles in
/// `extsolve`.
pub trait RadialProfile: Sync {
    fn value(&self, r: f64, z: f64) -> f64;
    fn d_r(&self, r: f64, z: f64) -> f64;
    fn d_z(&self, r: f64, z: f64) -> f64;
    /// r^{-1} ∂_r W, finite at r = 0.
    fn d_r_over_r(&self, r: f64, z: f64) -> f64;
    fn d_rr(&self, r: f64, z: f64) -> f64;
    fn d_rz(&self, r: f64, z: f64) -> f64;
}

/// Closed-form γ = 1/2 extension profile of W_{λ,0}.
#[derive(Debug, Clone)]
pub struct HalfProfile {
    pub params: GammaParams,
    pub lambda: f64,
    m: f64,
    amp: f64, // α λ^m
}

impl HalfProfile {
    pub fn new(params: GammaParams, lambda: f64) -> Result<Self> {
        if params.gamma != 0.5 {
            return Err(FyamError::Domain("HalfProfile requires gamma = 1/2".into()));
        }
        if lambda <= 0.0 {
            return Err(FyamError::InvalidParameter("lambda must be positive".into()));
        }
        let m = (params.nf() - 1.0) / 2.0;
        Ok(Self { params, lambda, m, amp: params.alpha * lambda.powf(m) })
    }

    #[inline]
    fn d(&self, r: f64, z: f64) -> f64 {
        let lz = self.lambda + z;
        lz * lz + r * r
    }
}

impl RadialProfile for HalfProfile {
    fn value(&self, r: f64, z: f64) -> f64 {
        self.amp * self.d(r, z).powf(-self.m)
    }
    fn d_r(&self, r: f64, z: f64) -> f64 {
        -2.0 * self.m * self.amp * r * self.d(r, z).powf(-self.m - 1.0)
    }
    fn d_z(&self, r: f64, z: f64) -> f64 {
        -2.0 * self.m * self.amp * (self.lambda + z) * self.d(r, z).powf(-self.m - 1.0)
    }
    fn d_r_over_r(&self, r: f64, z: f64) -> f64 {
        -2.0 * self.m * self.amp * self.d(r, z).powf(-self.m - 1.0)
    }
    fn d_rr(&self, r: f64, z: f64) -> f64 {
        let d = self.d(r, z);
        -2.0 * self.m * self.amp * d.powf(-self.m - 1.0)
            * (1.0 - 2.0 * (self.m + 1.0) * r * r / d)
    }
    fn d_rz(&self, r: f64, z: f64) -> f64 {
        let d = self.d(r, z);
        4.0 * self.m * (self.m + 1.0) * self.amp * r * (self.lambda + z)
            * d.powf(-self.m - 2.0)
    }
}

/// ∫_{R^n} |x̄|^k w_{1,0}^{2*+1} dx̄ for even k ∈ {0, 2, 4}, by the r = tanθ
/// compactified radial quadrature, relative error ≤ 1e-10.
///
/// The integrand reduces to |S^{n-1}| α^{2*+1} sin^{n-1+k}θ cos^{n-1-k}θ on
/// (0, π/2); convergence requires k < n, otherwise the moment diverges.
pub fn bubble_moment(params: &GammaParams, k: usize) -> Result<f64> {
    if k % 2 != 0 || k > 4 {
        return Err(FyamError::InvalidParameter(format!(
            "moment order must be one of {{0, 2, 4}}, got {k}"
        )));
    }
    if k as f64 >= params.nf() {
        return Err(FyamError::Divergent(format!(
            "moment |x̄|^{k} w^{{2*+1}} diverges for n = {} (needs k < n)",
            params.n
        )));
    }
    let n = params.nf();
    let amp = sphere_area(params.n) * params.alpha.powf(params.two_star + 1.0);
    let f = |theta: f64| -> f64 {
        let (s, c) = theta.sin_cos();
        s.powf(n - 1.0 + k as f64) * c.powf(n - 1.0 - k as f64)
    };
    // doubling panels until two refinements agree to half the target
    let mut last = integrate_theta(&f, 32)?;
    for panels in [64usize, 128, 256, 512] {
        let next = integrate_theta(&f, panels)?;
        if (next - last).abs() <= 0.5e-10 * next.abs() {
            return Ok(amp * next);
        }
        last = next;
    }
    Err(FyamError::NoConvergence(
        "bubble_moment radial quadrature did not reach 1e-10".into(),
    ))
}

fn integrate_theta(f: &impl Fn(f64) -> f64, panels: usize) -> Result<f64> {
    let h = std::f64::consts::FRAC_PI_2 / panels as f64;
    let base: Rule1d = gauss_legendre(8, 0.0, 1.0)?;
    let mut acc = 0.0;
    for p in 0..panels {
        let a = p as f64 * h;
        for (&t, &w) in base.nodes.iter().zip(&base.weights) {
            acc += w * h * f(a + t * h);
        }
    }
    Ok(acc)
}

/// Ψ₁ε(x) = C₁ II_ij x_i x_j x_N r^{-1} ∂_r W_{ε,0}(x): the non-umbilic
/// correction field. `ii` is symmetric n×n in row-major order; the paper's
/// normalization has tr II = 0 (H = 0), flagged by [`trace_warning`].
pub fn psi1_eval(c1: f64, ii: &[f64], profile: &dyn RadialProfile, x: &[f64]) -> f64 {
    psi_eval(c1, ii, 1, profile, x)
}

/// Ψ₂ε(x) = C₂ R_{iNjN} x_i x_j x_N² r^{-1} ∂_r W_{ε,0}(x): the umbilic
/// correction field.
pub fn psi2_eval(c2: f64, r_injn: &[f64], profile: &dyn RadialProfile, x: &[f64]) -> f64 {
    psi_eval(c2, r_injn, 2, profile, x)
}

fn psi_eval(c: f64, t: &[f64], z_power: i32, profile: &dyn RadialProfile, x: &[f64]) -> f64 {
    let n = x.len() - 1;
    debug_assert_eq!(t.len(), n * n, "tensor must be n×n row-major");
    if c == 0.0 {
        return 0.0;
    }
    let xbar = &x[..n];
    let z = x[n];
    let r2: f64 = xbar.iter().map(|v| v * v).sum();
    let mut quad = 0.0;
    for i in 0..n {
        for j in 0..n {
            quad += t[i * n + j] * xbar[i] * xbar[j];
        }
    }
    // x_i x_j r^{-1} ∂_r W = quad · (r^{-1}∂_r W); the r^{-1}∂_r primitive
    // keeps the removable singularity at r = 0 finite (value 0 there)
    c * quad * z.powi(z_power) * profile.d_r_over_r(r2.sqrt(), z)
}

/// Returns Some(trace) when the supplied symmetric tensor fails the paper's
/// trace-free normalization beyond `tol`, for caller-side warnings.
pub fn trace_warning(t: &[f64], n: usize, tol: f64) -> Option<f64> {
    let tr: f64 = (0..n).map(|i| t[i * n + i]).sum();
    (tr.abs() > tol).then_some(tr)
}
