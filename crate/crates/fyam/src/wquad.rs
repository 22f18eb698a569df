//! Quadrature for integrals carrying the degenerate weight x_N^{1-2γ}.
//!
//! The normal direction gets a Gauss rule that is exact of degree 2m-1
//! against the weight x^{1-2γ} on (0,T): after mapping to [-1,1] this is the
//! Jacobi weight (1-t)^0 (1+t)^{1-2γ}, whose three-term recurrence is closed
//! form, so the Golub–Welsch eigenproblem is assembled without any special
//! function tables. Tangential directions use either a torus tensor rule or
//! a radial–angular split with exact sphere moments.
//!
//! Monte-Carlo with the weight folded into the sampling density is kept as a
//! cross-check oracle, never as the primary engine.

use crate::special::{beta, sphere_area};
use crate::{FyamError, Result};
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// One-dimensional quadrature rule: paired nodes and weights.
#[derive(Debug, Clone)]
pub struct Rule1d {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule1d {
    /// Apply the rule to f.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Gauss rule with m nodes for ∫₀^T x^{1-2γ} f(x) dx, exact for polynomial f
/// of degree ≤ 2m-1.
pub fn normal_rule(m: usize, gamma_ord: f64, t_height: f64) -> Result<Rule1d> {
    if m == 0 {
        return Err(FyamError::InvalidParameter("need at least one node".into()));
    }
    if !(0.0 < gamma_ord && gamma_ord < 1.0) {
        return Err(FyamError::InvalidParameter(format!(
            "gamma must lie in (0,1), got {gamma_ord}"
        )));
    }
    if t_height <= 0.0 {
        return Err(FyamError::InvalidParameter("height must be positive".into()));
    }
    let beta_exp = 1.0 - 2.0 * gamma_ord; // weight exponent, in (-1,1)
    let rule = gauss_jacobi(m, 0.0, beta_exp)?;
    // map [-1,1] → (0,T): x = T(t+1)/2, weight picks up (T/2)^{2-2γ}
    let scale = (t_height / 2.0).powf(2.0 - 2.0 * gamma_ord);
    Ok(Rule1d {
        nodes: rule.nodes.iter().map(|&t| t_height * (t + 1.0) / 2.0).collect(),
        weights: rule.weights.iter().map(|&w| w * scale).collect(),
    })
}

/// Gauss–Jacobi rule on [-1,1] for the weight (1-x)^a (1+x)^b, a, b > -1,
/// by Golub–Welsch on the closed-form recurrence coefficients.
pub fn gauss_jacobi(m: usize, a: f64, b: f64) -> Result<Rule1d> {
    if m == 0 {
        return Err(FyamError::InvalidParameter("need at least one node".into()));
    }
    let mu0 = 2.0f64.powf(a + b + 1.0) * beta(a + 1.0, b + 1.0);
    let mut diag = vec![0.0; m];
    let mut off = vec![0.0; m.saturating_sub(1)];
    for k in 0..m {
        let kf = k as f64;
        diag[k] = if k == 0 {
            (b - a) / (a + b + 2.0)
        } else {
            let d = 2.0 * kf + a + b;
            (b * b - a * a) / (d * (d + 2.0))
        };
        if k + 1 < m {
            let j = kf + 1.0; // off-diagonal index 1..m-1
            let num = if k == 0 {
                4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b).powi(2) * (3.0 + a + b))
            } else {
                let d = 2.0 * j + a + b;
                4.0 * j * (j + a) * (j + b) * (j + a + b) / (d * d * (d + 1.0) * (d - 1.0))
            };
            off[k] = num.sqrt();
        }
    }
    let (nodes, first_components) = symmetric_tridiagonal_eigen(&diag, &off);
    let weights: Vec<f64> = first_components.iter().map(|&c| mu0 * c * c).collect();
    Ok(Rule1d { nodes, weights })
}

/// Eigenvalues and first eigenvector components of a symmetric tridiagonal
/// matrix, sorted ascending (the Golub–Welsch kernel).
fn symmetric_tridiagonal_eigen(diag: &[f64], off: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let m = diag.len();
    let mut a = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        a[(i, i)] = diag[i];
        if i + 1 < m {
            a[(i, i + 1)] = off[i];
            a[(i + 1, i)] = off[i];
        }
    }
    let eig = a.symmetric_eigen();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let nodes = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let firsts = order.iter().map(|&i| eig.eigenvectors[(0, i)]).collect();
    (nodes, firsts)
}

/// Gauss–Legendre rule on [a, b].
pub fn gauss_legendre(m: usize, a: f64, b: f64) -> Result<Rule1d> {
    let base = gauss_jacobi(m, 0.0, 0.0)?;
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    Ok(Rule1d {
        nodes: base.nodes.iter().map(|&t| mid + half * t).collect(),
        weights: base.weights.iter().map(|&w| w * half).collect(),
    })
}

/// Composite rule for ∫₀^T x^{1-2γ} f(x) dx on geometric panels graded toward
/// 0: the innermost panel carries the weight through a Gauss–Jacobi rule, the
/// rest fold the (there smooth) weight into plain Gauss panels. Unlike
/// [`normal_rule`] this also converges fast for non-polynomial f with
/// algebraic behavior at 0, e.g. the weight-cancelling f = x^{2γ-1}.
pub fn normal_rule_graded(pts: usize, gamma_ord: f64, t_height: f64, h0: f64) -> Result<Rule1d> {
    if !(0.0 < gamma_ord && gamma_ord < 1.0) {
        return Err(FyamError::InvalidParameter(format!(
            "gamma must lie in (0,1), got {gamma_ord}"
        )));
    }
    if !(h0 > 0.0 && t_height > h0) {
        return Err(FyamError::InvalidParameter(
            "normal_rule_graded needs 0 < h0 < T".into(),
        ));
    }
    let mut rule = normal_rule(pts, gamma_ord, h0)?;
    let mut lo = h0;
    while lo < t_height {
        let hi = (2.0 * lo).min(t_height);
        let panel = gauss_legendre(pts, lo, hi)?;
        for (&x, &w) in panel.nodes.iter().zip(&panel.weights) {
            rule.nodes.push(x);
            rule.weights.push(w * x.powf(1.0 - 2.0 * gamma_ord));
        }
        lo = hi;
    }
    Ok(rule)
}

/// Composite Gauss–Legendre over geometric panels of [0, b], graded toward 0.
///
/// Panels double from `h0` up to `b`; `pts` Gauss points per panel. Resolves
/// integrands with features at scale ≥ h0 near the origin.
pub fn graded_panels(h0: f64, b: f64, pts: usize) -> Result<Rule1d> {
    if !(h0 > 0.0 && b > h0) {
        return Err(FyamError::InvalidParameter(
            "graded_panels needs 0 < h0 < b".into(),
        ));
    }
    let mut edges = vec![0.0, h0];
    while *edges.last().unwrap() < b {
        let last = *edges.last().unwrap();
        edges.push((2.0 * last).min(b));
    }
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for w in edges.windows(2) {
        let rule = gauss_legendre(pts, w[0], w[1])?;
        nodes.extend(rule.nodes);
        weights.extend(rule.weights);
    }
    Ok(Rule1d { nodes, weights })
}

/// Quadrature rule over the unit sphere S^{n-1}, exact for polynomials of
/// degree ≤ `degree` in the ambient coordinates.
///
/// Built recursively: circle rule at n = 2, Gauss–Gegenbauer in the polar
/// angle above. Returns (points, weights); weights sum to |S^{n-1}|.
pub fn sphere_rule(n: usize, degree: usize) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    match n {
        0 => Err(FyamError::InvalidParameter("sphere needs n >= 1".into())),
        1 => Ok((vec![vec![1.0], vec![-1.0]], vec![1.0, 1.0])),
        2 => {
            let m = degree + 2;
            let pts = (0..m)
                .map(|i| {
                    let phi = 2.0 * std::f64::consts::PI * i as f64 / m as f64;
                    vec![phi.cos(), phi.sin()]
                })
                .collect();
            let w = 2.0 * std::f64::consts::PI / m as f64;
            Ok((pts, vec![w; m]))
        }
        _ => {
            // u = (sinθ v, cosθ), dσ_n = sin^{n-2}θ dθ dσ_{n-1}
            let m_polar = degree / 2 + 2;
            let polar = gauss_jacobi(
                m_polar,
                (n as f64 - 3.0) / 2.0,
                (n as f64 - 3.0) / 2.0,
            )?;
            let (sub_pts, sub_w) = sphere_rule(n - 1, degree)?;
            let mut pts = Vec::with_capacity(polar.nodes.len() * sub_pts.len());
            let mut wts = Vec::with_capacity(polar.nodes.len() * sub_pts.len());
            for (&t, &wt) in polar.nodes.iter().zip(&polar.weights) {
                let sin_theta = (1.0 - t * t).max(0.0).sqrt();
                for (v, &wv) in sub_pts.iter().zip(&sub_w) {
                    let mut u = Vec::with_capacity(n);
                    for &vi in v {
                        u.push(sin_theta * vi);
                    }
                    u.push(t);
                    pts.push(u);
                    wts.push(wt * wv);
                }
            }
            Ok((pts, wts))
        }
    }
}

/// Exact sphere moment ∫_{S^{n-1}} x₁^{a₁} ⋯ x_n^{a_n} dσ for multi-indices of
/// total degree ≤ 4. Odd in any coordinate → 0; otherwise
/// |S^{n-1}| Π(aᵢ-1)!! / Π_{j<|a|/2}(n+2j).
pub fn angular_moment(n: usize, multi_index: &[usize]) -> Result<f64> {
    if multi_index.len() > n {
        return Err(FyamError::InvalidParameter(format!(
            "multi-index has {} entries for dimension {n}",
            multi_index.len()
        )));
    }
    let total: usize = multi_index.iter().sum();
    if total > 4 {
        return Err(FyamError::Domain(format!(
            "angular_moment supports degree <= 4, got {total}"
        )));
    }
    if multi_index.iter().any(|&a| a % 2 == 1) {
        return Ok(0.0);
    }
    let mut num = 1.0;
    for &a in multi_index {
        num *= double_factorial(a.saturating_sub(1));
    }
    let mut den = 1.0;
    for j in 0..total / 2 {
        den *= (n + 2 * j) as f64;
    }
    Ok(sphere_area(n) * num / den)
}

fn double_factorial(k: usize) -> f64 {
    let mut acc = 1.0;
    let mut v = k as i64;
    while v > 1 {
        acc *= v as f64;
        v -= 2;
    }
    acc
}

/// Integration domain for a weighted grid.
#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    /// Half-ball B⁺(0,R) in R^{n+1}.
    HalfBall { radius: f64 },
    /// Periodic slab [0,L)^n × (0,T).
    Slab { side: f64, height: f64 },
    /// All of R^{n+1}_+, realized as a large half-ball whose radius is chosen
    /// from a decay estimate of the integrand.
    HalfSpace { radius: f64 },
}

/// Discrete measure for ∫ x_N^{1-2γ} f(x) dx over a [`Domain`]: explicit
/// nodes in R^{n+1} with weights that already contain the degenerate factor.
#[derive(Debug, Clone)]
pub struct WeightedGrid {
    pub n: usize,
    pub gamma: f64,
    pub domain: Domain,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl WeightedGrid {
    /// Half-ball grid: polar radius with graded panels × a polar-angle rule ×
    /// a sphere rule tangentially. `h0` is the innermost radial panel width,
    /// `radial_pts` the per-panel Gauss order, `angular_degree` the sphere
    /// exactness degree.
    pub fn half_ball(
        n: usize,
        gamma_ord: f64,
        radius: f64,
        h0: f64,
        radial_pts: usize,
        angular_degree: usize,
    ) -> Result<Self> {
        check_gamma(gamma_ord)?;
        let radial = graded_panels(h0, radius, radial_pts)?;
        // polar angle φ measured from the boundary: x_N = ρ sinφ, |x̄| = ρ cosφ,
        // measure ρ^{n+1-2γ} sin^{1-2γ}φ cos^{n-1}φ dρ dφ dσ. The only
        // non-smooth factor is sin^{1-2γ}φ at φ = 0 (absent at γ = 1/2), so
        // grade the φ panels toward 0; cos^{n-1} vanishes smoothly at π/2.
        let phi_rule = graded_panels(1e-4, std::f64::consts::FRAC_PI_2, 12)?;
        let (sph_pts, sph_w) = sphere_rule(n, angular_degree)?;
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for (&rho, &wr) in radial.nodes.iter().zip(&radial.weights) {
            for (&phi, &wp) in phi_rule.nodes.iter().zip(&phi_rule.weights) {
                let (sin_phi, cos_phi) = phi.sin_cos();
                let z = rho * sin_phi;
                let r = rho * cos_phi;
                let polar_w = sin_phi.powf(1.0 - 2.0 * gamma_ord)
                    * cos_phi.powi(n as i32 - 1);
                let base = wr * wp * rho.powf(n as f64 + 1.0 - 2.0 * gamma_ord) * polar_w;
                for (u, &wu) in sph_pts.iter().zip(&sph_w) {
                    let mut x = Vec::with_capacity(n + 1);
                    for ui in u {
                        x.push(r * ui);
                    }
                    x.push(z);
                    nodes.push(x);
                    weights.push(base * wu);
                }
            }
        }
        Ok(Self {
            n,
            gamma: gamma_ord,
            domain: Domain::HalfBall { radius },
            nodes,
            weights,
        })
    }

    /// Tensor slab grid: uniform periodic tangential points × weighted normal
    /// Gauss rule (exact against x_N^{1-2γ}).
    pub fn slab(
        n: usize,
        gamma_ord: f64,
        side: f64,
        height: f64,
        tangential_pts: usize,
        normal_pts: usize,
    ) -> Result<Self> {
        check_gamma(gamma_ord)?;
        let nr = normal_rule_graded(normal_pts, gamma_ord, height, 1e-9 * height)?;
        let h = side / tangential_pts as f64;
        let tang_1d: Vec<f64> = (0..tangential_pts).map(|i| i as f64 * h).collect();
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        let mut idx = vec![0usize; n];
        loop {
            let cell_w = h.powi(n as i32);
            for (&z, &wz) in nr.nodes.iter().zip(&nr.weights) {
                let mut x: Vec<f64> = idx.iter().map(|&i| tang_1d[i]).collect();
                x.push(z);
                nodes.push(x);
                weights.push(cell_w * wz);
            }
            // odometer over the tangential lattice
            let mut k = 0;
            while k < n {
                idx[k] += 1;
                if idx[k] < tangential_pts {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
        Ok(Self {
            n,
            gamma: gamma_ord,
            domain: Domain::Slab { side, height },
            nodes,
            weights,
        })
    }

    /// Whole half-space: a large half-ball with the radius pushed out by the
    /// geometric grading, for integrands with known decay.
    pub fn half_space(
        n: usize,
        gamma_ord: f64,
        radius: f64,
        h0: f64,
        radial_pts: usize,
        angular_degree: usize,
    ) -> Result<Self> {
        let mut g = Self::half_ball(n, gamma_ord, radius, h0, radial_pts, angular_degree)?;
        g.domain = Domain::HalfSpace { radius };
        Ok(g)
    }

    /// Σ wᵢ f(xᵢ). Errors (naming the node) on non-finite values.
    pub fn integrate(&self, f: impl Fn(&[f64]) -> f64) -> Result<f64> {
        let mut acc = 0.0;
        for (i, (x, &w)) in self.nodes.iter().zip(&self.weights).enumerate() {
            let v = f(x);
            if !v.is_finite() {
                return Err(FyamError::NonFiniteField {
                    index: i,
                    location: x.clone(),
                });
            }
            acc += w * v;
        }
        Ok(acc)
    }

    /// Total node count.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// True when the grid holds no nodes.
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

fn check_gamma(g: f64) -> Result<()> {
    if !(0.0 < g && g < 1.0) {
        return Err(FyamError::InvalidParameter(format!(
            "gamma must lie in (0,1), got {g}"
        )));
    }
    Ok(())
}

/// Importance-sampled Monte-Carlo estimate of ∫ x_N^{1-2γ} f dx over a
/// domain, with the weight folded into the sampling density.
///
/// Returns (estimate, standard error). Deterministic for a fixed seed.
pub fn mc_integrate(
    f: impl Fn(&[f64]) -> f64,
    n: usize,
    gamma_ord: f64,
    domain: &Domain,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if samples < 1000 {
        return Err(FyamError::InvalidParameter(
            "mc_integrate needs at least 1000 samples".into(),
        ));
    }
    check_gamma(gamma_ord)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let power = 2.0 - 2.0 * gamma_ord; // z ~ z^{1-2γ} has CDF (z/T)^{2-2γ}
    let normalizer = match domain {
        Domain::Slab { side, height } => side.powi(n as i32) * height.powf(power) / power,
        Domain::HalfBall { radius } | Domain::HalfSpace { radius } => {
            // ∫_{B⁺(R)} z^{1-2γ} dx = |S^{n-1}| ½B(1-γ, n/2) R^{n+2-2γ}/(n+2-2γ)
            sphere_area(n) * 0.5 * beta(1.0 - gamma_ord, n as f64 / 2.0)
                * radius.powf(n as f64 + power)
                / (n as f64 + power)
        }
    };
    let mut acc = 0.0;
    let mut acc2 = 0.0;
    let mut x = vec![0.0; n + 1];
    for _ in 0..samples {
        match domain {
            Domain::Slab { side, height } => {
                for xi in x.iter_mut().take(n) {
                    *xi = rng.gen::<f64>() * side;
                }
                x[n] = height * rng.gen::<f64>().powf(1.0 / power);
            }
            Domain::HalfBall { radius } | Domain::HalfSpace { radius } => {
                // ρ from density ∝ ρ^{n+1-2γ}, then polar t from the density
                // ∝ t^{1-2γ}(1-t²)^{(n-2)/2} by rejection under t^{1-2γ}
                let rho = radius * rng.gen::<f64>().powf(1.0 / (n as f64 + power));
                let t = loop {
                    let cand = rng.gen::<f64>().powf(1.0 / power);
                    let accept = (1.0 - cand * cand).max(0.0).powf((n as f64 - 2.0) / 2.0);
                    if rng.gen::<f64>() <= accept {
                        break cand;
                    }
                };
                let r = rho * (1.0 - t * t).max(0.0).sqrt();
                let mut norm2 = 0.0;
                let dir: Vec<f64> = (0..n)
                    .map(|_| {
                        let u1: f64 = rng.gen::<f64>().max(1e-300);
                        let u2: f64 = rng.gen();
                        let g = (-2.0 * u1.ln()).sqrt()
                            * (2.0 * std::f64::consts::PI * u2).cos();
                        norm2 += g * g;
                        g
                    })
                    .collect();
                let inv = 1.0 / norm2.sqrt().max(1e-300);
                for (xi, d) in x.iter_mut().zip(&dir) {
                    *xi = r * d * inv;
                }
                x[n] = rho * t;
            }
        }
        let v = f(&x);
        acc += v;
        acc2 += v * v;
    }
    let mean = acc / samples as f64;
    let var = (acc2 / samples as f64 - mean * mean).max(0.0);
    Ok((normalizer * mean, normalizer * (var / samples as f64).sqrt()))
}

/// Solve the weighted least-squares problem min ‖W^{1/2}(Xc - y)‖₂ by SVD with
/// column equilibration; returns (coefficients, 1σ uncertainties).
pub fn weighted_least_squares(
    design: &DMatrix<f64>,
    y: &DVector<f64>,
    w: &DVector<f64>,
) -> Result<(DVector<f64>, DVector<f64>)> {
    let (rows, cols) = design.shape();
    if rows < cols {
        return Err(FyamError::IllConditionedFit(format!(
            "{rows} observations for {cols} coefficients"
        )));
    }
    let sqrt_w: Vec<f64> = w.iter().map(|&wi| wi.sqrt()).collect();
    let mut xw = design.clone();
    let mut yw = y.clone();
    for i in 0..rows {
        for j in 0..cols {
            xw[(i, j)] *= sqrt_w[i];
        }
        yw[i] *= sqrt_w[i];
    }
    // equilibrate columns so the SVD cutoff is meaningful
    let mut col_scale = vec![0.0; cols];
    for j in 0..cols {
        let norm = xw.column(j).norm();
        if norm == 0.0 {
            return Err(FyamError::IllConditionedFit(format!(
                "design column {j} is identically zero"
            )));
        }
        col_scale[j] = norm;
        for i in 0..rows {
            xw[(i, j)] /= norm;
        }
    }
    let svd = xw.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let tol = 1e-13 * smax;
    if svd.singular_values.min() < tol {
        return Err(FyamError::IllConditionedFit(
            "singular design matrix (epsilon range too narrow?)".into(),
        ));
    }
    let c_scaled = svd
        .solve(&yw, tol)
        .map_err(|e| FyamError::IllConditionedFit(e.to_string()))?;
    let mut coeffs = DVector::zeros(cols);
    for j in 0..cols {
        coeffs[j] = c_scaled[j] / col_scale[j];
    }
    // 1σ from residual variance through the pseudo-inverse
    let resid = &yw - &xw * &c_scaled;
    let dof = (rows - cols).max(1) as f64;
    let sigma2 = resid.norm_squared() / dof;
    let v_t = svd.v_t.as_ref().unwrap();
    let mut sig = DVector::zeros(cols);
    for j in 0..cols {
        let mut var_j = 0.0;
        for k in 0..cols {
            let s = svd.singular_values[k];
            var_j += (v_t[(k, j)] / s).powi(2);
        }
        sig[j] = (sigma2 * var_j).sqrt() / col_scale[j];
    }
    Ok((coeffs, sig))
}
