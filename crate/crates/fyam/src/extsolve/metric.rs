//! Truncated Fermi-coordinate model metrics near a boundary point.
//!
//! A [`ModelMetric`] stores the curvature data of a boundary chart at a point
//! y and evaluates the truncated expansions of √|ḡ| and ḡ^{ij} (orders 2–4)
//! together with the zeroth-order term
//!
//! ```text
//! E(x) = -((n-2γ)/2) (∂_N √|ḡ| / √|ḡ|) x_N^{-2γ}.
//! ```
//!
//! Only the coefficient tensors listed as fields participate; covariant
//! derivative tensors that are not carried (R_ikjl;m, R_ikjl;mq, R_iNjN;k,
//! R_iNjN;kN) evaluate as zero. All of those enter the expansions with odd
//! x̄-parity or pair with data this toolkit never excites, so the energy
//! integrals downstream are unaffected.

use crate::{FyamError, Result};

/// Curvature data of a model metric in Fermi coordinates, all evaluated at
/// the chart center. Matrices are n×n row-major, `riem_h` and the 4-index
/// derivative blocks are n⁴ row-major (i,k,j,l) resp. (i,j,k,l).
#[derive(Debug, Clone)]
pub struct ModelMetric {
    pub n: usize,
    pub chart_radius: f64,
    /// Expansion order kept: 2, 3 or 4.
    pub truncation_order: u8,
    /// Mean curvature H.
    pub h: f64,
    /// Second fundamental form II_ij.
    pub ii: Vec<f64>,
    /// Boundary curvature R_ikjl[ĥ], index order (i,k,j,l).
    pub riem_h: Vec<f64>,
    /// R_iNjN[ḡ].
    pub r_injn: Vec<f64>,
    /// R_NN[ḡ].
    pub r_nn: f64,
    /// R_ij;k[ĥ], index order (i,j,k). Order-3 term.
    pub ric_h_d: Vec<f64>,
    /// R_NN;i[ḡ]. Order-3 term.
    pub r_nn_i: Vec<f64>,
    /// R_NN;N[ḡ]. Order-3 term.
    pub r_nn_n: f64,
    /// R_iNjN;N[ḡ]. Order-3 term in ḡ^{ij}.
    pub r_injn_n: Vec<f64>,
    /// R_ij;kl[ĥ], index order (i,j,k,l). Order-4 term.
    pub ric_h_dd: Vec<f64>,
    /// R_NN;ij[ḡ]. Order-4 term.
    pub r_nn_ij: Vec<f64>,
    /// R_NN;Ni[ḡ]. Order-4 term.
    pub r_nn_ni: Vec<f64>,
    /// R_NN;NN[ḡ]. Order-4 term.
    pub r_nn_nn: f64,
    /// R_iNjN;kl[ḡ], index order (i,j,k,l), symmetric in (i,j) and (k,l).
    pub r_injn_kl: Vec<f64>,
    /// R_iNjN;NN[ḡ]. Order-4 term.
    pub r_injn_nn: Vec<f64>,
}

#[inline]
fn i2(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

#[inline]
fn i4(n: usize, a: usize, b: usize, c: usize, d: usize) -> usize {
    ((a * n + b) * n + c) * n + d
}

impl ModelMetric {
    /// Flat chart: every curvature coefficient zero.
    pub fn flat(n: usize, chart_radius: f64) -> Self {
        Self {
            n,
            chart_radius,
            truncation_order: 2,
            h: 0.0,
            ii: vec![0.0; n * n],
            riem_h: vec![0.0; n * n * n * n],
            r_injn: vec![0.0; n * n],
            r_nn: 0.0,
            ric_h_d: vec![0.0; n * n * n],
            r_nn_i: vec![0.0; n],
            r_nn_n: 0.0,
            r_injn_n: vec![0.0; n * n],
            ric_h_dd: vec![0.0; n * n * n * n],
            r_nn_ij: vec![0.0; n * n],
            r_nn_ni: vec![0.0; n],
            r_nn_nn: 0.0,
            r_injn_kl: vec![0.0; n * n * n * n],
            r_injn_nn: vec![0.0; n * n],
        }
    }

    /// Non-umbilic normalized chart (order 2): H = 0, Ric[ĥ](y) = 0, a given
    /// trace-free II, and R_NN = (1-2n)/(2(n-1)) ‖II‖² with the isotropic
    /// completion R_iNjN = (R_NN/n) δ.
    pub fn nonumbilic_normalized(n: usize, ii: Vec<f64>, chart_radius: f64) -> Result<Self> {
        if ii.len() != n * n {
            return Err(FyamError::InvalidParameter("II must be n×n".into()));
        }
        let tr: f64 = (0..n).map(|i| ii[i2(n, i, i)]).sum();
        if tr.abs() > 1e-10 {
            return Err(FyamError::InvalidParameter(format!(
                "normalized chart needs trace-free II (tr = {tr})"
            )));
        }
        let norm2: f64 = ii.iter().map(|v| v * v).sum();
        let nf = n as f64;
        let r_nn = (1.0 - 2.0 * nf) / (2.0 * (nf - 1.0)) * norm2;
        let mut mm = Self::flat(n, chart_radius);
        mm.ii = ii;
        mm.r_nn = r_nn;
        for i in 0..n {
            mm.r_injn[i2(n, i, i)] = r_nn / nf;
        }
        Ok(mm)
    }

    /// Umbilic chart with only the normal Ricci derivative active (order 3):
    /// II = 0, R_NN = 0, prescribed R_NN;N, isotropic R_iNjN;N = (R_NN;N/n) δ.
    pub fn umbilic_normal_derivative(n: usize, r_nn_n: f64, chart_radius: f64) -> Self {
        let mut mm = Self::flat(n, chart_radius);
        mm.truncation_order = 3;
        mm.r_nn_n = r_nn_n;
        for i in 0..n {
            mm.r_injn_n[i2(n, i, i)] = r_nn_n / n as f64;
        }
        mm
    }

    /// Umbilic order-4 chart carrying only a trace-free R_iNjN = Ric[ḡ] and
    /// the quartic products it forces: the conformally-normalized relations
    /// with vanishing Weyl norm and R_;NN give
    ///
    /// * R_NN;NN = -2 tr(R²), realized as R_iNjN;NN = -2 (R²)_ij,
    /// * Σ_i R_iNiN;kl = 0 and Σ_ij R_iNjN;ij = -tr(R²), realized by the
    ///   symmetric completion with β = -n/(2(n+2)(n-1)), ζ = -4β/n.
    pub fn umbilic_ricci_activated(n: usize, ric: Vec<f64>, chart_radius: f64) -> Result<Self> {
        if ric.len() != n * n {
            return Err(FyamError::InvalidParameter("ric must be n×n".into()));
        }
        let tr: f64 = (0..n).map(|i| ric[i2(n, i, i)]).sum();
        if tr.abs() > 1e-10 {
            return Err(FyamError::InvalidParameter(format!(
                "umbilic normalization needs trace-free Ric[ḡ] (tr = {tr})"
            )));
        }
        let nf = n as f64;
        let mut sq = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0.0;
                for k in 0..n {
                    acc += ric[i2(n, i, k)] * ric[i2(n, k, j)];
                }
                sq[i2(n, i, j)] = acc;
            }
        }
        let t: f64 = (0..n).map(|i| sq[i2(n, i, i)]).sum();
        let mut mm = Self::flat(n, chart_radius);
        mm.truncation_order = 4;
        mm.r_injn = ric;
        mm.r_nn = 0.0;
        mm.r_nn_nn = -2.0 * t;
        for v in sq.iter().enumerate() {
            mm.r_injn_nn[v.0] = -2.0 * v.1;
        }
        let beta = -nf / (2.0 * (nf + 2.0) * (nf - 1.0));
        let zeta = -4.0 * beta / nf;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut v = 0.0;
                        if j == l {
                            v += beta * sq[i2(n, i, k)];
                        }
                        if j == k {
                            v += beta * sq[i2(n, i, l)];
                        }
                        if i == l {
                            v += beta * sq[i2(n, j, k)];
                        }
                        if i == k {
                            v += beta * sq[i2(n, j, l)];
                        }
                        if i == j {
                            v += zeta * sq[i2(n, k, l)];
                        }
                        mm.r_injn_kl[i4(n, i, j, k, l)] = v;
                    }
                }
            }
        }
        Ok(mm)
    }

    /// Ricci tensor of the boundary metric, R_ij[ĥ] = Σ_k R_ikjk[ĥ].
    pub fn ric_h(&self, i: usize, j: usize) -> f64 {
        let n = self.n;
        (0..n).map(|k| self.riem_h[i4(n, i, k, j, k)]).sum()
    }

    /// ‖II‖².
    pub fn ii_norm2(&self) -> f64 {
        self.ii.iter().map(|v| v * v).sum()
    }

    /// (II²)_ij.
    pub fn ii_sq(&self, i: usize, j: usize) -> f64 {
        let n = self.n;
        (0..n).map(|k| self.ii[i2(n, i, k)] * self.ii[i2(n, k, j)]).sum()
    }

    /// tr(R_iNjN²) = (R_iNjN)² in the paper's squared-tensor notation.
    pub fn r_injn_sq_trace(&self) -> f64 {
        self.r_injn.iter().map(|v| v * v).sum()
    }

    fn check_chart(&self, x: &[f64]) -> Result<()> {
        let norm2: f64 = x.iter().map(|v| v * v).sum();
        if norm2.sqrt() > self.chart_radius {
            return Err(FyamError::Domain(format!(
                "point at |x| = {} outside chart radius {}",
                norm2.sqrt(),
                self.chart_radius
            )));
        }
        Ok(())
    }

    /// √|ḡ|(x) truncated at `truncation_order`. x = (x̄, x_N).
    pub fn metric_density(&self, x: &[f64]) -> Result<f64> {
        self.check_chart(x)?;
        let n = self.n;
        let xb = &x[..n];
        let z = x[n];
        let nf = n as f64;
        let mut s = 1.0 - nf * self.h * z;
        let mut quad_ric = 0.0;
        for i in 0..n {
            for j in 0..n {
                quad_ric += self.ric_h(i, j) * xb[i] * xb[j];
            }
        }
        s += 0.5 * (nf * nf * self.h * self.h - self.ii_norm2() - self.r_nn) * z * z
            - quad_ric / 6.0;
        if self.truncation_order >= 3 {
            let mut cubic = 0.0;
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        cubic += self.ric_h_d[(i2(self.n, i, j)) * n + k] * xb[i] * xb[j] * xb[k];
                    }
                }
            }
            let lin: f64 = (0..n).map(|i| self.r_nn_i[i] * xb[i]).sum();
            s += -cubic / 12.0 - 0.5 * lin * z * z - self.r_nn_n * z * z * z / 6.0;
        }
        if self.truncation_order >= 4 {
            let mut quart = 0.0;
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        for l in 0..n {
                            let prod: f64 = (0..n)
                                .map(|m| {
                                    (0..n)
                                        .map(|q| {
                                            self.riem_h[i4(n, m, i, q, j)]
                                                * self.riem_h[i4(n, m, k, q, l)]
                                        })
                                        .sum::<f64>()
                                })
                                .sum();
                            quart += (0.5 * self.ric_h_dd[i4(n, i, j, k, l)] + prod / 9.0)
                                * xb[i]
                                * xb[j]
                                * xb[k]
                                * xb[l];
                        }
                    }
                }
            }
            let mut quad_nn = 0.0;
            for i in 0..n {
                for j in 0..n {
                    quad_nn += self.r_nn_ij[i2(n, i, j)] * xb[i] * xb[j];
                }
            }
            let lin_ni: f64 = (0..n).map(|i| self.r_nn_ni[i] * xb[i]).sum();
            s += -quart / 20.0 - 0.25 * quad_nn * z * z - lin_ni * z * z * z / 6.0
                - (self.r_nn_nn + 2.0 * self.r_injn_sq_trace()) * z.powi(4) / 24.0;
        }
        Ok(s)
    }

    /// ∂_N √|ḡ|(x) of the same truncated polynomial.
    pub fn metric_density_dz(&self, x: &[f64]) -> Result<f64> {
        self.check_chart(x)?;
        let n = self.n;
        let xb = &x[..n];
        let z = x[n];
        let nf = n as f64;
        let mut s = -nf * self.h
            + (nf * nf * self.h * self.h - self.ii_norm2() - self.r_nn) * z;
        if self.truncation_order >= 3 {
            let lin: f64 = (0..n).map(|i| self.r_nn_i[i] * xb[i]).sum();
            s += -lin * z - 0.5 * self.r_nn_n * z * z;
        }
        if self.truncation_order >= 4 {
            let mut quad_nn = 0.0;
            for i in 0..n {
                for j in 0..n {
                    quad_nn += self.r_nn_ij[i2(n, i, j)] * xb[i] * xb[j];
                }
            }
            let lin_ni: f64 = (0..n).map(|i| self.r_nn_ni[i] * xb[i]).sum();
            s += -0.5 * quad_nn * z - 0.5 * lin_ni * z * z
                - (self.r_nn_nn + 2.0 * self.r_injn_sq_trace()) * z.powi(3) / 6.0;
        }
        Ok(s)
    }

    /// Tangential inverse-metric block ḡ^{ij}(x), truncated. Row-major n×n;
    /// the normal components are ḡ^{NN} = 1, ḡ^{iN} = 0 in Fermi coordinates.
    pub fn metric_inverse(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_chart(x)?;
        let n = self.n;
        let xb = &x[..n];
        let z = x[n];
        let mut g = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut v = if i == j { 1.0 } else { 0.0 };
                v += 2.0 * self.ii[i2(n, i, j)] * z;
                let mut rkl = 0.0;
                for k in 0..n {
                    for l in 0..n {
                        rkl += self.riem_h[i4(n, i, k, j, l)] * xb[k] * xb[l];
                    }
                }
                v += rkl / 3.0;
                v += (3.0 * self.ii_sq(i, j) + self.r_injn[i2(n, i, j)]) * z * z;
                if self.truncation_order >= 3 {
                    v += self.r_injn_n[i2(n, i, j)] * z.powi(3) / 3.0;
                }
                if self.truncation_order >= 4 {
                    // (1/15) R_iksl R_jmsq x_k x_l x_m x_q
                    let mut prod4 = 0.0;
                    for k in 0..n {
                        for l in 0..n {
                            for m in 0..n {
                                for q in 0..n {
                                    let rr: f64 = (0..n)
                                        .map(|s| {
                                            self.riem_h[i4(n, i, k, s, l)]
                                                * self.riem_h[i4(n, j, m, s, q)]
                                        })
                                        .sum();
                                    prod4 += rr * xb[k] * xb[l] * xb[m] * xb[q];
                                }
                            }
                        }
                    }
                    v += prod4 / 15.0;
                    // (½ R_iNjN;kl + ⅓ Sym_ij(R_iksl R_sNjN)) x_N² x_k x_l
                    let mut quad = 0.0;
                    for k in 0..n {
                        for l in 0..n {
                            let mut sym = 0.0;
                            for s in 0..n {
                                sym += 0.5
                                    * (self.riem_h[i4(n, i, k, s, l)] * self.r_injn[i2(n, s, j)]
                                        + self.riem_h[i4(n, j, k, s, l)]
                                            * self.r_injn[i2(n, s, i)]);
                            }
                            quad += (0.5 * self.r_injn_kl[i4(n, i, j, k, l)] + sym / 3.0)
                                * xb[k]
                                * xb[l];
                        }
                    }
                    v += quad * z * z;
                    v += (self.r_injn_nn[i2(n, i, j)]
                        + 8.0 * {
                            let mut acc = 0.0;
                            for s in 0..n {
                                acc += self.r_injn[i2(n, i, s)] * self.r_injn[i2(n, s, j)];
                            }
                            acc
                        })
                        * z.powi(4)
                        / 12.0;
                }
                g[i2(n, i, j)] = v;
            }
        }
        Ok(g)
    }

    /// E(x) = -((n-2γ)/2)(∂_N√|ḡ|/√|ḡ|) x_N^{-2γ} from the truncated density.
    pub fn e_term(&self, gamma_ord: f64, x: &[f64]) -> Result<f64> {
        let z = x[self.n];
        if z <= 0.0 {
            return Err(FyamError::Domain("E(x) needs x_N > 0".into()));
        }
        let dens = self.metric_density(x)?;
        let ddz = self.metric_density_dz(x)?;
        let nf = self.n as f64;
        Ok(-(nf - 2.0 * gamma_ord) / 2.0 * (ddz / dens) * z.powf(-2.0 * gamma_ord))
    }

    /// Consistency warnings: symmetry of II, H vs tr II/n, R_NN vs tr R_iNjN,
    /// the algebraic Riemann symmetries, and the umbilic requirement at
    /// truncation order ≥ 3.
    pub fn warnings(&self) -> Vec<String> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..i {
                if (self.ii[i2(n, i, j)] - self.ii[i2(n, j, i)]).abs() > 1e-12 {
                    out.push(format!("II not symmetric at ({i},{j})"));
                }
                if (self.r_injn[i2(n, i, j)] - self.r_injn[i2(n, j, i)]).abs() > 1e-12 {
                    out.push(format!("R_iNjN not symmetric at ({i},{j})"));
                }
            }
        }
        let tr_ii: f64 = (0..n).map(|i| self.ii[i2(n, i, i)]).sum();
        if (tr_ii / n as f64 - self.h).abs() > 1e-10 {
            out.push(format!(
                "H = {} inconsistent with tr II / n = {}",
                self.h,
                tr_ii / n as f64
            ));
        }
        let tr_r: f64 = (0..n).map(|i| self.r_injn[i2(n, i, i)]).sum();
        if (tr_r - self.r_nn).abs() > 1e-10 {
            out.push(format!(
                "R_NN = {} inconsistent with tr R_iNjN = {tr_r}",
                self.r_nn
            ));
        }
        // pair symmetry, antisymmetry, first Bianchi of R_ikjl
        'riem: for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    for l in 0..n {
                        let r = |a, b, c, d| self.riem_h[i4(n, a, b, c, d)];
                        if (r(i, k, j, l) - r(j, l, i, k)).abs() > 1e-12
                            || (r(i, k, j, l) + r(k, i, j, l)).abs() > 1e-12
                            || (r(i, k, j, l) + r(i, k, l, j)).abs() > 1e-12
                            || (r(i, k, j, l) + r(i, j, l, k) + r(i, l, k, j)).abs() > 1e-12
                        {
                            out.push("R_ikjl[ĥ] violates curvature symmetries".into());
                            break 'riem;
                        }
                    }
                }
            }
        }
        if self.truncation_order >= 3
            && (self.h.abs() > 1e-12 || self.ii.iter().any(|v| v.abs() > 1e-12))
        {
            out.push("truncation order ≥ 3 assumes the umbilic normalization (II = 0)".into());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn flat_metric_is_trivial() {
        let mm = ModelMetric::flat(3, 1.0);
        let x = [0.2, -0.1, 0.05, 0.3];
        assert_relative_eq!(mm.metric_density(&x).unwrap(), 1.0);
        let g = mm.metric_inverse(&x).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_relative_eq!(g[i * 3 + j], if i == j { 1.0 } else { 0.0 });
            }
        }
        assert_relative_eq!(mm.e_term(0.5, &x).unwrap(), 0.0);
    }

    #[test]
    fn mean_curvature_linear_term() {
        // density = 1 - nH x_N + (n²H²/2) x_N² + …
        let n = 3;
        let mut mm = ModelMetric::flat(n, 1.0);
        mm.h = 0.2;
        for i in 0..n {
            mm.ii[i * n + i] = 0.2; // umbilic II = H δ so tr II = nH
        }
        let z = 0.1;
        let got = mm.metric_density(&[0.0, 0.0, 0.0, z]).unwrap();
        let nf = n as f64;
        let ii_norm2 = nf * 0.2 * 0.2;
        let expect = 1.0 - nf * 0.2 * z + 0.5 * (nf * nf * 0.04 - ii_norm2 - 0.0) * z * z;
        assert_relative_eq!(got, expect, max_relative = 1e-14);
        assert!(mm.warnings().is_empty());
    }

    #[test]
    fn umbilic_normalized_kills_linear_density_term() {
        let n = 3;
        let mut ii = vec![0.0; 9];
        ii[0] = 1.0;
        ii[4] = -1.0;
        let mm = ModelMetric::nonumbilic_normalized(n, ii, 1.0).unwrap();
        assert!(mm.warnings().is_empty());
        // H = 0 ⇒ no O(x_N) term: density even in x_N to shown order
        let f = |z: f64| mm.metric_density(&[0.0, 0.0, 0.0, z]).unwrap();
        let z = 0.05;
        assert_relative_eq!(f(z), f(0.0) + (f(z) - f(0.0)), epsilon = 1e-15);
        let deriv0 = (f(1e-6) - f(0.0)) / 1e-6;
        assert!(deriv0.abs() < 1e-5);
        // paper normalization: ‖II‖² + R_NN = -‖II‖²/4 at n = 3
        let s = mm.ii_norm2();
        assert_relative_eq!(s + mm.r_nn, -0.25 * s, max_relative = 1e-12);
        // density = 1 + (1/8)s z² for the n = 3 normalized chart
        assert_relative_eq!(f(0.2), 1.0 + 0.125 * s * 0.04, max_relative = 1e-12);
    }

    #[test]
    fn e_term_matches_expansions() {
        // n = 3 normalized non-umbilic chart: E = -(1/4)‖II‖² (1 + O(|x|))
        let mut ii = vec![0.0; 9];
        ii[0] = 1.0;
        ii[4] = -1.0;
        let s = 2.0;
        let mm = ModelMetric::nonumbilic_normalized(3, ii, 1.0).unwrap();
        let e = mm.e_term(0.5, &[0.0, 0.0, 0.0, 1e-4]).unwrap();
        assert_relative_eq!(e, -0.25 * s, max_relative = 1e-6);

        // n = 4 umbilic chart: E = (3/2)(R_NN;i x_i + ½ R_NN;N x_N + O(|x|²))
        let mut mm = ModelMetric::umbilic_normal_derivative(4, -1.0, 1.0);
        mm.r_nn_i = vec![0.3, 0.0, 0.0, 0.0];
        let x = [0.01, 0.0, 0.0, 0.0, 0.004];
        let e = mm.e_term(0.5, &x).unwrap();
        let expect = 1.5 * (0.3 * 0.01 + 0.5 * (-1.0) * 0.004);
        assert_relative_eq!(e, expect, max_relative = 1e-3);
    }

    #[test]
    fn inverse_metric_order3_term() {
        let mm = ModelMetric::umbilic_normal_derivative(4, -1.0, 1.0);
        let z = 0.1;
        let g = mm.metric_inverse(&[0.0, 0.0, 0.0, 0.0, z]).unwrap();
        // ḡ^{ij} = δ + (1/3)(R_NN;N/n) δ z³
        let expect = 1.0 + (-1.0 / 4.0) * z * z * z / 3.0;
        for i in 0..4 {
            assert_relative_eq!(g[i * 4 + i], expect, max_relative = 1e-13);
        }
    }

    #[test]
    fn ricci_activated_contractions() {
        let n = 5;
        let mut ric = vec![0.0; 25];
        ric[0] = 1.0;
        ric[6] = -1.0; // diag(1,-1,0,0,0): trace-free
        let mm = ModelMetric::umbilic_ricci_activated(n, ric, 1.0).unwrap();
        let t = mm.r_injn_sq_trace();
        assert_relative_eq!(t, 2.0, max_relative = 1e-14);
        // Σ_i T_iikl = 0 for all (k,l)
        for k in 0..n {
            for l in 0..n {
                let tr: f64 = (0..n).map(|i| mm.r_injn_kl[i4(n, i, i, k, l)]).sum();
                assert!(tr.abs() < 1e-12, "trace at ({k},{l}) = {tr}");
            }
        }
        // Σ_ij T_ijij = -tr(R²)
        let full: f64 = (0..n)
            .map(|i| (0..n).map(|j| mm.r_injn_kl[i4(n, i, j, i, j)]).sum::<f64>())
            .sum();
        assert_relative_eq!(full, -t, max_relative = 1e-12);
        // R_NN;NN consistency: tr R_iNjN;NN = R_NN;NN = -2 tr(R²)
        let trnn: f64 = (0..n).map(|i| mm.r_injn_nn[i2(n, i, i)]).sum();
        assert_relative_eq!(trnn, mm.r_nn_nn, max_relative = 1e-12);
        assert_relative_eq!(mm.r_nn_nn, -2.0 * t, max_relative = 1e-12);
        assert!(mm.warnings().is_empty());
    }

    #[test]
    fn chart_radius_enforced() {
        let mm = ModelMetric::flat(2, 0.5);
        assert!(mm.metric_density(&[1.0, 0.0, 0.0]).is_err());
        assert!(mm.metric_inverse(&[0.0, 0.6, 0.1]).is_err());
    }

    #[test]
    fn warnings_fire_on_bad_data() {
        let mut mm = ModelMetric::flat(2, 1.0);
        mm.ii[1] = 0.5; // asymmetric
        mm.r_nn = 1.0; // inconsistent with tr R_iNjN = 0
        let w = mm.warnings();
        assert!(w.iter().any(|s| s.contains("II not symmetric")));
        assert!(w.iter().any(|s| s.contains("R_NN")));
    }
}
