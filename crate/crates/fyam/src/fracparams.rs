//! Closed-form constants of the fractional-order framework.
//!
//! Everything here is an exact expression in (n, γ) evaluated in f64:
//! the Neumann normalizer κ_γ, the bubble amplitude α_{n,γ}, the critical
//! exponent 2* = (n+2γ)/(n-2γ), the coefficient functions 𝓜₁, 𝓜₂₁, 𝓜₂₂
//! entering the curvature thresholds c¹_{n,γ} and c²_{n,γ}, and the
//! correction quadratics 1+4C+4C² and 2+24C+56C² attached to the Ψ₁/Ψ₂
//! test-function corrections.
//!
//! Domain violations are hard errors, never NaN.

use crate::special::{gamma, ln_gamma};
use crate::{FyamError, Result};
use serde::{Deserialize, Serialize};

/// The dimension/order pair (n, γ) with all scalar constants derived from it.
///
/// Invariants enforced at construction: γ ∈ (0,1) and n > 2γ, which make
/// 2* > 1 and both κ_γ and α_{n,γ} finite and positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaParams {
    /// Boundary dimension n (the extension lives in N = n+1 dimensions).
    pub n: usize,
    /// Fractional order γ ∈ (0,1).
    pub gamma: f64,
    /// κ_γ = 2^{2γ} Γ(γ) / (2 Γ(1-γ)), the weighted-Neumann normalizer.
    pub kappa: f64,
    /// α_{n,γ} = 2^{(n-2γ)/2} [Γ((n+2γ)/2)/Γ((n-2γ)/2)]^{(n-2γ)/(4γ)}.
    pub alpha: f64,
    /// Critical exponent 2* = (n+2γ)/(n-2γ).
    pub two_star: f64,
    /// s = n/2 + γ.
    pub s: f64,
}

impl GammaParams {
    /// Build the parameter pack, rejecting γ ∉ (0,1) and n ≤ 2γ.
    pub fn new(n: usize, gamma_ord: f64) -> Result<Self> {
        if !(0.0 < gamma_ord && gamma_ord < 1.0) || !gamma_ord.is_finite() {
            return Err(FyamError::InvalidParameter(format!(
                "gamma must lie in (0,1), got {gamma_ord}"
            )));
        }
        let nf = n as f64;
        if nf <= 2.0 * gamma_ord {
            return Err(FyamError::InvalidParameter(format!(
                "dimension too low: need n > 2γ, got n = {n}, γ = {gamma_ord}"
            )));
        }
        let kappa = 2.0f64.powf(2.0 * gamma_ord) * gamma(gamma_ord) / (2.0 * gamma(1.0 - gamma_ord));
        let m = (nf - 2.0 * gamma_ord) / 2.0;
        // log-space for the Γ-ratio power; both arguments are positive here
        let ln_ratio = ln_gamma((nf + 2.0 * gamma_ord) / 2.0) - ln_gamma(m);
        let alpha = (m * std::f64::consts::LN_2 + ln_ratio * m / (2.0 * gamma_ord)).exp();
        Ok(Self {
            n,
            gamma: gamma_ord,
            kappa,
            alpha,
            two_star: (nf + 2.0 * gamma_ord) / (nf - 2.0 * gamma_ord),
            s: nf / 2.0 + gamma_ord,
        })
    }

    /// n as f64, for formulas.
    #[inline]
    pub fn nf(&self) -> f64 {
        self.n as f64
    }

    /// Bubble decay exponent (n-2γ)/2.
    #[inline]
    pub fn half_deficit(&self) -> f64 {
        (self.nf() - 2.0 * self.gamma) / 2.0
    }
}

/// Which correction field a quadratic belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CorrectionKind {
    /// Ψ₁ correction (non-umbilic mechanism); quadratic 1 + 4C + 4C².
    Psi1,
    /// Ψ₂ correction (umbilic, Weyl mechanism); quadratic 2 + 24C + 56C².
    Psi2,
}

/// The correction-constant quadratic attached to each test-function family.
///
/// `Psi1` evaluates to (1+2C)², vanishing exactly at C = -1/2; `Psi2` has its
/// minimum -4/7 at C = -3/14.
pub fn correction_quadratic(kind: CorrectionKind, c: f64) -> f64 {
    match kind {
        CorrectionKind::Psi1 => 1.0 + 4.0 * c + 4.0 * c * c,
        CorrectionKind::Psi2 => 2.0 + 24.0 * c + 56.0 * c * c,
    }
}

/// 𝓜₁(n,γ) = ((1+γ)/3) [ (3n² + n(16γ²-22) + 20(1-γ²)) / (8n(n-1)(1-γ²))
///                       + 16(n-1)(1-γ²) / (n(3n² + n(2-8γ²) + 4γ²-4)) ],
/// positive for n ≥ 4, γ ∈ (0,1).
pub fn m1(n: usize, g: f64) -> Result<f64> {
    check_gamma(g)?;
    if n < 4 {
        return Err(FyamError::Domain(format!("m1 requires n >= 4, got {n}")));
    }
    let nf = n as f64;
    let g2 = g * g;
    let first = (3.0 * nf * nf + nf * (16.0 * g2 - 22.0) + 20.0 * (1.0 - g2))
        / (8.0 * nf * (nf - 1.0) * (1.0 - g2));
    let second = 16.0 * (nf - 1.0) * (1.0 - g2)
        / (nf * (3.0 * nf * nf + nf * (2.0 - 8.0 * g2) + 4.0 * g2 - 4.0));
    Ok((1.0 + g) / 3.0 * (first + second))
}

/// 𝓜₂₁(n,γ), positive for n > 4 + 2γ.
pub fn m21(n: usize, g: f64) -> Result<f64> {
    check_high_dim(n, g)?;
    let nf = n as f64;
    let g2 = g * g;
    let num = 15.0 * nf.powi(4) - 120.0 * nf.powi(3) + 20.0 * nf * nf * (17.0 - 2.0 * g2)
        - 80.0 * nf * (5.0 - 2.0 * g2)
        + 48.0 * (4.0 - 5.0 * g2 + g2 * g2);
    let den = 7680.0 * nf * (nf - 1.0) * (nf - 3.0) * (1.0 + g) * (1.0 - g) * (2.0 - g);
    Ok(num / den)
}

/// 𝓜₂₂(n,γ), positive for n > 4 + 2γ.
pub fn m22(n: usize, g: f64) -> Result<f64> {
    check_high_dim(n, g)?;
    let nf = n as f64;
    let g2 = g * g;
    let num = 25.0 * nf.powi(3) - 20.0 * nf * nf * (9.0 - g2) + 100.0 * nf * (4.0 - g2)
        - 16.0 * (4.0 - g2) * (4.0 - g2);
    let den = 5.0
        * nf
        * (nf - 4.0 - 2.0 * g)
        * (nf - 4.0 + 2.0 * g)
        * (5.0 * nf * nf - 4.0 * nf * (1.0 + g2) - 8.0 * (4.0 - g2));
    Ok(num / den)
}

/// c¹_{n,γ} = [16n(n-1)(1-γ)γ / ((n-2γ)(n-2+2γ)(n-2-2γ))] 𝓜₁(n,γ),
/// the non-umbilic curvature threshold; requires n ≥ 4.
pub fn c1(n: usize, g: f64) -> Result<f64> {
    let m = m1(n, g)?;
    let nf = n as f64;
    let pref = 16.0 * nf * (nf - 1.0) * (1.0 - g) * g
        / ((nf - 2.0 * g) * (nf - 2.0 + 2.0 * g) * (nf - 2.0 - 2.0 * g));
    Ok(pref * m)
}

/// c²_{n,γ} = [1024 n(n-1)(n-3)(2-γ)(1-γ)γ
///            / (3(n-2γ)(n-2-2γ)(n-2+2γ)(n-4-2γ)(n-4+2γ))] 𝓜₂₁(n,γ),
/// the Weyl-tensor threshold; requires n > 4 + 2γ.
pub fn c2(n: usize, g: f64) -> Result<f64> {
    let m = m21(n, g)?;
    let nf = n as f64;
    let pref = 1024.0 * (nf - 3.0) * (nf - 1.0) * nf * (2.0 - g) * (1.0 - g) * g
        / (3.0
            * (nf - 2.0 * g)
            * (nf - 2.0 - 2.0 * g)
            * (nf - 2.0 + 2.0 * g)
            * (nf - 4.0 - 2.0 * g)
            * (nf - 4.0 + 2.0 * g));
    Ok(pref * m)
}

fn check_gamma(g: f64) -> Result<()> {
    if !(0.0 < g && g < 1.0) || !g.is_finite() {
        return Err(FyamError::InvalidParameter(format!(
            "gamma must lie in (0,1), got {g}"
        )));
    }
    Ok(())
}

fn check_high_dim(n: usize, g: f64) -> Result<()> {
    check_gamma(g)?;
    if (n as f64) <= 4.0 + 2.0 * g {
        return Err(FyamError::Domain(format!(
            "need n > 4 + 2γ (denominators n-4±2γ degenerate): n = {n}, γ = {g}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn to_f64(r: &BigRational) -> f64 {
        // good enough for 12-digit comparisons: numerator/denominator stay small
        let num: f64 = r.numer().to_string().parse().unwrap();
        let den: f64 = r.denom().to_string().parse().unwrap();
        num / den
    }

    /// Independent exact-rational transcription of the 𝓜₁ display.
    fn m1_rational(n: i64, g: BigRational) -> BigRational {
        let nf = rat(n, 1);
        let one = rat(1, 1);
        let g2 = g.clone() * g.clone();
        let first_num = rat(3, 1) * nf.clone() * nf.clone()
            + nf.clone() * (rat(16, 1) * g2.clone() - rat(22, 1))
            + rat(20, 1) * (one.clone() - g2.clone());
        let first_den = rat(8, 1) * nf.clone() * (nf.clone() - one.clone()) * (one.clone() - g2.clone());
        let second_num = rat(16, 1) * (nf.clone() - one.clone()) * (one.clone() - g2.clone());
        let second_den = nf.clone()
            * (rat(3, 1) * nf.clone() * nf.clone() + nf.clone() * (rat(2, 1) - rat(8, 1) * g2.clone())
                + rat(4, 1) * g2.clone()
                - rat(4, 1));
        (one + g) / rat(3, 1) * (first_num / first_den + second_num / second_den)
    }

    /// Independent exact-rational transcription of the 𝓜₂₁ display.
    fn m21_rational(n: i64, g: BigRational) -> BigRational {
        let nf = rat(n, 1);
        let g2 = g.clone() * g.clone();
        let num = rat(15, 1) * nf.clone().pow(4) - rat(120, 1) * nf.clone().pow(3)
            + rat(20, 1) * nf.clone() * nf.clone() * (rat(17, 1) - rat(2, 1) * g2.clone())
            - rat(80, 1) * nf.clone() * (rat(5, 1) - rat(2, 1) * g2.clone())
            + rat(48, 1) * (rat(4, 1) - rat(5, 1) * g2.clone() + g2.clone() * g2.clone());
        let den = rat(7680, 1)
            * nf.clone()
            * (nf.clone() - rat(1, 1))
            * (nf - rat(3, 1))
            * (rat(1, 1) + g.clone())
            * (rat(1, 1) - g.clone())
            * (rat(2, 1) - g);
        num / den
    }

    /// Independent exact-rational transcription of the 𝓜₂₂ display.
    fn m22_rational(n: i64, g: BigRational) -> BigRational {
        let nf = rat(n, 1);
        let g2 = g.clone() * g.clone();
        let four_minus = rat(4, 1) - g2.clone();
        let num = rat(25, 1) * nf.clone().pow(3)
            - rat(20, 1) * nf.clone() * nf.clone() * (rat(9, 1) - g2.clone())
            + rat(100, 1) * nf.clone() * four_minus.clone()
            - rat(16, 1) * four_minus.clone() * four_minus.clone();
        let den = rat(5, 1)
            * nf.clone()
            * (nf.clone() - rat(4, 1) - rat(2, 1) * g.clone())
            * (nf.clone() - rat(4, 1) + rat(2, 1) * g.clone())
            * (rat(5, 1) * nf.clone() * nf.clone() - rat(4, 1) * nf * (rat(1, 1) + g2.clone())
                - rat(8, 1) * four_minus);
        num / den
    }

    #[test]
    fn params_3_half_are_exact() {
        let p = GammaParams::new(3, 0.5).unwrap();
        assert_relative_eq!(p.kappa, 1.0, max_relative = 1e-14);
        assert_relative_eq!(p.alpha, 2.0, max_relative = 1e-13);
        assert_relative_eq!(p.two_star, 2.0, max_relative = 1e-15);
        assert_relative_eq!(p.s, 2.0, max_relative = 1e-15);
        // self-consistency of s = n/2 + γ: s(n-s) = n²/4 - γ²
        assert_relative_eq!(
            p.s * (p.nf() - p.s),
            p.nf() * p.nf() / 4.0 - p.gamma * p.gamma,
            max_relative = 1e-15
        );
    }

    #[test]
    fn alpha_half_is_power_law() {
        // at γ = 1/2 the amplitude collapses to (n-1)^{(n-1)/2}
        for n in 2..=8 {
            let p = GammaParams::new(n, 0.5).unwrap();
            let expect = ((n - 1) as f64).powf((n as f64 - 1.0) / 2.0);
            assert_relative_eq!(p.alpha, expect, max_relative = 1e-12);
        }
    }

    #[test]
    fn rejects_low_dimension_and_bad_gamma() {
        assert!(GammaParams::new(1, 0.75).is_err());
        assert!(GammaParams::new(3, 0.0).is_err());
        assert!(GammaParams::new(3, 1.0).is_err());
        assert!(GammaParams::new(3, -0.2).is_err());
    }

    #[test]
    fn m1_matches_rational_oracle_to_12_digits() {
        for (n, num, den) in [(4i64, 1i64, 2i64), (5, 1, 4), (7, 3, 4), (12, 9, 10), (20, 1, 20)] {
            let f = m1(n as usize, num as f64 / den as f64).unwrap();
            let exact = to_f64(&m1_rational(n, rat(num, den)));
            assert_relative_eq!(f, exact, max_relative = 1e-12);
        }
        // pinned exact value: m1(4, 1/2) = 3/80
        assert_relative_eq!(m1(4, 0.5).unwrap(), 3.0 / 80.0, max_relative = 1e-13);
    }

    #[test]
    fn m21_m22_match_rational_oracle_to_12_digits() {
        for (n, num, den) in [(6i64, 1i64, 2i64), (7, 9, 10), (8, 1, 4), (15, 2, 3)] {
            let g = num as f64 / den as f64;
            assert_relative_eq!(
                m21(n as usize, g).unwrap(),
                to_f64(&m21_rational(n, rat(num, den))),
                max_relative = 1e-12
            );
            assert_relative_eq!(
                m22(n as usize, g).unwrap(),
                to_f64(&m22_rational(n, rat(num, den))),
                max_relative = 1e-12
            );
        }
        // pinned exact values at (6, 1/2)
        assert_relative_eq!(m21(6, 0.5).unwrap(), 3375.0 / 777_600.0, max_relative = 1e-13);
        assert_relative_eq!(m22(6, 0.5).unwrap(), 1125.0 / 10_800.0, max_relative = 1e-13);
    }

    #[test]
    fn m_constants_positive_on_paper_domains() {
        for n in 4..=20 {
            for k in 1..=19 {
                let g = 0.05 * k as f64;
                assert!(m1(n, g).unwrap() > 0.0, "m1({n},{g}) not positive");
            }
        }
        for n in 5..=20 {
            for k in 1..=19 {
                let g = 0.05 * k as f64;
                if (n as f64) > 4.0 + 2.0 * g {
                    assert!(m21(n, g).unwrap() > 0.0, "m21({n},{g})");
                    assert!(m22(n, g).unwrap() > 0.0, "m22({n},{g})");
                }
            }
        }
    }

    #[test]
    fn c1_c2_positive_and_invert_to_m() {
        let g = 0.5;
        for n in [4usize, 6, 9] {
            let c = c1(n, g).unwrap();
            assert!(c > 0.0);
            let nf = n as f64;
            let back = c * (nf - 2.0 * g) * (nf - 2.0 + 2.0 * g) * (nf - 2.0 - 2.0 * g)
                / (16.0 * nf * (nf - 1.0) * (1.0 - g) * g);
            assert_relative_eq!(back, m1(n, g).unwrap(), max_relative = 1e-13);
        }
        assert!(c2(6, 0.5).unwrap() > 0.0);
        assert!(c2(7, 0.9).unwrap() > 0.0);
        // pinned: c1(4, 1/2) = (48/9)·(3/80) = 1/5
        assert_relative_eq!(c1(4, 0.5).unwrap(), 0.2, max_relative = 1e-13);
    }

    #[test]
    fn domain_violations_are_errors() {
        assert!(m1(3, 0.5).is_err());
        assert!(m21(5, 0.5).is_err()); // n = 4 + 2γ exactly
        assert!(m22(5, 0.5).is_err());
        assert!(c2(5, 0.5).is_err());
        assert!(m21(4, 0.1).is_err());
    }

    #[test]
    fn correction_quadratics_match_paper_values() {
        assert_relative_eq!(
            correction_quadratic(CorrectionKind::Psi1, -0.5),
            0.0,
            epsilon = 1e-15
        );
        assert_relative_eq!(
            correction_quadratic(CorrectionKind::Psi2, -3.0 / 14.0),
            -4.0 / 7.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            correction_quadratic(CorrectionKind::Psi1, 0.0),
            1.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn psi1_quadratic_is_perfect_square() {
        // (1+2C)² ≥ 0 with unique zero at -1/2; scan plus algebraic identity
        let mut min_c = f64::NAN;
        let mut min_v = f64::INFINITY;
        for i in 0..=2000 {
            let c = -2.0 + 4.0 * i as f64 / 2000.0;
            let v = correction_quadratic(CorrectionKind::Psi1, c);
            assert!(v >= -1e-12);
            assert_relative_eq!(v, (1.0 + 2.0 * c) * (1.0 + 2.0 * c), max_relative = 1e-12);
            if v < min_v {
                min_v = v;
                min_c = c;
            }
        }
        assert!((min_c + 0.5).abs() < 2e-3);
    }

    #[test]
    fn psi2_quadratic_minimum_by_completing_square_and_scan() {
        // 2 + 24C + 56C² = 56(C + 3/14)² - 4/7
        let mut min_c = f64::NAN;
        let mut min_v = f64::INFINITY;
        for i in 0..=4000 {
            let c = -1.0 + 2.0 * i as f64 / 4000.0;
            let v = correction_quadratic(CorrectionKind::Psi2, c);
            let square = 56.0 * (c + 3.0 / 14.0) * (c + 3.0 / 14.0) - 4.0 / 7.0;
            assert_relative_eq!(v, square, max_relative = 1e-10, epsilon = 1e-12);
            if v < min_v {
                min_v = v;
                min_c = c;
            }
        }
        assert!((min_c + 3.0 / 14.0).abs() < 1e-3);
        assert!((min_v + 4.0 / 7.0).abs() < 1e-4);
    }

    #[test]
    fn kappa_symmetry_at_half() {
        // κ_{1/2} = 1 exactly; κ_γ κ_{1-γ}-type symmetry degenerates there
        let p = GammaParams::new(5, 0.5).unwrap();
        assert_relative_eq!(p.kappa, 1.0, max_relative = 1e-14);
    }
}
