use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2, PI};

use num_complex::Complex64;
use num_traits::Zero;

use super::accel::alternating_sum;
use super::IdentityCase;
use crate::complexfn::{c64, complex_pow, gamma, principal_log, BranchedConstant, ComplexScalar};
use crate::error::{Error, Result};
use crate::hurwitz::{hurwitz_zeta, hurwitz_zeta_with_ds};
use crate::quad::{integrate_finite, integrate_semi_infinite, QuadResult};

pub const DEFAULT_SERIES_CAP: usize = 256;
const SERIES_RTOL: f64 = 1e-14;
const CAUCHY_NODES: usize = 128;

fn ln_pi() -> f64 {
    PI.ln()
}

/// `ln(2 cosh x)` without overflow.
fn ln_two_cosh(x: f64) -> f64 {
    let ax = x.abs();
    ax + (-2.0 * ax).exp().ln_1p()
}

/// `cos(2y) · log^k(a tan y)` with `log(a tan y) = (ln r + iθ) + ln tan y`.
///
/// For `a = 1` the factor `cos 2y` is evaluated as `-tanh u`, `u = ln tan y`,
/// which keeps the removable point `y = π/4` finite when `k = -1`.
pub fn integrand(y: f64, k: ComplexScalar, a: BranchedConstant) -> Result<ComplexScalar> {
    if !(y > 0.0 && y < FRAC_PI_2) {
        return Err(Error::Domain(format!("y = {y} is outside (0, π/2)")));
    }
    let log_tan = y.tan().ln();
    if a.is_one() {
        if k.re <= -2.0 {
            return Err(Error::Domain(format!("Re(k) = {} ≤ -2 is not integrable at π/4", k.re)));
        }
        let u = log_tan;
        if u == 0.0 {
            if k.re > -1.0 {
                return Ok(Complex64::zero());
            }
            if k == c64(-1.0, 0.0) {
                return Ok(c64(-1.0, 0.0));
            }
            return Err(Error::Domain(format!("log(tan y) = 0 with Re(k) = {} ≤ -1", k.re)));
        }
        return Ok(-u.tanh() * complex_pow(c64(u, 0.0), k)?);
    }
    let v = a.log() + log_tan;
    Ok((2.0 * y).cos() * complex_pow(v, k)?)
}

/// `-tanh(u) (log a + u)^k / (2 cosh u)` given `v = log a + u` separately so
/// that `v` can be formed without cancellation near the branch point.
/// When `v = u` (`a = 1`) the zero of `tanh u` is folded into the power, so
/// `u^k` never overflows for `Re k < 0`.
fn u_domain_integrand(u: f64, v: ComplexScalar, k: ComplexScalar, v_is_u: bool) -> Result<ComplexScalar> {
    if v.re == 0.0 && v.im == 0.0 {
        return complex_pow(v, k);
    }
    if v_is_u {
        let tanh_over_u = if u.abs() < 1e-8 { 1.0 } else { u.tanh() / u };
        let exponent = (k + 1.0) * principal_log(v)? - ln_two_cosh(u);
        return Ok(-tanh_over_u * exponent.exp());
    }
    let exponent = k * principal_log(v)? - ln_two_cosh(u);
    Ok(-u.tanh() * exponent.exp())
}

fn check_lhs_region(case: &IdentityCase) -> Result<()> {
    if case.a().is_one() && case.k().re <= -2.0 {
        return Err(Error::Region(format!(
            "Re(k) = {} ≤ -2 with a = 1 is not integrable at y = π/4",
            case.k().re
        )));
    }
    Ok(())
}

/// The definite integral, after `u = ln tan y`:
/// `-∫_ℝ tanh(u) (log a + u)^k / (2 cosh u) du`, split at the branch point
/// `u = -ln r` when `a` is real and at `u = 0` otherwise.
pub fn lhs_integral(case: &IdentityCase) -> Result<QuadResult> {
    check_lhs_region(case)?;
    let a = case.a();
    let k = case.k();
    let log_a = a.log();
    // split point in u and the matching value of v = log a + u
    let (u0, v0) = if a.is_positive_real() { (-a.r().ln(), Complex64::zero()) } else { (0.0, log_a) };
    let cfg = &case.quad_cfg;
    let v_is_u = a.is_one();
    let right = integrate_semi_infinite(|s| u_domain_integrand(u0 + s, v0 + s, k, v_is_u), cfg)?;
    let left = integrate_semi_infinite(|s| u_domain_integrand(u0 - s, v0 - s, k, v_is_u), cfg)?;
    Ok(right.combine(left))
}

/// The definite integral straight in `y`, split at `π/4` and, for real
/// positive `a`, at the branch point `y = atan(1/r)`.
pub fn lhs_integral_direct(case: &IdentityCase) -> Result<QuadResult> {
    check_lhs_region(case)?;
    let (k, a) = (case.k(), case.a());
    let cfg = &case.quad_cfg;
    let mut cuts = vec![0.0, FRAC_PI_4, FRAC_PI_2];
    if a.is_positive_real() && !a.is_one() {
        cuts.push((1.0 / a.r()).atan());
        cuts.sort_by(f64::total_cmp);
    }
    let mut total: Option<QuadResult> = None;
    for w in cuts.windows(2) {
        let piece = integrate_finite(|y| integrand(y, k, a), w[0], w[1], cfg)?;
        total = Some(match total {
            Some(t) => t.combine(piece),
            None => piece,
        });
    }
    Ok(total.expect("at least one interval"))
}

fn zeta_arguments(a: BranchedConstant) -> (ComplexScalar, ComplexScalar) {
    // -i log(a) / (2π)
    let shift = Complex64::new(0.0, -1.0) * a.log() / (2.0 * PI);
    (shift + 0.25, shift + 0.75)
}

/// `2^{k-1} k π^k i^{k+1}` with principal `i^{k+1} = exp(iπ(k+1)/2)`.
fn zeta_prefactor(k: ComplexScalar) -> ComplexScalar {
    let log = (k - 1.0) * LN_2 + k * ln_pi() + Complex64::new(0.0, FRAC_PI_2) * (k + 1.0);
    k * log.exp()
}

/// The closed form. `k = 0` returns 0 directly (`∫ cos 2y dy = 0`).
pub fn rhs_zeta(case: &IdentityCase) -> Result<ComplexScalar> {
    let k = case.k();
    if k.is_zero() {
        return Ok(Complex64::zero());
    }
    let (q1, q2) = zeta_arguments(case.a());
    let s = 1.0 - k;
    let z1 = hurwitz_zeta(s, q1, &case.zeta_cfg)?;
    let z2 = hurwitz_zeta(s, q2, &case.zeta_cfg)?;
    Ok(zeta_prefactor(k) * (z1 - z2))
}

/// `d/dk` of the closed form, from `∂ζ/∂s` (the zeta argument is `1 - k`).
pub fn rhs_zeta_dk(case: &IdentityCase) -> Result<ComplexScalar> {
    let k = case.k();
    let (q1, q2) = zeta_arguments(case.a());
    let s = 1.0 - k;
    if k.is_zero() {
        // P(k) = k·c(k), so d/dk at 0 is c(0)·D(1) which sits on the zeta pole
        return Err(Error::Pole("closed-form derivative at k = 0".into()));
    }
    let (z1, d1) = hurwitz_zeta_with_ds(s, q1, &case.zeta_cfg)?;
    let (z2, d2) = hurwitz_zeta_with_ds(s, q2, &case.zeta_cfg)?;
    let prefactor = zeta_prefactor(k);
    let log_derivative = 1.0 / k + LN_2 + ln_pi() + Complex64::new(0.0, FRAC_PI_2);
    Ok(prefactor * log_derivative * (z1 - z2) - prefactor * (d1 - d2))
}

/// `-πk Σ_{n≥0} (-1)^n (πi(2n+1)/2 + log a)^{k-1}`, valid for `Re k < 1`.
pub fn rhs_series(case: &IdentityCase, n_cap: usize) -> Result<ComplexScalar> {
    let k = case.k();
    if k.re >= 1.0 {
        return Err(Error::Region(format!("series needs Re(k) < 1, got {}", k.re)));
    }
    if k.is_zero() {
        return Ok(Complex64::zero());
    }
    let log_a = case.a().log();
    let exponent = k - 1.0;
    let sum = alternating_sum(
        |n| {
            let base = Complex64::new(0.0, FRAC_PI_2 * (2 * n + 1) as f64) + log_a;
            complex_pow(base, exponent)
        },
        SERIES_RTOL,
        n_cap,
    )?;
    Ok(-PI * k * sum.value)
}

/// The two-ray Hankel contour with the cut on the positive imaginary axis.
///
/// With `w = it` on both edges (`arg w = π/2` and `π/2 - 2π`) the branch
/// difference of `w^{-k}` collapses the contour integral to
///
/// ```text
/// Γ(k+1)·(contour) = (i/2) · πk/Γ(1-k) · e^{iπk/2} · ∫_0^∞ e^{it log a} t^{-k} sech(πt/2) dt
/// ```
///
/// where `Γ(k+1) sin(πk) = πk/Γ(1-k)` removes the `Γ(k+1)` pole.
pub fn rhs_contour(case: &IdentityCase) -> Result<QuadResult> {
    let k = case.k();
    if k.re >= 1.0 {
        return Err(Error::Region(format!("contour needs Re(k) < 1, got {}", k.re)));
    }
    if case.k_is_integer() {
        return Err(Error::Region(format!(
            "integer k = {} collapses the two-ray contour; use contour_cauchy_check",
            k.re
        )));
    }
    let i_log_a = Complex64::new(0.0, 1.0) * case.a().log();
    let ray = integrate_semi_infinite(
        |t| {
            let exponent = i_log_a * t - k * t.ln() - ln_two_cosh(FRAC_PI_2 * t) + LN_2;
            Ok(exponent.exp())
        },
        &case.quad_cfg,
    )?;
    let factor = Complex64::new(0.0, 0.5) * PI * k / gamma(1.0 - k)?
        * (Complex64::new(0.0, FRAC_PI_2) * k).exp();
    Ok(ray.scale(factor))
}

/// `(1/2πi) ∮ e^{wy} w^{-k-1} dw` on the unit circle by the trapezoidal rule.
pub fn contour_cauchy_check(y: ComplexScalar, k: u32) -> Result<ComplexScalar> {
    if y.norm() > 10.0 {
        return Err(Error::Domain(format!("|y| = {} exceeds 10", y.norm())));
    }
    let mut sum = Complex64::zero();
    for j in 0..CAUCHY_NODES {
        let phi = 2.0 * PI * j as f64 / CAUCHY_NODES as f64;
        let w = Complex64::from_polar(1.0, phi);
        sum += (w * y).exp() * Complex64::from_polar(1.0, -(k as f64) * phi);
    }
    Ok(sum / CAUCHY_NODES as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CATALAN: f64 = 0.915_965_594_177_219_015_054_6;

    fn case(k: ComplexScalar, a: BranchedConstant) -> IdentityCase {
        IdentityCase::new(k, a).unwrap()
    }

    fn one() -> BranchedConstant {
        BranchedConstant::one()
    }

    #[test]
    fn integrand_examples() {
        let v = integrand(FRAC_PI_4, c64(-1.0, 0.0), one()).unwrap();
        assert!((v - c64(-1.0, 0.0)).norm() < 1e-15);
        let v = integrand(FRAC_PI_4, c64(2.0, 0.0), one()).unwrap();
        assert!(v.norm() < 1e-30);
        let v = integrand(PI / 3.0, c64(1.0, 0.0), one()).unwrap();
        assert!((v.re + 0.5 * 3f64.sqrt().ln()).abs() < 1e-15);
        assert!(integrand(0.0, c64(1.0, 0.0), one()).is_err());
        assert!(integrand(0.3, c64(-2.5, 0.0), one()).is_err());
    }

    #[test]
    fn integrand_near_removable_point() {
        // -tanh(u)/u → -1 as u → 0
        let v = integrand(FRAC_PI_4 + 1e-9, c64(-1.0, 0.0), one()).unwrap();
        assert!((v.re + 1.0).abs() < 1e-12);
    }

    #[test]
    fn lhs_known_values() {
        let r = lhs_integral(&case(c64(1.0, 0.0), one())).unwrap();
        assert!(r.converged && (r.value + FRAC_PI_2).norm() < 1e-10);
        let r = lhs_integral(&case(c64(2.0, 0.0), one())).unwrap();
        assert!(r.value.norm() < 1e-10);
        let r = lhs_integral(&case(c64(-1.0, 0.0), one())).unwrap();
        assert!((r.value.re + 4.0 * CATALAN / PI).abs() < 1e-10);
    }

    #[test]
    fn zeta_known_values() {
        let v = rhs_zeta(&case(c64(-1.0, 0.0), one())).unwrap();
        assert!((v.re + 4.0 * CATALAN / PI).abs() < 1e-13 && v.im.abs() < 1e-13);
        let v = rhs_zeta(&case(c64(2.0, 0.0), one())).unwrap();
        assert!(v.norm() < 1e-13);
        let v = rhs_zeta(&case(c64(3.0, 0.0), one())).unwrap();
        assert!((v.re + 3.0 * PI.powi(3) / 8.0).abs() < 1e-12 && v.im.abs() < 1e-12);
        assert_eq!(rhs_zeta(&case(c64(0.0, 0.0), one())).unwrap(), Complex64::zero());
    }

    #[test]
    fn series_examples() {
        let v = rhs_series(&case(c64(-1.0, 0.0), one()), DEFAULT_SERIES_CAP).unwrap();
        assert!((v.re + 4.0 * CATALAN / PI).abs() < 1e-13);
        let a = BranchedConstant::new(1.7, 2.0).unwrap();
        assert_eq!(rhs_series(&case(c64(0.0, 0.0), a), 64).unwrap(), Complex64::zero());
        let c = case(c64(0.5, 0.0), one());
        let s = rhs_series(&c, DEFAULT_SERIES_CAP).unwrap();
        let z = rhs_zeta(&c).unwrap();
        assert!((s - z).norm() <= 1e-9 * z.norm());
        assert!(matches!(rhs_series(&case(c64(1.0, 0.0), one()), 64), Err(Error::Region(_))));
    }

    #[test]
    fn contour_examples() {
        let c = case(c64(0.5, 0.0), one());
        let r = rhs_contour(&c).unwrap();
        let s = rhs_series(&c, DEFAULT_SERIES_CAP).unwrap();
        assert!(r.converged && (r.value - s).norm() <= 1e-6 * s.norm(), "{} vs {}", r.value, s);
        let c = case(c64(-0.5, 0.0), BranchedConstant::new(2.0, 1e-3).unwrap());
        let r = rhs_contour(&c).unwrap();
        let z = rhs_zeta(&c).unwrap();
        assert!((r.value - z).norm() <= 1e-6 * z.norm());
        assert!(matches!(rhs_contour(&case(c64(2.0, 0.0), one())), Err(Error::Region(_))));
        assert!(matches!(rhs_contour(&case(c64(-1.0, 0.0), one())), Err(Error::Region(_))));
    }

    #[test]
    fn cauchy_examples() {
        let v = contour_cauchy_check(c64(1.0, 0.0), 3).unwrap();
        assert!((v - 1.0 / 6.0).norm() < 1e-15);
        let v = contour_cauchy_check(c64(2.0, 0.0), 1).unwrap();
        assert!((v - 2.0).norm() < 1e-14);
        let v = contour_cauchy_check(c64(0.5, 0.5), 0).unwrap();
        assert!((v - 1.0).norm() < 1e-15);
        assert!(contour_cauchy_check(c64(11.0, 0.0), 1).is_err());
    }

    #[test]
    fn closed_form_derivative_matches_difference() {
        let c = case(c64(0.3, 0.2), BranchedConstant::new(1.5, 1.0).unwrap());
        let h = 1e-5;
        let plus = rhs_zeta(&case(c.k() + h, c.a())).unwrap();
        let minus = rhs_zeta(&case(c.k() - h, c.a())).unwrap();
        let fd = (plus - minus) / (2.0 * h);
        let d = rhs_zeta_dk(&c).unwrap();
        assert!((fd - d).norm() < 1e-8 * d.norm().max(1.0));
    }
}
