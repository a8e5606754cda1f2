//! The two closed-form instances: `k = -1` (Catalan's constant) and the
//! `k`-derivative at `k = 1` (log-Gamma values at `-1/4`, `-3/4`).

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use super::accel::catalan_constant;
use super::report::{pair_label, Residual, Route, RouteValue, Verdict, VerificationReport};
use super::routes::{lhs_integral, rhs_series, rhs_zeta, rhs_zeta_dk, DEFAULT_SERIES_CAP};
use super::{IdentityCase, ResidualRule};
use crate::complexfn::{c64, gamma, principal_log, BranchedConstant, ComplexScalar};
use crate::error::{Error, Result};
use crate::quad::{integrate_finite, QuadConfig, QuadResult};

pub const DEFAULT_FD_STEP: f64 = 1e-4;
const CATALAN_LITERAL: f64 = 0.915_965_594_177_219_0;
const CATALAN_TOL: f64 = 1e-8;
const LOGGAMMA_TOL: f64 = 1e-6;
const FD_TOL: f64 = 1e-5;

/// `k = -1, a = 1`: integral, zeta form and series against `-4G/π`.
pub fn catalan_case(quad_cfg: QuadConfig) -> Result<VerificationReport> {
    let case = IdentityCase::new(c64(-1.0, 0.0), BranchedConstant::one())?
        .with_quad(quad_cfg)
        .with_check(ResidualRule::absolute(CATALAN_TOL));
    let g = catalan_constant()?;
    let reference = c64(-4.0 * g / PI, 0.0);

    let mut notes = vec![format!("G from accelerated series = {g:.17e}")];
    let mut routes = Vec::new();
    let mut had_failure = false;
    match lhs_integral(&case) {
        Ok(q) if q.converged => routes.push(RouteValue::quadrature(Route::Lhs, &q)),
        Ok(q) => {
            notes.push(format!("lhs: quadrature did not converge (err estimate {:e})", q.err_estimate));
            had_failure = true;
        }
        Err(e) => {
            notes.push(format!("lhs: {e}"));
            had_failure = true;
        }
    }
    for (route, result) in [
        (Route::Zeta, rhs_zeta(&case)),
        (Route::Series, rhs_series(&case, DEFAULT_SERIES_CAP)),
    ] {
        match result {
            Ok(v) => routes.push(RouteValue::exact(route, v)),
            Err(e) => {
                notes.push(format!("{route}: {e}"));
                had_failure = true;
            }
        }
    }

    let mut residuals: Vec<Residual> = routes
        .iter()
        .map(|r| Residual::between(pair_label(r.route, Route::Reference), r.value, reference, case.check))
        .collect();
    residuals.push(Residual::between(
        "catalan_series~catalan_literal",
        c64(g, 0.0),
        c64(CATALAN_LITERAL, 0.0),
        ResidualRule::absolute(1e-12),
    ));
    routes.push(RouteValue::exact(Route::Reference, reference));

    let mut report = VerificationReport {
        label: "catalan".to_string(),
        k: case.k(),
        a: case.a(),
        routes,
        residuals,
        verdict: Verdict::Partial,
        notes,
    };
    report.settle(had_failure);
    Ok(report)
}

/// `(π/4)·(ln[81 Γ⁴(-3/4) / (4π² e² Γ⁴(-1/4))] - πi)`.
pub fn loggamma_closed_form() -> Result<ComplexScalar> {
    let g34 = gamma(c64(-0.75, 0.0))?.re;
    let g14 = gamma(c64(-0.25, 0.0))?.re;
    let ratio = g34 / g14;
    let argument = 81.0 * ratio.powi(4) / (4.0 * PI * PI * std::f64::consts::E.powi(2));
    Ok(c64(FRAC_PI_4 * argument.ln(), -PI * PI / 4.0))
}

/// `∫_0^{π/2} cos(2y) ln(tan y) Log(ln tan y) dy`, principal `Log` (so
/// `+iπ` below `π/4`), split at `π/4`.
pub fn loggamma_direct_integral(quad_cfg: &QuadConfig) -> Result<QuadResult> {
    let f = |y: f64| -> Result<ComplexScalar> {
        let l = y.tan().ln();
        if l == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok((2.0 * y).cos() * l * principal_log(c64(l, 0.0))?)
    };
    let lower = integrate_finite(f, 0.0, FRAC_PI_4, quad_cfg)?;
    let upper = integrate_finite(f, FRAC_PI_4, FRAC_PI_2, quad_cfg)?;
    Ok(lower.combine(upper))
}

/// Direct integral, closed form, central difference of the zeta form in
/// `k` at `k = 1` with step `fd_step`, and the analytic `k`-derivative built
/// from `ζ(0, ·)` and `∂ζ/∂s(0, ·)`.
pub fn loggamma_case(quad_cfg: QuadConfig, fd_step: f64) -> Result<VerificationReport> {
    if !(1e-6..=1e-2).contains(&fd_step) {
        return Err(Error::Config(format!("fd_step must lie in [1e-6, 1e-2], got {fd_step}")));
    }
    let a = BranchedConstant::one();
    let at = |k: f64| IdentityCase::new(c64(k, 0.0), a).map(|c| c.with_quad(quad_cfg));

    let mut notes = Vec::new();
    let mut routes = Vec::new();
    let mut had_failure = false;

    match loggamma_direct_integral(&quad_cfg) {
        Ok(q) if q.converged => routes.push(RouteValue::quadrature(Route::Lhs, &q)),
        Ok(q) => {
            notes.push(format!("lhs: quadrature did not converge (err estimate {:e})", q.err_estimate));
            had_failure = true;
        }
        Err(e) => {
            notes.push(format!("lhs: {e}"));
            had_failure = true;
        }
    }
    let closed = loggamma_closed_form()?;
    routes.push(RouteValue::exact(Route::ClosedForm, closed));

    let fd = (|| -> Result<ComplexScalar> {
        let plus = rhs_zeta(&at(1.0 + fd_step)?)?;
        let minus = rhs_zeta(&at(1.0 - fd_step)?)?;
        Ok((plus - minus) / (2.0 * fd_step))
    })();
    let analytic = at(1.0).and_then(|c| rhs_zeta_dk(&c));
    for (route, result) in [(Route::FiniteDifference, fd), (Route::AnalyticDerivative, analytic)] {
        match result {
            Ok(v) => routes.push(RouteValue::exact(route, v)),
            Err(e) => {
                notes.push(format!("{route}: {e}"));
                had_failure = true;
            }
        }
    }

    let mut residuals = vec![Residual::between(
        "closed_form.im~-pi^2/4",
        c64(closed.im, 0.0),
        c64(-PI * PI / 4.0, 0.0),
        ResidualRule::absolute(1e-10),
    )];
    for (i, x) in routes.iter().enumerate() {
        for y in &routes[i + 1..] {
            let involves_fd = x.route == Route::FiniteDifference || y.route == Route::FiniteDifference;
            let rule = ResidualRule::absolute(if involves_fd { FD_TOL } else { LOGGAMMA_TOL });
            residuals.push(Residual::between(pair_label(x.route, y.route), x.value, y.value, rule));
        }
    }
    notes.push(format!("finite-difference step {fd_step:e}"));

    let mut report = VerificationReport {
        label: "loggamma".to_string(),
        k: c64(1.0, 0.0),
        a,
        routes,
        residuals,
        verdict: Verdict::Partial,
        notes,
    };
    report.settle(had_failure);
    Ok(report)
}
