use std::fmt;

use rayon::prelude::*;

use super::routes::{lhs_integral, rhs_contour, rhs_series, rhs_zeta};
use super::{IdentityCase, ResidualRule};
use crate::complexfn::{BranchedConstant, ComplexScalar};
use crate::error::Result;
use crate::hurwitz::ZetaConfig;
use crate::quad::{QuadConfig, QuadResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    Lhs,
    Zeta,
    Series,
    Contour,
    Reference,
    ClosedForm,
    FiniteDifference,
    AnalyticDerivative,
}

impl Route {
    pub fn as_str(&self) -> &'static str {
        match self {
            Route::Lhs => "lhs",
            Route::Zeta => "zeta",
            Route::Series => "series",
            Route::Contour => "contour",
            Route::Reference => "reference",
            Route::ClosedForm => "closed_form",
            Route::FiniteDifference => "finite_difference",
            Route::AnalyticDerivative => "analytic_derivative",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RouteValue {
    pub route: Route,
    pub value: ComplexScalar,
    /// Quadrature routes only.
    pub err_estimate: Option<f64>,
    pub n_evals: Option<usize>,
}

impl RouteValue {
    pub fn exact(route: Route, value: ComplexScalar) -> Self {
        Self { route, value, err_estimate: None, n_evals: None }
    }

    pub fn quadrature(route: Route, q: &QuadResult) -> Self {
        Self { route, value: q.value, err_estimate: Some(q.err_estimate), n_evals: Some(q.n_evals) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    pub label: String,
    pub abs: f64,
    pub limit: f64,
    pub pass: bool,
}

impl Residual {
    pub fn between(label: impl Into<String>, x: ComplexScalar, y: ComplexScalar, rule: ResidualRule) -> Self {
        let abs = (x - y).norm();
        let limit = rule.limit(x, y);
        Self { label: label.into(), abs, limit, pass: abs <= limit }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Partial,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Partial => "partial",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub label: String,
    pub k: ComplexScalar,
    pub a: BranchedConstant,
    pub routes: Vec<RouteValue>,
    pub residuals: Vec<Residual>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn route(&self, route: Route) -> Option<&RouteValue> {
        self.routes.iter().find(|r| r.route == route)
    }

    pub fn lhs(&self) -> Option<ComplexScalar> {
        self.route(Route::Lhs).map(|r| r.value)
    }

    pub fn zeta_value(&self) -> Option<ComplexScalar> {
        self.route(Route::Zeta).map(|r| r.value)
    }

    pub fn series_value(&self) -> Option<ComplexScalar> {
        self.route(Route::Series).map(|r| r.value)
    }

    pub fn contour_value(&self) -> Option<ComplexScalar> {
        self.route(Route::Contour).map(|r| r.value)
    }

    pub fn residual(&self, label: &str) -> Option<&Residual> {
        self.residuals.iter().find(|r| r.label == label)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.abs).fold(0.0, f64::max)
    }

    /// Fills `verdict` from the residuals, the number of routes and whether
    /// any route failed along the way.
    pub(crate) fn settle(&mut self, had_failure: bool) {
        self.verdict = if self.residuals.iter().any(|r| !r.pass) {
            Verdict::Fail
        } else if self.routes.len() < 2 || had_failure {
            Verdict::Partial
        } else {
            Verdict::Pass
        };
    }
}

fn record_quad(
    route: Route,
    result: Result<QuadResult>,
    routes: &mut Vec<RouteValue>,
    notes: &mut Vec<String>,
) -> bool {
    match result {
        Ok(q) if q.converged => {
            routes.push(RouteValue::quadrature(route, &q));
            true
        }
        Ok(q) => {
            notes.push(format!(
                "{route}: quadrature did not converge (err estimate {:e} after {} evaluations)",
                q.err_estimate, q.n_evals
            ));
            false
        }
        Err(e) => {
            notes.push(format!("{route}: {e}"));
            false
        }
    }
}

pub(crate) fn pair_label(a: Route, b: Route) -> String {
    format!("{a}~{b}")
}

/// Every route that applies to the case; residuals for all pairs.
pub fn verify(case: &IdentityCase) -> VerificationReport {
    let mut routes = Vec::with_capacity(4);
    let mut notes = Vec::new();
    let mut had_failure = false;

    if !record_quad(Route::Lhs, lhs_integral(case), &mut routes, &mut notes) {
        had_failure = true;
    }

    match rhs_zeta(case) {
        Ok(v) => routes.push(RouteValue::exact(Route::Zeta, v)),
        Err(e) => {
            notes.push(format!("zeta: {e}"));
            had_failure = true;
        }
    }

    let k = case.k();
    if k.re < 1.0 {
        match rhs_series(case, case.series_cap) {
            Ok(v) => {
                routes.push(RouteValue::exact(Route::Series, v));
                notes.push(
                    "series: alternating sum scaled by -pi*k; the zeta form of the same sum is \
                     (2*pi*i)^(k-1)/Gamma(k) * (zeta difference), which needs the extra factor \
                     -pi*Gamma(k+1)/Gamma(k) = -pi*k to match the closed form"
                        .to_string(),
                );
            }
            Err(e) => {
                notes.push(format!("series: {e}"));
                had_failure = true;
            }
        }
        if case.k_is_integer() {
            notes.push("contour skipped: integer k collapses the two-ray contour".to_string());
        } else if !record_quad(Route::Contour, rhs_contour(case), &mut routes, &mut notes) {
            had_failure = true;
        }
    } else {
        notes.push("series skipped: Re(k) >= 1".to_string());
        notes.push("contour skipped: Re(k) >= 1".to_string());
    }

    let mut residuals = Vec::new();
    for (i, x) in routes.iter().enumerate() {
        for y in &routes[i + 1..] {
            residuals.push(Residual::between(pair_label(x.route, y.route), x.value, y.value, case.check));
        }
    }

    let mut report = VerificationReport {
        label: "identity".to_string(),
        k,
        a: case.a(),
        routes,
        residuals,
        verdict: Verdict::Partial,
        notes,
    };
    report.settle(had_failure);
    report
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub reports: Vec<VerificationReport>,
    pub notes: Vec<String>,
}

impl SweepResult {
    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.verdict == Verdict::Pass)
    }
}

/// Cartesian product of `k_list × a_list`, in input order (k outer).
/// Pairs that violate the case invariants are skipped with a note.
pub fn sweep(
    k_list: &[ComplexScalar],
    a_list: &[BranchedConstant],
    quad_cfg: QuadConfig,
    zeta_cfg: ZetaConfig,
    check: ResidualRule,
) -> SweepResult {
    let mut notes = Vec::new();
    let mut cases = Vec::new();
    for &k in k_list {
        for &a in a_list {
            match IdentityCase::new(k, a) {
                Ok(c) => cases.push(c.with_quad(quad_cfg).with_zeta(zeta_cfg).with_check(check)),
                Err(e) => notes.push(format!("skipped k = {k}, a = {}@{}: {e}", a.r(), a.theta())),
            }
        }
    }
    if cases.is_empty() {
        notes.push("no valid (k, a) pairs after filtering".to_string());
    }
    let reports = cases.par_iter().map(verify).collect();
    SweepResult { reports, notes }
}
