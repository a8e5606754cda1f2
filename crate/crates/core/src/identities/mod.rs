//! The identity
//!
//! ```text
//! ∫_0^{π/2} cos(2y) log^k(a tan y) dy
//!     = 2^{k-1} k π^k i^{k+1} [ζ(1-k, 1/4 - i log a/(2π)) - ζ(1-k, 3/4 - i log a/(2π))]
//! ```
//!
//! evaluated by four independent routes: the definite integral, the zeta
//! closed form, the alternating series behind it, and the Hankel-contour
//! integral both sides reduce to.

pub mod accel;
mod report;
mod routes;
mod special;

pub use report::{sweep, verify, Residual, Route, RouteValue, SweepResult, Verdict, VerificationReport};
pub use routes::{
    contour_cauchy_check, integrand, lhs_integral, lhs_integral_direct, rhs_contour, rhs_series,
    rhs_zeta, rhs_zeta_dk, DEFAULT_SERIES_CAP,
};
pub use special::{
    catalan_case, loggamma_case, loggamma_closed_form, loggamma_direct_integral,
    DEFAULT_FD_STEP,
};

use crate::complexfn::{BranchedConstant, ComplexScalar};
use crate::error::{Error, Result};
use crate::hurwitz::ZetaConfig;
use crate::quad::QuadConfig;

/// Pass/fail rule for comparing two values:
/// `|x - y| ≤ atol + rtol·max(|x|, |y|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualRule {
    pub atol: f64,
    pub rtol: f64,
}

impl ResidualRule {
    pub const fn new(atol: f64, rtol: f64) -> Self {
        Self { atol, rtol }
    }

    pub const fn absolute(atol: f64) -> Self {
        Self { atol, rtol: 0.0 }
    }

    pub fn limit(&self, x: ComplexScalar, y: ComplexScalar) -> f64 {
        self.atol + self.rtol * x.norm().max(y.norm())
    }

    pub fn accepts(&self, x: ComplexScalar, y: ComplexScalar) -> bool {
        (x - y).norm() <= self.limit(x, y)
    }
}

impl Default for ResidualRule {
    fn default() -> Self {
        Self::new(1e-6, 1e-6)
    }
}

/// One instance `(k, a)` of the identity plus evaluation settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCase {
    k: ComplexScalar,
    a: BranchedConstant,
    pub quad_cfg: QuadConfig,
    pub zeta_cfg: ZetaConfig,
    pub check: ResidualRule,
    pub series_cap: usize,
}

impl IdentityCase {
    /// Rejects a positive real `a ≠ 1` when `Re k < 0`: the logarithm then
    /// vanishes inside the interval with a non-integrable power.
    pub fn new(k: ComplexScalar, a: BranchedConstant) -> Result<Self> {
        if !(k.re.is_finite() && k.im.is_finite()) {
            return Err(Error::Domain(format!("k must be finite, got {k}")));
        }
        if a.is_positive_real() && k.re < 0.0 && !a.is_one() {
            return Err(Error::Region(format!(
                "a = {} is real and positive with Re(k) = {} < 0; only a = 1 is admitted",
                a.r(),
                k.re
            )));
        }
        Ok(Self {
            k,
            a,
            quad_cfg: QuadConfig::default(),
            zeta_cfg: ZetaConfig::default(),
            check: ResidualRule::default(),
            series_cap: DEFAULT_SERIES_CAP,
        })
    }

    pub fn k(&self) -> ComplexScalar {
        self.k
    }

    pub fn a(&self) -> BranchedConstant {
        self.a
    }

    pub fn with_quad(mut self, cfg: QuadConfig) -> Self {
        self.quad_cfg = cfg;
        self
    }

    pub fn with_zeta(mut self, cfg: ZetaConfig) -> Self {
        self.zeta_cfg = cfg;
        self
    }

    pub fn with_check(mut self, rule: ResidualRule) -> Self {
        self.check = rule;
        self
    }

    pub fn with_series_cap(mut self, cap: usize) -> Self {
        self.series_cap = cap;
        self
    }

    pub(crate) fn k_is_integer(&self) -> bool {
        self.k.im == 0.0 && self.k.re.fract() == 0.0
    }
}
