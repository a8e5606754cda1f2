//! Hurwitz zeta `ζ(s, q)` and `∂ζ/∂s` by Euler–Maclaurin summation.
//!
//! For `x = N + q`:
//!
//! ```text
//! ζ(s, q) = Σ_{n<N} (n+q)^{-s} + x^{1-s}/(s-1) + x^{-s}/2
//!         + Σ_{j≥1} B_{2j}/(2j)! · s(s+1)…(s+2j-2) · x^{-s-2j+1}
//! ```
//!
//! The derivative differentiates each term analytically. `N` starts at
//! `direct_terms` and doubles until the tail reaches the tolerance within
//! `tail_terms` Bernoulli corrections.
//!
//! For `Re s < 0` the direct sum and `x^{1-s}/(s-1)` cancel to many digits,
//! so that half-plane uses the Abel–Plana form instead:
//!
//! ```text
//! ζ(s, q) = q^{-s}/2 + q^{1-s}/(s-1)
//!         + i ∫_0^∞ [(q+it)^{-s} - (q-it)^{-s}] / (e^{2πt} - 1) dt
//! ```

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;

use crate::complexfn::{
    bernoulli_polynomial, complex_pow, even_bernoulli_over_factorial, principal_log,
    ComplexScalar,
};
use crate::error::{Error, Result};
use crate::quad::{integrate_semi_infinite, QuadConfig};

pub const MAX_TAIL_TERMS: usize = 30;
const MAX_DIRECT_TERMS: usize = 1 << 20;
const ABEL_PLANA_RTOL: f64 = 1e-15;
const ABEL_PLANA_ACCEPT: f64 = 1e-12;
const ABEL_PLANA_EVALS: usize = 200_000;
/// Largest `n` accepted by [`zeta_neg_int_oracle`].
pub const ORACLE_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaConfig {
    direct_terms: usize,
    tail_terms: usize,
    tolerance: f64,
}

impl ZetaConfig {
    pub fn new(direct_terms: usize, tail_terms: usize, tolerance: f64) -> Result<Self> {
        if direct_terms < 1 {
            return Err(Error::Config("direct_terms must be at least 1".into()));
        }
        if !(1..=MAX_TAIL_TERMS).contains(&tail_terms) {
            return Err(Error::Config(format!(
                "tail_terms must lie in [1, {MAX_TAIL_TERMS}], got {tail_terms}"
            )));
        }
        if !(1e-15..=1e-2).contains(&tolerance) {
            return Err(Error::Config(format!(
                "tolerance must lie in [1e-15, 1e-2], got {tolerance}"
            )));
        }
        Ok(Self { direct_terms, tail_terms, tolerance })
    }

    pub fn direct_terms(&self) -> usize {
        self.direct_terms
    }

    pub fn tail_terms(&self) -> usize {
        self.tail_terms
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }
}

impl Default for ZetaConfig {
    fn default() -> Self {
        Self { direct_terms: 1, tail_terms: MAX_TAIL_TERMS, tolerance: 1e-15 }
    }
}

#[derive(Debug, Clone, Copy)]
struct Evaluation {
    value: ComplexScalar,
    derivative: ComplexScalar,
}

/// Euler–Maclaurin at a fixed `N`; `None` if the tail has not reached
/// the tolerance within the allowed number of Bernoulli terms.
fn euler_maclaurin(
    s: ComplexScalar,
    q: ComplexScalar,
    n: usize,
    cfg: &ZetaConfig,
    want_derivative: bool,
) -> Result<Option<Evaluation>> {
    let mut value = Complex64::zero();
    let mut derivative = Complex64::zero();
    for i in 0..n {
        let base = q + i as f64;
        let log = principal_log(base)?;
        let term = (-s * log).exp();
        value += term;
        if want_derivative {
            derivative -= log * term;
        }
    }

    let x = q + n as f64;
    let log_x = principal_log(x)?;
    let x_neg_s = (-s * log_x).exp();
    let sm1 = s - 1.0;
    let integral = x_neg_s * x / sm1;
    value += integral + 0.5 * x_neg_s;
    if want_derivative {
        derivative += -log_x * integral - x * x_neg_s / (sm1 * sm1) - 0.5 * log_x * x_neg_s;
    }

    // poly = s(s+1)…(s+2j-2), dpoly its s-derivative; power = x^{-s-2j+1}
    let ratios = even_bernoulli_over_factorial();
    let inv_x = 1.0 / x;
    let inv_x2 = inv_x * inv_x;
    let mut poly = s;
    let mut dpoly = Complex64::new(1.0, 0.0);
    let mut power = x_neg_s * inv_x;
    let mut prev_mag = f64::INFINITY;
    for j in 1..=cfg.tail_terms {
        if j > 1 {
            for offset in [2 * j - 3, 2 * j - 2] {
                let factor = s + offset as f64;
                dpoly = dpoly * factor + poly;
                poly *= factor;
            }
            power *= inv_x2;
        }
        let term = ratios[j] * poly * power;
        let dterm = ratios[j] * (dpoly - log_x * poly) * power;
        value += term;
        if want_derivative {
            derivative += dterm;
        }
        let mag = if want_derivative { term.norm().max(dterm.norm()) } else { term.norm() };
        let scale = if want_derivative { value.norm().max(derivative.norm()) } else { value.norm() };
        if mag <= cfg.tolerance * scale || mag == 0.0 {
            return Ok(Some(Evaluation { value, derivative }));
        }
        if mag > prev_mag {
            return Ok(None);
        }
        prev_mag = mag;
    }
    Ok(None)
}

/// Abel–Plana evaluation for `Re q > 0`.
fn abel_plana(
    s: ComplexScalar,
    q: ComplexScalar,
    cfg: &ZetaConfig,
    want_derivative: bool,
) -> Result<Evaluation> {
    let rtol = cfg.tolerance.max(ABEL_PLANA_RTOL);
    let quad_cfg = QuadConfig::new(1e-15, rtol, ABEL_PLANA_EVALS)?;
    let i = Complex64::i();
    let integrate = |derivative: bool| -> Result<ComplexScalar> {
        let r = integrate_semi_infinite(
            |t| {
                let weight = 1.0 / (2.0 * PI * t).exp_m1();
                if weight == 0.0 {
                    return Ok(Complex64::zero());
                }
                let up = principal_log(q + i * t)?;
                let down = principal_log(q - i * t)?;
                let (pu, pd) = ((-s * up).exp(), (-s * down).exp());
                let diff = if derivative { down * pd - up * pu } else { pu - pd };
                Ok(i * diff * weight)
            },
            &quad_cfg,
        )?;
        if !r.converged && r.err_estimate > ABEL_PLANA_ACCEPT * r.value.norm() {
            return Err(Error::Convergence(format!(
                "Abel–Plana integral for s = {s}, q = {q}: error estimate {:e}",
                r.err_estimate
            )));
        }
        Ok(r.value)
    };
    let log_q = principal_log(q)?;
    let q_neg_s = (-s * log_q).exp();
    let sm1 = s - 1.0;
    let integral_term = q * q_neg_s / sm1;
    let value = 0.5 * q_neg_s + integral_term + integrate(false)?;
    let derivative = if want_derivative {
        -0.5 * log_q * q_neg_s - log_q * integral_term - q * q_neg_s / (sm1 * sm1) + integrate(true)?
    } else {
        Complex64::zero()
    };
    Ok(Evaluation { value, derivative })
}

/// Shifts `q` right until `Re q > 0` using `ζ(s,q) = ζ(s,q+1) + q^{-s}`.
fn evaluate(
    s: ComplexScalar,
    q: ComplexScalar,
    cfg: &ZetaConfig,
    want_derivative: bool,
) -> Result<Evaluation> {
    if s.re == 1.0 && s.im == 0.0 {
        return Err(Error::Pole("hurwitz_zeta at s = 1".into()));
    }
    let mut q = q;
    let mut offset = Evaluation { value: Complex64::zero(), derivative: Complex64::zero() };
    while q.re <= 0.0 {
        let term = complex_pow(q, -s)?;
        offset.value += term;
        if want_derivative {
            offset.derivative -= principal_log(q)? * term;
        }
        q += 1.0;
    }

    if s.re < 0.0 {
        let ev = abel_plana(s, q, cfg, want_derivative)?;
        return Ok(Evaluation {
            value: ev.value + offset.value,
            derivative: ev.derivative + offset.derivative,
        });
    }

    let mut n = cfg.direct_terms;
    loop {
        if let Some(ev) = euler_maclaurin(s, q, n, cfg, want_derivative)? {
            return Ok(Evaluation {
                value: ev.value + offset.value,
                derivative: ev.derivative + offset.derivative,
            });
        }
        if n >= MAX_DIRECT_TERMS {
            return Err(Error::Convergence(format!(
                "Euler–Maclaurin tail for s = {s}, q = {q} did not reach {:e}",
                cfg.tolerance
            )));
        }
        n *= 2;
    }
}

/// `ζ(s, q)`. Arguments with `Re q ≤ 0` are shifted automatically.
pub fn hurwitz_zeta(s: ComplexScalar, q: ComplexScalar, cfg: &ZetaConfig) -> Result<ComplexScalar> {
    Ok(evaluate(s, q, cfg, false)?.value)
}

/// `∂ζ(s, q)/∂s`.
pub fn hurwitz_zeta_ds(
    s: ComplexScalar,
    q: ComplexScalar,
    cfg: &ZetaConfig,
) -> Result<ComplexScalar> {
    Ok(evaluate(s, q, cfg, true)?.derivative)
}

/// `(ζ(s, q), ∂ζ/∂s)` from one pass.
pub fn hurwitz_zeta_with_ds(
    s: ComplexScalar,
    q: ComplexScalar,
    cfg: &ZetaConfig,
) -> Result<(ComplexScalar, ComplexScalar)> {
    let ev = evaluate(s, q, cfg, true)?;
    Ok((ev.value, ev.derivative))
}

/// `ζ(-n, q) = -B_{n+1}(q)/(n+1)` through Bernoulli polynomials.
pub fn zeta_neg_int_oracle(n: usize, q: ComplexScalar) -> Result<ComplexScalar> {
    if n > ORACLE_CAP {
        return Err(Error::Size { requested: n, cap: ORACLE_CAP });
    }
    Ok(-bernoulli_polynomial(n + 1, q)? / (n + 1) as f64)
}
