//! Alternating-series acceleration (Cohen–Rodriguez Villegas–Zagier).
//!
//! For `Σ_{n≥0} (-1)^n a_n` with `a_n` a moment sequence the error after
//! `n` terms is bounded by `2·(3+√8)^{-n}` times the total variation of the
//! underlying measure, so doubling `n` until two estimates agree is a sound
//! stopping rule.

use num_complex::Complex64;
use num_traits::Zero;

use crate::complexfn::ComplexScalar;
use crate::error::{Error, Result};

/// `(3+√8)^n` overflows a double shortly after this.
pub const MAX_ACCELERATED_TERMS: usize = 384;
const START_TERMS: usize = 16;

/// One pass of the acceleration over `terms[..n]`.
fn cvz(terms: &[ComplexScalar], n: usize) -> ComplexScalar {
    let mut d = (3.0 + 8f64.sqrt()).powi(n as i32);
    d = 0.5 * (d + 1.0 / d);
    let nf = n as f64;
    let mut b = -1.0;
    let mut c = -d;
    let mut sum = Complex64::zero();
    for (k, &a) in terms.iter().take(n).enumerate() {
        let kf = k as f64;
        c = b - c;
        sum += c * a;
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    sum / d
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcceleratedSum {
    pub value: ComplexScalar,
    pub terms_used: usize,
    pub change: f64,
}

/// `Σ_{n≥0} (-1)^n a_n`, doubling the term count until successive estimates
/// agree to `rtol` (relative to the larger of the sum and the first term).
pub fn alternating_sum<F>(mut term: F, rtol: f64, n_cap: usize) -> Result<AcceleratedSum>
where
    F: FnMut(usize) -> Result<ComplexScalar>,
{
    if n_cap == 0 || n_cap > MAX_ACCELERATED_TERMS {
        return Err(Error::Config(format!(
            "term cap must lie in [1, {MAX_ACCELERATED_TERMS}], got {n_cap}"
        )));
    }
    let mut terms: Vec<ComplexScalar> = Vec::with_capacity(n_cap);
    let mut n = START_TERMS.min(n_cap);
    let mut previous: Option<ComplexScalar> = None;
    loop {
        while terms.len() < n {
            terms.push(term(terms.len())?);
        }
        let estimate = cvz(&terms, n);
        if let Some(p) = previous {
            let change = (estimate - p).norm();
            let scale = estimate.norm().max(terms[0].norm());
            if change <= rtol * scale {
                return Ok(AcceleratedSum { value: estimate, terms_used: n, change });
            }
            if n == n_cap {
                return Err(Error::Convergence(format!(
                    "alternating series still moving by {change:e} after {n} terms"
                )));
            }
        }
        previous = Some(estimate);
        if n == n_cap {
            // a cap below the starting size only allows a single estimate
            return Err(Error::Convergence(format!("term cap {n_cap} too small to check convergence")));
        }
        n = (2 * n).min(n_cap);
    }
}

/// Catalan's constant `Σ (-1)^n/(2n+1)^2` via the accelerated series.
pub fn catalan_constant() -> Result<f64> {
    let sum = alternating_sum(
        |n| {
            let d = (2 * n + 1) as f64;
            Ok(Complex64::new(1.0 / (d * d), 0.0))
        },
        1e-15,
        128,
    )?;
    Ok(sum.value.re)
}
