//! Seeded property checks for every module, runnable from the command line.
//! Each check samples its inputs from a fixed-seed generator, so a run is
//! reproducible.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complexfn::{c64, complex_pow, gamma, log_gamma, sin_pi, BranchedConstant, ComplexScalar};
use crate::error::Result;
use crate::hurwitz::{hurwitz_zeta, hurwitz_zeta_ds, zeta_neg_int_oracle, ZetaConfig};
use crate::identities::{
    contour_cauchy_check, lhs_integral, lhs_integral_direct, rhs_series, rhs_zeta, IdentityCase,
    DEFAULT_SERIES_CAP,
};
use crate::quad::{integrate_finite, QuadConfig};

pub const DEFAULT_SEED: u64 = 0x5eed_2e7a;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Largest observed error, relative or absolute as the check defines it.
    pub worst: f64,
    pub limit: f64,
    pub detail: String,
}

fn outcome(name: &'static str, worst: f64, limit: f64, detail: impl Into<String>) -> CheckOutcome {
    CheckOutcome { name, passed: worst <= limit, worst, limit, detail: detail.into() }
}

fn failed(name: &'static str, limit: f64, e: crate::Error) -> CheckOutcome {
    CheckOutcome { name, passed: false, worst: f64::INFINITY, limit, detail: e.to_string() }
}

fn rel(a: ComplexScalar, b: ComplexScalar) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

/// `z` with `|Re z|, |Im z| ≤ 5`, at least 0.1 from every non-positive integer.
pub fn sample_gamma_argument(rng: &mut ChaCha8Rng) -> ComplexScalar {
    loop {
        let z = c64(rng.gen_range(-5.0..=5.0), rng.gen_range(-5.0..=5.0));
        let nearest = z.re.round().min(0.0);
        if (z - nearest).norm() >= 0.1 {
            return z;
        }
    }
}

fn with_samples<F>(name: &'static str, limit: f64, n: usize, seed: u64, mut f: F) -> CheckOutcome
where
    F: FnMut(&mut ChaCha8Rng) -> Result<f64>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        match f(&mut rng) {
            Ok(e) => worst = worst.max(e),
            Err(e) => return failed(name, limit, e),
        }
    }
    outcome(name, worst, limit, format!("{n} samples"))
}

pub fn gamma_reflection(seed: u64) -> CheckOutcome {
    with_samples("gamma reflection", 1e-12, 100, seed, |rng| {
        let z = sample_gamma_argument(rng);
        let product = gamma(z)? * gamma(1.0 - z)? * sin_pi(z) / PI;
        Ok((product - 1.0).norm())
    })
}

pub fn gamma_recurrence(seed: u64) -> CheckOutcome {
    with_samples("gamma recurrence", 1e-12, 100, seed, |rng| {
        let z = sample_gamma_argument(rng);
        Ok(rel(gamma(z + 1.0)?, z * gamma(z)?))
    })
}

pub fn gamma_conjugation(seed: u64) -> CheckOutcome {
    with_samples("gamma conjugation", 1e-13, 100, seed, |rng| {
        let z = sample_gamma_argument(rng);
        Ok(rel(gamma(z.conj())?, gamma(z)?.conj()))
    })
}

pub fn log_gamma_exponential(seed: u64) -> CheckOutcome {
    with_samples("exp(log_gamma) = gamma", 1e-11, 100, seed, |rng| {
        let z = sample_gamma_argument(rng);
        Ok(rel(log_gamma(z)?.exp(), gamma(z)?))
    })
}

pub fn integer_powers(seed: u64) -> CheckOutcome {
    with_samples("integer powers", 1e-12, 100, seed, |rng| {
        let z = c64(rng.gen_range(-3.0..=3.0), rng.gen_range(-3.0..=3.0));
        let m: i32 = rng.gen_range(-6..=6);
        let mut expected = Complex64::new(1.0, 0.0);
        for _ in 0..m.unsigned_abs() {
            expected *= z;
        }
        if m < 0 {
            expected = 1.0 / expected;
        }
        Ok(rel(complex_pow(z, c64(m as f64, 0.0))?, expected))
    })
}

/// `(s, q)` with `Re q ∈ [0.1, 3]`, `|Im q| ≤ 2`, `|s| ≤ 6`, `|s - 1| ≥ 0.2`.
pub fn sample_zeta_arguments(rng: &mut ChaCha8Rng) -> (ComplexScalar, ComplexScalar) {
    let q = c64(rng.gen_range(0.1..=3.0), rng.gen_range(-2.0..=2.0));
    loop {
        let s = c64(rng.gen_range(-6.0..=6.0), rng.gen_range(-6.0..=6.0));
        if s.norm() <= 6.0 && (s - 1.0).norm() >= 0.2 {
            return (s, q);
        }
    }
}

pub fn zeta_recurrence(seed: u64) -> CheckOutcome {
    let cfg = ZetaConfig::default();
    with_samples("zeta recurrence", 1e-12, 50, seed, |rng| {
        let (s, q) = sample_zeta_arguments(rng);
        let here = hurwitz_zeta(s, q, &cfg)?;
        let next = hurwitz_zeta(s, q + 1.0, &cfg)?;
        let step = complex_pow(q, -s)?;
        let scale = here.norm().max(next.norm()).max(step.norm());
        Ok((here - next - step).norm() / scale)
    })
}

pub fn zeta_conjugation(seed: u64) -> CheckOutcome {
    let cfg = ZetaConfig::default();
    with_samples("zeta conjugation", 1e-13, 50, seed, |rng| {
        let (s, q) = sample_zeta_arguments(rng);
        Ok(rel(hurwitz_zeta(s.conj(), q.conj(), &cfg)?, hurwitz_zeta(s, q, &cfg)?.conj()))
    })
}

pub fn zeta_oracle_agreement() -> CheckOutcome {
    let cfg = ZetaConfig::default();
    let name = "zeta vs Bernoulli oracle";
    let limit = 1e-11;
    let qs = [c64(0.25, 0.0), c64(0.5, 0.0), c64(0.75, 0.0), c64(1.0, 0.0), c64(1.0, 0.5)];
    let mut worst: f64 = 0.0;
    for n in 0..=4usize {
        for &q in &qs {
            let run = || -> Result<f64> {
                let z = hurwitz_zeta(c64(-(n as f64), 0.0), q, &cfg)?;
                let o = zeta_neg_int_oracle(n, q)?;
                // relative, falling back to absolute where the oracle vanishes
                Ok((z - o).norm() / o.norm().max(1.0))
            };
            match run() {
                Ok(e) => worst = worst.max(e),
                Err(e) => return failed(name, limit, e),
            }
        }
    }
    outcome(name, worst, limit, "n = 0..4, five q values")
}

pub fn lerch_formula() -> CheckOutcome {
    let cfg = ZetaConfig::default();
    let name = "Lerch formula";
    let limit = 1e-10;
    let half_log_2pi = 0.5 * (2.0 * PI).ln();
    let mut worst: f64 = 0.0;
    for q in [0.25, 1.0 / 3.0, 0.5, 0.75, 1.0, 1.5] {
        let q = c64(q, 0.0);
        let run = || -> Result<f64> {
            let d = hurwitz_zeta_ds(c64(0.0, 0.0), q, &cfg)?;
            Ok((d - (log_gamma(q)? - half_log_2pi)).norm())
        };
        match run() {
            Ok(e) => worst = worst.max(e),
            Err(e) => return failed(name, limit, e),
        }
    }
    outcome(name, worst, limit, "six q values")
}

/// `Σ_{n=1}^{N-1} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2 + s N^{-s-1}/12`, N = 10^5.
pub fn riemann_direct(s: f64) -> f64 {
    let n = 100_000usize;
    let mut sum = 0.0;
    for i in (1..n).rev() {
        sum += (i as f64).powf(-s);
    }
    let nf = n as f64;
    sum + nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s) + s * nf.powf(-s - 1.0) / 12.0
}

pub fn riemann_reduction() -> CheckOutcome {
    let cfg = ZetaConfig::default();
    let name = "Riemann reduction";
    let limit = 1e-12;
    let mut worst: f64 = 0.0;
    for s in [2.0, 3.0, 4.0] {
        match hurwitz_zeta(c64(s, 0.0), c64(1.0, 0.0), &cfg) {
            Ok(z) => worst = worst.max((z.re - riemann_direct(s)).abs()),
            Err(e) => return failed(name, limit, e),
        }
    }
    outcome(name, worst, limit, "s = 2, 3, 4")
}

fn smooth_pair(x: f64) -> (ComplexScalar, ComplexScalar) {
    (c64((3.0 * x).sin(), x * x), c64((-x).exp(), (2.0 * x).cos()))
}

pub fn quad_additivity() -> CheckOutcome {
    let name = "quadrature additivity";
    let cfg = QuadConfig::default();
    let run = || -> Result<(f64, f64)> {
        let f = |x: f64| Ok(smooth_pair(x).0);
        let left = integrate_finite(f, 0.0, 0.7, &cfg)?;
        let right = integrate_finite(f, 0.7, 2.0, &cfg)?;
        let whole = integrate_finite(f, 0.0, 2.0, &cfg)?;
        let bound = left.err_estimate + right.err_estimate + whole.err_estimate;
        Ok(((left.value + right.value - whole.value).norm(), bound.max(1e-15)))
    };
    match run() {
        Ok((e, bound)) => outcome(name, e, bound, "split at 0.7"),
        Err(e) => failed(name, 0.0, e),
    }
}

pub fn quad_linearity() -> CheckOutcome {
    let name = "quadrature linearity";
    let cfg = QuadConfig::default();
    let alpha = c64(0.7, -1.2);
    let beta = c64(-2.0, 0.4);
    let run = || -> Result<(f64, f64)> {
        let f = integrate_finite(|x| Ok(smooth_pair(x).0), 0.0, 2.0, &cfg)?;
        let g = integrate_finite(|x| Ok(smooth_pair(x).1), 0.0, 2.0, &cfg)?;
        let combo = integrate_finite(
            |x| {
                let (a, b) = smooth_pair(x);
                Ok(alpha * a + beta * b)
            },
            0.0,
            2.0,
            &cfg,
        )?;
        let expected = alpha * f.value + beta * g.value;
        let bound = combo.err_estimate
            + alpha.norm() * f.err_estimate
            + beta.norm() * g.err_estimate
            + cfg.atol()
            + cfg.rtol() * expected.norm();
        Ok(((combo.value - expected).norm(), bound))
    };
    match run() {
        Ok((e, bound)) => outcome(name, e, bound, "α f + β g on [0, 2]"),
        Err(e) => failed(name, 0.0, e),
    }
}

pub fn quad_error_honesty() -> CheckOutcome {
    let name = "quadrature error honesty";
    let cfg = QuadConfig::default();
    let run = || -> Result<f64> {
        let cases = [
            (integrate_finite(|_| Ok(c64(1.0, 0.0)), 0.0, 1.0, &cfg)?, c64(1.0, 0.0)),
            (integrate_finite(|y| Ok(c64((2.0 * y).cos(), 0.0)), 0.0, FRAC_PI_2, &cfg)?, c64(0.0, 0.0)),
            (integrate_finite(|x| Ok(c64(x.ln(), 0.0)), 0.0, 1.0, &cfg)?, c64(-1.0, 0.0)),
            (
                crate::quad::integrate_semi_infinite(|t| Ok(c64((-t).exp(), 0.0)), &cfg)?,
                c64(1.0, 0.0),
            ),
            (
                crate::quad::integrate_semi_infinite(
                    |t| Ok(c64(1.0 / (PI * t / 2.0).cosh(), 0.0)),
                    &cfg,
                )?,
                c64(1.0, 0.0),
            ),
            (
                crate::quad::integrate_semi_infinite(|t| Ok(c64((-t).exp() / t.sqrt(), 0.0)), &cfg)?,
                c64(PI.sqrt(), 0.0),
            ),
        ];
        // worst ratio of true error to 3 × estimate (≤ 1 is honest)
        let mut worst: f64 = 0.0;
        for (r, truth) in cases {
            if r.converged {
                worst = worst.max((r.value - truth).norm() / (3.0 * r.err_estimate));
            }
        }
        Ok(worst)
    };
    match run() {
        Ok(w) => outcome(name, w, 1.0, "ratio |error| / (3 · estimate)"),
        Err(e) => failed(name, 1.0, e),
    }
}

pub fn cauchy_kernel() -> CheckOutcome {
    let name = "Cauchy kernel on the unit circle";
    let limit = 1e-10;
    let mut worst: f64 = 0.0;
    for k in 0..=6u32 {
        for y in [c64(1.0, 0.0), c64(2.0, 0.0), c64(0.5, 0.5)] {
            let run = || -> Result<f64> {
                let expected = complex_pow(y, c64(k as f64, 0.0))? / gamma(c64(k as f64 + 1.0, 0.0))?;
                Ok(rel(contour_cauchy_check(y, k)?, expected))
            };
            match run() {
                Ok(e) => worst = worst.max(e),
                Err(e) => return failed(name, limit, e),
            }
        }
    }
    outcome(name, worst, limit, "k = 0..6, three y values")
}

/// `k` with `Re k ∈ [-1.8, 0.9)`, `|Im k| ≤ 0.5`; `a` with `r ∈ [0.3, 3]`,
/// `θ ∈ (0, 2π)`.
pub fn sample_series_case(rng: &mut ChaCha8Rng) -> IdentityCase {
    let k = c64(rng.gen_range(-1.8..0.9), rng.gen_range(-0.5..=0.5));
    let a = BranchedConstant::new(rng.gen_range(0.3..=3.0), rng.gen_range(0.05..6.2))
        .expect("sampled constant is in range");
    IdentityCase::new(k, a).expect("θ > 0 admits every k")
}

pub fn series_zeta_identity(seed: u64) -> CheckOutcome {
    with_samples("series = zeta form", 1e-9, 20, seed, |rng| {
        let case = sample_series_case(rng);
        let z = rhs_zeta(&case)?;
        let s = rhs_series(&case, DEFAULT_SERIES_CAP)?;
        Ok(rel(s, z))
    })
}

pub fn substitution_consistency() -> CheckOutcome {
    let name = "u-substitution vs direct y quadrature";
    let limit = 1e-8;
    let mut worst: f64 = 0.0;
    let cases = [(1.0, 1.0), (3.0, 1.0), (0.5, 2.0)];
    for (k, r) in cases {
        let run = || -> Result<f64> {
            let case = IdentityCase::new(c64(k, 0.0), BranchedConstant::new(r, 0.0)?)?;
            Ok((lhs_integral(&case)?.value - lhs_integral_direct(&case)?.value).norm())
        };
        match run() {
            Ok(e) => worst = worst.max(e),
            Err(e) => return failed(name, limit, e),
        }
    }
    outcome(name, worst, limit, "(k, a) = (1, 1), (3, 1), (1/2, 2)")
}

pub fn even_k_antisymmetry() -> CheckOutcome {
    let name = "even-k antisymmetry at a = 1";
    let limit = 1e-9;
    let mut worst: f64 = 0.0;
    for k in [2.0, 4.0, 6.0] {
        let run = || -> Result<f64> {
            let case = IdentityCase::new(c64(k, 0.0), BranchedConstant::one())?;
            Ok(lhs_integral(&case)?.value.norm().max(rhs_zeta(&case)?.norm()))
        };
        match run() {
            Ok(e) => worst = worst.max(e),
            Err(e) => return failed(name, limit, e),
        }
    }
    outcome(name, worst, limit, "k = 2, 4, 6")
}

/// Every check, in a fixed order.
pub fn run_all(seed: u64) -> Vec<CheckOutcome> {
    vec![
        gamma_reflection(seed),
        gamma_recurrence(seed),
        gamma_conjugation(seed),
        log_gamma_exponential(seed),
        integer_powers(seed),
        zeta_recurrence(seed),
        zeta_conjugation(seed),
        zeta_oracle_agreement(),
        lerch_formula(),
        riemann_reduction(),
        quad_additivity(),
        quad_linearity(),
        quad_error_honesty(),
        cauchy_kernel(),
        series_zeta_identity(seed),
        substitution_consistency(),
        even_k_antisymmetry(),
    ]
}
