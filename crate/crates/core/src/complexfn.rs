//! Complex elementary functions with a fixed branch convention, the complex
//! Gamma family, and Bernoulli numbers.
//!
//! Every multivalued function here uses the principal branch with the
//! argument in `(-π, π]`. A negative real input with a negative-zero
//! imaginary part is treated as lying on the upper edge of the cut.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The universal value type.
pub type ComplexScalar = Complex64;

const TWO_PI: f64 = 2.0 * PI;

/// Largest Bernoulli index the table will build.
pub const BERNOULLI_CAP: usize = 200;

/// Shorthand constructor.
#[inline]
pub fn c64(re: f64, im: f64) -> ComplexScalar {
    Complex64::new(re, im)
}

pub(crate) fn ensure_finite(z: ComplexScalar, what: &str) -> Result<ComplexScalar> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::Domain(format!("{what} is not finite ({z})")))
    }
}

/// A constant `a = r·e^{iθ}` whose logarithm is pinned to `ln r + iθ`,
/// with `θ ∈ [0, 2π)`. The logarithm is never reduced to the principal sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchedConstant {
    r: f64,
    theta: f64,
}

impl BranchedConstant {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::Domain(format!("modulus must be positive and finite, got {r}")));
        }
        if !(theta.is_finite() && (0.0..TWO_PI).contains(&theta)) {
            return Err(Error::Domain(format!("argument must lie in [0, 2π), got {theta}")));
        }
        Ok(Self { r, theta })
    }

    /// `a = 1`.
    pub fn one() -> Self {
        Self { r: 1.0, theta: 0.0 }
    }

    /// Converts a rectangular value, mapping its argument into `[0, 2π)`.
    pub fn from_complex(z: ComplexScalar) -> Result<Self> {
        if z.re == 0.0 && z.im == 0.0 {
            return Err(Error::Domain("constant must be non-zero".into()));
        }
        let mut theta = z.im.atan2(z.re);
        if theta < 0.0 {
            theta += TWO_PI;
        }
        // atan2 can round up to exactly 2π for tiny negative angles
        if theta >= TWO_PI {
            theta = 0.0;
        }
        Self::new(z.re.hypot(z.im), theta)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `ln r + iθ`.
    pub fn log(&self) -> ComplexScalar {
        c64(self.r.ln(), self.theta)
    }

    pub fn value(&self) -> ComplexScalar {
        Complex64::from_polar(self.r, self.theta)
    }

    pub fn is_positive_real(&self) -> bool {
        self.theta == 0.0
    }

    pub fn is_one(&self) -> bool {
        self.theta == 0.0 && self.r == 1.0
    }
}

/// `ln|z| + i·Arg z` with `Arg ∈ (-π, π]`.
pub fn principal_log(z: ComplexScalar) -> Result<ComplexScalar> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::Domain("logarithm of zero".into()));
    }
    let arg = if z.im == 0.0 && z.re < 0.0 {
        PI
    } else {
        z.im.atan2(z.re)
    };
    Ok(c64(z.re.hypot(z.im).ln(), arg))
}

/// `exp(k · principal_log(z))`, with `0^k = 0` for `Re k > 0`.
pub fn complex_pow(z: ComplexScalar, k: ComplexScalar) -> Result<ComplexScalar> {
    if z.re == 0.0 && z.im == 0.0 {
        return if k.re > 0.0 {
            Ok(Complex64::zero())
        } else {
            Err(Error::Domain(format!("0 raised to {k}")))
        };
    }
    if k.im == 0.0 && k.re == 0.0 {
        return Ok(Complex64::one());
    }
    ensure_finite((k * principal_log(z)?).exp(), "power")
}

/// `sin(πz)` with the real part reduced exactly before scaling by π.
pub fn sin_pi(z: ComplexScalar) -> ComplexScalar {
    let n = z.re.round();
    let s = (c64(z.re - n, z.im) * PI).sin();
    if n.rem_euclid(2.0) == 0.0 {
        s
    } else {
        -s
    }
}

fn is_nonpositive_integer(z: ComplexScalar) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

// Lanczos approximation, g = 7, nine terms.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Returns `(t, series)` for the Lanczos form evaluated at `z` (Re z ≥ 1/2).
fn lanczos_parts(z: ComplexScalar) -> (ComplexScalar, ComplexScalar) {
    let zm1 = z - 1.0;
    let mut series = c64(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series += c / (zm1 + i as f64);
    }
    (zm1 + LANCZOS_G + 0.5, series)
}

/// Γ(z), using reflection for `Re z < 1/2`.
pub fn gamma(z: ComplexScalar) -> Result<ComplexScalar> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("gamma({})", z.re)));
    }
    if z.re < 0.5 {
        let g = gamma(c64(1.0, 0.0) - z)?;
        return ensure_finite(PI / (sin_pi(z) * g), "gamma");
    }
    let (t, series) = lanczos_parts(z);
    let zm1 = z - 1.0;
    let log_val = LN_SQRT_2PI + (zm1 + 0.5) * t.ln() - t;
    ensure_finite(log_val.exp() * series, "gamma")
}

/// log Γ(z) on the plane cut along `(-∞, 0]`, real for positive real `z`.
/// Points on the cut take the value from the upper side.
pub fn log_gamma(z: ComplexScalar) -> Result<ComplexScalar> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("log_gamma({})", z.re)));
    }
    let mut shifted = z;
    let mut correction = Complex64::zero();
    while shifted.re < 1.0 {
        correction += principal_log(shifted)?;
        shifted += 1.0;
    }
    let (t, series) = lanczos_parts(shifted);
    let zm1 = shifted - 1.0;
    let value = LN_SQRT_2PI + (zm1 + 0.5) * t.ln() - t + series.ln() - correction;
    ensure_finite(value, "log_gamma")
}

/// Bernoulli numbers `B_0..=B_n` in the `B_1 = -1/2` convention.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliTable {
    values: Vec<f64>,
}

impl BernoulliTable {
    pub fn get(&self, n: usize) -> Option<f64> {
        self.values.get(n).copied()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn exact_bernoulli() -> &'static [BigRational] {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0
        let mut table: Vec<BigRational> = Vec::with_capacity(BERNOULLI_CAP + 1);
        table.push(BigRational::one());
        let mut binom_row: Vec<BigInt> = vec![BigInt::one(), BigInt::one()]; // row m+1 = 1
        for m in 1..=BERNOULLI_CAP {
            let mut next = Vec::with_capacity(binom_row.len() + 1);
            next.push(BigInt::one());
            for w in binom_row.windows(2) {
                next.push(&w[0] + &w[1]);
            }
            next.push(BigInt::one());
            binom_row = next;
            if m > 1 && m % 2 == 1 {
                table.push(BigRational::zero());
                continue;
            }
            let mut acc = BigRational::zero();
            for (j, b) in table.iter().enumerate() {
                acc += BigRational::from_integer(binom_row[j].clone()) * b;
            }
            let denom = BigRational::from_integer(BigInt::from(m as u64 + 1));
            table.push(-acc / denom);
        }
        table
    })
}

fn float_bernoulli() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        exact_bernoulli()
            .iter()
            .map(|b| b.to_f64().unwrap_or(f64::NAN))
            .collect()
    })
}

/// Table of `B_0..=B_{n_max}` accurate to working precision.
pub fn bernoulli_numbers(n_max: usize) -> Result<BernoulliTable> {
    if n_max > BERNOULLI_CAP {
        return Err(Error::Size { requested: n_max, cap: BERNOULLI_CAP });
    }
    Ok(BernoulliTable { values: float_bernoulli()[..=n_max].to_vec() })
}

/// `B_{2j} / (2j)!` for `j = 0..=100`, rounded once from the exact ratio.
pub(crate) fn even_bernoulli_over_factorial() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let exact = exact_bernoulli();
        let mut factorial = BigInt::one();
        let mut out = Vec::with_capacity(BERNOULLI_CAP / 2 + 1);
        for n in 0..=BERNOULLI_CAP {
            if n > 0 {
                factorial *= BigInt::from(n as u64);
            }
            if n % 2 == 0 {
                let ratio = &exact[n] / BigRational::from_integer(factorial.clone());
                out.push(ratio.to_f64().unwrap_or(0.0));
            }
        }
        out
    })
}

/// Bernoulli polynomial `B_n(x) = Σ C(n, j) B_j x^{n-j}`.
pub fn bernoulli_polynomial(n: usize, x: ComplexScalar) -> Result<ComplexScalar> {
    let table = bernoulli_numbers(n)?;
    // Horner in x with coefficients C(n, j) B_j for descending powers
    let mut binom = 1.0_f64;
    let mut acc = Complex64::zero();
    for j in 0..=n {
        acc = acc * x + binom * table.values[j];
        binom = binom * (n - j) as f64 / (j + 1) as f64;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: ComplexScalar, b: ComplexScalar, rel: f64) -> bool {
        (a - b).norm() <= rel * b.norm().max(1e-300)
    }

    #[test]
    fn principal_log_examples() {
        assert_eq!(principal_log(c64(1.0, 0.0)).unwrap(), c64(0.0, 0.0));
        let l = principal_log(c64(-2.0, 0.0)).unwrap();
        assert!((l.re - 2f64.ln()).abs() < 1e-15 && l.im == PI);
        let l = principal_log(c64(-2.0, -0.0)).unwrap();
        assert_eq!(l.im, PI);
        let l = principal_log(c64(0.0, 1.0)).unwrap();
        assert!(l.re.abs() < 1e-16 && (l.im - PI / 2.0).abs() < 1e-16);
        assert!(matches!(principal_log(c64(0.0, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn pow_examples() {
        assert_eq!(complex_pow(c64(0.0, 1.0), c64(0.0, 0.0)).unwrap(), c64(1.0, 0.0));
        let r = complex_pow(c64(-1.0, 0.0), c64(0.5, 0.0)).unwrap();
        assert!(close(r, c64(0.0, 1.0), 1e-15));
        assert_eq!(complex_pow(c64(0.0, 0.0), c64(0.5, 0.0)).unwrap(), c64(0.0, 0.0));
        assert!(complex_pow(c64(0.0, 0.0), c64(0.0, 1.0)).is_err());
        assert!(complex_pow(c64(0.0, 0.0), c64(-1.0, 0.0)).is_err());
    }

    #[test]
    fn gamma_examples() {
        let g = gamma(c64(0.5, 0.0)).unwrap();
        assert!(close(g, c64(PI.sqrt(), 0.0), 1e-14));
        assert!(close(gamma(c64(5.0, 0.0)).unwrap(), c64(24.0, 0.0), 1e-14));
        // Γ(-3/4) = -(4/3) Γ(1/4)
        let reference = -4.0 / 3.0 * 3.625_609_908_221_908_3;
        assert!(close(gamma(c64(-0.75, 0.0)).unwrap(), c64(reference, 0.0), 1e-13));
        assert!(matches!(gamma(c64(-3.0, 0.0)), Err(Error::Pole(_))));
        assert!(matches!(gamma(c64(0.0, 0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn log_gamma_examples() {
        assert!(log_gamma(c64(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(log_gamma(c64(2.0, 0.0)).unwrap().norm() < 1e-15);
        let l = log_gamma(c64(0.25, 0.0)).unwrap();
        assert!((l.re - 3.625_609_908_221_908_3f64.ln()).abs() < 1e-14);
        assert_eq!(l.im, 0.0);
        // upper side of the cut
        let l = log_gamma(c64(-0.5, 0.0)).unwrap();
        assert!((l.im + PI).abs() < 1e-14);
        assert!(log_gamma(c64(-2.0, 0.0)).is_err());
    }

    #[test]
    fn bernoulli_examples() {
        let t = bernoulli_numbers(2).unwrap();
        assert_eq!(t.values(), &[1.0, -0.5, 1.0 / 6.0]);
        let t = bernoulli_numbers(12).unwrap();
        assert_eq!(t.get(3), Some(0.0));
        assert!((t.get(12).unwrap() + 691.0 / 2730.0).abs() < 1e-16);
        assert!(matches!(bernoulli_numbers(201), Err(Error::Size { .. })));
        let full = bernoulli_numbers(BERNOULLI_CAP).unwrap();
        assert!(full.values().iter().all(|b| b.is_finite()));
        assert!(full.values().iter().skip(3).step_by(2).all(|&b| b == 0.0));
    }

    #[test]
    fn even_ratio_table() {
        let r = even_bernoulli_over_factorial();
        assert_eq!(r[0], 1.0);
        assert!((r[1] - 1.0 / 12.0).abs() < 1e-17);
        assert!((r[2] + 1.0 / 720.0).abs() < 1e-18);
    }

    #[test]
    fn bernoulli_polynomial_low_orders() {
        let x = c64(0.3, -0.2);
        let b1 = bernoulli_polynomial(1, x).unwrap();
        assert!(close(b1, x - 0.5, 1e-15));
        let b2 = bernoulli_polynomial(2, x).unwrap();
        assert!(close(b2, x * x - x + 1.0 / 6.0, 1e-14));
    }

    #[test]
    fn sin_pi_is_exact_at_integers() {
        assert_eq!(sin_pi(c64(3.0, 0.0)).re.abs(), 0.0);
        assert!((sin_pi(c64(2.5, 0.0)).re - 1.0).abs() < 1e-16);
        assert!((sin_pi(c64(-0.5, 0.0)).re + 1.0).abs() < 1e-16);
    }

    #[test]
    fn branched_constant_invariants() {
        assert!(BranchedConstant::new(0.0, 0.0).is_err());
        assert!(BranchedConstant::new(1.0, TWO_PI).is_err());
        assert!(BranchedConstant::new(1.0, -0.1).is_err());
        let a = BranchedConstant::from_complex(c64(0.0, -1.0)).unwrap();
        assert!((a.theta() - 1.5 * PI).abs() < 1e-15);
        assert_eq!(a.log().im, a.theta());
        assert!(BranchedConstant::from_complex(c64(1.0, 0.0)).unwrap().is_one());
    }
}
