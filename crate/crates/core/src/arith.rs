//! Scalar arithmetic at roots of unity.
//!
//! Everything is evaluated in double precision. Powers of `q = e^{iπ/κ}` are
//! taken as `e^{iπ x/κ}` for a (possibly half-integer) exponent `x`, so the
//! twist `q^{i(i+2)/2}` never goes through a complex square root.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Scalar = Complex64;

/// Absolute tolerance used by every numeric comparison in the crate.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Tolerance(f64);

impl Tolerance {
    pub const DEFAULT: f64 = 1e-9;

    pub fn new(eps: f64) -> Result<Self> {
        if eps.is_finite() && eps > 0.0 {
            Ok(Self(eps))
        } else {
            Err(Error::InvalidParameter(format!(
                "tolerance must be positive, got {eps}"
            )))
        }
    }

    pub fn eps(self) -> f64 {
        self.0
    }

    pub fn close(self, a: f64, b: f64) -> bool {
        (a - b).abs() < self.0
    }

    pub fn close_c(self, a: Scalar, b: Scalar) -> bool {
        (a - b).norm() < self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self(Self::DEFAULT)
    }
}

fn check_kappa(kappa: u32) -> Result<()> {
    if kappa < 3 {
        Err(Error::InvalidParameter(format!(
            "kappa must be at least 3, got {kappa}"
        )))
    } else {
        Ok(())
    }
}

/// `q = e^{iπ/κ}`.
pub fn root_of_unity(kappa: u32) -> Result<Scalar> {
    check_kappa(kappa)?;
    Ok(q_power(1.0, kappa))
}

/// `q^x = e^{iπ x/κ}` for a real exponent. The exponent is reduced modulo
/// `2κ` first so large integer exponents keep full precision.
pub fn q_power(x: f64, kappa: u32) -> Scalar {
    let period = 2.0 * kappa as f64;
    let reduced = x.rem_euclid(period);
    Complex64::from_polar(1.0, PI * reduced / kappa as f64)
}

/// Quantum integer `[n] = sin(nπ/κ)/sin(π/κ)`.
pub fn quantum_integer(n: i64, kappa: u32) -> Result<f64> {
    check_kappa(kappa)?;
    let k = kappa as f64;
    let reduced = n.rem_euclid(2 * kappa as i64) as f64;
    Ok((reduced * PI / k).sin() / (PI / k).sin())
}

/// Twist `θ_i = q^{i(i+2)/2}` of the `i`-th simple of rep U_q(sl2), `0 ≤ i ≤ κ-2`.
pub fn theta(i: u32, kappa: u32) -> Result<Scalar> {
    check_kappa(kappa)?;
    if i > kappa - 2 {
        return Err(Error::InvalidParameter(format!(
            "twist index {i} out of range 0..={}",
            kappa - 2
        )));
    }
    // i(i+2) is an integer; halve it as a float exponent.
    let twice = (i as u64) * (i as u64 + 2);
    let reduced = twice % (4 * kappa as u64);
    Ok(q_power(reduced as f64 / 2.0, kappa))
}

/// Eigenvalue of the squared braiding on `V_k ⊂ V_i ⊗ V_j`: `θ_k / (θ_i θ_j)`.
pub fn ribbon_squared(i: u32, j: u32, k: u32, kappa: u32) -> Result<Scalar> {
    Ok(theta(k, kappa)? / (theta(i, kappa)? * theta(j, kappa)?))
}

/// Quadratic Gauss sum `S(a, b) = Σ_{p=1}^{b} e^{iπ a p²/b}` by direct summation.
pub fn gauss_sum(a: i64, b: u32) -> Result<Scalar> {
    if b == 0 {
        return Err(Error::InvalidParameter("gauss sum needs b >= 1".into()));
    }
    let b64 = b as i64;
    Ok((1..=b64)
        .map(|p| {
            // a p^2 / b only matters modulo 2
            let num = (a.rem_euclid(2 * b64) * ((p * p) % (2 * b64))).rem_euclid(2 * b64);
            Complex64::from_polar(1.0, PI * num as f64 / b as f64)
        })
        .sum())
}

/// `S(a, b)` obtained from `S(b, a)` through the reciprocity law
/// `S(a,b) = √(b/a) · (1+i)/√2 · conj(S(b,a))`, valid when `ab` is even.
pub fn gauss_sum_by_reciprocity(a: u32, b: u32) -> Result<Scalar> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidParameter(
            "reciprocity needs a, b >= 1".into(),
        ));
    }
    if !(a as u64 * b as u64).is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "reciprocity needs ab even, got a={a}, b={b}"
        )));
    }
    let eighth_root = Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2);
    let swapped = gauss_sum(b as i64, a)?;
    Ok((b as f64 / a as f64).sqrt() * eighth_root * swapped.conj())
}

/// Accept `value` as the integer `n` when `|value - n| < tol`.
pub fn recover_integer(value: f64, tol: Tolerance) -> Result<i64> {
    let n = value.round();
    let residual = (value - n).abs();
    if residual < tol.eps() {
        Ok(n as i64)
    } else {
        Err(Error::Residual {
            value,
            residual,
            tol: tol.eps(),
        })
    }
}
