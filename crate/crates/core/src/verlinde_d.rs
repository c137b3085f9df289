//! The Verlinde algebra of the semisimple part of rep U_q(sl2) at
//! `q = e^{iπ/κ}`: simples `V_0..V_δ` with `δ = κ - 2`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::arith::{self, Scalar, Tolerance};
use crate::error::{Error, Result};

/// Modular data of rep U_q(sl2): fusion tensor, unitary s-matrix, twists,
/// quantum dimensions and the normalization constants `p±`, `D`.
#[derive(Debug, Clone)]
pub struct ModularDataD {
    kappa: u32,
    delta: u32,
    n_tensor: Vec<u8>,
    s: DMatrix<f64>,
    twists: Vec<Scalar>,
    dims: Vec<f64>,
    p_plus: Scalar,
    p_minus: Scalar,
    big_d: f64,
}

/// Closed-form quantum Clebsch–Gordan rule.
fn clebsch_gordan(i: u32, j: u32, k: u32, delta: u32) -> u8 {
    let (i, j, k, delta) = (i as i64, j as i64, k as i64, delta as i64);
    let admissible =
        (i - j).abs() <= k && k <= i + j && k <= 2 * delta - (i + j) && (i + j + k) % 2 == 0;
    admissible as u8
}

impl ModularDataD {
    pub fn new(kappa: u32) -> Result<Self> {
        if kappa < 3 {
            return Err(Error::InvalidParameter(format!(
                "kappa must be at least 3, got {kappa}"
            )));
        }
        let delta = kappa - 2;
        let n = (delta + 1) as usize;

        let mut n_tensor = vec![0u8; n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    n_tensor[(i * n + j) * n + k] =
                        clebsch_gordan(i as u32, j as u32, k as u32, delta);
                }
            }
        }

        let scale = (2.0 / kappa as f64).sqrt();
        let s = DMatrix::from_fn(n, n, |i, j| {
            let arg = ((i + 1) * (j + 1)) % (2 * kappa as usize);
            scale * (arg as f64 * PI / kappa as f64).sin()
        });

        let twists = (0..=delta)
            .map(|i| arith::theta(i, kappa))
            .collect::<Result<Vec<_>>>()?;
        let dims = (0..=delta)
            .map(|i| arith::quantum_integer(i as i64 + 1, kappa))
            .collect::<Result<Vec<_>>>()?;

        let p_plus: Scalar = twists.iter().zip(&dims).map(|(t, d)| t * d * d).sum();
        let p_minus: Scalar = twists.iter().zip(&dims).map(|(t, d)| t.inv() * d * d).sum();
        // p⁻ = conj(p⁺), so the product is real and positive.
        let big_d = (p_plus * p_minus).re.sqrt();

        Ok(Self {
            kappa,
            delta,
            n_tensor,
            s,
            twists,
            dims,
            p_plus,
            p_minus,
            big_d,
        })
    }

    /// Data for `δ = 4m`, i.e. `κ = 4m + 2`.
    pub fn for_m(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("m must be at least 1".into()));
        }
        Self::new(4 * m + 2)
    }

    pub fn kappa(&self) -> u32 {
        self.kappa
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn rank(&self) -> usize {
        self.delta as usize + 1
    }

    fn check(&self, idx: u32) -> Result<usize> {
        if idx > self.delta {
            Err(Error::InvalidParameter(format!(
                "simple index {idx} out of range 0..={}",
                self.delta
            )))
        } else {
            Ok(idx as usize)
        }
    }

    /// Every simple of rep U_q(sl2) is self-dual.
    pub fn dual(&self, i: u32) -> u32 {
        i
    }

    pub fn fusion_coeff_n(&self, i: u32, j: u32, k: u32) -> Result<u32> {
        let n = self.rank();
        let (i, j, k) = (self.check(i)?, self.check(j)?, self.check(k)?);
        Ok(self.n_tensor[(i * n + j) * n + k] as u32)
    }

    /// `N^k_ij` without bounds checks on the public API; panics when out of range.
    pub(crate) fn n(&self, i: usize, j: usize, k: usize) -> u8 {
        let n = self.rank();
        self.n_tensor[(i * n + j) * n + k]
    }

    /// `(sχ_i, χ_j) = √(2/κ) sin((i+1)(j+1)π/κ)`.
    pub fn s_matrix_d(&self, i: u32, j: u32) -> Result<f64> {
        let (i, j) = (self.check(i)?, self.check(j)?);
        Ok(self.s[(i, j)])
    }

    pub(crate) fn s(&self, i: usize, j: usize) -> f64 {
        self.s[(i, j)]
    }

    pub fn s_matrix(&self) -> &DMatrix<f64> {
        &self.s
    }

    pub fn t_matrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.twists.clone()))
    }

    pub fn twist(&self, i: u32) -> Result<Scalar> {
        Ok(self.twists[self.check(i)?])
    }

    pub fn twists(&self) -> &[Scalar] {
        &self.twists
    }

    pub fn qdim(&self, i: u32) -> Result<f64> {
        Ok(self.dims[self.check(i)?])
    }

    pub fn dims(&self) -> &[f64] {
        &self.dims
    }

    /// `(p⁺, p⁻, D)` with `p± = Σ θ_i^{±1} d_i²` and `D = √(p⁺p⁻) > 0`.
    pub fn normalization(&self) -> (Scalar, Scalar, f64) {
        (self.p_plus, self.p_minus, self.big_d)
    }

    pub fn big_d(&self) -> f64 {
        self.big_d
    }

    /// Raw Verlinde sum `Σ_p s_ip s_jp s_{k*p} / s_0p`.
    pub fn verlinde_sum(&self, i: u32, j: u32, k: u32) -> Result<f64> {
        let (i, j) = (self.check(i)?, self.check(j)?);
        let k = self.check(self.dual(k))?;
        Ok((0..self.rank())
            .map(|p| self.s[(i, p)] * self.s[(j, p)] * self.s[(k, p)] / self.s[(0, p)])
            .sum())
    }

    /// Verlinde sum, rejected unless it lies within `tol` of an integer.
    pub fn verlinde_coeff(&self, i: u32, j: u32, k: u32, tol: Tolerance) -> Result<f64> {
        let value = self.verlinde_sum(i, j, k)?;
        arith::recover_integer(value, tol)?;
        Ok(value)
    }

    /// `θ_i⁻¹ θ_j⁻¹ Σ_k N^k_{i*j} θ_k d_k / D`, the s-matrix rebuilt from twists.
    pub fn s_from_twists(&self, i: u32, j: u32) -> Result<Scalar> {
        let (ii, jj) = (self.check(i)?, self.check(j)?);
        let i_dual = self.dual(i) as usize;
        let sum: Scalar = (0..self.rank())
            .filter(|&k| self.n(i_dual, jj, k) == 1)
            .map(|k| self.twists[k] * self.dims[k])
            .sum();
        Ok(sum / (self.twists[ii] * self.twists[jj]) / self.big_d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const EPS: f64 = 1e-9;

    fn kappa10() -> ModularDataD {
        ModularDataD::new(10).unwrap()
    }

    #[test]
    fn construction_rejects_small_kappa() {
        assert!(ModularDataD::new(2).is_err());
        assert!(ModularDataD::for_m(0).is_err());
    }

    #[test]
    fn fusion_rule_examples() {
        let d = kappa10();
        for k in 0..=8 {
            let expected = u32::from([1, 3, 5].contains(&k));
            assert_eq!(d.fusion_coeff_n(2, 3, k).unwrap(), expected, "k={k}");
        }
        for j in 0..=8 {
            for k in 0..=8 {
                assert_eq!(d.fusion_coeff_n(0, j, k).unwrap(), u32::from(j == k));
            }
        }
        assert_eq!(d.fusion_coeff_n(1, 1, 0).unwrap(), 1);
        assert_eq!(d.fusion_coeff_n(1, 1, 1).unwrap(), 0);
        assert_eq!(d.fusion_coeff_n(1, 1, 2).unwrap(), 1);
        assert!(d.fusion_coeff_n(9, 0, 0).is_err());
    }

    #[test]
    fn s_matrix_examples() {
        let d = kappa10();
        // √0.2 · sin(π/10)
        let expected = 0.2f64.sqrt() * (PI / 10.0).sin();
        assert_abs_diff_eq!(d.s_matrix_d(0, 0).unwrap(), expected, epsilon = EPS);
        assert_abs_diff_eq!(d.s_matrix_d(0, 0).unwrap(), 0.138196601, epsilon = 1e-8);
        assert_abs_diff_eq!(d.s_matrix_d(4, 1).unwrap(), 0.0, epsilon = EPS);
        for i in 0..=8 {
            for j in 0..=8 {
                assert_eq!(d.s_matrix_d(i, j).unwrap(), d.s_matrix_d(j, i).unwrap());
            }
        }
    }

    #[test]
    fn quantum_dimensions() {
        let d = kappa10();
        assert_abs_diff_eq!(d.qdim(0).unwrap(), 1.0, epsilon = EPS);
        assert_abs_diff_eq!(d.qdim(8).unwrap(), 1.0, epsilon = EPS);
        assert_abs_diff_eq!(d.qdim(4).unwrap(), 3.236067977, epsilon = 1e-8);
        for i in 0..=8 {
            let ratio = d.s_matrix_d(0, i).unwrap() / d.s_matrix_d(0, 0).unwrap();
            assert_abs_diff_eq!(d.qdim(i).unwrap(), ratio, epsilon = EPS);
        }
    }

    #[test]
    fn normalization_constants() {
        let d = kappa10();
        let (pp, pm, big_d) = d.normalization();
        let closed = (10.0f64 / 2.0).sqrt() / (PI / 10.0).sin();
        assert_abs_diff_eq!(big_d, closed, epsilon = EPS);
        assert_abs_diff_eq!(big_d, 7.236067977, epsilon = 1e-8);
        let prod = pp * pm;
        assert_abs_diff_eq!(prod.im, 0.0, epsilon = EPS);
        assert!(prod.re > 0.0);
        // D·s reproduces the quantum dimensions in the unit row
        for i in 0..=8 {
            assert_abs_diff_eq!(
                big_d * d.s_matrix_d(0, i).unwrap(),
                d.qdim(i).unwrap(),
                epsilon = EPS
            );
        }
    }

    #[test]
    fn verlinde_examples() {
        let d = kappa10();
        let tol = Tolerance::default();
        assert_abs_diff_eq!(d.verlinde_coeff(2, 3, 5, tol).unwrap(), 1.0, epsilon = EPS);
        assert_abs_diff_eq!(d.verlinde_coeff(1, 1, 1, tol).unwrap(), 0.0, epsilon = EPS);
        for j in 0..=8 {
            for k in 0..=8 {
                let v = d.verlinde_coeff(0, j, k, tol).unwrap();
                assert_abs_diff_eq!(v, f64::from(u8::from(j == k)), epsilon = EPS);
            }
        }
    }

    #[test]
    fn s_from_twists_matches_closed_form() {
        let d = kappa10();
        let s00 = d.s_from_twists(0, 0).unwrap();
        assert_abs_diff_eq!((s00 - 1.0 / d.big_d()).norm(), 0.0, epsilon = EPS);
        for i in 0..=8 {
            for j in 0..=8 {
                let via = d.s_from_twists(i, j).unwrap();
                let closed = d.s_matrix_d(i, j).unwrap();
                assert!((via - closed).norm() < EPS, "({i},{j}): {via} vs {closed}");
            }
        }
    }
}
