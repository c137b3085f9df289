//! The extended Verlinde algebra of the type-D example.
//!
//! Basis: `λ_i` (identity of `X_i`, twist `e`) for every simple, and `ᵃλ_p`
//! (a fixed generator of `Mor(X_p, ᵃX_p)`) for the `a`-invariant classes of
//! the untwisted sector, i.e. the even plain labels. The twisted basis is
//! pinned by its s-pairings `(sλ_j, ᵃλ_p) = 2 s^D_{jp}`.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::arith::{self, Scalar, Tolerance};
use crate::error::{Error, Result};
use crate::ring::{CLabel, TypeDRing, Z2};
use crate::verlinde_d::ModularDataD;

/// Basis label of `V_{g,h}`: the class, its twist `g`, and the sector `h` of the class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedLabel {
    class: CLabel,
    twist: Z2,
}

impl GradedLabel {
    /// `λ_x`.
    pub fn plain(class: CLabel) -> Self {
        Self {
            class,
            twist: Z2::E,
        }
    }

    /// `ᵃλ_x`; only `a`-invariant classes carry a twisted morphism.
    pub fn twisted(class: CLabel) -> Result<Self> {
        match class {
            CLabel::Plain(_) => Ok(Self {
                class,
                twist: Z2::A,
            }),
            _ => Err(Error::InvalidParameter(format!(
                "{class} is not invariant under a, Mor({class}, a{class}) = 0"
            ))),
        }
    }

    pub fn new(class: CLabel, twist: Z2) -> Result<Self> {
        match twist {
            Z2::E => Ok(Self::plain(class)),
            Z2::A => Self::twisted(class),
        }
    }

    pub fn class(self) -> CLabel {
        self.class
    }

    pub fn twist(self) -> Z2 {
        self.twist
    }

    pub fn sector(self) -> Z2 {
        self.class.sector()
    }

    /// Parse `"l:3"`, `"al:2"`, `"l:+"`, `"l:-"`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("cannot parse basis label {s:?}"));
        let (prefix, body) = s.split_once(':').ok_or_else(bad)?;
        let class = CLabel::parse(body).map_err(|_| bad())?;
        match prefix {
            "l" => Ok(Self::plain(class)),
            "al" => Self::twisted(class),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for GradedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.twist {
            Z2::E => "l",
            Z2::A => "al",
        };
        match self.class {
            CLabel::Plain(i) => write!(f, "{prefix}:{i}"),
            CLabel::Plus => write!(f, "{prefix}:+"),
            CLabel::Minus => write!(f, "{prefix}:-"),
        }
    }
}

impl Serialize for GradedLabel {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

const PRUNE: f64 = Tolerance::DEFAULT;

/// Finite linear combination of basis labels.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExtVector {
    terms: BTreeMap<GradedLabel, Scalar>,
}

impl ExtVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(label: GradedLabel) -> Self {
        Self::from_terms([(label, Scalar::new(1.0, 0.0))])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (GradedLabel, Scalar)>) -> Self {
        let mut v = Self::zero();
        for (l, c) in terms {
            v.add_term(l, c);
        }
        v
    }

    pub fn add_term(&mut self, label: GradedLabel, coeff: Scalar) {
        let entry = self.terms.entry(label).or_default();
        *entry += coeff;
        if entry.norm() < PRUNE {
            self.terms.remove(&label);
        }
    }

    pub fn coeff(&self, label: GradedLabel) -> Scalar {
        self.terms.get(&label).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (GradedLabel, Scalar)> + '_ {
        self.terms.iter().map(|(l, c)| (*l, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: Scalar) -> Self {
        Self::from_terms(self.terms().map(|(l, x)| (l, x * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut v = self.clone();
        for (l, c) in other.terms() {
            v.add_term(l, c);
        }
        v
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Scalar::new(-1.0, 0.0)))
    }

    pub fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool {
        self.sub(other).terms().all(|(_, c)| c.norm() < tol.eps())
    }
}

/// `λ` and `ᵃλ` sit in `V_{*,e}` exactly when their class is in the untwisted sector.
fn require_star_e(label: GradedLabel, op: &str) -> Result<()> {
    if label.sector() == Z2::E {
        Ok(())
    } else {
        Err(Error::UnsupportedCase(format!(
            "{op} is only defined on V_{{*,e}}, got {label}"
        )))
    }
}

/// `½(√(2/κ) + (-1)^{m/2})`, the diagonal exceptional entry `(sλ±, λ±)`.
pub fn excval(m: u32) -> Result<f64> {
    let sign = exceptional_sign(m)?;
    Ok(0.5 * ((2.0 / (4 * m + 2) as f64).sqrt() + sign))
}

/// `½(√(2/κ) - (-1)^{m/2})`, the off-diagonal exceptional entry `(sλ±, λ∓)`.
pub fn exc_cross(m: u32) -> Result<f64> {
    let sign = exceptional_sign(m)?;
    Ok(0.5 * ((2.0 / (4 * m + 2) as f64).sqrt() - sign))
}

fn exceptional_sign(m: u32) -> Result<f64> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "m must be at least 2, got {m}"
        )));
    }
    if !m.is_multiple_of(2) {
        return Err(Error::UnsupportedCase(format!("m = {m} is odd")));
    }
    Ok(if (m / 2).is_multiple_of(2) { 1.0 } else { -1.0 })
}

/// Unnormalized `(s̃λ⁺, λ⁺) = θ_{2m}^{-2} Σ_z L^z_{++} θ_z dim_C(z)`, read off the ring.
pub fn exc_twist_sum(ring: &TypeDRing, d_data: &ModularDataD) -> Result<Scalar> {
    let theta_2m = d_data.twist(2 * ring.m())?;
    let mut sum = Scalar::new(0.0, 0.0);
    for (z, mult) in ring.product(CLabel::Plus, CLabel::Plus)? {
        let theta = d_data.twist(ring.twist_index(z))?;
        sum += theta * ring.c_qdim(z)? * mult as f64;
    }
    Ok(sum / (theta_2m * theta_2m))
}

/// Normalized exceptional entry via the twist formula, divided by `D_C = D/2`.
pub fn exc_via_twists(ring: &TypeDRing, d_data: &ModularDataD) -> Result<Scalar> {
    Ok(exc_twist_sum(ring, d_data)? * 2.0 / d_data.big_d())
}

/// Normalized exceptional entry via the quadratic Gauss sum `S(8, κ)`, itself
/// obtained from the eight-term sum `S(κ, 8)` by reciprocity.
pub fn exc_via_gauss(m: u32) -> Result<Scalar> {
    exceptional_sign(m)?;
    let kappa = 4 * m + 2;
    let q = arith::root_of_unity(kappa)?;
    let theta_2m = arith::theta(2 * m, kappa)?;
    let gauss = arith::gauss_sum_by_reciprocity(8, kappa)?;
    let coeff = -(theta_2m * theta_2m).inv() * q.inv() / (q - q.inv()) * 0.5;
    let unnormalized = coeff * (1.0 + 0.5 * gauss);
    let k = kappa as f64;
    let inv_d_c = 2.0 * (2.0 / k).sqrt() * (std::f64::consts::PI / k).sin();
    Ok(unnormalized * inv_d_c)
}

/// Graded s-matrix blocks of the extended algebra.
#[derive(Debug, Clone)]
pub struct ExtModularData {
    ring: TypeDRing,
    d_data: ModularDataD,
    ee_labels: Vec<CLabel>,
    ea_rows: Vec<CLabel>,
    ea_cols: Vec<CLabel>,
    s_ee: DMatrix<f64>,
    s_ea: DMatrix<f64>,
    big_d_c: f64,
}

impl ExtModularData {
    pub fn build(ring: TypeDRing, d_data: ModularDataD, tol: Tolerance) -> Result<Self> {
        if ring.delta() != d_data.delta() {
            return Err(Error::InvalidParameter(format!(
                "ring has δ = {} but D-data has δ = {}",
                ring.delta(),
                d_data.delta()
            )));
        }
        let m = ring.m();
        let two_m = 2 * m as usize;
        let ee_labels = ring.even_labels();
        let ea_rows = ring.odd_labels();
        let ea_cols = ring.invariant_even_labels();
        let (diag, off) = (excval(m)?, exc_cross(m)?);

        let sd = |i: usize, j: usize| d_data.s(i, j);
        let entry = |x: CLabel, y: CLabel| -> f64 {
            use CLabel::*;
            match (x, y) {
                (Plain(i), Plain(j)) => 2.0 * sd(i as usize, j as usize),
                (Plain(p), _) | (_, Plain(p)) => sd(two_m, p as usize),
                (Plus, Plus) | (Minus, Minus) => diag,
                _ => off,
            }
        };
        let n = ee_labels.len();
        let s_ee = DMatrix::from_fn(n, n, |a, b| entry(ee_labels[a], ee_labels[b]));
        let s_ea = DMatrix::from_fn(ea_rows.len(), ea_cols.len(), |a, b| {
            entry(ea_rows[a], ea_cols[b])
        });

        let residual = unitarity_residual(&s_ee).max(symmetry_residual(&s_ee));
        if residual >= tol.eps() {
            return Err(Error::ConstructionFailure(format!(
                "assembled s_ee is not symmetric unitary (residual {residual:e})"
            )));
        }
        let big_d_c = d_data.big_d() / 2.0;
        Ok(Self {
            ring,
            d_data,
            ee_labels,
            ea_rows,
            ea_cols,
            s_ee,
            s_ea,
            big_d_c,
        })
    }

    pub fn for_m(m: u32, tol: Tolerance) -> Result<Self> {
        let ring = TypeDRing::build(m)?;
        let d_data = ModularDataD::for_m(m)?;
        Self::build(ring, d_data, tol)
    }

    pub fn ring(&self) -> &TypeDRing {
        &self.ring
    }

    pub fn d_data(&self) -> &ModularDataD {
        &self.d_data
    }

    pub fn m(&self) -> u32 {
        self.ring.m()
    }

    pub fn big_d_c(&self) -> f64 {
        self.big_d_c
    }

    /// Row/column labels of `s_ee`: `λ_0, λ_2, …, λ_{2m-2}, λ⁺, λ⁻`.
    pub fn ee_labels(&self) -> &[CLabel] {
        &self.ee_labels
    }

    /// Rows of `s_ea`: the odd plain classes `λ_1, …, λ_{2m-1}`.
    pub fn ea_rows(&self) -> &[CLabel] {
        &self.ea_rows
    }

    /// Columns of `s_ea`: the twisted basis `ᵃλ_0, …, ᵃλ_{2m-2}`.
    pub fn ea_cols(&self) -> &[CLabel] {
        &self.ea_cols
    }

    pub fn s_ee(&self) -> &DMatrix<f64> {
        &self.s_ee
    }

    pub fn s_ea(&self) -> &DMatrix<f64> {
        &self.s_ea
    }

    fn ee_index(&self, x: CLabel) -> Result<usize> {
        self.ee_labels
            .iter()
            .position(|&l| l == x)
            .ok_or_else(|| Error::InvalidParameter(format!("{x} is not in the untwisted sector")))
    }

    /// `(sλ_x, λ_y)` for `x, y` in the untwisted sector.
    pub fn s_ee_entry(&self, x: CLabel, y: CLabel) -> Result<f64> {
        Ok(self.s_ee[(self.ee_index(x)?, self.ee_index(y)?)])
    }

    /// `(sλ_j, ᵃλ_p)` for `j` odd plain, `p` even plain.
    pub fn s_ea_entry(&self, j: CLabel, p: CLabel) -> Result<f64> {
        let row =
            self.ea_rows.iter().position(|&l| l == j).ok_or_else(|| {
                Error::InvalidParameter(format!("{j} is not in the twisted sector"))
            })?;
        let col = self.ea_cols.iter().position(|&l| l == p).ok_or_else(|| {
            Error::InvalidParameter(format!("{p} is not an a-invariant even class"))
        })?;
        Ok(self.s_ea[(row, col)])
    }

    /// Normalized pairing `(s x, y)` on basis labels. `s` maps `V_{g,h}` to
    /// `V_{h,g}`, so the pairing vanishes unless `y ∈ V_{h,g}`.
    pub fn s_pair(&self, x: GradedLabel, y: GradedLabel) -> Result<f64> {
        let (gx, hx, gy, hy) = (x.twist(), x.sector(), y.twist(), y.sector());
        if gy != hx.inv() || hy != gx {
            return Ok(0.0);
        }
        match (gx, hx) {
            (Z2::E, Z2::E) => self.s_ee_entry(x.class(), y.class()),
            (Z2::E, Z2::A) => self.s_ea_entry(x.class(), y.class()),
            (Z2::A, Z2::E) => self.s_ea_entry(y.class(), x.class()),
            (Z2::A, Z2::A) => Err(Error::UnsupportedCase(
                "the s-block on V_{a,a} is not available".into(),
            )),
        }
    }

    fn theta_of(&self, class: CLabel) -> Result<Scalar> {
        self.d_data.twist(self.ring.twist_index(class))
    }

    /// Fusion product. Basis products with different twists vanish; products
    /// of two twisted morphisms are not available numerically.
    pub fn tensor(&self, x: &ExtVector, y: &ExtVector) -> Result<ExtVector> {
        let mut out = ExtVector::zero();
        for (lx, cx) in x.terms() {
            for (ly, cy) in y.terms() {
                if lx.twist() != ly.twist() {
                    continue;
                }
                if lx.twist() == Z2::A {
                    return Err(Error::UnsupportedCase(format!(
                        "tensor product of twisted morphisms {lx} ⊗ {ly}"
                    )));
                }
                for (z, mult) in self.ring.product(lx.class(), ly.class())? {
                    out.add_term(GradedLabel::plain(z), cx * cy * mult as f64);
                }
            }
        }
        Ok(out)
    }

    /// Convolution product on `V_{*,e}`, in the normalized basis
    /// `ᵃλ_i * ᵃλ_i = d_i⁻¹ λ_i`.
    pub fn convolution(&self, x: &ExtVector, y: &ExtVector) -> Result<ExtVector> {
        for (l, _) in x.terms().chain(y.terms()) {
            require_star_e(l, "convolution")?;
        }
        let mut out = ExtVector::zero();
        for (lx, cx) in x.terms() {
            for (ly, cy) in y.terms() {
                if lx.class() != ly.class() {
                    continue;
                }
                let inv_dim = 1.0 / self.ring.c_qdim(lx.class())?;
                let twist = lx.twist() * ly.twist();
                let label = GradedLabel::new(lx.class(), twist)?;
                out.add_term(label, cx * cy * inv_dim);
            }
        }
        Ok(out)
    }

    /// `t̃`: multiply each coefficient by the twist of its class. Defined on
    /// `V_{e,e}` and `V_{a,e}`.
    pub fn t_tilde(&self, x: &ExtVector) -> Result<ExtVector> {
        let mut out = ExtVector::zero();
        for (l, c) in x.terms() {
            if l.sector() != Z2::E {
                return Err(Error::UnsupportedCase(format!(
                    "t̃ on {l}: the twist scalar on a twisted-sector class is not fixed"
                )));
            }
            out.add_term(l, c * self.theta_of(l.class())?);
        }
        Ok(out)
    }
}

/// Change of basis `M` on `V_{*,e}`: `λ_i ↦ α_i = ½(ᵃλ_i - λ_i)`,
/// `ᵃλ_i ↦ β_i = ½(ᵃλ_i + λ_i)` for invariant `i`; identity on `λ±`.
pub fn change_of_basis_m(x: &ExtVector) -> Result<ExtVector> {
    let mut out = ExtVector::zero();
    for (l, c) in x.terms() {
        require_star_e(l, "change of basis")?;
        match l.class() {
            CLabel::Plain(_) => {
                let plain = GradedLabel::plain(l.class());
                let twisted = GradedLabel::twisted(l.class())?;
                let sign = if l.twist() == Z2::E { -0.5 } else { 0.5 };
                out.add_term(twisted, c * 0.5);
                out.add_term(plain, c * sign);
            }
            _ => out.add_term(l, c),
        }
    }
    Ok(out)
}

/// Inverse of [`change_of_basis_m`]. Each 2×2 block squares to `½·I`.
pub fn change_of_basis_m_inv(x: &ExtVector) -> Result<ExtVector> {
    let mut out = ExtVector::zero();
    for (l, c) in x.terms() {
        require_star_e(l, "change of basis")?;
        match l.class() {
            CLabel::Plain(_) => {
                let image = change_of_basis_m(&ExtVector::basis(l))?;
                out = out.add(&image.scale(c * 2.0));
            }
            _ => out.add_term(l, c),
        }
    }
    Ok(out)
}

/// Orthonormal symmetric pairing on the basis. `V_{g1,h1}` pairs with
/// `V_{g2,h2}` only if `g1 = g2⁻¹` and `h1 = h2`.
pub fn bilinear_form(x: &ExtVector, y: &ExtVector) -> Scalar {
    x.terms()
        .map(|(l, c)| {
            let partner = GradedLabel {
                class: l.class(),
                twist: l.twist().inv(),
            };
            c * y.coeff(partner)
        })
        .sum()
}

pub fn unitarity_residual(s: &DMatrix<f64>) -> f64 {
    let n = s.nrows();
    let prod = s * s.transpose();
    (&prod - DMatrix::<f64>::identity(n, n)).abs().max()
}

pub fn symmetry_residual(s: &DMatrix<f64>) -> f64 {
    (s - s.transpose()).abs().max()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use CLabel::*;

    const EPS: f64 = 1e-9;

    fn ext(m: u32) -> ExtModularData {
        ExtModularData::for_m(m, Tolerance::default()).unwrap()
    }

    fn l(i: u32) -> ExtVector {
        ExtVector::basis(GradedLabel::plain(Plain(i)))
    }

    fn al(i: u32) -> ExtVector {
        ExtVector::basis(GradedLabel::twisted(Plain(i)).unwrap())
    }

    #[test]
    fn graded_label_rules() {
        assert!(GradedLabel::twisted(Plus).is_err());
        assert!(GradedLabel::twisted(Plain(3)).is_ok());
        let x = GradedLabel::parse("al:2").unwrap();
        assert_eq!((x.class(), x.twist(), x.sector()), (Plain(2), Z2::A, Z2::E));
        assert_eq!(GradedLabel::parse("l:+").unwrap().to_string(), "l:+");
        assert!(GradedLabel::parse("al:-").is_err());
        assert!(GradedLabel::parse("q:1").is_err());
    }

    #[test]
    fn s_ee_examples_m2() {
        let e = ext(2);
        assert_abs_diff_eq!(
            e.s_ee_entry(Plain(0), Plain(0)).unwrap(),
            0.276393202,
            epsilon = 1e-8
        );
        assert_abs_diff_eq!(
            e.s_ee_entry(Plain(0), Plus).unwrap(),
            0.447213595,
            epsilon = 1e-8
        );
        assert_abs_diff_eq!(
            e.s_ee_entry(Plus, Plus).unwrap(),
            -0.276393202,
            epsilon = 1e-8
        );
        assert_abs_diff_eq!(
            e.s_ea_entry(Plain(3), Plain(2)).unwrap(),
            -0.525731112,
            epsilon = 1e-8
        );
        assert_abs_diff_eq!(
            e.s_ea_entry(Plain(1), Plain(2)).unwrap(),
            0.850650808,
            epsilon = 1e-8
        );
        for a in 0..4 {
            let norm: f64 = e.s_ee().row(a).iter().map(|x| x * x).sum();
            assert_abs_diff_eq!(norm, 1.0, epsilon = EPS);
        }
        assert_abs_diff_eq!(e.big_d_c(), e.d_data().big_d() / 2.0, epsilon = EPS);
    }

    #[test]
    fn s_pair_grading() {
        let e = ext(2);
        let l3 = GradedLabel::plain(Plain(3));
        let al2 = GradedLabel::twisted(Plain(2)).unwrap();
        let l2 = GradedLabel::plain(Plain(2));
        assert_abs_diff_eq!(
            e.s_pair(l3, al2).unwrap(),
            e.s_pair(al2, l3).unwrap(),
            epsilon = EPS
        );
        assert_eq!(e.s_pair(l3, l2).unwrap(), 0.0);
        assert_eq!(e.s_pair(al2, l2).unwrap(), 0.0);
        let al1 = GradedLabel::twisted(Plain(1)).unwrap();
        assert!(matches!(e.s_pair(al1, al1), Err(Error::UnsupportedCase(_))));
    }

    #[test]
    fn exceptional_values() {
        assert_abs_diff_eq!(excval(2).unwrap(), -0.276393202, epsilon = 1e-8);
        let trig_form = 0.2f64.sqrt() * (1.0 - 2.0 * (3.0 * std::f64::consts::PI / 10.0).sin());
        assert_abs_diff_eq!(excval(2).unwrap(), trig_form, epsilon = EPS);
        assert_abs_diff_eq!(excval(4).unwrap(), 2.0 / 3.0, epsilon = EPS);
        assert_abs_diff_eq!(exc_cross(2).unwrap(), 0.723606798, epsilon = 1e-8);
        assert_abs_diff_eq!(exc_cross(4).unwrap(), -1.0 / 3.0, epsilon = EPS);
        assert!(matches!(excval(3), Err(Error::UnsupportedCase(_))));
        assert!(exc_cross(5).is_err());
        let d = ModularDataD::for_m(2).unwrap();
        assert_abs_diff_eq!(
            excval(2).unwrap() + exc_cross(2).unwrap(),
            d.s_matrix_d(4, 4).unwrap(),
            epsilon = EPS
        );
    }

    #[test]
    fn twist_route_m2_unnormalized() {
        let ring = TypeDRing::build(2).unwrap();
        let d = ModularDataD::for_m(2).unwrap();
        let q = arith::root_of_unity(10).unwrap();
        let five = arith::quantum_integer(5, 10).unwrap();
        let expected = 0.5 * (2.0 * q.powi(-4) + q.powi(8) * five);
        let got = exc_twist_sum(&ring, &d).unwrap();
        assert_abs_diff_eq!((got - expected).norm(), 0.0, epsilon = EPS);
        let normalized = exc_via_twists(&ring, &d).unwrap();
        assert_abs_diff_eq!(normalized.re, -0.276393202, epsilon = 1e-8);
        assert_abs_diff_eq!(normalized.im, 0.0, epsilon = EPS);
        let ring4 = TypeDRing::build(4).unwrap();
        let d4 = ModularDataD::for_m(4).unwrap();
        assert_abs_diff_eq!(
            exc_via_twists(&ring4, &d4).unwrap().re,
            2.0 / 3.0,
            epsilon = EPS
        );
    }

    #[test]
    fn tensor_examples() {
        let e = ext(2);
        let prod = e.tensor(&l(2), &l(3)).unwrap();
        let expected = l(1).add(&l(3).scale(Scalar::new(2.0, 0.0)));
        assert!(prod.approx_eq(&expected, Tolerance::default()));
        let y = l(3).add(&ExtVector::basis(GradedLabel::plain(Plus)));
        assert!(e
            .tensor(&l(0), &y)
            .unwrap()
            .approx_eq(&y, Tolerance::default()));
        assert!(e.tensor(&al(2), &l(1)).unwrap().is_zero());
        assert!(matches!(
            e.tensor(&al(2), &al(0)),
            Err(Error::UnsupportedCase(_))
        ));
    }

    #[test]
    fn convolution_examples() {
        let e = ext(2);
        let tol = Tolerance::default();
        let d2 = e.ring().c_qdim(Plain(2)).unwrap();
        let got = e.convolution(&al(2), &al(2)).unwrap();
        assert!(got.approx_eq(&l(2).scale(Scalar::new(1.0 / d2, 0.0)), tol));
        assert_abs_diff_eq!(
            1.0 / d2,
            1.0 / arith::quantum_integer(3, 10).unwrap(),
            epsilon = EPS
        );
        assert!(e.convolution(&l(0), &l(2)).unwrap().is_zero());
        let plus = ExtVector::basis(GradedLabel::plain(Plus));
        let dp = e.ring().c_qdim(Plus).unwrap();
        assert!(e
            .convolution(&plus, &plus)
            .unwrap()
            .approx_eq(&plus.scale(Scalar::new(1.0 / dp, 0.0)), tol));
        let mixed = e.convolution(&l(2), &al(2)).unwrap();
        assert!(mixed.approx_eq(&al(2).scale(Scalar::new(1.0 / d2, 0.0)), tol));
        assert!(matches!(
            e.convolution(&l(1), &l(1)),
            Err(Error::UnsupportedCase(_))
        ));
    }

    #[test]
    fn change_of_basis_blocks() {
        let tol = Tolerance::default();
        let alpha = change_of_basis_m(&l(2)).unwrap();
        assert_eq!(
            alpha.coeff(GradedLabel::plain(Plain(2))),
            Scalar::new(-0.5, 0.0)
        );
        assert_eq!(
            alpha.coeff(GradedLabel::twisted(Plain(2)).unwrap()),
            Scalar::new(0.5, 0.0)
        );
        let beta = change_of_basis_m(&al(2)).unwrap();
        assert_eq!(
            beta.coeff(GradedLabel::plain(Plain(2))),
            Scalar::new(0.5, 0.0)
        );
        assert_eq!(
            beta.coeff(GradedLabel::twisted(Plain(2)).unwrap()),
            Scalar::new(0.5, 0.0)
        );
        let x = l(0).add(&al(2).scale(Scalar::new(3.0, -1.0)));
        let twice = change_of_basis_m(&change_of_basis_m(&x).unwrap()).unwrap();
        assert!(twice.approx_eq(&x.scale(Scalar::new(0.5, 0.0)), tol));
        let back = change_of_basis_m_inv(&change_of_basis_m(&x).unwrap()).unwrap();
        assert!(back.approx_eq(&x, tol));
        let plus = ExtVector::basis(GradedLabel::plain(Plus));
        assert_eq!(change_of_basis_m(&plus).unwrap(), plus);
        assert!(change_of_basis_m(&l(1)).is_err());
    }

    #[test]
    fn diagonal_convolution_in_new_basis() {
        let e = ext(2);
        let tol = Tolerance::default();
        for p in [0u32, 2] {
            let inv_d = 1.0 / e.ring().c_qdim(Plain(p)).unwrap();
            let alpha = change_of_basis_m(&l(p)).unwrap();
            let beta = change_of_basis_m(&al(p)).unwrap();
            let aa = e.convolution(&alpha, &alpha).unwrap();
            assert!(aa.approx_eq(&alpha.scale(Scalar::new(-inv_d, 0.0)), tol));
            let bb = e.convolution(&beta, &beta).unwrap();
            assert!(bb.approx_eq(&beta.scale(Scalar::new(inv_d, 0.0)), tol));
            assert!(e.convolution(&alpha, &beta).unwrap().is_zero());
            assert!(e.convolution(&beta, &alpha).unwrap().is_zero());
        }
    }

    #[test]
    fn t_tilde_examples() {
        let e = ext(2);
        let tol = Tolerance::default();
        assert!(e.t_tilde(&l(0)).unwrap().approx_eq(&l(0), tol));
        let q4 = arith::root_of_unity(10).unwrap().powi(4);
        assert!(e.t_tilde(&l(2)).unwrap().approx_eq(&l(2).scale(q4), tol));
        assert!(e.t_tilde(&al(2)).unwrap().approx_eq(&al(2).scale(q4), tol));
        assert!(matches!(e.t_tilde(&l(1)), Err(Error::UnsupportedCase(_))));
    }

    #[test]
    fn bilinear_form_rules() {
        for i in [0u32, 1, 2, 3] {
            for j in [0u32, 1, 2, 3] {
                let v = bilinear_form(&l(i), &l(j));
                assert_eq!(v, Scalar::new(f64::from(u8::from(i == j)), 0.0));
            }
        }
        assert_eq!(bilinear_form(&al(2), &l(2)), Scalar::new(0.0, 0.0));
        assert_eq!(bilinear_form(&al(2), &al(2)), Scalar::new(1.0, 0.0));
        let x = l(0).add(&al(2).scale(Scalar::new(2.0, 1.0)));
        let y = al(2).add(&l(0).scale(Scalar::new(-1.0, 0.5)));
        assert_eq!(bilinear_form(&x, &y), bilinear_form(&y, &x));
    }
}
