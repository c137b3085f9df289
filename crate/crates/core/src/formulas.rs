//! Evaluators for the classical and extended Verlinde formulas, and the
//! verification suite that checks each of them against the ring-solver oracle.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{self, Tolerance};
use crate::error::{Error, Result};
use crate::extended::{self, ExtModularData, ExtVector, GradedLabel};
use crate::ring::{self, CLabel, TypeDRing, Z2};
use crate::verlinde_d::ModularDataD;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub params: String,
    pub max_residual: f64,
    /// Largest distance of an evaluated coefficient from its nearest integer,
    /// for checks that recover fusion multiplicities.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_integer_residual: Option<f64>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(name: &str, params: impl Into<String>, max_residual: f64, tol: Tolerance) -> Self {
        Self {
            name: name.to_string(),
            params: params.into(),
            max_residual,
            max_integer_residual: None,
            passed: max_residual < tol.eps(),
            note: None,
        }
    }

    fn with_integer_residual(mut self, r: f64, tol: Tolerance) -> Self {
        self.max_integer_residual = Some(r);
        self.passed = self.passed && r < tol.eps();
        self
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn failed(name: &str, params: impl Into<String>, err: &Error) -> Self {
        Self {
            name: name.to_string(),
            params: params.into(),
            max_residual: f64::INFINITY,
            max_integer_residual: None,
            passed: false,
            note: Some(err.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub tolerance: f64,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(tol: Tolerance) -> Self {
        Self {
            tolerance: tol.eps(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn sort(&mut self) {
        self.checks
            .sort_by(|a, b| a.name.cmp(&b.name).then_with(|| a.params.cmp(&b.params)));
    }
}

/// Tracks the worst residual of a family of scalar comparisons.
#[derive(Default)]
struct Worst {
    residual: f64,
    integer: f64,
    at: Option<String>,
}

impl Worst {
    fn observe(&mut self, residual: f64, at: impl FnOnce() -> String) {
        if residual > self.residual || self.at.is_none() {
            if residual > self.residual {
                self.residual = residual;
            }
            self.at = Some(at());
        }
    }

    fn observe_integer(&mut self, value: f64) {
        self.integer = self.integer.max((value - value.round()).abs());
    }

    fn check(self, name: &str, params: &str, tol: Tolerance) -> Check {
        let mut c = Check::new(name, params, self.residual, tol);
        if !c.passed {
            if let Some(at) = self.at {
                c = c.with_note(format!("worst at {at}"));
            }
        }
        c
    }

    fn integer_check(self, name: &str, params: &str, tol: Tolerance) -> Check {
        let integer = self.integer;
        self.check(name, params, tol)
            .with_integer_residual(integer, tol)
    }
}

fn need_sector(x: CLabel, sector: Z2, what: &str) -> Result<()> {
    if x.sector() == sector {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{what} must lie in sector {sector}, got {x}"
        )))
    }
}

/// Verlinde sum inside `V_{e,e}` using `s_ee`, for `x, y, z ∈ I_e`.
pub fn verlinde_c_e(ext: &ExtModularData, x: CLabel, y: CLabel, z: CLabel) -> Result<f64> {
    let z = ext.ring().dual(z);
    let mut sum = 0.0;
    for &p in ext.ee_labels() {
        sum += ext.s_ee_entry(x, p)? * ext.s_ee_entry(y, p)? * ext.s_ee_entry(z, p)?
            / ext.s_ee_entry(CLabel::Plain(0), p)?;
    }
    Ok(sum)
}

/// Extended Verlinde formula for `λ_i ⊗ λ_j`, `i ∈ I_e`, `j, k ∈ I_g`:
/// `Σ_p (sλ_i,λ_p)(sλ_j,ᵍλ_p)(sλ_k*,ᵍλ_p)/(sλ_0,λ_p)` over `p ∈ ᵍI_e`.
/// For `g = e` this is the ordinary Verlinde formula on `V_{e,e}`.
pub fn ext_coeff_e(ext: &ExtModularData, i: CLabel, j: CLabel, k: CLabel) -> Result<f64> {
    need_sector(i, Z2::E, "i")?;
    let g = j.sector();
    need_sector(k, g, "k")?;
    if g == Z2::E {
        return verlinde_c_e(ext, i, j, k);
    }
    let k = ext.ring().dual(k);
    let mut sum = 0.0;
    for &p in ext.ea_cols() {
        sum += ext.s_ee_entry(i, p)? * ext.s_ea_entry(j, p)? * ext.s_ea_entry(k, p)?
            / ext.s_ee_entry(CLabel::Plain(0), p)?;
    }
    Ok(sum)
}

/// Extended Verlinde formula for `λ_i ⊗ λ_j` with `i, j ∈ I_a`, `k ∈ I_e`:
/// `Σ_p (sλ_i,ᵃλ_p)(sλ_j,ᵃλ_p)(sλ_k*,λ_p)/(sλ_0,λ_p)` over `p ∈ ᵃI_e`.
pub fn ext_coeff_a(ext: &ExtModularData, i: CLabel, j: CLabel, k: CLabel) -> Result<f64> {
    need_sector(i, Z2::A, "i")?;
    need_sector(j, Z2::A, "j")?;
    need_sector(k, Z2::E, "k")?;
    let k = ext.ring().dual(k);
    let mut sum = 0.0;
    for &p in ext.ea_cols() {
        sum += ext.s_ea_entry(i, p)? * ext.s_ea_entry(j, p)? * ext.s_ee_entry(k, p)?
            / ext.s_ee_entry(CLabel::Plain(0), p)?;
    }
    Ok(sum)
}

fn against_oracle(
    ext: &ExtModularData,
    value: f64,
    i: CLabel,
    j: CLabel,
    k: CLabel,
    tol: Tolerance,
) -> Result<f64> {
    let oracle = ext.ring().ring_coeff_l(i, j, k)?;
    let rounded = arith::recover_integer(value, tol)?;
    if rounded != oracle as i64 || (value - oracle as f64).abs() >= tol.eps() {
        return Err(Error::CheckFailure(format!(
            "L^{k}_{{{i},{j}}}: formula gives {value}, ring gives {oracle}"
        )));
    }
    Ok(value)
}

/// [`ext_coeff_e`], failing unless it reproduces the ring coefficient.
pub fn ext_coeff_e_checked(
    ext: &ExtModularData,
    i: CLabel,
    j: CLabel,
    k: CLabel,
    tol: Tolerance,
) -> Result<f64> {
    let v = ext_coeff_e(ext, i, j, k)?;
    against_oracle(ext, v, i, j, k, tol)
}

/// [`ext_coeff_a`], failing unless it reproduces the ring coefficient.
pub fn ext_coeff_a_checked(
    ext: &ExtModularData,
    i: CLabel,
    j: CLabel,
    k: CLabel,
    tol: Tolerance,
) -> Result<f64> {
    let v = ext_coeff_a(ext, i, j, k)?;
    against_oracle(ext, v, i, j, k, tol)
}

/// Individual summands of [`ext_coeff_e`] for `g = a`, one per `p ∈ ᵃI_e`.
pub fn ext_coeff_e_terms(
    ext: &ExtModularData,
    i: CLabel,
    j: CLabel,
    k: CLabel,
) -> Result<Vec<f64>> {
    need_sector(i, Z2::E, "i")?;
    need_sector(j, Z2::A, "j")?;
    need_sector(k, Z2::A, "k")?;
    ext.ea_cols()
        .iter()
        .map(|&p| {
            Ok(
                ext.s_ee_entry(i, p)? * ext.s_ea_entry(j, p)? * ext.s_ea_entry(k, p)?
                    / ext.s_ee_entry(CLabel::Plain(0), p)?,
            )
        })
        .collect()
}

/// Individual summands of [`ext_coeff_a`].
pub fn ext_coeff_a_terms(
    ext: &ExtModularData,
    i: CLabel,
    j: CLabel,
    k: CLabel,
) -> Result<Vec<f64>> {
    need_sector(i, Z2::A, "i")?;
    need_sector(j, Z2::A, "j")?;
    need_sector(k, Z2::E, "k")?;
    ext.ea_cols()
        .iter()
        .map(|&p| {
            Ok(
                ext.s_ea_entry(i, p)? * ext.s_ea_entry(j, p)? * ext.s_ee_entry(k, p)?
                    / ext.s_ee_entry(CLabel::Plain(0), p)?,
            )
        })
        .collect()
}

/// Matrices of the diagonalization identity `M s L_i = D_i M s` on
/// `V_{e,a} → V_{*,e}`, basis ordered `λ_0, ᵃλ_0, λ_2, ᵃλ_2, …, λ⁺, λ⁻`.
#[derive(Debug, Clone)]
pub struct Z2Diag {
    pub basis: Vec<GradedLabel>,
    pub domain: Vec<CLabel>,
    pub m_matrix: DMatrix<f64>,
    pub d_matrix: DMatrix<f64>,
    pub s_l: DMatrix<f64>,
    pub s: DMatrix<f64>,
}

impl Z2Diag {
    pub fn lhs(&self) -> DMatrix<f64> {
        &self.m_matrix * &self.s_l
    }

    pub fn rhs(&self) -> DMatrix<f64> {
        &self.d_matrix * &self.m_matrix * &self.s
    }

    pub fn residual(&self) -> f64 {
        (self.lhs() - self.rhs()).abs().max()
    }
}

pub fn z2diag_matrices(ext: &ExtModularData, i: CLabel) -> Result<Z2Diag> {
    need_sector(i, Z2::A, "i")?;
    let ring = ext.ring();
    let mut basis = Vec::new();
    for &p in ext.ea_cols() {
        basis.push(GradedLabel::plain(p));
        basis.push(GradedLabel::twisted(p)?);
    }
    basis.push(GradedLabel::plain(CLabel::Plus));
    basis.push(GradedLabel::plain(CLabel::Minus));
    let n = basis.len();
    let domain = ring.odd_labels();
    let pairs = ext.ea_cols().len();

    let mut m_matrix = DMatrix::zeros(n, n);
    for b in 0..pairs {
        let (r, c) = (2 * b, 2 * b + 1);
        m_matrix[(r, r)] = -0.5;
        m_matrix[(r, c)] = 0.5;
        m_matrix[(c, r)] = 0.5;
        m_matrix[(c, c)] = 0.5;
    }
    m_matrix[(n - 2, n - 2)] = 1.0;
    m_matrix[(n - 1, n - 1)] = 1.0;

    // ᵃλ± does not exist, so (sλ_i, ᵃλ±) = 0 on the exceptional rows.
    let mut d_matrix = DMatrix::zeros(n, n);
    for (b, &p) in ext.ea_cols().iter().enumerate() {
        let c = ext.s_ea_entry(i, p)? / ext.s_ee_entry(CLabel::Plain(0), p)?;
        d_matrix[(2 * b, 2 * b)] = -c;
        d_matrix[(2 * b + 1, 2 * b + 1)] = c;
    }

    let mut s_l = DMatrix::zeros(n, domain.len());
    let mut s = DMatrix::zeros(n, domain.len());
    for (col, &j) in domain.iter().enumerate() {
        let product = ring.product(i, j)?;
        for (row, label) in basis.iter().enumerate() {
            if label.twist() == Z2::E {
                let mut v = 0.0;
                for &(r, mult) in &product {
                    v += mult as f64 * ext.s_ee_entry(r, label.class())?;
                }
                s_l[(row, col)] = v;
            } else {
                s[(row, col)] = ext.s_ea_entry(j, label.class())?;
            }
        }
    }
    Ok(Z2Diag {
        basis,
        domain,
        m_matrix,
        d_matrix,
        s_l,
        s,
    })
}

pub fn z2diag_check(ext: &ExtModularData, i: CLabel, tol: Tolerance) -> Result<Check> {
    let diag = z2diag_matrices(ext, i)?;
    Ok(Check::new(
        "z2diag",
        format!("m={} i={}", ext.m(), i),
        diag.residual(),
        tol,
    ))
}

/// The two sides of the two-sums identity for `i` even and `i, j, k ∈ I°`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoSums {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    /// Left side as a coefficient of `λ_k`; for `k = 2m` the raw sum divided by `(λ_{2m}, λ_{2m}) = 2`.
    pub lhs: f64,
    pub lhs_raw: f64,
    pub rhs: f64,
}

/// `(sλ_x, λ_p)` on `I°` with `λ_{2m} = λ⁺ + λ⁻`, `x` even.
fn s_circ_e(ext: &ExtModularData, x: u32, p: CLabel) -> Result<f64> {
    let two_m = 2 * ext.m();
    if x == two_m {
        Ok(ext.s_ee_entry(CLabel::Plus, p)? + ext.s_ee_entry(CLabel::Minus, p)?)
    } else {
        ext.s_ee_entry(CLabel::Plain(x), p)
    }
}

pub fn twosums(ext: &ExtModularData, i: u32, j: u32, k: u32) -> Result<TwoSums> {
    let m = ext.m();
    let two_m = 2 * m;
    if i > two_m || j > two_m || k > two_m {
        return Err(Error::InvalidParameter(format!(
            "indices must lie in 0..={two_m}"
        )));
    }
    if !i.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("i must be even, got {i}")));
    }
    if j % 2 != k % 2 {
        return Err(Error::InvalidParameter(format!(
            "j = {j} and k = {k} lie in different sectors"
        )));
    }
    let unit = CLabel::Plain(0);
    let mut lhs_raw = 0.0;
    if j.is_multiple_of(2) {
        for &p in ext.ee_labels() {
            lhs_raw += s_circ_e(ext, i, p)? * s_circ_e(ext, j, p)? * s_circ_e(ext, k, p)?
                / ext.s_ee_entry(unit, p)?;
        }
    } else {
        for &p in ext.ea_cols() {
            lhs_raw += s_circ_e(ext, i, p)?
                * ext.s_ea_entry(CLabel::Plain(j), p)?
                * ext.s_ea_entry(CLabel::Plain(k), p)?
                / ext.s_ee_entry(unit, p)?;
        }
    }
    let lhs = if k == two_m { lhs_raw / 2.0 } else { lhs_raw };

    let d = ext.d_data();
    let delta = d.delta() as usize;
    let (iu, ju, ku) = (i as usize, j as usize, d.dual(k) as usize);
    let rhs = (0..=delta)
        .map(|p| {
            let third = if k == two_m {
                d.s(ku, p)
            } else {
                d.s(ku, p) + d.s(delta - ku, p)
            };
            d.s(iu, p) * d.s(ju, p) * third / d.s(0, p)
        })
        .sum();
    Ok(TwoSums {
        i,
        j,
        k,
        lhs,
        lhs_raw,
        rhs,
    })
}

/// All admissible triples: `i` even, `j ≡ k (mod 2)`, everything in `I°`.
pub fn twosums_all(ext: &ExtModularData) -> Result<Vec<TwoSums>> {
    let two_m = 2 * ext.m();
    let mut out = Vec::new();
    for i in (0..=two_m).step_by(2) {
        for j in 0..=two_m {
            for k in (j % 2..=two_m).step_by(2) {
                out.push(twosums(ext, i, j, k)?);
            }
        }
    }
    Ok(out)
}

pub fn twosums_check(
    ext: &ExtModularData,
    i: u32,
    j: u32,
    k: u32,
    tol: Tolerance,
) -> Result<Check> {
    let t = twosums(ext, i, j, k)?;
    Ok(Check::new(
        "twosums",
        format!("m={} i={i} j={j} k={k}", ext.m()),
        (t.lhs - t.rhs).abs(),
        tol,
    ))
}

/// Folding identities: `s_{k,p} + s_{δ-k,p} = 0` for odd `p`, `s_{k,p} = s_{δ-k,p}` for
/// even `p`, and `s_{2m,p} = 0` for odd `p`.
pub fn fold_lemma_checks(d_data: &ModularDataD, tol: Tolerance) -> Result<Vec<Check>> {
    let delta = d_data.delta() as usize;
    if !delta.is_multiple_of(4) {
        return Err(Error::InvalidParameter(format!(
            "δ = {delta} is not a multiple of 4"
        )));
    }
    let half = delta / 2;
    let params = format!("kappa={}", d_data.kappa());
    let (mut odd, mut even, mut middle) = (Worst::default(), Worst::default(), Worst::default());
    for k in 0..=delta {
        for p in 0..=delta {
            let (a, b) = (d_data.s(k, p), d_data.s(delta - k, p));
            if p % 2 == 1 {
                odd.observe((a + b).abs(), || format!("k={k} p={p}"));
            } else {
                even.observe((a - b).abs(), || format!("k={k} p={p}"));
            }
        }
    }
    for p in (1..=delta).step_by(2) {
        middle.observe(d_data.s(half, p).abs(), || format!("p={p}"));
    }
    Ok(vec![
        odd.check("d.fold-odd", &params, tol),
        even.check("d.fold-even", &params, tol),
        middle.check("d.fold-middle", &params, tol),
    ])
}

fn d_side_checks(d: &ModularDataD, tol: Tolerance, report: &mut VerificationReport) -> Result<()> {
    let params = format!("kappa={}", d.kappa());
    let s = d.s_matrix();
    let n = d.rank();
    report.push(Check::new(
        "d.s-unitary-symmetric",
        &params,
        extended::unitarity_residual(s).max(extended::symmetry_residual(s)),
        tol,
    ));

    let mut verlinde = Worst::default();
    for i in 0..n as u32 {
        for j in 0..n as u32 {
            for k in 0..n as u32 {
                let v = d.verlinde_sum(i, j, k)?;
                let oracle = d.fusion_coeff_n(i, j, k)? as f64;
                verlinde.observe((v - oracle).abs(), || format!("({i},{j},{k})"));
                verlinde.observe_integer(v);
            }
        }
    }
    report.push(verlinde.integer_check("d.verlinde", &params, tol));

    let mut twist_route = Worst::default();
    for i in 0..n as u32 {
        for j in 0..n as u32 {
            let r = (d.s_from_twists(i, j)? - d.s_matrix_d(i, j)?).norm();
            twist_route.observe(r, || format!("({i},{j})"));
        }
    }
    report.push(twist_route.check("d.s-from-twists", &params, tol));

    report.push(Check::new(
        "d.modular-relation",
        &params,
        modular_relation_residual(d),
        tol,
    ));

    let mut assoc = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let left: i64 = (0..n).map(|r| (d.n(i, j, r) * d.n(r, k, l)) as i64).sum();
                    let right: i64 = (0..n).map(|r| (d.n(j, k, r) * d.n(i, r, l)) as i64).sum();
                    assoc = assoc.max((left - right).abs() as f64);
                }
            }
        }
    }
    report.push(Check::new("d.n-associative", &params, assoc, tol));

    for c in fold_lemma_checks(d, tol)? {
        report.push(c);
    }
    Ok(())
}

/// `max |(st)³ - (p⁺/D) s²|` on rep U_q(sl2).
pub fn modular_relation_residual(d: &ModularDataD) -> f64 {
    let s = d.s_matrix().map(|x| Complex64::new(x, 0.0));
    let t = d.t_matrix();
    let st = &s * &t;
    let lhs = &st * &st * &st;
    let (p_plus, _, big_d) = d.normalization();
    let rhs = (&s * &s) * (p_plus / big_d);
    (lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Products listed in the seed table, as `(x, y, decomposition)`.
pub fn seed_table(m: u32) -> Vec<(CLabel, CLabel, Vec<CLabel>)> {
    use CLabel::*;
    let top = 2 * m;
    let mut rows = Vec::new();
    for i in 0..top {
        rows.push((Plain(0), Plain(i), vec![Plain(i)]));
    }
    rows.push((Plain(0), Plus, vec![Plus]));
    rows.push((Plain(0), Minus, vec![Minus]));
    for i in 1..top - 1 {
        rows.push((Plain(1), Plain(i), vec![Plain(i - 1), Plain(i + 1)]));
    }
    rows.push((Plain(1), Plain(top - 1), vec![Plain(top - 2), Plus, Minus]));
    rows.push((Plain(1), Plus, vec![Plain(top - 1)]));
    rows.push((Plain(1), Minus, vec![Plain(top - 1)]));
    for (e, other) in [(Plus, Minus), (Minus, Plus)] {
        let mut same: Vec<CLabel> = (0..top.saturating_sub(3)).step_by(4).map(Plain).collect();
        same.push(e);
        rows.push((e, e, same));
        rows.push((e, other, (2..top).step_by(4).map(Plain).collect()));
    }
    rows
}

fn ring_checks(
    ring: &TypeDRing,
    d: &ModularDataD,
    tol: Tolerance,
    report: &mut VerificationReport,
) -> Result<()> {
    let params = format!("m={}", ring.m());
    let n = ring.len();

    let fold = ring::coefrelat_check(ring, d)?;
    let worst = fold
        .iter()
        .map(|t| (t.l as f64 - t.n_sum as f64).abs())
        .fold(0.0, f64::max);
    let mut c = Check::new("ring.coefrelat", &params, worst, tol);
    if let Some(t) = fold.iter().find(|t| !t.passed) {
        c = c.with_note(format!(
            "L^{}_{{{},{}}} = {} but N-fold = {}",
            t.k, t.i, t.j, t.l, t.n_sum
        ));
    }
    report.push(c);

    let mut assoc = 0.0f64;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let left: i64 = (0..n)
                        .map(|r| (ring.l(x, y, r) * ring.l(r, z, w)) as i64)
                        .sum();
                    let right: i64 = (0..n)
                        .map(|r| (ring.l(y, z, r) * ring.l(x, r, w)) as i64)
                        .sum();
                    assoc = assoc.max((left - right).abs() as f64);
                }
            }
        }
    }
    report.push(Check::new("ring.associative", &params, assoc, tol));

    let mut dims = Worst::default();
    let mut autom = 0.0f64;
    let mut unit = 0.0f64;
    let mut comm = 0.0f64;
    for &x in ring.labels() {
        for &y in ring.labels() {
            let mut sum = 0.0;
            for &z in ring.labels() {
                let c = ring.ring_coeff_l(x, y, z)?;
                sum += c as f64 * ring.c_qdim(z)?;
                let moved = ring.ring_coeff_l(
                    ring.group_action(x)?,
                    ring.group_action(y)?,
                    ring.group_action(z)?,
                )?;
                autom = autom.max((c as f64 - moved as f64).abs());
                comm = comm.max((c as f64 - ring.ring_coeff_l(y, x, z)? as f64).abs());
                let sector_ok = c == 0 || ring.sector(z)? == ring.sector(x)? * ring.sector(y)?;
                if !sector_ok {
                    autom = autom.max(c as f64);
                }
            }
            let r = (ring.c_qdim(x)? * ring.c_qdim(y)? - sum).abs();
            dims.observe(r, || format!("{x} ⊗ {y}"));
            let unit_coeff = ring.ring_coeff_l(x, y, CLabel::Plain(0))?;
            unit = unit.max((unit_coeff as f64 - f64::from(u8::from(x == y))).abs());
            let left_unit = ring.ring_coeff_l(CLabel::Plain(0), x, y)?;
            unit = unit.max((left_unit as f64 - f64::from(u8::from(x == y))).abs());
        }
    }
    report.push(dims.check("ring.dimension-homomorphism", &params, tol));
    report.push(Check::new("ring.z2-automorphism", &params, autom, tol));
    report.push(Check::new("ring.unit-duality", &params, unit, tol));
    report.push(Check::new("ring.commutative", &params, comm, tol));

    let mut seeds = 0.0f64;
    for (x, y, terms) in seed_table(ring.m()) {
        let mut expected = vec![0u32; n];
        for t in terms {
            expected[ring.index(t)?] += 1;
        }
        for (z, &e) in expected.iter().enumerate() {
            let got = ring.ring_coeff_l(x, y, ring.label(z))?;
            seeds = seeds.max((got as f64 - e as f64).abs());
        }
    }
    report.push(Check::new("ring.seed-table", &params, seeds, tol));
    Ok(())
}

fn extended_checks(
    ext: &ExtModularData,
    tol: Tolerance,
    report: &mut VerificationReport,
) -> Result<()> {
    let m = ext.m();
    let params = format!("m={m}");
    let ring = ext.ring();
    let d = ext.d_data();
    let s_ee = ext.s_ee();
    report.push(Check::new(
        "ext.s-ee-unitary-symmetric",
        &params,
        extended::unitarity_residual(s_ee).max(extended::symmetry_residual(s_ee)),
        tol,
    ));
    report.push(Check::new(
        "ext.s-ea-unitary",
        &params,
        extended::unitarity_residual(ext.s_ea()),
        tol,
    ));
    report.push(Check::new(
        "ext.normalization",
        &params,
        (2.0 * ext.big_d_c() - d.big_d()).abs(),
        tol,
    ));

    let closed = extended::excval(m)?;
    let cross = extended::exc_cross(m)?;
    let twist = extended::exc_via_twists(ring, d)?;
    let gauss = extended::exc_via_gauss(m)?;
    let routes = (twist.re - closed)
        .abs()
        .max(twist.im.abs())
        .max((gauss.re - closed).abs())
        .max(gauss.im.abs());
    report.push(
        Check::new("ext.excval-routes", &params, routes, tol).with_note(format!(
            "closed {closed:.12}, twists {:.12}, gauss {:.12}",
            twist.re, gauss.re
        )),
    );
    let two_m = 2 * m;
    report.push(Check::new(
        "ext.excsum",
        &params,
        (closed + cross - d.s_matrix_d(two_m, two_m)?).abs(),
        tol,
    ));

    let mut ce = Worst::default();
    let evens = ext.ee_labels().to_vec();
    for &x in &evens {
        for &y in &evens {
            for &z in &evens {
                let v = verlinde_c_e(ext, x, y, z)?;
                let oracle = ring.ring_coeff_l(x, y, z)? as f64;
                ce.observe((v - oracle).abs(), || format!("({x},{y},{z})"));
                ce.observe_integer(v);
            }
        }
    }
    report.push(ce.integer_check("ext.verlinde-c-e", &params, tol));

    let odds = ring.odd_labels();
    let mut v11 = Worst::default();
    for &i in &evens {
        for &j in &odds {
            for &k in &odds {
                let v = ext_coeff_e(ext, i, j, k)?;
                let oracle = ring.ring_coeff_l(i, j, k)? as f64;
                v11.observe((v - oracle).abs(), || format!("({i},{j},{k})"));
                v11.observe_integer(v);
            }
        }
    }
    report.push(v11.integer_check("ext.coeff-e", &params, tol));

    let mut v1 = Worst::default();
    for &i in &odds {
        for &j in &odds {
            for &k in &evens {
                let v = ext_coeff_a(ext, i, j, k)?;
                let oracle = ring.ring_coeff_l(i, j, k)? as f64;
                v1.observe((v - oracle).abs(), || format!("({i},{j},{k})"));
                v1.observe_integer(v);
            }
        }
    }
    report.push(v1.integer_check("ext.coeff-a", &params, tol));

    for &i in &odds {
        report.push(z2diag_check(ext, i, tol)?);
    }
    report.push(Check::new(
        "z2diag.convolution",
        &params,
        convolution_residual(ext)?,
        tol,
    ));

    let mut sums = Worst::default();
    let mut ratio = Worst::default();
    let all = twosums_all(ext)?;
    for t in &all {
        sums.observe((t.lhs - t.rhs).abs(), || {
            format!("({},{},{})", t.i, t.j, t.k)
        });
        if t.k == two_m && t.rhs.abs() > 0.5 {
            ratio.observe((t.lhs_raw / t.rhs - 2.0).abs(), || {
                format!("({},{},{})", t.i, t.j, t.k)
            });
        }
    }
    report.push(
        sums.check("twosums", &format!("{params} triples={}", all.len()), tol)
            .with_note("k = 2m compares the coefficient of λ⁺+λ⁻, i.e. the raw sum over (λ_{2m}, λ_{2m}) = 2"),
    );
    report.push(ratio.check("twosums.k2m-constant", &params, tol));
    Ok(())
}

/// Worst deviation of the diagonalized convolution table on every invariant pair.
pub fn convolution_residual(ext: &ExtModularData) -> Result<f64> {
    let mut worst = 0.0f64;
    let gap = |a: &ExtVector, b: &ExtVector| -> f64 {
        a.sub(b).terms().map(|(_, c)| c.norm()).fold(0.0, f64::max)
    };
    for &p in ext.ea_cols() {
        let inv_d = 1.0 / ext.ring().c_qdim(p)?;
        let alpha = extended::change_of_basis_m(&ExtVector::basis(GradedLabel::plain(p)))?;
        let beta = extended::change_of_basis_m(&ExtVector::basis(GradedLabel::twisted(p)?))?;
        let scale = |v: &ExtVector, c: f64| v.scale(Complex64::new(c, 0.0));
        worst = worst
            .max(gap(
                &ext.convolution(&alpha, &alpha)?,
                &scale(&alpha, -inv_d),
            ))
            .max(gap(&ext.convolution(&beta, &beta)?, &scale(&beta, inv_d)))
            .max(gap(&ext.convolution(&alpha, &beta)?, &ExtVector::zero()))
            .max(gap(&ext.convolution(&beta, &alpha)?, &ExtVector::zero()));
    }
    for e in [CLabel::Plus, CLabel::Minus] {
        let l = ExtVector::basis(GradedLabel::plain(e));
        let inv_d = 1.0 / ext.ring().c_qdim(e)?;
        worst = worst.max(gap(
            &ext.convolution(&l, &l)?,
            &l.scale(Complex64::new(inv_d, 0.0)),
        ));
    }
    Ok(worst)
}

/// Run every check for `δ = 4m`, `m` even. Failures are report entries; only
/// an invalid `m` is an error.
pub fn verify_all(m: u32, tol: Tolerance) -> Result<VerificationReport> {
    if m < 2 || !m.is_multiple_of(2) {
        return Err(Error::UnsupportedCase(format!(
            "m must be even and at least 2, got {m}"
        )));
    }
    let mut report = VerificationReport::new(tol);
    let params = format!("m={m}");
    let d = ModularDataD::for_m(m)?;
    d_side_checks(&d, tol, &mut report)?;

    let ring = match TypeDRing::build(m) {
        Ok(r) => r,
        Err(e) => {
            report.push(Check::failed("ring.build", &params, &e));
            report.sort();
            return Ok(report);
        }
    };
    ring_checks(&ring, &d, tol, &mut report)?;

    match ExtModularData::build(ring, d, tol) {
        Ok(ext) => extended_checks(&ext, tol, &mut report)?,
        Err(e) => report.push(Check::failed("ext.build", &params, &e)),
    }
    report.sort();
    Ok(report)
}
