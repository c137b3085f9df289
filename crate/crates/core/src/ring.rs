//! The fusion ring of `rep A` for `A = V_0 ⊕ V_δ`, `δ = 4m` with `8 | δ`.
//!
//! Only a handful of products are known up front. Everything else is
//! derived from them through `X_i = X_1 ⊗ X_{i-1} - X_{i-2}`, in order of
//! increasing `i`, aborting on the first negative multiplicity.

use std::fmt;

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::verlinde_d::ModularDataD;

/// Element of `Z₂ = {e, a}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Z2 {
    E,
    A,
}

impl std::ops::Mul for Z2 {
    type Output = Z2;

    fn mul(self, other: Z2) -> Z2 {
        if self == other {
            Z2::E
        } else {
            Z2::A
        }
    }
}

impl Z2 {
    pub fn inv(self) -> Z2 {
        self
    }
}

impl fmt::Display for Z2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Z2::E => "e",
            Z2::A => "a",
        })
    }
}

/// A simple object of `rep A`: `X_0..X_{2m-1}` or one of the exceptional `X±`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CLabel {
    Plain(u32),
    Plus,
    Minus,
}

impl CLabel {
    pub fn sector(self) -> Z2 {
        match self {
            CLabel::Plain(i) if i % 2 == 1 => Z2::A,
            _ => Z2::E,
        }
    }

    /// Parse `"3"`, `"X3"`, `"+"`, `"X+"`, `"-"`, `"X-"`.
    pub fn parse(s: &str) -> Result<Self> {
        let body = s.trim().strip_prefix('X').unwrap_or(s.trim());
        match body {
            "+" => Ok(CLabel::Plus),
            "-" => Ok(CLabel::Minus),
            _ => body
                .parse::<u32>()
                .map(CLabel::Plain)
                .map_err(|_| Error::InvalidParameter(format!("cannot parse object label {s:?}"))),
        }
    }
}

impl fmt::Display for CLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CLabel::Plain(i) => write!(f, "X{i}"),
            CLabel::Plus => f.write_str("X+"),
            CLabel::Minus => f.write_str("X-"),
        }
    }
}

impl Serialize for CLabel {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone)]
pub struct TypeDRing {
    m: u32,
    labels: Vec<CLabel>,
    l_tensor: Vec<u32>,
    dims: Vec<f64>,
    sectors: Vec<Z2>,
    action_a: Vec<usize>,
}

type Row = Vec<i64>;

struct Derivation {
    n: usize,
    rows: Vec<Option<Row>>,
}

impl Derivation {
    fn new(n: usize) -> Self {
        Self {
            n,
            rows: vec![None; n * n],
        }
    }

    fn unit(&self, z: usize) -> Row {
        let mut r = vec![0; self.n];
        r[z] = 1;
        r
    }

    fn row_of(&self, terms: &[usize]) -> Row {
        let mut r = vec![0; self.n];
        for &t in terms {
            r[t] += 1;
        }
        r
    }

    fn set(&mut self, x: usize, y: usize, row: Row) {
        self.rows[x * self.n + y] = Some(row);
    }

    fn get(&self, x: usize, y: usize) -> Result<&Row> {
        self.rows[x * self.n + y].as_ref().ok_or_else(|| {
            Error::Inconsistency(format!("product ({x},{y}) used before it was derived"))
        })
    }
}

impl TypeDRing {
    /// Build the ring for `δ = 4m`. Requires `m` even (`8 | δ`).
    pub fn build(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!(
                "m must be at least 2, got {m}"
            )));
        }
        if !m.is_multiple_of(2) {
            return Err(Error::UnsupportedCase(format!(
                "m = {m} is odd (δ ≡ 4 mod 8); only 8 | δ is supported"
            )));
        }
        let kappa = 4 * m + 2;
        let top = 2 * m as usize; // index of X+, X- sits at top + 1
        let n = top + 2;
        let (plus, minus) = (top, top + 1);

        let mut labels: Vec<CLabel> = (0..2 * m).map(CLabel::Plain).collect();
        labels.push(CLabel::Plus);
        labels.push(CLabel::Minus);

        let mut d = Derivation::new(n);

        // X_0 is the unit.
        for y in 0..n {
            d.set(0, y, d.unit(y));
        }
        // Products with X_1.
        d.set(1, 0, d.unit(1));
        for i in 1..top - 1 {
            d.set(1, i, d.row_of(&[i - 1, i + 1]));
        }
        d.set(1, top - 1, d.row_of(&[top - 2, plus, minus]));
        d.set(1, plus, d.unit(top - 1));
        d.set(1, minus, d.unit(top - 1));
        // Exceptional squares.
        let same: Vec<usize> = (0..top.saturating_sub(3)).step_by(4).collect();
        let cross: Vec<usize> = (2..top).step_by(4).collect();
        for (e, other) in [(plus, minus), (minus, plus)] {
            let mut terms = same.clone();
            terms.push(e);
            d.set(e, e, d.row_of(&terms));
            d.set(e, other, d.row_of(&cross));
        }

        // X_i ⊗ Y = X_1 ⊗ (X_{i-1} ⊗ Y) - X_{i-2} ⊗ Y
        for i in 2..top {
            for y in 0..n {
                let prev = d.get(i - 1, y)?.clone();
                let mut row = vec![0i64; n];
                for (z, &c) in prev.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (w, &cw) in d.get(1, z)?.iter().enumerate() {
                        row[w] += c * cw;
                    }
                }
                for (w, &c) in d.get(i - 2, y)?.iter().enumerate() {
                    row[w] -= c;
                }
                if let Some(w) = row.iter().position(|&c| c < 0) {
                    return Err(Error::Inconsistency(format!(
                        "negative multiplicity {} of {} in {} ⊗ {}",
                        row[w], labels[w], labels[i], labels[y]
                    )));
                }
                d.set(i, y, row);
            }
        }
        // X± ⊗ X_i := X_i ⊗ X±
        for e in [plus, minus] {
            for i in 0..top {
                let row = d.get(i, e)?.clone();
                d.set(e, i, row);
            }
        }

        let mut l_tensor = vec![0u32; n * n * n];
        for x in 0..n {
            for y in 0..n {
                for (z, &c) in d.get(x, y)?.iter().enumerate() {
                    if c < 0 {
                        return Err(Error::Inconsistency(format!(
                            "negative multiplicity {c} of {} in {} ⊗ {}",
                            labels[z], labels[x], labels[y]
                        )));
                    }
                    l_tensor[(x * n + y) * n + z] = c as u32;
                }
            }
        }
        // the derived plain products must agree with the seeded ones and be commutative
        for x in 0..top {
            for y in 0..x {
                if d.get(x, y)? != d.get(y, x)? {
                    return Err(Error::Inconsistency(format!(
                        "{} ⊗ {} and {} ⊗ {} disagree",
                        labels[x], labels[y], labels[y], labels[x]
                    )));
                }
            }
        }

        let dims = labels
            .iter()
            .map(|l| match *l {
                CLabel::Plain(i) => arith::quantum_integer(i as i64 + 1, kappa),
                CLabel::Plus | CLabel::Minus => {
                    Ok(arith::quantum_integer(2 * m as i64 + 1, kappa)? / 2.0)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let sectors = labels.iter().map(|l| l.sector()).collect();
        let mut action_a: Vec<usize> = (0..n).collect();
        action_a.swap(plus, minus);

        Ok(Self {
            m,
            labels,
            l_tensor,
            dims,
            sectors,
            action_a,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn kappa(&self) -> u32 {
        4 * self.m + 2
    }

    pub fn delta(&self) -> u32 {
        4 * self.m
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[CLabel] {
        &self.labels
    }

    pub fn index(&self, x: CLabel) -> Result<usize> {
        let top = 2 * self.m as usize;
        match x {
            CLabel::Plain(i) if (i as usize) < top => Ok(i as usize),
            CLabel::Plain(i) => Err(Error::InvalidParameter(format!(
                "X{i} is not a simple object for m = {} (plain labels stop at X{})",
                self.m,
                top - 1
            ))),
            CLabel::Plus => Ok(top),
            CLabel::Minus => Ok(top + 1),
        }
    }

    pub fn label(&self, idx: usize) -> CLabel {
        self.labels[idx]
    }

    /// Labels of the untwisted sector `I_e`: `X_0, X_2, …, X_{2m-2}, X+, X-`.
    pub fn even_labels(&self) -> Vec<CLabel> {
        self.labels
            .iter()
            .copied()
            .filter(|l| l.sector() == Z2::E)
            .collect()
    }

    /// Labels of the twisted sector `I_a`: `X_1, X_3, …, X_{2m-1}`.
    pub fn odd_labels(&self) -> Vec<CLabel> {
        self.labels
            .iter()
            .copied()
            .filter(|l| l.sector() == Z2::A)
            .collect()
    }

    /// Even plain labels; these are the `a`-invariant classes of `I_e`.
    pub fn invariant_even_labels(&self) -> Vec<CLabel> {
        (0..self.m).map(|p| CLabel::Plain(2 * p)).collect()
    }

    pub(crate) fn l(&self, x: usize, y: usize, z: usize) -> u32 {
        let n = self.len();
        self.l_tensor[(x * n + y) * n + z]
    }

    pub fn ring_coeff_l(&self, x: CLabel, y: CLabel, z: CLabel) -> Result<u32> {
        Ok(self.l(self.index(x)?, self.index(y)?, self.index(z)?))
    }

    /// The decomposition of `x ⊗ y` as `(z, multiplicity)` pairs, zero terms omitted.
    pub fn product(&self, x: CLabel, y: CLabel) -> Result<Vec<(CLabel, u32)>> {
        let (xi, yi) = (self.index(x)?, self.index(y)?);
        Ok((0..self.len())
            .filter_map(|z| {
                let c = self.l(xi, yi, z);
                (c > 0).then_some((self.labels[z], c))
            })
            .collect())
    }

    pub fn c_qdim(&self, x: CLabel) -> Result<f64> {
        Ok(self.dims[self.index(x)?])
    }

    pub fn sector(&self, x: CLabel) -> Result<Z2> {
        Ok(self.sectors[self.index(x)?])
    }

    pub fn group_action(&self, x: CLabel) -> Result<CLabel> {
        Ok(self.labels[self.action_a[self.index(x)?]])
    }

    pub fn dual(&self, x: CLabel) -> CLabel {
        x
    }

    /// Twist of a simple of `C`, inherited from rep U_q(sl2): `X_i ↦ θ_i`, `X± ↦ θ_{2m}`.
    pub fn twist_index(&self, x: CLabel) -> u32 {
        match x {
            CLabel::Plain(i) => i,
            CLabel::Plus | CLabel::Minus => 2 * self.m,
        }
    }
}

/// One triple of the folding relation between `L` on `I°` and `N` on rep U_q(sl2).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FoldTriple {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    pub l: u32,
    pub n_sum: u32,
    pub passed: bool,
}

/// Coefficient of `λ_k`, `k ∈ I° = {0..2m}`, in `λ_i ⊗ λ_j`, with `λ_{2m} = λ⁺ + λ⁻`.
pub fn circ_coeff(ring: &TypeDRing, i: u32, j: u32, k: u32) -> Result<u32> {
    let two_m = 2 * ring.m();
    if i > two_m || j > two_m || k > two_m {
        return Err(Error::InvalidParameter(format!(
            "indices must lie in 0..={two_m}"
        )));
    }
    let expand = |i: u32| -> Vec<usize> {
        if i == two_m {
            vec![two_m as usize, two_m as usize + 1]
        } else {
            vec![i as usize]
        }
    };
    let mut coeffs = vec![0u32; ring.len()];
    for x in expand(i) {
        for y in expand(j) {
            for (z, c) in coeffs.iter_mut().enumerate() {
                *c += ring.l(x, y, z);
            }
        }
    }
    if k == two_m {
        let (p, q) = (coeffs[two_m as usize], coeffs[two_m as usize + 1]);
        if p != q {
            return Err(Error::Inconsistency(format!(
                "λ{i} ⊗ λ{j} has unequal X+/X- multiplicities {p}, {q}"
            )));
        }
        Ok(p)
    } else {
        Ok(coeffs[k as usize])
    }
}

/// `L^k_ij = N^k_ij + N^{δ-k}_ij` for `k ≠ 2m` and `L^{2m}_ij = N^{2m}_ij`, over all `i, j, k ∈ I°`.
pub fn coefrelat_check(ring: &TypeDRing, d_data: &ModularDataD) -> Result<Vec<FoldTriple>> {
    if d_data.delta() != ring.delta() {
        return Err(Error::InvalidParameter(format!(
            "ring has δ = {} but D-data has δ = {}",
            ring.delta(),
            d_data.delta()
        )));
    }
    let two_m = 2 * ring.m();
    let delta = ring.delta();
    let mut out = Vec::new();
    for i in 0..=two_m {
        for j in 0..=two_m {
            for k in 0..=two_m {
                let l = circ_coeff(ring, i, j, k)?;
                let n_sum = if k == two_m {
                    d_data.fusion_coeff_n(i, j, k)?
                } else {
                    d_data.fusion_coeff_n(i, j, k)? + d_data.fusion_coeff_n(i, j, delta - k)?
                };
                out.push(FoldTriple {
                    i,
                    j,
                    k,
                    l,
                    n_sum,
                    passed: l == n_sum,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use CLabel::*;

    fn decomposition(ring: &TypeDRing, x: CLabel, y: CLabel) -> Vec<(CLabel, u32)> {
        ring.product(x, y).unwrap()
    }

    #[test]
    fn rejects_odd_and_small_m() {
        assert!(matches!(
            TypeDRing::build(3),
            Err(Error::UnsupportedCase(_))
        ));
        assert!(matches!(
            TypeDRing::build(1),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            TypeDRing::build(0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn seeded_products_m2() {
        let r = TypeDRing::build(2).unwrap();
        assert_eq!(
            decomposition(&r, Plain(1), Plain(3)),
            vec![(Plain(2), 1), (Plus, 1), (Minus, 1)]
        );
        assert_eq!(decomposition(&r, Plus, Minus), vec![(Plain(2), 1)]);
        assert_eq!(
            decomposition(&r, Plus, Plus),
            vec![(Plain(0), 1), (Plus, 1)]
        );
        assert_eq!(
            decomposition(&r, Plain(2), Plus),
            vec![(Plain(2), 1), (Minus, 1)]
        );
        assert_eq!(
            decomposition(&r, Plain(2), Minus),
            vec![(Plain(2), 1), (Plus, 1)]
        );
    }

    #[test]
    fn x2_times_exceptional_general_m() {
        for m in [2u32, 4, 6] {
            let r = TypeDRing::build(m).unwrap();
            let top = Plain(2 * m - 2);
            assert_eq!(
                decomposition(&r, Plain(2), Plus),
                vec![(top, 1), (Minus, 1)]
            );
            assert_eq!(
                decomposition(&r, Plain(2), Minus),
                vec![(top, 1), (Plus, 1)]
            );
        }
    }

    #[test]
    fn coefficient_lookups() {
        let r = TypeDRing::build(2).unwrap();
        assert_eq!(r.ring_coeff_l(Plain(2), Plain(3), Plain(3)).unwrap(), 2);
        assert_eq!(r.ring_coeff_l(Plus, Plus, Plus).unwrap(), 1);
        for y in r.labels().to_vec() {
            for z in r.labels().to_vec() {
                assert_eq!(r.ring_coeff_l(Plain(0), y, z).unwrap(), u32::from(y == z));
            }
        }
        assert!(r.ring_coeff_l(Plain(4), Plain(0), Plain(0)).is_err());
    }

    #[test]
    fn qdims() {
        let r = TypeDRing::build(2).unwrap();
        assert_abs_diff_eq!(r.c_qdim(Plain(0)).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.c_qdim(Plus).unwrap(), 1.618033989, epsilon = 1e-8);
        assert_abs_diff_eq!(r.c_qdim(Minus).unwrap(), 1.618033989, epsilon = 1e-8);
        assert_abs_diff_eq!(r.c_qdim(Plain(2)).unwrap(), 2.618033989, epsilon = 1e-8);
    }

    #[test]
    fn action_and_grading() {
        let r = TypeDRing::build(4).unwrap();
        assert_eq!(r.group_action(Plain(3)).unwrap(), Plain(3));
        assert_eq!(r.group_action(Plus).unwrap(), Minus);
        for x in r.labels().to_vec() {
            assert_eq!(r.group_action(r.group_action(x).unwrap()).unwrap(), x);
        }
        assert_eq!(r.sector(Plain(3)).unwrap(), Z2::A);
        assert_eq!(r.sector(Plain(6)).unwrap(), Z2::E);
        assert_eq!(r.sector(Plus).unwrap(), Z2::E);
        assert_eq!(r.even_labels().len(), 6);
        assert_eq!(r.odd_labels().len(), 4);
    }

    #[test]
    fn label_parsing() {
        assert_eq!(CLabel::parse("X3").unwrap(), Plain(3));
        assert_eq!(CLabel::parse("3").unwrap(), Plain(3));
        assert_eq!(CLabel::parse("+").unwrap(), Plus);
        assert_eq!(CLabel::parse("X-").unwrap(), Minus);
        assert!(CLabel::parse("Y").is_err());
        assert_eq!(Plus.to_string(), "X+");
    }

    #[test]
    fn fold_examples() {
        let r = TypeDRing::build(2).unwrap();
        let d = ModularDataD::for_m(2).unwrap();
        let triples = coefrelat_check(&r, &d).unwrap();
        let find = |i, j, k| {
            triples
                .iter()
                .find(|t| (t.i, t.j, t.k) == (i, j, k))
                .unwrap()
                .clone()
        };
        let t = find(2, 3, 1);
        assert_eq!((t.l, t.n_sum), (1, 1));
        let t = find(2, 3, 3);
        assert_eq!((t.l, t.n_sum), (2, 2));
        let t = find(1, 3, 4);
        assert_eq!((t.l, t.n_sum), (1, 1));
        assert!(triples.iter().all(|t| t.passed));
        let wrong = ModularDataD::for_m(4).unwrap();
        assert!(coefrelat_check(&r, &wrong).is_err());
    }
}
