//! Negative-definite integer lattices: minimal norm, signed sums over
//! congruence classes, and the Γ upper bounds they imply.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::novikov::Rat;

pub const RANK_CAP: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("json: {0}")]
    Json(String),
    #[error("gram matrix is empty or not square")]
    NotSquare,
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("rank {0} exceeds the cap of {RANK_CAP}")]
    RankCap(usize),
    #[error("gram matrix is not negative definite")]
    NotNegativeDefinite,
    #[error("vector has length {0}, expected {1}")]
    Dimension(usize, usize),
    #[error("Q(e) = {0} does not have the parity of m = {1}")]
    Parity(i64, u32),
    #[error("|Q(e)| = {0} is smaller than 2")]
    SmallNorm(i64),
    #[error("e is not minimal in its class: {witness:?} has Q = {norm}")]
    NotMinimal { witness: Vec<i64>, norm: i64 },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct LatticeJson {
    pub gram: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeData {
    gram: Vec<Vec<i64>>,
}

impl LatticeData {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let n = gram.len();
        if n == 0 || gram.iter().any(|r| r.len() != n) {
            return Err(LatticeError::NotSquare);
        }
        if n > RANK_CAP {
            return Err(LatticeError::RankCap(n));
        }
        for i in 0..n {
            for j in i + 1..n {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric(i, j));
                }
            }
        }
        if !positive_definite(&gram.iter().map(|r| r.iter().map(|x| -x).collect()).collect::<Vec<Vec<i64>>>()) {
            return Err(LatticeError::NotNegativeDefinite);
        }
        Ok(LatticeData { gram })
    }

    pub fn diagonal(d: &[i64]) -> Result<Self, LatticeError> {
        let n = d.len();
        Self::new((0..n).map(|i| (0..n).map(|j| if i == j { d[i] } else { 0 }).collect()).collect())
    }

    pub fn from_json_str(s: &str) -> Result<Self, LatticeError> {
        let raw: LatticeJson = serde_json::from_str(s).map_err(|e| LatticeError::Json(e.to_string()))?;
        Self::new(raw.gram)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn bilinear(&self, u: &[i64], v: &[i64]) -> i64 {
        let mut s: i128 = 0;
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                s += self.gram[i][j] as i128 * u[i] as i128 * v[j] as i128;
            }
        }
        i64::try_from(s).expect("norm fits in i64")
    }

    /// `Q(v) = vᵀ G v`, which is negative for `v != 0`.
    pub fn q(&self, v: &[i64]) -> i64 {
        self.bilinear(v, v)
    }

    fn check_dim(&self, v: &[i64]) -> Result<(), LatticeError> {
        if v.len() != self.rank() {
            return Err(LatticeError::Dimension(v.len(), self.rank()));
        }
        Ok(())
    }

    /// Every nonzero `v` with `|Q(v)| <= bound`, both signs included.
    pub fn short_vectors(&self, bound: i64) -> Vec<Vec<i64>> {
        let n = self.rank();
        let q = fincke_pohst_form(&self.gram);
        let mut out = Vec::new();
        let mut x = vec![0i64; n];
        let budget = bound as f64 + 1e-6 * (1.0 + bound as f64);
        self.enumerate(&q, n, budget, &mut x, bound, &mut out);
        out
    }

    fn enumerate(&self, q: &[Vec<f64>], level: usize, budget: f64, x: &mut Vec<i64>, bound: i64, out: &mut Vec<Vec<i64>>) {
        if level == 0 {
            if x.iter().any(|&c| c != 0) && -self.q(x) <= bound {
                out.push(x.clone());
            }
            return;
        }
        let i = level - 1;
        let n = x.len();
        let center: f64 = -(i + 1..n).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
        let radius = (budget.max(0.0) / q[i][i]).sqrt();
        let lo = (center - radius).ceil() as i64;
        let hi = (center + radius).floor() as i64;
        for xi in lo..=hi {
            let t = xi as f64 - center;
            let rest = budget - q[i][i] * t * t;
            if rest < -1e-9 {
                continue;
            }
            x[i] = xi;
            self.enumerate(q, i, rest, x, bound, out);
        }
        x[i] = 0;
    }
}

/// Sylvester's criterion with exact rational elimination.
fn positive_definite(a: &[Vec<i64>]) -> bool {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a.iter().map(|r| r.iter().map(|&x| Rat::int(x)).collect()).collect();
    for i in 0..n {
        if !m[i][i].is_positive() {
            return false;
        }
        for r in i + 1..n {
            let f = &m[r][i] / &m[i][i];
            for c in i..n {
                let t = &f * &m[i][c];
                m[r][c] = &m[r][c] - &t;
            }
        }
    }
    true
}

/// The upper-triangular form with `|Q(x)| = Σ_i q_ii (x_i + Σ_{j>i} q_ij x_j)²`.
fn fincke_pohst_form(gram: &[Vec<i64>]) -> Vec<Vec<f64>> {
    let n = gram.len();
    let mut q: Vec<Vec<f64>> = gram.iter().map(|r| r.iter().map(|&x| -(x as f64)).collect()).collect();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    q
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalNorm {
    pub norm: i64,
    pub vectors: Vec<Vec<i64>>,
}

/// `m(L)` and every vector attaining it.
pub fn minimal_norm(l: &LatticeData) -> MinimalNorm {
    let upper = (0..l.rank()).map(|i| -l.gram[i][i]).min().expect("nonempty lattice");
    let vs = l.short_vectors(upper);
    let norm = vs.iter().map(|v| -l.q(v)).min().expect("basis vectors are short");
    MinimalNorm { norm, vectors: vs.into_iter().filter(|v| -l.q(v) == norm).collect() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeBound {
    #[serde(serialize_with = "crate::cli::ser_display")]
    pub bound: Rat,
    pub range_max: i64,
}

/// Γ(i) ≤ m/4 for `1 <= i <= ⌊m/2⌋` when `m(L) > 1`.
pub fn gamma_upper_bounds_from_lattice(l: &LatticeData) -> Option<LatticeBound> {
    let m = minimal_norm(l).norm;
    (m > 1).then(|| LatticeBound { bound: Rat::new(m, 4), range_max: m / 2 })
}

/// Pair representative: first nonzero coordinate positive.
pub fn canonical_representative(v: &[i64]) -> bool {
    v.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
}

fn congruent(u: &[i64], v: &[i64]) -> bool {
    u.iter().zip(v).all(|(a, b)| (a - b).rem_euclid(2) == 0)
}

/// Vectors `e' ≡ e (mod 2)` with `Q(e') = Q(e)`, after checking that `e` is minimal in its class.
pub fn class_members(l: &LatticeData, e: &[i64]) -> Result<Vec<Vec<i64>>, LatticeError> {
    l.check_dim(e)?;
    let qe = l.q(e);
    if qe.abs() < 2 {
        return Err(LatticeError::SmallNorm(qe));
    }
    if e.iter().all(|c| c % 2 == 0) {
        return Err(LatticeError::NotMinimal { witness: vec![0; e.len()], norm: 0 });
    }
    let mut members = Vec::new();
    for v in l.short_vectors(-qe) {
        if !congruent(&v, e) {
            continue;
        }
        let qv = l.q(&v);
        if qv.abs() < qe.abs() {
            return Err(LatticeError::NotMinimal { witness: v, norm: qv });
        }
        if qv == qe {
            members.push(v);
        }
    }
    Ok(members)
}

/// `Σ (-1)^{Q((e+e')/2)} (Ξ·e')^m` over pairs `{e', -e'}`; `flip(v)` picks `-v` instead of the canonical `v`.
pub fn signed_sum_with(
    l: &LatticeData,
    e: &[i64],
    xi: Option<&[i64]>,
    m: u32,
    flip: &dyn Fn(&[i64]) -> bool,
) -> Result<i64, LatticeError> {
    l.check_dim(e)?;
    if let Some(xi) = xi {
        l.check_dim(xi)?;
    }
    let qe = l.q(e);
    if (qe - m as i64).rem_euclid(2) != 0 {
        return Err(LatticeError::Parity(qe, m));
    }
    let mut total: i128 = 0;
    for v in class_members(l, e)? {
        if !canonical_representative(&v) {
            continue;
        }
        let rep: Vec<i64> = if flip(&v) { v.iter().map(|c| -c).collect() } else { v };
        let half: Vec<i64> = e.iter().zip(&rep).map(|(a, b)| (a + b) / 2).collect();
        let sign: i128 = if l.q(&half).rem_euclid(2) == 0 { 1 } else { -1 };
        let weight: i128 = match xi {
            Some(xi) => xi.iter().zip(&rep).map(|(a, b)| *a as i128 * *b as i128).sum::<i128>().pow(m),
            None => 1,
        };
        total += sign * weight;
    }
    Ok(i64::try_from(total).expect("signed sum fits in i64"))
}

pub fn signed_sum_even(l: &LatticeData, e: &[i64]) -> Result<i64, LatticeError> {
    signed_sum_with(l, e, None, 0, &|_| false)
}

pub fn signed_sum_odd(l: &LatticeData, e: &[i64], xi: &[i64], m: u32) -> Result<i64, LatticeError> {
    signed_sum_with(l, e, Some(xi), m, &|_| false)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ClassBound {
    Bound {
        n0: i64,
        #[serde(serialize_with = "crate::cli::ser_display")]
        bound: Rat,
        signed_sum: i64,
    },
    SumVanishes,
}

/// `Γ(n0) ≤ -Q(e)/4` with `n0 = -(Q(e)+m)/2` whenever the signed sum is nonzero.
pub fn bound_from_class(l: &LatticeData, e: &[i64], twist: Option<(&[i64], u32)>) -> Result<ClassBound, LatticeError> {
    let (sum, m) = match twist {
        Some((xi, m)) => (signed_sum_odd(l, e, xi, m)?, m as i64),
        None => (signed_sum_even(l, e)?, 0),
    };
    if sum == 0 {
        return Ok(ClassBound::SumVanishes);
    }
    let qe = l.q(e);
    Ok(ClassBound::Bound { n0: -(qe + m) / 2, bound: Rat::new(-qe, 4), signed_sum: sum })
}

/// Negative of the E8 Cartan matrix.
pub fn e8() -> LatticeData {
    let mut g = vec![vec![0i64; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = -2;
    }
    let mut edge = |a: usize, b: usize| {
        g[a][b] = 1;
        g[b][a] = 1;
    };
    for i in 0..6 {
        edge(i, i + 1);
    }
    edge(4, 7);
    LatticeData::new(g).expect("E8 is negative definite")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: every vector in a box, exhaustively.
    fn box_vectors(n: usize, r: i64) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out.into_iter().flat_map(|v| (-r..=r).map(move |c| [v.clone(), vec![c]].concat())).collect();
        }
        out.retain(|v| v.iter().any(|&c| c != 0));
        out
    }

    #[test]
    fn minimal_norm_examples() {
        assert_eq!(minimal_norm(&LatticeData::diagonal(&[-1]).unwrap()).norm, 1);
        assert_eq!(minimal_norm(&LatticeData::diagonal(&[-2, -3]).unwrap()).norm, 2);
        let m = minimal_norm(&e8());
        assert_eq!(m.norm, 2);
        assert_eq!(m.vectors.len(), 240);
    }

    #[test]
    fn e8_fixture_matches_builtin() {
        let l = LatticeData::from_json_str(crate::fixtures::file("e8").unwrap()).unwrap();
        assert_eq!(l, e8());
    }

    #[test]
    fn rejects_bad_gram() {
        assert_eq!(LatticeData::new(vec![vec![-1, 0], vec![1, -1]]), Err(LatticeError::NotSymmetric(0, 1)));
        assert_eq!(LatticeData::diagonal(&[-1, 1]), Err(LatticeError::NotNegativeDefinite));
        assert_eq!(LatticeData::new(vec![vec![-1, 2], vec![2, -1]]), Err(LatticeError::NotNegativeDefinite));
        assert!(LatticeData::diagonal(&[-1; 13]).is_err());
    }

    #[test]
    fn enumeration_matches_box_oracle() {
        let l = LatticeData::new(vec![vec![-3, 1, 0], vec![1, -2, 1], vec![0, 1, -4]]).unwrap();
        let mut fast = l.short_vectors(8);
        let mut slow: Vec<Vec<i64>> = box_vectors(3, 4).into_iter().filter(|v| -l.q(v) <= 8).collect();
        fast.sort();
        slow.sort();
        assert_eq!(fast, slow);
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(
            gamma_upper_bounds_from_lattice(&e8()),
            Some(LatticeBound { bound: Rat::new(1, 2), range_max: 1 })
        );
        assert_eq!(gamma_upper_bounds_from_lattice(&LatticeData::diagonal(&[-1, -1, -1]).unwrap()), None);
        assert_eq!(
            gamma_upper_bounds_from_lattice(&LatticeData::diagonal(&[-3, -5]).unwrap()),
            Some(LatticeBound { bound: Rat::new(3, 4), range_max: 1 })
        );
    }

    #[test]
    fn signed_sum_examples() {
        let l = e8();
        for v in minimal_norm(&l).vectors {
            assert_eq!(signed_sum_even(&l, &v), Ok(1));
        }
        let d = LatticeData::diagonal(&[-2, -2]).unwrap();
        assert_eq!(signed_sum_even(&d, &[1, 0]), Ok(1));
        assert_eq!(signed_sum_even(&d, &[1, 1]), Ok(2));
        let d3 = LatticeData::diagonal(&[-3]).unwrap();
        assert_eq!(signed_sum_odd(&d3, &[1], &[1], 1), Ok(-1));
        let d23 = LatticeData::diagonal(&[-2, -3]).unwrap();
        assert_eq!(signed_sum_odd(&d23, &[0, 1], &[0, 1], 1), Ok(-1));
        assert_eq!(signed_sum_odd(&d, &[1, 1], &[3, -1], 0), signed_sum_even(&d, &[1, 1]));
    }

    #[test]
    fn signed_sum_errors() {
        let d = LatticeData::diagonal(&[-2, -2]).unwrap();
        assert_eq!(signed_sum_odd(&d, &[1, 0], &[1, 0], 1), Err(LatticeError::Parity(-2, 1)));
        assert!(matches!(signed_sum_even(&d, &[2, 0]), Err(LatticeError::NotMinimal { .. })));
        assert!(matches!(signed_sum_even(&d, &[3, 1]), Err(LatticeError::NotMinimal { .. })));
        let one = LatticeData::diagonal(&[-1, -2]).unwrap();
        assert_eq!(signed_sum_odd(&one, &[1, 0], &[1, 0], 1), Err(LatticeError::SmallNorm(-1)));
    }

    #[test]
    fn class_bounds() {
        let l = e8();
        let v = minimal_norm(&l).vectors[0].clone();
        assert_eq!(
            bound_from_class(&l, &v, None),
            Ok(ClassBound::Bound { n0: 1, bound: Rat::new(1, 2), signed_sum: 1 })
        );
        let d = LatticeData::diagonal(&[-2, -2]).unwrap();
        assert_eq!(
            bound_from_class(&d, &[1, 1], None),
            Ok(ClassBound::Bound { n0: 2, bound: Rat::int(1), signed_sum: 2 })
        );
        let d3 = LatticeData::diagonal(&[-3]).unwrap();
        assert_eq!(
            bound_from_class(&d3, &[1], Some((&[1], 1))),
            Ok(ClassBound::Bound { n0: 1, bound: Rat::new(3, 4), signed_sum: -1 })
        );
    }

    #[test]
    fn flipping_representatives_is_harmless() {
        let d = LatticeData::diagonal(&[-2, -2]).unwrap();
        let all = signed_sum_with(&d, &[1, 1], None, 0, &|_| true).unwrap();
        assert_eq!(all, 2);
    }

    #[test]
    fn doubling_radius_finds_nothing_new() {
        let l = e8();
        let v = minimal_norm(&l).vectors[3].clone();
        let members = class_members(&l, &v).unwrap();
        let wide: Vec<Vec<i64>> =
            l.short_vectors(4).into_iter().filter(|w| congruent(w, &v) && l.q(w) == l.q(&v)).collect();
        assert_eq!(members.len(), wide.len());
    }
}
