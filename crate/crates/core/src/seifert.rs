//! Seifert fibered homology spheres Σ(a_1, …, a_n): orbit invariants, the
//! R-invariant by the closed form and by the cotangent sum, Γ predictions and
//! Whitehead-double bounds.

use std::collections::HashMap;

use astro_float::{BigFloat, Consts, RoundingMode};
use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::novikov::Rat;

const PREC: usize = 128;
const RM: RoundingMode = RoundingMode::ToEven;
const TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error, PartialEq)]
pub enum SeifertError {
    #[error("need at least 3 exceptional fibers, got {0}")]
    TooFew(usize),
    #[error("fiber order {0} is smaller than 2")]
    SmallFiber(i64),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(i64, i64),
    #[error("R = {1} of {0:?} is not positive")]
    NonPositiveR(Vec<u64>, i64),
    #[error("empty list of spaces")]
    Empty,
    #[error("cotangent sum for {0:?} is {1} away from the nearest integer")]
    Precision(Vec<u64>, f64),
    #[error("cotangent sum for {0:?} rounds to the even integer {1}")]
    Parity(Vec<u64>, i64),
}

/// Pairwise coprime fiber orders, stored in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SeifertData {
    a: Vec<u64>,
}

impl SeifertData {
    pub fn new(a: &[i64]) -> Result<Self, SeifertError> {
        if a.len() < 3 {
            return Err(SeifertError::TooFew(a.len()));
        }
        if let Some(&x) = a.iter().find(|&&x| x < 2) {
            return Err(SeifertError::SmallFiber(x));
        }
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                if a[i].gcd(&a[j]) != 1 {
                    return Err(SeifertError::NotCoprime(a[i], a[j]));
                }
            }
        }
        let mut a: Vec<u64> = a.iter().map(|&x| x as u64).collect();
        a.sort_unstable();
        Ok(SeifertData { a })
    }

    pub fn orders(&self) -> &[u64] {
        &self.a
    }

    pub fn product(&self) -> BigInt {
        self.a.iter().map(|&x| BigInt::from(x)).product()
    }

    fn cofactor(&self, i: usize) -> BigInt {
        self.product() / BigInt::from(self.a[i])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeifertInvariants {
    #[serde(serialize_with = "crate::cli::ser_display_seq")]
    pub b_tuple: Vec<BigInt>,
    pub beta: Vec<u64>,
    #[serde(serialize_with = "crate::cli::ser_display")]
    pub b: Rat,
    pub r: i64,
}

fn mod_inverse(x: &BigInt, m: u64) -> u64 {
    let m_big = BigInt::from(m);
    let e = x.mod_floor(&m_big).extended_gcd(&m_big);
    u64::try_from(e.x.mod_floor(&m_big)).expect("residue fits")
}

pub fn seifert_invariants(s: &SeifertData) -> SeifertInvariants {
    let a = s.product();
    let n = s.a.len();
    let beta: Vec<u64> = (0..n)
        .map(|i| {
            let ai = s.a[i];
            (ai - mod_inverse(&s.cofactor(i), ai)) % ai
        })
        .collect();
    let mut b = Rat::from(BigInt::from(1)) / Rat::from(a.clone());
    for i in 0..n {
        b = b + Rat::new(beta[i] as i64, s.a[i] as i64);
    }
    let mut b_tuple = vec![BigInt::from(0); n];
    let mut rest = BigInt::from(1);
    for i in 1..n {
        let ai = s.a[i] as i64;
        let mut r = (-(beta[i] as i64)).rem_euclid(ai);
        if 2 * r > ai {
            r -= ai;
        }
        b_tuple[i] = BigInt::from(r);
        rest -= BigInt::from(r) * s.cofactor(i);
    }
    b_tuple[0] = rest / s.cofactor(0);
    let r = (Rat::int(2) * b.clone() - Rat::int(3)).to_i64().expect("R is an integer");
    SeifertInvariants { b_tuple, beta, b, r }
}

/// The closed form `R = 2b - 3`.
pub fn r_invariant(s: &SeifertData) -> i64 {
    seifert_invariants(s).r
}

/// Exact check of `Σ b_i / a_i = 1/a`.
pub fn b_identity_holds(s: &SeifertData, inv: &SeifertInvariants) -> bool {
    let lhs = s
        .a
        .iter()
        .zip(&inv.b_tuple)
        .fold(Rat::zero(), |acc, (&ai, bi)| acc + Rat::from(bi.clone()) / Rat::int(ai as i64));
    lhs == Rat::from(BigInt::from(1)) / Rat::from(s.product())
}

/// `(sin(πk/m), cos(πk/m))` for `0 <= k < m`, by rotation from one sin/cos evaluation.
pub struct TrigCache {
    consts: Consts,
    tables: HashMap<u64, Vec<(BigFloat, BigFloat)>>,
}

impl Default for TrigCache {
    fn default() -> Self {
        Self::new()
    }
}

impl TrigCache {
    pub fn new() -> Self {
        TrigCache { consts: Consts::new().expect("constant cache"), tables: HashMap::new() }
    }

    fn table(&mut self, m: u64) -> &[(BigFloat, BigFloat)] {
        let consts = &mut self.consts;
        self.tables.entry(m).or_insert_with(|| {
            // Extra guard bits absorb the rounding drift of the recurrence.
            let p = PREC + 64;
            let theta = consts.pi(p, RM).div(&BigFloat::from_u64(m, p), p, RM);
            let (s1, c1) = (theta.sin(p, RM, consts), theta.cos(p, RM, consts));
            let mut out = Vec::with_capacity(m as usize);
            let (mut s, mut c) = (BigFloat::from_u64(0, p), BigFloat::from_u64(1, p));
            for _ in 0..m {
                out.push((s.clone(), c.clone()));
                let ns = s.mul(&c1, p, RM).add(&c.mul(&s1, p, RM), p, RM);
                let nc = c.mul(&c1, p, RM).sub(&s.mul(&s1, p, RM), p, RM);
                s = ns;
                c = nc;
            }
            out
        })
    }
}

/// Result of evaluating the cotangent formula.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CotangentValue {
    pub rounded: i64,
    pub residual: f64,
}

fn big_to_f64(x: &BigFloat) -> f64 {
    format!("{x}").parse().unwrap_or(f64::NAN)
}

/// Evaluates `2/a - 3 + n + Σ_i (2/a_i) Σ_k cot(πka/a_i²) cot(πk/a_i) sin²(πk/a_i)` in 128-bit floats.
pub fn r_cotangent_value(s: &SeifertData, cache: &mut TrigCache) -> CotangentValue {
    let p = PREC;
    let n = s.a.len() as i64;
    let a = s.product();
    let a_f = BigFloat::parse(&a.to_string(), astro_float::Radix::Dec, p, RM, &mut cache.consts);
    let mut total = BigFloat::from_u64(2, p).div(&a_f, p, RM).add(&BigFloat::from_i64(n - 3, p), p, RM);
    let mut approx = 2.0 / a.to_string().parse::<f64>().unwrap() + (n - 3) as f64;
    for i in 0..s.a.len() {
        let ai = s.a[i];
        let cof = u64::try_from(s.cofactor(i).mod_floor(&BigInt::from(ai))).unwrap();
        let table = cache.table(ai).to_vec();
        let mut inner = BigFloat::from_u64(0, p);
        let mut inner_f = 0.0;
        for k in 1..ai {
            // cot has period π, so only k·(a/a_i) mod a_i matters.
            let m = (k * cof) % ai;
            let (sm, cm) = &table[m as usize];
            let (sk, ck) = &table[k as usize];
            let cot_m = cm.div(sm, p, RM);
            let cot_k = ck.div(sk, p, RM);
            let term = cot_m.mul(&cot_k, p, RM).mul(&sk.mul(sk, p, RM), p, RM);
            inner = inner.add(&term, p, RM);
            let (fm, fk) = (std::f64::consts::PI * m as f64 / ai as f64, std::f64::consts::PI * k as f64 / ai as f64);
            inner_f += fm.cos() / fm.sin() * fk.cos() / fk.sin() * fk.sin() * fk.sin();
        }
        let w = BigFloat::from_u64(2, p).div(&BigFloat::from_u64(ai, p), p, RM);
        total = total.add(&inner.mul(&w, p, RM), p, RM);
        approx += 2.0 / ai as f64 * inner_f;
    }
    let rounded = approx.round() as i64;
    let residual = big_to_f64(&total.sub(&BigFloat::from_i64(rounded, p), p, RM)).abs();
    CotangentValue { rounded, residual }
}

/// The cotangent formula, rounded and certified within `1e-6` and odd.
pub fn r_invariant_cotangent(s: &SeifertData, cache: &mut TrigCache) -> Result<i64, SeifertError> {
    let v = r_cotangent_value(s, cache);
    if !(v.residual < TOLERANCE) {
        return Err(SeifertError::Precision(s.a.clone(), v.residual));
    }
    if v.rounded.rem_euclid(2) != 1 {
        return Err(SeifertError::Parity(s.a.clone(), v.rounded));
    }
    Ok(v.rounded)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaPrediction {
    #[serde(serialize_with = "crate::cli::ser_display")]
    pub value: Rat,
    pub range_max: i64,
    pub h_lower: i64,
    /// `½⌊(R+3)/4⌋` before rounding down to an integer.
    #[serde(serialize_with = "crate::cli::ser_display")]
    pub h_lower_exact: Rat,
    pub maximal: Vec<u64>,
}

/// Γ(i) = 1/(4a) for `1 <= i <= ⌊(R+3)/4⌋`, taken at the summand with the largest product.
pub fn gamma_prediction(spaces: &[SeifertData]) -> Result<GammaPrediction, SeifertError> {
    let mut best: Option<(&SeifertData, i64)> = None;
    for s in spaces {
        let r = r_invariant(s);
        if r <= 0 {
            return Err(SeifertError::NonPositiveR(s.a.clone(), r));
        }
        if best.as_ref().is_none_or(|(b, _)| s.product() > b.product()) {
            best = Some((s, r));
        }
    }
    let (s, r) = best.ok_or(SeifertError::Empty)?;
    let range_max = (r + 3).div_euclid(4);
    Ok(GammaPrediction {
        value: Rat::from(BigInt::from(1)) / Rat::from(BigInt::from(4) * s.product()),
        range_max,
        h_lower: range_max.div_euclid(2),
        h_lower_exact: Rat::new(range_max, 2),
        maximal: s.a.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub orders: Vec<u64>,
    pub r: i64,
    #[serde(serialize_with = "crate::cli::ser_display")]
    pub gamma1: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FurutaReport {
    /// Products pairwise distinct.
    pub independent: bool,
    /// Every summand has R > 0, so the fingerprints are actual Γ(1) values.
    pub all_positive_r: bool,
    pub fingerprints: Vec<Fingerprint>,
}

impl FurutaReport {
    pub fn conclusive(&self) -> bool {
        self.independent && self.all_positive_r
    }
}

/// Independent iff the products are pairwise distinct; summands with R <= 0 are flagged, not rejected.
pub fn furuta_independence(spaces: &[SeifertData]) -> FurutaReport {
    let fingerprints: Vec<Fingerprint> = spaces
        .iter()
        .map(|s| Fingerprint {
            orders: s.a.clone(),
            r: r_invariant(s),
            gamma1: Rat::from(BigInt::from(1)) / Rat::from(BigInt::from(4) * s.product()),
        })
        .collect();
    let mut products: Vec<BigInt> = spaces.iter().map(|s| s.product()).collect();
    products.sort();
    let independent = products.windows(2).all(|w| w[0] != w[1]);
    let all_positive_r = fingerprints.iter().all(|f| f.r > 0);
    FurutaReport { independent, all_positive_r, fingerprints }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WhiteheadBounds {
    #[serde(serialize_with = "crate::cli::ser_display")]
    pub lower: Rat,
    #[serde(serialize_with = "crate::cli::ser_display")]
    pub upper: Rat,
    #[serde(serialize_with = "crate::cli::ser_display_seq")]
    pub candidates: [Rat; 3],
}

/// Bounds on Γ(1) of the surgery on the Whitehead double of the (p, q) torus knot.
pub fn whitehead_double_bounds(p: i64, q: i64) -> Result<WhiteheadBounds, SeifertError> {
    for x in [p, q] {
        if x < 2 {
            return Err(SeifertError::SmallFiber(x));
        }
    }
    if p.gcd(&q) != 1 {
        return Err(SeifertError::NotCoprime(p, q));
    }
    let pq = p * q;
    let lower = Rat::new(1, 4 * pq * (4 * pq - 1));
    let upper = Rat::new(1, 4 * pq * (2 * pq - 1));
    let middle = Rat::new(1, 2 * pq * (4 * pq - 1));
    Ok(WhiteheadBounds { candidates: [lower.clone(), middle, upper.clone()], lower, upper })
}

/// All pairwise coprime ascending tuples of length `n` with product at most `max_product`.
pub fn coprime_tuples(n: usize, max_product: u64) -> Vec<SeifertData> {
    fn rec(start: u64, cur: &mut Vec<u64>, prod: u64, n: usize, max: u64, out: &mut Vec<SeifertData>) {
        if cur.len() == n {
            out.push(SeifertData { a: cur.clone() });
            return;
        }
        let left = (n - cur.len()) as u32;
        let mut a = start;
        while a.checked_pow(left).is_some_and(|x| prod.saturating_mul(x) <= max) {
            if cur.iter().all(|&c| c.gcd(&a) == 1) {
                cur.push(a);
                rec(a + 1, cur, prod * a, n, max, out);
                cur.pop();
            }
            a += 1;
        }
    }
    let mut out = Vec::new();
    rec(2, &mut Vec::new(), 1, n, max_product, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepFailure {
    pub orders: Vec<u64>,
    pub closed_form: i64,
    pub cotangent: i64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub tuples: usize,
    pub max_residual: f64,
    pub min_r: i64,
    pub max_r: i64,
    /// Triples of the form `(p, q, pqk ∓ 1)`, whose R must be `±1`.
    pub family_checked: usize,
    pub failures: Vec<SweepFailure>,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Cross-formula audit over every tuple of the given lengths with bounded product.
pub fn sweep(lengths: &[usize], max_product: u64) -> SweepReport {
    let mut cache = TrigCache::new();
    let mut rep = SweepReport { tuples: 0, max_residual: 0.0, min_r: i64::MAX, max_r: i64::MIN, family_checked: 0, failures: Vec::new() };
    for &n in lengths {
        for s in coprime_tuples(n, max_product) {
            let exact = r_invariant(&s);
            let v = r_cotangent_value(&s, &mut cache);
            rep.tuples += 1;
            rep.max_residual = rep.max_residual.max(v.residual);
            rep.min_r = rep.min_r.min(exact);
            rep.max_r = rep.max_r.max(exact);
            let odd = exact.rem_euclid(2) == 1 && exact >= -1;
            let family = match s.a.as_slice() {
                [p, q, c] if c % (p * q) == p * q - 1 => Some(1),
                [p, q, c] if c % (p * q) == 1 => Some(-1),
                _ => None,
            };
            rep.family_checked += family.is_some() as usize;
            if v.rounded != exact || !(v.residual < TOLERANCE) || !odd || family.is_some_and(|f| f != exact) {
                rep.failures.push(SweepFailure {
                    orders: s.a.clone(),
                    closed_form: exact,
                    cotangent: v.rounded,
                    residual: v.residual,
                });
            }
        }
    }
    rep
}

/// `a_1 = p`, `a_2 = q`, `a_i = k_i a_1 ⋯ a_{i-1} - 1`.
pub fn large_r_tuple(p: i64, q: i64, ks: &[i64]) -> Result<SeifertData, SeifertError> {
    let mut a = vec![p, q];
    let mut prod = p * q;
    for &k in ks {
        let next = k * prod - 1;
        a.push(next);
        prod *= next;
    }
    SeifertData::new(&a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sd(a: &[i64]) -> SeifertData {
        SeifertData::new(a).unwrap()
    }

    /// Oracle: β_i by direct search for 1 + β·(a/a_i) ≡ 0 mod a_i.
    fn beta_by_search(a: &[u64]) -> Vec<u64> {
        let prod: u64 = a.iter().product();
        a.iter().map(|&ai| (1..ai).find(|&b| (1 + b * (prod / ai)) % ai == 0).unwrap()).collect()
    }

    #[test]
    fn invariants_examples() {
        let inv = seifert_invariants(&sd(&[2, 3, 5]));
        assert_eq!(inv.beta, vec![1, 2, 4]);
        assert_eq!(inv.b, Rat::int(2));
        assert_eq!(inv.r, 1);
        assert_eq!(inv.b_tuple, vec![BigInt::from(-1), BigInt::from(1), BigInt::from(1)]);
        let inv = seifert_invariants(&sd(&[7, 3, 2]));
        assert_eq!((inv.beta.clone(), inv.b.clone(), inv.r), (vec![1, 1, 1], Rat::int(1), -1));
        let inv = seifert_invariants(&sd(&[2, 3, 11]));
        assert_eq!((inv.beta.clone(), inv.b.clone(), inv.r), (vec![1, 2, 9], Rat::int(2), 1));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(SeifertData::new(&[2, 4, 5]), Err(SeifertError::NotCoprime(2, 4)));
        assert!(SeifertData::new(&[2, 3]).is_err());
        assert!(SeifertData::new(&[1, 3, 5]).is_err());
    }

    #[test]
    fn beta_and_b_identity_against_search() {
        for n in [3, 4] {
            for s in coprime_tuples(n, 600) {
                let inv = seifert_invariants(&s);
                assert_eq!(inv.beta, beta_by_search(s.orders()));
                assert!(b_identity_holds(&s, &inv));
            }
        }
    }

    #[test]
    fn cotangent_examples() {
        let mut c = TrigCache::new();
        assert_eq!(r_invariant_cotangent(&sd(&[2, 3, 5]), &mut c), Ok(1));
        assert_eq!(r_invariant_cotangent(&sd(&[2, 3, 7]), &mut c), Ok(-1));
        let s = sd(&[2, 3, 5, 7]);
        assert_eq!(r_invariant_cotangent(&s, &mut c), Ok(r_invariant(&s)));
    }

    #[test]
    fn prediction_examples() {
        let p = gamma_prediction(&[sd(&[2, 3, 5])]).unwrap();
        assert_eq!((p.value, p.range_max, p.h_lower), (Rat::new(1, 120), 1, 0));
        let p = gamma_prediction(&[sd(&[2, 3, 11]), sd(&[2, 3, 5])]).unwrap();
        assert_eq!((p.value, p.range_max), (Rat::new(1, 264), 1));
        assert!(gamma_prediction(&[sd(&[2, 3, 7])]).is_err());
        assert_eq!(gamma_prediction(&[]), Err(SeifertError::Empty));
    }

    #[test]
    fn furuta_examples() {
        let fam: Vec<SeifertData> = (1..=3).map(|k| sd(&[2, 3, 6 * k - 1])).collect();
        assert!(furuta_independence(&fam).conclusive());
        assert!(!furuta_independence(&[sd(&[2, 3, 5]), sd(&[2, 3, 5])]).independent);
        let rep = furuta_independence(&[sd(&[2, 3, 5]), sd(&[2, 5, 7])]);
        assert!(rep.independent);
        assert_eq!(rep.fingerprints[1].r, -1);
        assert!(!rep.all_positive_r);
    }

    #[test]
    fn whitehead_examples() {
        let w = whitehead_double_bounds(2, 3).unwrap();
        assert_eq!((w.lower.clone(), w.upper.clone()), (Rat::new(1, 552), Rat::new(1, 264)));
        assert_eq!(w.candidates, [Rat::new(1, 552), Rat::new(1, 276), Rat::new(1, 264)]);
        assert!(whitehead_double_bounds(2, 4).is_err());
    }

    #[test]
    fn large_r_family_values() {
        let s = large_r_tuple(2, 3, &[1]).unwrap();
        assert_eq!(s.orders(), &[2, 3, 5]);
        assert_eq!(r_invariant(&s), 1);
        let s = large_r_tuple(2, 3, &[1, 1, 1]).unwrap();
        assert_eq!(s.orders(), &[2, 3, 5, 29, 869]);
        let mut c = TrigCache::new();
        assert_eq!(r_invariant_cotangent(&s, &mut c), Ok(3));
        assert_eq!(r_invariant(&s), 3);
    }

    #[test]
    fn small_sweep() {
        let rep = sweep(&[3, 4], 400);
        assert!(rep.ok(), "{:?}", rep.failures);
        assert!(rep.min_r >= -1);
    }
}
