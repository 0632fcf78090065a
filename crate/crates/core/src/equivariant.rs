//! The equivariant complexes Ĉ, Č and C̄ with truncated Laurent windows, the
//! triangle maps `i`, `j`, `p`, their homotopies, and identity verification.
//!
//! Elements of Ĉ are `(α, a_0 + … + a_N x^N)`, elements of Č are
//! `(α, a_{-1} x^{-1} + … + a_{-T} x^{-T})`, and elements of C̄ are Laurent
//! polynomials supported in `[-T, N]`. Identities are compared only in
//! x-degrees at least `-T + 2`, where truncation cannot interfere.

use std::fmt;

use thiserror::Error;

use crate::floer_datum::{
    basis_chain, chain_add, chain_is_zero, chain_neg, chain_sub, validate, zero_chain, Chain, FloerDatum, ValidationReport,
};
use crate::linalg::rank;
use crate::novikov::{mdeg_tuple, to_rational_function, ExtendedRat, NovikovElement, RationalFunction};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EquivariantError {
    #[error("window needs T >= 2 and N >= 1, got ({0}, {1})")]
    BadWindow(usize, usize),
    #[error("x-action would push a nonzero coefficient past x^{0}")]
    WindowOverflow(usize),
    #[error("Deg of the zero element")]
    DegOfZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationWindow {
    pub t: usize,
    pub n: usize,
}

impl TruncationWindow {
    pub fn new(t: usize, n: usize) -> Result<Self, EquivariantError> {
        if t < 2 || n < 1 {
            return Err(EquivariantError::BadWindow(t, n));
        }
        Ok(TruncationWindow { t, n })
    }

    /// Lowest x-degree at which identities are compared.
    pub fn low(&self) -> i64 {
        -(self.t as i64) + 2
    }
}

impl fmt::Display for TruncationWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.t, self.n)
    }
}

fn zeros(k: usize) -> Vec<NovikovElement> {
    vec![NovikovElement::zero(); k]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatElement {
    pub chain: Chain,
    /// `poly[i]` is the coefficient of `x^i`, `0 <= i <= N`.
    pub poly: Vec<NovikovElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckElement {
    pub chain: Chain,
    /// `tail[j]` is the coefficient of `x^{-(j+1)}`.
    pub tail: Vec<NovikovElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarElement {
    /// `coeffs[i + T]` is the coefficient of `x^i`.
    pub coeffs: Vec<NovikovElement>,
    pub t: usize,
}

impl HatElement {
    pub fn zero(n_gens: usize, w: &TruncationWindow) -> Self {
        HatElement { chain: zero_chain(n_gens), poly: zeros(w.n + 1) }
    }

    pub fn generator(n_gens: usize, g: usize, w: &TruncationWindow) -> Self {
        HatElement { chain: basis_chain(n_gens, g), poly: zeros(w.n + 1) }
    }

    pub fn x_power(n_gens: usize, i: usize, w: &TruncationWindow) -> Self {
        let mut e = Self::zero(n_gens, w);
        e.poly[i] = NovikovElement::one();
        e
    }

    pub fn add(&self, o: &Self) -> Self {
        HatElement { chain: chain_add(&self.chain, &o.chain), poly: chain_add(&self.poly, &o.poly) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        HatElement { chain: chain_sub(&self.chain, &o.chain), poly: chain_sub(&self.poly, &o.poly) }
    }

    pub fn is_zero(&self) -> bool {
        chain_is_zero(&self.chain) && chain_is_zero(&self.poly)
    }
}

impl CheckElement {
    pub fn zero(n_gens: usize, w: &TruncationWindow) -> Self {
        CheckElement { chain: zero_chain(n_gens), tail: zeros(w.t) }
    }

    pub fn generator(n_gens: usize, g: usize, w: &TruncationWindow) -> Self {
        CheckElement { chain: basis_chain(n_gens, g), tail: zeros(w.t) }
    }

    /// The element `x^{-j}` for `1 <= j <= T`.
    pub fn x_power(n_gens: usize, j: usize, w: &TruncationWindow) -> Self {
        let mut e = Self::zero(n_gens, w);
        e.tail[j - 1] = NovikovElement::one();
        e
    }

    pub fn coeff(&self, i: i64) -> &NovikovElement {
        &self.tail[(-i - 1) as usize]
    }

    pub fn add(&self, o: &Self) -> Self {
        CheckElement { chain: chain_add(&self.chain, &o.chain), tail: chain_add(&self.tail, &o.tail) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        CheckElement { chain: chain_sub(&self.chain, &o.chain), tail: chain_sub(&self.tail, &o.tail) }
    }

    pub fn is_zero(&self) -> bool {
        chain_is_zero(&self.chain) && chain_is_zero(&self.tail)
    }

    /// Zero in every tail degree below `low`.
    fn trimmed(&self, low: i64) -> Self {
        let mut e = self.clone();
        for j in 0..e.tail.len() {
            if -(j as i64) - 1 < low {
                e.tail[j] = NovikovElement::zero();
            }
        }
        e
    }
}

impl BarElement {
    pub fn zero(w: &TruncationWindow) -> Self {
        BarElement { coeffs: zeros(w.t + w.n + 1), t: w.t }
    }

    pub fn x_power(i: i64, w: &TruncationWindow) -> Self {
        let mut z = Self::zero(w);
        z.set(i, NovikovElement::one());
        z
    }

    pub fn low(&self) -> i64 {
        -(self.t as i64)
    }

    pub fn high(&self) -> i64 {
        self.coeffs.len() as i64 - self.t as i64 - 1
    }

    pub fn get(&self, i: i64) -> NovikovElement {
        if i < self.low() || i > self.high() {
            return NovikovElement::zero();
        }
        self.coeffs[(i + self.t as i64) as usize].clone()
    }

    pub fn set(&mut self, i: i64, v: NovikovElement) {
        let idx = (i + self.t as i64) as usize;
        self.coeffs[idx] = v;
    }

    pub fn add_at(&mut self, i: i64, v: &NovikovElement) {
        if i < self.low() || i > self.high() || v.is_zero() {
            return;
        }
        let idx = (i + self.t as i64) as usize;
        self.coeffs[idx] = self.coeffs[idx].add(v);
    }

    pub fn add(&self, o: &Self) -> Self {
        BarElement { coeffs: chain_add(&self.coeffs, &o.coeffs), t: self.t }
    }

    pub fn sub(&self, o: &Self) -> Self {
        BarElement { coeffs: chain_sub(&self.coeffs, &o.coeffs), t: self.t }
    }

    pub fn is_zero(&self) -> bool {
        chain_is_zero(&self.coeffs)
    }

    fn trimmed(&self, low: i64) -> Self {
        let mut z = self.clone();
        for i in z.low()..low {
            z.set(i, NovikovElement::zero());
        }
        z
    }
}

/// `U^i D2(a)`.
pub fn u_pow_d2(datum: &FloerDatum, a: &NovikovElement, i: usize) -> Chain {
    let mut v = datum.apply_d2(a);
    for _ in 0..i {
        if chain_is_zero(&v) {
            break;
        }
        v = datum.apply_u(&v);
    }
    v
}

/// `D1 U^j (α)`.
pub fn d1_u_pow(datum: &FloerDatum, alpha: &[NovikovElement], j: usize) -> NovikovElement {
    let mut v = alpha.to_vec();
    for _ in 0..j {
        if chain_is_zero(&v) {
            return NovikovElement::zero();
        }
        v = datum.apply_u(&v);
    }
    datum.apply_d1(&v)
}

/// `d̂(α, Σ a_i x^i) = (dα - Σ U^i D2(a_i), 0)`.
pub fn hat_d(datum: &FloerDatum, w: &TruncationWindow, e: &HatElement) -> HatElement {
    let mut chain = datum.apply_d(&e.chain);
    for (i, a) in e.poly.iter().enumerate() {
        if !a.is_zero() {
            chain = chain_sub(&chain, &u_pow_d2(datum, a, i));
        }
    }
    HatElement { chain, poly: zeros(w.n + 1) }
}

/// `ď(α, tail) = (dα, Σ_{i<0} D1 U^{-i-1}(α) x^i)`.
pub fn check_d(datum: &FloerDatum, w: &TruncationWindow, e: &CheckElement) -> CheckElement {
    let tail = (0..w.t).map(|j| d1_u_pow(datum, &e.chain, j)).collect();
    CheckElement { chain: datum.apply_d(&e.chain), tail }
}

/// `x·(α, Σ a_i x^i) = (Uα, D1(α) + Σ a_i x^{i+1})`.
pub fn x_action_hat(datum: &FloerDatum, w: &TruncationWindow, e: &HatElement) -> Result<HatElement, EquivariantError> {
    if !e.poly[w.n].is_zero() {
        return Err(EquivariantError::WindowOverflow(w.n));
    }
    let mut poly = zeros(w.n + 1);
    poly[0] = datum.apply_d1(&e.chain);
    for i in 0..w.n {
        poly[i + 1] = e.poly[i].clone();
    }
    Ok(HatElement { chain: datum.apply_u(&e.chain), poly })
}

/// `x·(α, Σ a_i x^i) = (Uα + D2(a_{-1}), Σ a_i x^{i+1})`; the new `x^{-T}` coefficient is unknown and set to zero.
pub fn x_action_check(datum: &FloerDatum, w: &TruncationWindow, e: &CheckElement) -> CheckElement {
    let chain = chain_add(&datum.apply_u(&e.chain), &datum.apply_d2(&e.tail[0]));
    let mut tail = zeros(w.t);
    for j in 0..w.t - 1 {
        tail[j] = e.tail[j + 1].clone();
    }
    CheckElement { chain, tail }
}

pub fn x_action_bar(e: &BarElement) -> Result<BarElement, EquivariantError> {
    let top = e.high();
    if !e.get(top).is_zero() {
        return Err(EquivariantError::WindowOverflow(top as usize));
    }
    let mut out = BarElement { coeffs: zeros(e.coeffs.len()), t: e.t };
    for i in e.low()..top {
        out.set(i + 1, e.get(i));
    }
    Ok(out)
}

/// `i(Σ a_i x^i) = (Σ_{i>=0} U^i D2(a_i), Σ_{i<0} a_i x^i)`.
pub fn map_i(datum: &FloerDatum, w: &TruncationWindow, z: &BarElement) -> CheckElement {
    let mut chain = zero_chain(datum.len());
    for i in 0..=w.n {
        let a = z.get(i as i64);
        if !a.is_zero() {
            chain = chain_add(&chain, &u_pow_d2(datum, &a, i));
        }
    }
    let tail = (1..=w.t).map(|j| z.get(-(j as i64))).collect();
    CheckElement { chain, tail }
}

/// `j(α, tail) = (α, 0)`.
pub fn map_j(w: &TruncationWindow, e: &CheckElement) -> HatElement {
    HatElement { chain: e.chain.clone(), poly: zeros(w.n + 1) }
}

/// `p(α, Σ a_i x^i) = Σ_{i<0} D1 U^{-i-1}(α) x^i + Σ a_i x^i`.
pub fn map_p(datum: &FloerDatum, w: &TruncationWindow, e: &HatElement) -> BarElement {
    let mut z = BarElement::zero(w);
    for j in 0..w.t {
        z.set(-(j as i64) - 1, d1_u_pow(datum, &e.chain, j));
    }
    for (i, a) in e.poly.iter().enumerate() {
        z.set(i as i64, a.clone());
    }
    z
}

/// `h(α, tail) = (0, -a_{-1})`.
pub fn map_h(datum: &FloerDatum, w: &TruncationWindow, e: &CheckElement) -> HatElement {
    let mut out = HatElement::zero(datum.len(), w);
    out.poly[0] = e.tail[0].neg();
    out
}

/// `𝔨(α, tail) = -tail`.
pub fn frak_k(w: &TruncationWindow, e: &CheckElement) -> BarElement {
    let mut z = BarElement::zero(w);
    for (j, a) in e.tail.iter().enumerate() {
        z.set(-(j as i64) - 1, a.neg());
    }
    z
}

/// `𝔩(α, poly) = ((-1)^{|α|} α, 0)`, applied generator by generator.
pub fn frak_l(datum: &FloerDatum, w: &TruncationWindow, e: &HatElement) -> CheckElement {
    CheckElement { chain: datum.grading_sign(&e.chain), tail: zeros(w.t) }
}

/// `𝔯(Σ a_i x^i) = (0, Σ_{i>=0} a_i x^i)`.
pub fn frak_r(datum: &FloerDatum, w: &TruncationWindow, z: &BarElement) -> HatElement {
    let poly = (0..=w.n).map(|i| z.get(i as i64)).collect();
    HatElement { chain: zero_chain(datum.len()), poly }
}

/// Largest i with `a_i != 0`.
pub fn deg_bar(z: &BarElement) -> Result<i64, EquivariantError> {
    (z.low()..=z.high()).rev().find(|&i| !z.get(i).is_zero()).ok_or(EquivariantError::DegOfZero)
}

pub fn mdeg_hat(e: &HatElement) -> ExtendedRat {
    if !chain_is_zero(&e.poly) {
        mdeg_tuple(&e.poly)
    } else {
        mdeg_tuple(&e.chain)
    }
}

/// mdeg of the chain part if nonzero, otherwise of the deepest nonzero tail coefficient.
pub fn mdeg_check(e: &CheckElement) -> ExtendedRat {
    if !chain_is_zero(&e.chain) {
        return mdeg_tuple(&e.chain);
    }
    match e.tail.iter().rev().find(|a| !a.is_zero()) {
        Some(a) => a.mdeg(),
        None => ExtendedRat::Inf,
    }
}

pub fn mdeg_bar(z: &BarElement) -> ExtendedRat {
    let nonneg: Vec<NovikovElement> = (0..=z.high()).map(|i| z.get(i)).collect();
    if !chain_is_zero(&nonneg) {
        return mdeg_tuple(&nonneg);
    }
    match deg_bar(z) {
        Ok(d) => z.get(d).mdeg(),
        Err(_) => ExtendedRat::Inf,
    }
}

pub(crate) fn hat_basis(n: usize, w: &TruncationWindow, max_deg: usize) -> Vec<(String, HatElement)> {
    let mut v: Vec<(String, HatElement)> =
        (0..n).map(|g| (format!("(g{g}, 0)"), HatElement::generator(n, g, w))).collect();
    v.extend((0..=max_deg).map(|i| (format!("(0, x^{i})"), HatElement::x_power(n, i, w))));
    v
}

pub(crate) fn check_basis(n: usize, w: &TruncationWindow, depth: usize) -> Vec<(String, CheckElement)> {
    let mut v: Vec<(String, CheckElement)> =
        (0..n).map(|g| (format!("(g{g}, 0)"), CheckElement::generator(n, g, w))).collect();
    v.extend((1..=depth).map(|j| (format!("(0, x^-{j})"), CheckElement::x_power(n, j, w))));
    v
}

pub(crate) fn bar_basis(w: &TruncationWindow, lo: i64, hi: i64) -> Vec<(String, BarElement)> {
    (lo..=hi).map(|i| (format!("x^{i}"), BarElement::x_power(i, w))).collect()
}

pub(crate) fn fmt_hat(e: &HatElement) -> String {
    format!("chain {:?}, poly {:?}", e.chain, e.poly)
}

pub(crate) fn fmt_check(e: &CheckElement) -> String {
    format!("chain {:?}, tail {:?}", e.chain, e.tail)
}

pub(crate) fn fmt_bar(z: &BarElement) -> String {
    let parts: Vec<String> = (z.low()..=z.high())
        .filter(|&i| !z.get(i).is_zero())
        .map(|i| format!("({})x^{i}", z.get(i)))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Accumulates residuals of identity checks.
pub(crate) struct Checker<'a> {
    pub report: ValidationReport,
    pub low: i64,
    pub datum_name: &'a str,
}

impl Checker<'_> {
    pub fn hat(&mut self, id: &str, basis: &str, residual: HatElement) {
        if !residual.is_zero() {
            self.report.push(id, format!("{}: basis {basis}, residual {}", self.datum_name, fmt_hat(&residual)));
        }
    }

    pub fn check(&mut self, id: &str, basis: &str, residual: CheckElement) {
        let r = residual.trimmed(self.low);
        if !r.is_zero() {
            self.report.push(id, format!("{}: basis {basis}, residual {}", self.datum_name, fmt_check(&r)));
        }
    }

    pub fn bar(&mut self, id: &str, basis: &str, residual: BarElement) {
        let r = residual.trimmed(self.low);
        if !r.is_zero() {
            self.report.push(id, format!("{}: basis {basis}, residual {}", self.datum_name, fmt_bar(&r)));
        }
    }

    pub fn overflow(&mut self, id: &str, basis: &str, e: EquivariantError) {
        self.report.push(id, format!("{}: basis {basis}, {e}", self.datum_name));
    }
}

/// Rank over Q(μ) of a square Λ-matrix given by columns.
pub fn lambda_matrix_invertible(columns: &[Vec<NovikovElement>]) -> bool {
    let dim = columns.len();
    if dim == 0 {
        return true;
    }
    let scale = columns
        .iter()
        .flatten()
        .fold(num_bigint::BigInt::from(1), |acc, a| num_integer::Integer::lcm(&acc, &a.exponent_denominator_lcm()));
    let scale: u64 = num_traits::ToPrimitive::to_u64(&scale).expect("exponent scale fits in u64");
    let rows: Vec<Vec<RationalFunction>> = (0..dim)
        .map(|r| columns.iter().map(|c| to_rational_function(&c[r], scale).expect("scale clears exponents")).collect())
        .collect();
    rank(&rows, dim) == dim
}

fn hat_coords(e: &HatElement) -> Vec<NovikovElement> {
    e.chain.iter().chain(e.poly.iter()).cloned().collect()
}

fn check_coords(e: &CheckElement) -> Vec<NovikovElement> {
    e.chain.iter().chain(e.tail.iter()).cloned().collect()
}

/// Mechanically checks every identity of the exact triangle on the window.
pub fn verify_triangle(datum: &FloerDatum, w: &TruncationWindow) -> ValidationReport {
    let pre = validate(datum);
    if !pre.is_ok() {
        let mut rep = ValidationReport::ok();
        rep.push("precondition", format!("datum `{}` is not valid: {pre}", datum.name));
        return rep;
    }
    let n = datum.len();
    let mut c = Checker { report: ValidationReport::ok(), low: w.low(), datum_name: &datum.name };
    let hats = hat_basis(n, w, w.n - 1);
    let checks = check_basis(n, w, w.t - 2);
    let bars = bar_basis(w, w.low(), w.n as i64 - 1);

    for (name, e) in &hats {
        c.hat("d̂∘d̂ = 0", name, hat_d(datum, w, &hat_d(datum, w, e)));
        c.bar("p∘d̂ = 0", name, map_p(datum, w, &hat_d(datum, w, e)));
        if e.poly[w.n - 1].is_zero() {
            match (x_action_hat(datum, w, e), map_p(datum, w, e)) {
                (Ok(xe), pe) => match x_action_bar(&pe) {
                    Ok(xpe) => c.bar("p∘x = x∘p", name, map_p(datum, w, &xe).sub(&xpe)),
                    Err(err) => c.overflow("p∘x = x∘p", name, err),
                },
                (Err(err), _) => c.overflow("p∘x = x∘p", name, err),
            }
        }
        let lhs = map_i(datum, w, &map_p(datum, w, e))
            .add(&frak_l(datum, w, &hat_d(datum, w, e)))
            .add(&check_d(datum, w, &frak_l(datum, w, e)));
        c.check("i∘p + 𝔩∘d̂ + ď∘𝔩 = 0", name, lhs);
    }
    for (name, e) in &checks {
        c.check("ď∘ď = 0", name, check_d(datum, w, &check_d(datum, w, e)));
        c.hat("d̂∘j = j∘ď", name, hat_d(datum, w, &map_j(w, e)).sub(&map_j(w, &check_d(datum, w, e))));
        let xe = x_action_check(datum, w, e);
        let lhs = match x_action_hat(datum, w, &map_j(w, e)) {
            Ok(xj) => map_j(w, &xe).sub(&xj),
            Err(err) => {
                c.overflow("j∘x - x∘j = d̂∘h + h∘ď", name, err);
                continue;
            }
        };
        let rhs = hat_d(datum, w, &map_h(datum, w, e)).add(&map_h(datum, w, &check_d(datum, w, e)));
        c.hat("j∘x - x∘j = d̂∘h + h∘ď", name, lhs.sub(&rhs));
        let lhs = map_p(datum, w, &map_j(w, e)).add(&frak_k(w, &check_d(datum, w, e)));
        c.bar("p∘j + 𝔨∘ď = 0", name, lhs);
    }
    for (name, z) in &bars {
        c.check("ď∘i = 0", name, check_d(datum, w, &map_i(datum, w, z)));
        match x_action_bar(z) {
            Ok(xz) => {
                let lhs = map_i(datum, w, &xz).sub(&x_action_check(datum, w, &map_i(datum, w, z)));
                c.check("i∘x = x∘i", name, lhs);
            }
            Err(err) => c.overflow("i∘x = x∘i", name, err),
        }
        let lhs = map_j(w, &map_i(datum, w, z)).add(&hat_d(datum, w, &frak_r(datum, w, z)));
        c.hat("j∘i + d̂∘𝔯 = 0", name, lhs);
    }

    let full_checks = check_basis(n, w, w.t);
    let cols: Vec<Vec<NovikovElement>> = full_checks
        .iter()
        .map(|(_, e)| check_coords(&frak_l(datum, w, &map_j(w, e)).add(&map_i(datum, w, &frak_k(w, e)))))
        .collect();
    if !lambda_matrix_invertible(&cols) {
        c.report.push("𝔩∘j + i∘𝔨 invertible", format!("{}: singular on the window", datum.name));
    }
    let full_hats = hat_basis(n, w, w.n);
    let cols: Vec<Vec<NovikovElement>> = full_hats
        .iter()
        .map(|(_, e)| hat_coords(&frak_r(datum, w, &map_p(datum, w, e)).add(&map_j(w, &frak_l(datum, w, e)))))
        .collect();
    if !lambda_matrix_invertible(&cols) {
        c.report.push("𝔯∘p + j∘𝔩 invertible", format!("{}: singular on the window", datum.name));
    }
    let full_bars = bar_basis(w, -(w.t as i64), w.n as i64);
    let cols: Vec<Vec<NovikovElement>> = full_bars
        .iter()
        .map(|(_, z)| frak_k(w, &map_i(datum, w, z)).add(&map_p(datum, w, &frak_r(datum, w, z))).coeffs)
        .collect();
    if !lambda_matrix_invertible(&cols) {
        c.report.push("𝔨∘i + p∘𝔯 invertible", format!("{}: singular on the window", datum.name));
    }
    c.report
}

/// `-e` on Č; convenience for callers building residuals.
pub fn neg_check(e: &CheckElement) -> CheckElement {
    CheckElement { chain: chain_neg(&e.chain), tail: chain_neg(&e.tail) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::datum;
    use crate::novikov::Rat;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn w() -> TruncationWindow {
        TruncationWindow::new(6, 4).unwrap()
    }

    #[test]
    fn window_bounds() {
        assert!(TruncationWindow::new(1, 4).is_err());
        assert!(TruncationWindow::new(2, 0).is_err());
    }

    #[test]
    fn hat_d_examples() {
        let w = w();
        let s3 = datum("s3").unwrap();
        let mut e = HatElement::zero(0, &w);
        e.poly[0] = NovikovElement::one();
        e.poly[1] = NovikovElement::one();
        assert!(hat_d(&s3, &w, &e).is_zero());
        let ns = datum("neg_sigma_2_3_5").unwrap();
        let a = ns.index_of("alpha*").unwrap();
        let b = ns.index_of("beta*").unwrap();
        let out = hat_d(&ns, &w, &HatElement::x_power(2, 0, &w));
        assert_eq!(out.chain[a], NovikovElement::monomial(r("-1"), r("1/120")));
        let out = hat_d(&ns, &w, &HatElement::x_power(2, 1, &w));
        assert_eq!(out.chain[b], NovikovElement::monomial(r("-8"), r("49/120")));
        assert!(out.chain[a].is_zero());
    }

    #[test]
    fn check_d_examples() {
        let w = w();
        let s = datum("sigma_2_3_5").unwrap();
        let a = s.index_of("alpha").unwrap();
        let b = s.index_of("beta").unwrap();
        let out = check_d(&s, &w, &CheckElement::generator(2, a, &w));
        assert!(chain_is_zero(&out.chain));
        assert_eq!(out.coeff(-1), &NovikovElement::lambda(r("1/120")));
        assert!(out.tail[1..].iter().all(|x| x.is_zero()));
        let out = check_d(&s, &w, &CheckElement::generator(2, b, &w));
        assert!(out.coeff(-1).is_zero());
        assert_eq!(out.coeff(-2), &NovikovElement::monomial(r("8"), r("49/120")));
    }

    #[test]
    fn x_action_examples() {
        let w = w();
        let s = datum("sigma_2_3_5").unwrap();
        let a = s.index_of("alpha").unwrap();
        let b = s.index_of("beta").unwrap();
        let out = x_action_hat(&s, &w, &HatElement::generator(2, b, &w)).unwrap();
        assert_eq!(out.chain[a], NovikovElement::monomial(r("8"), r("2/5")));
        assert!(chain_is_zero(&out.poly));
        let out = x_action_hat(&s, &w, &HatElement::generator(2, a, &w)).unwrap();
        assert!(chain_is_zero(&out.chain));
        assert_eq!(out.poly[0], NovikovElement::lambda(r("1/120")));
        assert!(x_action_hat(&s, &w, &HatElement::x_power(2, 4, &w)).is_err());

        let ns = datum("neg_sigma_2_3_5").unwrap();
        let out = x_action_check(&ns, &w, &CheckElement::x_power(2, 1, &w));
        assert_eq!(out.chain[ns.index_of("alpha*").unwrap()], NovikovElement::lambda(r("1/120")));
        assert!(chain_is_zero(&out.tail));
        assert!(x_action_bar(&BarElement::x_power(4, &w)).is_err());
        assert_eq!(x_action_bar(&BarElement::x_power(-6, &w)).unwrap(), BarElement::x_power(-5, &w));
    }

    #[test]
    fn triangle_map_examples() {
        let w = w();
        let s3 = datum("s3").unwrap();
        let z = BarElement::x_power(-1, &w).add(&BarElement::x_power(2, &w));
        let out = map_i(&s3, &w, &z);
        assert_eq!(out, CheckElement::x_power(0, 1, &w));
        let ns = datum("neg_sigma_2_3_5").unwrap();
        let out = map_i(&ns, &w, &BarElement::x_power(0, &w));
        assert_eq!(out.chain[0], NovikovElement::lambda(r("1/120")));
        let out = map_i(&ns, &w, &BarElement::x_power(1, &w));
        assert_eq!(out.chain[1], NovikovElement::monomial(r("8"), r("49/120")));

        let s = datum("sigma_2_3_5").unwrap();
        let mut e = CheckElement::generator(2, 0, &w);
        e.tail[0] = NovikovElement::one();
        assert_eq!(map_j(&w, &e), HatElement::generator(2, 0, &w));
        assert!(map_j(&w, &check_d(&s, &w, &CheckElement::generator(2, 0, &w))).is_zero());

        let out = map_p(&s, &w, &HatElement::generator(2, 0, &w));
        assert_eq!(out, {
            let mut z = BarElement::zero(&w);
            z.set(-1, NovikovElement::lambda(r("1/120")));
            z
        });
        let e = HatElement::generator(2, 1, &w).add(&HatElement::x_power(2, 2, &w));
        let out = map_p(&s, &w, &e);
        let mut z = BarElement::x_power(2, &w);
        z.set(-2, NovikovElement::monomial(r("8"), r("49/120")));
        assert_eq!(out, z);
        let e = HatElement::x_power(0, 0, &w).add(&HatElement::x_power(0, 1, &w));
        assert_eq!(map_p(&s3, &w, &e), BarElement::x_power(0, &w).add(&BarElement::x_power(1, &w)));
    }

    #[test]
    fn degree_examples() {
        let w = w();
        let mut z = BarElement::zero(&w);
        z.set(-3, NovikovElement::lambda(r("1/2")));
        z.set(1, NovikovElement::constant(r("2")));
        assert_eq!(deg_bar(&z).unwrap(), 1);
        assert!(deg_bar(&BarElement::zero(&w)).is_err());
        let mut e = HatElement::zero(0, &w);
        e.poly[0] = NovikovElement::lambda(r("1"));
        e.poly[1] = NovikovElement::lambda(r("-2"));
        assert_eq!(mdeg_hat(&e), ExtendedRat::Finite(r("-2")));
        let mut c = CheckElement::zero(0, &w);
        c.tail[1] = NovikovElement::lambda(r("3"));
        assert_eq!(mdeg_check(&c), ExtendedRat::Finite(r("3")));
        let mut z = BarElement::zero(&w);
        z.set(-2, NovikovElement::lambda(r("5")));
        z.set(-4, NovikovElement::lambda(r("-1")));
        assert_eq!(mdeg_bar(&z), ExtendedRat::Finite(r("5")));
        assert_eq!(mdeg_bar(&BarElement::zero(&w)), ExtendedRat::Inf);
    }

    #[test]
    fn triangle_on_fixtures() {
        for d in crate::fixtures::all_data() {
            let rep = verify_triangle(&d, &w());
            assert!(rep.is_ok(), "{}: {rep}", d.name);
        }
        let s3 = datum("s3").unwrap();
        assert!(verify_triangle(&s3, &TruncationWindow::new(3, 2).unwrap()).is_ok());
    }

    #[test]
    fn broken_sign_is_detected() {
        // Flipping the grading of a generator breaks the sign in 𝔩 through D1.
        let mut s = datum("sigma_2_3_5").unwrap();
        s.generators[0].grading = 1;
        let rep = verify_triangle(&s, &w());
        assert!(rep.is_ok());
        let mut bad = datum("sigma_2_3_5").unwrap();
        bad.generators[0].grading = 2;
        let rep = verify_triangle(&bad, &w());
        assert_eq!(rep.first().unwrap().check, "precondition");
    }
}
