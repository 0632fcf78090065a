//! The invariant Γ(k), the h-invariant, and arithmetic bounds on τ, τ′, η.
//!
//! Γ(k) is computed over homogeneous elements `α = Σ s_g λ^{r_g} g`. Every
//! Λ-linear condition on α becomes a Q-linear condition on `s` once terms are
//! grouped by target generator and exponent, so feasibility questions reduce to
//! rank computations over Q.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::floer_datum::{residue, validate, FloerDatum, HomogeneousVector, LambdaMatrix, RationalDatum};
use crate::linalg::{dot, kernel_vector_off};
use crate::novikov::{ExtendedRat, NovikovElement, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GammaError {
    #[error("datum `{0}` failed validation: {1}")]
    InvalidDatum(String, String),
    #[error("Γ is not monotone: Γ({k_prev}) = {prev} > Γ({k}) = {cur}")]
    NotMonotone { k_prev: i64, prev: ExtendedRat, k: i64, cur: ExtendedRat },
    #[error("largest k with nonempty special set is odd ({0})")]
    OddThreshold(i64),
    #[error("no nonempty special set found down to k = {0}")]
    NoThreshold(i64),
    #[error("empty datum has no irreducible generators")]
    EmptyDatum,
    #[error("invalid range {0}..{1}")]
    Range(i64, i64),
}

/// Λ-chain whose coefficients are Q-linear forms in a vector of unknowns.
#[derive(Clone, Debug)]
struct SymChain {
    nvars: usize,
    slots: Vec<BTreeMap<Rat, Vec<Rat>>>,
}

impl SymChain {
    fn zero(len: usize, nvars: usize) -> Self {
        SymChain { nvars, slots: vec![BTreeMap::new(); len] }
    }

    fn add_form(&mut self, slot: usize, exp: Rat, form: &[Rat], factor: &Rat) {
        let entry = self.slots[slot].entry(exp.clone()).or_insert_with(|| vec![Rat::zero(); self.nvars]);
        for (x, y) in entry.iter_mut().zip(form) {
            if !y.is_zero() {
                *x = &*x + &(y * factor);
            }
        }
        if entry.iter().all(|x| x.is_zero()) {
            self.slots[slot].remove(&exp);
        }
    }

    fn apply(&self, m: &LambdaMatrix) -> SymChain {
        let mut out = SymChain::zero(m.rows(), self.nvars);
        for (&(r, c), a) in m.entries() {
            for (e, form) in &self.slots[c] {
                for (ea, ca) in a.terms() {
                    out.add_form(r, e + ea, form, ca);
                }
            }
        }
        out
    }

    fn sub(&self, o: &SymChain) -> SymChain {
        let mut out = self.clone();
        for (slot, m) in o.slots.iter().enumerate() {
            for (e, form) in m {
                out.add_form(slot, e.clone(), form, &Rat::int(-1));
            }
        }
        out
    }

    fn add(&self, o: &SymChain) -> SymChain {
        let mut out = self.clone();
        for (slot, m) in o.slots.iter().enumerate() {
            for (e, form) in m {
                out.add_form(slot, e.clone(), form, &Rat::one());
            }
        }
        out
    }

    fn rows(&self) -> Vec<Vec<Rat>> {
        self.slots.iter().flat_map(|m| m.values().cloned()).collect()
    }

    /// Exponent-indexed forms of a one-slot chain.
    fn scalar_forms(&self) -> &BTreeMap<Rat, Vec<Rat>> {
        &self.slots[0]
    }
}

fn unit(nvars: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); nvars];
    v[i] = Rat::one();
    v
}

/// Symbolic α = Σ_j s_j λ^{r_{g_j}} g_j with unknown `s_j` at position `j`.
fn sym_alpha(datum: &FloerDatum, gens: &[usize], nvars: usize) -> SymChain {
    let mut a = SymChain::zero(datum.len(), nvars);
    for (j, &g) in gens.iter().enumerate() {
        a.add_form(g, datum.lift(g).clone(), &unit(nvars, j), &Rat::one());
    }
    a
}

/// Witness of membership in the special set for a given k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialSolution {
    pub k: i64,
    /// `(generator index, s_g)` pairs of α.
    pub alpha: Vec<(usize, Rat)>,
    /// `q_0 … q_{-k}` for k ≤ 0, empty otherwise.
    pub a_tuple: Vec<Rat>,
}

impl SpecialSolution {
    pub fn alpha_vector(&self) -> HomogeneousVector {
        HomogeneousVector {
            residue: residue(4 * self.k - 3),
            shift: Rat::zero(),
            coeffs: self.alpha.iter().filter(|(_, s)| !s.is_zero()).cloned().collect(),
        }
    }

    /// The elements `a_i = q_i λ^{(-k-i)/2}`.
    pub fn a_elements(&self) -> Vec<NovikovElement> {
        self.a_tuple
            .iter()
            .enumerate()
            .map(|(i, q)| NovikovElement::monomial(q.clone(), Rat::new(-self.k - i as i64, 2)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaResult {
    pub k: i64,
    #[serde(serialize_with = "crate::cli::ser_display")]
    pub value: ExtendedRat,
    pub witness: Option<SpecialSolution>,
}

struct PositiveSystem {
    gens: Vec<usize>,
    constraints: Vec<Vec<Rat>>,
    lead: BTreeMap<Rat, Vec<Rat>>,
}

fn positive_system(datum: &FloerDatum, k: i64) -> PositiveSystem {
    let gens = datum.generators_in(4 * k - 3);
    let n = gens.len();
    let alpha = sym_alpha(datum, &gens, n);
    let mut constraints = alpha.apply(&datum.d).rows();
    let mut v = alpha;
    for _ in 0..(k - 1) {
        constraints.extend(v.apply(&datum.d1).rows());
        v = v.apply(&datum.u);
    }
    let lead = v.apply(&datum.d1).scalar_forms().clone();
    PositiveSystem { gens, constraints, lead }
}

struct NonPositiveSystem {
    gens: Vec<usize>,
    qs: Vec<usize>,
    constraints: Vec<Vec<Rat>>,
}

fn nonpositive_system(datum: &FloerDatum, k: i64) -> NonPositiveSystem {
    let gens = datum.generators_in(4 * k - 3);
    let qs: Vec<usize> = (0..=(-k) as usize).filter(|i| (*i as i64 - k) % 2 == 0).collect();
    let nvars = gens.len() + qs.len();
    let alpha = sym_alpha(datum, &gens, nvars);
    let mut rhs = SymChain::zero(datum.len(), nvars);
    for (j, &i) in qs.iter().enumerate() {
        let mut a = SymChain::zero(1, nvars);
        a.add_form(0, Rat::new(-k - i as i64, 2), &unit(nvars, gens.len() + j), &Rat::one());
        let mut v = a.apply(&datum.d2);
        for _ in 0..i {
            v = v.apply(&datum.u);
        }
        rhs = rhs.add(&v);
    }
    let constraints = alpha.apply(&datum.d).sub(&rhs).rows();
    NonPositiveSystem { gens, qs, constraints }
}

fn distinct_lifts(datum: &FloerDatum, gens: &[usize]) -> Vec<Rat> {
    let mut t: Vec<Rat> = gens.iter().map(|&g| datum.lift(g).clone()).collect();
    t.sort();
    t.dedup();
    t
}

fn support_rows(datum: &FloerDatum, gens: &[usize], nvars: usize, t: &Rat) -> Vec<Vec<Rat>> {
    gens.iter()
        .enumerate()
        .filter(|(_, &g)| datum.lift(g) < t)
        .map(|(j, _)| unit(nvars, j))
        .collect()
}

fn ensure_valid(datum: &FloerDatum) -> Result<(), GammaError> {
    let rep = validate(datum);
    if rep.is_ok() {
        Ok(())
    } else {
        Err(GammaError::InvalidDatum(datum.name.clone(), rep.to_string()))
    }
}

/// Γ(k) for a validated datum, with a witness whenever the value is finite.
pub fn gamma(datum: &FloerDatum, k: i64) -> Result<GammaResult, GammaError> {
    ensure_valid(datum)?;
    Ok(gamma_unchecked(datum, k))
}

pub(crate) fn gamma_unchecked(datum: &FloerDatum, k: i64) -> GammaResult {
    if k >= 1 {
        gamma_positive(datum, k)
    } else {
        gamma_nonpositive(datum, k)
    }
}

fn gamma_positive(datum: &FloerDatum, k: i64) -> GammaResult {
    let sys = positive_system(datum, k);
    let n = sys.gens.len();
    let mut candidates: Vec<(Rat, Rat, Rat)> = Vec::new();
    for t in distinct_lifts(datum, &sys.gens) {
        for e in sys.lead.keys() {
            candidates.push((e - &t, t.clone(), e.clone()));
        }
    }
    candidates.sort();
    for (value, t, e) in candidates {
        let mut rows = sys.constraints.clone();
        rows.extend(support_rows(datum, &sys.gens, n, &t));
        rows.extend(sys.lead.range(..e.clone()).map(|(_, f)| f.clone()));
        if let Some(v) = kernel_vector_off(&rows, &sys.lead[&e], n) {
            let alpha = sys.gens.iter().copied().zip(v).collect();
            let witness = SpecialSolution { k, alpha, a_tuple: Vec::new() };
            return GammaResult { k, value: ExtendedRat::Finite(value), witness: Some(witness) };
        }
    }
    GammaResult { k, value: ExtendedRat::Inf, witness: None }
}

fn gamma_nonpositive(datum: &FloerDatum, k: i64) -> GammaResult {
    let sys = nonpositive_system(datum, k);
    let ng = sys.gens.len();
    let nvars = ng + sys.qs.len();
    let q_unit = |j: usize| unit(nvars, ng + j);
    let witness_from = |v: Vec<Rat>| {
        let alpha = sys.gens.iter().copied().zip(v[..ng].iter().cloned()).collect();
        let mut a_tuple = vec![Rat::zero(); (-k + 1) as usize];
        for (j, &i) in sys.qs.iter().enumerate() {
            a_tuple[i] = v[ng + j].clone();
        }
        SpecialSolution { k, alpha, a_tuple }
    };

    let mut zero_alpha = sys.constraints.clone();
    zero_alpha.extend((0..ng).map(|j| unit(nvars, j)));
    for j in 0..sys.qs.len() {
        if let Some(v) = kernel_vector_off(&zero_alpha, &q_unit(j), nvars) {
            return GammaResult { k, value: ExtendedRat::Finite(Rat::zero()), witness: Some(witness_from(v)) };
        }
    }

    let mut candidates: Vec<(Rat, Rat, usize)> = Vec::new();
    for t in distinct_lifts(datum, &sys.gens) {
        for (j, &i) in sys.qs.iter().enumerate() {
            candidates.push((Rat::new(-k - i as i64, 2) - &t, t.clone(), j));
        }
    }
    candidates.sort();
    for (value, t, j) in candidates {
        let mut rows = sys.constraints.clone();
        rows.extend(support_rows(datum, &sys.gens, nvars, &t));
        rows.extend((j + 1..sys.qs.len()).map(q_unit));
        if let Some(v) = kernel_vector_off(&rows, &q_unit(j), nvars) {
            let value = if value.is_negative() { Rat::zero() } else { value };
            return GammaResult { k, value: ExtendedRat::Finite(value), witness: Some(witness_from(v)) };
        }
    }
    GammaResult { k, value: ExtendedRat::Inf, witness: None }
}

/// Whether the special set for `k` is nonempty.
pub fn special_set_nonempty(datum: &FloerDatum, k: i64) -> bool {
    if k >= 1 {
        let sys = positive_system(datum, k);
        sys.lead.values().any(|f| kernel_vector_off(&sys.constraints, f, sys.gens.len()).is_some())
    } else {
        let sys = nonpositive_system(datum, k);
        let nvars = sys.gens.len() + sys.qs.len();
        (0..sys.qs.len()).any(|j| kernel_vector_off(&sys.constraints, &unit(nvars, sys.gens.len() + j), nvars).is_some())
    }
}

/// Γ over `k_min..=k_max`, checked to be non-decreasing.
pub fn gamma_profile(datum: &FloerDatum, k_min: i64, k_max: i64) -> Result<Vec<(i64, ExtendedRat)>, GammaError> {
    if k_min > k_max {
        return Err(GammaError::Range(k_min, k_max));
    }
    ensure_valid(datum)?;
    let out: Vec<(i64, ExtendedRat)> = (k_min..=k_max).map(|k| (k, gamma_unchecked(datum, k).value)).collect();
    for w in out.windows(2) {
        if w[0].1 > w[1].1 {
            return Err(GammaError::NotMonotone { k_prev: w[0].0, prev: w[0].1.clone(), k: w[1].0, cur: w[1].1.clone() });
        }
    }
    Ok(out)
}

/// Lowest k examined by [`h_invariant`].
pub fn h_search_floor(datum: &FloerDatum) -> i64 {
    -(4 * datum.len() as i64 + 8)
}

/// h with 2h = the largest k whose special set is nonempty.
pub fn h_invariant(datum: &FloerDatum) -> Result<i64, GammaError> {
    ensure_valid(datum)?;
    let top = 1 + 4 * datum.len() as i64;
    let floor = h_search_floor(datum);
    let mut k = top;
    while k >= floor {
        if special_set_nonempty(datum, k) {
            if k % 2 != 0 {
                return Err(GammaError::OddThreshold(k));
            }
            return Ok(k / 2);
        }
        k -= 1;
    }
    Err(GammaError::NoThreshold(floor))
}

fn positive_rep(r: &Rat) -> Rat {
    let f = r.frac();
    if f.is_zero() {
        Rat::one()
    } else {
        f
    }
}

/// Smallest r > 0 with r ≡ -r_g (mod 1) for some generator.
pub fn tau_lower_bound(datum: &FloerDatum) -> Result<Rat, GammaError> {
    datum.generators.iter().map(|g| positive_rep(&-&g.energy_lift)).min().ok_or(GammaError::EmptyDatum)
}

/// Smallest positive representative of r_{g'} - r_g over ordered pairs.
pub fn tau_prime_lower_bound(datum: &FloerDatum) -> Result<Rat, GammaError> {
    let gs = &datum.generators;
    gs.iter()
        .flat_map(|a| gs.iter().map(move |b| positive_rep(&(&b.energy_lift - &a.energy_lift))))
        .min()
        .ok_or(GammaError::EmptyDatum)
}

/// Smallest non-negative representative of r_{g'} - r_g, g in the source, g' in the target.
pub fn eta_lower_bound(source: &FloerDatum, target: &FloerDatum) -> Result<Rat, GammaError> {
    source
        .generators
        .iter()
        .flat_map(|a| target.generators.iter().map(move |b| (&b.energy_lift - &a.energy_lift).frac()))
        .min()
        .ok_or(GammaError::EmptyDatum)
}

/// Every finite positive Γ(k) in the range is ≡ -r_g (mod 1) for some generator.
pub fn check_cs_trichotomy(datum: &FloerDatum, k_min: i64, k_max: i64) -> Result<crate::floer_datum::ValidationReport, GammaError> {
    let mut rep = crate::floer_datum::ValidationReport::ok();
    for (k, v) in gamma_profile(datum, k_min, k_max)? {
        if let ExtendedRat::Finite(x) = &v {
            if x.is_positive() && !datum.generators.iter().any(|g| (x + &g.energy_lift).is_integer()) {
                rep.push("cs-trichotomy", format!("Γ({k}) = {x} is not congruent to any -r_g"));
            }
        }
    }
    Ok(rep)
}

/// Nonemptiness of the rational special set at λ = 1 (matrices evaluated, no exponents).
pub fn rational_special_set_nonempty(rd: &RationalDatum, k: i64) -> bool {
    let n = rd.len();
    let gens: Vec<usize> = (0..n).filter(|&g| rd.gradings[g] == residue(4 * k - 3)).collect();
    let col = |m: &Vec<Vec<Rat>>, v: &[Rat]| RationalDatum::apply(m, v);
    let basis = |g: usize| {
        let mut e = vec![Rat::zero(); n];
        e[g] = Rat::one();
        e
    };
    // rows[r][var] = r-th coordinate of the image of unknown `var`.
    let to_rows = |images: &[Vec<Rat>], len: usize| -> Vec<Vec<Rat>> {
        (0..len).map(|r| images.iter().map(|im| im[r].clone()).collect()).collect()
    };
    if k >= 1 {
        let nvars = gens.len();
        let mut images: Vec<Vec<Rat>> = gens.iter().map(|&g| basis(g)).collect();
        let mut rows = to_rows(&images.iter().map(|v| col(&rd.d, v)).collect::<Vec<_>>(), n);
        for _ in 0..(k - 1) {
            rows.push(images.iter().map(|v| dot(&rd.d1, v)).collect());
            images = images.iter().map(|v| col(&rd.u, v)).collect();
        }
        let lead: Vec<Rat> = images.iter().map(|v| dot(&rd.d1, v)).collect();
        kernel_vector_off(&rows, &lead, nvars).is_some()
    } else {
        let qs: Vec<usize> = (0..=(-k) as usize).filter(|i| (*i as i64 - k) % 2 == 0).collect();
        let nvars = gens.len() + qs.len();
        let mut images: Vec<Vec<Rat>> = Vec::with_capacity(nvars);
        for &g in &gens {
            images.push(col(&rd.d, &basis(g)));
        }
        for &i in &qs {
            let mut v = rd.d2.clone();
            for _ in 0..i {
                v = col(&rd.u, &v);
            }
            images.push(v.iter().map(|x| -x).collect());
        }
        let rows = to_rows(&images, n);
        (0..qs.len()).any(|j| kernel_vector_off(&rows, &unit(nvars, gens.len() + j), nvars).is_some())
    }
}

/// Re-derives the value of a witness from its defining formulas.
pub fn witness_value(datum: &FloerDatum, w: &SpecialSolution) -> Option<ExtendedRat> {
    let alpha = w.alpha_vector().to_chain(datum);
    let mdeg_alpha = crate::novikov::mdeg_tuple(&alpha);
    if w.k >= 1 {
        if !crate::floer_datum::chain_is_zero(&datum.apply_d(&alpha)) {
            return None;
        }
        let mut v = alpha;
        for _ in 0..(w.k - 1) {
            if !datum.apply_d1(&v).is_zero() {
                return None;
            }
            v = datum.apply_u(&v);
        }
        let lead = datum.apply_d1(&v);
        let (ExtendedRat::Finite(l), ExtendedRat::Finite(a)) = (lead.mdeg(), mdeg_alpha) else {
            return None;
        };
        Some(ExtendedRat::Finite(l - a))
    } else {
        let a = w.a_elements();
        if a.iter().all(|x| x.is_zero()) {
            return None;
        }
        let mut rhs = crate::floer_datum::zero_chain(datum.len());
        for (i, ai) in a.iter().enumerate() {
            let mut v = datum.apply_d2(ai);
            for _ in 0..i {
                v = datum.apply_u(&v);
            }
            rhs = crate::floer_datum::chain_add(&rhs, &v);
        }
        if datum.apply_d(&alpha) != rhs {
            return None;
        }
        let ma = crate::novikov::mdeg_tuple(&a);
        let diff = match (ma, mdeg_alpha) {
            (_, ExtendedRat::Inf) => Rat::zero(),
            (ExtendedRat::Finite(x), ExtendedRat::Finite(y)) => {
                let d = x - y;
                if d.is_negative() {
                    Rat::zero()
                } else {
                    d
                }
            }
            (ExtendedRat::Inf, _) => return None,
        };
        Some(ExtendedRat::Finite(diff))
    }
}
