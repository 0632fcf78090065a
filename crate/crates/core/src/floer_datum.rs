//! Finite chain-level model of an integral homology sphere.
//!
//! A datum is a list of generators, each carrying a grading mod 8 and an energy
//! lift `r_g`, together with the Λ-linear maps `d`, `U`, `D1`, `D2`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::novikov::{NovikovElement, Rat};

/// A vector in the chain group, indexed by generator position.
pub type Chain = Vec<NovikovElement>;

pub fn zero_chain(n: usize) -> Chain {
    vec![NovikovElement::zero(); n]
}

pub fn chain_is_zero(c: &[NovikovElement]) -> bool {
    c.iter().all(|a| a.is_zero())
}

pub fn chain_add(a: &[NovikovElement], b: &[NovikovElement]) -> Chain {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn chain_sub(a: &[NovikovElement], b: &[NovikovElement]) -> Chain {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn chain_neg(a: &[NovikovElement]) -> Chain {
    a.iter().map(|x| x.neg()).collect()
}

pub fn chain_scale(a: &[NovikovElement], s: &NovikovElement) -> Chain {
    a.iter().map(|x| x.mul(s)).collect()
}

pub fn basis_chain(n: usize, i: usize) -> Chain {
    let mut c = zero_chain(n);
    c[i] = NovikovElement::one();
    c
}

/// Sparse matrix over Λ; entry `(row, col)` is the coefficient of the `row`
/// output on the `col` input.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LambdaMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), NovikovElement>,
}

impl LambdaMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        LambdaMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn scalar(n: usize, s: &NovikovElement) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.add_entry(i, i, s.clone());
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &NovikovElement::one())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> NovikovElement {
        self.entries.get(&(row, col)).cloned().unwrap_or_default()
    }

    pub fn add_entry(&mut self, row: usize, col: usize, v: NovikovElement) {
        assert!(row < self.rows && col < self.cols, "entry out of bounds");
        let cur = self.entries.remove(&(row, col)).unwrap_or_default().add(&v);
        if !cur.is_zero() {
            self.entries.insert((row, col), cur);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &NovikovElement)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn apply(&self, v: &[NovikovElement]) -> Chain {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        let mut out = zero_chain(self.rows);
        for (&(r, c), a) in &self.entries {
            if !v[c].is_zero() {
                out[r] = out[r].add(&a.mul(&v[c]));
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LambdaMatrix) -> LambdaMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in composition");
        let mut out = LambdaMatrix::zero(self.rows, other.cols);
        let mut by_row: HashMap<usize, Vec<(usize, &NovikovElement)>> = HashMap::new();
        for (&(r, c), a) in &other.entries {
            by_row.entry(r).or_default().push((c, a));
        }
        for (&(r, k), a) in &self.entries {
            if let Some(list) = by_row.get(&k) {
                for (c, b) in list {
                    out.add_entry(r, *c, a.mul(b));
                }
            }
        }
        out
    }

    pub fn add(&self, o: &LambdaMatrix) -> LambdaMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "dimension mismatch");
        let mut out = self.clone();
        for (&(r, c), a) in &o.entries {
            out.add_entry(r, c, a.clone());
        }
        out
    }

    pub fn scale(&self, s: &NovikovElement) -> LambdaMatrix {
        let mut out = LambdaMatrix::zero(self.rows, self.cols);
        for (&(r, c), a) in &self.entries {
            out.add_entry(r, c, a.mul(s));
        }
        out
    }

    pub fn neg(&self) -> LambdaMatrix {
        self.scale(&NovikovElement::constant(Rat::int(-1)))
    }

    pub fn sub(&self, o: &LambdaMatrix) -> LambdaMatrix {
        self.add(&o.neg())
    }

    /// Dense rational matrix obtained by setting λ = 1.
    pub fn evaluate_at_one(&self) -> Vec<Vec<Rat>> {
        let mut m = vec![vec![Rat::zero(); self.cols]; self.rows];
        for (&(r, c), a) in &self.entries {
            m[r][c] = a.evaluate_at_one();
        }
        m
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Generator {
    pub name: String,
    pub grading: u8,
    pub energy_lift: Rat,
}

/// Generators plus the structure maps `d`, `U` (n×n), `D1` (1×n) and `D2` (n×1).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FloerDatum {
    pub name: String,
    pub generators: Vec<Generator>,
    pub d: LambdaMatrix,
    pub u: LambdaMatrix,
    pub d1: LambdaMatrix,
    pub d2: LambdaMatrix,
}

pub fn residue(i: i64) -> u8 {
    i.rem_euclid(8) as u8
}

#[derive(Debug, Error)]
pub enum DatumError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("empty generator name")]
    EmptyName,
    #[error("grading {1} of generator `{0}` is outside 0..=7")]
    Grading(String, i64),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate entry {0}")]
    DuplicateEntry(String),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub coeff: Rat,
    pub exp: Rat,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GeneratorJson {
    pub name: String,
    pub grading: i64,
    pub energy_lift: Rat,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct EntryJson {
    pub from: String,
    pub to: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FromJson {
    pub from: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ToJson {
    pub to: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DatumJson {
    pub name: String,
    pub generators: Vec<GeneratorJson>,
    #[serde(default)]
    pub d: Vec<EntryJson>,
    #[serde(default)]
    pub u: Vec<EntryJson>,
    #[serde(default)]
    pub d1: Vec<FromJson>,
    #[serde(default)]
    pub d2: Vec<ToJson>,
}

pub fn terms_to_element(terms: &[TermJson]) -> NovikovElement {
    NovikovElement::from_terms(terms.iter().map(|t| (t.coeff.clone(), t.exp.clone())))
}

pub fn element_to_terms(a: &NovikovElement) -> Vec<TermJson> {
    a.terms().map(|(e, c)| TermJson { coeff: c.clone(), exp: e.clone() }).collect()
}

/// Fills a matrix from named entries; `lookup_row`/`lookup_col` resolve names.
pub(crate) fn fill_entries(
    m: &mut LambdaMatrix,
    entries: &[(String, String, Vec<TermJson>)],
    lookup_row: &dyn Fn(&str) -> Option<usize>,
    lookup_col: &dyn Fn(&str) -> Option<usize>,
    label: &str,
) -> Result<(), DatumError> {
    for (from, to, terms) in entries {
        let c = lookup_col(from).ok_or_else(|| DatumError::UnknownGenerator(from.clone()))?;
        let r = lookup_row(to).ok_or_else(|| DatumError::UnknownGenerator(to.clone()))?;
        if m.entries.contains_key(&(r, c)) {
            return Err(DatumError::DuplicateEntry(format!("{label} {from}->{to}")));
        }
        m.add_entry(r, c, terms_to_element(terms));
    }
    Ok(())
}

impl FloerDatum {
    /// The datum with no generators (the 3-sphere).
    pub fn empty(name: &str) -> Self {
        FloerDatum {
            name: name.to_string(),
            generators: Vec::new(),
            d: LambdaMatrix::zero(0, 0),
            u: LambdaMatrix::zero(0, 0),
            d1: LambdaMatrix::zero(1, 0),
            d2: LambdaMatrix::zero(0, 1),
        }
    }

    pub fn with_generators(name: &str, generators: Vec<Generator>) -> Self {
        let n = generators.len();
        FloerDatum {
            name: name.to_string(),
            generators,
            d: LambdaMatrix::zero(n, n),
            u: LambdaMatrix::zero(n, n),
            d1: LambdaMatrix::zero(1, n),
            d2: LambdaMatrix::zero(n, 1),
        }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn grading(&self, i: usize) -> u8 {
        self.generators[i].grading
    }

    pub fn lift(&self, i: usize) -> &Rat {
        &self.generators[i].energy_lift
    }

    /// Indices of generators whose grading is `i` mod 8.
    pub fn generators_in(&self, i: i64) -> Vec<usize> {
        let r = residue(i);
        (0..self.len()).filter(|&g| self.grading(g) == r).collect()
    }

    pub fn apply_d(&self, c: &[NovikovElement]) -> Chain {
        self.d.apply(c)
    }

    pub fn apply_u(&self, c: &[NovikovElement]) -> Chain {
        self.u.apply(c)
    }

    pub fn apply_d1(&self, c: &[NovikovElement]) -> NovikovElement {
        self.d1.apply(c).pop().unwrap()
    }

    pub fn apply_d2(&self, a: &NovikovElement) -> Chain {
        self.d2.apply(std::slice::from_ref(a))
    }

    /// Multiplies each generator's coefficient by (-1)^{grading}.
    pub fn grading_sign(&self, c: &[NovikovElement]) -> Chain {
        c.iter()
            .enumerate()
            .map(|(i, a)| if self.grading(i) % 2 == 1 { a.neg() } else { a.clone() })
            .collect()
    }

    pub fn from_json_str(s: &str) -> Result<Self, DatumError> {
        let raw: DatumJson = serde_json::from_str(s)?;
        Self::from_json(&raw)
    }

    pub fn from_json(raw: &DatumJson) -> Result<Self, DatumError> {
        let mut gens = Vec::new();
        for g in &raw.generators {
            if g.name.is_empty() {
                return Err(DatumError::EmptyName);
            }
            if gens.iter().any(|h: &Generator| h.name == g.name) {
                return Err(DatumError::DuplicateGenerator(g.name.clone()));
            }
            if !(0..8).contains(&g.grading) {
                return Err(DatumError::Grading(g.name.clone(), g.grading));
            }
            gens.push(Generator { name: g.name.clone(), grading: g.grading as u8, energy_lift: g.energy_lift.clone() });
        }
        let mut datum = FloerDatum::with_generators(&raw.name, gens);
        let idx = |s: &str| datum.index_of(s);
        let unit = |s: &str| if s.is_empty() { Some(0) } else { None };
        let pairs = |v: &[EntryJson]| -> Vec<(String, String, Vec<TermJson>)> {
            v.iter().map(|e| (e.from.clone(), e.to.clone(), e.terms.clone())).collect()
        };
        let d_entries = pairs(&raw.d);
        let u_entries = pairs(&raw.u);
        let d1_entries: Vec<_> = raw.d1.iter().map(|e| (e.from.clone(), String::new(), e.terms.clone())).collect();
        let d2_entries: Vec<_> = raw.d2.iter().map(|e| (String::new(), e.to.clone(), e.terms.clone())).collect();
        let (mut d, mut u, mut d1, mut d2) =
            (datum.d.clone(), datum.u.clone(), datum.d1.clone(), datum.d2.clone());
        fill_entries(&mut d, &d_entries, &idx, &idx, "d")?;
        fill_entries(&mut u, &u_entries, &idx, &idx, "u")?;
        fill_entries(&mut d1, &d1_entries, &unit, &idx, "d1")?;
        fill_entries(&mut d2, &d2_entries, &idx, &unit, "d2")?;
        datum.d = d;
        datum.u = u;
        datum.d1 = d1;
        datum.d2 = d2;
        Ok(datum)
    }

    pub fn to_json(&self) -> DatumJson {
        let name = |i: usize| self.generators[i].name.clone();
        let entries = |m: &LambdaMatrix| -> Vec<EntryJson> {
            m.entries()
                .map(|(&(r, c), a)| EntryJson { from: name(c), to: name(r), terms: element_to_terms(a) })
                .collect()
        };
        DatumJson {
            name: self.name.clone(),
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorJson {
                    name: g.name.clone(),
                    grading: g.grading as i64,
                    energy_lift: g.energy_lift.clone(),
                })
                .collect(),
            d: entries(&self.d),
            u: entries(&self.u),
            d1: self.d1.entries().map(|(&(_, c), a)| FromJson { from: name(c), terms: element_to_terms(a) }).collect(),
            d2: self.d2.entries().map(|(&(r, _), a)| ToJson { to: name(r), terms: element_to_terms(a) }).collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("datum serializes")
    }
}

/// One failed constraint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: String,
    pub detail: String,
}

/// Outcome of a verification pass; empty means success.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok() -> Self {
        Self::default()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, check: impl Into<String>, detail: impl Into<String>) {
        self.violations.push(Violation { check: check.into(), detail: detail.into() });
    }

    pub fn extend(&mut self, o: ValidationReport) {
        self.violations.extend(o.violations);
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let lines: Vec<String> = self.violations.iter().map(|v| format!("{}: {}", v.check, v.detail)).collect();
        write!(f, "{}", lines.join("\n"))
    }
}

/// Records every nonzero entry of `m` as a violation of `label`.
pub(crate) fn report_nonzero(
    rep: &mut ValidationReport,
    label: &str,
    m: &LambdaMatrix,
    row_name: &dyn Fn(usize) -> String,
    col_name: &dyn Fn(usize) -> String,
) {
    for (&(r, c), a) in m.entries() {
        rep.push(label, format!("entry ({}, {}) = {}", row_name(r), col_name(c), a));
    }
}

pub fn validate_structure(datum: &FloerDatum) -> ValidationReport {
    let mut rep = ValidationReport::ok();
    let g = |i: usize| datum.grading(i) as i64;
    let name = |i: usize| datum.generators[i].name.clone();
    for (&(h, s), _) in datum.d.entries() {
        if residue(g(s) - 1) != g(h) as u8 {
            rep.push("grading", format!("d entry {} -> {} does not have degree -1", name(s), name(h)));
        }
    }
    for (&(h, s), _) in datum.u.entries() {
        if residue(g(s) - 4) != g(h) as u8 {
            rep.push("grading", format!("u entry {} -> {} does not have degree -4", name(s), name(h)));
        }
    }
    for (&(_, s), _) in datum.d1.entries() {
        if g(s) != 1 {
            rep.push("grading", format!("d1 is nonzero on {} of grading {}", name(s), g(s)));
        }
    }
    for (&(h, _), _) in datum.d2.entries() {
        if g(h) != 4 {
            rep.push("grading", format!("d2 lands in {} of grading {}", name(h), g(h)));
        }
    }
    rep.extend(verify_tilde_differential(datum));
    rep
}

/// The four component identities of the squared tilde differential.
pub fn verify_tilde_differential(datum: &FloerDatum) -> ValidationReport {
    let mut rep = ValidationReport::ok();
    let name = |i: usize| datum.generators[i].name.clone();
    let one = |_: usize| "1".to_string();
    let (d, u, d1, d2) = (&datum.d, &datum.u, &datum.d1, &datum.d2);
    report_nonzero(&mut rep, "d∘d = 0", &d.compose(d), &name, &name);
    report_nonzero(&mut rep, "D1∘d = 0", &d1.compose(d), &one, &name);
    report_nonzero(&mut rep, "d∘D2 = 0", &d.compose(d2), &name, &one);
    let four = u.compose(d).sub(&d.compose(u)).add(&d2.compose(d1));
    report_nonzero(&mut rep, "U∘d - d∘U + D2∘D1 = 0", &four, &name, &name);
    rep
}

pub fn validate_homogeneity(datum: &FloerDatum) -> ValidationReport {
    let mut rep = ValidationReport::ok();
    let r = |i: usize| datum.lift(i).clone();
    let name = |i: usize| datum.generators[i].name.clone();
    for (label, m) in [("d", &datum.d), ("u", &datum.u)] {
        for (&(h, g), a) in m.entries() {
            for (e, _) in a.terms() {
                if !(r(g) + e - r(h)).is_integer() {
                    rep.push("homogeneity", format!("{label} entry {} -> {} exponent {e}", name(g), name(h)));
                }
            }
        }
    }
    for (&(_, g), a) in datum.d1.entries() {
        for (e, _) in a.terms() {
            if !(r(g) + e).is_integer() {
                rep.push("homogeneity", format!("d1 on {} exponent {e}", name(g)));
            }
        }
    }
    for (&(h, _), a) in datum.d2.entries() {
        for (e, _) in a.terms() {
            if !(e - &r(h)).is_integer() {
                rep.push("homogeneity", format!("d2 into {} exponent {e}", name(h)));
            }
        }
    }
    rep
}

/// Full validation: structure, tilde identities and homogeneity.
pub fn validate(datum: &FloerDatum) -> ValidationReport {
    let mut rep = validate_structure(datum);
    rep.extend(validate_homogeneity(datum));
    rep
}

/// `λ^{shift} · Σ s_g λ^{r_g} g` over generators of one grading residue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousVector {
    pub residue: u8,
    pub shift: Rat,
    pub coeffs: BTreeMap<usize, Rat>,
}

impl HomogeneousVector {
    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|c| c.is_zero())
    }

    pub fn to_chain(&self, datum: &FloerDatum) -> Chain {
        let mut c = zero_chain(datum.len());
        for (&g, s) in &self.coeffs {
            c[g] = NovikovElement::monomial(s.clone(), &self.shift + datum.lift(g));
        }
        c
    }
}

/// Keeps, for each generator `g` of the given residue, the coefficient of `λ^{shift + r_g}`.
pub fn project_homogeneous(datum: &FloerDatum, element: &[NovikovElement], shift: &Rat, res: i64) -> HomogeneousVector {
    let residue = residue(res);
    let mut coeffs = BTreeMap::new();
    for g in datum.generators_in(res) {
        let c = element[g].coeff(&(shift + datum.lift(g)));
        if !c.is_zero() {
            coeffs.insert(g, c);
        }
    }
    HomogeneousVector { residue, shift: shift.clone(), coeffs }
}

/// The projection `P_r` on Λ: keeps the coefficient of `λ^r`.
pub fn project_scalar(a: &NovikovElement, r: &Rat) -> NovikovElement {
    NovikovElement::monomial(a.coeff(r), r.clone())
}

/// The four structure maps evaluated at λ = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalDatum {
    pub gradings: Vec<u8>,
    pub d: Vec<Vec<Rat>>,
    pub u: Vec<Vec<Rat>>,
    pub d1: Vec<Rat>,
    pub d2: Vec<Rat>,
}

impl FloerDatum {
    pub fn evaluate_at_one(&self) -> RationalDatum {
        RationalDatum {
            gradings: self.generators.iter().map(|g| g.grading).collect(),
            d: self.d.evaluate_at_one(),
            u: self.u.evaluate_at_one(),
            d1: self.d1.evaluate_at_one().pop().unwrap_or_default(),
            d2: self.d2.evaluate_at_one().into_iter().map(|mut r| r.pop().unwrap()).collect(),
        }
    }
}

impl RationalDatum {
    pub fn len(&self) -> usize {
        self.gradings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gradings.is_empty()
    }

    pub fn apply(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
        m.iter().map(|row| crate::linalg::dot(row, v)).collect()
    }

    /// True when the four tilde identities hold over Q.
    pub fn tilde_identities_hold(&self) -> bool {
        let n = self.len();
        let mul = |a: &Vec<Vec<Rat>>, b: &Vec<Vec<Rat>>| -> Vec<Vec<Rat>> {
            (0..a.len())
                .map(|i| (0..b.first().map_or(0, |r| r.len())).map(|j| {
                    (0..b.len()).fold(Rat::zero(), |acc, k| acc + &a[i][k] * &b[k][j])
                }).collect())
                .collect()
        };
        let zero = |m: &Vec<Vec<Rat>>| m.iter().all(|r| r.iter().all(|x| x.is_zero()));
        let d1 = vec![self.d1.clone()];
        let d2: Vec<Vec<Rat>> = self.d2.iter().map(|x| vec![x.clone()]).collect();
        let dd = mul(&self.d, &self.d);
        let d1d = mul(&d1, &self.d);
        let dd2 = mul(&self.d, &d2);
        let ud = mul(&self.u, &self.d);
        let du = mul(&self.d, &self.u);
        let d2d1 = mul(&d2, &d1);
        let four: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| &(&ud[i][j] - &du[i][j]) + &d2d1[i][j]).collect())
            .collect();
        zero(&dd) && (n == 0 || zero(&d1d)) && zero(&dd2) && zero(&four)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn fixtures_validate() {
        for name in fixtures::DATUM_NAMES {
            let d = fixtures::datum(name).unwrap();
            let rep = validate(&d);
            assert!(rep.is_ok(), "{name}: {rep}");
        }
    }

    #[test]
    fn wrong_grading_is_caught() {
        let mut d = fixtures::datum("sigma_2_3_5").unwrap();
        d.generators[1].grading = 4;
        let rep = validate_structure(&d);
        assert!(!rep.is_ok());
        assert!(rep.violations.iter().any(|v| v.detail.contains("degree -4")));
    }

    #[test]
    fn single_arrow_passes() {
        let gens = vec![
            Generator { name: "g5".into(), grading: 5, energy_lift: r("0") },
            Generator { name: "g4".into(), grading: 4, energy_lift: r("1/3") },
        ];
        let mut d = FloerDatum::with_generators("arrow", gens);
        d.d.add_entry(1, 0, NovikovElement::lambda(r("1/3")));
        assert!(verify_tilde_differential(&d).is_ok());
        assert!(validate_homogeneity(&d).is_ok());
    }

    #[test]
    fn identity_four_violation_is_reported() {
        let gens = vec![
            Generator { name: "a".into(), grading: 1, energy_lift: r("0") },
            Generator { name: "b".into(), grading: 4, energy_lift: r("0") },
        ];
        let mut d = FloerDatum::with_generators("bad", gens);
        d.d1.add_entry(0, 0, NovikovElement::one());
        d.d2.add_entry(1, 0, NovikovElement::one());
        let rep = verify_tilde_differential(&d);
        assert_eq!(rep.violations.len(), 1);
        assert!(rep.violations[0].check.starts_with("U∘d"));
        assert!(rep.violations[0].detail.contains("(b, a)"));
    }

    #[test]
    fn homogeneity_examples() {
        assert!(validate_homogeneity(&fixtures::datum("sigma_2_3_5").unwrap()).is_ok());
        assert!(validate_homogeneity(&fixtures::datum("neg_sigma_2_3_5").unwrap()).is_ok());
        let mut d = fixtures::datum("sigma_2_3_5").unwrap();
        let b = d.index_of("beta").unwrap();
        d.generators[b].energy_lift = Rat::zero();
        let rep = validate_homogeneity(&d);
        assert_eq!(rep.violations.len(), 1);
        assert!(rep.violations[0].detail.starts_with("u entry"));
    }

    #[test]
    fn projection_examples() {
        let d = fixtures::datum("sigma_2_3_5").unwrap();
        let a = d.index_of("alpha").unwrap();
        let mut el = zero_chain(2);
        el[a] = NovikovElement::lambda(r("-1/120")).add(&NovikovElement::lambda(r("7/8")));
        let p = project_homogeneous(&d, &el, &Rat::zero(), 1);
        assert_eq!(p.coeffs.get(&a), Some(&Rat::one()));
        assert_eq!(p.coeffs.len(), 1);
        let b = d.index_of("beta").unwrap();
        let el = basis_chain(2, b);
        assert!(project_homogeneous(&d, &el, &Rat::zero(), 1).is_zero());
        assert!(project_homogeneous(&d, &zero_chain(2), &Rat::zero(), 1).is_zero());
    }

    #[test]
    fn json_round_trip_and_rejections() {
        for name in fixtures::DATUM_NAMES {
            let d = fixtures::datum(name).unwrap();
            let back = FloerDatum::from_json_str(&d.to_json_string()).unwrap();
            assert_eq!(back, d);
        }
        let bad = r#"{"name":"x","generators":[],"extra":1}"#;
        assert!(matches!(FloerDatum::from_json_str(bad), Err(DatumError::Json(_))));
        let bad = r#"{"name":"x","generators":[{"name":"a","grading":9,"energy_lift":"0"}]}"#;
        assert!(matches!(FloerDatum::from_json_str(bad), Err(DatumError::Grading(_, 9))));
        let bad = r#"{"name":"x","generators":[{"name":"a","grading":1,"energy_lift":"0"}],
            "d":[{"from":"a","to":"zz","terms":[]}]}"#;
        assert!(matches!(FloerDatum::from_json_str(bad), Err(DatumError::UnknownGenerator(_))));
    }

    #[test]
    fn evaluation_at_one_keeps_identities() {
        for name in fixtures::DATUM_NAMES {
            let d = fixtures::datum(name).unwrap();
            assert!(d.evaluate_at_one().tilde_identities_hold(), "{name}");
        }
    }
}
