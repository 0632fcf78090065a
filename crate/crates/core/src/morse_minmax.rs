//! Min-max values of homology classes on finite Morse complexes:
//! f(σ) = min over cycles σ' ~ σ of the largest critical value in σ'.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::solve;
use crate::novikov::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MorseError {
    #[error("json: {0}")]
    Json(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("boundary {0} -> {1} does not lower the index by one")]
    IndexDrop(String, String),
    #[error("boundary {0} -> {1} does not lower the value")]
    ValueIncrease(String, String),
    #[error("boundary squared is nonzero at {0} -> {1}")]
    BoundarySquared(String, String),
    #[error("class is not a cycle: boundary has coefficient {1} on `{0}`")]
    NotACycle(String, Rat),
    #[error("class is null-homologous")]
    NullHomologous,
    #[error("class has {0} coefficients, complex has {1} generators")]
    Dimension(usize, usize),
    #[error("cannot parse class `{0}`")]
    ParseClass(String),
    #[error("perturbation has {0} entries, complex has {1} generators")]
    PerturbationLength(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorseGenerator {
    pub name: String,
    pub index: u32,
    pub value: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryEntry {
    pub from: String,
    pub to: String,
    pub coeff: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorseJson {
    pub name: String,
    pub generators: Vec<MorseGenerator>,
    #[serde(default)]
    pub boundary: Vec<BoundaryEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseComplex {
    pub name: String,
    pub generators: Vec<MorseGenerator>,
    /// `(to, from) -> coeff`, nonzero entries only.
    pub boundary: BTreeMap<(usize, usize), i64>,
}

impl MorseComplex {
    /// Builds and validates a complex.
    pub fn new(name: &str, generators: Vec<MorseGenerator>, boundary: BTreeMap<(usize, usize), i64>) -> Result<Self, MorseError> {
        let boundary = boundary.into_iter().filter(|(_, c)| *c != 0).collect();
        let m = MorseComplex { name: name.to_string(), generators, boundary };
        m.validate_with(true)?;
        Ok(m)
    }

    pub fn from_json_str(s: &str) -> Result<Self, MorseError> {
        let raw: MorseJson = serde_json::from_str(s).map_err(|e| MorseError::Json(e.to_string()))?;
        let mut names = BTreeMap::new();
        for (i, g) in raw.generators.iter().enumerate() {
            if names.insert(g.name.clone(), i).is_some() {
                return Err(MorseError::DuplicateGenerator(g.name.clone()));
            }
        }
        let idx = |s: &str| names.get(s).copied().ok_or_else(|| MorseError::UnknownGenerator(s.to_string()));
        let mut boundary = BTreeMap::new();
        for e in &raw.boundary {
            *boundary.entry((idx(&e.to)?, idx(&e.from)?)).or_insert(0) += e.coeff;
        }
        Self::new(&raw.name, raw.generators, boundary)
    }

    pub fn to_json(&self) -> MorseJson {
        MorseJson {
            name: self.name.clone(),
            generators: self.generators.clone(),
            boundary: self
                .boundary
                .iter()
                .map(|(&(t, f), &c)| BoundaryEntry {
                    from: self.generators[f].name.clone(),
                    to: self.generators[t].name.clone(),
                    coeff: c,
                })
                .collect(),
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

    fn name(&self, i: usize) -> String {
        self.generators[i].name.clone()
    }

    fn validate_with(&self, check_values: bool) -> Result<(), MorseError> {
        for (&(t, f), _) in &self.boundary {
            let (gt, gf) = (&self.generators[t], &self.generators[f]);
            if gt.index + 1 != gf.index {
                return Err(MorseError::IndexDrop(self.name(f), self.name(t)));
            }
            if check_values && gt.value >= gf.value {
                return Err(MorseError::ValueIncrease(self.name(f), self.name(t)));
            }
        }
        let n = self.len();
        for f in 0..n {
            let img = self.boundary_of_generator(f);
            let twice = self.apply_boundary(&img);
            if let Some(t) = twice.iter().position(|c| !c.is_zero()) {
                return Err(MorseError::BoundarySquared(self.name(f), self.name(t)));
            }
        }
        Ok(())
    }

    fn boundary_of_generator(&self, f: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.len()];
        for (&(t, g), &c) in &self.boundary {
            if g == f {
                v[t] = Rat::int(c);
            }
        }
        v
    }

    pub fn apply_boundary(&self, chain: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.len()];
        for (&(t, f), &c) in &self.boundary {
            if !chain[f].is_zero() {
                out[t] = &out[t] + &(&chain[f] * &Rat::int(c));
            }
        }
        out
    }

    /// Parses `"x:1,y:-1"` into a coefficient vector.
    pub fn parse_class(&self, s: &str) -> Result<Vec<i64>, MorseError> {
        let mut v = vec![0i64; self.len()];
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, coeff) = part.split_once(':').ok_or_else(|| MorseError::ParseClass(part.to_string()))?;
            let i = self.index_of(name.trim()).ok_or_else(|| MorseError::UnknownGenerator(name.trim().to_string()))?;
            v[i] += coeff.trim().parse::<i64>().map_err(|_| MorseError::ParseClass(part.to_string()))?;
        }
        Ok(v)
    }

    fn with_values(&self, values: Vec<Rat>) -> MorseComplex {
        let mut m = self.clone();
        for (g, v) in m.generators.iter_mut().zip(values) {
            g.value = v;
        }
        m
    }
}

fn to_rats(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&c| Rat::int(c)).collect()
}

/// Some `c` with `(∂c)_g = σ_g` for every `g` in `rows`, if one exists.
fn boundary_solution(m: &MorseComplex, sigma: &[Rat], rows: &[usize]) -> Option<Vec<Rat>> {
    let n = m.len();
    let cols: Vec<Vec<Rat>> = (0..n).map(|f| m.boundary_of_generator(f)).collect();
    let matrix: Vec<Vec<Rat>> = rows.iter().map(|&g| (0..n).map(|f| cols[f][g].clone()).collect()).collect();
    let rhs: Vec<Rat> = rows.iter().map(|&g| sigma[g].clone()).collect();
    solve(&matrix, &rhs, n)
}

fn check_cycle(m: &MorseComplex, sigma: &[i64]) -> Result<Vec<Rat>, MorseError> {
    if sigma.len() != m.len() {
        return Err(MorseError::Dimension(sigma.len(), m.len()));
    }
    let s = to_rats(sigma);
    let d = m.apply_boundary(&s);
    if let Some(g) = d.iter().position(|c| !c.is_zero()) {
        return Err(MorseError::NotACycle(m.name(g), d[g].clone()));
    }
    Ok(s)
}

/// Sublevel sweep: the least critical value `r` such that σ is homologous to a cycle supported in `{value <= r}`.
pub fn evaluate_class(m: &MorseComplex, sigma: &[i64]) -> Result<Rat, MorseError> {
    let s = check_cycle(m, sigma)?;
    let all: Vec<usize> = (0..m.len()).collect();
    if boundary_solution(m, &s, &all).is_some() {
        return Err(MorseError::NullHomologous);
    }
    let mut values: Vec<Rat> = m.generators.iter().map(|g| g.value.clone()).collect();
    values.sort();
    values.dedup();
    for r in values {
        let above: Vec<usize> = (0..m.len()).filter(|&g| m.generators[g].value > r).collect();
        if boundary_solution(m, &s, &above).is_some() {
            return Ok(r);
        }
    }
    unreachable!("the top value always admits the zero correction")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerturbedValue {
    #[serde(serialize_with = "crate::cli::ser_display")]
    pub norm: Rat,
    #[serde(serialize_with = "crate::cli::ser_display")]
    pub value: Rat,
    pub within_norm: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerturbationReport {
    #[serde(serialize_with = "crate::cli::ser_display")]
    pub value: Rat,
    pub perturbed: Vec<PerturbedValue>,
}

impl PerturbationReport {
    pub fn converges(&self) -> bool {
        self.perturbed.iter().all(|p| p.within_norm)
    }
}

/// Evaluates f + π_i for each offset vector π_i and checks `|f_i(σ) - f(σ)| <= |π_i|_∞`.
pub fn evaluate_with_perturbations(m: &MorseComplex, sigma: &[i64], offsets: &[Vec<Rat>]) -> Result<PerturbationReport, MorseError> {
    let value = evaluate_class(m, sigma)?;
    let mut perturbed = Vec::new();
    for off in offsets {
        if off.len() != m.len() {
            return Err(MorseError::PerturbationLength(off.len(), m.len()));
        }
        let values = m.generators.iter().zip(off).map(|(g, o)| &g.value + o).collect();
        let pm = m.with_values(values);
        pm.validate_with(false)?;
        let v = evaluate_class(&pm, sigma)?;
        let norm = off.iter().map(Rat::abs).max().unwrap_or_else(Rat::zero);
        perturbed.push(PerturbedValue { within_norm: (&v - &value).abs() <= norm, norm, value: v });
    }
    Ok(PerturbationReport { value, perturbed })
}
