//! Seeded random generators for valid inputs: Floer data with `d = 0`,
//! trivial-extension cobordisms, negative-definite lattices and Morse complexes.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cobordism::CobordismDatum;
use crate::floer_datum::{FloerDatum, Generator, LambdaMatrix};
use crate::lattice::LatticeData;
use crate::morse_minmax::{MorseComplex, MorseGenerator};
use crate::novikov::{NovikovElement, Rat};

const DENOMS: [i64; 8] = [1, 2, 3, 4, 5, 6, 8, 12];

fn small_positive<R: Rng>(rng: &mut R) -> Rat {
    Rat::new(rng.gen_range(1..=5), *DENOMS.choose(rng).unwrap())
}

fn nonzero_coeff<R: Rng>(rng: &mut R) -> Rat {
    let c = rng.gen_range(1..=3);
    Rat::int(if rng.gen_bool(0.5) { c } else { -c })
}

fn random_term<R: Rng>(rng: &mut R) -> NovikovElement {
    let exp = Rat::new(rng.gen_range(0..=8), *DENOMS.choose(rng).unwrap());
    NovikovElement::monomial(nonzero_coeff(rng), exp)
}

/// Shape of a random datum, kept for oracles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerShape {
    /// Lengths of `U`-towers ending in `D1` (positive) or starting at `D2` (negative).
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
    pub dead: usize,
}

impl TowerShape {
    /// Largest k with Γ(k) finite.
    pub fn threshold(&self) -> i64 {
        if let Some(&l) = self.positive.iter().max() {
            l as i64
        } else if let Some(&m) = self.negative.iter().max() {
            -(m as i64)
        } else {
            0
        }
    }
}

/// A valid datum with `d = 0` built from `U`-towers of even length.
pub fn random_datum_with_shape<R: Rng>(rng: &mut R, name: &str) -> (FloerDatum, TowerShape) {
    let towers = rng.gen_range(0..=2);
    let lengths: Vec<usize> = (0..towers).map(|_| *[2usize, 2, 4].choose(rng).unwrap()).collect();
    let positive = rng.gen_bool(0.5);
    let dead = rng.gen_range(0..=2);
    let mut gens = Vec::new();
    let mut u = Vec::new();
    let mut d1 = Vec::new();
    let mut d2 = Vec::new();
    for (t, &len) in lengths.iter().enumerate() {
        let mut lift = if positive { -small_positive(rng) } else { small_positive(rng) };
        let base = gens.len();
        for j in 0..len {
            let grading = match (positive, j % 2) {
                (true, 0) => 1,
                (true, _) => 5,
                (false, 0) => 4,
                (false, _) => 0,
            };
            gens.push(Generator { name: format!("t{t}g{j}"), grading, energy_lift: lift.clone() });
            let step = small_positive(rng);
            lift = if positive { &lift - &step } else { &lift + &step };
        }
        if positive {
            d1.push((base, NovikovElement::monomial(nonzero_coeff(rng), -gens[base].energy_lift.clone())));
            for j in 0..len - 1 {
                let (lo, hi) = (base + j, base + j + 1);
                let e = &gens[lo].energy_lift - &gens[hi].energy_lift;
                u.push((lo, hi, NovikovElement::monomial(nonzero_coeff(rng), e)));
            }
        } else {
            d2.push((base, NovikovElement::monomial(nonzero_coeff(rng), gens[base].energy_lift.clone())));
            for j in 0..len - 1 {
                let (src, dst) = (base + j, base + j + 1);
                let e = &gens[dst].energy_lift - &gens[src].energy_lift;
                u.push((dst, src, NovikovElement::monomial(nonzero_coeff(rng), e)));
            }
        }
    }
    for j in 0..dead {
        let lift = Rat::new(rng.gen_range(-6..=6), *DENOMS.choose(rng).unwrap());
        gens.push(Generator { name: format!("x{j}"), grading: rng.gen_range(0..8), energy_lift: lift });
    }
    let mut datum = FloerDatum::with_generators(name, gens);
    for (r, c, a) in u {
        datum.u.add_entry(r, c, a);
    }
    for (c, a) in d1 {
        datum.d1.add_entry(0, c, a);
    }
    for (r, a) in d2 {
        datum.d2.add_entry(r, 0, a);
    }
    let shape = if positive {
        TowerShape { positive: lengths, negative: vec![], dead }
    } else {
        TowerShape { positive: vec![], negative: lengths, dead }
    };
    (datum, shape)
}

pub fn random_datum<R: Rng>(rng: &mut R, name: &str) -> FloerDatum {
    random_datum_with_shape(rng, name).0
}

/// `φ = c·id` plus random `Δ1` or `Δ2` (whichever the datum allows) and random `μ`.
pub fn random_trivial_extension<R: Rng>(rng: &mut R, datum: &FloerDatum) -> CobordismDatum {
    let c = rng.gen_range(1..=3u64);
    let mut cob = CobordismDatum::trivial(datum, datum, c);
    cob.phi = LambdaMatrix::scalar(datum.len(), &NovikovElement::constant(Rat::int(c as i64)));
    let use_delta1 = if datum.d2.is_zero() && datum.d1.is_zero() { rng.gen_bool(0.5) } else { datum.d2.is_zero() };
    for g in 0..datum.len() {
        if use_delta1 && datum.grading(g) == 1 && rng.gen_bool(0.6) {
            cob.delta1.add_entry(0, g, random_term(rng));
        }
        if !use_delta1 && datum.grading(g) == 4 && rng.gen_bool(0.6) {
            cob.delta2.add_entry(g, 0, random_term(rng));
        }
    }
    for s in 0..datum.len() {
        for t in 0..datum.len() {
            let want = (datum.grading(s) as i64 - 3).rem_euclid(8) as u8;
            if datum.grading(t) == want && rng.gen_bool(0.5) {
                cob.mu.add_entry(t, s, random_term(rng));
            }
        }
    }
    cob
}

/// `-BᵀB` for a random nonsingular integer `B` of rank at most `max_rank`.
pub fn random_lattice<R: Rng>(rng: &mut R, max_rank: usize) -> LatticeData {
    loop {
        let n = rng.gen_range(1..=max_rank);
        let b: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        let gram: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| -(0..n).map(|k| b[k][i] * b[k][j]).sum::<i64>()).collect())
            .collect();
        if let Ok(l) = LatticeData::new(gram) {
            return l;
        }
    }
}

/// A random Morse complex with at most ten generators and candidate cycles.
pub fn random_morse_complex<R: Rng>(rng: &mut R, self_indexing: bool) -> (MorseComplex, Vec<Vec<i64>>) {
    let mut gens: Vec<MorseGenerator> = Vec::new();
    let value = |rng: &mut R, index: u32, floor: &Rat| -> Rat {
        if self_indexing {
            Rat::int(index as i64)
        } else {
            floor + &Rat::new(rng.gen_range(1..=6), *DENOMS.choose(rng).unwrap())
        }
    };
    let nv = rng.gen_range(1..=4);
    for i in 0..nv {
        let v = value(rng, 0, &Rat::int(-1));
        gens.push(MorseGenerator { name: format!("v{i}"), index: 0, value: v });
    }
    let mut boundary = BTreeMap::new();
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..rng.gen_range(0..=4) {
        let (a, b) = (rng.gen_range(0..nv), rng.gen_range(0..nv));
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let floor = gens[lo].value.clone().max(gens[hi].value.clone());
        let idx = gens.len();
        let v = value(rng, 1, &floor);
        gens.push(MorseGenerator { name: format!("e{i}"), index: 1, value: v });
        if lo != hi {
            boundary.insert((hi, idx), 1);
            boundary.insert((lo, idx), -1);
        }
        edges.push((idx, lo, hi));
    }
    let mut pairs = Vec::new();
    for (x, &(e1, a1, b1)) in edges.iter().enumerate() {
        for &(e2, a2, b2) in &edges[x + 1..] {
            if (a1, b1) == (a2, b2) {
                pairs.push((e1, e2));
            }
        }
    }
    let mut faces: Vec<(usize, usize, usize)> = Vec::new();
    if !pairs.is_empty() {
        for i in 0..rng.gen_range(0..=2) {
            let &(e1, e2) = pairs.choose(rng).unwrap();
            let floor = gens[e1].value.clone().max(gens[e2].value.clone());
            let idx = gens.len();
            let v = value(rng, 2, &floor);
            gens.push(MorseGenerator { name: format!("f{i}"), index: 2, value: v });
            boundary.insert((e1, idx), 1);
            boundary.insert((e2, idx), -1);
            faces.push((idx, e1, e2));
        }
    }
    let n = gens.len();
    let unit = |i: usize, c: i64| {
        let mut v = vec![0i64; n];
        v[i] = c;
        v
    };
    let add = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<i64>>();
    let mut classes = Vec::new();
    for v in 0..nv {
        classes.push(unit(v, if rng.gen_bool(0.5) { 1 } else { -1 }));
        for u in v + 1..nv {
            classes.push(add(&unit(v, 1), &unit(u, 1)));
            classes.push(add(&unit(v, 1), &unit(u, -1)));
        }
    }
    for &(e, lo, hi) in &edges {
        if lo == hi {
            classes.push(unit(e, 1));
        }
    }
    for &(e1, e2) in &pairs {
        classes.push(add(&unit(e1, 1), &unit(e2, -1)));
    }
    for (x, &(f1, a1, b1)) in faces.iter().enumerate() {
        for &(f2, a2, b2) in &faces[x + 1..] {
            if (a1, b1) == (a2, b2) {
                classes.push(add(&unit(f1, 1), &unit(f2, -1)));
            }
        }
    }
    let m = MorseComplex::new("random", gens, boundary).expect("random complex is valid");
    (m, classes)
}
