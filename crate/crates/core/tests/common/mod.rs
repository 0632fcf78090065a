//! Oracles shared by the integration tests.

use floer_gamma::lattice::LatticeData;
use floer_gamma::morse_minmax::MorseComplex;
use floer_gamma::novikov::Rat;

/// Brute-force min-max: search `c` with coefficients in [-2, 2] over the cells one index up.
pub fn morse_oracle(m: &MorseComplex, sigma: &[i64]) -> Option<Rat> {
    let idx = m.generators.iter().zip(sigma).find(|(_, &c)| c != 0).map(|(g, _)| g.index)?;
    let up: Vec<usize> = (0..m.len()).filter(|&g| m.generators[g].index == idx + 1).collect();
    let mut best: Option<Rat> = None;
    let mut coeffs = vec![-2i64; up.len()];
    loop {
        let mut rest: Vec<i64> = sigma.to_vec();
        for (&(t, f), &b) in &m.boundary {
            if let Some(p) = up.iter().position(|&u| u == f) {
                rest[t] -= b * coeffs[p];
            }
        }
        let top = rest.iter().enumerate().filter(|(_, &c)| c != 0).map(|(g, _)| m.generators[g].value.clone()).max();
        let v = top?;
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
        let mut i = 0;
        while i < coeffs.len() && coeffs[i] == 2 {
            coeffs[i] = -2;
            i += 1;
        }
        if i == coeffs.len() {
            return best;
        }
        coeffs[i] += 1;
    }
}

/// A vector of least norm in the parity class of `p`.
pub fn minimal_in_class(l: &LatticeData, p: &[i64]) -> Vec<i64> {
    l.short_vectors(-l.q(p))
        .into_iter()
        .filter(|v| v.iter().zip(p).all(|(a, b)| (a - b).rem_euclid(2) == 0))
        .min_by_key(|v| -l.q(v))
        .unwrap_or_else(|| p.to_vec())
}
