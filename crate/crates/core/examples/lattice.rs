//! Negative-definite lattices: short vectors, Γ upper bounds and class bounds.

use floer_gamma::lattice::{bound_from_class, e8, gamma_upper_bounds_from_lattice, minimal_norm, LatticeData};

fn main() {
    let l = e8();
    let mn = minimal_norm(&l);
    println!("E8: m = {}, {} minimal vectors", mn.norm, mn.vectors.len());
    if let Some(b) = gamma_upper_bounds_from_lattice(&l) {
        println!("  Γ(i) <= {} for i <= {}", b.bound, b.range_max);
    }
    let e = &mn.vectors[0];
    println!("  class of {e:?}: {:?}", bound_from_class(&l, e, None).unwrap());

    let d = LatticeData::diagonal(&[-1, -1, -1]).unwrap();
    println!("-I3: m = {}, bound {:?}", minimal_norm(&d).norm, gamma_upper_bounds_from_lattice(&d));

    let d = LatticeData::diagonal(&[-2, -2]).unwrap();
    for e in [[1, 0], [1, 1]] {
        println!("diag(-2,-2), class of {e:?}: {:?}", bound_from_class(&d, &e, None));
    }
}
