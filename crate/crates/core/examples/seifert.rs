//! Seifert fibered spaces: R-invariants two ways, Γ predictions and Whitehead-double bounds.

use floer_gamma::seifert::{
    furuta_independence, gamma_prediction, r_cotangent_value, seifert_invariants, whitehead_double_bounds,
    SeifertData, TrigCache,
};

fn main() {
    let mut cache = TrigCache::new();
    for a in [vec![2, 3, 5], vec![2, 3, 7], vec![2, 3, 11], vec![3, 4, 5, 7], vec![2, 3, 5, 29, 869]] {
        let s = SeifertData::new(&a).unwrap();
        let inv = seifert_invariants(&s);
        let cot = r_cotangent_value(&s, &mut cache);
        println!("{a:?}: R = {} (cotangent {} ± {:.1e}), b = {}", inv.r, cot.rounded, cot.residual, inv.b);
    }

    let sums = [SeifertData::new(&[2, 3, 5]).unwrap(), SeifertData::new(&[2, 3, 11]).unwrap()];
    let p = gamma_prediction(&sums).unwrap();
    println!("Σ(2,3,5) # Σ(2,3,11): Γ(i) = {} for i <= {}", p.value, p.range_max);
    println!("independent: {}", furuta_independence(&sums).conclusive());

    let w = whitehead_double_bounds(2, 3).unwrap();
    println!("Whitehead double of T(2,3): {} <= Γ(1) <= {}", w.lower, w.upper);
}
