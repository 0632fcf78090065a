//! Cobordism maps: chain-map identities, functoriality, composition and Γ comparison.

use floer_gamma::cobordism::{
    compose_tilde, gamma_comparison, verify_functoriality, verify_tilde_chain_map, CobordismDatum,
};
use floer_gamma::equivariant::TruncationWindow;
use floer_gamma::fixtures;

fn load(name: &str) -> CobordismDatum {
    CobordismDatum::from_json_str(fixtures::file(name).unwrap(), &fixtures::datum).unwrap()
}

fn main() {
    let w = TruncationWindow::new(6, 4).unwrap();

    for name in ["delta1_sigma_self", "delta1_sigma_to_s3"] {
        let cob = load(name);
        println!("{name}");
        println!("  tilde chain map: {}", verify_tilde_chain_map(&cob));
        println!("  functoriality:   {}", verify_functoriality(&cob, &w));
    }

    let a = load("delta1_sigma_self");
    let twice = compose_tilde(&a, &a).unwrap();
    println!("composite c = {}, functoriality: {}", twice.c, verify_functoriality(&twice, &w));

    let cmp = gamma_comparison(&load("s3_to_sigma_2_3_5"), -2, 3).unwrap();
    for row in &cmp.rows {
        println!("  k = {:>2}: target {} vs source {} -> {}", row.k, row.target, row.source, row.holds);
    }
}
