//! Min-max values of homology classes in a filtered Morse complex.

use floer_gamma::fixtures;
use floer_gamma::morse_minmax::{evaluate_class, evaluate_with_perturbations, MorseComplex};
use floer_gamma::novikov::Rat;

fn main() {
    let m = MorseComplex::from_json_str(fixtures::file("two_minima").unwrap()).unwrap();
    for g in &m.generators {
        println!("{} (index {}) at {}", g.name, g.index, g.value);
    }
    let n = m.len();
    for i in 0..n {
        let mut sigma = vec![0; n];
        sigma[i] = 1;
        match evaluate_class(&m, &sigma) {
            Ok(v) => println!("f([{}]) = {v}", m.generators[i].name),
            Err(e) => println!("[{}]: {e}", m.generators[i].name),
        }
    }

    let mut sigma = vec![0; n];
    sigma[0] = 1;
    let offsets = vec![vec![Rat::new(1, 10); n], vec![Rat::new(-1, 4); n]];
    let rep = evaluate_with_perturbations(&m, &sigma, &offsets).unwrap();
    println!("perturbations stay within their norm: {}", rep.converges());
}
