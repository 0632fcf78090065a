//! Builds a datum in code, validates it, and round-trips it through JSON.

use floer_gamma::floer_datum::{validate, FloerDatum, Generator};
use floer_gamma::gamma::gamma;
use floer_gamma::novikov::{NovikovElement, Rat};

fn main() {
    // One generator in grading 1 whose D1 image has exponent 1/3.
    let g = Generator { name: "a".into(), grading: 1, energy_lift: Rat::new(-1, 3) };
    let mut datum = FloerDatum::with_generators("single", vec![g]);
    datum.d1.add_entry(0, 0, NovikovElement::monomial(Rat::int(2), Rat::new(1, 3)));

    let report = validate(&datum);
    println!("valid: {report}");

    let json = datum.to_json_string();
    let back = FloerDatum::from_json_str(&json).unwrap();
    assert_eq!(back, datum);
    println!("{json}");

    for k in 0..=3 {
        println!("gamma({k}) = {}", gamma(&datum, k).unwrap().value);
    }
}
