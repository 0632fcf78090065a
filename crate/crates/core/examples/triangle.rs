//! Checks the equivariant exact-triangle identities on a truncation window,
//! for the fixtures and a handful of random data.

use floer_gamma::equivariant::{verify_triangle, TruncationWindow};
use floer_gamma::fixtures;
use floer_gamma::sample::random_datum;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn main() {
    let w = TruncationWindow::new(6, 4).unwrap();
    for d in fixtures::all_data() {
        println!("{:>20}: {}", d.name, verify_triangle(&d, &w));
    }
    let mut rng = StdRng::seed_from_u64(1);
    for i in 0..5 {
        let d = random_datum(&mut rng, &format!("random{i}"));
        println!("{:>20}: {} ({} generators)", d.name, verify_triangle(&d, &w), d.len());
    }
}
