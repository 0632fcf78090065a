//! Γ-profiles and h-invariants of the bundled data.
//!
//! Run with `cargo run --example gamma_profile`.

use floer_gamma::fixtures;
use floer_gamma::gamma::{gamma_profile, h_invariant, tau_lower_bound};

fn main() {
    for datum in fixtures::all_data() {
        let h = h_invariant(&datum).expect("bundled data are valid");
        match tau_lower_bound(&datum) {
            Ok(t) => println!("{} (h = {h}, tau_lb = {t})", datum.name),
            Err(_) => println!("{} (h = {h}, no irreducible generators)", datum.name),
        }
        for (k, v) in gamma_profile(&datum, -3, 3).unwrap() {
            println!("  gamma({k}) = {v}");
        }
    }
}
