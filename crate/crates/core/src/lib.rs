//! Exact computations on Floer-type chain data over the Novikov field:
//! the Γ invariant, the equivariant exact triangle, cobordism maps,
//! Seifert-fibered numerics, negative-definite lattices, and min-max
//! values of Morse cycles.

pub mod cli;
pub mod cobordism;
pub mod equivariant;
pub mod fixtures;
pub mod floer_datum;
pub mod gamma;
pub mod lattice;
pub mod linalg;
pub mod morse_minmax;
pub mod novikov;
pub mod sample;
pub mod seifert;
