//! Exact orbifold elliptic genera of symmetric products, with and without
//! the discrete torsion coming from the spin double cover of `S_N`.

pub mod euler;
pub mod genus;
pub mod report;
pub mod series;
pub mod spin;
pub mod sym;
pub mod theta;
