//! Conjugacy classes of `S_N` and the discrete-torsion phase `δ(g, h)` of
//! the spin double cover.
//!
//! Two independent providers compute `δ`:
//!
//! * [`DeltaProvider::Oracle`] lifts `g` and `h` into the Clifford algebra
//!   and reads the sign off `ĝĥ = ±ĥĝ`.
//! * [`DeltaProvider::Rules`] writes `h ∈ C(g)` as cycle swaps and cycle
//!   rotations and multiplies the closed-form sign of each generator.
//!
//! The two disagree on swaps of odd-length cycles (e.g. `g = (12)`,
//! `h = (34)`), so every consumer takes the provider as a parameter.

mod centralizer;
mod clifford;
mod delta;
mod permutation;

use thiserror::Error;

pub use centralizer::{centralizer_elements, decompose, CentralizerGenerator, CentralizerIter};
pub use clifford::{
    basis_product_sign, lift, lift_bounded, lift_word, CliffordElement, Lift, MAX_GENERATORS,
};
pub use delta::{
    compare_generators, delta_compare, delta_oracle, delta_oracle_bounded, delta_rules, rule_sign,
    sweep_properties, verify_presentation, DeltaComparison, DeltaProvider, DeltaRow, DeltaTable,
    GeneratorRow, PresentationReport, PropertyReport, RelationCheck,
};
pub use permutation::{
    all_permutations, conjugacy_classes, factorial, partitions, CycleType, Permutation,
};

/// Default largest `N` for Clifford computations (`2^N` monomials).
pub const DEFAULT_ORACLE_BOUND: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpinError {
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("{h} does not commute with {g}")]
    NotInCentralizer { g: String, h: String },
    #[error("degree {n} exceeds the Clifford oracle bound {bound}")]
    OracleBound { n: usize, bound: usize },
    #[error("Clifford coefficient overflow")]
    CoefficientOverflow,
    #[error("lifts of {g} and {h} neither commute nor anticommute")]
    NotProjectivelyCommuting { g: String, h: String },
    #[error("unknown delta provider `{0}` (expected oracle, rules or trivial)")]
    UnknownProvider(String),
}
