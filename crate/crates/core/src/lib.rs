//! Finite bounded posets, orthomodular posets, effect algebras and effect
//! monoids, with the Kalmbach extension, its Eilenberg-Moore action and
//! exhaustive small-size enumeration.
//!
//! Elements of every finite structure are dense ids `0..size`; labels are
//! carried separately and only used for display and parsing.

// `usize::is_multiple_of` is newer than the supported toolchain.
#![allow(unknown_lints, clippy::manual_is_multiple_of)]

mod canon;
mod error;

pub mod algebra;
pub mod enumerate;
pub mod interval;
pub mod io;
pub mod kalmbach;
pub mod monoid;
pub mod omega;
pub mod omp;
pub mod poset;
pub mod report;

pub use algebra::{
    algebra_action, check_ea_hom, check_effect_algebra, dposet_sum, ea_equalizer, ea_product,
    free_factorization, induced_order, ominus, EaHom, EffectAlgebra,
    Factorization, FinEffectAlgebra, Uniqueness,
};
pub use enumerate::{census, enumerate_effect_algebras, enumerate_effect_monoids, CensusReport};
pub use error::{Error, Result};
pub use interval::{RationalChain, RationalScalar, UnitInterval};
pub use kalmbach::{
    chain_leq, chain_perp, kalmbach_extension, kalmbach_map, monad_mult, unit_embedding,
    EvenChain, KalmbachExtension,
};
pub use monoid::{
    check_bimorphism, check_effect_monoid, classify_finite_em, corner_decompose,
    EffectMonoid, EmClass, FinEffectMonoid,
};
pub use omp::{check_omp, check_omp_morphism, omp_to_ea, OrthoPoset};
pub use poset::{
    check_poset_map, enumerate_bounded_posets, equalizer_sub, product_poset,
    validate_bounded_poset, FinBoundedPoset, PosetCandidate, PosetMap,
};
pub use report::{Law, Report, Violation};

/// Dense element id within one finite structure.
pub type ElemId = usize;

/// Largest poset size enumeration will ever attempt, whatever the budget says.
pub const POSET_SIZE_WALL: usize = 8;
/// Largest effect algebra or monoid size enumeration will ever attempt.
pub const ALGEBRA_SIZE_WALL: usize = 7;

/// Size limits for the exponential operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Largest structure size enumeration accepts. Capped by the hard walls.
    pub max_enumeration_size: usize,
    /// Largest Kalmbach extension that will be materialized.
    pub max_kalmbach_elements: u128,
    /// Largest candidate count a brute-force uniqueness search may visit.
    pub max_search: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_enumeration_size: 6,
            max_kalmbach_elements: 1 << 12,
            max_search: 1 << 22,
        }
    }
}

impl Budget {
    pub fn with_enumeration_size(mut self, n: usize) -> Self {
        self.max_enumeration_size = n;
        self
    }
}
