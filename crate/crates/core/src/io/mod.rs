//! Line-oriented text documents and DOT export.
//!
//! ```text
//! # the 3-chain
//! poset c3
//! elements 0 m 1
//! bottom 0
//! top 1
//! cover 0 m
//! cover m 1
//! ```

mod dot;
mod text;

pub use dot::{export_dot, DotSource};
pub use text::{parse, parse_one, serialize};

use crate::algebra::FinEffectAlgebra;
use crate::interval::RationalChain;
use crate::monoid::FinEffectMonoid;
use crate::omp::OrthoPoset;
use crate::poset::FinBoundedPoset;

/// One named structure read from or written to text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Poset { name: String, poset: FinBoundedPoset },
    Omp { name: String, omp: OrthoPoset },
    EffectAlgebra { name: String, ea: FinEffectAlgebra },
    EffectMonoid { name: String, monoid: FinEffectMonoid },
    /// Element pairs by label; resolved against the named structures by the caller.
    Map {
        name: String,
        from: String,
        to: String,
        pairs: Vec<(String, String)>,
    },
    RChain { name: String, chain: RationalChain },
}

impl Document {
    pub fn name(&self) -> &str {
        match self {
            Document::Poset { name, .. }
            | Document::Omp { name, .. }
            | Document::EffectAlgebra { name, .. }
            | Document::EffectMonoid { name, .. }
            | Document::Map { name, .. }
            | Document::RChain { name, .. } => name,
        }
    }

    /// The header keyword.
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Poset { .. } => "poset",
            Document::Omp { .. } => "omp",
            Document::EffectAlgebra { .. } => "effectalgebra",
            Document::EffectMonoid { .. } => "effectmonoid",
            Document::Map { .. } => "map",
            Document::RChain { .. } => "rchain",
        }
    }
}
