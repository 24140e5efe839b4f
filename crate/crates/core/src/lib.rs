//! Polychromatic colorings and translational tilings of finite integer sets
//! and lattice point sets.
//!
//! A coloring of `Z` is `S`-polychromatic when every translate `n + S`
//! contains every color. The crate verifies such colorings, searches for them
//! on cyclic groups, constructs 3-colorings for every 4-element set, decides
//! tilings by translation, and turns colorings into low-density complements.

pub mod arith;
pub mod codensity;
pub mod coloring;
pub mod construct;
pub mod density;
pub mod error;
pub mod lattice;
pub mod par;
pub mod reduce;
pub mod search;
pub mod set;
pub mod tiling;

pub use coloring::PeriodicColoring;
pub use density::Density;
pub use error::{Error, Result};
pub use par::Execution;
pub use reduce::{
    color_class_density, translate_equivalent, two_coloring, unit_multiply, verify_polychromatic,
    verify_polychromatic_mod,
};
pub use set::{canonicalize, CanonicalSet, IntegerSet};
