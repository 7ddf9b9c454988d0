//! Finite left semi-braces: validation, ideals and socles, nilpotency
//! series, constructions and quotients, the associated set-theoretic
//! Yang–Baxter solution, and small-order enumeration.
//!
//! Elements are indices `0..n` into a pair of Cayley tables; index `0` is
//! always the identity of `(B,∘)`.

pub mod constructions;
pub mod enumeration;
pub mod error;
pub mod format;
pub mod group;
pub mod laws;
pub mod report;
pub mod semibrace;
pub mod series;
pub mod subset;
pub mod subsets;
pub mod table;
pub mod ybe;

/// An element of a finite carrier, by index.
pub type Elem = usize;

pub use error::{Error, Result, ValidationError};
pub use group::{catalog_group, GroupTable, Permutation};
pub use semibrace::{FiniteLeftSemibrace, MapKind, MapTable};
pub use subset::Subset;
pub use table::CayleyTable;
