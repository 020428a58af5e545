//! Indecomposable subsets of finite ordered sets.
//!
//! The crate builds and queries finite strict orders ([`Poset`]), decides
//! indecomposability, recognizes the catalogs of minimal indecomposable
//! extensions of 2-chains and 2-antichains, searches the containment order of
//! indecomposable subsets, enumerates posets up to isomorphism, and runs
//! exhaustive claim checks over all small posets.

pub mod catalog;
pub mod covers;
pub mod decomposition;
pub mod enumeration;
mod error;
pub mod poset;
pub mod subset;
pub mod verify;

pub use error::{Error, Result};
pub use poset::{PinnedTriple, Poset};
pub use subset::Subset;

/// Largest ground set a [`Poset`] can hold (one `u64` bit row per element).
pub const MAX_ELEMENTS: usize = 64;
