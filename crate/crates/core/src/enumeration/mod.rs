//! Posets up to isomorphism: canonical forms, generation, pinned embeddings.

pub mod cache;
mod canonical;
mod generate;
mod iso;

pub use canonical::{
    canonical_form, canonical_labeling, pinned_form, CanonicalForm, PinnedForm, CANONICAL_MAX_N,
};
pub use generate::{
    all_posets, all_posets_up_to, all_posets_with, extend_level, levels_with, Strategy,
    ENUMERATION_MAX_N,
};
pub use iso::{
    embeds_pinned, find_embedding, find_pinned_embedding, isomorphic, isomorphic_pinned,
};

use crate::error::Result;
use crate::poset::PinnedTriple;

pub fn pinned_form_of(t: &PinnedTriple) -> Result<PinnedForm> {
    pinned_form(&t.poset, t.a, t.b)
}
