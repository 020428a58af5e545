//! Constructors and recognizers for the characterized pinned structures.

mod fence;
mod figure2;
mod vcover;
mod xfamily;

use std::fmt::Write;

use serde::Serialize;

use crate::poset::PinnedTriple;

pub use fence::{fence_endpoints, fence_make, fence_recognize, FenceMatch, FENCE_THRESHOLD};
pub use figure2::{
    figure2_make, figure2_make_id, figure2_matches, figure2_recognize, figure2_recognize_unpinned,
    Figure2Id, Figure2Name,
};
pub use vcover::{v_cover_make, v_cover_recognize, VCoverMatch};
pub use xfamily::{x_base, x_extend, x_from_peel, x_generate, x_recognize, PeelStep};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EntryKind {
    Figure2(Figure2Id),
    XMember {
        peel: Vec<PeelStep>,
    },
    Fence {
        elements: usize,
    },
    VCover {
        fence_len: usize,
        l: usize,
        d: usize,
        h: usize,
    },
}

/// A labeled pinned triple together with how it was built. `labels[i]` names
/// element `i` of `triple.poset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub kind: EntryKind,
    pub labels: Vec<String>,
    pub triple: PinnedTriple,
}

impl CatalogEntry {
    pub fn kind_name(&self) -> &'static str {
        match &self.kind {
            EntryKind::Figure2(id) => id.name.as_str(),
            EntryKind::XMember { .. } => "X_member",
            EntryKind::Fence { .. } => "Fence",
            EntryKind::VCover { .. } => "VCover",
        }
    }

    pub fn title(&self) -> String {
        match &self.kind {
            EntryKind::Figure2(id) => id.to_string(),
            EntryKind::XMember { peel } if peel.is_empty() => "X_member (base)".into(),
            EntryKind::XMember { peel } => {
                let steps: Vec<String> = peel.iter().map(|s| s.to_string()).collect();
                format!("X_member [{}]", steps.join(", "))
            }
            EntryKind::Fence { elements } => format!("Fence ({elements} elements)"),
            EntryKind::VCover { fence_len, .. } => format!("VCover (|F| = {fence_len})"),
        }
    }

    fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }
}

/// Every Figure-2 variant, the family members up to `x_max` elements, fences
/// with 4 to 8 elements and V-covers with fence length 1 to 6.
pub fn standard_entries(x_max: usize) -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = Figure2Id::all().map(figure2_make_id).collect();
    out.extend(x_generate(x_max));
    out.extend((4..=8).map(|k| fence_make(k).unwrap()));
    out.extend((1..=6).map(|m| v_cover_make(m).unwrap()));
    out
}

/// Markdown listing of `entries`: one section each with pins and the cover
/// relations of the diagram under the entry's labels.
pub fn render_table(entries: &[CatalogEntry]) -> String {
    let mut s = String::from("# Catalog\n\nCover relations `x < y` per entry, labeled.\n");
    for e in entries {
        let t = &e.triple;
        let covers: Vec<String> = t
            .poset
            .hasse_covers()
            .into_iter()
            .map(|(x, y)| format!("{} < {}", e.label(x), e.label(y)))
            .collect();
        let _ = write!(
            s,
            "\n## {}\n\n- elements: {}\n- pins: a = {}, b = {} ({})\n- covers: {}\n",
            e.title(),
            t.len(),
            e.label(t.a),
            e.label(t.b),
            if t.is_chain() { "chain" } else { "antichain" },
            covers.join(", ")
        );
    }
    s
}
