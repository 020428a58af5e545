//! The recursively generated family of pinned triples grown from a labeled
//! `N` by attaching a new minimum below all but the old bottom pin, or a new
//! maximum above all but the old top pin.

use std::fmt;

use serde::Serialize;

use super::{CatalogEntry, EntryKind};
use crate::enumeration::isomorphic_pinned;
use crate::error::{Error, Result};
use crate::poset::{PinnedTriple, Poset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PeelStep {
    /// New minimal pin below everything except the previous bottom pin.
    Bottom,
    /// New maximal pin above everything except the previous top pin.
    Top,
}

impl fmt::Display for PeelStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PeelStep::Bottom => "bottom",
            PeelStep::Top => "top",
        })
    }
}

/// `N` with `a < b`, `a < x` and `l < b`; pins `(a, b)` = `(0, 1)`.
pub fn x_base() -> CatalogEntry {
    let poset = Poset::from_relations(4, &[(0, 1), (0, 2), (3, 1)]).unwrap();
    CatalogEntry {
        kind: EntryKind::XMember { peel: Vec::new() },
        labels: ["a", "b", "x", "l"].map(String::from).to_vec(),
        triple: PinnedTriple { poset, a: 0, b: 1 },
    }
}

pub fn x_extend(e: &CatalogEntry, end: PeelStep) -> Result<CatalogEntry> {
    let EntryKind::XMember { peel } = &e.kind else {
        return Err(Error::KindMismatch(format!(
            "expected an X member, got {}",
            e.kind_name()
        )));
    };
    let t = &e.triple;
    let n = t.poset.len();
    let new = n;
    let mut rows: Vec<u64> = (0..n).map(|x| t.poset.up_mask(x)).collect();
    let others = t.poset.ground_mask();
    let (a, b) = match end {
        PeelStep::Bottom => {
            rows.push(others & !(1 << t.a));
            (new, t.b)
        }
        PeelStep::Top => {
            for (x, row) in rows.iter_mut().enumerate() {
                if x != t.b {
                    *row |= 1 << new;
                }
            }
            rows.push(0);
            (t.a, new)
        }
    };
    let poset = Poset::from_up_rows(rows);
    let mut peel = peel.clone();
    peel.push(end);
    let mut labels = e.labels.clone();
    labels.push(format!(
        "{}{}",
        if end == PeelStep::Bottom { "a" } else { "b" },
        peel.len()
    ));
    Ok(CatalogEntry {
        kind: EntryKind::XMember { peel },
        labels,
        triple: PinnedTriple { poset, a, b },
    })
}

/// All members with at most `max_size` elements, one per pinned isomorphism
/// class, ordered by size and then by discovery (bottom before top).
pub fn x_generate(max_size: usize) -> Vec<CatalogEntry> {
    if max_size < 4 {
        return Vec::new();
    }
    let mut out = vec![x_base()];
    let mut frontier = vec![x_base()];
    for _ in 5..=max_size {
        let mut next: Vec<CatalogEntry> = Vec::new();
        for e in &frontier {
            for end in [PeelStep::Bottom, PeelStep::Top] {
                let child = x_extend(e, end).expect("frontier holds X members");
                if !next
                    .iter()
                    .any(|m| isomorphic_pinned(&m.triple, &child.triple))
                {
                    next.push(child);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Membership test by peeling pins; returns the extension sequence from the
/// base `N` outward when `t` belongs to the family.
pub fn x_recognize(t: &PinnedTriple) -> Option<Vec<PeelStep>> {
    let p = &t.poset;
    if !(p.is_minimal(t.a) && p.is_maximal(t.b) && p.lt(t.a, t.b)) {
        return None;
    }
    let n = p.len();
    if n < 4 {
        return None;
    }
    if n == 4 {
        return isomorphic_pinned(t, &x_base().triple).then(Vec::new);
    }
    let all = p.ground_mask();
    // Bottom pin sits below everything but exactly one other element.
    let missed = all & !(1 << t.a) & !p.up_mask(t.a);
    if missed.count_ones() == 1 {
        let prev_a = missed.trailing_zeros() as usize;
        if let Some(mut steps) = peel(t, t.a, prev_a, t.b) {
            steps.push(PeelStep::Bottom);
            return Some(steps);
        }
    }
    let missed = all & !(1 << t.b) & !p.down_mask(t.b);
    if missed.count_ones() == 1 {
        let prev_b = missed.trailing_zeros() as usize;
        if let Some(mut steps) = peel(t, t.b, t.a, prev_b) {
            steps.push(PeelStep::Top);
            return Some(steps);
        }
    }
    None
}

fn peel(t: &PinnedTriple, drop: usize, a: usize, b: usize) -> Option<Vec<PeelStep>> {
    let keep = t.poset.ground_mask() & !(1 << drop);
    let (poset, map) = t.poset.induced_mask(keep);
    let pos = |old: usize| map.iter().position(|&m| m == old).unwrap();
    x_recognize(&PinnedTriple {
        a: pos(a),
        b: pos(b),
        poset,
    })
}

/// Rebuilds the member described by a peel sequence.
pub fn x_from_peel(steps: &[PeelStep]) -> CatalogEntry {
    steps
        .iter()
        .fold(x_base(), |e, &s| x_extend(&e, s).expect("X member"))
}
