//! Indecomposable V-covers: two minimal elements `l` and `d`, where the
//! strict up-set of `l` splits into `{a}` and a fence `F` from `b` to a
//! maximal `h`, and `d` sits below `h` alone.

use serde::Serialize;

use super::fence::{fence_endpoints, fence_path};
use super::{CatalogEntry, EntryKind};
use crate::error::{Error, Result};
use crate::poset::{PinnedTriple, Poset};
use crate::subset::Bits;

/// Which variant matched and where the named elements sit, as indices into
/// the recognized poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VCoverMatch {
    /// Matched the order dual.
    pub dual: bool,
    /// Matched with the roles of `a` and `b` interchanged.
    pub swapped: bool,
    pub l: usize,
    pub d: usize,
    pub h: usize,
    /// The fence `F` in path order from `b` to `h`.
    pub fence: Vec<usize>,
}

/// Layout: `a = 0`, the fence `F = f1..fm` at `1..=m` with `b = f1`,
/// `h = fm`, then `l = m + 1` and `d = m + 2`.
pub fn v_cover_make(fence_length: usize) -> Result<CatalogEntry> {
    let m = fence_length;
    if m == 0 {
        return Err(Error::BadLength(0));
    }
    let (l, d, h) = (m + 1, m + 2, m);
    let mut pairs = vec![(l, 0), (d, h)];
    for j in 1..=m {
        pairs.push((l, j));
    }
    for j in 1..m {
        // f_j is a top exactly when m - j is even, so h = f_m is a top
        if (m - j).is_multiple_of(2) {
            pairs.push((j + 1, j));
        } else {
            pairs.push((j, j + 1));
        }
    }
    let poset = Poset::from_relations(m + 3, &pairs)?;
    let mut labels = vec!["a".to_string()];
    labels.extend((1..=m).map(|j| match j {
        1 => "b".to_string(),
        j if j == m => "h".to_string(),
        j => format!("f{j}"),
    }));
    if m == 1 {
        labels[1] = "b=h".into();
    }
    labels.push("l".into());
    labels.push("d".into());
    Ok(CatalogEntry {
        kind: EntryKind::VCover {
            fence_len: m,
            l,
            d,
            h,
        },
        labels,
        triple: PinnedTriple { poset, a: 0, b: 1 },
    })
}

/// Checks the definition directly, then with `a` and `b` interchanged, then
/// on the dual, then on the dual with the interchange.
pub fn v_cover_recognize(t: &PinnedTriple) -> Result<Option<VCoverMatch>> {
    if t.is_chain() {
        return Err(Error::KindMismatch(format!(
            "pins {} and {} are comparable",
            t.a, t.b
        )));
    }
    let dual = t.poset.dual();
    for (is_dual, p) in [(false, &t.poset), (true, &dual)] {
        for swapped in [false, true] {
            let (a, b) = if swapped { (t.b, t.a) } else { (t.a, t.b) };
            if let Some(mut m) = match_plain(p, a, b) {
                m.dual = is_dual;
                m.swapped = swapped;
                return Ok(Some(m));
            }
        }
    }
    Ok(None)
}

fn match_plain(p: &Poset, a: usize, b: usize) -> Option<VCoverMatch> {
    let mins = p.minimal_elements();
    if mins.len() != 2 {
        return None;
    }
    let (l, d) = if p.up_mask(mins[0]).count_ones() > 1 {
        (mins[0], mins[1])
    } else {
        (mins[1], mins[0])
    };
    let above_l = p.up_mask(l);
    if above_l.count_ones() < 2 || above_l & (1 << a) == 0 || above_l & (1 << b) == 0 {
        return None;
    }
    let above_d = p.up_mask(d);
    if above_d.count_ones() != 1 {
        return None;
    }
    let h = above_d.trailing_zeros() as usize;
    if above_l.count_ones() as usize + 2 != p.len() {
        return None;
    }
    let comps = p.components_within(above_l);
    if comps.len() != 2 || !comps.contains(&(1 << a)) {
        return None;
    }
    let f_mask = comps.into_iter().find(|&c| c != 1 << a)?;
    if f_mask & (1 << b) == 0 || f_mask & (1 << h) == 0 || p.up_mask(h) & f_mask != 0 {
        return None;
    }
    let (f, map) = p.induced_mask(f_mask);
    let local = |x: usize| map.iter().position(|&m| m == x).unwrap();
    let (s, e) = fence_endpoints(&f)?;
    let (lb, lh) = (local(b), local(h));
    if !((s, e) == (lb, lh) || (s, e) == (lh, lb)) {
        return None;
    }
    let fence = fence_path(&f, lb).into_iter().map(|i| map[i]).collect();
    debug_assert!(Bits(f_mask).all(|x| p.lt(l, x)));
    Some(VCoverMatch {
        dual: false,
        swapped: false,
        l,
        d,
        h,
        fence,
    })
}
