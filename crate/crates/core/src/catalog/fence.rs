use serde::Serialize;

use super::{CatalogEntry, EntryKind};
use crate::error::{Error, Result};
use crate::poset::{PinnedTriple, Poset};
use crate::subset::Bits;

/// Fences below this many elements are decomposable (or trivial).
pub const FENCE_THRESHOLD: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FenceMatch {
    pub elements: usize,
}

impl FenceMatch {
    pub fn meets_threshold(&self) -> bool {
        self.elements >= FENCE_THRESHOLD
    }
}

/// The fence `0 < 1 > 2 < 3 ...` on `k` elements, pinned at both ends.
pub fn fence_make(k: usize) -> Result<CatalogEntry> {
    if k < 2 {
        return Err(Error::BadLength(k));
    }
    let pairs: Vec<(usize, usize)> = (0..k - 1)
        .map(|i| if i % 2 == 0 { (i, i + 1) } else { (i + 1, i) })
        .collect();
    let poset = Poset::from_relations(k, &pairs)?;
    Ok(CatalogEntry {
        kind: EntryKind::Fence { elements: k },
        labels: (1..=k).map(|i| format!("f{i}")).collect(),
        triple: PinnedTriple {
            poset,
            a: 0,
            b: k - 1,
        },
    })
}

/// Endpoints `(start, end)` with `start < end` as indices if `p` is a fence,
/// i.e. its comparability graph is a path. A single element counts as a
/// fence with equal endpoints.
pub fn fence_endpoints(p: &Poset) -> Option<(usize, usize)> {
    let n = p.len();
    if n == 1 {
        return Some((0, 0));
    }
    let degrees: Vec<u32> = (0..n)
        .map(|x| p.comparability_mask(x).count_ones())
        .collect();
    if degrees.iter().any(|&d| d == 0 || d > 2) || p.relation_count() != n - 1 || !p.is_connected()
    {
        return None;
    }
    let mut ends = (0..n).filter(|&x| degrees[x] == 1);
    Some((ends.next()?, ends.next()?))
}

/// The fence elements in path order starting from `start`.
pub fn fence_path(p: &Poset, start: usize) -> Vec<usize> {
    let mut path = vec![start];
    let mut seen = 1u64 << start;
    while let Some(next) = Bits(p.comparability_mask(*path.last().unwrap()) & !seen).next() {
        seen |= 1 << next;
        path.push(next);
    }
    path
}

/// `t.poset` is a fence whose endpoints are the pins.
pub fn fence_recognize(t: &PinnedTriple) -> Option<FenceMatch> {
    let (s, e) = fence_endpoints(&t.poset)?;
    let pins_are_ends = (s, e) == (t.a, t.b) || (s, e) == (t.b, t.a);
    pins_are_ends.then_some(FenceMatch {
        elements: t.poset.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{indecomposable_oracle, is_indecomposable};

    #[test]
    fn four_fence_shape() {
        let f = fence_make(4).unwrap();
        assert_eq!(f.triple.poset.relations(), vec![(0, 1), (2, 1), (2, 3)]);
        assert_eq!((f.triple.a, f.triple.b), (0, 3));
        assert_eq!(f.triple.poset.fence_distance(0, 3), Some(3));
    }

    #[test]
    fn long_fences_indecomposable() {
        for k in 2..=10 {
            let p = fence_make(k).unwrap().triple.poset;
            let expect = k != 3;
            assert_eq!(is_indecomposable(&p), expect, "k = {k}");
            assert_eq!(indecomposable_oracle(&p).unwrap(), expect, "k = {k}");
        }
    }

    #[test]
    fn three_fence_below_threshold() {
        let f = fence_make(3).unwrap();
        let m = fence_recognize(&f.triple).unwrap();
        assert_eq!(m.elements, 3);
        assert!(!m.meets_threshold());
        assert!(fence_recognize(&fence_make(5).unwrap().triple)
            .unwrap()
            .meets_threshold());
    }

    #[test]
    fn interior_pins_rejected() {
        let f = fence_make(5).unwrap();
        let t = PinnedTriple::new(f.triple.poset.clone(), 0, 2).unwrap();
        assert_eq!(fence_recognize(&t), None);
        assert_eq!(fence_path(&f.triple.poset, 0), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn bad_lengths() {
        assert_eq!(fence_make(1).unwrap_err(), Error::BadLength(1));
        assert_eq!(fence_make(0).unwrap_err(), Error::BadLength(0));
        assert!(fence_endpoints(&Poset::chain(3).unwrap()).is_none());
    }
}
