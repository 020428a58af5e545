//! Search over the containment order of indecomposable subsets of a poset.

use std::collections::HashMap;

use serde::Serialize;

use crate::decomposition::{is_indecomposable_within, module_closure_within};
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::subset::{Bits, Subset};

const DENSE_MEMO_MAX_N: usize = 16;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Candidate subsets visited.
    pub examined: u64,
    /// Candidates rejected by the seed's module closure alone.
    pub pruned: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverResult {
    pub seed: Subset,
    /// Containment-minimal indecomposable proper supersets, by mask.
    pub covers: Vec<Subset>,
    /// Minimum-cardinality indecomposable proper supersets, by mask.
    pub smallest: Vec<Subset>,
    pub stats: SearchStats,
}

enum Memo {
    Dense(Vec<u8>),
    Sparse(HashMap<u64, bool>),
}

/// Indecomposability verdicts for subsets of one poset, cached across
/// queries.
pub struct CoverSearch<'a> {
    p: &'a Poset,
    memo: Memo,
    stats: SearchStats,
}

impl<'a> CoverSearch<'a> {
    pub fn new(p: &'a Poset) -> Self {
        let memo = if p.len() <= DENSE_MEMO_MAX_N {
            Memo::Dense(vec![0; 1 << p.len()])
        } else {
            Memo::Sparse(HashMap::new())
        };
        CoverSearch {
            p,
            memo,
            stats: SearchStats::default(),
        }
    }

    pub fn poset(&self) -> &Poset {
        self.p
    }

    pub fn stats(&self) -> SearchStats {
        self.stats
    }

    /// Whether the subposet on `s` is indecomposable.
    pub fn indecomposable(&mut self, s: u64) -> bool {
        match &mut self.memo {
            Memo::Dense(v) => match v[s as usize] {
                0 => {
                    let r = is_indecomposable_within(self.p, s);
                    v[s as usize] = if r { 2 } else { 1 };
                    r
                }
                c => c == 2,
            },
            Memo::Sparse(m) => *m
                .entry(s)
                .or_insert_with(|| is_indecomposable_within(self.p, s)),
        }
    }

    /// Candidate check used by the layered search: the seed's closure inside
    /// `s` settles most decomposable candidates without a full test.
    fn candidate(&mut self, seed: u64, s: u64) -> bool {
        self.stats.examined += 1;
        let c = module_closure_within(self.p, s, seed);
        if c != s && c.count_ones() > 1 {
            self.stats.pruned += 1;
            return false;
        }
        self.indecomposable(s)
    }

    fn check_seed(&self, seed: &Subset) -> Result<u64> {
        self.p.check_subset(seed)?;
        if seed.is_empty() {
            return Err(Error::EmptySelection);
        }
        Ok(seed.mask())
    }

    /// Indecomposable `S` with `seed ⊊ S`, `|S| <= max_size`, ordered by size
    /// and then mask.
    pub fn supersets(&mut self, seed: &Subset, max_size: usize) -> Result<Vec<Subset>> {
        let s0 = self.check_seed(seed)?;
        let rest = self.p.ground_mask() & !s0;
        let base = s0.count_ones() as usize;
        let mut out = Vec::new();
        for extra in 1..=rest.count_ones() as usize {
            if base + extra > max_size {
                break;
            }
            for add in combinations(rest, extra) {
                if self.candidate(s0, s0 | add) {
                    out.push(Subset::from_mask_unchecked(self.p.len(), s0 | add));
                }
            }
        }
        Ok(out)
    }

    /// Upper covers of an indecomposable seed in the family of
    /// indecomposable subsets.
    pub fn upper_covers(&mut self, seed: &Subset) -> Result<CoverResult> {
        let s0 = self.check_seed(seed)?;
        if !self.indecomposable(s0) {
            return Err(Error::SeedNotIndecomposable);
        }
        let before = self.stats;
        let rest = self.p.ground_mask() & !s0;
        let mut covers: Vec<u64> = Vec::new();
        let mut smallest: Vec<u64> = Vec::new();
        for extra in 1..=rest.count_ones() as usize {
            let found_before = covers.len();
            for add in combinations(rest, extra) {
                let s = s0 | add;
                if covers.iter().any(|&h| h & !s == 0) {
                    continue;
                }
                if self.candidate(s0, s) {
                    covers.push(s);
                }
            }
            if smallest.is_empty() && covers.len() > found_before {
                smallest = covers[found_before..].to_vec();
            }
        }
        covers.sort_unstable();
        let n = self.p.len();
        let wrap = |v: Vec<u64>| {
            v.into_iter()
                .map(|m| Subset::from_mask_unchecked(n, m))
                .collect()
        };
        Ok(CoverResult {
            seed: *seed,
            covers: wrap(covers),
            smallest: wrap(smallest),
            stats: SearchStats {
                examined: self.stats.examined - before.examined,
                pruned: self.stats.pruned - before.pruned,
            },
        })
    }
}

/// Submasks of `within` with exactly `k` bits, in increasing numeric order.
fn combinations(within: u64, k: usize) -> impl Iterator<Item = u64> {
    let idx: Vec<usize> = Bits(within).collect();
    let m = idx.len();
    let mut cur: Option<u64> = (k <= m && k < 64).then(|| (1u64 << k) - 1);
    std::iter::from_fn(move || {
        let c = cur?;
        if m < 64 && c >> m != 0 {
            cur = None;
            return None;
        }
        // Gosper's hack for the next k-subset of 0..m
        cur = if c == 0 {
            None
        } else {
            let low = c & c.wrapping_neg();
            let ripple = c.wrapping_add(low);
            (ripple != 0).then(|| ripple | (((c ^ ripple) >> 2) / low))
        };
        Some(Bits(c).map(|i| 1u64 << idx[i]).fold(0, |acc, b| acc | b))
    })
}

pub fn indecomposable_supersets(p: &Poset, seed: &Subset, max_size: usize) -> Result<Vec<Subset>> {
    CoverSearch::new(p).supersets(seed, max_size)
}

pub fn upper_covers(p: &Poset, seed: &Subset) -> Result<CoverResult> {
    CoverSearch::new(p).upper_covers(seed)
}

/// As [`upper_covers`], failing with `NoSuperset` when the seed has no
/// indecomposable proper superset at all.
pub fn smallest_supersets(p: &Poset, seed: &Subset) -> Result<CoverResult> {
    let r = upper_covers(p, seed)?;
    if r.smallest.is_empty() {
        return Err(Error::NoSuperset);
    }
    Ok(r)
}

/// An indecomposable `U` with `P ⊊ U ⊆ T` and `|U| = |P| + 2`, smallest mask
/// first. Requires `T` and `P` indecomposable and `4 <= |P| <= |T| - 2`.
pub fn st_gap2_witness(t: &Poset, p_subset: &Subset) -> Result<Subset> {
    CoverSearch::new(t).st_gap2_witness(p_subset)
}

impl CoverSearch<'_> {
    pub fn st_gap2_witness(&mut self, p_subset: &Subset) -> Result<Subset> {
        let s0 = self.check_seed(p_subset)?;
        let (n, k) = (self.p.len(), p_subset.len());
        if k < 4 || k + 2 > n {
            return Err(Error::PreconditionViolated(format!(
                "need 4 <= |P| <= |T| - 2, got |P| = {k}, |T| = {n}"
            )));
        }
        if !self.indecomposable(self.p.ground_mask()) {
            return Err(Error::PreconditionViolated("T is decomposable".into()));
        }
        if !self.indecomposable(s0) {
            return Err(Error::PreconditionViolated("P is decomposable".into()));
        }
        let rest = self.p.ground_mask() & !s0;
        for add in combinations(rest, 2) {
            if self.candidate(s0, s0 | add) {
                return Ok(Subset::from_mask_unchecked(n, s0 | add));
            }
        }
        Err(Error::NotFound(k + 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{fence_make, figure2_make, v_cover_make, Figure2Name};

    fn pins(n: usize, a: usize, b: usize) -> Subset {
        Subset::from_indices(n, [a, b]).unwrap()
    }

    #[test]
    fn combinations_in_order() {
        let all: Vec<u64> = combinations(0b10110, 2).collect();
        assert_eq!(all, vec![0b00110, 0b10010, 0b10100]);
        assert_eq!(combinations(0b111, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(combinations(0b11, 3).count(), 0);
        assert_eq!(combinations(u64::MAX >> 4, 3).count(), 60 * 59 * 58 / 6);
    }

    #[test]
    fn n_has_itself_as_only_cover() {
        let t = figure2_make(Figure2Name::N, false, false).triple;
        let seed = pins(4, t.a, t.b);
        let r = upper_covers(&t.poset, &seed).unwrap();
        assert_eq!(r.covers, vec![Subset::full(4)]);
        assert_eq!(r.smallest, vec![Subset::full(4)]);
        assert_eq!(
            indecomposable_supersets(&t.poset, &seed, 4).unwrap(),
            vec![Subset::full(4)]
        );
    }

    #[test]
    fn fence_endpoints_cover() {
        let t = fence_make(4).unwrap().triple;
        let r = smallest_supersets(&t.poset, &pins(4, t.a, t.b)).unwrap();
        assert_eq!(r.smallest, vec![Subset::full(4)]);
        let f6 = fence_make(6).unwrap().triple;
        let r = smallest_supersets(&f6.poset, &pins(6, f6.a, f6.b)).unwrap();
        assert_eq!(r.smallest, vec![Subset::full(6)]);
    }

    #[test]
    fn full_seed_has_no_supersets() {
        let p = fence_make(4).unwrap().triple.poset;
        assert!(indecomposable_supersets(&p, &Subset::full(4), 10)
            .unwrap()
            .is_empty());
        assert_eq!(
            smallest_supersets(&p, &Subset::full(4)).unwrap_err(),
            Error::NoSuperset
        );
    }

    #[test]
    fn decomposable_seed_rejected() {
        let p = Poset::chain(4).unwrap();
        let seed = Subset::from_indices(4, [0, 1, 2]).unwrap();
        assert_eq!(
            upper_covers(&p, &seed).unwrap_err(),
            Error::SeedNotIndecomposable
        );
    }

    #[test]
    fn antichain_example_finds_four_fence() {
        // a=0 < f2=1 > f3=2 < b=3, l=4 below a and b
        let p = Poset::from_relations(5, &[(0, 1), (2, 1), (2, 3), (4, 0), (4, 3)]).unwrap();
        let r = smallest_supersets(&p, &pins(5, 0, 3)).unwrap();
        // the 4-fence, and {l < a, l < b, f3 < b} in V-cover shape
        let expect = [0b01111, 0b11101].map(|m| Subset::from_mask(5, m).unwrap());
        assert_eq!(r.smallest, expect.to_vec());
        assert_eq!(r.covers, expect.to_vec());
    }

    #[test]
    fn v_cover_is_its_own_smallest() {
        let v = v_cover_make(1).unwrap().triple;
        let r = smallest_supersets(&v.poset, &pins(4, v.a, v.b)).unwrap();
        assert_eq!(r.smallest, vec![Subset::full(4)]);
    }

    #[test]
    fn gap2_preconditions() {
        let t = fence_make(6).unwrap().triple.poset;
        let four = Subset::from_indices(6, [0, 1, 2, 3]).unwrap();
        assert_eq!(st_gap2_witness(&t, &four).unwrap(), Subset::full(6));
        assert!(matches!(
            st_gap2_witness(&t, &Subset::full(6)),
            Err(Error::PreconditionViolated(_))
        ));
        let five = Subset::from_indices(6, [0, 1, 2, 3, 4]).unwrap();
        assert!(matches!(
            st_gap2_witness(&t, &five),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
