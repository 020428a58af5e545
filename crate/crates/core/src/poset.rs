//! Finite strict orders on `0..n`, stored as up-set and down-set bitmasks.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::subset::{full_mask, Bits, Subset};
use crate::MAX_ELEMENTS;

/// A finite strict order on the elements `0..n`.
///
/// `up[x]` holds every `y` with `x < y` and `down[x]` every `y` with `y < x`.
/// Both are kept transitively closed, so comparability queries are single
/// bit tests.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    up: Vec<u64>,
    down: Vec<u64>,
}

impl Poset {
    /// Builds the transitive closure of `pairs`, each `(x, y)` meaning `x < y`.
    pub fn from_relations(n: usize, pairs: &[(usize, usize)]) -> Result<Poset> {
        if n == 0 {
            return Err(Error::EmptyPoset);
        }
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge(n));
        }
        let mut up = vec![0u64; n];
        for &(x, y) in pairs {
            for i in [x, y] {
                if i >= n {
                    return Err(Error::Index { index: i, n });
                }
            }
            up[x] |= 1 << y;
        }
        // Warshall over bit rows.
        for k in 0..n {
            let row_k = up[k];
            for row in up.iter_mut() {
                if *row >> k & 1 == 1 {
                    *row |= row_k;
                }
            }
        }
        if let Some(x) = (0..n).find(|&x| up[x] >> x & 1 == 1) {
            return Err(Error::Cycle(x));
        }
        Ok(Self::from_up_rows(up))
    }

    /// Rows must already be transitively closed and acyclic.
    pub(crate) fn from_up_rows(up: Vec<u64>) -> Poset {
        let n = up.len();
        let mut down = vec![0u64; n];
        for (x, &row) in up.iter().enumerate() {
            for y in Bits(row) {
                down[y] |= 1 << x;
            }
        }
        Poset { n, up, down }
    }

    pub fn chain(n: usize) -> Result<Poset> {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_relations(n, &pairs)
    }

    pub fn antichain(n: usize) -> Result<Poset> {
        Poset::from_relations(n, &[])
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false: empty posets cannot be constructed.
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.up[x] >> y & 1 == 1
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        (self.up[x] | self.down[x]) >> y & 1 == 1
    }

    #[inline]
    pub fn incomparable(&self, x: usize, y: usize) -> bool {
        x != y && !self.comparable(x, y)
    }

    /// Strict up-set of `x` as a mask.
    #[inline]
    pub fn up_mask(&self, x: usize) -> u64 {
        self.up[x]
    }

    /// Strict down-set of `x` as a mask.
    #[inline]
    pub fn down_mask(&self, x: usize) -> u64 {
        self.down[x]
    }

    #[inline]
    pub fn comparability_mask(&self, x: usize) -> u64 {
        self.up[x] | self.down[x]
    }

    pub fn up_set(&self, x: usize) -> Subset {
        Subset::from_mask_unchecked(self.n, self.up[x])
    }

    pub fn down_set(&self, x: usize) -> Subset {
        Subset::from_mask_unchecked(self.n, self.down[x])
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.n)
    }

    pub(crate) fn ground_mask(&self) -> u64 {
        full_mask(self.n)
    }

    pub fn check_index(&self, x: usize) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::Index {
                index: x,
                n: self.n,
            })
        }
    }

    pub fn check_subset(&self, s: &Subset) -> Result<()> {
        if s.universe() != self.n {
            return Err(Error::UniverseMismatch {
                expected: self.n,
                got: s.universe(),
            });
        }
        Ok(())
    }

    pub fn is_minimal(&self, x: usize) -> bool {
        self.down[x] == 0
    }

    pub fn is_maximal(&self, x: usize) -> bool {
        self.up[x] == 0
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.is_minimal(x)).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.is_maximal(x)).collect()
    }

    /// All strict relations `(x, y)` with `x < y`, in row-major order.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|x| Bits(self.up[x]).map(move |y| (x, y)))
            .collect()
    }

    pub fn relation_count(&self) -> usize {
        self.up.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Restriction to `s`, relabeled `0..|s|` in ascending original index.
    /// The returned vector maps new indices to old ones.
    pub fn induced(&self, s: &Subset) -> Result<(Poset, Vec<usize>)> {
        self.check_subset(s)?;
        if s.is_empty() {
            return Err(Error::EmptySelection);
        }
        Ok(self.induced_mask(s.mask()))
    }

    pub(crate) fn induced_mask(&self, mask: u64) -> (Poset, Vec<usize>) {
        let map: Vec<usize> = Bits(mask).collect();
        let mut inverse = [usize::MAX; MAX_ELEMENTS];
        for (new, &old) in map.iter().enumerate() {
            inverse[old] = new;
        }
        let up = map
            .iter()
            .map(|&old| Bits(self.up[old] & mask).fold(0u64, |acc, y| acc | 1 << inverse[y]))
            .collect();
        (Poset::from_up_rows(up), map)
    }

    pub fn dual(&self) -> Poset {
        Poset {
            n: self.n,
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    /// Relabels element `x` as `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Poset {
        assert_eq!(perm.len(), self.n);
        let mut up = vec![0u64; self.n];
        for x in 0..self.n {
            up[perm[x]] = Bits(self.up[x]).fold(0u64, |acc, y| acc | 1 << perm[y]);
        }
        Poset::from_up_rows(up)
    }

    /// Cover pairs `(x, y)`: `x < y` with nothing strictly between.
    pub fn hasse_covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in Bits(self.up[x]) {
                if self.up[x] & self.down[y] == 0 {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.lt(x, y) && self.up[x] & self.down[y] == 0
    }

    /// `{t : a < t < b}`; empty unless `a < b`.
    pub fn open_interval(&self, a: usize, b: usize) -> Subset {
        Subset::from_mask_unchecked(self.n, self.up[a] & self.down[b])
    }

    /// Shortest path length between `a` and `b` in the comparability graph,
    /// or `None` when they lie in different components.
    pub fn fence_distance(&self, a: usize, b: usize) -> Option<usize> {
        self.fence_distance_within(self.ground_mask(), a, b)
    }

    pub(crate) fn fence_distance_within(&self, within: u64, a: usize, b: usize) -> Option<usize> {
        if a == b {
            return Some(0);
        }
        let mut dist = [usize::MAX; MAX_ELEMENTS];
        dist[a] = 0;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            for y in Bits(self.comparability_mask(x) & within) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    if y == b {
                        return Some(dist[y]);
                    }
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Number of elements of a longest chain `a = k1 < ... < km = b`.
    pub fn longest_chain_between(&self, a: usize, b: usize) -> Result<usize> {
        self.check_index(a)?;
        self.check_index(b)?;
        if !self.lt(a, b) {
            return Err(Error::NotAChain(a, b));
        }
        let interval = self.up[a] & self.down[b];
        // Longest chain from a ending at each interval element, filled in a
        // linear-extension order (fewer strict predecessors first).
        let mut order: Vec<usize> = Bits(interval).collect();
        order.sort_by_key(|&t| (self.down[t] & interval).count_ones());
        let mut best = [0usize; MAX_ELEMENTS];
        for &t in &order {
            let below = Bits(self.down[t] & interval)
                .map(|s| best[s])
                .max()
                .unwrap_or(1);
            best[t] = below + 1;
        }
        let top = Bits(self.down[b] & interval)
            .map(|s| best[s])
            .max()
            .unwrap_or(1);
        Ok(top + 1)
    }

    /// Connected components of the comparability graph restricted to `within`,
    /// ordered by smallest member.
    pub(crate) fn components_within(&self, within: u64) -> Vec<u64> {
        self.components_by(within, |x| self.comparability_mask(x))
    }

    /// Connected components of the incomparability graph restricted to `within`.
    pub(crate) fn co_components_within(&self, within: u64) -> Vec<u64> {
        self.components_by(within, |x| !self.comparability_mask(x) & !(1 << x))
    }

    fn components_by(&self, within: u64, adj: impl Fn(usize) -> u64) -> Vec<u64> {
        let mut left = within;
        let mut out = Vec::new();
        while left != 0 {
            let start = left.trailing_zeros() as usize;
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let x = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = adj(x) & within & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            left &= !comp;
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Subset> {
        self.components_within(self.ground_mask())
            .into_iter()
            .map(|m| Subset::from_mask_unchecked(self.n, m))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components_within(self.ground_mask()).len() == 1
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset({}; covers {:?})", self.n, self.hasse_covers())
    }
}

/// A poset with two distinguished, distinct elements `a` and `b`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PinnedTriple {
    pub poset: Poset,
    pub a: usize,
    pub b: usize,
}

impl PinnedTriple {
    pub fn new(poset: Poset, a: usize, b: usize) -> Result<PinnedTriple> {
        poset.check_index(a)?;
        poset.check_index(b)?;
        if a == b {
            return Err(Error::SamePins(a));
        }
        Ok(PinnedTriple { poset, a, b })
    }

    pub fn is_chain(&self) -> bool {
        self.poset.lt(self.a, self.b)
    }

    pub fn is_antichain(&self) -> bool {
        self.poset.incomparable(self.a, self.b)
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn pins(&self) -> Subset {
        Subset::from_mask_unchecked(self.poset.len(), 1 << self.a | 1 << self.b)
    }

    /// Same poset with the roles of `a` and `b` exchanged.
    pub fn swapped(&self) -> PinnedTriple {
        PinnedTriple {
            poset: self.poset.clone(),
            a: self.b,
            b: self.a,
        }
    }

    /// Order reversal with the pins exchanged, so a chain `a < b` stays a
    /// chain in the result.
    pub fn dual(&self) -> PinnedTriple {
        PinnedTriple {
            poset: self.poset.dual(),
            a: self.b,
            b: self.a,
        }
    }

    /// The subposet induced by `s`, with pins carried along. `s` must
    /// contain both pins.
    pub fn restrict(&self, s: &Subset) -> Result<PinnedTriple> {
        if !(s.contains(self.a) && s.contains(self.b)) {
            return Err(Error::PreconditionViolated(
                "restriction must keep both pins".into(),
            ));
        }
        let (poset, map) = self.poset.induced(s)?;
        let find = |old: usize| map.iter().position(|&m| m == old).unwrap();
        Ok(PinnedTriple {
            a: find(self.a),
            b: find(self.b),
            poset,
        })
    }
}
