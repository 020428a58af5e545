//! Order-autonomous subsets and the indecomposability test.
//!
//! A subset `A` is order-autonomous when every element outside `A` is above
//! all of `A`, below all of `A`, or incomparable to all of `A`. A poset is
//! indecomposable when its only autonomous subsets are the empty set,
//! singletons and the whole ground set. Posets of one or two elements count
//! as indecomposable.
//!
//! Most functions here come in two flavors: a public one over a [`Poset`] and
//! a [`Subset`], and a crate-internal `*_within` variant that works on the
//! subposet induced by a bitmask without materializing it. The cover search
//! relies on the latter.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::subset::{Bits, Subset};

/// Largest ground set the exhaustive oracle accepts by default.
pub const ORACLE_MAX_N: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Indecomposable,
    Disconnected,
    SeriesDecomposable,
    HasNontrivialAutonomous,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    None,
    /// Connected components of the comparability graph.
    Components(Vec<Subset>),
    /// Every element of `lower` is below every element of `upper`.
    Series {
        lower: Subset,
        upper: Subset,
    },
    /// A nontrivial order-autonomous subset.
    Autonomous(Subset),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionVerdict {
    pub kind: VerdictKind,
    pub witness: Witness,
}

/// `z` relates to all of `s` in the same way.
#[inline]
fn uniform_towards(p: &Poset, z: usize, s: u64) -> bool {
    let above_z = p.up_mask(z) & s;
    let below_z = p.down_mask(z) & s;
    above_z == s || below_z == s || (above_z | below_z) == 0
}

pub(crate) fn is_autonomous_within(p: &Poset, within: u64, s: u64) -> bool {
    Bits(within & !s).all(|z| uniform_towards(p, z, s))
}

pub fn is_order_autonomous(p: &Poset, s: &Subset) -> bool {
    is_autonomous_within(p, p.ground_mask(), s.mask())
}

/// Smallest autonomous subset of the subposet on `within` containing `s`.
pub(crate) fn module_closure_within(p: &Poset, within: u64, s: u64) -> u64 {
    let mut closure = s;
    loop {
        let splitters = Bits(within & !closure)
            .filter(|&z| !uniform_towards(p, z, closure))
            .fold(0u64, |acc, z| acc | 1 << z);
        if splitters == 0 {
            return closure;
        }
        closure |= splitters;
    }
}

pub fn module_closure(p: &Poset, s: &Subset) -> Result<Subset> {
    p.check_subset(s)?;
    if s.is_empty() {
        return Err(Error::EmptySelection);
    }
    Ok(Subset::from_mask_unchecked(
        p.len(),
        module_closure_within(p, p.ground_mask(), s.mask()),
    ))
}

/// Splits the subposet on `within` as `lower ⊕ upper` if possible.
pub(crate) fn series_split_within(p: &Poset, within: u64) -> Option<(u64, u64)> {
    let comps = p.co_components_within(within);
    if comps.len() < 2 {
        return None;
    }
    // Distinct co-components are completely comparable; the bottom one is
    // the component having nothing from the others below it.
    let lower = *comps
        .iter()
        .find(|&&c| Bits(c).all(|x| p.down_mask(x) & within & !c == 0))?;
    let upper = within & !lower;
    let ok = Bits(lower).all(|x| p.up_mask(x) & upper == upper);
    ok.then_some((lower, upper))
}

pub fn series_split(p: &Poset) -> Option<(Subset, Subset)> {
    series_split_within(p, p.ground_mask()).map(|(l, u)| {
        (
            Subset::from_mask_unchecked(p.len(), l),
            Subset::from_mask_unchecked(p.len(), u),
        )
    })
}

pub fn is_series_decomposable(p: &Poset) -> bool {
    series_split(p).is_some()
}

pub fn is_co_connected(p: &Poset) -> bool {
    p.co_components_within(p.ground_mask()).len() == 1
}

/// A nontrivial autonomous subset of the subposet on `within`, if any.
pub(crate) fn nontrivial_module_within(p: &Poset, within: u64) -> Option<u64> {
    if within.count_ones() <= 2 {
        return None;
    }
    let elements: Vec<usize> = Bits(within).collect();
    for (i, &x) in elements.iter().enumerate() {
        for &y in &elements[i + 1..] {
            let closure = module_closure_within(p, within, 1 << x | 1 << y);
            if closure != within {
                return Some(closure);
            }
        }
    }
    None
}

pub(crate) fn is_indecomposable_within(p: &Poset, within: u64) -> bool {
    nontrivial_module_within(p, within).is_none()
}

pub fn is_indecomposable(p: &Poset) -> bool {
    is_indecomposable_within(p, p.ground_mask())
}

/// Exhaustive scan of every subset; independent ground truth for
/// [`is_indecomposable`].
pub fn indecomposable_oracle(p: &Poset) -> Result<bool> {
    indecomposable_oracle_bounded(p, ORACLE_MAX_N)
}

pub fn indecomposable_oracle_bounded(p: &Poset, bound: usize) -> Result<bool> {
    let n = p.len();
    if n > bound {
        return Err(Error::SizeBound { got: n, bound });
    }
    let full = p.ground_mask();
    for s in 1..full {
        let size = s.count_ones();
        if size < 2 {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|m| s >> m & 1 == 1).collect();
        let autonomous = (0..n).filter(|z| s >> z & 1 == 0).all(|z| {
            let first = (p.lt(z, members[0]), p.lt(members[0], z));
            members.iter().all(|&m| (p.lt(z, m), p.lt(m, z)) == first)
        });
        if autonomous {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Classifies `p` and returns a witness that rechecks under the defining
/// predicate of its kind.
pub fn classify(p: &Poset) -> DecompositionVerdict {
    let n = p.len();
    let full = p.ground_mask();
    if n > 2 {
        let comps = p.components_within(full);
        if comps.len() > 1 {
            return DecompositionVerdict {
                kind: VerdictKind::Disconnected,
                witness: Witness::Components(
                    comps
                        .into_iter()
                        .map(|c| Subset::from_mask_unchecked(n, c))
                        .collect(),
                ),
            };
        }
        if let Some((lower, upper)) = series_split(p) {
            return DecompositionVerdict {
                kind: VerdictKind::SeriesDecomposable,
                witness: Witness::Series { lower, upper },
            };
        }
        if let Some(m) = nontrivial_module_within(p, full) {
            return DecompositionVerdict {
                kind: VerdictKind::HasNontrivialAutonomous,
                witness: Witness::Autonomous(Subset::from_mask_unchecked(n, m)),
            };
        }
    }
    DecompositionVerdict {
        kind: VerdictKind::Indecomposable,
        witness: Witness::None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n_poset() -> Poset {
        // l=0 < b=1 > a=2 < u=3
        Poset::from_relations(4, &[(0, 1), (2, 1), (2, 3)]).unwrap()
    }

    fn set(n: usize, xs: &[usize]) -> Subset {
        Subset::from_indices(n, xs.iter().copied()).unwrap()
    }

    #[test]
    fn autonomous_examples() {
        let c3 = Poset::chain(3).unwrap();
        assert!(is_order_autonomous(&c3, &set(3, &[0, 1])));
        assert!(!is_order_autonomous(&n_poset(), &set(4, &[1, 2])));
        let vee = Poset::from_relations(3, &[(2, 0), (2, 1)]).unwrap();
        assert!(is_order_autonomous(&vee, &set(3, &[0, 1])));
        for s in [set(3, &[]), set(3, &[1]), Subset::full(3)] {
            assert!(is_order_autonomous(&c3, &s));
        }
    }

    #[test]
    fn closure_examples() {
        let n = n_poset();
        assert_eq!(module_closure(&n, &set(4, &[3])).unwrap(), set(4, &[3]));
        assert_eq!(module_closure(&n, &set(4, &[1, 2])).unwrap(), n.ground());
        let c3 = Poset::chain(3).unwrap();
        assert_eq!(
            module_closure(&c3, &set(3, &[0, 1])).unwrap(),
            set(3, &[0, 1])
        );
        assert_eq!(
            module_closure(&c3, &set(3, &[])),
            Err(Error::EmptySelection)
        );
    }

    #[test]
    fn series_examples() {
        let c3 = Poset::chain(3).unwrap();
        assert_eq!(series_split(&c3), Some((set(3, &[0]), set(3, &[1, 2]))));
        assert!(!is_series_decomposable(&Poset::antichain(2).unwrap()));
        assert!(!is_series_decomposable(&n_poset()));
        assert!(!is_series_decomposable(&Poset::antichain(1).unwrap()));
    }

    #[test]
    fn co_connected_examples() {
        assert!(!is_co_connected(&Poset::chain(2).unwrap()));
        assert!(is_co_connected(&Poset::antichain(2).unwrap()));
        assert!(is_co_connected(&n_poset()));
    }

    #[test]
    fn indecomposable_examples() {
        assert!(is_indecomposable(&Poset::chain(2).unwrap()));
        assert!(is_indecomposable(&Poset::antichain(2).unwrap()));
        assert!(is_indecomposable(&n_poset()));
        assert!(!is_indecomposable(&Poset::chain(3).unwrap()));
        for p in [
            Poset::chain(2).unwrap(),
            n_poset(),
            Poset::chain(3).unwrap(),
        ] {
            assert_eq!(indecomposable_oracle(&p).unwrap(), is_indecomposable(&p));
        }
    }

    #[test]
    fn oracle_size_bound() {
        let big = Poset::antichain(13).unwrap();
        assert_eq!(
            indecomposable_oracle(&big),
            Err(Error::SizeBound { got: 13, bound: 12 })
        );
    }

    #[test]
    fn classify_witnesses_recheck() {
        let disc = Poset::from_relations(3, &[(0, 1)]).unwrap();
        let v = classify(&disc);
        assert_eq!(v.kind, VerdictKind::Disconnected);

        let c3 = Poset::chain(3).unwrap();
        match classify(&c3).witness {
            Witness::Series { lower, upper } => {
                assert!(lower.iter().all(|x| upper.iter().all(|y| c3.lt(x, y))));
            }
            w => panic!("unexpected witness {w:?}"),
        }

        // 2 + 2 antichains over a common top: {0,1} < 2, 3 < 2 with 3 ∥ 0,1
        let p = Poset::from_relations(4, &[(0, 2), (1, 2), (3, 2), (0, 3)]).unwrap();
        let v = classify(&p);
        if let Witness::Autonomous(m) = &v.witness {
            assert!(is_order_autonomous(&p, m));
            assert!(m.len() > 1 && m.len() < p.len());
        }
        assert_ne!(v.kind, VerdictKind::Indecomposable);

        assert_eq!(classify(&n_poset()).kind, VerdictKind::Indecomposable);
    }
}
