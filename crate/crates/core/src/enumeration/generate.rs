use std::collections::BTreeSet;

use rayon::prelude::*;

use super::canonical::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::subset::Bits;

/// Default upper bound on the enumerated size.
pub const ENUMERATION_MAX_N: usize = 8;

/// How an `(n-1)`-poset is grown into `n`-posets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// New element with a down-closed strict down-set `D` and an up-closed
    /// strict up-set `U`, where `D < U` elementwise.
    Cut,
    /// New maximal element over a down-closed set.
    Maximal,
}

/// One representative per isomorphism class on `n` elements, sorted by
/// canonical form. The representatives are the canonical relabelings.
pub fn all_posets(n: usize) -> Result<Vec<Poset>> {
    all_posets_with(n, Strategy::Cut)
}

pub fn all_posets_with(n: usize, strategy: Strategy) -> Result<Vec<Poset>> {
    Ok(levels_with(n, strategy, ENUMERATION_MAX_N)?.pop().unwrap())
}

/// Levels `1..=n`; entry `k - 1` holds the posets on `k` elements.
pub fn all_posets_up_to(n: usize) -> Result<Vec<Vec<Poset>>> {
    levels_with(n, Strategy::Cut, ENUMERATION_MAX_N)
}

pub fn levels_with(n: usize, strategy: Strategy, bound: usize) -> Result<Vec<Vec<Poset>>> {
    if n == 0 {
        return Err(Error::EmptyPoset);
    }
    if n > bound {
        return Err(Error::SizeBound { got: n, bound });
    }
    let mut levels = vec![vec![Poset::antichain(1)?]];
    for _ in 1..n {
        let next = extend_level(levels.last().unwrap(), strategy);
        levels.push(next);
    }
    Ok(levels)
}

/// All isomorphism classes obtained by adding one element to the parents.
pub fn extend_level(parents: &[Poset], strategy: Strategy) -> Vec<Poset> {
    let forms: Vec<Vec<CanonicalForm>> = parents
        .par_iter()
        .map(|p| {
            children(p, strategy)
                .into_iter()
                .map(|c| canonical_form(&c).expect("within canonical bound"))
                .collect()
        })
        .collect();
    let unique: BTreeSet<CanonicalForm> = forms.into_iter().flatten().collect();
    unique.iter().map(CanonicalForm::to_poset).collect()
}

fn ideals(p: &Poset) -> Vec<u64> {
    (0..=p.ground_mask())
        .filter(|&m| Bits(m).all(|x| p.down_mask(x) & !m == 0))
        .collect()
}

fn filters(p: &Poset) -> Vec<u64> {
    (0..=p.ground_mask())
        .filter(|&m| Bits(m).all(|x| p.up_mask(x) & !m == 0))
        .collect()
}

fn children(p: &Poset, strategy: Strategy) -> Vec<Poset> {
    let downs = ideals(p);
    let ups = match strategy {
        Strategy::Cut => filters(p),
        Strategy::Maximal => vec![0],
    };
    let mut out = Vec::new();
    for &d in &downs {
        let above_all_of_d = Bits(d).fold(p.ground_mask(), |acc, x| acc & p.up_mask(x));
        for &u in &ups {
            if u & !above_all_of_d != 0 {
                continue;
            }
            out.push(attach(p, d, u));
        }
    }
    out
}

fn attach(p: &Poset, down: u64, up: u64) -> Poset {
    let new = p.len();
    let mut rows: Vec<u64> = (0..p.len()).map(|x| p.up_mask(x)).collect();
    for x in Bits(down) {
        rows[x] |= 1 << new;
    }
    rows.push(up);
    Poset::from_up_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = all_posets_up_to(5).unwrap().iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 2, 5, 16, 63]);
    }

    #[test]
    fn strategies_agree_to_six() {
        for n in 1..=6 {
            assert_eq!(
                all_posets_with(n, Strategy::Cut).unwrap(),
                all_posets_with(n, Strategy::Maximal).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(all_posets(0), Err(Error::EmptyPoset));
        assert_eq!(all_posets(9), Err(Error::SizeBound { got: 9, bound: 8 }));
    }
}
