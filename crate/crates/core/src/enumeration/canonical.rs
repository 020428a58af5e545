//! Canonical forms by partition refinement and individualization.
//!
//! The ordered partition is refined until equitable (every vertex of a cell
//! sees the same number of up- and down-neighbors in every cell). When cells
//! remain non-singleton, the first smallest one is split by individualizing
//! each of its vertices in turn. Every leaf of that search tree gives a
//! labeling; the canonical one has the lexicographically least relation
//! matrix. Incomparable twins (equal up- and down-sets) are interchangeable,
//! so only one of them is individualized per cell.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::subset::Bits;

/// Largest poset accepted by the canonical-form routines by default.
pub const CANONICAL_MAX_N: usize = 10;

/// Size byte followed by the row-major bits of the canonical relation matrix.
/// Two posets have equal forms iff they are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

/// Same layout as [`CanonicalForm`]; the two pins carry labels 0 and 1.
/// Equal forms iff the pinned triples are pinned-isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PinnedForm(Vec<u8>);

fn encode(n: usize, rows: &[u64]) -> Vec<u8> {
    let mut bytes = vec![0u8; 1 + (n * n).div_ceil(8)];
    bytes[0] = n as u8;
    for (i, &row) in rows.iter().enumerate() {
        for j in Bits(row) {
            let bit = i * n + j;
            bytes[1 + bit / 8] |= 0x80 >> (bit % 8);
        }
    }
    bytes
}

fn decode(bytes: &[u8]) -> Option<Poset> {
    let n = *bytes.first()? as usize;
    if n == 0 || bytes.len() != 1 + (n * n).div_ceil(8) {
        return None;
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let bit = i * n + j;
            if bytes[1 + bit / 8] & (0x80 >> (bit % 8)) != 0 {
                pairs.push((i, j));
            }
        }
    }
    let p = Poset::from_relations(n, &pairs).ok()?;
    // Reject encodings that were not already closed.
    (p.relation_count() == pairs.len()).then_some(p)
}

fn to_hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn from_hex(s: &str) -> Option<Vec<u8>> {
    if !s.len().is_multiple_of(2) {
        return None;
    }
    (0..s.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(s.get(i..i + 2)?, 16).ok())
        .collect()
}

macro_rules! form_impls {
    ($ty:ident) => {
        impl $ty {
            pub fn as_bytes(&self) -> &[u8] {
                &self.0
            }

            pub fn size(&self) -> usize {
                self.0[0] as usize
            }

            pub fn to_hex(&self) -> String {
                to_hex(&self.0)
            }

            pub fn from_hex(s: &str) -> Option<Self> {
                let bytes = from_hex(s)?;
                decode(&bytes)?;
                Some($ty(bytes))
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.to_hex())
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}({})", stringify!($ty), self.to_hex())
            }
        }

        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.serialize_str(&self.to_hex())
            }
        }
    };
}

form_impls!(CanonicalForm);
form_impls!(PinnedForm);

impl CanonicalForm {
    /// The canonical representative of the class.
    pub fn to_poset(&self) -> Poset {
        decode(&self.0).expect("canonical forms always decode")
    }
}

impl PinnedForm {
    /// The canonical representative with pins `(0, 1)`.
    pub fn to_poset(&self) -> Poset {
        decode(&self.0).expect("canonical forms always decode")
    }
}

pub fn canonical_form(p: &Poset) -> Result<CanonicalForm> {
    check_bound(p)?;
    let labeling = canonical_labeling(p, &[]);
    Ok(CanonicalForm(encode(
        p.len(),
        &relabeled_rows(p, &labeling),
    )))
}

pub fn pinned_form(p: &Poset, a: usize, b: usize) -> Result<PinnedForm> {
    check_bound(p)?;
    p.check_index(a)?;
    p.check_index(b)?;
    if a == b {
        return Err(Error::SamePins(a));
    }
    let labeling = canonical_labeling(p, &[a, b]);
    Ok(PinnedForm(encode(p.len(), &relabeled_rows(p, &labeling))))
}

/// A canonical labeling (`labeling[x]` is the new label of `x`), with
/// `pins[i]` forced to label `i`.
pub fn canonical_labeling(p: &Poset, pins: &[usize]) -> Vec<usize> {
    let n = p.len();
    let mut cells: Vec<u64> = pins.iter().map(|&x| 1u64 << x).collect();
    let pinned = cells.iter().fold(0u64, |a, c| a | c);
    let rest = p.ground_mask() & !pinned;
    if rest != 0 {
        let h = heights(p);
        cells.extend(split_by_key(rest, |x| h[x]));
    }
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    search(p, cells, &mut best);
    let (_, order) = best.expect("search visits at least one leaf");
    let mut labeling = vec![0; n];
    for (label, &x) in order.iter().enumerate() {
        labeling[x] = label;
    }
    labeling
}

fn check_bound(p: &Poset) -> Result<()> {
    if p.len() > CANONICAL_MAX_N {
        return Err(Error::SizeBound {
            got: p.len(),
            bound: CANONICAL_MAX_N,
        });
    }
    Ok(())
}

/// Length of the longest chain ending at each element.
fn heights(p: &Poset) -> Vec<usize> {
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&x| p.down_mask(x).count_ones());
    let mut h = vec![0; p.len()];
    for x in order {
        h[x] = Bits(p.down_mask(x)).map(|y| h[y] + 1).max().unwrap_or(0);
    }
    h
}

fn split_by_key<K: Ord>(cell: u64, key: impl Fn(usize) -> K) -> Vec<u64> {
    let mut keyed: Vec<(K, usize)> = Bits(cell).map(|x| (key(x), x)).collect();
    keyed.sort();
    let mut out: Vec<u64> = Vec::new();
    let mut last: Option<&K> = None;
    for (k, x) in &keyed {
        if last == Some(k) {
            *out.last_mut().unwrap() |= 1 << x;
        } else {
            out.push(1 << x);
        }
        last = Some(k);
    }
    out
}

fn refine(p: &Poset, mut cells: Vec<u64>) -> Vec<u64> {
    loop {
        let mut next = Vec::with_capacity(cells.len());
        for &cell in &cells {
            if cell.count_ones() == 1 {
                next.push(cell);
                continue;
            }
            let signature = |x: usize| -> Vec<(u32, u32)> {
                cells
                    .iter()
                    .map(|&c| {
                        (
                            (p.up_mask(x) & c).count_ones(),
                            (p.down_mask(x) & c).count_ones(),
                        )
                    })
                    .collect()
            };
            next.extend(split_by_key(cell, signature));
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn relabeled_rows_from_order(p: &Poset, order: &[usize]) -> Vec<u64> {
    let mut label = [0usize; 64];
    for (l, &x) in order.iter().enumerate() {
        label[x] = l;
    }
    order
        .iter()
        .map(|&x| Bits(p.up_mask(x)).fold(0u64, |acc, y| acc | 1 << label[y]))
        .collect()
}

fn relabeled_rows(p: &Poset, labeling: &[usize]) -> Vec<u64> {
    let mut order = vec![0; p.len()];
    for (x, &l) in labeling.iter().enumerate() {
        order[l] = x;
    }
    relabeled_rows_from_order(p, &order)
}

fn search(p: &Poset, cells: Vec<u64>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    let cells = refine(p, cells);
    let target = cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.count_ones() > 1)
        .min_by_key(|(i, c)| (c.count_ones(), *i))
        .map(|(i, _)| i);
    let Some(t) = target else {
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let rows = relabeled_rows_from_order(p, &order);
        if best.as_ref().is_none_or(|(b, _)| rows < *b) {
            *best = Some((rows, order));
        }
        return;
    };
    let cell = cells[t];
    let mut tried: Vec<usize> = Vec::new();
    for v in Bits(cell) {
        let twin = tried
            .iter()
            .any(|&u| p.up_mask(u) == p.up_mask(v) && p.down_mask(u) == p.down_mask(v));
        if twin {
            continue;
        }
        tried.push(v);
        let mut child = Vec::with_capacity(cells.len() + 1);
        child.extend_from_slice(&cells[..t]);
        child.push(1 << v);
        child.push(cell & !(1 << v));
        child.extend_from_slice(&cells[t + 1..]);
        search(p, child, best);
    }
}
