//! The seven labeled minimal extensions of a covering 2-chain `a < b`.
//!
//! Each table lists element labels (pins `a`, `b` and the alternative upper
//! cover `x` of `a` always first) and the cover relations of its diagram.
//! Every set admits a second placement with `b` and `x` exchanged, and every
//! set has a dual; both variants are produced by [`figure2_make`].

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{CatalogEntry, EntryKind};
use crate::enumeration::{isomorphic, isomorphic_pinned};
use crate::error::Error;
use crate::poset::{PinnedTriple, Poset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Figure2Name {
    N,
    NHat,
    B,
    BHat,
    BTilde,
    BPrime,
    /// As drawn, `{b, x, v1, u, v2<}` is order-autonomous, so this set is
    /// decomposable and holds no indecomposable proper superset of `{a, b}`.
    BDoublePrime,
}

struct Table {
    name: Figure2Name,
    labels: &'static [&'static str],
    covers: &'static [(&'static str, &'static str)],
}

const TABLES: [Table; 7] = [
    Table {
        name: Figure2Name::N,
        labels: &["a", "b", "x", "l"],
        covers: &[("a", "b"), ("a", "x"), ("l", "b")],
    },
    Table {
        name: Figure2Name::NHat,
        labels: &["a", "b", "x", "w", "l"],
        covers: &[("a", "b"), ("a", "x"), ("b", "w"), ("l", "w")],
    },
    Table {
        name: Figure2Name::B,
        labels: &["a", "b", "x", "w", "u", "l"],
        covers: &[
            ("a", "b"),
            ("a", "x"),
            ("b", "w"),
            ("x", "w"),
            ("l", "w"),
            ("b", "u"),
        ],
    },
    Table {
        name: Figure2Name::BHat,
        labels: &["a", "b", "x", "v1", "u", "w", "l"],
        covers: &[
            ("a", "b"),
            ("a", "x"),
            ("b", "v1"),
            ("x", "v1"),
            ("b", "u"),
            ("u", "w"),
            ("x", "w"),
            ("l", "w"),
        ],
    },
    Table {
        name: Figure2Name::BTilde,
        labels: &["a", "b", "x", "v1", "u", "w", "v2!<", "l"],
        covers: &[
            ("a", "b"),
            ("a", "x"),
            ("b", "v1"),
            ("x", "v1"),
            ("v1", "w"),
            ("b", "u"),
            ("u", "w"),
            ("u", "v2!<"),
            ("x", "v2!<"),
            ("l", "w"),
        ],
    },
    Table {
        name: Figure2Name::BPrime,
        labels: &["a", "b", "x", "v1", "u", "w", "v2!<", "l", "v2<"],
        covers: &[
            ("a", "b"),
            ("a", "x"),
            ("b", "v1"),
            ("x", "v1"),
            ("v1", "w"),
            ("b", "u"),
            ("u", "v2<"),
            ("v2<", "w"),
            ("x", "v2<"),
            ("u", "v2!<"),
            ("v1", "v2!<"),
            ("l", "w"),
        ],
    },
    Table {
        name: Figure2Name::BDoublePrime,
        labels: &["a", "b", "x", "v1", "u", "w", "v2!<", "l", "v2<"],
        covers: &[
            ("a", "b"),
            ("a", "x"),
            ("b", "v1"),
            ("x", "v1"),
            ("v1", "w"),
            ("b", "u"),
            ("u", "v2<"),
            ("v2<", "w"),
            ("x", "v2<"),
            ("v1", "v2!<"),
            ("v2<", "v2!<"),
            ("l", "w"),
        ],
    },
];

impl Figure2Name {
    pub const ALL: [Figure2Name; 7] = [
        Figure2Name::N,
        Figure2Name::NHat,
        Figure2Name::B,
        Figure2Name::BHat,
        Figure2Name::BTilde,
        Figure2Name::BPrime,
        Figure2Name::BDoublePrime,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Figure2Name::N => "N",
            Figure2Name::NHat => "N_hat",
            Figure2Name::B => "B",
            Figure2Name::BHat => "B_hat",
            Figure2Name::BTilde => "B_tilde",
            Figure2Name::BPrime => "B_prime",
            Figure2Name::BDoublePrime => "B_dprime",
        }
    }

    fn table(self) -> &'static Table {
        TABLES.iter().find(|t| t.name == self).unwrap()
    }

    pub fn labels(self) -> &'static [&'static str] {
        self.table().labels
    }

    pub fn size(self) -> usize {
        self.table().labels.len()
    }

    /// The undecorated poset of the diagram, labels in [`Figure2Name::labels`] order.
    pub fn poset(self) -> Poset {
        let t = self.table();
        let idx = |l: &str| t.labels.iter().position(|&m| m == l).unwrap();
        let pairs: Vec<(usize, usize)> = t.covers.iter().map(|&(x, y)| (idx(x), idx(y))).collect();
        Poset::from_relations(t.labels.len(), &pairs).expect("catalog tables are acyclic")
    }

    /// Cover relations exactly as transcribed.
    pub fn cover_labels(self) -> &'static [(&'static str, &'static str)] {
        self.table().covers
    }
}

impl fmt::Display for Figure2Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Figure2Name {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Figure2Name::ALL
            .into_iter()
            .find(|n| n.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Figure2Id {
    pub name: Figure2Name,
    pub dual: bool,
    pub bx_swapped: bool,
}

impl Figure2Id {
    /// All 28 variants: names in diagram order, then plain before dual, then
    /// unswapped before swapped.
    pub fn all() -> impl Iterator<Item = Figure2Id> {
        Figure2Name::ALL.into_iter().flat_map(|name| {
            [(false, false), (false, true), (true, false), (true, true)]
                .into_iter()
                .map(move |(dual, bx_swapped)| Figure2Id {
                    name,
                    dual,
                    bx_swapped,
                })
        })
    }
}

impl fmt::Display for Figure2Id {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name.as_str())?;
        match (self.dual, self.bx_swapped) {
            (false, false) => Ok(()),
            (true, false) => f.write_str(" (dual)"),
            (false, true) => f.write_str(" (b/x swapped)"),
            (true, true) => f.write_str(" (dual, b/x swapped)"),
        }
    }
}

pub fn figure2_make(name: Figure2Name, dual: bool, bx_swapped: bool) -> CatalogEntry {
    let poset = name.poset();
    // a = 0, b = 1, x = 2 in every table
    let (a, b) = if bx_swapped { (0, 2) } else { (0, 1) };
    let mut triple = PinnedTriple { poset, a, b };
    if dual {
        triple = triple.dual();
    }
    CatalogEntry {
        kind: EntryKind::Figure2(Figure2Id {
            name,
            dual,
            bx_swapped,
        }),
        labels: name.labels().iter().map(|s| s.to_string()).collect(),
        triple,
    }
}

pub fn figure2_make_id(id: Figure2Id) -> CatalogEntry {
    figure2_make(id.name, id.dual, id.bx_swapped)
}

/// The first catalog variant (in [`Figure2Id::all`] order) pinned-isomorphic
/// to `t`. Variants that coincide up to pinned isomorphism resolve to the
/// earliest one.
pub fn figure2_recognize(t: &PinnedTriple) -> Option<Figure2Id> {
    if !t.is_chain() {
        return None;
    }
    Figure2Id::all()
        .filter(|id| id.name.size() == t.len())
        .find(|&id| isomorphic_pinned(&figure2_make_id(id).triple, t))
}

/// Every variant pinned-isomorphic to `t`, in [`Figure2Id::all`] order.
pub fn figure2_matches(t: &PinnedTriple) -> Vec<Figure2Id> {
    if !t.is_chain() {
        return Vec::new();
    }
    Figure2Id::all()
        .filter(|id| id.name.size() == t.len())
        .filter(|&id| isomorphic_pinned(&figure2_make_id(id).triple, t))
        .collect()
}

/// Isomorphism to a diagram or its dual, ignoring the pins.
pub fn figure2_recognize_unpinned(p: &Poset) -> Option<(Figure2Name, bool)> {
    Figure2Name::ALL
        .into_iter()
        .filter(|n| n.size() == p.len())
        .find_map(|n| {
            let base = n.poset();
            if isomorphic(&base, p) {
                Some((n, false))
            } else if isomorphic(&base.dual(), p) {
                Some((n, true))
            } else {
                None
            }
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::is_indecomposable;

    #[test]
    fn n_panel() {
        let e = figure2_make(Figure2Name::N, false, false);
        let p = &e.triple.poset;
        assert_eq!(p.len(), 4);
        assert_eq!(p.relations(), vec![(0, 1), (0, 2), (3, 1)]);
        assert_eq!((e.triple.a, e.triple.b), (0, 1));
    }

    #[test]
    fn sizes() {
        let sizes: Vec<usize> = Figure2Name::ALL.iter().map(|n| n.size()).collect();
        assert_eq!(sizes, vec![4, 5, 6, 7, 8, 9, 9]);
        assert_eq!(
            figure2_make(Figure2Name::BDoublePrime, false, false)
                .triple
                .len(),
            9
        );
    }

    #[test]
    fn dual_keeps_chain_pins() {
        for id in Figure2Id::all() {
            let e = figure2_make_id(id);
            assert!(e.triple.is_chain(), "{id}");
            assert!(e.triple.poset.is_cover(e.triple.a, e.triple.b), "{id}");
        }
    }

    #[test]
    fn variants_indecomposable_except_b_dprime() {
        for id in Figure2Id::all() {
            let expect = id.name != Figure2Name::BDoublePrime;
            assert_eq!(
                is_indecomposable(&figure2_make_id(id).triple.poset),
                expect,
                "{id}"
            );
        }
    }

    #[test]
    fn b_dprime_block() {
        let p = Figure2Name::BDoublePrime.poset();
        let l = Figure2Name::BDoublePrime.labels();
        let block = ["b", "x", "v1", "u", "v2<"].map(|s| l.iter().position(|&m| m == s).unwrap());
        let s = crate::Subset::from_indices(p.len(), block).unwrap();
        assert!(crate::decomposition::is_order_autonomous(&p, &s));
    }

    #[test]
    fn names_parse() {
        assert_eq!(
            "B_dprime".parse::<Figure2Name>(),
            Ok(Figure2Name::BDoublePrime)
        );
        assert_eq!(
            "Q".parse::<Figure2Name>(),
            Err(Error::UnknownName("Q".into()))
        );
    }

    #[test]
    fn recognize_round_trip() {
        let b = figure2_make(Figure2Name::B, false, false);
        assert_eq!(
            figure2_recognize(&b.triple),
            Some(Figure2Id {
                name: Figure2Name::B,
                dual: false,
                bx_swapped: false
            })
        );
        for id in Figure2Id::all() {
            let t = figure2_make_id(id).triple;
            let got = figure2_recognize(&t).unwrap();
            assert!(got <= id, "{id} -> {got}");
            assert!(figure2_matches(&t).contains(&id));
        }
    }

    #[test]
    fn n_is_pinned_self_dual() {
        let n = figure2_make(Figure2Name::N, false, false);
        let nd = figure2_make(Figure2Name::N, true, false);
        assert!(isomorphic_pinned(&n.triple, &nd.triple));
        let dual_id = Figure2Id {
            name: Figure2Name::N,
            dual: true,
            bx_swapped: false,
        };
        assert!(figure2_matches(&nd.triple).contains(&dual_id));
        assert_eq!(
            figure2_recognize(&nd.triple).map(|id| id.name),
            Some(Figure2Name::N)
        );
    }
}
