use indeco::catalog::{x_from_peel, x_recognize, PeelStep};
use indeco::covers::{indecomposable_supersets, upper_covers};
use indeco::decomposition::{
    classify, indecomposable_oracle, is_indecomposable, is_order_autonomous, module_closure,
    VerdictKind, Witness,
};
use indeco::enumeration::{
    cache, canonical_form, find_pinned_embedding, isomorphic, isomorphic_pinned, pinned_form,
};
use indeco::{PinnedTriple, Poset, Subset};
use proptest::prelude::*;

/// Random order on `n` elements: a random set of pairs `i < j` between
/// indices, closed, then shuffled by a random relabeling.
fn poset(max_n: usize) -> impl Strategy<Value = Poset> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                Just(n),
                prop::collection::vec(prop::bool::weighted(0.35), pairs),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            )
        })
        .prop_map(|(n, bits, perm)| {
            let mut rels = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        rels.push((perm[i], perm[j]));
                    }
                    k += 1;
                }
            }
            Poset::from_relations(n, &rels).unwrap()
        })
}

fn with_perm(max_n: usize) -> impl Strategy<Value = (Poset, Vec<usize>)> {
    poset(max_n).prop_flat_map(|p| {
        let n = p.len();
        (Just(p), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
    })
}

fn with_subset(max_n: usize) -> impl Strategy<Value = (Poset, Subset)> {
    poset(max_n).prop_flat_map(|p| {
        let n = p.len();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        (Just(p), 1..=full).prop_map(move |(p, m)| (p, Subset::from_mask(n, m).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn order_axioms(p in poset(12)) {
        let n = p.len();
        for x in 0..n {
            prop_assert!(!p.lt(x, x));
            for y in 0..n {
                prop_assert!(!(p.lt(x, y) && p.lt(y, x)));
                for z in 0..n {
                    if p.lt(x, y) && p.lt(y, z) {
                        prop_assert!(p.lt(x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn dual_is_involution(p in poset(12)) {
        prop_assert_eq!(p.dual().dual(), p.clone());
        prop_assert_eq!(p.dual().relation_count(), p.relation_count());
        prop_assert_eq!(is_indecomposable(&p.dual()), is_indecomposable(&p));
    }

    #[test]
    fn hasse_covers_generate_order(p in poset(12)) {
        let q = Poset::from_relations(p.len(), &p.hasse_covers()).unwrap();
        prop_assert_eq!(q, p);
    }

    #[test]
    fn canonical_form_is_relabeling_invariant((p, perm) in with_perm(9)) {
        let q = p.relabel(&perm);
        prop_assert_eq!(canonical_form(&p).unwrap(), canonical_form(&q).unwrap());
        prop_assert!(isomorphic(&p, &q));
        let f = canonical_form(&p).unwrap();
        prop_assert_eq!(canonical_form(&f.to_poset()).unwrap(), f);
    }

    #[test]
    fn pinned_form_follows_pins((p, perm) in with_perm(8)) {
        prop_assume!(p.len() >= 2);
        let q = p.relabel(&perm);
        prop_assert_eq!(pinned_form(&p, 0, 1).unwrap(), pinned_form(&q, perm[0], perm[1]).unwrap());
        let t = PinnedTriple::new(p.clone(), 0, 1).unwrap();
        let u = PinnedTriple::new(q, perm[0], perm[1]).unwrap();
        prop_assert!(isomorphic_pinned(&t, &u));
    }

    #[test]
    fn embeddings_are_order_embeddings((p, s) in with_subset(9)) {
        prop_assume!(s.len() >= 2);
        let members = s.to_vec();
        let t = PinnedTriple::new(p.clone(), members[0], members[1]).unwrap();
        let small = t.restrict(&s).unwrap();
        let m = find_pinned_embedding(&small, &t).expect("induced subposets embed");
        prop_assert_eq!(m[small.a], t.a);
        prop_assert_eq!(m[small.b], t.b);
        for x in 0..small.len() {
            for y in 0..small.len() {
                prop_assert_eq!(small.poset.lt(x, y), p.lt(m[x], m[y]));
            }
        }
    }

    #[test]
    fn decomposition_matches_oracle(p in poset(10)) {
        prop_assert_eq!(is_indecomposable(&p), indecomposable_oracle(&p).unwrap());
    }

    #[test]
    fn verdict_witness_rechecks(p in poset(10)) {
        let v = classify(&p);
        match (&v.kind, &v.witness) {
            (VerdictKind::Indecomposable, Witness::None) => prop_assert!(is_indecomposable(&p)),
            (VerdictKind::Disconnected, Witness::Components(cs)) => {
                prop_assert!(cs.len() > 1);
                let union = cs.iter().fold(0u64, |acc, c| acc | c.mask());
                prop_assert_eq!(union, p.ground().mask());
                for c in cs {
                    prop_assert!(is_order_autonomous(&p, c));
                }
            }
            (VerdictKind::SeriesDecomposable, Witness::Series { lower, upper }) => {
                prop_assert!(!lower.is_empty() && !upper.is_empty());
                for x in lower.iter() {
                    for y in upper.iter() {
                        prop_assert!(p.lt(x, y));
                    }
                }
            }
            (VerdictKind::HasNontrivialAutonomous, Witness::Autonomous(a)) => {
                prop_assert!(a.len() > 1 && a.len() < p.len());
                prop_assert!(is_order_autonomous(&p, a));
            }
            other => prop_assert!(false, "kind and witness disagree: {:?}", other),
        }
    }

    #[test]
    fn module_closure_is_smallest_autonomous((p, s) in with_subset(8)) {
        let c = module_closure(&p, &s).unwrap();
        prop_assert!(s.is_subset_of(&c));
        prop_assert!(is_order_autonomous(&p, &c));
        // every autonomous superset of s contains the closure
        let n = p.len();
        for m in 1u64..(1 << n) {
            let t = Subset::from_mask(n, m).unwrap();
            if s.is_subset_of(&t) && is_order_autonomous(&p, &t) {
                prop_assert!(c.is_subset_of(&t));
            }
        }
    }

    #[test]
    fn induced_keeps_order((p, s) in with_subset(12)) {
        let (q, map) = p.induced(&s).unwrap();
        prop_assert_eq!(q.len(), s.len());
        for x in 0..q.len() {
            for y in 0..q.len() {
                prop_assert_eq!(q.lt(x, y), p.lt(map[x], map[y]));
            }
        }
    }

    #[test]
    fn fence_distance_symmetric(p in poset(10)) {
        for x in 0..p.len() {
            for y in 0..p.len() {
                prop_assert_eq!(p.fence_distance(x, y), p.fence_distance(y, x));
                if p.comparable(x, y) {
                    prop_assert_eq!(p.fence_distance(x, y), Some(1));
                }
            }
        }
    }

    #[test]
    fn longest_chain_at_least_two(p in poset(10)) {
        for (a, b) in p.relations() {
            let k = p.longest_chain_between(a, b).unwrap();
            prop_assert!(k >= 2);
            prop_assert_eq!(k == 2, p.is_cover(a, b));
            prop_assert!(k <= p.open_interval(a, b).len() + 2);
        }
    }

    #[test]
    fn covers_sound_and_minimal(p in poset(8)) {
        for (a, b) in p.relations().into_iter().take(4) {
            let seed = Subset::from_indices(p.len(), [a, b]).unwrap();
            let r = upper_covers(&p, &seed).unwrap();
            let all = indecomposable_supersets(&p, &seed, p.len()).unwrap();
            for h in &r.covers {
                prop_assert!(seed.is_proper_subset_of(h));
                prop_assert!(indecomposable_oracle(&p.induced(h).unwrap().0).unwrap());
                prop_assert!(!all.iter().any(|w| w.is_proper_subset_of(h)));
            }
            for w in &all {
                prop_assert!(r.covers.iter().any(|h| h.is_subset_of(w)));
            }
            if let (Some(s), Some(min)) = (r.smallest.first(), r.covers.iter().map(|c| c.len()).min()) {
                prop_assert_eq!(s.len(), min);
            }
        }
    }

    #[test]
    fn peel_round_trip(steps in prop::collection::vec(prop::bool::ANY, 0..6)) {
        let steps: Vec<PeelStep> = steps
            .into_iter()
            .map(|b| if b { PeelStep::Top } else { PeelStep::Bottom })
            .collect();
        let e = x_from_peel(&steps);
        prop_assert_eq!(e.triple.len(), 4 + steps.len());
        let found = x_recognize(&e.triple).expect("constructed members are recognized");
        prop_assert!(isomorphic_pinned(&x_from_peel(&found).triple, &e.triple));
        prop_assert!(is_indecomposable(&e.triple.poset));
    }

    #[test]
    fn cache_round_trip(ps in prop::collection::vec(poset(6), 0..8)) {
        let n = 6;
        let ps: Vec<Poset> = ps.into_iter().filter(|p| p.len() == n).collect();
        let mut buf = Vec::new();
        cache::write_level(&mut buf, n, &ps).unwrap();
        let (m, back) = cache::read_level(&buf[..]).unwrap();
        prop_assert_eq!(m, n);
        let forms: Vec<_> = ps.iter().map(|p| canonical_form(p).unwrap()).collect();
        let back_forms: Vec<_> = back.iter().map(|p| canonical_form(p).unwrap()).collect();
        prop_assert_eq!(forms, back_forms);
    }

    #[test]
    fn subset_algebra(a in any::<u16>(), b in any::<u16>()) {
        let (x, y) = (
            Subset::from_mask(16, a as u64).unwrap(),
            Subset::from_mask(16, b as u64).unwrap(),
        );
        prop_assert_eq!(x.union(&y).len() + x.intersection(&y).len(), x.len() + y.len());
        prop_assert_eq!(x.complement().complement(), x);
        prop_assert!(x.intersection(&y).is_subset_of(&x));
        prop_assert_eq!(Subset::from_indices(16, x.iter()).unwrap(), x);
    }
}
