mod common {
    pub mod raw;
}

use common::raw::raw_counts;
use indeco::catalog::{figure2_make_id, x_generate, Figure2Id};
use indeco::covers::{indecomposable_supersets, upper_covers};
use indeco::decomposition::{indecomposable_oracle, is_indecomposable};
use indeco::enumeration::{all_posets_with, Strategy};
use indeco::Subset;

#[test]
fn raw_matrix_counts_match_enumeration() {
    for n in 1..=5 {
        let raw = raw_counts(n);
        let posets = all_posets_with(n, Strategy::Cut).unwrap();
        assert_eq!(posets.len(), raw.classes, "n = {n}");
        let ind = posets.iter().filter(|p| is_indecomposable(p)).count();
        assert_eq!(ind, raw.indecomposable, "n = {n}");
    }
}

#[test]
fn both_generators_agree_to_six() {
    for n in 1..=6 {
        let cut = all_posets_with(n, Strategy::Cut).unwrap();
        let max = all_posets_with(n, Strategy::Maximal).unwrap();
        assert_eq!(cut, max, "n = {n}");
        for p in &cut {
            assert_eq!(is_indecomposable(p), indecomposable_oracle(p).unwrap());
        }
    }
}

/// Brute-force minimality of every cover of the pins inside each catalog
/// chain entry and family member.
#[test]
fn catalog_covers_are_minimal() {
    let mut entries: Vec<_> = Figure2Id::all().map(figure2_make_id).collect();
    entries.extend(x_generate(9));
    for e in entries {
        let t = &e.triple;
        let seed = t.pins();
        let r = upper_covers(&t.poset, &seed).unwrap();
        let all = indecomposable_supersets(&t.poset, &seed, t.len()).unwrap();
        for h in &r.covers {
            let sub = t.poset.induced(h).unwrap().0;
            assert!(indecomposable_oracle(&sub).unwrap(), "{}", e.title());
            assert!(
                !all.iter().any(|w| w.is_proper_subset_of(h)),
                "{}",
                e.title()
            );
        }
        let brute: Vec<Subset> = (1u64..1 << t.len())
            .map(|m| Subset::from_mask(t.len(), m).unwrap())
            .filter(|s| seed.is_proper_subset_of(s))
            .filter(|s| indecomposable_oracle(&t.poset.induced(s).unwrap().0).unwrap())
            .collect();
        let mut sorted = all.clone();
        sorted.sort();
        let mut brute_sorted = brute;
        brute_sorted.sort();
        assert_eq!(sorted, brute_sorted, "{}", e.title());
    }
}
