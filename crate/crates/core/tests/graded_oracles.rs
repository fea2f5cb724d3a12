//! Ramsey thresholds, canonical labeling completeness and the graded
//! recursion, against brute-force orbit enumeration.

use std::collections::BTreeMap;

use proptest::prelude::*;
use ramsey_core::graded::{
    brute_force_ramsey, canonical_form, canonical_key, count_good_colorings, edge_count, good_classes,
    graded_ramsey, has_forbidden_clique, CliqueConstraint, EdgeColoring, RamseyOutcome, SearchMethod,
};

fn coloring_from_mask(v: usize, mask: u64) -> EdgeColoring {
    let bits: Vec<bool> = (0..edge_count(v)).map(|i| mask >> i & 1 == 1).collect();
    EdgeColoring::from_bits(v, &bits).unwrap()
}

#[test]
fn orbit_sums_cover_every_coloring() {
    for (v, classes) in [(3usize, 4usize), (4, 11), (5, 34), (6, 156)] {
        let mut seen: BTreeMap<_, u64> = BTreeMap::new();
        let fact: u64 = (1..=v as u64).product();
        for mask in 0u64..1 << edge_count(v) {
            let form = canonical_form(&coloring_from_mask(v, mask)).unwrap();
            seen.entry(form.key).or_insert(fact / form.automorphisms);
        }
        assert_eq!(seen.len(), classes, "v={v}");
        assert_eq!(seen.values().sum::<u64>(), 1 << edge_count(v), "v={v}");
    }
}

#[test]
fn r33_by_enumeration() {
    let s = brute_force_ramsey(CliqueConstraint::new(3, 3).unwrap(), 10);
    assert_eq!(s.outcome, RamseyOutcome::Found { v: 6, method: SearchMethod::Enumeration });
}

#[test]
fn r34_by_enumeration_then_glue() {
    let s = brute_force_ramsey(CliqueConstraint::new(3, 4).unwrap(), 12);
    assert_eq!(s.outcome, RamseyOutcome::Found { v: 9, method: SearchMethod::GluePrune });
    assert!(s.steps.iter().any(|&(v, m, e)| v == 8 && m == SearchMethod::Enumeration && e));
}

#[test]
fn thresholds_are_monotone() {
    let c = CliqueConstraint::new(3, 4).unwrap();
    let exists: Vec<bool> = (1..=9).map(|v| !good_classes(c, v).unwrap().is_empty()).collect();
    assert!(exists.windows(2).all(|w| w[0] || !w[1]));
    // Three good (3,4) classes on eight vertices.
    assert_eq!(good_classes(c, 8).unwrap().len(), 3);
}

#[test]
fn labeled_good_counts_match_orbit_sums() {
    let c = CliqueConstraint::new(3, 3).unwrap();
    for v in 1..=5 {
        let fact: u64 = (1..=v as u64).product();
        let orbit_sum: u64 = good_classes(c, v)
            .unwrap()
            .iter()
            .map(|g| fact / canonical_form(g).unwrap().automorphisms)
            .sum();
        assert_eq!(orbit_sum, count_good_colorings(c, v).unwrap(), "v={v}");
    }
}

#[test]
fn classical_bounds() {
    assert_eq!(graded_ramsey(1, 7).unwrap(), 1);
    assert_eq!(graded_ramsey(3, 3).unwrap(), 6);
    assert_eq!(graded_ramsey(4, 4).unwrap(), 20);
    assert_eq!(graded_ramsey(4, 5).unwrap(), 35);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_key_is_permutation_invariant(v in 2usize..10, mask in any::<u64>(), shuffle in any::<u64>()) {
        let c = coloring_from_mask(v, mask & ((1u64 << edge_count(v)) - 1));
        let mut perm: Vec<usize> = (0..v).collect();
        let mut s = shuffle;
        for i in (1..v).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let relabeled = c.permuted(&perm);
        prop_assert_eq!(canonical_key(&c).unwrap(), canonical_key(&relabeled).unwrap());
        prop_assert_eq!(
            has_forbidden_clique(&c, CliqueConstraint { m: 3, n: 4 }),
            has_forbidden_clique(&relabeled, CliqueConstraint { m: 3, n: 4 })
        );
    }
}
