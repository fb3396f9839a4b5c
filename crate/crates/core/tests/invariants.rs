//! Cross-module checks: the geometry, the graph combinatorics, the label
//! calculus, and the finite-field counts must tell one consistent story.

use std::collections::BTreeSet;

use num::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use shi_ish::centers::{ipf_distribution, pf_center_distribution, reverse_center_distribution};
use shi_ish::charpoly::{characteristic_polynomial, zaslavsky_counts};
use shi_ish::graphs::{
    count_parking_functions, enumerate_parking_functions, graph_of_arrangement,
    reduced_determinant,
};
use shi_ish::graphs::augmented_graph;
use shi_ish::valid_pairs::{enumerate_valid_pairs, label_ell, region_of_valid_pair};
use shi_ish::ArrangementSpec;

/// Every subset of `{2, ..., n-1}`, smallest first.
fn all_x(n: usize) -> Vec<Vec<usize>> {
    let free: Vec<usize> = (2..n).collect();
    (0..1u32 << free.len())
        .map(|mask| free.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect())
        .collect()
}

#[test]
fn region_labels_are_exactly_the_graph_parking_functions() {
    for n in 3..=4usize {
        for x in all_x(n) {
            let spec = ArrangementSpec::new(n, x.clone());
            let labels: BTreeSet<Vec<usize>> = spec.label_census().into_keys().collect();
            let parking = enumerate_parking_functions(&graph_of_arrangement(&spec));
            assert_eq!(labels, parking, "n = {n}, x = {x:?}");
        }
    }
}

#[test]
fn adjacent_regions_differ_by_one_step_in_the_crossed_coordinate() {
    for (n, x) in [(3, vec![]), (3, vec![2]), (4, vec![2]), (4, vec![2, 3])] {
        let spec = ArrangementSpec::new(n, x.clone());
        let planes = spec.hyperplanes();
        let regions = spec.regions();
        let labels: Vec<Vec<usize>> = regions.iter().map(|r| spec.region_label(r)).collect();
        for wall in spec.adjacency(&regions) {
            let t = planes[wall.hyperplane].label_coordinate();
            let (la, lb) = (&labels[wall.a], &labels[wall.b]);
            for m in 1..=n {
                let (va, vb) = (la[m - 1] as i64, lb[m - 1] as i64);
                let expected = if m == t { 1 } else { 0 };
                assert_eq!(
                    (va - vb).abs(),
                    expected,
                    "wall {wall:?} of n = {n}, x = {x:?} at coordinate {m}"
                );
            }
        }
    }
}

#[test]
fn finite_field_counts_agree_with_exact_enumeration() {
    let mut cases: Vec<(usize, Vec<usize>)> =
        all_x(3).into_iter().map(|x| (3, x)).collect();
    cases.extend(all_x(4).into_iter().map(|x| (4, x)));
    cases.push((5, vec![3, 4]));
    cases.push((5, vec![2]));
    for (n, x) in cases {
        let spec = ArrangementSpec::new(n, x.clone());
        let (regions_z, bounded_z) = zaslavsky_counts(&characteristic_polynomial(&spec));
        let regions = spec.regions();
        let bounded = regions.iter().filter(|r| spec.is_relatively_bounded(r)).count();
        assert_eq!(regions_z, BigInt::from(regions.len()), "regions of n = {n}, x = {x:?}");
        assert_eq!(bounded_z, BigInt::from(bounded), "bounded of n = {n}, x = {x:?}");
    }
}

#[test]
fn label_collisions_happen_beyond_the_interval_family() {
    // The smallest arrangement whose labeling is not injective: more regions
    // than distinct labels, every label still a parking function.
    let spec = ArrangementSpec::new(4, [2]);
    let census = spec.label_census();
    assert_eq!(spec.regions().len(), 131);
    assert_eq!(census.len(), 125);
    assert_eq!(census.values().sum::<usize>(), 131);
    assert!(!spec.labels_injective());
}

#[test]
fn determinant_burning_and_census_agree_for_every_x() {
    for n in 3..=4usize {
        for x in all_x(n) {
            let spec = ArrangementSpec::new(n, x.clone());
            let g = graph_of_arrangement(&spec);
            let det = reduced_determinant(&augmented_graph(&g));
            let burned = count_parking_functions(&g);
            let distinct = spec.label_census().len();
            let expected = (n as u64 + 1).pow(n as u32 - 1);
            assert_eq!(det, BigInt::from(expected), "determinant at n = {n}, x = {x:?}");
            assert_eq!(burned, expected, "burning count at n = {n}, x = {x:?}");
            assert_eq!(distinct as u64, expected, "distinct labels at n = {n}, x = {x:?}");
            assert!(spec.regions().len() as u64 >= expected);
        }
    }
}

#[test]
fn graph_distributions_specialize_to_the_classical_ones() {
    for n in 3..=5usize {
        let shi = reverse_center_distribution(&ArrangementSpec::shi(n), 1);
        let ish = reverse_center_distribution(&ArrangementSpec::ish(n), 1);
        assert_eq!(shi, pf_center_distribution(n), "n = {n}");
        assert_eq!(ish, ipf_distribution(n), "n = {n}");
    }
}

#[test]
fn pairs_biject_onto_shi_regions_at_n_five() {
    let spec = ArrangementSpec::shi(5);
    let mut seen = BTreeSet::new();
    for p in enumerate_valid_pairs(5) {
        let region = region_of_valid_pair(&p, &spec);
        assert_eq!(spec.region_label(&region), label_ell(&p), "pair {p}");
        seen.insert(region.signs().to_vec());
    }
    assert_eq!(seen.len(), spec.regions().len());
}

#[test]
fn random_pairs_at_n_six_label_their_regions() {
    let spec = ArrangementSpec::new(6, 2..6);
    let pairs = enumerate_valid_pairs(6);
    let mut rng = StdRng::seed_from_u64(0x5eed_0009);
    for _ in 0..120 {
        let p = &pairs[rng.gen_range(0..pairs.len())];
        let region = region_of_valid_pair(p, &spec);
        assert_eq!(spec.region_label(&region), label_ell(p), "pair {p}");
    }
}
