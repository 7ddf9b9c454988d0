mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use semibrace::constructions::{phi_sym3, sd12};
use semibrace::enumeration::{are_isomorphic, corpus, enumerate, is_isomorphism, EnumerationOptions, IsoCertificate};
use semibrace::format::StructureFile;
use semibrace::group::groups_of_order;
use semibrace::FiniteLeftSemibrace;

fn canonical(b: &FiniteLeftSemibrace) -> (Vec<usize>, Vec<usize>) {
    common::canonical_form(b.order(), &b.add_table().rows().concat(), &b.mul_table().rows().concat())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Order 4 without the λ-map: over each group of order 4, every `+` whose
/// rows are permutations, kept when associative and compatible.
fn row_permutation_classes_4() -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    let n = 4;
    let rows = permutations(n);
    let mut classes = BTreeSet::new();
    for (_, g) in groups_of_order(n) {
        let mul = g.table().rows().concat();
        let inv = |a: usize| (0..n).find(|&b| mul[a * n + b] == 0).unwrap();
        for code in 0..rows.len().pow(n as u32) {
            let mut add = Vec::with_capacity(n * n);
            let mut c = code;
            for _ in 0..n {
                add.extend_from_slice(&rows[c % rows.len()]);
                c /= rows.len();
            }
            let assoc = (0..n).all(|a| {
                (0..n).all(|b| (0..n).all(|c| add[add[a * n + b] * n + c] == add[a * n + add[b * n + c]]))
            });
            let compat = assoc
                && (0..n).all(|a| {
                    (0..n).all(|b| {
                        (0..n).all(|c| {
                            mul[a * n + add[b * n + c]]
                                == add[mul[a * n + b] * n + mul[a * n + add[inv(a) * n + c]]]
                        })
                    })
                });
            if compat {
                classes.insert(common::canonical_form(n, &add, &mul));
            }
        }
    }
    classes
}

#[test]
fn raw_census_matches_the_naive_oracle() {
    for n in 1..=3 {
        let census = enumerate(n, EnumerationOptions::default()).unwrap();
        let ours: BTreeSet<_> = census.entries.iter().map(|e| canonical(&e.semibrace)).collect();
        assert_eq!(ours.len(), census.entries.len(), "n = {n}");
        assert_eq!(ours, common::naive_classes(n), "n = {n}");
    }
}

#[test]
fn raw_census_of_order_four_matches_the_row_oracle() {
    let census = enumerate(4, EnumerationOptions::default()).unwrap();
    let ours: BTreeSet<_> = census.entries.iter().map(|e| canonical(&e.semibrace)).collect();
    assert_eq!(ours.len(), 7);
    assert_eq!(ours, row_permutation_classes_4());
}

#[test]
fn census_sizes() {
    let sizes: Vec<usize> =
        (1..=6).map(|n| enumerate(n, EnumerationOptions::default()).unwrap().entries.len()).collect();
    assert_eq!(sizes, [1, 2, 2, 7, 2, 12]);
}

#[test]
fn families_sit_inside_the_raw_census() {
    for n in 1..=6 {
        let raw = enumerate(n, EnumerationOptions::default()).unwrap();
        let raw: BTreeSet<_> = raw.entries.iter().map(|e| canonical(&e.semibrace)).collect();
        let fam = enumerate(n, EnumerationOptions { family_only: true, ..Default::default() }).unwrap();
        for e in &fam.entries {
            assert!(raw.contains(&canonical(&e.semibrace)), "n = {n}: {} missing", e.origin);
        }
    }
}

#[test]
fn fixtures_are_in_the_census() {
    let six = enumerate(6, EnumerationOptions::default()).unwrap().entries;
    let phi = phi_sym3();
    assert_eq!(six.iter().filter(|e| are_isomorphic(&phi, &e.semibrace).unwrap().is_isomorphism()).count(), 1);
    let fam = enumerate(12, EnumerationOptions { family_only: true, ..Default::default() }).unwrap();
    let d = sd12();
    assert!(fam.entries.iter().any(|e| are_isomorphic(&d, &e.semibrace).unwrap().is_isomorphism()));
}

fn relabel_fixing_zero(b: &FiniteLeftSemibrace, seed: &[usize]) -> (FiniteLeftSemibrace, Vec<usize>) {
    let n = b.order();
    let mut rest: Vec<usize> = (1..n).collect();
    let mut perm = vec![0];
    for &s in seed.iter().take(n.saturating_sub(1)) {
        perm.push(rest.remove(s % rest.len()));
    }
    (b.relabeled(&perm).unwrap(), perm)
}

proptest! {
    #[test]
    fn relabeling_is_detected_as_isomorphic(seed in prop::collection::vec(0usize..64, 11), which in 0usize..3) {
        let b = [phi_sym3(), sd12(), corpus(4).unwrap().swap_remove(5).semibrace][which].clone();
        let (c, perm) = relabel_fixing_zero(&b, &seed);
        prop_assert!(is_isomorphism(&b, &c, &perm));
        match are_isomorphic(&b, &c).unwrap() {
            IsoCertificate::Isomorphism(f) => prop_assert!(is_isomorphism(&b, &c, &f)),
            other => prop_assert!(false, "{other:?}"),
        }
        prop_assert_eq!(canonical_if_small(&b), canonical_if_small(&c));
    }

    #[test]
    fn structure_files_round_trip(seed in prop::collection::vec(0usize..64, 11), which in 0usize..2) {
        let b = [phi_sym3(), sd12()][which].clone();
        let (c, _) = relabel_fixing_zero(&b, &seed);
        let text = StructureFile::from_semibrace(&c, None).to_json();
        let back = StructureFile::parse(&text).unwrap().to_semibrace().unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(StructureFile::from_semibrace(&back, None).to_json(), text);
    }
}

fn canonical_if_small(b: &FiniteLeftSemibrace) -> Option<(Vec<usize>, Vec<usize>)> {
    (b.order() <= 6).then(|| canonical(b))
}

#[test]
fn non_isomorphic_pairs_are_separated() {
    let four = enumerate(4, EnumerationOptions::default()).unwrap();
    for (i, x) in four.entries.iter().enumerate() {
        for y in &four.entries[i + 1..] {
            let cert = are_isomorphic(&x.semibrace, &y.semibrace).unwrap();
            assert!(!cert.is_isomorphism(), "{} vs {}", x.origin, y.origin);
        }
    }
}
