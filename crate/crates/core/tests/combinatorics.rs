mod support;

use equidissect::combo::{canonical_form, enumerate_types, BoundarySymmetry, CombinatorialType, EnumerateOptions};
use proptest::prelude::*;
use support::{brute_force_types, oracle_key};

fn enumerated_keys(n: usize, i: usize) -> std::collections::BTreeSet<Vec<[usize; 3]>> {
    enumerate_types(n, i, &EnumerateOptions::default())
        .unwrap()
        .iter()
        .map(|g| oracle_key(n, g.vertex_count(), g.faces()))
        .collect()
}

#[test]
fn matches_brute_force_oracle() {
    for (n, i) in [(3, 0), (4, 0), (5, 0), (6, 0), (3, 1), (4, 1), (5, 1), (3, 2), (4, 2)] {
        let oracle = brute_force_types(n, i);
        let ours = enumerated_keys(n, i);
        let count = enumerate_types(n, i, &EnumerateOptions::default()).unwrap().len();
        assert_eq!(count, ours.len(), "duplicate types for ({n}, {i})");
        assert_eq!(ours, oracle, "type sets differ for ({n}, {i})");
    }
}

#[test]
fn known_counts() {
    // Triangulations of a labeled convex n-gon are counted by Catalan numbers.
    for (n, catalan) in [(3, 1), (4, 2), (5, 5), (6, 14), (7, 42)] {
        assert_eq!(enumerate_types(n, 0, &EnumerateOptions::default()).unwrap().len(), catalan);
    }
    let square = enumerate_types(4, 1, &EnumerateOptions::default()).unwrap();
    assert_eq!(square.len(), 5);
    let cone = CombinatorialType::cone(4);
    let key = canonical_form(&cone, BoundarySymmetry::None).unwrap();
    assert!(square.iter().any(|g| canonical_form(g, BoundarySymmetry::None).unwrap() == key));
}

#[test]
fn enumerated_types_are_valid() {
    for (n, i) in [(4, 1), (3, 2), (5, 2), (4, 3)] {
        for g in enumerate_types(n, i, &EnumerateOptions::default()).unwrap() {
            assert!(g.validate().is_valid(), "{:?}", g.faces());
        }
    }
}

#[test]
fn symmetry_quotients() {
    let dihedral = EnumerateOptions { symmetry: BoundarySymmetry::Dihedral, ..Default::default() };
    let rotations = EnumerateOptions { symmetry: BoundarySymmetry::Rotations, ..Default::default() };
    // Hexagon triangulations: 14 labeled, 4 up to rotation, 3 up to rotation and reflection.
    assert_eq!(enumerate_types(6, 0, &rotations).unwrap().len(), 4);
    assert_eq!(enumerate_types(6, 0, &dihedral).unwrap().len(), 3);
    assert_eq!(enumerate_types(4, 1, &rotations).unwrap().len(), 2);
}

fn all_small_types() -> Vec<CombinatorialType> {
    [(4, 1), (3, 2), (4, 2), (5, 1)]
        .into_iter()
        .flat_map(|(n, i)| enumerate_types(n, i, &EnumerateOptions::default()).unwrap())
        .collect()
}

proptest! {
    #[test]
    fn canonical_form_ignores_interior_labels(seed in 0usize..1000, which in 0usize..64) {
        let types = all_small_types();
        let g = &types[which % types.len()];
        let m = g.interior_count();
        let mut perm: Vec<usize> = (0..m).collect();
        // Fisher-Yates driven by the seed.
        let mut s = seed;
        for k in (1..m).rev() {
            perm.swap(k, s % (k + 1));
            s /= k + 1;
        }
        let h = g.relabel_interior(&perm);
        prop_assert_eq!(
            canonical_form(g, BoundarySymmetry::None).unwrap(),
            canonical_form(&h, BoundarySymmetry::None).unwrap()
        );
    }

    #[test]
    fn flips_preserve_validity(which in 0usize..64, edge in 0usize..32) {
        let types = all_small_types();
        let g = &types[which % types.len()];
        let interior = g.interior_edges();
        let (a, b) = interior[edge % interior.len()];
        if let Some(h) = g.flip(a, b) {
            prop_assert!(h.validate().is_valid());
            prop_assert_eq!(h.face_count(), g.face_count());
        }
    }
}
