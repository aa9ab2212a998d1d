use std::collections::{BTreeMap, BTreeSet};

use preproj::arrangement::{Arrangement, Hyperplane};
use preproj::dynkin::DynkinSpec;
use proptest::prelude::*;

fn cross(a: &[i64], b: &[i64]) -> [i64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn det3(a: &[i64], b: &[i64], c: &[i64]) -> i64 {
    let x = cross(b, c);
    a[0] * x[0] + a[1] * x[1] + a[2] * x[2]
}

/// Regions of an essential central arrangement in R^3 by Zaslavsky's
/// theorem: 2 + 2 * sum over intersection lines of (planes through it - 1).
fn zaslavsky_3d(normals: &[Vec<i64>]) -> usize {
    let mut lines: BTreeMap<Vec<i64>, BTreeSet<usize>> = BTreeMap::new();
    for i in 0..normals.len() {
        for j in i + 1..normals.len() {
            let l = Hyperplane::canonical(&cross(&normals[i], &normals[j])).unwrap().normal;
            lines.entry(l).or_default().extend([i, j]);
        }
    }
    2 + 2 * lines.values().map(|s| s.len() - 1).sum::<usize>()
}

fn distinct(normals: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let mut seen = BTreeSet::new();
    normals
        .into_iter()
        .filter_map(|n| Hyperplane::canonical(&n))
        .filter(|h| seen.insert(h.normal.clone()))
        .map(|h| h.normal)
        .collect()
}

fn check_graph(a: &Arrangement) {
    let n = a.chambers().len();
    for c in 0..n {
        // every chamber is a cone over a polygon or polytope, so it has at least
        // `dimension` walls, and walls are crossed by single edges
        assert!(a.neighbours(c).len() >= a.dimension().min(a.hyperplanes().len()));
        for &d in a.neighbours(c) {
            assert_eq!(a.separation_set(c, d).len(), 1);
        }
        let o = a.opposite_chamber(c).unwrap();
        assert_eq!(a.opposite_chamber(o).unwrap(), c);
        assert_eq!(a.separation_set(c, o).len(), a.hyperplanes().len());
        let dist = a.graph_distances(c);
        for (d, &k) in dist.iter().enumerate() {
            // arrangement graphs are isometric to separation counts
            assert_eq!(k, a.separation_set(c, d).len());
        }
        let atoms = a.atoms_from(c).unwrap();
        assert_eq!(atoms.len(), n);
        // the containment order agrees with the factorization definition
        for beta in &atoms {
            for alpha in &atoms {
                assert_eq!(a.atom_leq(beta, alpha).unwrap(), a.atom_leq_by_factorization(beta, alpha).unwrap());
            }
        }
        assert_eq!(a.atom_length(&a.longest_atom(c).unwrap()), a.hyperplanes().len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn planar_arrangements_have_two_chambers_per_line(raw in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 1..6)) {
        let normals = distinct(raw);
        prop_assume!(!normals.is_empty());
        let a = Arrangement::from_normals(&normals).unwrap();
        prop_assert_eq!(a.chambers().len(), 2 * normals.len());
        check_graph(&a);
    }

    #[test]
    fn spatial_arrangements_match_zaslavsky(raw in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 3..6)) {
        let normals = distinct(raw);
        let essential = (0..normals.len()).any(|i| (i + 1..normals.len()).any(|j| (j + 1..normals.len()).any(|k| det3(&normals[i], &normals[j], &normals[k]) != 0)));
        prop_assume!(essential);
        let a = Arrangement::from_normals(&normals).unwrap();
        prop_assert_eq!(a.chambers().len(), zaslavsky_3d(&normals));
        check_graph(&a);
    }
}

fn of(spec: &str) -> Arrangement {
    let s: DynkinSpec = spec.parse().unwrap();
    Arrangement::from_restricted_roots(&s.diagram.restrict_roots(&s.contracted).unwrap()).unwrap()
}

#[test]
fn restricted_root_arrangements() {
    // full root systems give Weyl chambers: |W| many
    assert_eq!(of("A2:I=").chambers().len(), 6);
    assert_eq!(of("A3:I=").chambers().len(), 24);
    assert_eq!(of("D4:I=1,3").chambers().len(), of("D4:I=3,4").chambers().len());
    for spec in ["D5:I=1,3,5", "D4:I=3,4", "A3:I=2", "E6:I=1,2,3,5"] {
        check_graph(&of(spec));
    }
}

#[test]
fn dot_output_lists_every_edge() {
    let a = of("A2:I=");
    let dot = a.to_dot();
    assert!(dot.starts_with("graph"));
    assert_eq!(dot.matches(" -- ").count(), a.edges().len());
    let j = a.graph_json();
    assert_eq!(j["chambers"].as_array().unwrap().len(), 6);
    assert_eq!(j["edges"].as_array().unwrap().len(), 6);
}
