use std::collections::BTreeSet;

use preproj::dynkin::{primitive_restricted_roots, DynkinDiagram, DynkinSpec, Family};
use proptest::prelude::*;

fn diagram() -> impl Strategy<Value = DynkinDiagram> {
    prop_oneof![
        (1usize..=7).prop_map(|n| DynkinDiagram::new(Family::A, n).unwrap()),
        (4usize..=7).prop_map(|n| DynkinDiagram::new(Family::D, n).unwrap()),
        (6usize..=8).prop_map(|n| DynkinDiagram::new(Family::E, n).unwrap()),
    ]
}

/// Number of positive roots from the classification.
fn expected_root_count(d: &DynkinDiagram) -> usize {
    let n = d.rank();
    match d.family() {
        Family::A => n * (n + 1) / 2,
        Family::D => n * (n - 1),
        Family::E => [36, 63, 120][n - 6],
    }
}

#[test]
fn root_counts_match_the_classification() {
    for d in ["A1", "A4", "D4", "D5", "D6", "E6", "E7", "E8"] {
        let d = d.parse::<DynkinSpec>().unwrap().diagram;
        assert_eq!(d.positive_roots().len(), expected_root_count(&d), "{d:?}");
    }
}

#[test]
fn spec_grammar() {
    let s: DynkinSpec = "D5:I=1,3,5".parse().unwrap();
    assert_eq!(s.contracted, vec![1, 3, 5]);
    let s: DynkinSpec = "A2:I=".parse().unwrap();
    assert!(s.contracted.is_empty());
    for bad in ["", "Q3", "A0", "D3", "E9", "A2:J=1", "A2:I=3", "A2:I=x"] {
        assert!(bad.parse::<DynkinSpec>().is_err(), "{bad:?} accepted");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflections_are_involutions_permuting_roots(d in diagram(), seed in any::<u64>()) {
        let n = d.rank();
        let i = (seed as usize % n) + 1;
        let roots = d.positive_roots();
        let all: BTreeSet<Vec<i64>> = roots
            .iter()
            .flat_map(|r| [r.0.clone(), r.0.iter().map(|x| -x).collect()])
            .collect();
        for r in &roots {
            let s = d.reflect(i, &r.0).unwrap();
            prop_assert!(all.contains(&s));
            prop_assert_eq!(d.reflect(i, &s).unwrap(), r.0.clone());
        }
        // s_i(alpha_i) = -alpha_i
        let mut e = vec![0; n];
        e[i - 1] = 1;
        let minus: Vec<i64> = e.iter().map(|x| -x).collect();
        prop_assert_eq!(d.reflect(i, &e).unwrap(), minus);
    }

    #[test]
    fn braid_relations_hold(d in diagram(), a in any::<u64>(), b in any::<u64>()) {
        let n = d.rank();
        prop_assert!(d.braid_check(a as usize % n + 1, b as usize % n + 1).unwrap());
    }

    #[test]
    fn restriction_is_projection_of_positive_roots(d in diagram(), mask in any::<u16>()) {
        let n = d.rank();
        let mut contracted: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        if contracted.len() == n {
            contracted.pop();
        }
        let got: BTreeSet<Vec<i64>> = d.restrict_roots(&contracted).unwrap().into_iter().map(|r| r.coords).collect();
        let expected: BTreeSet<Vec<i64>> = d
            .positive_roots()
            .iter()
            .map(|r| (1..=n).filter(|i| !contracted.contains(i)).map(|i| r.0[i - 1]).collect::<Vec<_>>())
            .filter(|v| v.iter().any(|&x| x != 0))
            .collect();
        prop_assert_eq!(&got, &expected);

        let rs = d.restrict_roots(&contracted).unwrap();
        let prim: BTreeSet<Vec<i64>> = primitive_restricted_roots(&rs).into_iter().map(|r| r.coords).collect();
        let expected_prim: BTreeSet<Vec<i64>> = expected
            .iter()
            .filter(|v| !(2..=6).any(|k| v.iter().all(|x| x % k == 0) && expected.contains(&v.iter().map(|x| x / k).collect::<Vec<_>>())))
            .cloned()
            .collect();
        prop_assert_eq!(prim, expected_prim);
    }
}
