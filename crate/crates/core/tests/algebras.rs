use preproj::algebra::QuiverAlgebra;
use preproj::derived::random_complex;
use preproj::dynkin::DynkinSpec;
use preproj::fixtures;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `dim Π(Δ) = n h (h + 1) / 6` with `h` the Coxeter number.
#[test]
fn preprojective_dimensions() {
    for (spec, n, h) in [("A1", 1, 2), ("A2", 2, 3), ("A3", 3, 4), ("A4", 4, 5), ("D4", 4, 6), ("D5", 5, 8)] {
        let alg = fixtures::preprojective(spec).unwrap();
        assert_eq!(alg.dim(), n * h * (h + 1) / 6, "{spec}");
        assert_eq!(alg.num_vertices(), n);
    }
}

#[test]
fn projective_endomorphisms() {
    let a1 = fixtures::preprojective("A1").unwrap();
    assert!(a1.is_brick(&a1.projective_module(0)));
    let a3 = fixtures::preprojective("A3").unwrap();
    // End(P_i) = e_i Π e_i
    for (i, e) in [(0, 1), (1, 2), (2, 1)] {
        assert_eq!(a3.hom_dim(&a3.projective_module(i), &a3.projective_module(i)), e);
        assert_eq!(a3.between(i, i).len(), e);
    }
}

#[test]
fn corner_algebra_vertices() {
    let a3 = fixtures::preprojective("A3").unwrap();
    let c = a3.corner(&[1]).unwrap();
    assert_eq!(c.num_vertices(), 2);
    // e Π e for e = e_1 + e_3: dimension is the sum of the matching block sizes
    let block: usize = [0usize, 2]
        .iter()
        .flat_map(|&s| [0usize, 2].into_iter().map(move |t| (s, t)))
        .map(|(s, t)| a3.between(s, t).len())
        .sum();
    assert_eq!(c.dim(), block);
}

fn algebras() -> Vec<QuiverAlgebra> {
    vec![
        QuiverAlgebra::linear_a(3).unwrap(),
        fixtures::preprojective("A2").unwrap(),
        fixtures::preprojective("A3").unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Yoneda: `Hom(P_i, M) = M_i`; Hom is additive; `End` of a simple is the field.
    #[test]
    fn hom_dimensions(seed in any::<u64>(), which in 0usize..3) {
        let alg = &algebras()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_complex(alg, &mut rng);
        let y = random_complex(alg, &mut rng);
        for m in x.terms().iter().chain(y.terms()) {
            alg.check_module(m).unwrap();
            for i in 0..alg.num_vertices() {
                prop_assert_eq!(alg.hom_dim(&alg.projective_module(i), m), m.dims[i]);
                prop_assert_eq!(alg.hom_dim(&alg.simple_module(i), &alg.simple_module(i)), 1);
            }
            for n in y.terms() {
                let sum = m.direct_sum(n);
                prop_assert_eq!(alg.hom_dim(&sum, n), alg.hom_dim(m, n) + alg.hom_dim(n, n));
                prop_assert_eq!(alg.hom_dim(n, &sum), alg.hom_dim(n, m) + alg.hom_dim(n, n));
            }
        }
    }

    /// Every basis element returned by `hom_module` is a module map, and
    /// they are linearly independent.
    #[test]
    fn hom_bases_are_module_maps(seed in any::<u64>(), which in 0usize..3) {
        let alg = &algebras()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_complex(alg, &mut rng);
        for m in x.terms() {
            for n in x.terms() {
                let basis = alg.hom_module(m, n);
                for f in &basis {
                    prop_assert!(alg.is_module_map(f, m, n));
                }
                prop_assert_eq!(basis.len(), alg.hom_dim(m, n));
            }
        }
    }
}

#[test]
fn dynkin_grammar_reaches_algebras() {
    let spec: DynkinSpec = "A3:I=2".parse().unwrap();
    let alg = QuiverAlgebra::preprojective(&spec.diagram).unwrap();
    let idx: Vec<usize> = spec.contracted.iter().map(|i| i - 1).collect();
    assert_eq!(alg.corner(&idx).unwrap().num_vertices(), 2);
}
