//! Small named algebras, modules and complexes used by tests, suites and the
//! command line.

use crate::algebra::{Module, QuiverAlgebra};
use crate::derived::Complex;
use crate::dynkin::DynkinSpec;
use crate::error::Result;
use crate::linalg::Mat;
use crate::smc::{MutationPath, Smc};

/// Preprojective algebra of a Dynkin spec such as `"A3"`.
pub fn preprojective(spec: &str) -> Result<QuiverAlgebra> {
    QuiverAlgebra::preprojective(&spec.parse::<DynkinSpec>()?.diagram)
}

/// Module given by a dimension vector and `(arrow name, matrix)` pairs; arrows
/// not listed act by zero.
pub fn module(alg: &QuiverAlgebra, dims: &[usize], arrows: &[(&str, Mat)]) -> Module {
    let mut m = Module::with_dims(alg, dims.to_vec());
    for (name, mat) in arrows {
        let k = alg.arrow_index(name).unwrap_or_else(|| panic!("no arrow named {name}"));
        m.arrows[k] = mat.clone();
    }
    m
}

fn one() -> Mat {
    Mat::from_i64(1, 1, &[1])
}

/// Over Π(A2): the (1,1) module with `a = 0`, `a* = 1` (isomorphic to `P_2`).
pub fn pi_a2_e(alg: &QuiverAlgebra) -> Module {
    module(alg, &[1, 1], &[("a*", one())])
}

/// Over Π(A2): the (1,1) module with `a = 1`, `a* = 0` (isomorphic to `P_1`).
pub fn pi_a2_e_prime(alg: &QuiverAlgebra) -> Module {
    module(alg, &[1, 1], &[("a", one())])
}

/// Worked example over Π(A3): modules `M`, `N`, `K`, the object
/// `x = M ⊕ N[1]` and the collection `S' = {M, S_1[1], K[1]}`.
#[derive(Debug, Clone)]
pub struct PiA3Example {
    pub m: Module,
    pub n: Module,
    pub k: Module,
}

impl PiA3Example {
    pub fn new(alg: &QuiverAlgebra) -> Self {
        PiA3Example {
            m: module(alg, &[1, 1, 0], &[("a", one())]),
            n: module(alg, &[1, 1, 1], &[("a", one()), ("b", one())]),
            k: module(alg, &[0, 1, 1], &[("b", one())]),
        }
    }

    /// `M` in degree 0 and `N` in degree -1.
    pub fn summands(&self) -> Vec<Complex> {
        vec![Complex::stalk(self.m.clone(), 0), Complex::stalk(self.n.clone(), 0).shift(1)]
    }

    pub fn x(&self, alg: &QuiverAlgebra) -> Complex {
        Complex::direct_sum_all(alg, &self.summands())
    }

    pub fn s_prime(&self, alg: &QuiverAlgebra) -> Smc {
        Smc {
            elements: vec![
                Complex::stalk(self.m.clone(), 0),
                Complex::stalk(alg.simple_module(0), 0).shift(1),
                Complex::stalk(self.k.clone(), 0).shift(1),
            ],
            provenance: MutationPath::default(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derived::{Derived, Window};
    use crate::smc::NarrowGuards;

    #[test]
    fn fixture_modules_are_valid() {
        let a3 = preprojective("A3").unwrap();
        let ex = PiA3Example::new(&a3);
        for m in [&ex.m, &ex.n, &ex.k] {
            a3.check_module(m).unwrap();
            assert!(a3.is_brick(m));
        }
        let a2 = preprojective("A2").unwrap();
        a2.check_module(&pi_a2_e(&a2)).unwrap();
        a2.check_module(&pi_a2_e_prime(&a2)).unwrap();
    }

    #[test]
    fn worked_example() {
        let a3 = preprojective("A3").unwrap();
        let d = Derived::new(&a3);
        let ex = PiA3Example::new(&a3);
        let x = ex.x(&a3);
        assert_eq!(d.hom_dim(&x, &x, 0), 2);
        assert_eq!(d.std_bounds(&x).unwrap(), Window { lo: -1, hi: 0 });
        assert!(d.has_no_negative_selfext(&x));
        let s = ex.s_prime(&a3);
        // M has top S_1, so Hom(M, S_1) != 0 and S' fails the Hom axioms
        let rep = d.validate(&s);
        assert_eq!(rep.failures, vec![(0, 1, -1, 1), (0, 2, 0, 1)]);
        assert_eq!(d.smc_window(&x, &s).unwrap(), Window { lo: 0, hi: 1 });
        let r = d.narrow(&x, &d.standard_smc(), NarrowGuards::default()).unwrap();
        assert_eq!(d.smc_window(&x, &r.smc).unwrap(), Window { lo: 0, hi: 0 });
        assert!(d.semibrick_pair_check(std::slice::from_ref(&ex.m), std::slice::from_ref(&ex.n)).is_pair());
    }
}
