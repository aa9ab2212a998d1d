//! Left and right mutation by iterated killing of Homs.
//!
//! Left mutation at `i`: `y_i -> y_i[1]`, and for `j != i` start from
//! `z = y_j[-1]`, take the cone `c` of the universal map `z -> y_i^d`, and
//! repeat with `z = c[-1]` until `Hom(c, y_i[1]) = 0`. The layers assemble
//! into a left `Filt(y_i)`-approximation of `y_j[-1]` whose cone is `c`.
//! Right mutation is dual.

use super::{Direction, Smc};
use crate::derived::{cone_unchecked, ChainMap, Complex, Derived, HomBasis};
use crate::error::{Error, Result};
use crate::algebra::ModuleMap;

/// Default bound on the number of approximation layers.
pub const DEFAULT_APPROX_DEPTH: usize = 32;

/// Postconditions verified by [`Derived::mutate_checked`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MutationChecks {
    pub validate: bool,
    pub window: bool,
    pub inverse: bool,
}

impl MutationChecks {
    pub fn all() -> Self {
        MutationChecks { validate: true, window: true, inverse: true }
    }

    pub fn none() -> Self {
        MutationChecks { validate: false, window: false, inverse: false }
    }
}

impl Derived<'_> {
    pub fn mutate(&self, u: &Smc, i: usize, dir: Direction) -> Result<Smc> {
        match dir {
            Direction::Left => self.left_mutate(u, i),
            Direction::Right => self.right_mutate(u, i),
        }
    }

    pub fn left_mutate(&self, u: &Smc, i: usize) -> Result<Smc> {
        self.mutate_with(u, i, Direction::Left)
    }

    pub fn right_mutate(&self, u: &Smc, i: usize) -> Result<Smc> {
        self.mutate_with(u, i, Direction::Right)
    }

    fn mutate_with(&self, u: &Smc, i: usize, dir: Direction) -> Result<Smc> {
        if i >= u.len() {
            return Err(Error::Precondition(format!("mutation index {} out of range 1..{}", i + 1, u.len())));
        }
        let yi = &u.elements[i];
        let mut elements = Vec::with_capacity(u.len());
        for (j, yj) in u.elements.iter().enumerate() {
            if j == i {
                elements.push(yi.shift(if dir == Direction::Left { 1 } else { -1 }));
                continue;
            }
            let z = match dir {
                Direction::Left => self.kill_homs_into(&yj.shift(-1), yi)?,
                Direction::Right => self.kill_homs_from(yi, &yj.shift(1))?,
            };
            elements.push(z);
        }
        let mut provenance = u.provenance.clone();
        provenance.steps.push((i, dir));
        Ok(Smc { elements, provenance })
    }

    /// Iterated universal cones until `Hom(c, y[1])` vanishes.
    fn kill_homs_into(&self, z: &Complex, y: &Complex) -> Result<Complex> {
        let mut z = z.clone();
        for _ in 0..DEFAULT_APPROX_DEPTH {
            let basis = self.hom_basis(&z, y);
            let d = basis.maps.len();
            let c = if d == 0 { z.shift(1) } else { self.universal_cone(&basis, y) };
            if self.hom_dim(&c, y, 1) == 0 {
                return Ok(c);
            }
            z = c.shift(-1);
        }
        Err(Error::Guard(format!("left approximation did not stabilize within {DEFAULT_APPROX_DEPTH} layers")))
    }

    /// Cone of the map `source -> y^d` whose components are a Hom basis.
    fn universal_cone(&self, basis: &HomBasis, y: &Complex) -> Complex {
        let alg = self.alg();
        let d = basis.maps.len();
        let target = Complex::direct_sum_all(alg, &vec![y.clone(); d]);
        let src = &basis.source;
        let comps = (src.lo()..=src.hi())
            .map(|k| {
                let parts: Vec<ModuleMap> = basis.maps.iter().map(|f| f.at(alg, src, y, k)).collect();
                ModuleMap {
                    mats: (0..alg.num_vertices())
                        .map(|v| {
                            parts.iter().skip(1).fold(parts[0].mats[v].clone(), |acc, p| acc.vstack(&p.mats[v]))
                        })
                        .collect(),
                }
            })
            .collect();
        let f = ChainMap { lo: src.lo(), comps };
        self.normalize(&cone_unchecked(alg, src, &target, &f))
    }

    /// Iterated universal cocones until `Hom(y, c[1])` vanishes.
    fn kill_homs_from(&self, y: &Complex, z: &Complex) -> Result<Complex> {
        let mut z = z.clone();
        for _ in 0..DEFAULT_APPROX_DEPTH {
            let basis = self.hom_basis(y, &z);
            let c = if basis.maps.is_empty() { z.shift(-1) } else { self.universal_cocone(&basis, &z) };
            if self.hom_dim(y, &c, 1) == 0 {
                return Ok(c);
            }
            z = c.shift(1);
        }
        Err(Error::Guard(format!("right approximation did not stabilize within {DEFAULT_APPROX_DEPTH} layers")))
    }

    /// Cocone of the map `y^d -> z` whose components are a Hom basis.
    fn universal_cocone(&self, basis: &HomBasis, z: &Complex) -> Complex {
        let alg = self.alg();
        let d = basis.maps.len();
        let one = &basis.source;
        let source = Complex::direct_sum_all(alg, &vec![one.clone(); d]);
        let comps = (source.lo()..=source.hi())
            .map(|k| {
                let parts: Vec<ModuleMap> = basis.maps.iter().map(|f| f.at(alg, one, z, k)).collect();
                ModuleMap {
                    mats: (0..alg.num_vertices())
                        .map(|v| {
                            parts.iter().skip(1).fold(parts[0].mats[v].clone(), |acc, p| acc.hstack(&p.mats[v]))
                        })
                        .collect(),
                }
            })
            .collect();
        let f = ChainMap { lo: source.lo(), comps };
        self.normalize(&cone_unchecked(alg, &source, z, &f).shift(-1))
    }

    /// Mutation followed by the requested postcondition checks; a failed
    /// check is an internal error carrying a diagnostic.
    pub fn mutate_checked(&self, u: &Smc, i: usize, dir: Direction, checks: MutationChecks) -> Result<Smc> {
        let v = self.mutate(u, i, dir)?;
        if checks.validate {
            let report = self.validate(&v);
            if !report.passed {
                return Err(Error::Internal(format!(
                    "mutation at {} ({}) produced a collection failing validation: {}",
                    i + 1,
                    dir.letter(),
                    report.messages.join("; ")
                )));
            }
        }
        if checks.window {
            let (lo, hi) = if dir == Direction::Left { (-1, 0) } else { (0, 1) };
            for (j, y) in v.elements.iter().enumerate() {
                let w = self.smc_window(y, u)?;
                if w.lo < lo || w.hi > hi {
                    return Err(Error::Internal(format!(
                        "mutated element {} has window {w} relative to the old collection, expected within [{lo},{hi}]",
                        j + 1
                    )));
                }
            }
        }
        if checks.inverse {
            let opposite = if dir == Direction::Left { Direction::Right } else { Direction::Left };
            let back = self.mutate(&v, i, opposite)?;
            if !self.smc_isomorphic(&back, u) {
                return Err(Error::Internal(format!("mutation at {} is not inverted by the opposite mutation", i + 1)));
            }
        }
        Ok(v)
    }

    /// Element `i` of the left mutation at `i` is isomorphic to `y_i[1]`.
    pub fn simples_shift_test(&self, u: &Smc, i: usize) -> Result<bool> {
        let v = self.left_mutate(u, i)?;
        Ok(self.isomorphic(&v.elements[i], &u.elements[i].shift(1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Module, QuiverAlgebra};
    use crate::dynkin::DynkinSpec;
    use crate::linalg::Mat;

    fn pi(s: &str) -> QuiverAlgebra {
        QuiverAlgebra::preprojective(&s.parse::<DynkinSpec>().unwrap().diagram).unwrap()
    }

    fn stalk(dims: Vec<usize>, a: i64, astar: i64) -> Complex {
        Complex::stalk(Module { dims, arrows: vec![Mat::from_i64(1, 1, &[a]), Mat::from_i64(1, 1, &[astar])] }, 0)
    }

    #[test]
    fn left_mutation_of_pi_a2() {
        let a2 = pi("A2");
        let d = Derived::new(&a2);
        let std = d.standard_smc();
        let v = d.mutate_checked(&std, 0, Direction::Left, MutationChecks::all()).unwrap();
        assert!(d.isomorphic(&v.elements[0], &std.elements[0].shift(1)));
        assert!(d.isomorphic(&v.elements[1], &stalk(vec![1, 1], 0, 1)));
        assert!(d.smc_leq(&v, &std));
        assert!(!d.smc_leq(&std, &v));
        assert!(d.simples_shift_test(&std, 0).unwrap());
    }

    #[test]
    fn right_mutation_of_pi_a2() {
        let a2 = pi("A2");
        let d = Derived::new(&a2);
        let std = d.standard_smc();
        let v = d.mutate_checked(&std, 1, Direction::Right, MutationChecks::all()).unwrap();
        assert!(d.isomorphic(&v.elements[1], &std.elements[1].shift(-1)));
        // the cocone of S_2 -> S_1[1] is the extension with top S_2
        assert!(d.isomorphic(&v.elements[0], &stalk(vec![1, 1], 0, 1)));
        let w = d.left_mutate(&std, 1).unwrap();
        assert!(d.isomorphic(&w.elements[0], &stalk(vec![1, 1], 1, 0)));
    }

    #[test]
    fn single_vertex() {
        let a1 = pi("A1");
        let d = Derived::new(&a1);
        let std = d.standard_smc();
        let l = d.left_mutate(&std, 0).unwrap();
        assert_eq!(l.elements[0], std.elements[0].shift(1));
        let r = d.right_mutate(&std, 0).unwrap();
        assert_eq!(r.elements[0], std.elements[0].shift(-1));
        assert!(d.left_mutate(&std, 1).is_err());
    }

    #[test]
    fn longest_word_permutes_shifted_simples() {
        let a2 = pi("A2");
        let d = Derived::new(&a2);
        let mut u = d.standard_smc();
        for i in [0, 1, 0] {
            u = d.mutate_checked(&u, i, Direction::Left, MutationChecks::all()).unwrap();
        }
        let std = d.standard_smc();
        assert!(d.isomorphic(&u.elements[0], &std.elements[1].shift(1)));
        assert!(d.isomorphic(&u.elements[1], &std.elements[0].shift(1)));
    }

    #[test]
    fn pi_a3_mutations_round_trip() {
        let a3 = pi("A3");
        let d = Derived::new(&a3);
        let std = d.standard_smc();
        for i in 0..3 {
            for dir in [Direction::Left, Direction::Right] {
                d.mutate_checked(&std, i, dir, MutationChecks::all()).unwrap();
            }
        }
    }
}
