//! Seeded random complexes for property tests.

use rand::Rng;

use super::complex::Complex;
use crate::algebra::{Module, ModuleMap, QuiverAlgebra};
use crate::linalg::{q, Mat};

fn random_module<R: Rng>(alg: &QuiverAlgebra, rng: &mut R, max_dim: usize) -> Module {
    for _ in 0..20 {
        let dims: Vec<usize> = (0..alg.num_vertices()).map(|_| rng.gen_range(0..=max_dim)).collect();
        let arrows = alg
            .arrows()
            .iter()
            .map(|a| {
                let (r, c) = (dims[a.target], dims[a.source]);
                let entries: Vec<i64> = (0..r * c).map(|_| rng.gen_range(-1..=1)).collect();
                Mat::from_i64(r, c, &entries)
            })
            .collect();
        let m = Module { dims, arrows };
        if alg.check_module(&m).is_ok() {
            return m;
        }
    }
    Module::with_dims(alg, (0..alg.num_vertices()).map(|_| rng.gen_range(0..=max_dim)).collect())
}

/// A random two-term complex `M --f--> N` (entries in {-1, 0, 1}) placed at
/// a random shift, plus with probability one half a random stalk summand.
pub fn random_complex<R: Rng>(alg: &QuiverAlgebra, rng: &mut R) -> Complex {
    let m = random_module(alg, rng, 2);
    let n = random_module(alg, rng, 2);
    let mut f = ModuleMap::zero(&m, &n);
    for h in alg.hom_module(&m, &n) {
        f = f.add(&h.scale(&q(rng.gen_range(-1..=1))));
    }
    let shift = rng.gen_range(-2..=2);
    let mut x = Complex::from_parts(-1, vec![m, n], vec![f]).shift(shift);
    if rng.gen_bool(0.5) {
        let extra = random_module(alg, rng, 2);
        x = x.direct_sum(alg, &Complex::stalk(extra, rng.gen_range(-2..=2)));
    }
    x
}
