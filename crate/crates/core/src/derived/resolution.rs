//! Projective resolutions of bounded complexes, built top-down and extended
//! on demand.
//!
//! Degree `k` is produced from the cycles `Z` of `cone(P^{>k} -> x)` in degree
//! `k`: `P^k` is a projective cover of `Z` modulo the boundaries coming from
//! `x^(k-1)`, which keeps the resolution small.

use super::complex::{block_map, Complex};
use crate::algebra::{Module, ModuleMap, QuiverAlgebra};
use crate::linalg::{q, Mat, Q};

#[derive(Debug, Clone)]
pub struct Level {
    /// Vertex of each indecomposable projective summand.
    pub gens: Vec<usize>,
    pub module: Module,
    /// `P^k -> P^(k+1)`.
    pub d: ModuleMap,
    /// `P^k -> x^k`.
    pub f: ModuleMap,
    /// For each generator `r`, the image `d(e_{g_r})` split by target
    /// generator `s`: coordinates in `between(h_s, g_r)`.
    pub gen_images: Vec<Vec<Vec<Q>>>,
}

#[derive(Debug, Clone)]
pub struct Resolution {
    hi: i64,
    levels: Vec<Level>,
}

impl Resolution {
    pub fn new(x: &Complex) -> Self {
        Resolution { hi: x.hi(), levels: Vec::new() }
    }

    /// Lowest degree computed so far.
    pub fn lowest(&self) -> i64 {
        self.hi - self.levels.len() as i64 + 1
    }

    pub fn top(&self) -> i64 {
        self.hi
    }

    /// Level at degree `k`; `None` above the top or below what is computed.
    pub fn level(&self, k: i64) -> Option<&Level> {
        if k > self.hi || k < self.lowest() {
            None
        } else {
            Some(&self.levels[(self.hi - k) as usize])
        }
    }

    pub fn gens(&self, k: i64) -> &[usize] {
        self.level(k).map(|l| l.gens.as_slice()).unwrap_or(&[])
    }

    pub fn module(&self, alg: &QuiverAlgebra, k: i64) -> Module {
        self.level(k).map(|l| l.module.clone()).unwrap_or_else(|| Module::zero(alg))
    }

    /// Computes all degrees down to `k`.
    pub fn ensure(&mut self, alg: &QuiverAlgebra, x: &Complex, k: i64) {
        while self.lowest() > k {
            let deg = self.lowest() - 1;
            let level = self.build_level(alg, x, deg);
            self.levels.push(level);
        }
    }

    fn build_level(&self, alg: &QuiverAlgebra, x: &Complex, k: i64) -> Level {
        let nv = alg.num_vertices();
        let p1 = self.module(alg, k + 1);
        let p2 = self.module(alg, k + 2);
        let xk = x.term(alg, k);
        let xk1 = x.term(alg, k + 1);
        let (d1, f1) = match self.level(k + 1) {
            Some(l) => (l.d.clone(), l.f.clone()),
            None => (ModuleMap::zero(&p1, &p2), ModuleMap::zero(&p1, &xk1)),
        };
        let cone_k = p1.direct_sum(&xk);
        let delta = block_map(&d1.scale(&q(-1)), &ModuleMap::zero(&xk, &p2), &f1, &x.diff(alg, k));
        let (z, inc) = alg.kernel(&delta, &cone_k);
        let rad_z = alg.radical(&z);
        let dx_in = x.diff(alg, k - 1);
        let mut gens = Vec::new();
        let mut images = Vec::new();
        for v in 0..nv {
            let boundary = Mat::zeros(p1.dims[v], dx_in.mats[v].cols()).vstack(&dx_in.mats[v]);
            let mut span = inc.mats[v].mul(&rad_z[v]).hstack(&boundary).column_basis();
            for c in 0..inc.mats[v].cols() {
                let col = inc.mats[v].select_columns(&[c]);
                let trial = span.hstack(&col);
                if trial.rank() > span.cols() {
                    span = trial;
                    gens.push(v);
                    images.push(col.column(0));
                }
            }
        }
        let module = alg.projective_sum(&gens);
        let pi = alg.map_from_projective_sum(&gens, &images, &cone_k);
        let d = ModuleMap {
            mats: (0..nv).map(|v| pi.mats[v].block(0, p1.dims[v], 0, module.dims[v]).scale(&q(-1))).collect(),
        };
        let f = ModuleMap {
            mats: (0..nv).map(|v| pi.mats[v].block(p1.dims[v], cone_k.dims[v], 0, module.dims[v])).collect(),
        };
        let target_gens = self.gens(k + 1);
        let gen_images = generator_images(alg, &gens, target_gens, &d);
        Level { gens, module, d, f, gen_images }
    }

    /// The resolution in degrees `[k, top]` as a complex (brutal truncation).
    pub fn to_complex(&mut self, alg: &QuiverAlgebra, x: &Complex, k: i64) -> Complex {
        self.ensure(alg, x, k);
        if self.hi < k {
            return Complex::zero();
        }
        let terms = (k..=self.hi).map(|j| self.module(alg, j)).collect();
        let diffs = (k..self.hi).map(|j| self.level(j).unwrap().d.clone()).collect();
        Complex::from_parts(k, terms, diffs)
    }
}

/// Splits `d(e_{g_r})` into components in `e_{h_s} A e_{g_r}`.
pub(crate) fn generator_images(alg: &QuiverAlgebra, gens: &[usize], targets: &[usize], d: &ModuleMap) -> Vec<Vec<Vec<Q>>> {
    gens.iter()
        .enumerate()
        .map(|(r, &g)| {
            let col_index: usize = gens[..r].iter().map(|&g2| alg.between(g2, g).len()).sum();
            let col = d.mats[g].column(col_index);
            let mut offset = 0;
            targets
                .iter()
                .map(|&h| {
                    let n = alg.between(h, g).len();
                    let part = col[offset..offset + n].to_vec();
                    offset += n;
                    part
                })
                .collect()
        })
        .collect()
}

impl QuiverAlgebra {
    /// Minimal projective resolution of `m` in degrees `[-depth, 0]`.
    pub fn truncated_resolution(&self, m: &Module, depth: usize) -> Complex {
        let x = Complex::stalk(m.clone(), 0);
        let mut res = Resolution::new(&x);
        res.to_complex(self, &x, -(depth as i64))
    }
}
