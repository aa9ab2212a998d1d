//! Representations, module maps, Hom spaces and projective covers.

use num_traits::Zero;
use rand::Rng;

use super::quiver::{Path, QuiverAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{complement_basis, Mat, Q};

/// A finite-dimensional representation: one vector space per vertex and one
/// matrix `dims[target] x dims[source]` per arrow.
#[derive(Debug, Clone, PartialEq)]
pub struct Module {
    pub dims: Vec<usize>,
    pub arrows: Vec<Mat>,
}

/// A morphism of representations: one matrix `N_v x M_v` per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleMap {
    pub mats: Vec<Mat>,
}

impl Module {
    pub fn zero(alg: &QuiverAlgebra) -> Self {
        Module::with_dims(alg, vec![0; alg.num_vertices()])
    }

    /// Module with the given dimensions and all arrows acting by zero.
    pub fn with_dims(alg: &QuiverAlgebra, dims: Vec<usize>) -> Self {
        let arrows = alg.arrows().iter().map(|a| Mat::zeros(dims[a.target], dims[a.source])).collect();
        Module { dims, arrows }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn direct_sum(&self, other: &Module) -> Module {
        Module {
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect(),
            arrows: self.arrows.iter().zip(&other.arrows).map(|(a, b)| a.direct_sum(b)).collect(),
        }
    }

    pub fn direct_sum_all(alg: &QuiverAlgebra, parts: &[Module]) -> Module {
        parts.iter().fold(Module::zero(alg), |acc, m| acc.direct_sum(m))
    }
}

impl ModuleMap {
    pub fn zero(source: &Module, target: &Module) -> Self {
        ModuleMap { mats: source.dims.iter().zip(&target.dims).map(|(&s, &t)| Mat::zeros(t, s)).collect() }
    }

    pub fn identity(m: &Module) -> Self {
        ModuleMap { mats: m.dims.iter().map(|&d| Mat::identity(d)).collect() }
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &ModuleMap) -> ModuleMap {
        ModuleMap { mats: self.mats.iter().zip(&first.mats).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap { mats: self.mats.iter().zip(&other.mats).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: &Q) -> ModuleMap {
        ModuleMap { mats: self.mats.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(Mat::is_zero)
    }

    pub fn direct_sum(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap { mats: self.mats.iter().zip(&other.mats).map(|(a, b)| a.direct_sum(b)).collect() }
    }

    pub fn rank(&self) -> usize {
        self.mats.iter().map(Mat::rank).sum()
    }
}

impl QuiverAlgebra {
    /// Checks matrix shapes and that every relation acts by zero.
    pub fn check_module(&self, m: &Module) -> Result<()> {
        if m.dims.len() != self.num_vertices() || m.arrows.len() != self.arrows().len() {
            return Err(Error::Precondition("module does not match the quiver".into()));
        }
        for (mat, a) in m.arrows.iter().zip(self.arrows()) {
            if mat.rows() != m.dims[a.target] || mat.cols() != m.dims[a.source] {
                return Err(Error::Precondition(format!("matrix for arrow {} has the wrong shape", a.name)));
            }
        }
        for (k, r) in self.relations().iter().enumerate() {
            let w = &r.terms[0].1;
            let (s, t) = (self.arrows()[w[0]].source, self.arrows()[*w.last().unwrap()].target);
            let mut acc = Mat::zeros(m.dims[t], m.dims[s]);
            for (c, w) in &r.terms {
                acc = acc.add(&self.word_action(m, s, w).scale(c));
            }
            if !acc.is_zero() {
                return Err(Error::Precondition(format!("relation {} does not vanish on the module", k + 1)));
            }
        }
        Ok(())
    }

    pub fn word_action(&self, m: &Module, source: usize, word: &[usize]) -> Mat {
        let mut acc = Mat::identity(m.dims[source]);
        for &a in word {
            acc = m.arrows[a].mul(&acc);
        }
        acc
    }

    /// Action of a basis element of the algebra on `m`, as a matrix
    /// `M_source -> M_target`.
    pub fn path_action(&self, m: &Module, b: usize) -> Mat {
        let p = &self.basis()[b];
        self.word_action(m, p.source, &p.arrows)
    }

    /// Action of the element `sum_k coeffs[k] * between(s, t)[k]`.
    pub fn element_action(&self, m: &Module, s: usize, t: usize, coeffs: &[Q]) -> Mat {
        let mut acc = Mat::zeros(m.dims[t], m.dims[s]);
        for (c, &b) in coeffs.iter().zip(self.between(s, t)) {
            if !c.is_zero() {
                acc = acc.add(&self.path_action(m, b).scale(c));
            }
        }
        acc
    }

    pub fn is_module_map(&self, f: &ModuleMap, m: &Module, n: &Module) -> bool {
        if f.mats.len() != self.num_vertices() {
            return false;
        }
        for (v, mat) in f.mats.iter().enumerate() {
            if mat.rows() != n.dims[v] || mat.cols() != m.dims[v] {
                return false;
            }
        }
        self.arrows().iter().enumerate().all(|(x, a)| {
            n.arrows[x].mul(&f.mats[a.source]) == f.mats[a.target].mul(&m.arrows[x])
        })
    }

    pub fn simple_module(&self, i: usize) -> Module {
        let mut dims = vec![0; self.num_vertices()];
        dims[i] = 1;
        Module::with_dims(self, dims)
    }

    /// `P_i = e_i A`, with basis at `v` the basis paths from `i` to `v`.
    pub fn projective_module(&self, i: usize) -> Module {
        let nv = self.num_vertices();
        let dims: Vec<usize> = (0..nv).map(|v| self.between(i, v).len()).collect();
        let mut arrows = Vec::new();
        for (x, a) in self.arrows().iter().enumerate() {
            let mut mat = Mat::zeros(dims[a.target], dims[a.source]);
            for (col, &b) in self.between(i, a.source).iter().enumerate() {
                let mut w = self.basis()[b].arrows.clone();
                w.push(x);
                for (c, coef) in self.normal_form(&Path { source: i, target: a.target, arrows: w }) {
                    mat.set(self.position_in_between(c), col, coef);
                }
            }
            arrows.push(mat);
        }
        Module { dims, arrows }
    }

    /// Direct sum `P_{g_1} ⊕ ... ⊕ P_{g_r}` in the given order.
    pub fn projective_sum(&self, gens: &[usize]) -> Module {
        let parts: Vec<Module> = gens.iter().map(|&g| self.projective_module(g)).collect();
        Module::direct_sum_all(self, &parts)
    }

    /// The map `P_i -> M` sending `e_i` to `m`.
    pub fn map_from_projective(&self, i: usize, m_vec: &[Q], target: &Module) -> ModuleMap {
        let nv = self.num_vertices();
        let col = Mat::from_columns(target.dims[i], &[m_vec.to_vec()]);
        let mats = (0..nv)
            .map(|v| {
                let cols: Vec<Vec<Q>> =
                    self.between(i, v).iter().map(|&b| self.path_action(target, b).mul(&col).column(0)).collect();
                Mat::from_columns(target.dims[v], &cols)
            })
            .collect();
        ModuleMap { mats }
    }

    /// The map `⊕_r P_{gens[r]} -> M` sending the r-th generator to `images[r]`.
    pub fn map_from_projective_sum(&self, gens: &[usize], images: &[Vec<Q>], target: &Module) -> ModuleMap {
        let nv = self.num_vertices();
        let mut mats: Vec<Mat> = (0..nv).map(|v| Mat::zeros(target.dims[v], 0)).collect();
        for (&g, img) in gens.iter().zip(images) {
            let part = self.map_from_projective(g, img, target);
            for v in 0..nv {
                mats[v] = mats[v].hstack(&part.mats[v]);
            }
        }
        ModuleMap { mats }
    }

    /// Basis of `Hom_A(M, N)`.
    pub fn hom_module(&self, m: &Module, n: &Module) -> Vec<ModuleMap> {
        let nv = self.num_vertices();
        let mut offsets = vec![0; nv + 1];
        for v in 0..nv {
            offsets[v + 1] = offsets[v] + n.dims[v] * m.dims[v];
        }
        let unknowns = offsets[nv];
        if unknowns == 0 {
            return Vec::new();
        }
        // f_v stored row-major: entry (r, c) at offsets[v] + r * m.dims[v] + c
        let idx = |v: usize, r: usize, c: usize| offsets[v] + r * m.dims[v] + c;
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for (x, a) in self.arrows().iter().enumerate() {
            let (s, t) = (a.source, a.target);
            // N(x) f_s - f_t M(x) = 0, an (n_t x m_s) system
            for r in 0..n.dims[t] {
                for c in 0..m.dims[s] {
                    let mut row = vec![Q::zero(); unknowns];
                    for k in 0..n.dims[s] {
                        let coef = n.arrows[x].get(r, k);
                        if !coef.is_zero() {
                            row[idx(s, k, c)] += coef;
                        }
                    }
                    for k in 0..m.dims[t] {
                        let coef = m.arrows[x].get(k, c);
                        if !coef.is_zero() {
                            row[idx(t, r, k)] -= coef;
                        }
                    }
                    if row.iter().any(|q| !q.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let system = Mat::from_rows(rows.len(), unknowns, rows);
        let kernel = system.kernel();
        (0..kernel.cols())
            .map(|col| {
                let mats = (0..nv)
                    .map(|v| {
                        let mut mat = Mat::zeros(n.dims[v], m.dims[v]);
                        for r in 0..n.dims[v] {
                            for c in 0..m.dims[v] {
                                mat.set(r, c, kernel.get(idx(v, r, c), col).clone());
                            }
                        }
                        mat
                    })
                    .collect();
                ModuleMap { mats }
            })
            .collect()
    }

    pub fn hom_dim(&self, m: &Module, n: &Module) -> usize {
        self.hom_module(m, n).len()
    }

    /// Per-vertex column bases of the radical `rad M = M J`.
    pub fn radical(&self, m: &Module) -> Vec<Mat> {
        (0..self.num_vertices())
            .map(|v| {
                let mut span = Mat::zeros(m.dims[v], 0);
                for (x, a) in self.arrows().iter().enumerate() {
                    if a.target == v {
                        span = span.hstack(&m.arrows[x]);
                    }
                }
                span.column_basis()
            })
            .collect()
    }

    /// Dimension vector of the top `M / rad M`.
    pub fn top_dims(&self, m: &Module) -> Vec<usize> {
        self.radical(m).iter().zip(&m.dims).map(|(r, d)| d - r.cols()).collect()
    }

    /// Minimal projective cover: the generator vertices, the projective `P`
    /// and the surjection `P -> M`.
    pub fn projective_cover(&self, m: &Module) -> Result<(Vec<usize>, Module, ModuleMap)> {
        if m.is_zero() {
            return Err(Error::Precondition("projective cover of the zero module".into()));
        }
        Ok(self.cover_of(m))
    }

    /// Like [`projective_cover`](Self::projective_cover) but returns the
    /// empty cover for the zero module.
    pub fn cover_of(&self, m: &Module) -> (Vec<usize>, Module, ModuleMap) {
        let rad = self.radical(m);
        let mut gens = Vec::new();
        let mut images = Vec::new();
        for v in 0..self.num_vertices() {
            let comp = complement_basis(&rad[v], m.dims[v]);
            for c in 0..comp.cols() {
                gens.push(v);
                images.push(comp.column(c));
            }
        }
        let p = self.projective_sum(&gens);
        let map = self.map_from_projective_sum(&gens, &images, m);
        (gens, p, map)
    }

    /// The submodule spanned at each vertex by the columns of `basis[v]`
    /// (assumed closed under the action) and its inclusion.
    pub fn submodule(&self, m: &Module, basis: &[Mat]) -> Result<(Module, ModuleMap)> {
        let dims: Vec<usize> = basis.iter().map(Mat::cols).collect();
        let mut arrows = Vec::new();
        for (x, a) in self.arrows().iter().enumerate() {
            let image = m.arrows[x].mul(&basis[a.source]);
            let coords = basis[a.target]
                .solve(&image)
                .ok_or_else(|| Error::Precondition("subspace is not a submodule".into()))?;
            arrows.push(coords);
        }
        Ok((Module { dims, arrows }, ModuleMap { mats: basis.to_vec() }))
    }

    pub fn kernel(&self, f: &ModuleMap, source: &Module) -> (Module, ModuleMap) {
        let basis: Vec<Mat> = f.mats.iter().map(Mat::kernel).collect();
        self.submodule(source, &basis).expect("kernels are submodules")
    }

    pub fn image(&self, f: &ModuleMap, target: &Module) -> (Module, ModuleMap) {
        let basis: Vec<Mat> = f.mats.iter().map(Mat::column_basis).collect();
        self.submodule(target, &basis).expect("images are submodules")
    }

    /// Quotient of `m` by the submodule spanned by `sub[v]`, with the projection.
    pub fn quotient(&self, m: &Module, sub: &[Mat]) -> (Module, ModuleMap) {
        let (q, proj, _) = self.quotient_with_lift(m, sub);
        (q, proj)
    }

    /// Quotient together with a vertexwise linear section of the projection.
    /// The section is not a module map in general.
    pub fn quotient_with_lift(&self, m: &Module, sub: &[Mat]) -> (Module, ModuleMap, ModuleMap) {
        let nv = self.num_vertices();
        let mut proj = Vec::with_capacity(nv);
        let mut lift = Vec::with_capacity(nv);
        for v in 0..nv {
            let s = sub[v].column_basis();
            let c = complement_basis(&s, m.dims[v]);
            let full = s.hstack(&c);
            let inv = full.inverse().expect("basis extension is invertible");
            proj.push(inv.block(s.cols(), m.dims[v], 0, m.dims[v]));
            lift.push(c);
        }
        let dims: Vec<usize> = lift.iter().map(Mat::cols).collect();
        let arrows = self
            .arrows()
            .iter()
            .enumerate()
            .map(|(x, a)| proj[a.target].mul(&m.arrows[x]).mul(&lift[a.source]))
            .collect();
        (Module { dims, arrows }, ModuleMap { mats: proj }, ModuleMap { mats: lift })
    }

    pub fn cokernel(&self, f: &ModuleMap, target: &Module) -> (Module, ModuleMap) {
        self.quotient(target, &f.mats)
    }

    pub fn is_brick(&self, m: &Module) -> bool {
        self.hom_dim(m, m) == 1
    }

    pub fn is_semibrick(&self, ms: &[Module]) -> bool {
        ms.iter().enumerate().all(|(i, x)| {
            ms.iter().enumerate().all(|(j, y)| self.hom_dim(x, y) == usize::from(i == j))
        })
    }

    /// Isomorphism test by random specialization of `Hom(M, N)` with exact
    /// verification of invertibility.
    pub fn modules_isomorphic<R: Rng>(&self, m: &Module, n: &Module, rng: &mut R) -> bool {
        if m.dims != n.dims {
            return false;
        }
        let hom = self.hom_module(m, n);
        if m.is_zero() {
            return true;
        }
        if hom.is_empty() {
            return false;
        }
        for _ in 0..8 {
            let mut f = ModuleMap::zero(m, n);
            for h in &hom {
                let c = Q::from_integer(rng.gen_range(-50i64..=50).into());
                f = f.add(&h.scale(&c));
            }
            if f.mats.iter().all(|mat| mat.inverse().is_some()) {
                return true;
            }
        }
        false
    }
}

/// Dimension vector helper used in reports.
pub fn dim_label(dims: &[usize]) -> String {
    dims.iter().map(|d| d.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::DynkinSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pi(s: &str) -> QuiverAlgebra {
        QuiverAlgebra::preprojective(&s.parse::<DynkinSpec>().unwrap().diagram).unwrap()
    }

    fn e_module() -> Module {
        // (1,1) with a = 0, a* = 1
        Module { dims: vec![1, 1], arrows: vec![Mat::zeros(1, 1), Mat::from_i64(1, 1, &[1])] }
    }

    #[test]
    fn simples_and_projectives() {
        let a2 = pi("A2");
        let s1 = a2.simple_module(0);
        assert_eq!(s1.dims, vec![1, 0]);
        let p1 = a2.projective_module(0);
        assert_eq!(p1.dims, vec![1, 1]);
        a2.check_module(&p1).unwrap();
        let a1 = pi("A1");
        assert_eq!(a1.projective_module(0).dims, vec![1]);
    }

    #[test]
    fn projective_dimensions_sum_to_algebra() {
        for name in ["A2", "A3", "D4"] {
            let alg = pi(name);
            let total: usize = (0..alg.num_vertices()).map(|i| alg.projective_module(i).total_dim()).sum();
            assert_eq!(total, alg.dim());
            for i in 0..alg.num_vertices() {
                alg.check_module(&alg.projective_module(i)).unwrap();
            }
        }
    }

    #[test]
    fn hom_from_projectives() {
        let a3 = pi("A3");
        let mods: Vec<Module> = (0..3).map(|i| a3.projective_module(i)).chain((0..3).map(|i| a3.simple_module(i))).collect();
        for i in 0..3 {
            let p = a3.projective_module(i);
            for m in &mods {
                assert_eq!(a3.hom_dim(&p, m), m.dims[i]);
            }
        }
    }

    #[test]
    fn homs_between_simples() {
        let a2 = pi("A2");
        let (s1, s2) = (a2.simple_module(0), a2.simple_module(1));
        assert_eq!(a2.hom_dim(&s1, &s1), 1);
        assert_eq!(a2.hom_dim(&s1, &s2), 0);
        assert_eq!(a2.hom_dim(&a2.projective_module(0), &s1), 1);
        assert!(a2.is_brick(&s1));
        assert!(!a2.is_semibrick(&[s1.clone(), s1.clone()]));
        assert!(a2.is_semibrick(&[s1, s2]));
    }

    #[test]
    fn covers() {
        let a2 = pi("A2");
        let (g, p, map) = a2.projective_cover(&a2.simple_module(0)).unwrap();
        assert_eq!(g, vec![0]);
        assert_eq!(p.dims, vec![1, 1]);
        assert!(a2.is_module_map(&map, &p, &a2.simple_module(0)));
        let e = e_module();
        a2.check_module(&e).unwrap();
        let (g, p, map) = a2.projective_cover(&e).unwrap();
        assert_eq!(g, vec![1]);
        assert_eq!(map.rank(), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(a2.modules_isomorphic(&p, &e, &mut rng));
        let p1 = a2.projective_module(0);
        let (g, _, map) = a2.projective_cover(&p1).unwrap();
        assert_eq!(g, vec![0]);
        assert_eq!(map.rank(), 2);
        assert!(a2.projective_cover(&Module::zero(&a2)).is_err());
    }

    #[test]
    fn kernels_and_cokernels() {
        let a2 = pi("A2");
        let s1 = a2.simple_module(0);
        let (_, p, map) = a2.projective_cover(&s1).unwrap();
        let (k, inc) = a2.kernel(&map, &p);
        assert_eq!(k.dims, vec![0, 1]);
        a2.check_module(&k).unwrap();
        assert!(a2.is_module_map(&inc, &k, &p));
        let (c, proj) = a2.cokernel(&inc, &p);
        assert_eq!(c.dims, vec![1, 0]);
        assert!(a2.is_module_map(&proj, &p, &c));
    }

    #[test]
    fn relation_violation_detected() {
        let a2 = pi("A2");
        let bad = Module { dims: vec![1, 1], arrows: vec![Mat::from_i64(1, 1, &[1]), Mat::from_i64(1, 1, &[1])] };
        assert!(a2.check_module(&bad).is_err());
    }
}
