//! Stripping split contractible summands `M --id--> M` by Gaussian elimination.
//!
//! For a differential `d: X^k -> X^(k+1)` and a random `s: X^(k+1) -> X^k`,
//! the Fitting decomposition of `g = s d` splits off `M1 = im g^N` on which
//! `d` is split injective. With `X^(k+1) = d(M1) ⊕ ker r` for the retraction
//! `r = (g|M1)^{-1} e1 s`, the summand `M1 -> d(M1)` is contractible and is
//! removed.

use super::complex::Complex;
use super::hom::Derived;
use crate::algebra::{Module, ModuleMap};
use crate::linalg::Mat;

/// Random attempts per degree before concluding no split summand remains.
const TRIES: usize = 2;

impl Derived<'_> {
    /// Removes split contractible summands from every differential.
    pub fn minimize(&self, x: &Complex) -> Complex {
        let mut cur = x.clone();
        loop {
            let mut changed = false;
            let mut k = cur.lo();
            while !cur.is_zero() && k < cur.hi() {
                if let Some(next) = self.strip_once(&cur, k) {
                    cur = next;
                    changed = true;
                } else {
                    k += 1;
                }
            }
            if !changed {
                return cur;
            }
        }
    }

    /// Soft truncation to the cohomology window followed by minimization;
    /// complexes with cohomology in one degree become stalk complexes.
    pub fn normalize(&self, x: &Complex) -> Complex {
        let alg = self.alg();
        let Some(w) = x.std_bounds(alg) else { return Complex::zero() };
        if w.lo == w.hi {
            return Complex::stalk(x.cohomology_module(alg, w.lo), w.lo);
        }
        self.minimize(&x.soft_truncate(alg, w.lo, w.hi))
    }

    fn strip_once(&self, x: &Complex, k: i64) -> Option<Complex> {
        let alg = self.alg();
        let d = x.diff(alg, k);
        if d.is_zero() {
            return None;
        }
        let xk = x.term(alg, k);
        let xk1 = x.term(alg, k + 1);
        let homs = alg.hom_module(&xk1, &xk);
        if homs.is_empty() {
            return None;
        }
        let nv = alg.num_vertices();
        for _ in 0..TRIES {
            let mut s = ModuleMap::zero(&xk1, &xk);
            for h in &homs {
                s = s.add(&h.scale(&self.random_coeff()));
            }
            let g = s.compose(&d);
            let n = xk.total_dim();
            let mut gn = ModuleMap::identity(&xk);
            for _ in 0..n {
                gn = gn.compose(&g);
            }
            if gn.is_zero() {
                continue;
            }
            let m1: Vec<Mat> = gn.mats.iter().map(Mat::column_basis).collect();
            let m2: Vec<Mat> = gn.mats.iter().map(Mat::kernel).collect();
            let mut pr_m1 = Vec::with_capacity(nv);
            let mut pr_m2 = Vec::with_capacity(nv);
            let mut r = Vec::with_capacity(nv);
            for v in 0..nv {
                let b = m1[v].hstack(&m2[v]);
                let inv = b.inverse().expect("Fitting decomposition");
                let e1 = inv.block(0, m1[v].cols(), 0, xk.dims[v]);
                pr_m2.push(inv.block(m1[v].cols(), xk.dims[v], 0, xk.dims[v]));
                let g1 = m1[v].solve(&g.mats[v].mul(&m1[v])).expect("g preserves its image");
                let g1_inv = g1.inverse().expect("g is invertible on its Fitting image");
                r.push(g1_inv.mul(&e1).mul(&s.mats[v]));
                pr_m1.push(e1);
            }
            let dm1: Vec<Mat> = (0..nv).map(|v| d.mats[v].mul(&m1[v])).collect();
            let kr: Vec<Mat> = r.iter().map(Mat::kernel).collect();
            let mut pr_k = Vec::with_capacity(nv);
            for v in 0..nv {
                let b = dm1[v].hstack(&kr[v]);
                let inv = b.inverse().expect("d(M1) and ker r are complementary");
                pr_k.push(inv.block(dm1[v].cols(), xk1.dims[v], 0, xk1.dims[v]));
            }
            let (c1, _) = alg.submodule(&xk, &m2).expect("Fitting kernel is a submodule");
            let (c2, _) = alg.submodule(&xk1, &kr).expect("kernel of a module map");
            let beta = ModuleMap { mats: pr_m2.clone() }.compose(&x.diff(alg, k - 1));
            let eps = ModuleMap { mats: (0..nv).map(|v| pr_k[v].mul(&d.mats[v]).mul(&m2[v])).collect() };
            let nu = x.diff(alg, k + 1).compose(&ModuleMap { mats: kr.clone() });
            let lo = x.lo().min(k);
            let hi = x.hi().max(k + 1);
            let mut terms: Vec<Module> = Vec::new();
            let mut diffs: Vec<ModuleMap> = Vec::new();
            for j in lo..=hi {
                terms.push(if j == k {
                    c1.clone()
                } else if j == k + 1 {
                    c2.clone()
                } else {
                    x.term(alg, j)
                });
            }
            for j in lo..hi {
                diffs.push(if j == k - 1 {
                    beta.clone()
                } else if j == k {
                    eps.clone()
                } else if j == k + 1 {
                    nu.clone()
                } else {
                    x.diff(alg, j)
                });
            }
            return Some(Complex::from_parts(lo, terms, diffs));
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QuiverAlgebra;
    use crate::derived::complex::{cone, ChainMap};
    use crate::dynkin::DynkinSpec;

    fn pi(s: &str) -> QuiverAlgebra {
        QuiverAlgebra::preprojective(&s.parse::<DynkinSpec>().unwrap().diagram).unwrap()
    }

    #[test]
    fn cone_of_identity_minimizes_to_zero() {
        let a2 = pi("A2");
        let d = Derived::new(&a2);
        let x = Complex::stalk(a2.simple_module(0), 0);
        let c = cone(&a2, &x, &x, &ChainMap::identity(&x)).unwrap();
        assert!(d.minimize(&c).is_zero());
        let p = Complex::stalk(a2.projective_module(1), 3);
        let c = cone(&a2, &p, &p, &ChainMap::identity(&p)).unwrap();
        assert!(d.minimize(&c).is_zero());
    }

    #[test]
    fn non_split_cover_is_unchanged() {
        let a2 = pi("A2");
        let d = Derived::new(&a2);
        let s1 = a2.simple_module(0);
        let (_, p, map) = a2.projective_cover(&s1).unwrap();
        let x = Complex::from_parts(0, vec![p, s1], vec![map]);
        assert_eq!(d.minimize(&x), x);
        assert_eq!(d.minimize(&d.minimize(&x)), d.minimize(&x));
    }

    #[test]
    fn stalk_is_fixed() {
        let a3 = pi("A3");
        let d = Derived::new(&a3);
        let x = Complex::stalk(a3.projective_module(1), 0);
        assert_eq!(d.minimize(&x), x);
    }

    #[test]
    fn resolution_plus_contractible_piece() {
        let a3 = pi("A3");
        let d = Derived::new(&a3);
        let p = Complex::stalk(a3.projective_module(0), 0);
        let contractible = cone(&a3, &p, &p, &ChainMap::identity(&p)).unwrap();
        let s = Complex::stalk(a3.simple_module(2), 0);
        let x = s.direct_sum(&a3, &contractible);
        let m = d.minimize(&x);
        assert_eq!(m.total_dim(), 1);
        assert!(d.isomorphic(&m, &s));
    }

    #[test]
    fn normalize_to_stalk() {
        let a2 = pi("A2");
        let d = Derived::new(&a2);
        let c = a2.truncated_resolution(&a2.simple_module(0), 0);
        let (_, p, cover) = a2.projective_cover(&a2.simple_module(0)).unwrap();
        let (k, inc) = a2.kernel(&cover, &p);
        let two = Complex::from_parts(-1, vec![k, p], vec![inc]);
        let n = d.normalize(&two);
        assert_eq!(n.terms().len(), 1);
        assert_eq!(n.terms()[0].dims, vec![1, 0]);
        assert_eq!(c.lo(), 0);
    }
}
