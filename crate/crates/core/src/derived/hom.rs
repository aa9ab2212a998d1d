//! Morphisms in the bounded derived category.
//!
//! `Hom(x, y[n])` is the degree-`n` cohomology of `Hom(P, y)` where `P -> x`
//! is a projective resolution. `Hom(P^k, Y) = ⊕_r Y_{g_r}` by evaluating on
//! the generators, which keeps the Hom complex small.

use std::cell::RefCell;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::complex::{cone_unchecked, ChainMap, Complex, Window};
use super::resolution::Resolution;
use crate::algebra::{Module, ModuleMap, QuiverAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{q, Mat, Q};

/// Default seed for the randomized steps (iso tests, minimization).
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Evaluation context: the algebra, a cache of resolutions and a seeded RNG.
pub struct Derived<'a> {
    alg: &'a QuiverAlgebra,
    cache: RefCell<Vec<(Complex, Resolution)>>,
    rng: RefCell<ChaCha8Rng>,
}

/// Coordinates of `Hom^j(P, w)`: blocks `(degree, generator, offset, size)`.
struct Layout {
    blocks: Vec<(i64, usize, usize, usize)>,
    dim: usize,
}

impl Layout {
    fn find(&self, k: i64, r: usize) -> Option<(usize, usize)> {
        self.blocks.iter().find(|b| b.0 == k && b.1 == r).map(|b| (b.2, b.3))
    }
}

/// A chosen model of `x` together with a basis of `Hom_D(x, w)` realized as
/// chain maps out of that model.
#[derive(Debug, Clone)]
pub struct HomBasis {
    pub source: Complex,
    pub maps: Vec<ChainMap>,
}

impl<'a> Derived<'a> {
    pub fn new(alg: &'a QuiverAlgebra) -> Self {
        Derived::with_seed(alg, DEFAULT_SEED)
    }

    pub fn with_seed(alg: &'a QuiverAlgebra, seed: u64) -> Self {
        Derived { alg, cache: RefCell::new(Vec::new()), rng: RefCell::new(ChaCha8Rng::seed_from_u64(seed)) }
    }

    pub fn alg(&self) -> &'a QuiverAlgebra {
        self.alg
    }

    pub(crate) fn random_coeff(&self) -> Q {
        let mut rng = self.rng.borrow_mut();
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-9i64..=9);
        }
        q(c)
    }

    /// Runs `f` on the cached resolution of `x`, computed down to degree `k`.
    fn with_resolution<T>(&self, x: &Complex, k: i64, f: impl FnOnce(&Resolution) -> T) -> T {
        let mut cache = self.cache.borrow_mut();
        let pos = match cache.iter().position(|(c, _)| c == x) {
            Some(p) => p,
            None => {
                if cache.len() >= 64 {
                    cache.remove(0);
                }
                cache.push((x.clone(), Resolution::new(x)));
                cache.len() - 1
            }
        };
        let (cx, res) = &mut cache[pos];
        res.ensure(self.alg, cx, k);
        f(res)
    }

    fn layout(&self, res: &Resolution, w: &Complex, j: i64) -> Layout {
        let mut blocks = Vec::new();
        let mut dim = 0;
        if w.is_zero() {
            return Layout { blocks, dim };
        }
        let lo = (w.lo() - j).max(res.lowest());
        let hi = (w.hi() - j).min(res.top());
        for k in lo..=hi {
            let dims = w.term_dims(self.alg, k + j);
            for (r, &g) in res.gens(k).iter().enumerate() {
                let size = dims[g];
                if size > 0 {
                    blocks.push((k, r, dim, size));
                    dim += size;
                }
            }
        }
        Layout { blocks, dim }
    }

    /// Matrix of the differential `Hom^j(P, w) -> Hom^(j+1)(P, w)`.
    fn hom_differential(&self, res: &Resolution, w: &Complex, j: i64, src: &Layout, dst: &Layout) -> Mat {
        let alg = self.alg;
        let mut m = Mat::zeros(dst.dim, src.dim);
        let sign = if j % 2 == 0 { q(-1) } else { q(1) };
        for &(k, r, off, size) in &src.blocks {
            let g = res.gens(k)[r];
            if let Some((toff, _)) = dst.find(k, r) {
                let dw = w.diff(alg, k + j);
                m.paste(toff, off, &dw.mats[g]);
            }
            // precomposition with d_P^(k-1)
            if let Some(level) = res.level(k - 1) {
                let wk = w.term(alg, k + j);
                for (r2, &g2) in level.gens.iter().enumerate() {
                    let coeffs = &level.gen_images[r2][r];
                    if coeffs.iter().all(Zero::is_zero) {
                        continue;
                    }
                    if let Some((toff, _)) = dst.find(k - 1, r2) {
                        let act = alg.element_action(&wk, g, g2, coeffs).scale(&sign);
                        debug_assert_eq!(act.cols(), size);
                        for rr in 0..act.rows() {
                            for cc in 0..act.cols() {
                                m.add_at(toff + rr, off + cc, act.get(rr, cc));
                            }
                        }
                    }
                }
            }
        }
        m
    }

    /// `dim Hom_D(x, y[n])`.
    pub fn hom_dim(&self, x: &Complex, y: &Complex, n: i64) -> usize {
        if x.is_zero() || y.is_zero() {
            return 0;
        }
        let w = y.shift(n);
        if x.hi() < w.lo() {
            // P lives in degrees <= hi(x) < lo(w): Hom^0 = 0
            return 0;
        }
        self.with_resolution(x, w.lo() - 1, |res| {
            let l_m = self.layout(res, &w, -1);
            let l_0 = self.layout(res, &w, 0);
            let l_p = self.layout(res, &w, 1);
            if l_0.dim == 0 {
                return 0;
            }
            let d0 = self.hom_differential(res, &w, 0, &l_0, &l_p);
            let dm = self.hom_differential(res, &w, -1, &l_m, &l_0);
            l_0.dim - d0.rank() - dm.rank()
        })
    }

    /// Sum over the collection of `dim Hom(ys_k, x[n])`.
    pub fn hom_into_dim(&self, ys: &[Complex], x: &Complex, n: i64) -> usize {
        ys.iter().map(|y| self.hom_dim(y, x, n)).sum()
    }

    /// Basis of `Hom_D(x, w)` as chain maps from a fixed model of `x`.
    pub fn hom_basis(&self, x: &Complex, w: &Complex) -> HomBasis {
        let alg = self.alg;
        if x.is_zero() || w.is_zero() {
            return HomBasis { source: x.clone(), maps: Vec::new() };
        }
        let m = x.lo().min(w.lo());
        self.with_resolution(x, m - 1, |res| {
            let l_m = self.layout(res, w, -1);
            let l_0 = self.layout(res, w, 0);
            let l_p = self.layout(res, w, 1);
            let d0 = self.hom_differential(res, w, 0, &l_0, &l_p);
            let dm = self.hom_differential(res, w, -1, &l_m, &l_0);
            let kernel = d0.kernel();
            let mut span = dm.column_basis();
            let base_rank = span.cols();
            let mut reps = Vec::new();
            for c in 0..kernel.cols() {
                let col = kernel.select_columns(&[c]);
                let trial = span.hstack(&col);
                if trial.rank() > span.cols() {
                    span = trial;
                    reps.push(col.column(0));
                }
            }
            debug_assert_eq!(span.cols() - base_rank, reps.len());
            // model Q: coker(d^{m-1}) in degree m, P^k above
            let top = res.top();
            let incoming = res.level(m - 1).map(|l| l.d.clone()).unwrap_or_else(|| {
                ModuleMap::zero(&Module::zero(alg), &res.module(alg, m))
            });
            let (qm, _, lift) = alg.quotient_with_lift(&res.module(alg, m), &incoming.mats);
            let mut terms = vec![qm.clone()];
            let mut diffs = Vec::new();
            for k in m + 1..=top {
                terms.push(res.module(alg, k));
            }
            for k in m..top {
                let d = res.level(k).unwrap().d.clone();
                diffs.push(if k == m { d.compose(&lift) } else { d });
            }
            let source = Complex::from_parts(m, terms, diffs);
            let maps = reps
                .iter()
                .map(|vec| {
                    let comps = (m..=top)
                        .map(|k| {
                            let gens = res.gens(k);
                            let wk = w.term(alg, k);
                            let images: Vec<Vec<Q>> = (0..gens.len())
                                .map(|r| match l_0.find(k, r) {
                                    Some((off, size)) => vec[off..off + size].to_vec(),
                                    None => vec![Q::zero(); wk.dims[gens[r]]],
                                })
                                .collect();
                            let phi = alg.map_from_projective_sum(gens, &images, &wk);
                            if k == m {
                                phi.compose(&lift)
                            } else {
                                phi
                            }
                        })
                        .collect::<Vec<_>>();
                    ChainMap { lo: m, comps }
                })
                .collect::<Vec<_>>();
            // realign with the trimmed model
            let maps = maps.into_iter().map(|f| realign(f, m, &source)).collect();
            HomBasis { source, maps }
        })
    }

    /// Derived isomorphism test: random elements of `Hom(x, y)` with an
    /// acyclic cone.
    pub fn isomorphic(&self, x: &Complex, y: &Complex) -> bool {
        let alg = self.alg;
        let nonzero = |c: &Complex| -> Vec<(i64, Vec<usize>)> {
            c.cohomology_dims(alg).into_iter().filter(|(_, d)| d.iter().any(|&v| v > 0)).collect()
        };
        let (hx, hy) = (nonzero(x), nonzero(y));
        if hx != hy {
            return false;
        }
        if hx.is_empty() {
            return true;
        }
        let basis = self.hom_basis(x, y);
        if basis.maps.is_empty() {
            return false;
        }
        for _ in 0..4 {
            let f = self.random_combination(&basis, y);
            if cone_unchecked(alg, &basis.source, y, &f).is_acyclic(alg) {
                return true;
            }
        }
        false
    }

    pub(crate) fn random_combination(&self, basis: &HomBasis, target: &Complex) -> ChainMap {
        let alg = self.alg;
        let mut f = ChainMap::zero(alg, &basis.source, target);
        for g in &basis.maps {
            let c = self.random_coeff();
            f = add_chain_maps(alg, &f, &scale_chain_map(g, &c), &basis.source, target);
        }
        f
    }

    /// Window of nonvanishing standard cohomology.
    pub fn std_bounds(&self, x: &Complex) -> Result<Window> {
        x.std_bounds(self.alg).ok_or_else(|| Error::Precondition("zero object has no window".into()))
    }

    /// `true` iff `Hom(x, x[i]) = 0` for all `i < 0`.
    pub fn has_no_negative_selfext(&self, x: &Complex) -> bool {
        self.first_negative_selfext(x).is_none()
    }

    /// The least-negative-first search for `i < 0` with `Hom(x, x[i]) != 0`.
    pub fn first_negative_selfext(&self, x: &Complex) -> Option<i64> {
        let w = x.std_bounds(self.alg)?;
        ((w.lo - w.hi)..0).rev().find(|&i| self.hom_dim(x, x, i) != 0)
    }

    /// Sharp window of `x` relative to a simple-minded collection, by Hom
    /// vanishing scans. `ceiling` bounds the scan length.
    pub fn smc_bounds(&self, x: &Complex, smc: &[Complex], ceiling: i64) -> Result<Window> {
        let wx = self.std_bounds(x)?;
        let mut v_lo = i64::MAX;
        let mut v_hi = i64::MIN;
        for y in smc {
            let w = self.std_bounds(y)?;
            v_lo = v_lo.min(w.lo);
            v_hi = v_hi.max(w.hi);
        }
        let scan = |start: i64, f: &dyn Fn(i64) -> usize| -> Result<i64> {
            (start..start + ceiling).find(|&i| f(i) != 0).ok_or_else(|| {
                Error::Guard(format!("Hom scan exceeded {ceiling} degrees; the collection may not be simple-minded"))
            })
        };
        let a = scan(wx.lo - v_hi, &|i| smc.iter().map(|y| self.hom_dim(y, x, i)).sum())?;
        let b = -scan(v_lo - wx.hi, &|i| smc.iter().map(|y| self.hom_dim(x, y, i)).sum())?;
        Ok(Window { lo: a, hi: b })
    }
}

pub(crate) fn scale_chain_map(f: &ChainMap, c: &Q) -> ChainMap {
    ChainMap { lo: f.lo, comps: f.comps.iter().map(|m| m.scale(c)).collect() }
}

pub(crate) fn add_chain_maps(alg: &QuiverAlgebra, f: &ChainMap, g: &ChainMap, x: &Complex, y: &Complex) -> ChainMap {
    if x.is_zero() {
        return ChainMap { lo: 0, comps: Vec::new() };
    }
    ChainMap {
        lo: x.lo(),
        comps: (x.lo()..=x.hi()).map(|k| f.at(alg, x, y, k).add(&g.at(alg, x, y, k))).collect(),
    }
}

/// Re-indexes a chain map built over untrimmed terms so that it matches the
/// trimmed source complex.
fn realign(f: ChainMap, m: i64, source: &Complex) -> ChainMap {
    if source.is_zero() {
        return ChainMap { lo: 0, comps: Vec::new() };
    }
    let start = (source.lo() - m) as usize;
    let len = source.terms().len();
    ChainMap { lo: source.lo(), comps: f.comps[start..start + len].to_vec() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::DynkinSpec;

    fn pi(s: &str) -> QuiverAlgebra {
        QuiverAlgebra::preprojective(&s.parse::<DynkinSpec>().unwrap().diagram).unwrap()
    }


    #[test]
    fn ext_between_simples_of_pi_a2() {
        let a2 = pi("A2");
        let d = Derived::new(&a2);
        let s1 = Complex::stalk(a2.simple_module(0), 0);
        let s2 = Complex::stalk(a2.simple_module(1), 0);
        assert_eq!(d.hom_dim(&s1, &s2, 1), 1);
        assert_eq!(d.hom_dim(&s1, &s1, -1), 0);
        assert_eq!(d.hom_dim(&s1, &s1, 0), 1);
        assert_eq!(d.hom_dim(&s1, &s1, 1), 0);
        // minimal resolution P_1 <- P_2 <- P_1 <- P_2 ...
        assert_eq!(d.hom_dim(&s1, &s1, 2), 1);
        assert_eq!(d.hom_dim(&s1, &s2, 3), 1);
        assert_eq!(d.hom_dim(&s2, &s1, 1), 1);
    }

    #[test]
    fn projectives_see_only_degree_zero() {
        let a3 = pi("A3");
        let d = Derived::new(&a3);
        let mods: Vec<Module> = (0..3).map(|i| a3.simple_module(i)).chain((0..3).map(|i| a3.projective_module(i))).collect();
        for i in 0..3 {
            let p = Complex::stalk(a3.projective_module(i), 0);
            for m in &mods {
                let y = Complex::stalk(m.clone(), 0);
                for n in -2..=2 {
                    let expected = if n == 0 { m.dims[i] } else { 0 };
                    assert_eq!(d.hom_dim(&p, &y, n), expected);
                }
            }
        }
    }

    #[test]
    fn hom_invariant_under_common_shift() {
        let a2 = pi("A2");
        let d = Derived::new(&a2);
        let s1 = Complex::stalk(a2.simple_module(0), 0);
        let s2 = Complex::stalk(a2.simple_module(1), 0);
        for n in -1..=3 {
            assert_eq!(d.hom_dim(&s1, &s2, n), d.hom_dim(&s1.shift(2), &s2.shift(2), n));
        }
    }

    #[test]
    fn hom_basis_gives_chain_maps() {
        let a2 = pi("A2");
        let d = Derived::new(&a2);
        let s1 = Complex::stalk(a2.simple_module(0), 0);
        let s2 = Complex::stalk(a2.simple_module(1), 0);
        let b = d.hom_basis(&s2.shift(-1), &s1);
        assert_eq!(b.maps.len(), 1);
        assert!(b.maps[0].is_chain_map(&a2, &b.source, &s1));
        let c = cone_unchecked(&a2, &b.source, &s1, &b.maps[0]);
        let w = c.std_bounds(&a2).unwrap();
        assert_eq!((w.lo, w.hi), (0, 0));
        assert_eq!(c.cohomology_module(&a2, 0).dims, vec![1, 1]);
    }

    #[test]
    fn isomorphism_tests() {
        let a2 = pi("A2");
        let d = Derived::new(&a2);
        let p2 = Complex::stalk(a2.projective_module(1), 0);
        let e = Complex::stalk(
            Module { dims: vec![1, 1], arrows: vec![Mat::zeros(1, 1), Mat::from_i64(1, 1, &[1])] },
            0,
        );
        let e2 = Complex::stalk(
            Module { dims: vec![1, 1], arrows: vec![Mat::from_i64(1, 1, &[1]), Mat::zeros(1, 1)] },
            0,
        );
        assert!(d.isomorphic(&p2, &e));
        assert!(!d.isomorphic(&e, &e2));
        let (_, p, cover) = a2.projective_cover(&a2.simple_module(0)).unwrap();
        let two_term = Complex::from_parts(-1, vec![a2.kernel(&cover, &p).0, p.clone()], vec![a2.kernel(&cover, &p).1]);
        assert!(d.isomorphic(&two_term, &Complex::stalk(a2.simple_module(0), 0)));
    }

    #[test]
    fn smc_bounds_with_standard_collection() {
        let a2 = pi("A2");
        let d = Derived::new(&a2);
        let std: Vec<Complex> = (0..2).map(|i| Complex::stalk(a2.simple_module(i), 0)).collect();
        let x = std[0].direct_sum(&a2, &std[1].shift(-2));
        assert_eq!(d.smc_bounds(&std[0], &std, 64).unwrap(), Window { lo: 0, hi: 0 });
        assert_eq!(d.smc_bounds(&x, &std, 64).unwrap(), Window { lo: 0, hi: 2 });
    }

    #[test]
    fn negative_self_extensions() {
        let a2 = pi("A2");
        let d = Derived::new(&a2);
        let s1 = Complex::stalk(a2.simple_module(0), 0);
        let s2 = Complex::stalk(a2.simple_module(1), 0);
        assert!(d.has_no_negative_selfext(&s1));
        // Hom(S_1[-1], (S_1 ⊕ S_1[-1])[-1]) contains End(S_1)
        assert_eq!(d.first_negative_selfext(&s1.direct_sum(&a2, &s1.shift(-1))), Some(-1));
        assert!(d.has_no_negative_selfext(&s1.direct_sum(&a2, &s2.shift(-1))));
        let bad = s1.direct_sum(&a2, &s2.shift(2));
        assert_eq!(d.first_negative_selfext(&bad), Some(-1));
    }
}
