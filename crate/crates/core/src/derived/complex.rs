//! Bounded cochain complexes of representations.

use crate::algebra::{Module, ModuleMap, QuiverAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{q, Mat};

/// A closed integer interval `[lo, hi]` of degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl std::fmt::Display for Window {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// Cochain complex `X^lo -> X^(lo+1) -> ... -> X^hi`. Terms outside the
/// stored range are zero. The stored range is trimmed so that the first and
/// last terms are nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct Complex {
    lo: i64,
    terms: Vec<Module>,
    diffs: Vec<ModuleMap>,
}

/// A degreewise map between complexes; `comps[i]` is the component at degree
/// `lo + i`. Missing degrees are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainMap {
    pub lo: i64,
    pub comps: Vec<ModuleMap>,
}

impl Complex {
    pub fn zero() -> Self {
        Complex { lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// Validating constructor: shapes, relations, module maps and `d d = 0`.
    pub fn new(alg: &QuiverAlgebra, lo: i64, terms: Vec<Module>, diffs: Vec<ModuleMap>) -> Result<Self> {
        if diffs.len() + 1 != terms.len() && !(terms.is_empty() && diffs.is_empty()) {
            return Err(Error::Precondition("a complex with r terms needs r - 1 differentials".into()));
        }
        for t in &terms {
            alg.check_module(t)?;
        }
        for (i, d) in diffs.iter().enumerate() {
            if !alg.is_module_map(d, &terms[i], &terms[i + 1]) {
                return Err(Error::Precondition(format!("differential at degree {} is not a module map", lo + i as i64)));
            }
        }
        for i in 1..diffs.len() {
            if !diffs[i].compose(&diffs[i - 1]).is_zero() {
                return Err(Error::Precondition(format!("d^2 != 0 at degree {}", lo + i as i64 - 1)));
            }
        }
        Ok(Complex::from_parts(lo, terms, diffs))
    }

    /// Unchecked constructor; trims zero terms at both ends.
    pub fn from_parts(lo: i64, mut terms: Vec<Module>, mut diffs: Vec<ModuleMap>) -> Self {
        let mut lo = lo;
        while terms.first().is_some_and(Module::is_zero) {
            terms.remove(0);
            if !diffs.is_empty() {
                diffs.remove(0);
            }
            lo += 1;
        }
        while terms.last().is_some_and(Module::is_zero) {
            terms.pop();
            diffs.pop();
        }
        if terms.is_empty() {
            return Complex::zero();
        }
        Complex { lo, terms, diffs }
    }

    /// The module `m` placed in degree `deg`.
    pub fn stalk(m: Module, deg: i64) -> Self {
        Complex::from_parts(deg, vec![m], Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest degree with a nonzero term (0 for the zero complex).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest degree with a nonzero term (`lo - 1` for the zero complex).
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn terms(&self) -> &[Module] {
        &self.terms
    }

    pub fn diffs(&self) -> &[ModuleMap] {
        &self.diffs
    }

    pub fn term_ref(&self, k: i64) -> Option<&Module> {
        if k < self.lo || k > self.hi() {
            None
        } else {
            Some(&self.terms[(k - self.lo) as usize])
        }
    }

    pub fn term(&self, alg: &QuiverAlgebra, k: i64) -> Module {
        self.term_ref(k).cloned().unwrap_or_else(|| Module::zero(alg))
    }

    pub fn term_dims(&self, alg: &QuiverAlgebra, k: i64) -> Vec<usize> {
        self.term_ref(k).map(|m| m.dims.clone()).unwrap_or_else(|| vec![0; alg.num_vertices()])
    }

    /// Differential `X^k -> X^(k+1)`.
    pub fn diff(&self, alg: &QuiverAlgebra, k: i64) -> ModuleMap {
        if k >= self.lo && k < self.hi() {
            self.diffs[(k - self.lo) as usize].clone()
        } else {
            let s = self.term(alg, k);
            let t = self.term(alg, k + 1);
            ModuleMap::zero(&s, &t)
        }
    }

    pub fn total_dim(&self) -> usize {
        self.terms.iter().map(Module::total_dim).sum()
    }

    /// `x[n]`: degree `k` holds `x^(k+n)`, differentials scaled by `(-1)^n`.
    pub fn shift(&self, n: i64) -> Complex {
        if self.is_zero() {
            return Complex::zero();
        }
        let diffs = if n % 2 == 0 { self.diffs.clone() } else { self.diffs.iter().map(|d| d.scale(&q(-1))).collect() };
        Complex { lo: self.lo - n, terms: self.terms.clone(), diffs }
    }

    pub fn direct_sum(&self, alg: &QuiverAlgebra, other: &Complex) -> Complex {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let terms = (lo..=hi).map(|k| self.term(alg, k).direct_sum(&other.term(alg, k))).collect();
        let diffs = (lo..hi).map(|k| self.diff(alg, k).direct_sum(&other.diff(alg, k))).collect();
        Complex::from_parts(lo, terms, diffs)
    }

    pub fn direct_sum_all(alg: &QuiverAlgebra, parts: &[Complex]) -> Complex {
        parts.iter().fold(Complex::zero(), |acc, x| acc.direct_sum(alg, x))
    }

    /// Per-degree dimension vectors of the cohomology, over `[lo, hi]`.
    pub fn cohomology_dims(&self, alg: &QuiverAlgebra) -> Vec<(i64, Vec<usize>)> {
        let nv = alg.num_vertices();
        (self.lo..=self.hi())
            .map(|k| {
                let dk = self.diff(alg, k);
                let dprev = self.diff(alg, k - 1);
                let dims = (0..nv)
                    .map(|v| {
                        let n = self.term_dims(alg, k)[v];
                        n - dk.mats[v].rank() - dprev.mats[v].rank()
                    })
                    .collect();
                (k, dims)
            })
            .collect()
    }

    pub fn is_acyclic(&self, alg: &QuiverAlgebra) -> bool {
        self.cohomology_dims(alg).iter().all(|(_, d)| d.iter().all(|&x| x == 0))
    }

    /// Sharp window of nonvanishing standard cohomology, `None` if acyclic.
    pub fn std_bounds(&self, alg: &QuiverAlgebra) -> Option<Window> {
        let nonzero: Vec<i64> =
            self.cohomology_dims(alg).into_iter().filter(|(_, d)| d.iter().any(|&x| x > 0)).map(|(k, _)| k).collect();
        Some(Window { lo: *nonzero.first()?, hi: *nonzero.last()? })
    }

    /// `H^k(x)` as a module.
    pub fn cohomology_module(&self, alg: &QuiverAlgebra, k: i64) -> Module {
        let xk = self.term(alg, k);
        let (z, inc) = alg.kernel(&self.diff(alg, k), &xk);
        let dprev = self.diff(alg, k - 1);
        let image_in_z: Vec<Mat> = (0..alg.num_vertices())
            .map(|v| inc.mats[v].solve(&dprev.mats[v]).expect("image lies in the kernel"))
            .collect();
        alg.quotient(&z, &image_in_z).0
    }

    /// Smart truncation `tau^{>= a} tau^{<= b}`.
    pub fn soft_truncate(&self, alg: &QuiverAlgebra, a: i64, b: i64) -> Complex {
        if self.is_zero() || a > b {
            return Complex::zero();
        }
        let lo = a.max(self.lo);
        let hi = b.min(self.hi());
        if lo > hi {
            return Complex::zero();
        }
        let mut terms: Vec<Module> = (lo..=hi).map(|k| self.term(alg, k)).collect();
        let mut diffs: Vec<ModuleMap> = (lo..hi).map(|k| self.diff(alg, k)).collect();
        let nv = alg.num_vertices();
        // top: replace X^hi by the cycles when truncating above
        let mut top_inclusion = None;
        if hi < self.hi() {
            let (z, inc) = alg.kernel(&self.diff(alg, hi), terms.last().unwrap());
            if let Some(d) = diffs.last_mut() {
                *d = ModuleMap {
                    mats: (0..nv).map(|v| inc.mats[v].solve(&d.mats[v]).expect("boundaries are cycles")).collect(),
                };
            }
            *terms.last_mut().unwrap() = z;
            top_inclusion = Some(inc);
        }
        // bottom: replace X^lo by the cokernel of the incoming differential
        if lo > self.lo {
            let mut incoming = self.diff(alg, lo - 1);
            if let (true, Some(inc)) = (lo == hi, &top_inclusion) {
                incoming = ModuleMap {
                    mats: (0..nv).map(|v| inc.mats[v].solve(&incoming.mats[v]).expect("boundaries are cycles")).collect(),
                };
            }
            let (cq, _, lift) = alg.quotient_with_lift(&terms[0], &incoming.mats);
            if !diffs.is_empty() {
                diffs[0] = diffs[0].compose(&lift);
            }
            terms[0] = cq;
        }
        Complex::from_parts(lo, terms, diffs)
    }
}

impl ChainMap {
    pub fn zero(alg: &QuiverAlgebra, x: &Complex, y: &Complex) -> ChainMap {
        ChainMap {
            lo: x.lo(),
            comps: (x.lo()..=x.hi()).map(|k| ModuleMap::zero(&x.term(alg, k), &y.term(alg, k))).collect(),
        }
    }

    pub fn identity(x: &Complex) -> ChainMap {
        ChainMap { lo: x.lo(), comps: x.terms().iter().map(ModuleMap::identity).collect() }
    }

    /// Component at degree `k` as a map `x^k -> y^k`.
    pub fn at(&self, alg: &QuiverAlgebra, x: &Complex, y: &Complex, k: i64) -> ModuleMap {
        let i = k - self.lo;
        if i >= 0 && (i as usize) < self.comps.len() {
            self.comps[i as usize].clone()
        } else {
            ModuleMap::zero(&x.term(alg, k), &y.term(alg, k))
        }
    }

    pub fn is_chain_map(&self, alg: &QuiverAlgebra, x: &Complex, y: &Complex) -> bool {
        let lo = x.lo().min(y.lo()) - 1;
        let hi = x.hi().max(y.hi()) + 1;
        for k in lo..=hi {
            let f = self.at(alg, x, y, k);
            if !alg.is_module_map(&f, &x.term(alg, k), &y.term(alg, k)) {
                return false;
            }
            let left = y.diff(alg, k).compose(&f);
            let right = self.at(alg, x, y, k + 1).compose(&x.diff(alg, k));
            if left != right {
                return false;
            }
        }
        true
    }
}

/// Block map `[[a, b], [c, d]]: S1 ⊕ S2 -> T1 ⊕ T2`, vertexwise.
pub(crate) fn block_map(a: &ModuleMap, b: &ModuleMap, c: &ModuleMap, d: &ModuleMap) -> ModuleMap {
    ModuleMap {
        mats: (0..a.mats.len())
            .map(|v| a.mats[v].hstack(&b.mats[v]).vstack(&c.mats[v].hstack(&d.mats[v])))
            .collect(),
    }
}

/// Mapping cone of `f: x -> y`: degree `k` holds `x^(k+1) ⊕ y^k` with
/// differential `[[-d_x, 0], [f, d_y]]`.
pub fn cone(alg: &QuiverAlgebra, x: &Complex, y: &Complex, f: &ChainMap) -> Result<Complex> {
    if !f.is_chain_map(alg, x, y) {
        return Err(Error::Precondition("cone requires a chain map".into()));
    }
    Ok(cone_unchecked(alg, x, y, f))
}

pub(crate) fn cone_unchecked(alg: &QuiverAlgebra, x: &Complex, y: &Complex, f: &ChainMap) -> Complex {
    if x.is_zero() {
        return y.clone();
    }
    let lo = (x.lo() - 1).min(if y.is_zero() { i64::MAX } else { y.lo() });
    let hi = (x.hi() - 1).max(if y.is_zero() { i64::MIN } else { y.hi() });
    let terms: Vec<Module> = (lo..=hi).map(|k| x.term(alg, k + 1).direct_sum(&y.term(alg, k))).collect();
    let diffs: Vec<ModuleMap> = (lo..hi)
        .map(|k| {
            let dx = x.diff(alg, k + 1).scale(&q(-1));
            let zero = ModuleMap::zero(&y.term(alg, k), &x.term(alg, k + 2));
            let fk = f.at(alg, x, y, k + 1);
            block_map(&dx, &zero, &fk, &y.diff(alg, k))
        })
        .collect();
    Complex::from_parts(lo, terms, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::DynkinSpec;

    fn pi(s: &str) -> QuiverAlgebra {
        QuiverAlgebra::preprojective(&s.parse::<DynkinSpec>().unwrap().diagram).unwrap()
    }

    #[test]
    fn shift_roundtrip_and_bounds() {
        let a2 = pi("A2");
        let x = Complex::stalk(a2.simple_module(0), 0).direct_sum(&a2, &Complex::stalk(a2.simple_module(1), 2));
        assert_eq!(x.std_bounds(&a2), Some(Window { lo: 0, hi: 2 }));
        assert_eq!(x.shift(1).shift(-1), x);
        assert_eq!(x.shift(1).std_bounds(&a2), Some(Window { lo: -1, hi: 1 }));
        assert_eq!(Complex::zero().std_bounds(&a2), None);
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let a2 = pi("A2");
        let x = Complex::stalk(a2.projective_module(0), 0);
        let c = cone(&a2, &x, &x, &ChainMap::identity(&x)).unwrap();
        assert!(c.is_acyclic(&a2));
        assert_eq!(c.lo(), -1);
    }

    #[test]
    fn cone_from_zero() {
        let a2 = pi("A2");
        let y = Complex::stalk(a2.simple_module(0), 0);
        let c = cone(&a2, &Complex::zero(), &y, &ChainMap { lo: 0, comps: vec![] }).unwrap();
        assert_eq!(c, y);
    }

    #[test]
    fn cohomology_of_cover() {
        let a2 = pi("A2");
        let s1 = a2.simple_module(0);
        let (_, p, map) = a2.projective_cover(&s1).unwrap();
        let x = Complex::new(&a2, 0, vec![p, s1], vec![map]).unwrap();
        let h = x.cohomology_module(&a2, 0);
        assert_eq!(h.dims, vec![0, 1]);
        assert_eq!(x.std_bounds(&a2), Some(Window { lo: 0, hi: 0 }));
        let t = x.soft_truncate(&a2, 0, 0);
        assert_eq!(t.terms().len(), 1);
        assert_eq!(t.terms()[0].dims, vec![0, 1]);
    }

    #[test]
    fn rejects_bad_differential() {
        let a2 = pi("A2");
        let s1 = a2.simple_module(0);
        let s2 = a2.simple_module(1);
        let d = ModuleMap::zero(&s1, &s2);
        assert!(Complex::new(&a2, 0, vec![s1.clone(), s2], vec![d.clone(), d]).is_err());
    }
}
