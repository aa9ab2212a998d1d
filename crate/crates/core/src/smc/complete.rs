//! Completing a semibrick complex to a simple-minded collection, and the
//! semibrick pair test for modules.

use std::collections::{HashMap, VecDeque};

use super::{CollectionSet, Direction, NarrowGuards, NarrowResult, Smc, ValidationReport};
use crate::algebra::{Module, ModuleMap, QuiverAlgebra};
use crate::derived::{Complex, Derived};
use crate::error::{Error, Result};

/// Splits a complex along the connected components of the graph on basis
/// vectors whose edges are the nonzero entries of arrow and differential
/// matrices. Each part is a direct summand; parts come out ordered by their
/// lowest degree and then by first basis vector.
pub fn decompose_support(alg: &QuiverAlgebra, x: &Complex) -> Vec<Complex> {
    if x.is_zero() {
        return Vec::new();
    }
    let nv = alg.num_vertices();
    let lo = x.lo();
    let mut offsets = HashMap::new();
    let mut n = 0usize;
    for (k, m) in x.terms().iter().enumerate() {
        for v in 0..nv {
            offsets.insert((k, v), n);
            n += m.dims[v];
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    let union = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(p, a), find(p, b));
        if ra != rb {
            let (small, big) = if ra < rb { (ra, rb) } else { (rb, ra) };
            p[big] = small;
        }
    };
    for (k, m) in x.terms().iter().enumerate() {
        for (ai, arrow) in alg.arrows().iter().enumerate() {
            let mat = &m.arrows[ai];
            for r in 0..mat.rows() {
                for c in 0..mat.cols() {
                    if !num_traits::Zero::is_zero(mat.get(r, c)) {
                        union(&mut parent, offsets[&(k, arrow.source)] + c, offsets[&(k, arrow.target)] + r);
                    }
                }
            }
        }
    }
    for (k, d) in x.diffs().iter().enumerate() {
        for v in 0..nv {
            let mat = &d.mats[v];
            for r in 0..mat.rows() {
                for c in 0..mat.cols() {
                    if !num_traits::Zero::is_zero(mat.get(r, c)) {
                        union(&mut parent, offsets[&(k, v)] + c, offsets[&(k + 1, v)] + r);
                    }
                }
            }
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        if !roots.contains(&r) {
            roots.push(r);
        }
    }
    roots
        .into_iter()
        .map(|root| {
            // selected coordinates per (degree, vertex)
            let sel: Vec<Vec<Vec<usize>>> = x
                .terms()
                .iter()
                .enumerate()
                .map(|(k, m)| {
                    (0..nv)
                        .map(|v| (0..m.dims[v]).filter(|&i| find(&mut parent, offsets[&(k, v)] + i) == root).collect())
                        .collect()
                })
                .collect();
            let terms: Vec<Module> = x
                .terms()
                .iter()
                .enumerate()
                .map(|(k, m)| Module {
                    dims: sel[k].iter().map(Vec::len).collect(),
                    arrows: alg
                        .arrows()
                        .iter()
                        .enumerate()
                        .map(|(ai, a)| {
                            m.arrows[ai].select_rows(&sel[k][a.target]).select_columns(&sel[k][a.source])
                        })
                        .collect(),
                })
                .collect();
            let diffs: Vec<ModuleMap> = x
                .diffs()
                .iter()
                .enumerate()
                .map(|(k, d)| ModuleMap {
                    mats: (0..nv).map(|v| d.mats[v].select_rows(&sel[k + 1][v]).select_columns(&sel[k][v])).collect(),
                })
                .collect();
            Complex::from_parts(lo, terms, diffs)
        })
        .collect()
}

/// Limits for the completion search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompletionLimits {
    pub depth: usize,
    pub budget: usize,
    pub narrow: NarrowGuards,
}

impl Default for CompletionLimits {
    fn default() -> Self {
        CompletionLimits { depth: 16, budget: 2000, narrow: NarrowGuards::default() }
    }
}

#[derive(Debug, Clone)]
pub struct CompletionResult {
    pub smc: Smc,
    /// The indecomposable summands that were completed.
    pub summands: Vec<Complex>,
    /// For each summand, the index of the isomorphic element of `smc`.
    pub positions: Vec<usize>,
    /// Heart witness the search started from.
    pub witness: NarrowResult,
    /// Number of collections visited by the search.
    pub explored: usize,
}

/// Result of [`Derived::semibrick_pair_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairReport {
    pub x_semibrick: bool,
    pub y_semibrick: bool,
    pub hom_vanishes: bool,
    pub ext1_vanishes: bool,
    pub rank: usize,
    pub max_rank: usize,
    /// Present only at maximal rank: validation of `x ⊕ y[1]` as an smc.
    pub smc_valid: Option<bool>,
    /// Present only at maximal rank: `x ⊕ y[1]` is 2-term for the simples.
    pub two_term: Option<bool>,
    pub messages: Vec<String>,
}

impl PairReport {
    pub fn is_pair(&self) -> bool {
        self.x_semibrick && self.y_semibrick && self.hom_vanishes && self.ext1_vanishes
    }

    pub fn passed(&self) -> bool {
        self.is_pair() && self.smc_valid != Some(false) && self.two_term != Some(false)
    }
}

impl Derived<'_> {
    /// Checks that the parts are bricks with no Homs between distinct parts
    /// and that their sum has no negative self-extensions.
    pub fn semibrick_complex_violation(&self, parts: &[Complex]) -> Option<String> {
        for (i, a) in parts.iter().enumerate() {
            for (j, b) in parts.iter().enumerate() {
                let h = self.hom_dim(a, b, 0);
                if h != usize::from(i == j) {
                    return Some(format!("dim Hom(x{}, x{}) = {h}", i + 1, j + 1));
                }
            }
        }
        let sum = Complex::direct_sum_all(self.alg(), parts);
        self.first_negative_selfext(&sum).map(|i| format!("Hom(x, x[{i}]) != 0"))
    }

    /// Finds an smc containing every summand of `x` (split by
    /// [`decompose_support`] unless `summands` is given). The search narrows
    /// `x` into a heart `H_W` and walks left mutations of `W` that stay
    /// 2-term with respect to `W`.
    pub fn complete_semibrick(
        &self,
        x: &Complex,
        summands: Option<Vec<Complex>>,
        limits: CompletionLimits,
    ) -> Result<CompletionResult> {
        let alg = self.alg();
        let parts = match summands {
            Some(p) => p,
            None => decompose_support(alg, x),
        };
        if parts.is_empty() {
            return Err(Error::Precondition("cannot complete the zero object".into()));
        }
        if let Some(msg) = self.semibrick_complex_violation(&parts) {
            return Err(Error::Precondition(format!("not a semibrick complex: {msg}")));
        }
        let whole = Complex::direct_sum_all(alg, &parts);
        let witness = self.narrow(&whole, &self.standard_smc(), limits.narrow)?;
        let w = witness.smc.clone();

        let mut queue = VecDeque::from([(w.clone(), 0usize)]);
        let mut seen = CollectionSet::default();
        seen.insert(self, &w);
        let mut explored = 0;
        while let Some((u, depth)) = queue.pop_front() {
            explored += 1;
            if let Some(positions) = self.containment(&u, &parts) {
                return Ok(CompletionResult { smc: u, summands: parts, positions, witness, explored });
            }
            if depth >= limits.depth || explored >= limits.budget {
                if explored >= limits.budget {
                    break;
                }
                continue;
            }
            for i in 0..u.len() {
                // y_i already in degree -1 relative to W would leave the window
                if self.smc_window(&u.elements[i], &w)?.lo < 0 {
                    continue;
                }
                let v = self.mutate(&u, i, Direction::Left)?;
                if !self.two_term_wrt(&v, &w)? {
                    continue;
                }
                if seen.insert(self, &v) {
                    queue.push_back((v, depth + 1));
                }
            }
        }
        Err(Error::Guard(format!(
            "completion search exhausted after exploring {explored} collections (depth {}, budget {})",
            limits.depth, limits.budget
        )))
    }

    fn containment(&self, u: &Smc, parts: &[Complex]) -> Option<Vec<usize>> {
        parts
            .iter()
            .map(|p| {
                let cd = self.nonzero_cohomology(p);
                u.elements.iter().position(|y| self.nonzero_cohomology(y) == cd && self.isomorphic(p, y))
            })
            .collect()
    }

    /// Tests whether `x ⊕ y[1]` is a semibrick pair of modules, and at
    /// maximal rank whether it is a 2-term smc.
    pub fn semibrick_pair_check(&self, xs: &[Module], ys: &[Module]) -> PairReport {
        let alg = self.alg();
        let mut messages = Vec::new();
        let x_semibrick = alg.is_semibrick(xs);
        let y_semibrick = alg.is_semibrick(ys);
        if !x_semibrick {
            messages.push("x is not a semibrick".to_string());
        }
        if !y_semibrick {
            messages.push("y is not a semibrick".to_string());
        }
        let stalk = |m: &Module| Complex::stalk(m.clone(), 0);
        let mut hom_vanishes = true;
        let mut ext1_vanishes = true;
        for (i, a) in xs.iter().enumerate() {
            for (j, b) in ys.iter().enumerate() {
                let h = alg.hom_dim(a, b);
                if h != 0 {
                    hom_vanishes = false;
                    messages.push(format!("dim Hom(x{}, y{}) = {h}", i + 1, j + 1));
                }
                let e = self.hom_dim(&stalk(a), &stalk(b), 1);
                if e != 0 {
                    ext1_vanishes = false;
                    messages.push(format!("dim Ext^1(x{}, y{}) = {e}", i + 1, j + 1));
                }
            }
        }
        let rank = xs.len() + ys.len();
        let max_rank = alg.num_vertices();
        let mut report = PairReport {
            x_semibrick,
            y_semibrick,
            hom_vanishes,
            ext1_vanishes,
            rank,
            max_rank,
            smc_valid: None,
            two_term: None,
            messages,
        };
        if report.is_pair() && rank == max_rank {
            let u = Smc {
                elements: xs.iter().map(stalk).chain(ys.iter().map(|m| stalk(m).shift(1))).collect(),
                provenance: Default::default(),
            };
            let v: ValidationReport = self.validate(&u);
            report.messages.extend(v.messages.iter().cloned());
            report.smc_valid = Some(v.passed);
            report.two_term = Some(self.two_term_wrt(&u, &self.standard_smc()).unwrap_or(false));
        }
        report
    }
}
