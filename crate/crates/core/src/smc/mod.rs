//! Simple-minded collections: validation, order, mutation, narrowing and
//! semibrick completion.

mod complete;
mod mutation;
mod narrow;

pub use complete::{decompose_support, CompletionLimits, CompletionResult, PairReport};
pub use mutation::{MutationChecks, DEFAULT_APPROX_DEPTH};
pub use narrow::{HeartMembership, NarrowGuards, NarrowResult, WindowStep};

use std::collections::HashMap;

use crate::derived::{Complex, Derived, Window};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    Right,
}

impl Direction {
    pub fn letter(self) -> &'static str {
        match self {
            Direction::Left => "L",
            Direction::Right => "R",
        }
    }
}

impl std::str::FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" | "l" | "left" => Ok(Direction::Left),
            "R" | "r" | "right" => Ok(Direction::Right),
            _ => Err(Error::Parse(format!("unknown mutation direction {s:?}; expected L or R"))),
        }
    }
}

/// Mutation steps applied to the standard collection, followed by a uniform
/// shift `y -> y[shift]`. Indices are 0-based.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MutationPath {
    pub steps: Vec<(usize, Direction)>,
    pub shift: i64,
}

/// An ordered collection of complexes, with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct Smc {
    pub elements: Vec<Complex>,
    pub provenance: MutationPath,
}

/// Outcome of the Hom-axiom checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub passed: bool,
    pub checks: usize,
    /// `(i, j, t, dim Hom(y_i, y_j[t]))` for every failed check, 0-based.
    pub failures: Vec<(usize, usize, i64, usize)>,
    pub messages: Vec<String>,
}

impl Smc {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Every element shifted by `n`.
    pub fn shifted(&self, n: i64) -> Smc {
        Smc {
            elements: self.elements.iter().map(|y| y.shift(n)).collect(),
            provenance: MutationPath { steps: self.provenance.steps.clone(), shift: self.provenance.shift + n },
        }
    }
}

impl Derived<'_> {
    /// The simple modules in degree 0.
    pub fn standard_smc(&self) -> Smc {
        let alg = self.alg();
        Smc {
            elements: (0..alg.num_vertices()).map(|i| Complex::stalk(alg.simple_module(i), 0)).collect(),
            provenance: MutationPath::default(),
        }
    }

    /// Checks `Hom(y_i, y_j[t]) = 0` for `t < 0`, `Hom(y_i, y_j) = δ_ij`
    /// and the element count. Generation is not checked.
    pub fn validate(&self, u: &Smc) -> ValidationReport {
        let alg = self.alg();
        let mut report = ValidationReport { passed: true, checks: 0, failures: Vec::new(), messages: Vec::new() };
        if u.len() != alg.num_vertices() {
            report.passed = false;
            report.messages.push(format!("{} elements but the algebra has {} simples", u.len(), alg.num_vertices()));
        }
        let windows: Vec<Option<Window>> = u.elements.iter().map(|y| y.std_bounds(alg)).collect();
        for (i, w) in windows.iter().enumerate() {
            if w.is_none() {
                report.passed = false;
                report.messages.push(format!("element {} is zero", i + 1));
            }
        }
        if !report.passed {
            return report;
        }
        for (i, yi) in u.elements.iter().enumerate() {
            for (j, yj) in u.elements.iter().enumerate() {
                let (wi, wj) = (windows[i].unwrap(), windows[j].unwrap());
                for t in (wj.lo - wi.hi)..0 {
                    report.checks += 1;
                    let h = self.hom_dim(yi, yj, t);
                    if h != 0 {
                        report.failures.push((i, j, t, h));
                    }
                }
                report.checks += 1;
                let h = self.hom_dim(yi, yj, 0);
                if h != usize::from(i == j) {
                    report.failures.push((i, j, 0, h));
                }
            }
        }
        report.passed = report.failures.is_empty();
        for &(i, j, t, h) in &report.failures {
            report.messages.push(format!("dim Hom(y{}, y{}[{}]) = {}", i + 1, j + 1, t, h));
        }
        report
    }

    pub fn smc_window(&self, x: &Complex, v: &Smc) -> Result<Window> {
        self.smc_bounds(x, &v.elements, SCAN_CEILING)
    }

    /// `true` iff every element of `u` lies in `[-1, 0]` relative to `v`.
    pub fn two_term_wrt(&self, u: &Smc, v: &Smc) -> Result<bool> {
        for y in &u.elements {
            let w = self.smc_window(y, v)?;
            if w.lo < -1 || w.hi > 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `v <= u`, i.e. `Hom(v, u[j]) = 0` for all `j < 0`.
    pub fn smc_leq(&self, v: &Smc, u: &Smc) -> bool {
        let alg = self.alg();
        for y in &v.elements {
            for z in &u.elements {
                let (Some(wy), Some(wz)) = (y.std_bounds(alg), z.std_bounds(alg)) else { continue };
                for j in (wz.lo - wy.hi)..0 {
                    if self.hom_dim(y, z, j) != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Replays a mutation path from the standard collection.
    pub fn replay(&self, path: &MutationPath) -> Result<Smc> {
        let mut u = self.standard_smc();
        for &(i, dir) in &path.steps {
            u = self.mutate(&u, i, dir)?;
        }
        Ok(u.shifted(path.shift))
    }

    /// Elementwise isomorphism of two collections in the same order.
    pub fn smc_isomorphic(&self, u: &Smc, v: &Smc) -> bool {
        u.len() == v.len() && u.elements.iter().zip(&v.elements).all(|(a, b)| self.isomorphic(a, b))
    }
}

/// Collections seen so far, compared as unordered sets up to isomorphism.
/// Cohomology dimensions serve as a cheap prefilter.
#[derive(Debug, Default)]
pub struct CollectionSet {
    buckets: HashMap<Vec<Fingerprint>, Vec<Smc>>,
    len: usize,
}

type Fingerprint = Vec<(i64, Vec<usize>)>;

impl CollectionSet {
    /// Inserts `u` unless an equivalent collection is present; returns
    /// whether it was new.
    pub fn insert(&mut self, d: &Derived<'_>, u: &Smc) -> bool {
        let key = d.smc_fingerprint(u);
        let bucket = self.buckets.entry(key).or_default();
        if bucket.iter().any(|old| d.same_collection(old, u)) {
            return false;
        }
        bucket.push(u.clone());
        self.len += 1;
        true
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

impl Derived<'_> {
    fn smc_fingerprint(&self, u: &Smc) -> Vec<Fingerprint> {
        let mut f: Vec<Fingerprint> = u.elements.iter().map(|y| self.nonzero_cohomology(y)).collect();
        f.sort();
        f
    }

    pub(crate) fn nonzero_cohomology(&self, y: &Complex) -> Fingerprint {
        y.cohomology_dims(self.alg()).into_iter().filter(|(_, d)| d.iter().any(|&x| x > 0)).collect()
    }

    /// Equality as unordered collections up to isomorphism.
    pub fn same_collection(&self, a: &Smc, b: &Smc) -> bool {
        if a.len() != b.len() {
            return false;
        }
        let mut used = vec![false; b.len()];
        a.elements.iter().all(|y| {
            let fy = self.nonzero_cohomology(y);
            let hit = b
                .elements
                .iter()
                .enumerate()
                .position(|(j, z)| !used[j] && self.nonzero_cohomology(z) == fy && self.isomorphic(y, z));
            match hit {
                Some(j) => {
                    used[j] = true;
                    true
                }
                None => false,
            }
        })
    }

    /// Collections reachable from `start` by at most `depth` mutations in the
    /// given directions, each paired with its distance. Duplicates (as
    /// unordered collections) are dropped.
    pub fn mutation_closure(&self, start: &Smc, depth: usize, directions: &[Direction]) -> Result<Vec<(Smc, usize)>> {
        let mut seen = CollectionSet::default();
        seen.insert(self, start);
        let mut out = vec![(start.clone(), 0)];
        let mut frontier = 0;
        while frontier < out.len() {
            let (u, k) = out[frontier].clone();
            frontier += 1;
            if k == depth {
                continue;
            }
            for i in 0..u.len() {
                for &dir in directions {
                    let v = self.mutate(&u, i, dir)?;
                    if seen.insert(self, &v) {
                        out.push((v, k + 1));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Maximum length of a Hom-vanishing scan.
pub const SCAN_CEILING: i64 = 64;
