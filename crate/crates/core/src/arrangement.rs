//! Intersection arrangements: hyperplanes dual to restricted roots, their
//! chambers, the chamber graph and atoms.
//!
//! Atoms are stored by their endpoints. Two reduced galleries with the same
//! endpoints are identified, so the atom `c -> d` is determined by `(c, d)` and
//! crosses exactly the hyperplanes in `sep(c, d)`.
//!
//! `atom_leq` uses containment of separation sets. If `sep(c, b) ⊆ sep(c, a)`
//! then `sep(b, a) = sep(c, a) \ sep(c, b)` (symmetric difference of nested
//! sets), so the lengths add up and the gallery `c -> b -> a` is reduced; that
//! composite is the atom `c -> a`. Conversely a reduced composite crosses every
//! wall at most once, so the walls crossed by its first piece are walls of the
//! whole. [`Arrangement::atom_leq_by_factorization`] checks the definition
//! directly using graph distances.

use std::collections::{BTreeSet, VecDeque};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::dynkin::RestrictedRoot;
use crate::error::{Error, Result};
use crate::linalg::{q, q_to_string, Q};

/// Largest ambient dimension accepted by chamber enumeration.
pub const MAX_DIMENSION: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    /// Primitive integer normal with positive leading entry.
    pub normal: Vec<i64>,
}

impl Hyperplane {
    pub fn canonical(v: &[i64]) -> Option<Hyperplane> {
        let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
        if g == 0 {
            return None;
        }
        let lead = *v.iter().find(|&&x| x != 0)?;
        let s = if lead < 0 { -g } else { g };
        Some(Hyperplane { normal: v.iter().map(|x| x / s).collect() })
    }

    fn eval(&self, v: &[Q]) -> Q {
        self.normal.iter().zip(v).map(|(a, x)| q(*a) * x).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    /// `+1` or `-1` for every hyperplane of the arrangement.
    pub signs: Vec<i8>,
    /// A rational point inside the open chamber.
    pub witness: Vec<Q>,
}

impl Chamber {
    pub fn sign_string(&self) -> String {
        self.signs.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Atom {
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone)]
pub struct Arrangement {
    dimension: usize,
    hyperplanes: Vec<Hyperplane>,
    chambers: Vec<Chamber>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Arrangement {
    /// Builds the arrangement of hyperplanes dual to the given restricted roots,
    /// enumerates its chambers and computes the chamber graph.
    pub fn from_restricted_roots(roots: &[RestrictedRoot]) -> Result<Self> {
        let normals: Vec<Vec<i64>> = roots.iter().map(|r| r.coords.clone()).collect();
        Self::from_normals(&normals)
    }

    pub fn from_normals(normals: &[Vec<i64>]) -> Result<Self> {
        let Some(first) = normals.first() else {
            return Err(Error::Precondition("empty set of restricted roots".into()));
        };
        let dimension = first.len();
        if normals.iter().any(|n| n.len() != dimension) {
            return Err(Error::Precondition("normals of differing lengths".into()));
        }
        let mut hyperplanes: Vec<Hyperplane> = Vec::new();
        for n in normals {
            let h = Hyperplane::canonical(n).ok_or_else(|| Error::Precondition("zero normal".into()))?;
            if !hyperplanes.contains(&h) {
                hyperplanes.push(h);
            }
        }
        if dimension > MAX_DIMENSION {
            return Err(Error::Guard(format!(
                "arrangement of dimension {dimension} exceeds the limit {MAX_DIMENSION}"
            )));
        }
        let chambers = enumerate_chambers(dimension, &hyperplanes);
        let mut arr = Arrangement { dimension, hyperplanes, chambers, edges: Vec::new(), adjacency: Vec::new() };
        arr.build_graph();
        Ok(arr)
    }

    fn build_graph(&mut self) {
        let n = self.chambers.len();
        let mut adjacency = vec![Vec::new(); n];
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let sep = self.separation_set(i, j);
                if sep.len() != 1 {
                    continue;
                }
                let wall = *sep.iter().next().unwrap();
                if self.facet_point(i, wall).is_some() {
                    edges.push((i, j));
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                }
            }
        }
        self.edges = edges;
        self.adjacency = adjacency;
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn chambers(&self) -> &[Chamber] {
        &self.chambers
    }

    /// Undirected chamber-graph edges `(i, j)` with `i < j`; each stands for
    /// the pair of arrows `i -> j` and `j -> i`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbours(&self, c: usize) -> &[usize] {
        &self.adjacency[c]
    }

    pub fn chamber_index(&self, signs: &[i8]) -> Option<usize> {
        self.chambers.iter().position(|c| c.signs == signs)
    }

    fn check_chamber(&self, c: usize) -> Result<()> {
        if c < self.chambers.len() {
            Ok(())
        } else {
            Err(Error::Precondition(format!("chamber {c} is not a chamber of this arrangement")))
        }
    }

    pub fn separation_set(&self, c: usize, d: usize) -> BTreeSet<usize> {
        let (a, b) = (&self.chambers[c].signs, &self.chambers[d].signs);
        (0..a.len()).filter(|&k| a[k] != b[k]).collect()
    }

    pub fn try_separation_set(&self, c: usize, d: usize) -> Result<BTreeSet<usize>> {
        self.check_chamber(c)?;
        self.check_chamber(d)?;
        Ok(self.separation_set(c, d))
    }

    /// A point in the relative interior of the face of chamber `c` lying on
    /// hyperplane `wall`, if that face is full-dimensional in the hyperplane.
    pub fn facet_point(&self, c: usize, wall: usize) -> Option<Vec<Q>> {
        let signs = &self.chambers[c].signs;
        let cons: Vec<(Vec<Q>, Q)> = self
            .hyperplanes
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != wall)
            .map(|(k, h)| (h.normal.iter().map(|&a| q(a * signs[k] as i64)).collect(), Q::one()))
            .collect();
        let eq: Vec<Q> = self.hyperplanes[wall].normal.iter().map(|&a| q(a)).collect();
        feasible_point_on_hyperplane(&eq, &cons)
    }

    pub fn opposite_chamber(&self, c: usize) -> Result<usize> {
        self.check_chamber(c)?;
        let flipped: Vec<i8> = self.chambers[c].signs.iter().map(|s| -s).collect();
        self.chamber_index(&flipped)
            .ok_or_else(|| Error::Internal("opposite sign vector not realised".into()))
    }

    /// One atom per chamber, starting at `c` (the identity atom included).
    pub fn atoms_from(&self, c: usize) -> Result<Vec<Atom>> {
        self.check_chamber(c)?;
        Ok((0..self.chambers.len()).map(|t| Atom { source: c, target: t }).collect())
    }

    pub fn atom_length(&self, a: &Atom) -> usize {
        self.separation_set(a.source, a.target).len()
    }

    /// `beta <= alpha` in the atom order (separation-set containment).
    pub fn atom_leq(&self, beta: &Atom, alpha: &Atom) -> Result<bool> {
        if beta.source != alpha.source {
            return Err(Error::Precondition("atoms with different sources are not comparable".into()));
        }
        self.check_chamber(beta.target)?;
        self.check_chamber(alpha.target)?;
        let sb = self.separation_set(beta.source, beta.target);
        let sa = self.separation_set(alpha.source, alpha.target);
        Ok(sb.is_subset(&sa))
    }

    /// `beta <= alpha` checked from the definition: some atom `gamma` with
    /// `alpha = gamma ∘ beta`, lengths measured as chamber-graph distances.
    pub fn atom_leq_by_factorization(&self, beta: &Atom, alpha: &Atom) -> Result<bool> {
        if beta.source != alpha.source {
            return Err(Error::Precondition("atoms with different sources are not comparable".into()));
        }
        let from_src = self.graph_distances(beta.source);
        let from_mid = self.graph_distances(beta.target);
        let len_beta = from_src[beta.target];
        let len_alpha = from_src[alpha.target];
        Ok(self.atoms_from(beta.target)?.iter().any(|gamma| {
            gamma.target == alpha.target && len_beta + from_mid[gamma.target] == len_alpha
        }))
    }

    /// Breadth-first distances from `c` in the chamber graph.
    pub fn graph_distances(&self, c: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.chambers.len()];
        dist[c] = 0;
        let mut queue = VecDeque::from([c]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn longest_atom(&self, c: usize) -> Result<Atom> {
        Ok(Atom { source: c, target: self.opposite_chamber(c)? })
    }

    /// Whether a gallery crosses no hyperplane twice.
    pub fn is_reduced(&self, path: &[usize]) -> Result<bool> {
        for &c in path {
            self.check_chamber(c)?;
        }
        for w in path.windows(2) {
            if !self.adjacency[w[0]].contains(&w[1]) {
                return Err(Error::Precondition(format!("chambers {} and {} are not adjacent", w[0], w[1])));
            }
        }
        match (path.first(), path.last()) {
            (Some(&a), Some(&b)) => Ok(path.len() - 1 == self.separation_set(a, b).len()),
            _ => Ok(true),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph chambers {\n");
        for (i, c) in self.chambers.iter().enumerate() {
            s.push_str(&format!("  c{} [label=\"{}\"];\n", i, c.sign_string()));
        }
        for &(i, j) in &self.edges {
            s.push_str(&format!("  c{i} -- c{j};\n"));
        }
        s.push_str("}\n");
        s
    }

    /// `{"chambers":[{"signs":"++-+","witness":["1/2","3"]}],"edges":[[0,1],...]}`
    pub fn graph_json(&self) -> serde_json::Value {
        serde_json::json!({
            "chambers": self.chambers.iter().map(|c| serde_json::json!({
                "signs": c.sign_string(),
                "witness": c.witness.iter().map(q_to_string).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|&(i, j)| vec![i, j]).collect::<Vec<_>>(),
        })
    }
}

fn enumerate_chambers(dimension: usize, hyperplanes: &[Hyperplane]) -> Vec<Chamber> {
    let mut partial: Vec<Vec<i8>> = vec![Vec::new()];
    for k in 0..hyperplanes.len() {
        let mut next = Vec::new();
        for signs in &partial {
            for s in [1i8, -1] {
                let mut trial = signs.clone();
                trial.push(s);
                if chamber_point(dimension, &hyperplanes[..=k], &trial).is_some() {
                    next.push(trial);
                }
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|signs| {
            let witness = chamber_point(dimension, hyperplanes, &signs).expect("feasible by construction");
            debug_assert!(hyperplanes
                .iter()
                .zip(&signs)
                .all(|(h, &s)| { (h.eval(&witness) * q(s as i64)).is_positive() }));
            Chamber { signs, witness }
        })
        .collect()
}

fn chamber_point(dimension: usize, hyperplanes: &[Hyperplane], signs: &[i8]) -> Option<Vec<Q>> {
    let cons: Vec<(Vec<Q>, Q)> = hyperplanes
        .iter()
        .zip(signs)
        .map(|(h, &s)| (h.normal.iter().map(|&a| q(a * s as i64)).collect(), Q::one()))
        .collect();
    if dimension == 0 {
        return if cons.is_empty() { Some(Vec::new()) } else { None };
    }
    fourier_motzkin_point(dimension, &cons)
}

/// Finds a rational point with `a · v >= b` for every `(a, b)` by
/// Fourier–Motzkin elimination, or `None` if the system is infeasible.
///
/// Strict homogeneous inequalities `a · v > 0` are passed as `a · v >= 1`.
pub fn fourier_motzkin_point(dimension: usize, constraints: &[(Vec<Q>, Q)]) -> Option<Vec<Q>> {
    // systems[k] involves only variables 0..k
    let mut systems: Vec<Vec<(Vec<Q>, Q)>> = vec![Vec::new(); dimension + 1];
    systems[dimension] = dedup(constraints.to_vec());
    for k in (1..=dimension).rev() {
        let var = k - 1;
        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in &systems[k] {
            if c.0[var].is_positive() {
                lower.push(c.clone());
            } else if c.0[var].is_negative() {
                upper.push(c.clone());
            } else {
                rest.push(c.clone());
            }
        }
        for (la, lb) in &lower {
            for (ua, ub) in &upper {
                // la[var] > 0, ua[var] < 0: combine to cancel var
                let s = -&ua[var];
                let t = la[var].clone();
                let a: Vec<Q> = la.iter().zip(ua).map(|(x, y)| x * &s + y * &t).collect();
                let b = lb * &s + ub * &t;
                rest.push((a, b));
            }
        }
        systems[k - 1] = dedup(rest);
    }
    if systems[0].iter().any(|(_, b)| b.is_positive()) {
        return None;
    }
    let mut point: Vec<Q> = Vec::with_capacity(dimension);
    for k in 1..=dimension {
        let var = k - 1;
        let mut lo: Option<Q> = None;
        let mut hi: Option<Q> = None;
        for (a, b) in &systems[k] {
            if a[var].is_zero() {
                continue;
            }
            let partial: Q = (0..var).map(|j| &a[j] * &point[j]).sum();
            let bound = (b - partial) / &a[var];
            if a[var].is_positive() {
                lo = Some(match lo {
                    Some(l) if l >= bound => l,
                    _ => bound,
                });
            } else {
                hi = Some(match hi {
                    Some(h) if h <= bound => h,
                    _ => bound,
                });
            }
        }
        let value = match (lo, hi) {
            (Some(l), Some(h)) => {
                debug_assert!(l <= h);
                (l + h) / q(2)
            }
            (Some(l), None) => l.ceil() + Q::one(),
            (None, Some(h)) => h.floor() - Q::one(),
            (None, None) => Q::zero(),
        };
        point.push(value);
    }
    Some(point)
}

/// Feasible point of `cons` restricted to the hyperplane `eq · v = 0`.
fn feasible_point_on_hyperplane(eq: &[Q], cons: &[(Vec<Q>, Q)]) -> Option<Vec<Q>> {
    let n = eq.len();
    let pivot = eq.iter().position(|x| !x.is_zero())?;
    // v[pivot] = -sum_{j != pivot} eq[j] v[j] / eq[pivot]
    let others: Vec<usize> = (0..n).filter(|&j| j != pivot).collect();
    let sub = |a: &[Q]| -> Vec<Q> {
        others.iter().map(|&j| &a[j] - &a[pivot] * &eq[j] / &eq[pivot]).collect()
    };
    let reduced: Vec<(Vec<Q>, Q)> = cons.iter().map(|(a, b)| (sub(a), b.clone())).collect();
    let pt = if others.is_empty() {
        if reduced.iter().any(|(_, b)| b.is_positive()) {
            return None;
        }
        Vec::new()
    } else {
        fourier_motzkin_point(others.len(), &reduced)?
    };
    let mut full = vec![Q::zero(); n];
    for (k, &j) in others.iter().enumerate() {
        full[j] = pt[k].clone();
    }
    let s: Q = others.iter().map(|&j| &eq[j] * &full[j]).sum();
    full[pivot] = -s / &eq[pivot];
    Some(full)
}

fn dedup(cons: Vec<(Vec<Q>, Q)>) -> Vec<(Vec<Q>, Q)> {
    let mut out: Vec<(Vec<Q>, Q)> = Vec::new();
    for (a, b) in cons {
        if a.iter().all(|x| x.is_zero()) {
            // keep only contradictions, trivially true rows are dropped
            if b.is_positive() {
                out.push((a, b));
            }
            continue;
        }
        // normalise so the leading nonzero coefficient has absolute value one
        let lead = a.iter().find(|x| !x.is_zero()).unwrap().abs();
        let a: Vec<Q> = a.iter().map(|x| x / &lead).collect();
        let b = b / &lead;
        if let Some(existing) = out.iter_mut().find(|(ea, _)| *ea == a) {
            if b > existing.1 {
                existing.1 = b;
            }
        } else {
            out.push((a, b));
        }
    }
    out
}
