//! Finite-dimensional path algebras with relations, presented on a basis of
//! paths.
//!
//! Paths compose left to right: the word `a b` means "first `a`, then `b`", so
//! it is only defined when `target(a) = source(b)`. Representations are right
//! modules: an arrow `a: i -> j` acts by a matrix `M_i -> M_j` and the path
//! `a b` acts by `M(b) * M(a)`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::dynkin::DynkinDiagram;
use crate::error::{Error, Result};
use crate::linalg::{q, Mat, Q};

/// Hard cap on the number of paths considered while saturating the basis.
pub const DEFAULT_PATH_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A linear combination of parallel paths, each of length at least two.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub terms: Vec<(Q, Vec<usize>)>,
}

/// A path: start vertex plus arrow word (empty word = vertex idempotent).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

pub type Sparse = Vec<(usize, Q)>;

#[derive(Debug, Clone)]
pub struct QuiverAlgebra {
    vertex_labels: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
    basis: Vec<Path>,
    /// Normal forms of every path of length below `nil_length`.
    normal_forms: HashMap<Path, Sparse>,
    /// `between[s][t]`: basis elements that are paths from `s` to `t`.
    between: Vec<Vec<Vec<usize>>>,
    /// Position of each basis element inside its `between` list.
    position: Vec<usize>,
    /// Every path of this length vanishes.
    nil_length: usize,
}

impl QuiverAlgebra {
    pub fn new(vertex_labels: Vec<String>, arrows: Vec<Arrow>, relations: Vec<Relation>) -> Result<Self> {
        Self::with_cap(vertex_labels, arrows, relations, DEFAULT_PATH_CAP)
    }

    pub fn with_cap(
        vertex_labels: Vec<String>,
        arrows: Vec<Arrow>,
        relations: Vec<Relation>,
        cap: usize,
    ) -> Result<Self> {
        let nv = vertex_labels.len();
        if nv == 0 {
            return Err(Error::Precondition("quiver without vertices".into()));
        }
        for a in &arrows {
            if a.source >= nv || a.target >= nv {
                return Err(Error::Precondition(format!("arrow {} has an unknown endpoint", a.name)));
            }
        }
        let mut seen_names = std::collections::HashSet::new();
        for a in &arrows {
            if !seen_names.insert(a.name.as_str()) {
                return Err(Error::Parse(format!("duplicate arrow name {:?}", a.name)));
            }
        }
        for r in &relations {
            check_relation(&arrows, r)?;
        }
        let mut alg = QuiverAlgebra {
            vertex_labels,
            arrows,
            relations,
            basis: Vec::new(),
            normal_forms: HashMap::new(),
            between: Vec::new(),
            position: Vec::new(),
            nil_length: 0,
        };
        alg.saturate(cap)?;
        Ok(alg)
    }

    /// Finds the least `L` with `J^L ⊆ I + J^(L+1)` and builds the quotient
    /// of the paths of length `< L` by the image of the ideal.
    fn saturate(&mut self, cap: usize) -> Result<()> {
        let mut l = 1;
        loop {
            let paths = self.paths_up_to(l, cap)?;
            let ech = self.ideal_echelon(&paths, l);
            let top_vanishes = paths.iter().enumerate().filter(|(_, p)| p.arrows.len() == l).all(|(i, _)| {
                ech.rows.get(&i).is_some_and(|row| row.len() == 1)
            });
            if top_vanishes {
                break;
            }
            l += 1;
        }
        self.nil_length = l;
        let paths = self.paths_up_to(l - 1, cap)?;
        let ech = self.ideal_echelon(&paths, l - 1);
        let mut basis_index = HashMap::new();
        let mut basis = Vec::new();
        for (i, p) in paths.iter().enumerate() {
            if !ech.rows.contains_key(&i) {
                basis_index.insert(i, basis.len());
                basis.push(p.clone());
            }
        }
        // shortest paths first; idempotents lead
        let mut order: Vec<usize> = (0..basis.len()).collect();
        order.sort_by(|&a, &b| {
            let (pa, pb) = (&basis[a], &basis[b]);
            (pa.arrows.len(), pa.source, pa.target, &pa.arrows).cmp(&(pb.arrows.len(), pb.source, pb.target, &pb.arrows))
        });
        let mut renumber = vec![0; basis.len()];
        for (new, &old) in order.iter().enumerate() {
            renumber[old] = new;
        }
        let sorted_basis: Vec<Path> = order.iter().map(|&i| basis[i].clone()).collect();
        let mut normal_forms = HashMap::new();
        for (i, p) in paths.iter().enumerate() {
            let nf: Sparse = match ech.rows.get(&i) {
                None => vec![(renumber[basis_index[&i]], Q::one())],
                Some(row) => row
                    .iter()
                    .filter(|(c, _)| *c != i)
                    .map(|(c, x)| (renumber[basis_index[c]], -x.clone()))
                    .collect(),
            };
            normal_forms.insert(p.clone(), nf);
        }
        let nv = self.num_vertices();
        let mut between = vec![vec![Vec::new(); nv]; nv];
        let mut position = vec![0; sorted_basis.len()];
        for (i, p) in sorted_basis.iter().enumerate() {
            position[i] = between[p.source][p.target].len();
            between[p.source][p.target].push(i);
        }
        self.basis = sorted_basis;
        self.normal_forms = normal_forms;
        self.between = between;
        self.position = position;
        Ok(())
    }

    /// All paths of length at most `l`, longest first.
    fn paths_up_to(&self, l: usize, cap: usize) -> Result<Vec<Path>> {
        let nv = self.num_vertices();
        let mut layers: Vec<Vec<Path>> =
            vec![(0..nv).map(|v| Path { source: v, target: v, arrows: Vec::new() }).collect()];
        let mut total = nv;
        for _ in 0..l {
            let mut next = Vec::new();
            for p in layers.last().unwrap() {
                for (ai, a) in self.arrows.iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path { source: p.source, target: a.target, arrows });
                    }
                }
            }
            total += next.len();
            if total > cap {
                return Err(Error::Guard(format!(
                    "path basis saturation exceeded {cap} paths; the algebra may be infinite-dimensional"
                )));
            }
            layers.push(next);
        }
        Ok(layers.into_iter().rev().flatten().collect())
    }

    /// Reduced echelon basis of the ideal generated by the relations inside
    /// the span of paths of length `<= l`. Columns are indices into `paths`
    /// (longest first), so pivots are leading terms.
    fn ideal_echelon(&self, paths: &[Path], l: usize) -> Echelon {
        let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut ech = Echelon::default();
        for r in &self.relations {
            let (s, t) = self.relation_endpoints(r);
            let min_len = r.terms.iter().map(|(_, w)| w.len()).min().unwrap_or(0);
            for pre in paths.iter().filter(|p| p.target == s && p.arrows.len() + min_len <= l) {
                for post in paths.iter().filter(|p| p.source == t && pre.arrows.len() + min_len + p.arrows.len() <= l) {
                    let mut v: BTreeMap<usize, Q> = BTreeMap::new();
                    for (c, w) in &r.terms {
                        let len = pre.arrows.len() + w.len() + post.arrows.len();
                        if len > l {
                            continue;
                        }
                        let mut arrows = pre.arrows.clone();
                        arrows.extend(w);
                        arrows.extend(&post.arrows);
                        let p = Path { source: pre.source, target: post.target, arrows };
                        let idx = index[&p];
                        *v.entry(idx).or_insert_with(Q::zero) += c;
                    }
                    ech.insert(v.into_iter().filter(|(_, x)| !x.is_zero()).collect());
                }
            }
        }
        ech
    }

    fn relation_endpoints(&self, r: &Relation) -> (usize, usize) {
        let w = &r.terms[0].1;
        (self.arrows[w[0]].source, self.arrows[*w.last().unwrap()].target)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertex_labels.iter().position(|l| l == label)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    /// Basis elements that are paths from `s` to `t`, i.e. a basis of `e_s A e_t`.
    pub fn between(&self, s: usize, t: usize) -> &[usize] {
        &self.between[s][t]
    }

    /// Index of basis element `b` within `between(source, target)`.
    pub fn position_in_between(&self, b: usize) -> usize {
        self.position[b]
    }

    /// Length beyond which every path vanishes.
    pub fn nil_length(&self) -> usize {
        self.nil_length
    }

    pub fn path_label(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e{}", self.vertex_labels[p.source])
        } else {
            p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("")
        }
    }

    /// Normal form of a path in the basis.
    pub fn normal_form(&self, p: &Path) -> Sparse {
        if p.arrows.len() >= self.nil_length {
            return Vec::new();
        }
        self.normal_forms.get(p).cloned().unwrap_or_default()
    }

    /// Product of two basis elements.
    pub fn mul_basis(&self, a: usize, b: usize) -> Sparse {
        let (pa, pb) = (&self.basis[a], &self.basis[b]);
        if pa.target != pb.source {
            return Vec::new();
        }
        let mut arrows = pa.arrows.clone();
        arrows.extend(&pb.arrows);
        self.normal_form(&Path { source: pa.source, target: pb.target, arrows })
    }

    /// Product of two elements given in basis coordinates.
    pub fn mul(&self, x: &Sparse, y: &Sparse) -> Sparse {
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for (a, ca) in x {
            for (b, cb) in y {
                for (c, cc) in self.mul_basis(*a, *b) {
                    *acc.entry(c).or_insert_with(Q::zero) += ca * cb * cc;
                }
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.between[v][v][0]
    }

    /// Preprojective algebra of a Dynkin diagram. Each edge `(u, v)` of the
    /// diagram (u < v) gives arrows `x: u -> v` and `x*: v -> u`, named
    /// `a, b, c, ...` in edge order. The relation at vertex `w` is
    /// `sum_{x: w -> .} x x* - sum_{x: . -> w} x* x`.
    pub fn preprojective(d: &DynkinDiagram) -> Result<Self> {
        let n = d.rank();
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let mut arrows = Vec::new();
        for (k, (u, v)) in d.edges().into_iter().enumerate() {
            let name = ((b'a' + k as u8) as char).to_string();
            arrows.push(Arrow { name: name.clone(), source: u, target: v });
            arrows.push(Arrow { name: format!("{name}*"), source: v, target: u });
        }
        let mut relations = Vec::new();
        for w in 0..n {
            let mut terms = Vec::new();
            for k in (0..arrows.len()).step_by(2) {
                let (x, xs) = (k, k + 1);
                if arrows[x].source == w {
                    terms.push((q(1), vec![x, xs]));
                }
                if arrows[x].target == w {
                    terms.push((q(-1), vec![xs, x]));
                }
            }
            if !terms.is_empty() {
                relations.push(Relation { terms });
            }
        }
        QuiverAlgebra::new(labels, arrows, relations)
    }

    /// Path algebra of the linearly oriented `A_n` quiver `1 -> 2 -> ... -> n`.
    pub fn linear_a(n: usize) -> Result<Self> {
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (0..n.saturating_sub(1))
            .map(|i| Arrow { name: ((b'a' + i as u8) as char).to_string(), source: i, target: i + 1 })
            .collect();
        QuiverAlgebra::new(labels, arrows, Vec::new())
    }

    /// The idempotent truncation `e A e` with `e` the sum of the vertex
    /// idempotents outside `contracted`, presented by a quiver with relations
    /// on the remaining vertices.
    pub fn corner(&self, contracted: &[usize]) -> Result<Self> {
        let nv = self.num_vertices();
        if contracted.iter().any(|&i| i >= nv) {
            return Err(Error::Precondition("contracted vertex out of range".into()));
        }
        let kept: Vec<usize> = (0..nv).filter(|v| !contracted.contains(v)).collect();
        if kept.is_empty() {
            return Err(Error::Precondition("cannot contract every vertex".into()));
        }
        if kept.len() == nv {
            return Ok(self.clone());
        }
        let dim_corner: usize = kept.iter().map(|&s| kept.iter().map(|&t| self.between(s, t).len()).sum::<usize>()).sum();
        // new arrows: basis of rad B / rad^2 B for each pair of kept vertices
        let rad: Vec<usize> = (0..self.dim())
            .filter(|&b| {
                let p = &self.basis[b];
                !p.arrows.is_empty() && kept.contains(&p.source) && kept.contains(&p.target)
            })
            .collect();
        let mut new_arrows: Vec<Arrow> = Vec::new();
        let mut arrow_elems: Vec<usize> = Vec::new();
        for (si, &s) in kept.iter().enumerate() {
            for (ti, &t) in kept.iter().enumerate() {
                let here = self.between(s, t);
                let mut sq: Vec<Vec<Q>> = Vec::new();
                for &x in rad.iter().filter(|&&x| self.basis[x].source == s) {
                    for &y in rad.iter().filter(|&&y| self.basis[y].target == t && self.basis[y].source == self.basis[x].target) {
                        let prod = self.mul_basis(x, y);
                        if prod.is_empty() {
                            continue;
                        }
                        let mut v = vec![Q::zero(); here.len()];
                        for (c, coef) in prod {
                            v[self.position[c]] = coef;
                        }
                        sq.push(v);
                    }
                }
                let mut span = Mat::from_columns(here.len(), &sq).column_basis();
                for &b in here.iter().filter(|b| rad.contains(b)) {
                    let mut e = Mat::zeros(here.len(), 1);
                    e.set(self.position[b], 0, Q::one());
                    let trial = span.hstack(&e);
                    if trial.rank() > span.cols() {
                        span = trial;
                        new_arrows.push(Arrow {
                            name: format!("[{}]", self.path_label(&self.basis[b])),
                            source: si,
                            target: ti,
                        });
                        arrow_elems.push(b);
                    }
                }
            }
        }
        // relations: kernel of the evaluation map on words of length >= 2
        let mut words: Vec<Vec<usize>> = (0..new_arrows.len()).map(|a| vec![a]).collect();
        let mut all_words: Vec<(Vec<usize>, Sparse)> = Vec::new();
        loop {
            let mut next = Vec::new();
            let mut any_nonzero = false;
            for w in &words {
                let last = new_arrows[*w.last().unwrap()].target;
                for (a, arr) in new_arrows.iter().enumerate() {
                    if arr.source != last {
                        continue;
                    }
                    let mut w2 = w.clone();
                    w2.push(a);
                    let val = self.evaluate_word(&w2, &arrow_elems);
                    any_nonzero |= !val.is_empty();
                    all_words.push((w2.clone(), val));
                    next.push(w2);
                }
            }
            if !any_nonzero || next.is_empty() {
                break;
            }
            if all_words.len() > DEFAULT_PATH_CAP {
                return Err(Error::Guard("corner presentation exceeded the path cap".into()));
            }
            words = next;
        }
        let mut relations = Vec::new();
        for si in 0..kept.len() {
            for ti in 0..kept.len() {
                let group: Vec<&(Vec<usize>, Sparse)> = all_words
                    .iter()
                    .filter(|(w, _)| new_arrows[w[0]].source == si && new_arrows[*w.last().unwrap()].target == ti)
                    .collect();
                if group.is_empty() {
                    continue;
                }
                let here = self.between(kept[si], kept[ti]);
                let mut m = Mat::zeros(here.len(), group.len());
                for (j, (_, val)) in group.iter().enumerate() {
                    for (c, coef) in val {
                        m.set(self.position[*c], j, coef.clone());
                    }
                }
                let k = m.kernel();
                for col in 0..k.cols() {
                    let terms: Vec<(Q, Vec<usize>)> = (0..group.len())
                        .filter(|&j| !k.get(j, col).is_zero())
                        .map(|j| (k.get(j, col).clone(), group[j].0.clone()))
                        .collect();
                    relations.push(Relation { terms });
                }
            }
        }
        let labels = kept.iter().map(|&v| self.vertex_labels[v].clone()).collect();
        let out = QuiverAlgebra::new(labels, new_arrows, relations)?;
        if out.dim() != dim_corner {
            return Err(Error::Internal(format!(
                "corner presentation has dimension {} but the corner has dimension {}",
                out.dim(),
                dim_corner
            )));
        }
        Ok(out)
    }

    fn evaluate_word(&self, word: &[usize], arrow_elems: &[usize]) -> Sparse {
        let mut acc: Sparse = vec![(arrow_elems[word[0]], Q::one())];
        for &a in &word[1..] {
            acc = self.mul(&acc, &vec![(arrow_elems[a], Q::one())]);
            if acc.is_empty() {
                break;
            }
        }
        acc
    }
}

fn check_relation(arrows: &[Arrow], r: &Relation) -> Result<()> {
    if r.terms.is_empty() {
        return Err(Error::Precondition("empty relation".into()));
    }
    let mut ends = None;
    for (_, w) in &r.terms {
        if w.len() < 2 {
            return Err(Error::Precondition("relations must lie in the square of the arrow ideal".into()));
        }
        if w.iter().any(|&a| a >= arrows.len()) {
            return Err(Error::Parse("relation uses an unknown arrow".into()));
        }
        for pair in w.windows(2) {
            if arrows[pair[0]].target != arrows[pair[1]].source {
                return Err(Error::Precondition("relation contains a non-composable word".into()));
            }
        }
        let e = (arrows[w[0]].source, arrows[*w.last().unwrap()].target);
        match ends {
            None => ends = Some(e),
            Some(prev) if prev != e => {
                return Err(Error::Precondition("relation terms are not parallel".into()));
            }
            _ => {}
        }
    }
    Ok(())
}

/// Incremental fully reduced row echelon form over sparse rows.
#[derive(Default)]
struct Echelon {
    /// pivot column -> row (sorted by column, pivot coefficient 1)
    rows: BTreeMap<usize, Vec<(usize, Q)>>,
}

impl Echelon {
    fn insert(&mut self, v: Vec<(usize, Q)>) {
        let mut v: BTreeMap<usize, Q> = v.into_iter().collect();
        // reduce against existing pivots
        loop {
            let hit = v.keys().find(|c| self.rows.contains_key(c)).copied();
            let Some(c) = hit else { break };
            let factor = v[&c].clone();
            for (col, x) in &self.rows[&c] {
                let e = v.entry(*col).or_insert_with(Q::zero);
                *e -= &factor * x;
                if e.is_zero() {
                    v.remove(col);
                }
            }
        }
        let Some((&pivot, lead)) = v.iter().next() else { return };
        let inv = lead.recip();
        let row: Vec<(usize, Q)> = v.iter().map(|(c, x)| (*c, x * &inv)).collect();
        // eliminate the new pivot from existing rows
        for existing in self.rows.values_mut() {
            if let Some(pos) = existing.iter().position(|(c, _)| *c == pivot) {
                let factor = existing[pos].1.clone();
                let mut merged: BTreeMap<usize, Q> = existing.drain(..).collect();
                for (c, x) in &row {
                    let e = merged.entry(*c).or_insert_with(Q::zero);
                    *e -= &factor * x;
                }
                *existing = merged.into_iter().filter(|(_, x)| !x.is_zero()).collect();
            }
        }
        self.rows.insert(pivot, row);
    }
}
