//! Simply-laced root systems, simple reflections and restriction of roots
//! along a set of contracted nodes.
//!
//! Node numbering (1-based, as used on the command line):
//!
//! ```text
//! A_n:  1 - 2 - 3 - ... - n
//!
//! D_n:  1 - 2 - 4 - 5 - ... - n
//!           |
//!           3
//!
//! E_n:  1 - 3 - 4 - 5 - ... - n
//!               |
//!               2
//! ```
//!
//! For `D_n` the branch node is 2, its two short legs are 1 and 3 and the long
//! leg runs 4..n. With this numbering `D5:I=1,3,5` restricts to
//! `{10, 01, 11, 21, 22}` and `D4:I=3,4` to `{10, 01, 11, 12}`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DynkinDiagram {
    family: Family,
    rank: usize,
}

impl fmt::Display for DynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.family {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        };
        write!(f, "{}{}", c, self.rank)
    }
}

/// A root written in the basis of simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }
}

/// Image of a positive root after deleting the coordinates in `I`, together
/// with one positive root mapping onto it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RestrictedRoot {
    pub coords: Vec<i64>,
    pub witness: Root,
}

impl RestrictedRoot {
    /// Compact label such as `21`, or `2,1` if a coordinate exceeds 9.
    pub fn label(&self) -> String {
        if self.coords.iter().all(|&c| (0..10).contains(&c)) {
            self.coords.iter().map(|c| c.to_string()).collect()
        } else {
            self.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        }
    }
}

/// Square integer matrix acting on root coordinates (column vectors).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionMatrix(pub Vec<Vec<i64>>);

impl ReflectionMatrix {
    pub fn identity(n: usize) -> Self {
        ReflectionMatrix((0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect())
    }

    pub fn mul(&self, other: &ReflectionMatrix) -> ReflectionMatrix {
        let n = self.0.len();
        let mut out = vec![vec![0; n]; n];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = (0..n).map(|k| self.0[i][k] * other.0[k][j]).sum();
            }
        }
        ReflectionMatrix(out)
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.0.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }
}

impl DynkinDiagram {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(Error::Precondition(format!("no Dynkin diagram of type {family:?}{rank}")));
        }
        Ok(DynkinDiagram { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Edges as 0-based node pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A => (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
            Family::D => {
                let mut e = vec![(0, 1), (1, 2), (1, 3)];
                e.extend((3..n - 1).map(|i| (i, i + 1)));
                e
            }
            Family::E => {
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.edges().iter().any(|&(a, b)| (a, b) == (i, j) || (a, b) == (j, i))
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut c = vec![vec![0; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in self.edges() {
            c[a][b] = -1;
            c[b][a] = -1;
        }
        c
    }

    fn check_node(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank {
            Err(Error::Precondition(format!("node {i} out of range 1..={}", self.rank)))
        } else {
            Ok(())
        }
    }

    /// Simple reflection `s_i(v) = v - <v, alpha_i> alpha_i`; `i` is 1-based.
    pub fn reflect(&self, i: usize, v: &[i64]) -> Result<Vec<i64>> {
        self.check_node(i)?;
        if v.len() != self.rank {
            return Err(Error::Precondition(format!("vector of length {} for rank {}", v.len(), self.rank)));
        }
        let c = self.cartan_matrix();
        let k = i - 1;
        let pairing: i64 = v.iter().zip(&c).map(|(x, row)| x * row[k]).sum();
        let mut out = v.to_vec();
        out[k] -= pairing;
        Ok(out)
    }

    pub fn reflection_matrix(&self, i: usize) -> Result<ReflectionMatrix> {
        self.check_node(i)?;
        let n = self.rank;
        let cols: Vec<Vec<i64>> = (0..n)
            .map(|j| {
                let mut e = vec![0; n];
                e[j] = 1;
                self.reflect(i, &e)
            })
            .collect::<Result<_>>()?;
        Ok(ReflectionMatrix((0..n).map(|r| (0..n).map(|c| cols[c][r]).collect()).collect()))
    }

    /// Checks the braid relation between `s_i` and `s_j` on matrices.
    pub fn braid_check(&self, i: usize, j: usize) -> Result<bool> {
        let si = self.reflection_matrix(i)?;
        let sj = self.reflection_matrix(j)?;
        if i == j {
            return Ok(si.mul(&si) == ReflectionMatrix::identity(self.rank));
        }
        let m = if self.adjacent(i - 1, j - 1) { 3 } else { 2 };
        let word = |a: &ReflectionMatrix, b: &ReflectionMatrix| {
            let mut acc = ReflectionMatrix::identity(self.rank);
            for k in 0..m {
                acc = acc.mul(if k % 2 == 0 { a } else { b });
            }
            acc
        };
        Ok(word(&si, &sj) == word(&sj, &si))
    }

    /// All positive roots, by closure of the simple roots under reflections.
    /// Sorted by height, then lexicographically.
    pub fn positive_roots(&self) -> Vec<Root> {
        let n = self.rank;
        let simple: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        let mut seen: HashSet<Vec<i64>> = simple.iter().cloned().collect();
        let mut frontier = simple;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for v in &frontier {
                for i in 1..=n {
                    let w = self.reflect(i, v).expect("node in range");
                    if w.iter().all(|&x| x >= 0) && w.iter().any(|&x| x > 0) && seen.insert(w.clone()) {
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        let mut roots: Vec<Root> = seen.into_iter().map(Root).collect();
        roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
        roots
    }

    /// Nonzero images of positive roots after deleting the coordinates in
    /// `contracted` (1-based node indices).
    pub fn restrict_roots(&self, contracted: &[usize]) -> Result<Vec<RestrictedRoot>> {
        for &i in contracted {
            self.check_node(i)?;
        }
        let kept: Vec<usize> = (1..=self.rank).filter(|i| !contracted.contains(i)).collect();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for root in self.positive_roots() {
            let coords: Vec<i64> = kept.iter().map(|&i| root.0[i - 1]).collect();
            if coords.iter().all(|&c| c == 0) {
                continue;
            }
            if seen.insert(coords.clone()) {
                out.push(RestrictedRoot { coords, witness: root });
            }
        }
        out.sort_by(|a, b| {
            let ha: i64 = a.coords.iter().sum();
            let hb: i64 = b.coords.iter().sum();
            ha.cmp(&hb).then_with(|| b.coords.cmp(&a.coords))
        });
        Ok(out)
    }
}

/// Restricted roots that are not an integer multiple (factor at least 2) of
/// another member of `roots`.
pub fn primitive_restricted_roots(roots: &[RestrictedRoot]) -> Vec<RestrictedRoot> {
    roots
        .iter()
        .filter(|r| !roots.iter().any(|s| s.coords != r.coords && proper_multiple(&r.coords, &s.coords)))
        .cloned()
        .collect()
}

/// True when `big = k * small` for an integer `k >= 2`.
fn proper_multiple(big: &[i64], small: &[i64]) -> bool {
    let Some(pos) = small.iter().position(|&x| x != 0) else {
        return false;
    };
    if big[pos] % small[pos] != 0 {
        return false;
    }
    let k = big[pos] / small[pos];
    k >= 2 && big.iter().zip(small).all(|(b, s)| *b == k * s)
}

/// Parsed `FAMILY RANK [":I=" list]` string such as `D5:I=1,3,5` or `A2:I=`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinSpec {
    pub diagram: DynkinDiagram,
    pub contracted: Vec<usize>,
}

impl std::str::FromStr for DynkinSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, tail) = match s.split_once(':') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        let mut chars = head.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(Error::Parse(format!("unknown Dynkin family in {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad Dynkin rank in {s:?}")))?;
        let diagram = DynkinDiagram::new(family, rank)?;
        let mut contracted = BTreeSet::new();
        if let Some(t) = tail {
            let list = t
                .strip_prefix("I=")
                .ok_or_else(|| Error::Parse(format!("expected ':I=' in {s:?}")))?;
            for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let i: usize = part.parse().map_err(|_| Error::Parse(format!("bad node {part:?}")))?;
                diagram.check_node(i)?;
                contracted.insert(i);
            }
        }
        Ok(DynkinSpec { diagram, contracted: contracted.into_iter().collect() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> DynkinDiagram {
        s.parse::<DynkinSpec>().unwrap().diagram
    }

    fn labels(rs: &[RestrictedRoot]) -> BTreeSet<String> {
        rs.iter().map(|r| r.label()).collect()
    }

    fn set(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(d("A2").cartan_matrix(), vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(d("A1").cartan_matrix(), vec![vec![2]]);
        let c = d("D4").cartan_matrix();
        for j in [0, 2, 3] {
            assert_eq!(c[1][j], -1);
            assert_eq!(c[j][1], -1);
        }
        assert_eq!(c[0][2], 0);
        assert_eq!(c[2][3], 0);
    }

    #[test]
    fn root_counts() {
        for n in 1..=6 {
            assert_eq!(DynkinDiagram::new(Family::A, n).unwrap().positive_roots().len(), n * (n + 1) / 2);
        }
        for n in 4..=6 {
            assert_eq!(DynkinDiagram::new(Family::D, n).unwrap().positive_roots().len(), n * (n - 1));
        }
        assert_eq!(d("E6").positive_roots().len(), 36);
        assert_eq!(d("E7").positive_roots().len(), 63);
        assert_eq!(d("E8").positive_roots().len(), 120);
        let a2: Vec<Vec<i64>> = d("A2").positive_roots().into_iter().map(|r| r.0).collect();
        assert_eq!(a2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn reflection_examples() {
        let a2 = d("A2");
        assert_eq!(a2.reflect(1, &[1, 0]).unwrap(), vec![-1, 0]);
        assert_eq!(a2.reflect(1, &[0, 1]).unwrap(), vec![1, 1]);
        assert_eq!(a2.reflect(2, &[0, 0]).unwrap(), vec![0, 0]);
        assert!(a2.reflect(3, &[0, 0]).is_err());
    }

    #[test]
    fn reflections_are_involutions_on_roots() {
        for name in ["A3", "D4", "D5", "E6"] {
            let dd = d(name);
            for r in dd.positive_roots() {
                for i in 1..=dd.rank() {
                    let once = dd.reflect(i, &r.0).unwrap();
                    assert_eq!(dd.reflect(i, &once).unwrap(), r.0);
                }
            }
        }
    }

    #[test]
    fn braid_relations_hold() {
        for name in ["A2", "A3", "D4", "D5", "E6"] {
            let dd = d(name);
            for i in 1..=dd.rank() {
                for j in 1..=dd.rank() {
                    if i != j {
                        assert!(dd.braid_check(i, j).unwrap(), "{name} {i} {j}");
                    }
                }
            }
        }
    }

    #[test]
    fn restriction_fixtures() {
        let s: DynkinSpec = "D5:I=1,3,5".parse().unwrap();
        let rs = s.diagram.restrict_roots(&s.contracted).unwrap();
        assert_eq!(labels(&rs), set(&["10", "01", "11", "21", "22"]));
        assert_eq!(labels(&primitive_restricted_roots(&rs)), set(&["10", "01", "11", "21"]));

        let s: DynkinSpec = "D4:I=3,4".parse().unwrap();
        let rs = s.diagram.restrict_roots(&s.contracted).unwrap();
        assert_eq!(labels(&rs), set(&["10", "11", "12", "01"]));

        let s: DynkinSpec = "A2:I=".parse().unwrap();
        assert!(s.contracted.is_empty());
        let rs = s.diagram.restrict_roots(&s.contracted).unwrap();
        assert_eq!(labels(&rs), set(&["10", "01", "11"]));
    }

    #[test]
    fn restricted_roots_keep_witnesses() {
        let s: DynkinSpec = "E7:I=2,4,6".parse().unwrap();
        let kept: Vec<usize> = (1..=7).filter(|i| !s.contracted.contains(i)).collect();
        for r in s.diagram.restrict_roots(&s.contracted).unwrap() {
            let image: Vec<i64> = kept.iter().map(|&i| r.witness.0[i - 1]).collect();
            assert_eq!(image, r.coords);
        }
    }

    #[test]
    fn primitive_examples() {
        let mk = |v: &[&[i64]]| -> Vec<RestrictedRoot> {
            v.iter().map(|c| RestrictedRoot { coords: c.to_vec(), witness: Root(vec![]) }).collect()
        };
        assert_eq!(labels(&primitive_restricted_roots(&mk(&[&[1, 0], &[0, 1], &[1, 1]]))), set(&["10", "01", "11"]));
        assert_eq!(labels(&primitive_restricted_roots(&mk(&[&[1, 0], &[2, 0], &[0, 1]]))), set(&["10", "01"]));
        let p = primitive_restricted_roots(&mk(&[&[1, 0], &[0, 1], &[1, 1], &[2, 1], &[2, 2]]));
        assert_eq!(primitive_restricted_roots(&p), p);
    }

    #[test]
    fn parse_errors() {
        assert!("X3".parse::<DynkinSpec>().is_err());
        assert!("D3".parse::<DynkinSpec>().is_err());
        assert!("E9".parse::<DynkinSpec>().is_err());
        assert!("A3:J=1".parse::<DynkinSpec>().is_err());
        assert!("A3:I=4".parse::<DynkinSpec>().is_err());
    }
}
