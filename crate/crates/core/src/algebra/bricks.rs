//! Exhaustive brick enumeration over small prime fields.
//!
//! For each dimension vector below the bound, every tuple of arrow matrices
//! over `F_p` is tested against the relations and for `dim End = 1`. A brick
//! has automorphism group `F_p^x`, so the number of isomorphism classes is
//! `#bricks * (p - 1) / |prod GL_{d_v}(F_p)|`.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::quiver::QuiverAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Q;

/// Default ceiling on the number of matrix tuples examined.
pub const DEFAULT_BRICK_BUDGET: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrickClass {
    pub dims: Vec<usize>,
    /// Number of isomorphism classes of bricks with this dimension vector.
    pub classes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrickScan {
    pub field: u64,
    pub bound: Vec<usize>,
    pub tuples_checked: u64,
    pub bricks: Vec<BrickClass>,
}

impl BrickScan {
    pub fn dimension_vectors(&self) -> Vec<Vec<usize>> {
        self.bricks.iter().map(|b| b.dims.clone()).collect()
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| !p.is_multiple_of(k))
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let (mut base, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn reduce_mod(x: &Q, p: u64) -> Result<u64> {
    let num = x.numer().mod_floor(&(p as i64).into()).to_u64().unwrap_or(0);
    let den_big = x.denom().abs();
    let den = den_big.mod_floor(&(p as i64).into()).to_u64().unwrap_or(0);
    if den.is_zero() {
        return Err(Error::Precondition(format!("relation coefficient {x} is not defined over F_{p}")));
    }
    Ok(num * inv_mod(den, p) % p)
}

fn rank_mod(mut rows: Vec<Vec<u64>>, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, pr);
        let inv = inv_mod(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for k in 0..cols {
                    let sub = f * rows[rank][k] % p;
                    rows[r][k] = (rows[r][k] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gl_order(n: usize, p: u64) -> u128 {
    let pn = (p as u128).pow(n as u32);
    (0..n).map(|k| pn - (p as u128).pow(k as u32)).product()
}

struct Shape<'a> {
    alg: &'a QuiverAlgebra,
    dims: Vec<usize>,
    /// offset of each arrow matrix inside the flat entry vector
    offsets: Vec<usize>,
    relations: Vec<Vec<(u64, Vec<usize>)>>,
    p: u64,
}

impl Shape<'_> {
    fn matrix(&self, entries: &[u64], x: usize) -> (usize, usize, Vec<u64>) {
        let a = &self.alg.arrows()[x];
        let (r, c) = (self.dims[a.target], self.dims[a.source]);
        (r, c, entries[self.offsets[x]..self.offsets[x] + r * c].to_vec())
    }

    fn word(&self, entries: &[u64], source: usize, word: &[usize]) -> Vec<u64> {
        let n = self.dims[source];
        let mut acc: Vec<u64> = (0..n * n).map(|k| u64::from(k / n == k % n)).collect();
        let cols = n;
        let mut rows = n;
        for &x in word {
            let (r, c, m) = self.matrix(entries, x);
            debug_assert_eq!(c, rows);
            let mut next = vec![0u64; r * cols];
            for i in 0..r {
                for j in 0..cols {
                    let mut s = 0;
                    for k in 0..c {
                        s += m[i * c + k] * acc[k * cols + j];
                    }
                    next[i * cols + j] = s % self.p;
                }
            }
            acc = next;
            rows = r;
        }
        acc
    }

    fn satisfies_relations(&self, entries: &[u64]) -> bool {
        self.relations.iter().all(|terms| {
            let first = &terms[0].1;
            let s = self.alg.arrows()[first[0]].source;
            let mut acc: Option<Vec<u64>> = None;
            for (c, w) in terms {
                let m = self.word(entries, s, w);
                let scaled: Vec<u64> = m.iter().map(|x| x * c % self.p).collect();
                acc = Some(match acc {
                    None => scaled,
                    Some(a) => a.iter().zip(&scaled).map(|(x, y)| (x + y) % self.p).collect(),
                });
            }
            acc.is_none_or(|a| a.iter().all(|&x| x == 0))
        })
    }

    fn endomorphism_dim(&self, entries: &[u64]) -> usize {
        let nv = self.dims.len();
        let mut off = vec![0; nv + 1];
        for v in 0..nv {
            off[v + 1] = off[v] + self.dims[v] * self.dims[v];
        }
        let unknowns = off[nv];
        let idx = |v: usize, r: usize, c: usize| off[v] + r * self.dims[v] + c;
        let mut rows = Vec::new();
        for (x, a) in self.alg.arrows().iter().enumerate() {
            let (s, t) = (a.source, a.target);
            let (_, cm, m) = self.matrix(entries, x);
            for r in 0..self.dims[t] {
                for c in 0..self.dims[s] {
                    let mut row = vec![0u64; unknowns];
                    for k in 0..self.dims[s] {
                        row[idx(s, k, c)] = (row[idx(s, k, c)] + m[r * cm + k]) % self.p;
                    }
                    for k in 0..self.dims[t] {
                        let coef = m[k * cm + c];
                        row[idx(t, r, k)] = (row[idx(t, r, k)] + self.p - coef) % self.p;
                    }
                    rows.push(row);
                }
            }
        }
        unknowns - rank_mod(rows, unknowns, self.p)
    }
}

fn dimension_vectors(bound: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &b in bound {
        out = out.into_iter().flat_map(|v: Vec<usize>| (0..=b).map(move |d| {
            let mut w = v.clone();
            w.push(d);
            w
        })).collect();
    }
    out.retain(|v| v.iter().any(|&d| d > 0));
    out
}

impl QuiverAlgebra {
    /// Enumerates bricks with dimension vector at most `bound` over `F_p`.
    pub fn enumerate_bricks(&self, bound: &[usize], p: u64, budget: u64) -> Result<BrickScan> {
        if bound.len() != self.num_vertices() {
            return Err(Error::Precondition("bound must have one entry per vertex".into()));
        }
        if !is_prime(p) || p > 251 {
            return Err(Error::Precondition(format!("field size {p} must be a prime below 256")));
        }
        let relations: Vec<Vec<(u64, Vec<usize>)>> = self
            .relations()
            .iter()
            .map(|r| r.terms.iter().map(|(c, w)| Ok((reduce_mod(c, p)?, w.clone()))).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let vectors = dimension_vectors(bound);
        let mut total: u128 = 0;
        for dims in &vectors {
            let e: usize = self.arrows().iter().map(|a| dims[a.source] * dims[a.target]).sum();
            total = total.saturating_add((p as u128).checked_pow(e as u32).unwrap_or(u128::MAX));
            if total > budget as u128 {
                return Err(Error::Guard(format!(
                    "brick enumeration needs more than {budget} matrix tuples; lower the bound or raise the budget"
                )));
            }
        }
        let mut bricks = Vec::new();
        for dims in vectors {
            let mut offsets = Vec::new();
            let mut e = 0;
            for a in self.arrows() {
                offsets.push(e);
                e += dims[a.source] * dims[a.target];
            }
            let shape = Shape { alg: self, dims: dims.clone(), offsets, relations: relations.clone(), p };
            let count = count_bricks(&shape, e);
            if count == 0 {
                continue;
            }
            let group: u128 = dims.iter().map(|&d| gl_order(d, p)).product();
            let scaled = count as u128 * (p as u128 - 1);
            if !scaled.is_multiple_of(group) {
                return Err(Error::Internal(format!("brick count {count} is not a union of full orbits")));
            }
            bricks.push(BrickClass { dims, classes: (scaled / group) as u64 });
        }
        Ok(BrickScan { field: p, bound: bound.to_vec(), tuples_checked: total as u64, bricks })
    }
}

/// Counts brick tuples, sharding the tuple space across threads.
fn count_bricks(shape: &Shape<'_>, entries: usize) -> u64 {
    let p = shape.p;
    let total = p.pow(entries as u32);
    let workers = if total < 4096 {
        1
    } else {
        std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(8) as u64
    };
    let chunk = total.div_ceil(workers);
    let scan = |lo: u64, hi: u64| -> u64 {
        let mut found = 0;
        let mut digits = vec![0u64; entries];
        let mut rest = lo;
        for d in digits.iter_mut() {
            *d = rest % p;
            rest /= p;
        }
        for _ in lo..hi {
            if shape.satisfies_relations(&digits) && shape.endomorphism_dim(&digits) == 1 {
                found += 1;
            }
            for d in digits.iter_mut() {
                *d += 1;
                if *d < p {
                    break;
                }
                *d = 0;
            }
        }
        found
    };
    if workers == 1 {
        return scan(0, total);
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let (lo, hi) = (w * chunk, ((w + 1) * chunk).min(total));
                let scan = &scan;
                s.spawn(move || scan(lo, hi))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("brick worker panicked")).sum()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::DynkinSpec;

    fn pi(s: &str) -> QuiverAlgebra {
        QuiverAlgebra::preprojective(&s.parse::<DynkinSpec>().unwrap().diagram).unwrap()
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(1, 2), 1);
        assert_eq!(gl_order(2, 2), 6);
        assert_eq!(gl_order(2, 3), 48);
    }

    #[test]
    fn preprojective_a2_bricks() {
        let a2 = pi("A2");
        for p in [2, 3] {
            let scan = a2.enumerate_bricks(&[2, 2], p, DEFAULT_BRICK_BUDGET).unwrap();
            assert_eq!(scan.dimension_vectors(), vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
            let by_dim: Vec<u64> = scan.bricks.iter().map(|b| b.classes).collect();
            // S_2, S_1, and the two uniserials E and E'
            assert_eq!(by_dim, vec![1, 1, 2]);
        }
    }

    #[test]
    fn semisimple_point() {
        let a1 = pi("A1");
        let scan = a1.enumerate_bricks(&[3], 5, DEFAULT_BRICK_BUDGET).unwrap();
        assert_eq!(scan.dimension_vectors(), vec![vec![1]]);
    }

    #[test]
    fn budget_guard() {
        let a2 = pi("A2");
        let err = a2.enumerate_bricks(&[3, 3], 3, 1000).unwrap_err();
        assert!(matches!(err, Error::Guard(_)));
        assert!(a2.enumerate_bricks(&[1, 1], 4, 1000).is_err());
    }

    #[test]
    fn corner_bricks_are_primitive_restricted_roots() {
        let c = pi("A3").corner(&[1]).unwrap();
        let scan = c.enumerate_bricks(&[2, 2], 2, DEFAULT_BRICK_BUDGET).unwrap();
        assert_eq!(scan.dimension_vectors(), vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
