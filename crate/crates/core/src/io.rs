//! JSON file formats for algebras, modules, complexes and collections.
//!
//! Rational numbers are strings such as `"-3/2"`. Vertices are referred to by
//! label, and collection indices in mutation paths are 1-based.

use std::collections::BTreeMap;
use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{Arrow, Module, ModuleMap, QuiverAlgebra, Relation};
use crate::derived::Complex;
use crate::dynkin::DynkinSpec;
use crate::error::{Error, Result};
use crate::linalg::{q_parse, q_to_string, Mat};
use crate::smc::{Direction, MutationPath, Smc};

pub const CONVENTION: &str = "left-to-right";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub vertices: Vec<Value>,
    pub arrows: Vec<ArrowFile>,
    #[serde(default)]
    pub relations: Vec<Vec<TermFile>>,
    #[serde(default = "default_convention")]
    pub convention: String,
}

fn default_convention() -> String {
    CONVENTION.to_string()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrowFile {
    pub name: String,
    pub from: Value,
    pub to: Value,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermFile {
    pub coeff: String,
    pub path: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleFile {
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub arrows: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexFile {
    pub terms: BTreeMap<String, ModuleFile>,
    #[serde(default)]
    pub differentials: BTreeMap<String, BTreeMap<String, Vec<Vec<String>>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SmcFile {
    pub elements: Vec<ComplexFile>,
    #[serde(default)]
    pub provenance: ProvenanceFile,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ProvenanceFile {
    #[serde(default)]
    pub path: Vec<(usize, String)>,
    #[serde(default)]
    pub shift: i64,
}

fn label_of(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Parse(format!("vertex label must be a string or number, got {other}"))),
    }
}

fn parse_matrix(rows: usize, cols: usize, data: &[Vec<String>], what: &str) -> Result<Mat> {
    if data.is_empty() && (rows == 0 || cols == 0) {
        return Ok(Mat::zeros(rows, cols));
    }
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse(format!("{what}: expected a {rows}x{cols} matrix")));
    }
    let entries = data
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| q_parse(s).ok_or_else(|| Error::Parse(format!("{what}: bad rational {s:?}"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Mat::from_rows(rows, cols, entries))
}

fn matrix_rows(m: &Mat) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(q_to_string).collect()).collect()
}

impl AlgebraFile {
    pub fn build(&self) -> Result<QuiverAlgebra> {
        if self.convention != CONVENTION {
            return Err(Error::Parse(format!(
                "unsupported path convention {:?}; only {CONVENTION:?} is supported",
                self.convention
            )));
        }
        let labels = self.vertices.iter().map(label_of).collect::<Result<Vec<_>>>()?;
        let index = |v: &Value| -> Result<usize> {
            let l = label_of(v)?;
            labels.iter().position(|x| *x == l).ok_or_else(|| Error::Parse(format!("unknown vertex {l:?}")))
        };
        let arrows = self
            .arrows
            .iter()
            .map(|a| Ok(Arrow { name: a.name.clone(), source: index(&a.from)?, target: index(&a.to)? }))
            .collect::<Result<Vec<_>>>()?;
        let arrow_idx = |n: &str| {
            arrows.iter().position(|a| a.name == n).ok_or_else(|| Error::Parse(format!("unknown arrow {n:?}")))
        };
        let relations = self
            .relations
            .iter()
            .map(|terms| {
                let terms = terms
                    .iter()
                    .map(|t| {
                        let c = q_parse(&t.coeff).ok_or_else(|| Error::Parse(format!("bad coefficient {:?}", t.coeff)))?;
                        let word = t.path.iter().map(|n| arrow_idx(n)).collect::<Result<Vec<_>>>()?;
                        Ok((c, word))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Relation { terms })
            })
            .collect::<Result<Vec<_>>>()?;
        QuiverAlgebra::new(labels, arrows, relations)
    }

    pub fn from_algebra(alg: &QuiverAlgebra) -> Self {
        let labels = alg.vertex_labels();
        AlgebraFile {
            vertices: labels.iter().map(|l| Value::String(l.clone())).collect(),
            arrows: alg
                .arrows()
                .iter()
                .map(|a| ArrowFile {
                    name: a.name.clone(),
                    from: Value::String(labels[a.source].clone()),
                    to: Value::String(labels[a.target].clone()),
                })
                .collect(),
            relations: alg
                .relations()
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, w)| TermFile {
                            coeff: q_to_string(c),
                            path: w.iter().map(|&k| alg.arrows()[k].name.clone()).collect(),
                        })
                        .collect()
                })
                .collect(),
            convention: CONVENTION.to_string(),
        }
    }
}

impl ModuleFile {
    pub fn build(&self, alg: &QuiverAlgebra) -> Result<Module> {
        let mut dims = vec![0; alg.num_vertices()];
        for (l, &d) in &self.dims {
            let v = alg.vertex_index(l).ok_or_else(|| Error::Parse(format!("unknown vertex {l:?}")))?;
            dims[v] = d;
        }
        let mut m = Module::with_dims(alg, dims);
        for (name, data) in &self.arrows {
            let k = alg.arrow_index(name).ok_or_else(|| Error::Parse(format!("unknown arrow {name:?}")))?;
            let a = &alg.arrows()[k];
            m.arrows[k] = parse_matrix(m.dims[a.target], m.dims[a.source], data, &format!("arrow {name}"))?;
        }
        alg.check_module(&m)?;
        Ok(m)
    }

    pub fn from_module(alg: &QuiverAlgebra, m: &Module) -> Self {
        let labels = alg.vertex_labels();
        ModuleFile {
            dims: labels.iter().cloned().zip(m.dims.iter().copied()).collect(),
            arrows: alg.arrows().iter().zip(&m.arrows).map(|(a, mat)| (a.name.clone(), matrix_rows(mat))).collect(),
        }
    }
}

fn parse_degree(s: &str) -> Result<i64> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad degree {s:?}")))
}

impl ComplexFile {
    pub fn build(&self, alg: &QuiverAlgebra) -> Result<Complex> {
        let mut terms = BTreeMap::new();
        for (k, m) in &self.terms {
            terms.insert(parse_degree(k)?, m.build(alg)?);
        }
        let Some((&lo, _)) = terms.iter().next() else { return Ok(Complex::zero()) };
        let hi = *terms.keys().next_back().unwrap();
        let mut diffs_in = BTreeMap::new();
        for (k, per_vertex) in &self.differentials {
            diffs_in.insert(parse_degree(k)?, per_vertex);
        }
        if let Some((&k, _)) = diffs_in.iter().find(|(&k, _)| k < lo || k >= hi) {
            return Err(Error::Parse(format!("differential in degree {k} has no nonzero target or source term")));
        }
        let module = |k: i64| terms.get(&k).cloned().unwrap_or_else(|| Module::zero(alg));
        let mods: Vec<Module> = (lo..=hi).map(module).collect();
        let mut diffs = Vec::new();
        for k in lo..hi {
            let (s, t) = (&mods[(k - lo) as usize], &mods[(k - lo + 1) as usize]);
            let mut f = ModuleMap::zero(s, t);
            if let Some(per_vertex) = diffs_in.get(&k) {
                for (l, data) in per_vertex.iter() {
                    let v = alg.vertex_index(l).ok_or_else(|| Error::Parse(format!("unknown vertex {l:?}")))?;
                    f.mats[v] = parse_matrix(t.dims[v], s.dims[v], data, &format!("differential {k} at vertex {l}"))?;
                }
            }
            diffs.push(f);
        }
        Complex::new(alg, lo, mods, diffs)
    }

    pub fn from_complex(alg: &QuiverAlgebra, x: &Complex) -> Self {
        let labels = alg.vertex_labels();
        let mut terms = BTreeMap::new();
        let mut differentials = BTreeMap::new();
        if !x.is_zero() {
            for k in x.lo()..=x.hi() {
                let m = x.term(alg, k);
                if !m.is_zero() {
                    terms.insert(k.to_string(), ModuleFile::from_module(alg, &m));
                }
                if k < x.hi() {
                    let d = x.diff(alg, k);
                    if !d.is_zero() {
                        differentials.insert(
                            k.to_string(),
                            labels.iter().cloned().zip(d.mats.iter().map(matrix_rows)).collect(),
                        );
                    }
                }
            }
        }
        ComplexFile { terms, differentials }
    }
}

impl SmcFile {
    pub fn build(&self, alg: &QuiverAlgebra) -> Result<Smc> {
        let elements = self.elements.iter().map(|c| c.build(alg)).collect::<Result<Vec<_>>>()?;
        let steps = self
            .provenance
            .path
            .iter()
            .map(|(i, d)| {
                if *i == 0 {
                    return Err(Error::Parse("mutation indices are 1-based".into()));
                }
                Ok((i - 1, d.parse::<Direction>()?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Smc { elements, provenance: MutationPath { steps, shift: self.provenance.shift } })
    }

    pub fn from_smc(alg: &QuiverAlgebra, u: &Smc) -> Self {
        SmcFile {
            elements: u.elements.iter().map(|y| ComplexFile::from_complex(alg, y)).collect(),
            provenance: ProvenanceFile {
                path: u.provenance.steps.iter().map(|(i, d)| (i + 1, d.letter().to_string())).collect(),
                shift: u.provenance.shift,
            },
        }
    }
}

/// Resolves an algebra argument: a JSON file, or one of the built-in
/// presentations `pi:<dynkin>` (preprojective algebra, with `:I=...`
/// giving the corner algebra that deletes those vertices) and `path:A<n>`.
pub fn load_algebra(arg: &str) -> Result<QuiverAlgebra> {
    if let Some(rest) = arg.strip_prefix("pi:") {
        let spec: DynkinSpec = rest.parse()?;
        let alg = QuiverAlgebra::preprojective(&spec.diagram)?;
        if spec.contracted.is_empty() {
            return Ok(alg);
        }
        let idx: Vec<usize> = spec.contracted.iter().map(|i| i - 1).collect();
        return alg.corner(&idx);
    }
    if let Some(rest) = arg.strip_prefix("path:") {
        let n = rest
            .strip_prefix(['A', 'a'])
            .and_then(|r| r.parse::<usize>().ok())
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Parse(format!("expected path:A<n>, got {arg:?}")))?;
        return QuiverAlgebra::linear_a(n);
    }
    let file: AlgebraFile = read_json(arg)?;
    file.build()
}

/// Reads a complex file; a module file is accepted as a stalk in degree 0.
pub fn load_complex(alg: &QuiverAlgebra, path: &str) -> Result<Complex> {
    let v: Value = read_json(path)?;
    complex_from_value(alg, v)
}

pub fn complex_from_value(alg: &QuiverAlgebra, v: Value) -> Result<Complex> {
    if v.get("dims").is_some() {
        let m: ModuleFile = serde_json::from_value(v)?;
        Ok(Complex::stalk(m.build(alg)?, 0))
    } else {
        let c: ComplexFile = serde_json::from_value(v)?;
        c.build(alg)
    }
}

pub fn load_smc(alg: &QuiverAlgebra, path: &str) -> Result<Smc> {
    let f: SmcFile = read_json(path)?;
    f.build(alg)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T> {
    let text = std::fs::read_to_string(FsPath::new(path))
        .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
    Ok(serde_json::from_str(&text)?)
}
