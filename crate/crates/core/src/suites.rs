//! Named verification suites, shared by `preproj verify` and the acceptance
//! tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{QuiverAlgebra, DEFAULT_BRICK_BUDGET};
use crate::arrangement::Arrangement;
use crate::derived::{random_complex, Complex, Derived, Window};
use crate::dynkin::{primitive_restricted_roots, DynkinSpec, RestrictedRoot};
use crate::error::{Error, Result};
use crate::fixtures::{self, PiA3Example};
use crate::smc::{CompletionLimits, Direction, HeartMembership, MutationPath, NarrowGuards, Smc};

/// Suite names accepted by [`run_suite`], in acceptance order.
pub const SUITES: &[&str] = &[
    "restrict-d5",
    "arrangements",
    "roots",
    "ex-6-13",
    "bricks",
    "magic",
    "mutation",
    "heart",
    "completion",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: Option<u64>,
    pub field: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &str, seed: Option<u64>, field: &str) -> Self {
        SuiteReport { suite: suite.to_string(), seed, field: field.to_string(), checks: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "seed": self.seed,
            "field": self.field,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Runs a suite by name. Randomized suites use `seed`.
pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    match name {
        "restrict-d5" => restrict_d5(),
        "arrangements" => arrangements(),
        "roots" => roots(),
        "ex-6-13" => ex_6_13(),
        "bricks" => bricks(),
        "magic" => magic(seed),
        "mutation" => mutation(),
        "heart" => heart(seed),
        "completion" => completion(),
        _ => Err(Error::Parse(format!("unknown suite {name:?}; available: {}", SUITES.join(", ")))),
    }
}

fn labels(rs: &[RestrictedRoot]) -> Vec<String> {
    let mut v: Vec<String> = rs.iter().map(|r| r.label()).collect();
    v.sort();
    v
}

fn sorted(xs: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = xs.iter().map(|s| s.to_string()).collect();
    v.sort();
    v
}

fn restrict(spec: &str) -> Result<Vec<RestrictedRoot>> {
    let s: DynkinSpec = spec.parse()?;
    s.diagram.restrict_roots(&s.contracted)
}

fn restrict_d5() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("restrict-d5", None, "Z");
    let rs = restrict("D5:I=1,3,5")?;
    let got = labels(&rs);
    r.check("restricted roots of D5:I=1,3,5", got == sorted(&["10", "01", "11", "21", "22"]), got.join(" "));
    let prim = labels(&primitive_restricted_roots(&rs));
    r.check("primitive restricted roots", prim == sorted(&["10", "01", "11", "21"]), prim.join(" "));
    Ok(r)
}

fn arrangement_of(spec: &str) -> Result<Arrangement> {
    Arrangement::from_restricted_roots(&restrict(spec)?)
}

fn arrangements() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("arrangements", None, "Q");
    let a = arrangement_of("D5:I=1,3,5")?;
    r.check("D5:I=1,3,5 hyperplanes", a.hyperplanes().len() == 4, a.hyperplanes().len().to_string());
    r.check("D5:I=1,3,5 chambers", a.chambers().len() == 8, a.chambers().len().to_string());

    let rs = restrict("D4:I=3,4")?;
    let got = labels(&rs);
    r.check("D4:I=3,4 restricted roots", got == sorted(&["10", "11", "12", "01"]), got.join(" "));
    let a = Arrangement::from_restricted_roots(&rs)?;
    r.check("D4:I=3,4 hyperplanes", a.hyperplanes().len() == 4, a.hyperplanes().len().to_string());
    r.check("D4:I=3,4 chambers", a.chambers().len() == 8, a.chambers().len().to_string());

    let a = arrangement_of("A2:I=")?;
    r.check("A2 hyperplanes", a.hyperplanes().len() == 3, a.hyperplanes().len().to_string());
    r.check("A2 chambers", a.chambers().len() == 6, a.chambers().len().to_string());
    let atoms = a.atoms_from(0)?;
    let maxima: Vec<_> = atoms
        .iter()
        .filter(|alpha| atoms.iter().all(|beta| beta == *alpha || !a.atom_leq(alpha, beta).unwrap_or(true)))
        .collect();
    let unique_max = maxima.len() == 1 && a.atom_length(maxima[0]) == 3;
    let below_max = maxima.len() == 1 && atoms.iter().all(|b| a.atom_leq(b, maxima[0]).unwrap_or(false));
    r.check(
        "A2 atom poset has a unique maximum of length 3",
        unique_max && below_max && atoms.len() == 6,
        format!("{} atoms, {} maximal", atoms.len(), maxima.len()),
    );
    Ok(r)
}

fn roots() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("roots", None, "Z");
    for (spec, n) in [("D5", 20), ("D4", 12), ("A3", 6)] {
        let d = spec.parse::<DynkinSpec>()?.diagram;
        let k = d.positive_roots().len();
        r.check(format!("{spec} positive roots"), k == n, k.to_string());
    }
    for spec in ["A2", "A3", "D4"] {
        let d = spec.parse::<DynkinSpec>()?.diagram;
        let mut bad = Vec::new();
        for i in 1..=d.rank() {
            for j in 1..=d.rank() {
                if !d.braid_check(i, j)? {
                    bad.push(format!("({i},{j})"));
                }
            }
        }
        r.check(format!("{spec} braid relations"), bad.is_empty(), bad.join(" "));
    }
    Ok(r)
}

/// Hom-vanishing `Hom(a, b[i]) = 0` for `i < 0` over the scan window
/// determined by the standard bounds; returns the violations.
fn negative_homs(d: &Derived<'_>, a: &Complex, b: &Complex) -> Result<Vec<(i64, usize)>> {
    let (wa, wb) = (d.std_bounds(a)?, d.std_bounds(b)?);
    Ok((wb.lo - wa.hi..0).map(|i| (i, d.hom_dim(a, b, i))).filter(|&(_, h)| h != 0).collect())
}

fn ex_6_13() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("ex-6-13", None, "Q");
    let alg = fixtures::preprojective("A3")?;
    let d = Derived::new(&alg);
    let ex = PiA3Example::new(&alg);
    let x = ex.x(&alg);
    r.check("x has no negative self-extensions", d.has_no_negative_selfext(&x), format!("{:?}", d.first_negative_selfext(&x)));
    let e = d.hom_dim(&x, &x, 0);
    r.check("dim End(x) = 2", e == 2, e.to_string());
    let w = d.std_bounds(&x)?;
    r.check("standard window of x is [-1,0]", w == Window { lo: -1, hi: 0 }, w.to_string());
    let pair = d.semibrick_pair_check(std::slice::from_ref(&ex.m), std::slice::from_ref(&ex.n));
    r.check("M ⊕ N[1] is a semibrick pair", pair.is_pair(), pair.messages.join("; "));

    let s = ex.s_prime(&alg);
    let v = d.validate(&s);
    r.check("S' passes the smc Hom axioms", v.passed, v.messages.join("; "));
    let mut into = Vec::new();
    let mut from = Vec::new();
    for (k, y) in s.elements.iter().enumerate() {
        into.extend(negative_homs(&d, y, &x)?.into_iter().map(|(i, h)| format!("Hom(y{}, x[{i}]) = {h}", k + 1)));
        from.extend(negative_homs(&d, &x, y)?.into_iter().map(|(i, h)| format!("Hom(x, y{}[{i}]) = {h}", k + 1)));
    }
    r.check("Hom(S', x[i]) = 0 for i < 0", into.is_empty(), into.join("; "));
    r.check("Hom(x, S'[i]) = 0 for i < 0", from.is_empty(), from.join("; "));
    let w = d.smc_window(&x, &s)?;
    r.check("smc window of x relative to S' is [0,0]", w == Window { lo: 0, hi: 0 }, w.to_string());

    match d.narrow(&x, &d.standard_smc(), NarrowGuards::default()) {
        Ok(n) => {
            let w = d.smc_window(&x, &n.smc)?;
            r.check("narrow lands x in a heart", w == Window { lo: 0, hi: 0 }, format!("path {}", path_string(&n.smc.provenance)));
            let std = d.standard_smc();
            let mut worst = Window { lo: 0, hi: 0 };
            for y in &std.elements {
                let wy = d.smc_window(y, &n.smc)?;
                worst = Window { lo: worst.lo.min(wy.lo), hi: worst.hi.max(wy.hi) };
            }
            r.check("standard collection lies in [0,1] of the witness", worst.lo >= 0 && worst.hi <= 1, worst.to_string());
            let replay = d.replay(&n.smc.provenance)?;
            r.check("witness path replays", d.smc_isomorphic(&replay, &n.smc), String::new());
        }
        Err(e) => r.check("narrow lands x in a heart", false, e.to_string()),
    }
    Ok(r)
}

pub fn path_string(p: &MutationPath) -> String {
    let steps: Vec<String> = p.steps.iter().map(|(i, d)| format!("{}{}", d.letter(), i + 1)).collect();
    format!("[{}] shift {}", steps.join(" "), p.shift)
}

fn dim_set(scan: &crate::algebra::BrickScan) -> Vec<Vec<i64>> {
    let mut v: Vec<Vec<i64>> = scan.dimension_vectors().iter().map(|d| d.iter().map(|&x| x as i64).collect()).collect();
    v.sort();
    v
}

fn bricks() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("bricks", None, "F_2, F_3");
    let a2 = fixtures::preprojective("A2")?;
    let mut expected = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
    expected.sort();
    for p in [2, 3] {
        let scan = a2.enumerate_bricks(&[2, 2], p, DEFAULT_BRICK_BUDGET)?;
        let got = dim_set(&scan);
        r.check(format!("Π(A2) bricks over F_{p} have dimension vectors 10, 01, 11"), got == expected, format!("{got:?}"));
    }
    let a3 = fixtures::preprojective("A3")?;
    let corner = a3.corner(&[1])?;
    let spec: DynkinSpec = "A3:I=2".parse()?;
    let prim = primitive_restricted_roots(&spec.diagram.restrict_roots(&spec.contracted)?);
    let mut prim: Vec<Vec<i64>> = prim.into_iter().map(|r| r.coords).collect();
    prim.sort();
    for p in [2, 3] {
        let scan = corner.enumerate_bricks(&[2, 2], p, DEFAULT_BRICK_BUDGET)?;
        let got = dim_set(&scan);
        let subset = got.iter().all(|v| prim.contains(v));
        let covered = prim.iter().all(|v| got.contains(v));
        r.check(
            format!("corner bricks over F_{p} realize exactly the primitive restricted roots"),
            subset && covered,
            format!("bricks {got:?}, primitive roots {prim:?}"),
        );
    }
    Ok(r)
}

/// Number of random complexes in the window-lemma suite.
pub const MAGIC_SAMPLES: usize = 100;

fn magic(seed: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("magic", Some(seed), "Q");
    let alg = QuiverAlgebra::linear_a(2)?;
    let d = Derived::with_seed(&alg, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs: Vec<Complex> = (0..MAGIC_SAMPLES).map(|_| random_complex(&alg, &mut rng)).collect();
    let windows: Vec<Option<Window>> = xs.iter().map(|x| x.std_bounds(&alg)).collect();
    let mut pairs = 0;
    let mut failures = Vec::new();
    for (x, wx) in xs.iter().zip(&windows) {
        let Some(wx) = wx else { continue };
        let hx = x.cohomology_module(&alg, wx.lo);
        for (y, wy) in xs.iter().zip(&windows) {
            let Some(wy) = wy else { continue };
            pairs += 1;
            let lhs = d.hom_dim(y, x, wx.lo - wy.hi);
            let rhs = alg.hom_dim(&y.cohomology_module(&alg, wy.hi), &hx);
            if lhs != rhs && failures.len() < 5 {
                failures.push(format!("windows {wy} and {wx}: {lhs} != {rhs}"));
            }
        }
    }
    let nonzero = windows.iter().flatten().count();
    r.check(
        "dim Hom(y, x[a-d]) = dim Hom(H^d y, H^a x)",
        failures.is_empty() && pairs > 0,
        format!("{nonzero} nonzero complexes, {pairs} pairs; {}", failures.join("; ")),
    );
    Ok(r)
}

/// Depth of the mutation closure in the mutation suite.
pub const MUTATION_DEPTH: usize = 4;

fn mutation() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("mutation", None, "Q");
    for spec in ["A2", "A3"] {
        let alg = fixtures::preprojective(spec)?;
        let d = Derived::new(&alg);
        let closure = d.mutation_closure(&d.standard_smc(), MUTATION_DEPTH, &[Direction::Left, Direction::Right])?;
        let probes: Vec<Complex> = (0..alg.num_vertices())
            .flat_map(|i| [Complex::stalk(alg.simple_module(i), 0), Complex::stalk(alg.projective_module(i), 0)])
            .collect();
        let mut counts = [0usize; 5];
        let mut failures: [Vec<String>; 5] = Default::default();
        for (u, _) in &closure {
            let probe_windows: Vec<Window> = probes.iter().map(|x| d.smc_window(x, u)).collect::<Result<_>>()?;
            for i in 0..u.len() {
                let v = d.left_mutate(u, i)?;
                let tag = path_string(&v.provenance);
                let results = [
                    d.smc_isomorphic(&d.right_mutate(&v, i)?, u),
                    d.smc_leq(&v, u) && !d.smc_leq(u, &v),
                    d.isomorphic(&v.elements[i], &u.elements[i].shift(1)),
                    d.validate(&v).passed,
                    probes.iter().zip(&probe_windows).all(|(x, w)| match d.smc_window(x, &v) {
                        Ok(nw) => nw.lo >= w.lo && nw.hi <= w.hi + 1,
                        Err(_) => false,
                    }),
                ];
                for (k, ok) in results.iter().enumerate() {
                    counts[k] += 1;
                    if !ok && failures[k].len() < 3 {
                        failures[k].push(tag.clone());
                    }
                }
            }
        }
        let names = [
            "right mutation inverts left mutation",
            "left mutation strictly descends",
            "mutated element is y_i[1]",
            "mutated collection passes the Hom axioms",
            "window growth stays within [a, b+1]",
        ];
        for k in 0..5 {
            r.check(
                format!("Π({spec}): {}", names[k]),
                failures[k].is_empty(),
                format!("{} collections, {} mutations; {}", closure.len(), counts[k], failures[k].join(", ")),
            );
        }
    }
    Ok(r)
}

/// Random element of a randomly mutated collection, randomly shifted.
fn random_heart_object(d: &Derived<'_>, rng: &mut ChaCha8Rng) -> Result<(Complex, String)> {
    let n = d.alg().num_vertices();
    let len = rng.gen_range(0..=4);
    let mut u: Smc = d.standard_smc();
    for _ in 0..len {
        let dir = if rng.gen_bool(0.5) { Direction::Left } else { Direction::Right };
        u = d.mutate(&u, rng.gen_range(0..n), dir)?;
    }
    let k = rng.gen_range(0..n);
    let shift = rng.gen_range(-2..=2);
    Ok((u.elements[k].shift(shift), format!("element {} of {} shifted by {shift}", k + 1, path_string(&u.provenance))))
}

pub const HEART_POSITIVES: usize = 25;
pub const HEART_NEGATIVES: usize = 10;

fn heart(seed: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("heart", Some(seed), "Q");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let algs = [fixtures::preprojective("A2")?, fixtures::preprojective("A3")?];
    let ds: Vec<Derived<'_>> = algs.iter().map(|a| Derived::with_seed(a, seed)).collect();
    let mut wrong = Vec::new();
    for k in 0..HEART_POSITIVES {
        let d = &ds[k % 2];
        let (x, tag) = random_heart_object(d, &mut rng)?;
        match d.heart_membership(&x, NarrowGuards::default())? {
            HeartMembership::InHeart(w) if d.smc_window(&x, &w.smc)? == (Window { lo: 0, hi: 0 }) => {}
            other => wrong.push(format!("{tag}: {}", if other.is_member() { "bad witness" } else { "rejected" })),
        }
    }
    r.check(format!("{HEART_POSITIVES} heart objects are recognised"), wrong.is_empty(), wrong.join("; "));

    let mut wrong = Vec::new();
    for k in 0..HEART_NEGATIVES {
        let d = &ds[k % 2];
        let (y, tag) = random_heart_object(d, &mut rng)?;
        let s = rng.gen_range(1..=2);
        let x = y.direct_sum(d.alg(), &y.shift(s));
        // Hom(y, y[s][-s]) = End(y) is nonzero
        let oracle = d.hom_dim(&y, &y, 0) > 0 && d.hom_dim(&x, &x, -s) > 0;
        if !oracle {
            wrong.push(format!("{tag}: oracle found no negative self-extension"));
            continue;
        }
        match d.heart_membership(&x, NarrowGuards::default())? {
            HeartMembership::NegativeSelfExt { degree } if degree < 0 && d.hom_dim(&x, &x, degree) > 0 => {}
            HeartMembership::NegativeSelfExt { degree } => wrong.push(format!("{tag}: bad degree {degree}")),
            HeartMembership::InHeart(_) => wrong.push(format!("{tag} ⊕ shift {s}: accepted")),
        }
    }
    r.check(
        format!("{HEART_NEGATIVES} objects with negative self-extensions are rejected"),
        wrong.is_empty(),
        wrong.join("; "),
    );
    Ok(r)
}

fn completion() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("completion", None, "Q");
    let a3 = fixtures::preprojective("A3")?;
    let d = Derived::new(&a3);
    let ex = PiA3Example::new(&a3);
    match d.complete_semibrick(&ex.x(&a3), Some(ex.summands()), CompletionLimits::default()) {
        Ok(c) => {
            let contains = ex.summands().iter().all(|s| c.smc.elements.iter().any(|y| d.isomorphic(s, y)));
            r.check(
                "Π(A3): completion of M ⊕ N[1] has 3 elements containing M and N[1]",
                c.smc.len() == 3 && contains && d.validate(&c.smc).passed,
                format!("path {}, explored {}", path_string(&c.smc.provenance), c.explored),
            );
        }
        Err(e) => r.check("Π(A3): completion of M ⊕ N[1] has 3 elements containing M and N[1]", false, e.to_string()),
    }
    let a2 = fixtures::preprojective("A2")?;
    let d = Derived::new(&a2);
    let e = Complex::stalk(fixtures::pi_a2_e(&a2), 0);
    match d.complete_semibrick(&e, None, CompletionLimits::default()) {
        Ok(c) => {
            let contains = c.smc.elements.iter().any(|y| d.isomorphic(&e, y));
            r.check(
                "Π(A2): completion of E has 2 elements containing E",
                c.smc.len() == 2 && contains && d.validate(&c.smc).passed,
                format!("path {}, explored {}", path_string(&c.smc.provenance), c.explored),
            );
        }
        Err(e) => r.check("Π(A2): completion of E has 2 elements containing E", false, e.to_string()),
    }
    Ok(r)
}
