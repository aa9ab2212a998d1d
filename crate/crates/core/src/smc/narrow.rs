//! Moving an object with no negative self-extensions into a heart by
//! repeated left mutation of the reference collection.

use super::{Direction, MutationPath, Smc};
use crate::derived::{Complex, Derived, Window};
use crate::error::{Error, Result};

/// Iteration guards for [`Derived::narrow`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NarrowGuards {
    pub per_stage: usize,
    pub total: usize,
}

impl Default for NarrowGuards {
    fn default() -> Self {
        NarrowGuards { per_stage: 256, total: 4096 }
    }
}

/// One mutation performed by the narrowing loop, with the window of `x`
/// before and after.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowStep {
    pub index: usize,
    pub before: Window,
    pub after: Window,
}

#[derive(Debug, Clone)]
pub struct NarrowResult {
    /// Collection whose heart contains `x`.
    pub smc: Smc,
    /// Mutations performed by this call (on top of the input provenance).
    pub steps: Vec<WindowStep>,
    /// Uniform shift applied at the end.
    pub shift: i64,
}

#[derive(Debug, Clone)]
pub enum HeartMembership {
    InHeart(Box<NarrowResult>),
    /// `Hom(x, x[degree]) != 0` with `degree < 0`.
    NegativeSelfExt { degree: i64 },
}

impl HeartMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, HeartMembership::InHeart(_))
    }
}

impl Derived<'_> {
    /// Returns a collection `V` with `smc_bounds(x, V) = [0, 0]`.
    pub fn narrow(&self, x: &Complex, u0: &Smc, guards: NarrowGuards) -> Result<NarrowResult> {
        if x.std_bounds(self.alg()).is_none() {
            return Err(Error::Precondition("cannot narrow the zero object".into()));
        }
        if let Some(i) = self.first_negative_selfext(x) {
            return Err(Error::Precondition(format!("Hom(x, x[{i}]) != 0, so x has a negative self-extension")));
        }
        let mut u = u0.clone();
        let mut steps = Vec::new();
        loop {
            let w = self.smc_window(x, &u)?;
            if w.lo == w.hi {
                let v = u.shifted(-w.lo);
                let check = self.smc_window(x, &v)?;
                if check != (Window { lo: 0, hi: 0 }) {
                    return Err(Error::Internal(format!("narrowing ended with window {check} instead of [0,0]")));
                }
                return Ok(NarrowResult { smc: v, steps, shift: -w.lo });
            }
            let (a, b) = (w.lo, w.hi);
            let mut v = u.clone();
            let mut stage = 0;
            let mut current = w;
            while let Some(k) = (0..v.len()).find(|&k| self.hom_dim(&v.elements[k], x, a) != 0) {
                if stage >= guards.per_stage || steps.len() >= guards.total {
                    return Err(Error::Guard(format!(
                        "narrowing exceeded its mutation budget ({} per stage, {} total); the algebra may not be silting discrete",
                        guards.per_stage, guards.total
                    )));
                }
                let next = self.mutate(&v, k, Direction::Left)?;
                let after = self.smc_window(x, &next)?;
                if after.lo < current.lo || after.hi > current.hi + 1 {
                    return Err(Error::Internal(format!(
                        "window grew from {current} to {after} under mutation at {}",
                        k + 1
                    )));
                }
                if after.lo < a || after.hi > b {
                    return Err(Error::Internal(format!("x left [{a},{b}] after mutation at {}: window {after}", k + 1)));
                }
                for (j, y) in u.elements.iter().enumerate() {
                    let wy = self.smc_window(y, &next)?;
                    if wy.lo < 0 || wy.hi > 1 {
                        return Err(Error::Internal(format!(
                            "stage start element {} has window {wy} relative to the mutated collection",
                            j + 1
                        )));
                    }
                }
                steps.push(WindowStep { index: k, before: current, after });
                current = after;
                v = next;
                stage += 1;
            }
            u = v;
        }
    }

    /// Decides heart membership, with a witness either way.
    pub fn heart_membership(&self, x: &Complex, guards: NarrowGuards) -> Result<HeartMembership> {
        if let Some(degree) = self.first_negative_selfext(x) {
            return Ok(HeartMembership::NegativeSelfExt { degree });
        }
        let std = self.standard_smc();
        Ok(HeartMembership::InHeart(Box::new(self.narrow(x, &std, guards)?)))
    }
}

impl NarrowResult {
    pub fn path(&self) -> &MutationPath {
        &self.smc.provenance
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QuiverAlgebra;
    use crate::dynkin::DynkinSpec;

    fn pi(s: &str) -> QuiverAlgebra {
        QuiverAlgebra::preprojective(&s.parse::<DynkinSpec>().unwrap().diagram).unwrap()
    }

    #[test]
    fn shifted_simple_needs_only_a_shift() {
        let a2 = pi("A2");
        let d = Derived::new(&a2);
        let x = Complex::stalk(a2.simple_module(0), 0).shift(5);
        let std = d.standard_smc();
        let r = d.narrow(&x, &std, NarrowGuards::default()).unwrap();
        assert!(r.steps.is_empty());
        assert_eq!(r.shift, 5);
        assert_eq!(r.smc.elements[1], std.elements[1].shift(5));
    }

    #[test]
    fn modules_are_in_the_standard_heart() {
        let a3 = pi("A3");
        let d = Derived::new(&a3);
        let x = Complex::stalk(a3.projective_module(1), 0);
        let r = d.narrow(&x, &d.standard_smc(), NarrowGuards::default()).unwrap();
        assert!(r.steps.is_empty());
        assert_eq!(r.shift, 0);
    }

    #[test]
    fn two_term_object_is_narrowed() {
        let a2 = pi("A2");
        let d = Derived::new(&a2);
        let s1 = Complex::stalk(a2.simple_module(0), 0);
        let s2 = Complex::stalk(a2.simple_module(1), 0);
        // Ext^1(S_2, S_1) = 1 so S_2 ⊕ S_1[1] has no negative self-extensions
        let x = s2.direct_sum(&a2, &s1.shift(1));
        let r = d.narrow(&x, &d.standard_smc(), NarrowGuards::default()).unwrap();
        assert_eq!(d.smc_window(&x, &r.smc).unwrap(), Window { lo: 0, hi: 0 });
        let replay = d.replay(r.path()).unwrap();
        assert!(d.smc_isomorphic(&replay, &r.smc));
    }

    #[test]
    fn negative_self_extension_is_reported() {
        let a2 = pi("A2");
        let d = Derived::new(&a2);
        let s1 = Complex::stalk(a2.simple_module(0), 0);
        let x = s1.direct_sum(&a2, &s1.shift(1));
        match d.heart_membership(&x, NarrowGuards::default()).unwrap() {
            HeartMembership::NegativeSelfExt { degree } => assert_eq!(degree, -1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(d.narrow(&x, &d.standard_smc(), NarrowGuards::default()).is_err());
    }
}
