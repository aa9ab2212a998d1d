//! Bounded complexes, derived Homs and windows.

mod complex;
mod hom;
mod minimize;
mod random;
mod resolution;

pub use complex::{cone, ChainMap, Complex, Window};
pub use hom::{Derived, HomBasis, DEFAULT_SEED};
pub use random::random_complex;
pub use resolution::{Level, Resolution};

pub(crate) use complex::cone_unchecked;
