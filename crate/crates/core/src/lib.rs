//! Exact computations for restricted-root arrangements, finite-dimensional
//! quiver algebras and simple-minded collections in their bounded derived
//! categories.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod arrangement;
pub mod derived;
pub mod dynkin;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod smc;
pub mod suites;

pub use error::{Error, Result};
