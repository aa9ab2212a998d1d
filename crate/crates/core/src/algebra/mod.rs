//! Finite-dimensional quiver algebras and their modules.

mod bricks;
mod module;
mod quiver;

pub use bricks::{BrickClass, BrickScan, DEFAULT_BRICK_BUDGET};
pub use module::{dim_label, Module, ModuleMap};
pub use quiver::{Arrow, Path, QuiverAlgebra, Relation, Sparse, DEFAULT_PATH_CAP};
