//! Exact rational arithmetic, lattice vectors, covectors, walls and affine
//! functions of `p`.

mod affine;
pub mod rational;
mod vector;
mod wall;

pub use affine::AffineInP;
pub use rational::{q, Rational};
pub use vector::{Covector, LatticeVector, RationalVector};
pub use wall::{is_saturated, saturate, Wall, WallSet};
