//! Exact alcove combinatorics for torus fixed point data.
//!
//! The crate works in a real parameter space with a fixed integral lattice and
//! a finite family of walls. It computes real alcoves, their `p`-dilated
//! counterparts, compatible pairs, highest weight orders on labels, the
//! semi-stable pre-order in the large `p` limit and the Mullineux involution
//! used to describe wall-crossing bijections.
//!
//! Everything is exact. Rationals are arbitrary precision and quantities that
//! depend on `p` are affine functions of `p` compared in the large `p` limit.

#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::result_large_err)]

extern crate alloc;

pub mod arith;
pub mod compat;
mod error;
pub mod fixed_points;
pub mod geometry;
pub mod lp;
pub mod order;
pub mod partition;
pub mod wall_crossing;

pub use arith::{
    is_saturated, saturate, AffineInP, Covector, LatticeVector, Rational, RationalVector, Wall,
    WallSet,
};
pub use error::{Error, Result};
