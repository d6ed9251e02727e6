use alloc::string::String;
use alloc::vec::Vec;

use crate::arith::Rational;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("zero covector")]
    ZeroCovector,
    #[error("set is not saturated: {0}")]
    NotSaturated(String),
    #[error("invalid wall data: {0}")]
    InvalidWalls(String),
    #[error("point lies on wall {wall} at offset {offset}")]
    OnWall { wall: usize, offset: Rational },
    #[error("point lies on the p-hyperplane of wall {wall} with sigma {sigma} and shift {shift}")]
    OnPWall {
        wall: usize,
        sigma: Rational,
        shift: Rational,
    },
    #[error("point lies in the wall zone of wall {wall}, not in a p-alcove of a real alcove")]
    WallZone { wall: usize },
    #[error("alcove is unbounded")]
    Unbounded,
    #[error("not a face: {0}")]
    NotAFace(String),
    #[error("no compatible element within search radius {0}")]
    NoCompatible(u32),
    #[error("pair is not compatible: {0}")]
    NotCompatible(String),
    #[error("not integral: {0}")]
    NotIntegral(String),
    #[error("not regular: {0}")]
    NotRegular(String),
    #[error("point is not in the p-alcove")]
    OutsidePAlcove,
    #[error("target unreachable; {reached} lattice points reachable from the start")]
    Unreachable { reached: usize },
    #[error("empty region: {0}")]
    Empty(String),
    #[error("label not in window: {0}")]
    NotInWindow(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("inconsistent indices: {0:?}")]
    Indices(Vec<usize>),
}
