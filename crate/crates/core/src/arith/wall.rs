use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{Covector, Rational, RationalVector};
use crate::error::{Error, Result};

/// Smallest superset of `s` such that `z, z + n` in the set forces every
/// `z + k` with `0 < k < n` into the set.
pub fn saturate(s: &[Rational]) -> Vec<Rational> {
    let mut spans: BTreeMap<Rational, (BigInt, BigInt)> = BTreeMap::new();
    for x in s {
        let f = x.fract();
        let n = x.floor();
        spans
            .entry(f)
            .and_modify(|(lo, hi)| {
                if n < *lo {
                    *lo = n.clone();
                }
                if n > *hi {
                    *hi = n.clone();
                }
            })
            .or_insert((n.clone(), n));
    }
    let mut out = Vec::new();
    for (f, (lo, hi)) in spans {
        let mut k = lo;
        while k <= hi {
            out.push(&f + &Rational::from(&k));
            k += 1;
        }
    }
    out.sort();
    out
}

pub fn is_saturated(s: &[Rational]) -> bool {
    let mut sorted: Vec<Rational> = s.to_vec();
    sorted.sort();
    sorted.dedup();
    saturate(s) == sorted
}

/// Hyperplane family `<alpha, x> in Sigma + Z` together with the finite
/// saturated set `sigma` that controls the `p`-dilated hyperplanes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Wall {
    pub id: usize,
    pub alpha: Covector,
    sigma: Vec<Rational>,
}

impl Wall {
    pub fn new(id: usize, alpha: Covector, sigma: Vec<Rational>) -> Result<Wall> {
        if !alpha.is_primitive() {
            return Err(Error::InvalidWalls(format!(
                "covector of wall {id} is not primitive"
            )));
        }
        if sigma.is_empty() {
            return Err(Error::InvalidWalls(format!("wall {id} has empty sigma")));
        }
        if !is_saturated(&sigma) {
            return Err(Error::NotSaturated(format!(
                "wall {id}: {}",
                super::rational::fmt_list(&sigma)
            )));
        }
        let mut sigma = sigma;
        sigma.sort();
        sigma.dedup();
        Ok(Wall { id, alpha, sigma })
    }

    pub fn sigma(&self) -> &[Rational] {
        &self.sigma
    }

    /// Residues of `sigma` modulo the integers, in `[0, 1)`.
    pub fn classes(&self) -> Vec<Rational> {
        let mut c: Vec<Rational> = self.sigma.iter().map(Rational::fract).collect();
        c.sort();
        c.dedup();
        c
    }

    pub fn eval(&self, x: &RationalVector) -> Rational {
        self.alpha.pair(x)
    }

    /// Whether `v` lies in `Sigma + Z`.
    pub fn is_offset(&self, v: &Rational) -> bool {
        self.sigma.iter().any(|s| s.congruent(v))
    }

    /// Elements of `sign * sigma` congruent to `v`, ascending.
    pub fn cluster(&self, v: &Rational, sign: i32) -> Vec<Rational> {
        let mut c: Vec<Rational> = self
            .sigma
            .iter()
            .map(|s| if sign < 0 { -s } else { s.clone() })
            .filter(|s| s.congruent(v))
            .collect();
        c.sort();
        c
    }

    /// Largest offset in `Sigma + Z` strictly below `v` and smallest strictly above.
    pub fn bracket(&self, v: &Rational) -> Option<(Rational, Rational)> {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for f in self.classes() {
            let d = v - &f;
            if d.is_integer() {
                return None;
            }
            let below = &f + &Rational::from(d.floor());
            let above = &f + &Rational::from(d.ceil());
            if lo.as_ref().is_none_or(|l| &below > l) {
                lo = Some(below);
            }
            if hi.as_ref().is_none_or(|h| &above < h) {
                hi = Some(above);
            }
        }
        Some((lo?, hi?))
    }

    /// Largest offset strictly below `t`.
    pub fn prev_offset(&self, t: &Rational) -> Rational {
        self.classes()
            .into_iter()
            .map(|f| {
                let k = (t - &f).ceil() - 1;
                &f + &Rational::from(k)
            })
            .max()
            .expect("sigma is nonempty")
    }

    /// Smallest offset strictly above `t`.
    pub fn next_offset(&self, t: &Rational) -> Rational {
        self.classes()
            .into_iter()
            .map(|f| {
                let k = (t - &f).floor() + 1;
                &f + &Rational::from(k)
            })
            .min()
            .expect("sigma is nonempty")
    }

    /// Offsets in `Sigma + Z` lying in the closed interval `[a, b]`.
    pub fn offsets_between(&self, a: &Rational, b: &Rational) -> Vec<Rational> {
        let mut out = Vec::new();
        for f in self.classes() {
            let mut k = (a - &f).ceil();
            loop {
                let t = &f + &Rational::from(&k);
                if &t > b {
                    break;
                }
                out.push(t);
                k += 1;
            }
        }
        out.sort();
        out
    }
}

/// Walls of a parameter space of fixed rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WallSet {
    pub rank: usize,
    pub walls: Vec<Wall>,
}

impl WallSet {
    pub fn new(rank: usize, walls: Vec<Wall>) -> Result<WallSet> {
        if walls.is_empty() {
            return Err(Error::InvalidWalls("no walls".into()));
        }
        for (i, w) in walls.iter().enumerate() {
            if w.alpha.dim() != rank {
                return Err(Error::Dimension {
                    expected: rank,
                    got: w.alpha.dim(),
                });
            }
            if w.id != i {
                return Err(Error::InvalidWalls(format!(
                    "wall ids must be 0..n in order, found {} at position {i}",
                    w.id
                )));
            }
            if walls[..i].iter().any(|v| v.alpha == w.alpha) {
                return Err(Error::InvalidWalls(format!("wall {i} repeats a covector")));
            }
        }
        Ok(WallSet { rank, walls })
    }

    pub fn len(&self) -> usize {
        self.walls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walls.is_empty()
    }

    pub fn get(&self, id: usize) -> &Wall {
        &self.walls[id]
    }

    /// Least common multiple of the denominators of every `sigma`.
    pub fn denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.walls
            .iter()
            .flat_map(|w| w.sigma.iter())
            .fold(BigInt::from(1), |acc, s| acc.lcm(s.denom()))
    }
}
