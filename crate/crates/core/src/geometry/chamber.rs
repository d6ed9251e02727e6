use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::palcove::PAlcove;
use crate::arith::{LatticeVector, Rational, RationalVector, WallSet};
use crate::error::{Error, Result};
use crate::lp::{self, Constraint};

/// Integral chamber: `sign * <alpha_wall, x> >= 0` for each listed wall.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Chamber {
    pub signs: Vec<(usize, i32)>,
}

impl Chamber {
    pub fn contains(&self, walls: &WallSet, x: &RationalVector) -> bool {
        self.signs.iter().all(|&(w, s)| {
            let v = walls.get(w).eval(x);
            if s < 0 {
                !v.is_positive()
            } else {
                !v.is_negative()
            }
        })
    }

    fn open_constraints(&self, walls: &WallSet) -> Vec<Constraint> {
        self.signs
            .iter()
            .map(|&(w, s)| {
                Constraint::ge(walls.get(w).alpha.scaled(s).to_rational().0, Rational::one())
            })
            .collect()
    }
}

/// Walls with `<lambda, alpha>` in `Sigma + Z`.
pub fn integral_walls(walls: &WallSet, lambda: &RationalVector) -> Vec<usize> {
    walls
        .walls
        .iter()
        .filter(|w| w.is_offset(&w.eval(lambda)))
        .map(|w| w.id)
        .collect()
}

/// All chambers of the central arrangement of integral walls.
pub fn integral_chambers(walls: &WallSet, lambda: &RationalVector) -> Vec<Chamber> {
    let iw = integral_walls(walls, lambda);
    let k = iw.len();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << k) {
        let c = Chamber {
            signs: iw
                .iter()
                .enumerate()
                .map(|(i, &w)| (w, if mask >> i & 1 == 1 { -1 } else { 1 }))
                .collect(),
        };
        if lp::feasible(walls.rank, &c.open_constraints(walls)) {
            out.push(c);
        }
    }
    out.sort();
    out
}

/// Integral walls together with the unique chamber `C` such that
/// `lambda + (C ∩ lattice)` avoids every `sigma`.
pub fn integral_walls_and_positive_chamber(
    walls: &WallSet,
    lambda: &RationalVector,
) -> Result<(Vec<usize>, Chamber)> {
    lambda.check_dim(walls.rank)?;
    for w in &walls.walls {
        let v = w.eval(lambda);
        if w.sigma().contains(&v) {
            return Err(Error::NotRegular(format!(
                "<lambda, alpha_{}> = {v:?} lies in sigma",
                w.id
            )));
        }
    }
    let iw = integral_walls(walls, lambda);
    let mut signs = Vec::with_capacity(iw.len());
    for &id in &iw {
        let w = walls.get(id);
        let v = w.eval(lambda);
        let cl = w.cluster(&v, 1);
        let above = cl.last().is_some_and(|m| &v > m);
        signs.push((id, if above { 1 } else { -1 }));
    }
    let c = Chamber { signs };
    if !lp::feasible(walls.rank, &c.open_constraints(walls)) {
        return Err(Error::Empty("positive chamber has empty interior".into()));
    }
    Ok((iw, c))
}

/// `lambda + (C ∩ lattice)` cut by `sign * <alpha, x> >= threshold` per wall.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuantumChamber {
    pub lambda: RationalVector,
    pub bounds: Vec<(usize, i32, Rational)>,
}

impl QuantumChamber {
    pub fn contains(&self, walls: &WallSet, x: &RationalVector) -> bool {
        x.sub(&self.lambda).is_integral()
            && self.bounds.iter().all(|(w, s, t)| {
                let v = walls.get(*w).eval(x);
                let v = if *s < 0 { -v } else { v };
                &v >= t
            })
    }
}

pub fn quantum_chamber(
    walls: &WallSet,
    lambda: &RationalVector,
    chamber: &Chamber,
) -> Result<QuantumChamber> {
    lambda.check_dim(walls.rank)?;
    let mut bounds = Vec::with_capacity(chamber.signs.len());
    for &(id, s) in &chamber.signs {
        let w = walls.get(id);
        let v = w.eval(lambda);
        let v = if s < 0 { -v } else { v };
        let top = w.cluster(&v, s).pop().ok_or_else(|| {
            Error::Invalid(format!("wall {id} is not integral for lambda"))
        })?;
        bounds.push((id, s, top + Rational::one()));
    }
    Ok(QuantumChamber {
        lambda: lambda.clone(),
        bounds,
    })
}

/// Shortest sequence of generator steps from `from` to `to` that stays inside
/// the `p`-alcove, found by breadth first search.
pub fn translation_path(
    walls: &WallSet,
    palcove: &PAlcove,
    p: &BigInt,
    from: &LatticeVector,
    to: &LatticeVector,
    generators: &[LatticeVector],
    limit: usize,
) -> Result<Vec<LatticeVector>> {
    for x in [from, to] {
        if !palcove.contains_lattice(walls, x, p) {
            return Err(Error::OutsidePAlcove);
        }
    }
    let mut steps: Vec<LatticeVector> = Vec::with_capacity(2 * generators.len());
    for g in generators {
        steps.push(g.clone());
        steps.push(g.neg());
    }
    let mut prev: BTreeMap<LatticeVector, Option<(LatticeVector, usize)>> = BTreeMap::new();
    prev.insert(from.clone(), None);
    let mut queue = VecDeque::from([from.clone()]);
    while let Some(x) = queue.pop_front() {
        if &x == to {
            let mut path = Vec::new();
            let mut cur = x;
            while let Some(Some((back, i))) = prev.get(&cur).cloned() {
                path.push(steps[i].clone());
                cur = back;
            }
            path.reverse();
            return Ok(path);
        }
        for (i, s) in steps.iter().enumerate() {
            let y = x.add(s);
            if prev.contains_key(&y) || !palcove.contains_lattice(walls, &y, p) {
                continue;
            }
            prev.insert(y.clone(), Some((x.clone(), i)));
            if prev.len() > limit {
                return Err(Error::Invalid(format!("search exceeded {limit} points")));
            }
            queue.push_back(y);
        }
    }
    Err(Error::Unreachable { reached: prev.len() })
}
