use alloc::vec::Vec;

use num_bigint::BigInt;

use super::alcove::{from_strips, Inequality, RealAlcove};
use crate::arith::{AffineInP, LatticeVector, Rational, RationalVector, WallSet};
use crate::error::{Error, Result};
use crate::lp::{self, Constraint, Kind, LpOutcome};

/// `sign * <alpha_wall, x> > rhs(p)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PInequality {
    pub wall: usize,
    pub sign: i32,
    pub rhs: AffineInP,
}

impl PInequality {
    pub fn holds(&self, walls: &WallSet, x: &RationalVector, p: &BigInt) -> bool {
        let v = walls.get(self.wall).eval(x);
        let v = if self.sign < 0 { -v } else { v };
        v > self.rhs.eval_at(p)
    }

    pub fn constraint(&self, walls: &WallSet, p: &BigInt, kind: Kind) -> Constraint {
        let a = walls.get(self.wall).alpha.scaled(self.sign).to_rational();
        Constraint::new(a.0, kind, self.rhs.eval_at(p))
    }

    /// Integer form `sign * <alpha, x> >= rhs + 1`, valid on lattice points when
    /// the right hand side is integral at `p`.
    pub fn lattice_bound(&self, p: &BigInt) -> Option<BigInt> {
        self.rhs.eval_at(p).to_integer().map(|n| n + 1)
    }
}

/// The `p`-dilate of a real alcove.
///
/// `facets` come from the facets of the source alcove. `bounds` come from every
/// strip bound and cut out the actual `p`-alcove near the dilated walls.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PAlcove {
    pub source: RealAlcove,
    pub facets: Vec<PInequality>,
    pub bounds: Vec<PInequality>,
}

impl PAlcove {
    pub fn contains(&self, walls: &WallSet, x: &RationalVector, p: &BigInt) -> bool {
        self.bounds.iter().all(|b| b.holds(walls, x, p))
    }

    pub fn contains_lattice(&self, walls: &WallSet, x: &LatticeVector, p: &BigInt) -> bool {
        self.contains(walls, &x.to_rational(), p)
    }

    pub fn satisfies_facets(&self, walls: &WallSet, x: &RationalVector, p: &BigInt) -> bool {
        self.facets.iter().all(|b| b.holds(walls, x, p))
    }

    pub fn constraints_at(&self, walls: &WallSet, p: &BigInt) -> Vec<Constraint> {
        self.bounds
            .iter()
            .map(|b| b.constraint(walls, p, Kind::Gt))
            .collect()
    }
}

/// Dilated inequality for a strip bound: `t` becomes `p t + sigma` with `sigma`
/// the extreme element of the cluster of `t`, on the side of the alcove.
pub fn dilate(walls: &WallSet, b: &Inequality) -> Result<PInequality> {
    let w = walls.get(b.wall);
    let sign = b.sense.sign();
    let t = if sign < 0 { -&b.offset } else { b.offset.clone() };
    let sigma = w
        .cluster(&t, sign)
        .pop()
        .ok_or_else(|| Error::InvalidWalls(alloc::format!("offset {t:?} of wall {} has no sigma", b.wall)))?;
    Ok(PInequality {
        wall: b.wall,
        sign,
        rhs: AffineInP::new(sigma, t),
    })
}

pub fn p_alcove_of(alcove: &RealAlcove, walls: &WallSet) -> Result<PAlcove> {
    let facets = alcove
        .facets
        .iter()
        .map(|f| dilate(walls, f))
        .collect::<Result<Vec<_>>>()?;
    let bounds = alcove
        .bounds()
        .iter()
        .map(|f| dilate(walls, f))
        .collect::<Result<Vec<_>>>()?;
    Ok(PAlcove {
        source: alcove.clone(),
        facets,
        bounds,
    })
}

/// The `p`-alcove of a real alcove containing the lattice point `x`.
pub fn p_membership(walls: &WallSet, x: &LatticeVector, p: &BigInt) -> Result<PAlcove> {
    if x.dim() != walls.rank {
        return Err(Error::Dimension {
            expected: walls.rank,
            got: x.dim(),
        });
    }
    let pq = Rational::from(p);
    let p1 = &pq + &Rational::one();
    let mut strips = Vec::with_capacity(walls.len());
    for w in &walls.walls {
        let v = Rational::from(w.alpha.pair_lattice(x));
        let mut lo: Option<(Rational, Rational, Rational)> = None;
        let mut hi: Option<(Rational, Rational, Rational)> = None;
        for s in w.sigma() {
            let q = (&v - &(&p1 * s)) / pq.clone();
            if q.is_integer() {
                return Err(Error::OnPWall {
                    wall: w.id,
                    sigma: s.clone(),
                    shift: q,
                });
            }
            let m_lo = Rational::from(q.floor());
            let m_hi = Rational::from(q.ceil());
            let h_lo = &(&p1 * s) + &(&pq * &m_lo);
            let h_hi = &(&p1 * s) + &(&pq * &m_hi);
            if lo.as_ref().is_none_or(|(h, _, _)| &h_lo > h) {
                lo = Some((h_lo, s.clone(), m_lo));
            }
            if hi.as_ref().is_none_or(|(h, _, _)| &h_hi < h) {
                hi = Some((h_hi, s.clone(), m_hi));
            }
        }
        let (_, s_lo, m_lo) = lo.expect("sigma is nonempty");
        let (_, s_hi, m_hi) = hi.expect("sigma is nonempty");
        let t_lo = &s_lo + &m_lo;
        let t_hi = &s_hi + &m_hi;
        let extreme_lo = w.cluster(&t_lo, 1).last() == Some(&s_lo);
        let extreme_hi = w.cluster(&t_hi, 1).first() == Some(&s_hi);
        if t_lo >= t_hi || !extreme_lo || !extreme_hi || w.next_offset(&t_lo) != t_hi {
            return Err(Error::WallZone { wall: w.id });
        }
        strips.push((t_lo, t_hi));
    }
    let alcove = from_strips(walls, strips)?;
    p_alcove_of(&alcove, walls)
}

/// Some lattice point satisfying `cons`, searched coordinate by coordinate from
/// the middle of the feasible range outwards.
pub fn find_lattice_point(dim: usize, cons: &[Constraint]) -> Option<LatticeVector> {
    let mut fixed: Vec<BigInt> = Vec::with_capacity(dim);
    if search(dim, cons, &mut fixed) {
        Some(LatticeVector(fixed))
    } else {
        None
    }
}

fn search(dim: usize, cons: &[Constraint], fixed: &mut Vec<BigInt>) -> bool {
    let k = fixed.len();
    if k == dim {
        let x = LatticeVector(fixed.clone()).to_rational();
        return cons.iter().all(|c| c.holds(&x));
    }
    let mut sys: Vec<Constraint> = cons
        .iter()
        .map(|c| {
            let kind = if c.kind == Kind::Gt { Kind::Ge } else { c.kind };
            Constraint::new(c.coeffs.clone(), kind, c.rhs.clone())
        })
        .collect();
    for (j, v) in fixed.iter().enumerate() {
        let mut e = alloc::vec![Rational::zero(); dim];
        e[j] = Rational::one();
        sys.push(Constraint::eq(e, Rational::from(v)));
    }
    let mut e = alloc::vec![Rational::zero(); dim];
    e[k] = Rational::one();
    let lo = match lp::minimize(dim, &sys, &e) {
        LpOutcome::Optimal { value, .. } => value.ceil(),
        _ => return false,
    };
    let hi = match lp::maximize(dim, &sys, &e) {
        LpOutcome::Optimal { value, .. } => value.floor(),
        _ => return false,
    };
    if lo > hi {
        return false;
    }
    let mid: BigInt = (&lo + &hi) / 2;
    let mut order = alloc::vec![mid.clone()];
    let mut step = BigInt::from(1);
    while &mid - &step >= lo || &mid + &step <= hi {
        for c in [&mid + &step, &mid - &step] {
            if c >= lo && c <= hi {
                order.push(c);
            }
        }
        step += 1;
    }
    for c in order {
        fixed.push(c);
        if search(dim, cons, fixed) {
            return true;
        }
        fixed.pop();
    }
    false
}
