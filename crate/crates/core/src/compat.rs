//! Compatible pairs `(lambda, mu)` for an alcove and one of its faces.
//!
//! `mu` lies in the relative interior of the face, `lambda - mu` is integral,
//! `lambda` is strictly past every cluster of the walls through the face, and
//! then `lambda + p mu` lies in the `p`-alcove for every large `p`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{AffineInP, LatticeVector, Rational, RationalVector, WallSet};
use crate::error::{Error, Result};
use crate::geometry::{faces_of, from_strips, p_alcove_of, Face, Inequality, RealAlcove, Sense};

/// Wall through the face, oriented towards the alcove: `sign * <alpha, mu> = offset`
/// and compatibility asks `sign * <alpha, lambda> > threshold`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FaceWall {
    pub wall: usize,
    pub sign: i32,
    pub offset: Rational,
    pub threshold: Rational,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompatiblePair {
    pub lambda: RationalVector,
    pub mu: RationalVector,
    pub alcove: RealAlcove,
    pub face: Face,
    pub face_walls: Vec<FaceWall>,
}

impl CompatiblePair {
    /// `lambda + p mu`, exact in `p`.
    pub fn p_point(&self) -> Vec<AffineInP> {
        self.lambda
            .0
            .iter()
            .zip(&self.mu.0)
            .map(|(l, m)| AffineInP::new(l.clone(), m.clone()))
            .collect()
    }

    pub fn p_point_at(&self, p: &BigInt) -> RationalVector {
        RationalVector(self.p_point().iter().map(|c| c.eval_at(p)).collect())
    }
}

pub fn face_walls(walls: &WallSet, alcove: &RealAlcove, mu: &RationalVector) -> Vec<FaceWall> {
    alcove
        .bounds()
        .into_iter()
        .filter(|b| b.slack(walls, mu).is_zero())
        .map(|b| {
            let sign = b.sense.sign();
            let offset = if sign < 0 { -&b.offset } else { b.offset.clone() };
            let threshold = walls
                .get(b.wall)
                .cluster(&offset, sign)
                .pop()
                .expect("offsets carry a cluster");
            FaceWall {
                wall: b.wall,
                sign,
                offset,
                threshold,
            }
        })
        .collect()
}

fn lambda_ok(walls: &WallSet, fw: &[FaceWall], lambda: &RationalVector) -> bool {
    fw.iter().all(|f| {
        let v = walls.get(f.wall).eval(lambda);
        let v = if f.sign < 0 { -v } else { v };
        v > f.threshold
    })
}

/// Integer vectors of `l1` norm `r` in lexicographic order.
fn shell(d: usize, r: u32) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(d: usize, rest: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == d - 1 {
            if rest == 0 {
                cur.push(0);
                out.push(cur.clone());
                cur.pop();
            } else {
                for v in [-rest, rest] {
                    cur.push(v);
                    out.push(cur.clone());
                    cur.pop();
                }
            }
            return;
        }
        for v in -rest..=rest {
            cur.push(v);
            rec(d, rest - v.abs(), cur, out);
            cur.pop();
        }
    }
    if d == 0 {
        return out;
    }
    rec(d, r as i64, &mut cur, &mut out);
    out.sort();
    out
}

/// First `lambda` in `mu + lattice`, by `l1` distance from `mu` and then
/// lexicographically, satisfying the face wall conditions.
pub fn search_lambda(
    walls: &WallSet,
    fw: &[FaceWall],
    mu: &RationalVector,
    radius: u32,
) -> Result<RationalVector> {
    for r in 0..=radius {
        for chi in shell(walls.rank, r) {
            let lambda = mu.add(&RationalVector::from_i64(&chi));
            if lambda_ok(walls, fw, &lambda) {
                return Ok(lambda);
            }
        }
    }
    Err(Error::NoCompatible(radius))
}

fn pick_face(walls: &WallSet, alcove: &RealAlcove, face: &Face) -> Result<()> {
    let faces = faces_of(alcove, walls)?;
    if !faces.contains(face) {
        return Err(Error::NotAFace("face does not belong to the alcove".into()));
    }
    Ok(())
}

/// Compatible pair with `mu` the vertex average of the face.
pub fn find_compatible(
    walls: &WallSet,
    alcove: &RealAlcove,
    face: &Face,
    radius: u32,
) -> Result<CompatiblePair> {
    pick_face(walls, alcove, face)?;
    if face.codim == 0 {
        return Err(Error::NotAFace("the alcove itself is not a proper face".into()));
    }
    let mu = face.witness.clone();
    let fw = face_walls(walls, alcove, &mu);
    let lambda = search_lambda(walls, &fw, &mu, radius)?;
    Ok(CompatiblePair {
        lambda,
        mu,
        alcove: alcove.clone(),
        face: face.clone(),
        face_walls: fw,
    })
}

/// Pair with a prescribed `lambda`, rejected if not compatible.
pub fn pair_with_lambda(
    walls: &WallSet,
    alcove: &RealAlcove,
    face: &Face,
    lambda: RationalVector,
) -> Result<CompatiblePair> {
    let mu = face.witness.clone();
    let fw = face_walls(walls, alcove, &mu);
    let pair = CompatiblePair {
        lambda,
        mu,
        alcove: alcove.clone(),
        face: face.clone(),
        face_walls: fw,
    };
    let report = verify_compatible(walls, &pair, &[]);
    if !report.passed() {
        return Err(Error::NotCompatible(report.summary()));
    }
    Ok(pair)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompatCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompatReport {
    pub checks: Vec<CompatCheck>,
    /// Every sampled `p` above this satisfies the containment.
    pub threshold: BigInt,
}

impl CompatReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn summary(&self) -> String {
        let bad: Vec<String> = self
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        if bad.is_empty() {
            String::from("ok")
        } else {
            bad.join("; ")
        }
    }
}

/// Symbolic conditions, the large `p` containment and spot checks at the
/// given primes.
pub fn verify_compatible(walls: &WallSet, pair: &CompatiblePair, primes: &[BigInt]) -> CompatReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(CompatCheck {
            name: name.into(),
            passed,
            detail,
        })
    };
    let diff = pair.lambda.sub(&pair.mu);
    push("lambda - mu integral", diff.is_integral(), format!("{diff:?}"));

    let mut face_ok = true;
    let mut detail = String::new();
    for f in &pair.face_walls {
        let w = walls.get(f.wall);
        let s = |v: Rational| if f.sign < 0 { -v } else { v };
        let on = s(w.eval(&pair.mu)) == f.offset;
        let past = s(w.eval(&pair.lambda)) > f.threshold;
        if !(on && past) {
            face_ok = false;
            detail.push_str(&format!("wall {} sign {} ", f.wall, f.sign));
        }
    }
    push("face walls", face_ok, detail);

    let through: Vec<(usize, Sense)> = pair.face_walls.iter().map(|f| (f.wall, sense(f.sign))).collect();
    let mut off_ok = true;
    let mut detail = String::new();
    for b in pair.alcove.bounds() {
        if through.contains(&(b.wall, b.sense)) {
            continue;
        }
        if !b.slack(walls, &pair.mu).is_positive() {
            off_ok = false;
            detail.push_str(&format!("wall {} {:?} ", b.wall, b.sense));
        }
    }
    push("mu interior to the face", off_ok, detail);

    let mut threshold = BigInt::from(0);
    match p_alcove_of(&pair.alcove, walls) {
        Ok(pa) => {
            let point = pair.p_point();
            let mut ok = true;
            let mut detail = String::new();
            for b in &pa.bounds {
                let alpha = walls.get(b.wall).alpha.scaled(b.sign);
                let lhs = AffineInP::new(
                    alpha.pair(&RationalVector(point.iter().map(|c| c.constant.clone()).collect())),
                    alpha.pair(&RationalVector(point.iter().map(|c| c.slope.clone()).collect())),
                );
                if lhs.cmp_large_p(&b.rhs) != core::cmp::Ordering::Greater {
                    ok = false;
                    detail.push_str(&format!("wall {} sign {} ", b.wall, b.sign));
                } else {
                    let t = lhs.threshold(&b.rhs);
                    if t > threshold {
                        threshold = t;
                    }
                }
            }
            push("p-point in p-alcove for large p", ok, detail);
            for p in primes {
                let p1 = Rational::from(p + BigInt::one());
                if !pair.lambda.scale(&p1).is_integral() {
                    push(
                        "sample",
                        true,
                        format!("p = {p}: (p+1) lambda not integral, skipped"),
                    );
                    continue;
                }
                let x = pair.p_point_at(p);
                let inside = x.is_integral() && pa.contains(walls, &x, p);
                push("sample", inside, format!("p = {p}: p-point {x:?}"));
            }
        }
        Err(e) => push("p-point in p-alcove for large p", false, format!("{e}")),
    }
    CompatReport { checks, threshold }
}

fn sense(sign: i32) -> Sense {
    if sign < 0 {
        Sense::Le
    } else {
        Sense::Ge
    }
}

/// Alcove on the other side of every wall through `mu`.
pub fn opposite_alcove(walls: &WallSet, alcove: &RealAlcove, mu: &RationalVector) -> Result<RealAlcove> {
    let mut strips = alcove.strips.clone();
    let mut flipped = 0;
    for b in alcove.bounds() {
        if !b.slack(walls, mu).is_zero() {
            continue;
        }
        let w = walls.get(b.wall);
        let (lo, hi) = strips[b.wall].clone();
        strips[b.wall] = match b.sense {
            Sense::Ge => (w.prev_offset(&lo), lo),
            Sense::Le => {
                let above = w.next_offset(&hi);
                (hi, above)
            }
        };
        flipped += 1;
    }
    if flipped == 0 {
        return Err(Error::NotAFace("mu is interior to the alcove".into()));
    }
    from_strips(walls, strips)
}

/// Face of `alcove` whose relative interior contains `mu`.
pub fn face_containing(walls: &WallSet, alcove: &RealAlcove, mu: &RationalVector) -> Result<Face> {
    let active: Vec<usize> = alcove
        .facets
        .iter()
        .enumerate()
        .filter(|(_, f): &(usize, &Inequality)| f.slack(walls, mu).is_zero())
        .map(|(i, _)| i)
        .collect();
    faces_of(alcove, walls)?
        .into_iter()
        .find(|f| f.active == active)
        .ok_or_else(|| Error::NotAFace("mu is not in the closure".into()))
}

/// Compatible pair for the opposite alcove through the same face, with the
/// translation `chi` taking the old `lambda` to the new one. The point
/// reflection `2 mu - lambda` is preferred when it is compatible.
pub fn opposite_pair(
    walls: &WallSet,
    pair: &CompatiblePair,
    radius: u32,
) -> Result<(CompatiblePair, LatticeVector)> {
    let minus = opposite_alcove(walls, &pair.alcove, &pair.mu)?;
    let face = face_containing(walls, &minus, &pair.mu)?;
    let fw = face_walls(walls, &minus, &pair.mu);
    let reflected = pair.mu.scale(&Rational::integer(2)).sub(&pair.lambda);
    let lambda = if lambda_ok(walls, &fw, &reflected) {
        reflected
    } else {
        search_lambda(walls, &fw, &pair.mu, radius)?
    };
    let chi = lambda
        .sub(&pair.lambda)
        .to_lattice()
        .ok_or_else(|| Error::NotIntegral("translation between the pairs".into()))?;
    Ok((
        CompatiblePair {
            lambda,
            mu: pair.mu.clone(),
            alcove: minus,
            face,
            face_walls: fw,
        },
        chi,
    ))
}
