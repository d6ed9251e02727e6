use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::arith::{LatticeVector, Rational, RationalVector, WallSet};
use crate::error::{Error, Result};
use crate::lp::{self, Constraint, Kind};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sense {
    Ge,
    Le,
}

impl Sense {
    pub fn sign(self) -> i32 {
        match self {
            Sense::Ge => 1,
            Sense::Le => -1,
        }
    }
}

/// `<alpha_wall, x> >= offset` or `<alpha_wall, x> <= offset`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Inequality {
    pub wall: usize,
    pub sense: Sense,
    pub offset: Rational,
}

impl Inequality {
    pub fn constraint(&self, walls: &WallSet, kind: Kind) -> Constraint {
        let s = self.sense.sign();
        let a = walls.get(self.wall).alpha.scaled(s).to_rational();
        let rhs = if s < 0 { -&self.offset } else { self.offset.clone() };
        Constraint::new(a.0, kind, rhs)
    }

    /// Value of `sign * <alpha, x> - sign * offset`, nonnegative on the closed side.
    pub fn slack(&self, walls: &WallSet, x: &RationalVector) -> Rational {
        let v = &walls.get(self.wall).eval(x) - &self.offset;
        if self.sense == Sense::Le {
            -v
        } else {
            v
        }
    }
}

/// Connected component of the complement of all real hyperplanes.
///
/// `strips[w] = (lo, hi)` are the consecutive offsets of wall `w` enclosing the
/// alcove; they determine it. `facets` is the irredundant subsystem.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RealAlcove {
    pub strips: Vec<(Rational, Rational)>,
    pub facets: Vec<Inequality>,
}

impl RealAlcove {
    /// Every strip bound, lower bounds before upper bounds per wall.
    pub fn bounds(&self) -> Vec<Inequality> {
        let mut out = Vec::with_capacity(2 * self.strips.len());
        for (w, (lo, hi)) in self.strips.iter().enumerate() {
            out.push(Inequality {
                wall: w,
                sense: Sense::Ge,
                offset: lo.clone(),
            });
            out.push(Inequality {
                wall: w,
                sense: Sense::Le,
                offset: hi.clone(),
            });
        }
        out
    }

    pub fn constraints(&self, walls: &WallSet, kind: Kind) -> Vec<Constraint> {
        self.bounds().iter().map(|b| b.constraint(walls, kind)).collect()
    }

    pub fn facet_constraints(&self, walls: &WallSet, kind: Kind) -> Vec<Constraint> {
        self.facets.iter().map(|b| b.constraint(walls, kind)).collect()
    }

    pub fn contains(&self, walls: &WallSet, x: &RationalVector) -> bool {
        self.bounds().iter().all(|b| b.slack(walls, x).is_positive())
    }

    pub fn contains_closed(&self, walls: &WallSet, x: &RationalVector) -> bool {
        self.bounds().iter().all(|b| !b.slack(walls, x).is_negative())
    }

    pub fn translate(&self, walls: &WallSet, v: &LatticeVector) -> RealAlcove {
        let shift: Vec<Rational> = walls
            .walls
            .iter()
            .map(|w| Rational::from(w.alpha.pair_lattice(v)))
            .collect();
        RealAlcove {
            strips: self
                .strips
                .iter()
                .zip(&shift)
                .map(|((lo, hi), s)| (lo + s, hi + s))
                .collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Inequality {
                    wall: f.wall,
                    sense: f.sense,
                    offset: &f.offset + &shift[f.wall],
                })
                .collect(),
        }
    }

    /// Vertices of the closure, sorted.
    pub fn vertices(&self, walls: &WallSet) -> Vec<RationalVector> {
        let d = walls.rank;
        let rows: Vec<Constraint> = self.facet_constraints(walls, Kind::Ge);
        let all = self.constraints(walls, Kind::Ge);
        let mut out = BTreeSet::new();
        for subset in combinations(rows.len(), d) {
            let a: Vec<Vec<Rational>> = subset.iter().map(|&i| rows[i].coeffs.clone()).collect();
            let b: Vec<Rational> = subset.iter().map(|&i| rows[i].rhs.clone()).collect();
            if let Some(x) = lp::solve(&a, &b) {
                let x = RationalVector(x);
                if all.iter().all(|c| c.holds(&x)) {
                    out.insert(x);
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn is_bounded(&self, walls: &WallSet) -> bool {
        let d = walls.rank;
        let cone: Vec<Constraint> = self
            .facet_constraints(walls, Kind::Ge)
            .into_iter()
            .map(|c| Constraint::ge(c.coeffs, Rational::zero()))
            .collect();
        for j in 0..d {
            for s in [1i64, -1] {
                let mut sys = cone.clone();
                let mut e = alloc::vec![Rational::zero(); d];
                e[j] = Rational::integer(s);
                sys.push(Constraint::ge(e, Rational::one()));
                if lp::feasible(d, &sys) {
                    return false;
                }
            }
        }
        true
    }

    /// Interior point: average of the vertices when bounded.
    pub fn witness(&self, walls: &WallSet) -> RationalVector {
        let v = self.vertices(walls);
        if !v.is_empty() && self.is_bounded(walls) {
            return average(&v);
        }
        lp::interior_point(walls.rank, &self.constraints(walls, Kind::Gt))
            .expect("alcove has an interior point")
    }

    /// Translate of the alcove whose witness lies in `[0, 1)^d`, with the shift used.
    pub fn reduce_mod_lattice(&self, walls: &WallSet) -> (RealAlcove, LatticeVector) {
        let shift = self.witness(walls).floor();
        (self.translate(walls, &shift.neg()), shift)
    }

    /// The alcove across the facet `facet` (an index into `facets`).
    pub fn across(&self, walls: &WallSet, facet: usize) -> Result<RealAlcove> {
        let f = &self.facets[facet];
        let w = walls.get(f.wall);
        let mut strips = self.strips.clone();
        let (lo, hi) = strips[f.wall].clone();
        strips[f.wall] = match f.sense {
            Sense::Ge => (w.prev_offset(&lo), lo),
            Sense::Le => {
                let above = w.next_offset(&hi);
                (hi, above)
            }
        };
        from_strips(walls, strips)
    }
}

fn average(v: &[RationalVector]) -> RationalVector {
    let n = Rational::integer(v.len() as i64);
    let d = v[0].dim();
    let mut s = RationalVector::zero(d);
    for x in v {
        s = s.add(x);
    }
    s.scale(&n.recip())
}

pub(crate) fn average_of(v: &[RationalVector]) -> RationalVector {
    average(v)
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Builds an alcove from its strips, checking nonemptiness and pruning redundant bounds.
pub fn from_strips(walls: &WallSet, strips: Vec<(Rational, Rational)>) -> Result<RealAlcove> {
    let mut a = RealAlcove {
        strips,
        facets: Vec::new(),
    };
    let d = walls.rank;
    if !lp::feasible(d, &a.constraints(walls, Kind::Gt)) {
        return Err(Error::Empty("strips do not meet".into()));
    }
    let mut kept = a.bounds();
    let mut i = 0;
    while i < kept.len() {
        let others: Vec<Constraint> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, b)| b.constraint(walls, Kind::Ge))
            .collect();
        if lp::implied(d, &others, &kept[i].constraint(walls, Kind::Ge)) {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    a.facets = kept;
    Ok(a)
}

/// The alcove containing `x`, or the wall it lies on.
pub fn real_alcove_of(walls: &WallSet, x: &RationalVector) -> Result<RealAlcove> {
    x.check_dim(walls.rank)?;
    let mut strips = Vec::with_capacity(walls.len());
    for w in &walls.walls {
        let v = w.eval(x);
        match w.bracket(&v) {
            Some(s) => strips.push(s),
            None => return Err(Error::OnWall { wall: w.id, offset: v }),
        }
    }
    from_strips(walls, strips)
}

/// Every alcove meeting the open box `lo < x_i < hi`, sorted.
pub fn alcoves_in_box(walls: &WallSet, lo: &Rational, hi: &Rational) -> Result<Vec<RealAlcove>> {
    let d = walls.rank;
    if lo >= hi {
        return Err(Error::Invalid("empty box".into()));
    }
    let boxed = |a: &RealAlcove| {
        let mut sys = a.constraints(walls, Kind::Gt);
        for j in 0..d {
            let mut e = alloc::vec![Rational::zero(); d];
            e[j] = Rational::one();
            sys.push(Constraint::gt(e.clone(), lo.clone()));
            sys.push(Constraint::gt(e.iter().map(|v| -v).collect(), -hi));
        }
        lp::feasible(d, &sys)
    };
    let start = generic_point(walls, lo, hi)?;
    let first = real_alcove_of(walls, &start)?;
    let mut seen: BTreeMap<Vec<(Rational, Rational)>, RealAlcove> = BTreeMap::new();
    let mut queue = VecDeque::new();
    seen.insert(first.strips.clone(), first.clone());
    queue.push_back(first);
    while let Some(a) = queue.pop_front() {
        for f in 0..a.facets.len() {
            let b = a.across(walls, f)?;
            if seen.contains_key(&b.strips) || !boxed(&b) {
                continue;
            }
            seen.insert(b.strips.clone(), b.clone());
            queue.push_back(b);
        }
    }
    Ok(seen.into_values().collect())
}

fn generic_point(walls: &WallSet, lo: &Rational, hi: &Rational) -> Result<RationalVector> {
    let d = walls.rank;
    let mid = (lo + hi) / Rational::integer(2);
    let width = hi - lo;
    const PRIMES: [i64; 8] = [101, 103, 107, 109, 113, 127, 131, 137];
    for k in 1..200i64 {
        let x = RationalVector(
            (0..d)
                .map(|j| {
                    let den = PRIMES[j % PRIMES.len()] * (j as i64 / PRIMES.len() as i64 + 1);
                    &mid + &(&width * &Rational::new(k % 37 + j as i64, 3 * den))
                })
                .collect(),
        );
        if walls.walls.iter().all(|w| w.bracket(&w.eval(&x)).is_some()) {
            return Ok(x);
        }
    }
    Err(Error::Invalid("no generic point found in box".into()))
}
