//! Torus fixed point data: points with an affine highest weight function of
//! the parameter, plus the walls of the parameter space.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{Covector, LatticeVector, Rational, RationalVector, Wall, WallSet};
use crate::error::{Error, Result};
use crate::partition::{partitions, Partition};

/// A fixed point `x` with `c(x, lambda) = c_const + <c_linear, lambda>`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixedPoint {
    pub id: String,
    pub c_const: Rational,
    pub c_linear: RationalVector,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixedPointInstance {
    pub name: String,
    pub rank: usize,
    pub points: Vec<FixedPoint>,
    pub walls: WallSet,
}

impl FixedPointInstance {
    pub fn new(name: String, points: Vec<FixedPoint>, walls: WallSet) -> Result<Self> {
        let rank = walls.rank;
        let mut ids = BTreeSet::new();
        for x in &points {
            x.c_linear.check_dim(rank)?;
            if !ids.insert(x.id.clone()) {
                return Err(Error::Invalid(format!("duplicate point id {}", x.id)));
            }
        }
        if points.is_empty() {
            return Err(Error::Invalid("instance has no points".into()));
        }
        Ok(FixedPointInstance {
            name,
            rank,
            points,
            walls,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.points.iter().position(|x| x.id == id)
    }

    pub fn c_value(&self, x: usize, lambda: &RationalVector) -> Rational {
        let pt = &self.points[x];
        &pt.c_const + &pt.c_linear.dot(lambda)
    }

    /// Weight of the translation by `chi` at `x`.
    pub fn wt_chi(&self, x: usize, chi: &LatticeVector) -> Rational {
        self.points[x].c_linear.dot(&chi.to_rational())
    }

    /// Whether `c(x, .) - c(x', .)` is an integer at `lambda`.
    pub fn same_h_block(&self, x: usize, y: usize, lambda: &RationalVector) -> bool {
        self.c_value(x, lambda).congruent(&self.c_value(y, lambda))
    }
}

pub fn cont(mu: &Partition) -> i64 {
    mu.content()
}

pub fn n_stat(mu: &Partition) -> i64 {
    mu.n_stat()
}

/// Proper fractions `a/b` with `1 <= a < b <= n`, ascending and distinct.
pub fn proper_fractions(n: u32) -> Vec<Rational> {
    let mut s = BTreeSet::new();
    for b in 2..=n as i64 {
        for a in 1..b {
            s.insert(Rational::new(a, b));
        }
    }
    s.into_iter().collect()
}

/// Wall of the Hilbert scheme parameter in the `c` coordinate: offsets
/// `-a/b + k` for `|k| <= ell`.
pub fn hilb_c_walls(n: u32, ell: u32) -> Result<WallSet> {
    hilb_walls_shifted(n, ell, &Rational::zero())
}

fn hilb_walls_shifted(n: u32, ell: u32, shift: &Rational) -> Result<WallSet> {
    if n < 2 {
        return Err(Error::Invalid("the Hilbert scheme needs n >= 2".into()));
    }
    let mut sigma = Vec::new();
    for f in proper_fractions(n) {
        for k in -(ell as i64)..=ell as i64 {
            sigma.push(&(&Rational::integer(k) - &f) + shift);
        }
    }
    sigma.sort();
    WallSet::new(1, vec![Wall::new(0, Covector::from_i64(&[1]), sigma)?])
}

pub fn lambda_from_c(c: &Rational) -> Rational {
    c + &Rational::new(1, 2)
}

pub fn c_from_lambda(lambda: &Rational) -> Rational {
    lambda - &Rational::new(1, 2)
}

/// Hilbert scheme of `n` points on the plane, in the coordinate
/// `lambda = c + 1/2` so that the lattice is the integers.
///
/// `c(mu, lambda) = c * cont(mu) - n(mu)`.
pub fn hilb_instance(n: u32, ell: u32) -> Result<FixedPointInstance> {
    let walls = hilb_walls_shifted(n, ell, &Rational::new(1, 2))?;
    let points = partitions(n)
        .into_iter()
        .map(|mu| {
            let k = mu.content();
            FixedPoint {
                id: mu.to_id(),
                c_const: &Rational::new(-k, 2) - &Rational::integer(mu.n_stat()),
                c_linear: RationalVector::from_i64(&[k]),
            }
        })
        .collect();
    FixedPointInstance::new(format!("hilb(n={n}, ell={ell})"), points, walls)
}

/// Permutations of `1..=n` in lexicographic order, one-line notation.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// `rho` dual of type `A_{n-1}` in the basis `e_i`: `(n + 1)/2 - i`.
pub fn rho_check(n: usize) -> Vec<Rational> {
    (1..=n as i64)
        .map(|i| Rational::new(n as i64 + 1 - 2 * i, 2))
        .collect()
}

/// Coroot walls of type `A_{n-1}` in fundamental weight coordinates.
pub fn type_a_walls(n: usize) -> Result<WallSet> {
    if n < 2 {
        return Err(Error::Invalid("type A needs n >= 2".into()));
    }
    let d = n - 1;
    let mut walls = Vec::new();
    for i in 0..d {
        for j in i + 1..=d {
            let mut a = vec![0i64; d];
            for v in a.iter_mut().take(j).skip(i) {
                *v = 1;
            }
            walls.push(Wall::new(walls.len(), Covector::from_i64(&a), vec![Rational::zero()])?);
        }
    }
    WallSet::new(d, walls)
}

/// Fixed points of the flag variety of type `A_{n-1}` under a regular
/// cocharacter `nu` (default `rho` dual), `c(w, lambda) = <w lambda, nu>`.
///
/// Coordinates are `x_i = <alpha_i^vee, lambda>`.
pub fn weyl_a_instance(n: usize, nu: Option<Vec<Rational>>) -> Result<FixedPointInstance> {
    let walls = type_a_walls(n)?;
    let nu = nu.unwrap_or_else(|| rho_check(n));
    if nu.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: nu.len(),
        });
    }
    let distinct: BTreeSet<&Rational> = nu.iter().collect();
    if distinct.len() != n {
        return Err(Error::NotRegular("nu has repeated coordinates".into()));
    }
    let points = permutations(n)
        .into_iter()
        .map(|w| {
            let mut acc = Rational::zero();
            let lin: Vec<Rational> = (0..n - 1)
                .map(|k| {
                    acc += &nu[w[k] - 1];
                    acc.clone()
                })
                .collect();
            let id: String = if n < 10 {
                w.iter().map(|v| char::from(b'0' + *v as u8)).collect()
            } else {
                w.iter().map(|v| format!("{v}")).collect::<Vec<_>>().join(".")
            };
            FixedPoint {
                id,
                c_const: Rational::zero(),
                c_linear: RationalVector(lin),
            }
        })
        .collect();
    FixedPointInstance::new(format!("weyl_a(n={n})"), points, walls)
}

/// `lambda` in the basis `e_i`, normalized by `lambda_n = 0`.
pub fn weight_to_epsilon(x: &RationalVector) -> Vec<Rational> {
    let d = x.dim();
    let mut out = vec![Rational::zero(); d + 1];
    for i in (0..d).rev() {
        out[i] = &out[i + 1] + &x.0[i];
    }
    out
}

pub fn epsilon_to_weight(e: &[Rational]) -> RationalVector {
    RationalVector((0..e.len() - 1).map(|i| &e[i] - &e[i + 1]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    #[test]
    fn hilb_small_cases() {
        let h = hilb_instance(2, 0).unwrap();
        assert_eq!(h.walls.get(0).sigma(), &[q("0")]);
        let ids: Vec<&str> = h.points.iter().map(|x| x.id.as_str()).collect();
        assert_eq!(ids, vec!["2", "1+1"]);
        // At c = 3/2: c(2) = 3/2, c(1+1) = -3/2 - 1.
        let lam = RationalVector(vec![lambda_from_c(&q("3/2"))]);
        assert_eq!(h.c_value(0, &lam), q("3/2"));
        assert_eq!(h.c_value(1, &lam), q("-5/2"));
        let h3 = hilb_c_walls(3, 1).unwrap();
        assert_eq!(h3.get(0).sigma().len(), 9);
        assert_eq!(hilb_instance(3, 0).unwrap().len(), 3);
    }

    #[test]
    fn weyl_a2() {
        let inst = weyl_a_instance(3, None).unwrap();
        assert_eq!(inst.len(), 6);
        assert_eq!(inst.walls.len(), 3);
        let rho = RationalVector::from_i64(&[1, 1]);
        let values: Vec<Rational> = (0..6).map(|w| inst.c_value(w, &rho)).collect();
        assert_eq!(values[0], q("2"));
        assert_eq!(values[5], q("-2"));
        assert_eq!(inst.points[0].c_linear, RationalVector::from_i64(&[1, 1]));
        assert!(weyl_a_instance(3, Some(vec![q("1"), q("1"), q("0")])).is_err());
    }

    #[test]
    fn weyl_value_depends_on_w_lambda() {
        let n = 4;
        let inst = weyl_a_instance(n, None).unwrap();
        let lam = RationalVector(vec![q("1/3"), q("-2"), q("5/7")]);
        let eps = weight_to_epsilon(&lam);
        let mut base: Vec<Rational> = (0..inst.len()).map(|w| inst.c_value(w, &lam)).collect();
        base.sort();
        for v in permutations(n) {
            let permuted: Vec<Rational> = (0..n).map(|i| eps[v[i] - 1].clone()).collect();
            let lv = epsilon_to_weight(&permuted);
            let mut vals: Vec<Rational> = (0..inst.len()).map(|w| inst.c_value(w, &lv)).collect();
            vals.sort();
            assert_eq!(vals, base);
        }
    }

    #[test]
    fn even_rank_needs_half_integral_linear_terms() {
        let inst = weyl_a_instance(4, None).unwrap();
        assert!(inst.points.iter().any(|x| !x.c_linear.is_integral()));
    }
}
