//! Exact linear programming over the rationals.
//!
//! Two independent routes are provided: a dense two-phase simplex with
//! Bland's rule and Fourier-Motzkin elimination. Feasibility questions are
//! answered by elimination in rank at most 3 and by the simplex otherwise.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{Rational, RationalVector};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Kind {
    /// `a . x >= b`
    Ge,
    /// `a . x > b`
    Gt,
    /// `a . x = b`
    Eq,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub kind: Kind,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, kind: Kind, rhs: Rational) -> Self {
        Constraint { coeffs, kind, rhs }
    }

    pub fn ge(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Constraint::new(coeffs, Kind::Ge, rhs)
    }

    pub fn gt(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Constraint::new(coeffs, Kind::Gt, rhs)
    }

    pub fn eq(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Constraint::new(coeffs, Kind::Eq, rhs)
    }

    pub fn holds(&self, x: &RationalVector) -> bool {
        let v: Rational = self.coeffs.iter().zip(&x.0).map(|(a, b)| a * b).sum();
        match self.kind {
            Kind::Ge => v >= self.rhs,
            Kind::Gt => v > self.rhs,
            Kind::Eq => v == self.rhs,
        }
    }

    fn relaxed(&self) -> Constraint {
        let kind = if self.kind == Kind::Gt { Kind::Ge } else { self.kind };
        Constraint::new(self.coeffs.clone(), kind, self.rhs.clone())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, point: RationalVector },
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    blocked: Vec<bool>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = &*v / &piv;
        }
        self.rhs[r] = &self.rhs[r] / &piv;
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for j in 0..self.rows[i].len() {
                if !self.rows[r][j].is_zero() {
                    let d = &f * &self.rows[r][j];
                    self.rows[i][j] -= &d;
                }
            }
            let d = &f * &self.rhs[r];
            self.rhs[i] -= &d;
        }
        self.basis[r] = c;
    }

    /// Minimizes `cost . y`; returns false when unbounded.
    fn optimize(&mut self, cost: &[Rational]) -> bool {
        let n = cost.len();
        loop {
            let mut entering = None;
            for j in 0..n {
                if self.blocked[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut red = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        red -= &(&cost[b] * &self.rows[i][j]);
                    }
                }
                if red.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return true };
            let mut best: Option<(Rational, usize, usize)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if a.is_positive() {
                    let ratio = &self.rhs[i] / a;
                    let better = match &best {
                        None => true,
                        Some((r, _, b)) => ratio < *r || (ratio == *r && self.basis[i] < *b),
                    };
                    if better {
                        best = Some((ratio, i, self.basis[i]));
                    }
                }
            }
            match best {
                None => return false,
                Some((_, r, _)) => self.pivot(r, c),
            }
        }
    }

    fn value(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .zip(&self.rhs)
            .map(|(&b, v)| &cost[b] * v)
            .sum()
    }
}

/// Minimizes `objective . x` over the non-strict constraints, `x` free.
/// Strict constraints are treated as their closures.
pub fn minimize(dim: usize, cons: &[Constraint], objective: &[Rational]) -> LpOutcome {
    // Columns: x+ (dim), x- (dim), one surplus per inequality, one artificial per row.
    let m = cons.len();
    let n_ineq = cons.iter().filter(|c| c.kind != Kind::Eq).count();
    let n_struct = 2 * dim + n_ineq;
    let n = n_struct + m;
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut surplus = 2 * dim;
    for (i, c) in cons.iter().enumerate() {
        let mut row = vec![Rational::zero(); n];
        for k in 0..dim {
            row[k] = c.coeffs[k].clone();
            row[dim + k] = -&c.coeffs[k];
        }
        if c.kind != Kind::Eq {
            row[surplus] = -Rational::one();
            surplus += 1;
        }
        let mut b = c.rhs.clone();
        if b.is_negative() {
            for v in row.iter_mut() {
                *v = -&*v;
            }
            b = -b;
        }
        row[n_struct + i] = Rational::one();
        rows.push(row);
        rhs.push(b);
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: (n_struct..n).collect(),
        blocked: vec![false; n],
    };
    let mut phase1 = vec![Rational::zero(); n];
    for c in phase1.iter_mut().skip(n_struct) {
        *c = Rational::one();
    }
    t.optimize(&phase1);
    if t.value(&phase1).is_positive() {
        return LpOutcome::Infeasible;
    }
    // Drive artificials out of the basis, dropping redundant rows.
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= n_struct {
            match (0..n_struct).find(|&j| !t.rows[r][j].is_zero()) {
                Some(j) => {
                    t.pivot(r, j);
                    r += 1;
                }
                None => {
                    t.rows.remove(r);
                    t.rhs.remove(r);
                    t.basis.remove(r);
                }
            }
        } else {
            r += 1;
        }
    }
    for b in t.blocked.iter_mut().skip(n_struct) {
        *b = true;
    }
    let mut cost = vec![Rational::zero(); n];
    for k in 0..dim {
        cost[k] = objective[k].clone();
        cost[dim + k] = -&objective[k];
    }
    if !t.optimize(&cost) {
        return LpOutcome::Unbounded;
    }
    let mut y = vec![Rational::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        y[b] = t.rhs[i].clone();
    }
    let point = RationalVector((0..dim).map(|k| &y[k] - &y[dim + k]).collect());
    LpOutcome::Optimal {
        value: t.value(&cost),
        point,
    }
}

pub fn maximize(dim: usize, cons: &[Constraint], objective: &[Rational]) -> LpOutcome {
    let neg: Vec<Rational> = objective.iter().map(|a| -a).collect();
    match minimize(dim, cons, &neg) {
        LpOutcome::Optimal { value, point } => LpOutcome::Optimal { value: -value, point },
        other => other,
    }
}

/// A point satisfying every constraint, strict ones included, found by
/// maximizing a common slack on the strict rows.
pub fn interior_point(dim: usize, cons: &[Constraint]) -> Option<RationalVector> {
    if !cons.iter().any(|c| c.kind == Kind::Gt) {
        return match minimize(dim, cons, &vec![Rational::zero(); dim]) {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        };
    }
    let mut ext = Vec::with_capacity(cons.len() + 1);
    for c in cons {
        let mut coeffs = c.coeffs.clone();
        let slack = if c.kind == Kind::Gt {
            -Rational::one()
        } else {
            Rational::zero()
        };
        coeffs.push(slack);
        ext.push(Constraint::new(coeffs, c.relaxed().kind, c.rhs.clone()));
    }
    let mut cap = vec![Rational::zero(); dim];
    cap.push(-Rational::one());
    ext.push(Constraint::ge(cap, -Rational::one()));
    let mut obj = vec![Rational::zero(); dim];
    obj.push(Rational::one());
    match maximize(dim + 1, &ext, &obj) {
        LpOutcome::Optimal { value, mut point } if value.is_positive() => {
            point.0.pop();
            Some(point)
        }
        _ => None,
    }
}

pub fn simplex_feasible(dim: usize, cons: &[Constraint]) -> bool {
    interior_point(dim, cons).is_some()
}

/// Feasibility by Fourier-Motzkin elimination. Strictness is tracked exactly.
pub fn fm_feasible(dim: usize, cons: &[Constraint]) -> bool {
    let mut rows: BTreeSet<(Vec<Rational>, bool, Rational)> = BTreeSet::new();
    for c in cons {
        match c.kind {
            Kind::Eq => {
                push_row(&mut rows, c.coeffs.clone(), false, c.rhs.clone());
                push_row(
                    &mut rows,
                    c.coeffs.iter().map(|a| -a).collect(),
                    false,
                    -&c.rhs,
                );
            }
            Kind::Ge => push_row(&mut rows, c.coeffs.clone(), false, c.rhs.clone()),
            Kind::Gt => push_row(&mut rows, c.coeffs.clone(), true, c.rhs.clone()),
        }
    }
    for k in (0..dim).rev() {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut next = BTreeSet::new();
        for row in rows {
            let a = row.0[k].clone();
            if a.is_positive() {
                pos.push(row);
            } else if a.is_negative() {
                neg.push(row);
            } else {
                next.insert(row);
            }
        }
        for (pa, ps, pb) in &pos {
            for (na, ns, nb) in &neg {
                // pa.x >= pb with pa[k] > 0 and na.x >= nb with na[k] < 0.
                let u = -&na[k];
                let v = pa[k].clone();
                let coeffs: Vec<Rational> = pa
                    .iter()
                    .zip(na)
                    .map(|(x, y)| &(x * &u) + &(y * &v))
                    .collect();
                let rhs = &(pb * &u) + &(nb * &v);
                push_row(&mut next, coeffs, *ps || *ns, rhs);
            }
        }
        rows = next;
    }
    rows.iter().all(|(_, strict, b)| {
        if *strict {
            b.is_negative()
        } else {
            !b.is_positive()
        }
    })
}

fn push_row(
    rows: &mut BTreeSet<(Vec<Rational>, bool, Rational)>,
    coeffs: Vec<Rational>,
    strict: bool,
    rhs: Rational,
) {
    let lead = coeffs.iter().find(|a| !a.is_zero()).map(Rational::abs);
    match lead {
        Some(l) => {
            let coeffs = coeffs.iter().map(|a| a / &l).collect();
            rows.insert((coeffs, strict, &rhs / &l));
        }
        None => {
            rows.insert((coeffs, strict, rhs));
        }
    }
}

pub fn feasible(dim: usize, cons: &[Constraint]) -> bool {
    if dim <= 3 && cons.len() <= 16 {
        fm_feasible(dim, cons)
    } else {
        simplex_feasible(dim, cons)
    }
}

/// Whether `target` is implied by `others`.
pub fn implied(dim: usize, others: &[Constraint], target: &Constraint) -> bool {
    let negations: Vec<Constraint> = match target.kind {
        Kind::Ge => vec![negate(target, Kind::Gt)],
        Kind::Gt => vec![negate(target, Kind::Ge)],
        Kind::Eq => vec![
            negate(target, Kind::Gt),
            Constraint::new(target.coeffs.clone(), Kind::Gt, target.rhs.clone()),
        ],
    };
    negations.iter().all(|n| {
        let mut sys = others.to_vec();
        sys.push(n.clone());
        !feasible(dim, &sys)
    })
}

fn negate(c: &Constraint, kind: Kind) -> Constraint {
    Constraint::new(c.coeffs.iter().map(|a| -a).collect(), kind, -&c.rhs)
}

/// Solves the square system `a x = b`, returning `None` when singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let d = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v = &*v / &d;
        }
        let pivot = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x -= &(&f * y);
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap_or_default()).collect())
}

/// Rank of a list of row vectors.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &(&f * y);
                }
            }
        }
        r += 1;
    }
    r
}
