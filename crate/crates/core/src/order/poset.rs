use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{AffineInP, Rational};
use crate::error::{Error, Result};

/// A simple `L(x, kappa)`: fixed point index and torus character.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub point: usize,
    pub kappa: AffineInP,
}

impl Label {
    pub fn new(point: usize, kappa: AffineInP) -> Label {
        Label { point, kappa }
    }

    pub fn concrete(point: usize, kappa: BigInt) -> Label {
        Label::new(point, AffineInP::constant(Rational::from_bigint(kappa)))
    }

    /// Integer value of a concrete label.
    pub fn value(&self) -> Option<BigInt> {
        if self.kappa.is_constant() {
            self.kappa.constant.to_integer()
        } else {
            None
        }
    }

    /// Value at `p`, if integral.
    pub fn value_at(&self, p: &BigInt) -> Option<BigInt> {
        self.kappa.eval_at(p).to_integer()
    }

    /// `(x, kappa + z p)` for a concrete `p`.
    pub fn shift(&self, z: i64, p: &BigInt) -> Label {
        let d = Rational::from_bigint(p * BigInt::from(z));
        Label::new(self.point, self.kappa.add_constant(&d))
    }

    /// `(x, kappa + z p)` with `p` kept symbolic.
    pub fn shift_symbolic(&self, z: i64) -> Label {
        Label::new(self.point, self.kappa.add_slope(&Rational::integer(z)))
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "({}, {v})", self.point),
            None => write!(f, "({}, {:?})", self.point, self.kappa),
        }
    }
}

pub fn shift(l: &Label, z: i64, p: &BigInt) -> Label {
    l.shift(z, p)
}

/// Fixed width bit set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct Bits(Vec<u64>);

impl Bits {
    pub(crate) fn new(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }

    pub(crate) fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub(crate) fn or_with(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= *b;
        }
    }

    pub(crate) fn and_not(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !*b;
        }
    }

    pub(crate) fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(64 * k + t)
            })
        })
    }
}

/// Finite window of a labelled strict partial order with a shift of period `p`.
///
/// The strict order is stored transitively closed; covers are derived.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabeledPoset {
    pub period: BigInt,
    pub labels: Vec<Label>,
    above: Vec<Bits>,
    index: BTreeMap<Label, usize>,
    covers: Vec<(usize, usize)>,
    /// Equivariant block of each label, when known.
    pub blocks: Option<Vec<BigInt>>,
}

impl LabeledPoset {
    /// Build from a relation that is already a strict partial order.
    pub fn from_closed_relation(
        period: BigInt,
        labels: Vec<Label>,
        less: impl Fn(usize, usize) -> bool,
    ) -> Result<LabeledPoset> {
        let n = labels.len();
        let mut above = vec![Bits::new(n); n];
        for (i, row) in above.iter_mut().enumerate() {
            for j in 0..n {
                if i != j && less(i, j) {
                    row.set(j);
                }
            }
        }
        Self::assemble(period, labels, above)
    }

    /// Build from any acyclic relation, taking its transitive closure.
    pub fn from_relation(
        period: BigInt,
        labels: Vec<Label>,
        less: impl Fn(usize, usize) -> bool,
    ) -> Result<LabeledPoset> {
        let n = labels.len();
        let mut above = vec![Bits::new(n); n];
        for (i, row) in above.iter_mut().enumerate() {
            for j in 0..n {
                if less(i, j) {
                    row.set(j);
                }
            }
        }
        for k in 0..n {
            let rk = above[k].clone();
            for row in above.iter_mut() {
                if row.get(k) {
                    row.or_with(&rk);
                }
            }
        }
        Self::assemble(period, labels, above)
    }

    pub(crate) fn from_closure(period: BigInt, labels: Vec<Label>, above: Vec<Bits>) -> Result<LabeledPoset> {
        Self::assemble(period, labels, above)
    }

    fn assemble(period: BigInt, labels: Vec<Label>, above: Vec<Bits>) -> Result<LabeledPoset> {
        let n = labels.len();
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate label {l:?}")));
            }
        }
        for (i, row) in above.iter().enumerate() {
            if row.get(i) {
                return Err(Error::Invalid(format!("relation has a cycle through {:?}", labels[i])));
            }
        }
        let mut covers = Vec::new();
        for i in 0..n {
            let mut c = above[i].clone();
            for k in above[i].iter() {
                c.and_not(&above[k]);
            }
            covers.extend(c.iter().map(|j| (i, j)));
        }
        Ok(LabeledPoset {
            period,
            labels,
            above,
            index,
            covers,
            blocks: None,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, l: &Label) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.above[i].get(j)
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        i == j || self.lt(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.lt(i, j) || self.lt(j, i)
    }

    /// Labels strictly above `i`.
    pub fn upper(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.above[i].iter()
    }

    pub fn relation_size(&self) -> usize {
        self.above.iter().map(Bits::count).sum()
    }

    /// Hasse diagram edges `(lower, upper)`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Index of the shift of label `i` by `z`, if it lies in the window.
    pub fn shifted(&self, i: usize, z: i64) -> Option<usize> {
        self.index_of(&self.labels[i].shift(z, &self.period))
    }

    /// Number of labels in the longest chain.
    pub fn longest_chain(&self) -> usize {
        let n = self.len();
        let mut indeg = vec![0usize; n];
        for &(_, j) in &self.covers {
            indeg[j] += 1;
        }
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(i, j) in &self.covers {
            out[i].push(j);
        }
        let mut depth = vec![1usize; n];
        let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        while let Some(i) = stack.pop() {
            for &j in &out[i] {
                depth[j] = depth[j].max(depth[i] + 1);
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    stack.push(j);
                }
            }
        }
        depth.into_iter().max().unwrap_or(0)
    }

    /// Orbit of each label under the shift, keyed by `(x, kappa mod p)`.
    pub fn orbits(&self) -> BTreeMap<(usize, BigInt), Vec<usize>> {
        let mut m: BTreeMap<(usize, BigInt), Vec<usize>> = BTreeMap::new();
        for (i, l) in self.labels.iter().enumerate() {
            let key = match l.value() {
                Some(v) if self.period.is_positive() => v.mod_floor(&self.period),
                Some(v) => v,
                None => BigInt::zero(),
            };
            m.entry((l.point, key)).or_default().push(i);
        }
        m
    }

    /// Irreflexive and transitive.
    pub fn is_strict_order(&self) -> bool {
        (0..self.len()).all(|i| {
            !self.lt(i, i)
                && self.upper(i).all(|j| {
                    let mut r = self.above[j].clone();
                    r.and_not(&self.above[i]);
                    r.count() == 0
                })
        })
    }
}
