use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;

use super::poset::{Label, LabeledPoset};
use crate::arith::{AffineInP, Rational, RationalVector};
use crate::compat::CompatiblePair;
use crate::error::{Error, Result};
use crate::fixed_points::FixedPointInstance;
use crate::geometry::Check;

/// Representative `kappa_0(p)` of the zero block at `x` for the parameter
/// `lambda + p mu`: constant term `c(x, lambda)` and slope
/// `c(x, lambda) + floor(c(x, mu) - c(x, lambda))`.
///
/// It is congruent to `(p + 1) c(x, lambda + p mu)` modulo `p` whenever that is
/// integral, and translating `lambda` by an integral weight only moves the
/// constant term.
pub fn kappa0(inst: &FixedPointInstance, x: usize, lambda: &RationalVector, mu: &RationalVector) -> AffineInP {
    let a = inst.c_value(x, lambda);
    let b = inst.c_value(x, mu);
    let k = Rational::from_bigint((&b - &a).floor());
    let slope = &a + &k;
    AffineInP::new(a, slope)
}

/// Pre-order on labels `(x, kappa_0(x) + beta + m p)` comparing slopes in `p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PreOrder {
    pub lambda: RationalVector,
    pub mu: RationalVector,
    pub window: (i64, i64),
    pub blocks: Vec<i64>,
    pub labels: Vec<Label>,
    pub beta: Vec<i64>,
    pub classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    index: BTreeMap<Label, usize>,
    reversed: bool,
}

impl PreOrder {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, l: &Label) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    fn slope_cmp(&self, i: usize, j: usize) -> Ordering {
        let o = self.labels[i].kappa.slope.cmp(&self.labels[j].kappa.slope);
        if self.reversed {
            o.reverse()
        } else {
            o
        }
    }

    /// `i ⪯ j`.
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.beta[i] == self.beta[j] && self.slope_cmp(i, j) != Ordering::Greater
    }

    /// `i ≺ j`.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.beta[i] == self.beta[j] && self.slope_cmp(i, j) == Ordering::Less
    }

    /// Comparison of two labels that need not belong to the window.
    pub fn lt_labels(&self, a: &Label, b: &Label, beta_a: i64, beta_b: i64) -> bool {
        let o = a.kappa.slope.cmp(&b.kappa.slope);
        let o = if self.reversed { o.reverse() } else { o };
        beta_a == beta_b && o == Ordering::Less
    }

    pub fn class_le(&self, c: usize, d: usize) -> bool {
        self.le(self.classes[c][0], self.classes[d][0])
    }

    pub fn class_lt(&self, c: usize, d: usize) -> bool {
        self.lt(self.classes[c][0], self.classes[d][0])
    }

    /// Union of classes closed under `⪯`-betweenness.
    pub fn is_interval(&self, classes: &[usize]) -> bool {
        (0..self.classes.len()).all(|c| {
            classes.contains(&c)
                || !classes
                    .iter()
                    .any(|&a| classes.iter().any(|&b| self.class_le(a, c) && self.class_le(c, b)))
        })
    }

    /// Same pre-order with the slope comparison reversed.
    pub fn reversed(&self) -> PreOrder {
        let mut r = self.clone();
        r.reversed = !r.reversed;
        r
    }

    /// Least and greatest `kappa(p)` over the window.
    pub fn kappa_range(&self, p: &BigInt) -> Option<(Rational, Rational)> {
        let vals: Vec<Rational> = self.labels.iter().map(|l| l.kappa.eval_at(p)).collect();
        let lo = vals.iter().min()?.clone();
        let hi = vals.iter().max()?.clone();
        Some((lo, hi))
    }
}

/// Pre-order of a compatible pair over `m` in `window` and the given blocks.
pub fn ss_preorder(
    inst: &FixedPointInstance,
    pair: &CompatiblePair,
    window: (i64, i64),
    blocks: &[i64],
) -> Result<PreOrder> {
    if !pair.lambda.sub(&pair.mu).is_integral() {
        return Err(Error::NotCompatible(format!(
            "lambda - mu = {:?} is not integral",
            pair.lambda.sub(&pair.mu)
        )));
    }
    for f in &pair.face_walls {
        let v = inst.walls.get(f.wall).eval(&pair.lambda);
        let v = if f.sign < 0 { -v } else { v };
        if v <= f.threshold {
            return Err(Error::NotCompatible(format!("wall {} is not cleared", f.wall)));
        }
    }
    ss_preorder_at(inst, &pair.lambda, &pair.mu, window, blocks)
}

/// Pre-order for the line `lambda + p mu` without compatibility checks.
pub fn ss_preorder_at(
    inst: &FixedPointInstance,
    lambda: &RationalVector,
    mu: &RationalVector,
    window: (i64, i64),
    blocks: &[i64],
) -> Result<PreOrder> {
    lambda.check_dim(inst.rank)?;
    mu.check_dim(inst.rank)?;
    let (m1, m2) = window;
    if m1 >= m2 {
        return Err(Error::Invalid(format!("empty window [{m1}, {m2})")));
    }
    if blocks.is_empty() {
        return Err(Error::Invalid("no blocks requested".into()));
    }
    let k0: Vec<AffineInP> = (0..inst.len()).map(|x| kappa0(inst, x, lambda, mu)).collect();
    let mut labels = Vec::new();
    let mut beta = Vec::new();
    for &b in blocks {
        for m in m1..m2 {
            for (x, k) in k0.iter().enumerate() {
                let kappa = k.add_constant(&Rational::integer(b)).add_slope(&Rational::integer(m));
                labels.push(Label::new(x, kappa));
                beta.push(b);
            }
        }
    }
    let mut index = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::Invalid(format!("blocks repeat: label {l:?}")));
        }
    }
    let mut pre = PreOrder {
        lambda: lambda.clone(),
        mu: mu.clone(),
        window,
        blocks: blocks.to_vec(),
        labels,
        beta,
        classes: Vec::new(),
        class_of: Vec::new(),
        index,
        reversed: false,
    };
    let classes = closure_classes(&pre);
    let mut class_of = vec![0; pre.len()];
    for (c, members) in classes.iter().enumerate() {
        for &i in members {
            class_of[i] = c;
        }
    }
    pre.classes = classes;
    pre.class_of = class_of;
    Ok(pre)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut i = i;
        while self.0[i] != r {
            let next = self.0[i];
            self.0[i] = r;
            i = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    fn groups(mut self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut m: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = self.find(i);
            m.entry(r).or_default().push(i);
        }
        m.into_values().collect()
    }
}

/// Classes of `i ⪯ j ⪯ i`, ordered by block then slope.
fn closure_classes(pre: &PreOrder) -> Vec<Vec<usize>> {
    let n = pre.len();
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if pre.le(i, j) && pre.le(j, i) {
                uf.union(i, j);
            }
        }
    }
    let mut groups = uf.groups();
    groups.sort_by(|a, b| {
        let (i, j) = (a[0], b[0]);
        pre.beta[i]
            .cmp(&pre.beta[j])
            .then_with(|| pre.labels[i].kappa.slope.cmp(&pre.labels[j].kappa.slope))
    });
    groups
}

/// Classes from `x ~ x'` and `c(x, lambda) - kappa = c(x', lambda) - kappa'`.
pub fn direct_classes(inst: &FixedPointInstance, pre: &PreOrder) -> Vec<Vec<usize>> {
    let n = pre.len();
    let c: Vec<Rational> = (0..inst.len()).map(|x| inst.c_value(x, &pre.lambda)).collect();
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        let (x, k) = (pre.labels[i].point, &pre.labels[i].kappa);
        let di = &AffineInP::constant(c[x].clone()) - k;
        for j in i + 1..n {
            let (y, kk) = (pre.labels[j].point, &pre.labels[j].kappa);
            if !inst.same_h_block(x, y, &pre.lambda) {
                continue;
            }
            if di == &AffineInP::constant(c[y].clone()) - kk {
                uf.union(i, j);
            }
        }
    }
    uf.groups()
}

fn canonical(mut classes: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for c in classes.iter_mut() {
        c.sort_unstable();
    }
    classes.sort();
    classes
}

/// Equivalence classes, computed from the slope relation and from the direct
/// formula. A disagreement is an error.
pub fn equivalence_classes(inst: &FixedPointInstance, pre: &PreOrder) -> Result<Vec<Vec<usize>>> {
    let a = canonical(pre.classes.clone());
    let b = canonical(direct_classes(inst, pre));
    if a != b {
        let only_a: Vec<&Vec<usize>> = a.iter().filter(|c| !b.contains(c)).collect();
        let only_b: Vec<&Vec<usize>> = b.iter().filter(|c| !a.contains(c)).collect();
        return Err(Error::Invalid(format!(
            "class mismatch: slope closure only {only_a:?}, direct formula only {only_b:?}"
        )));
    }
    Ok(pre.classes.clone())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderCompatReport {
    pub checks: Vec<Check>,
    pub matched: usize,
    pub unmatched: usize,
}

impl OrderCompatReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn sample<T: core::fmt::Debug>(v: &[T]) -> String {
    match v.first() {
        Some(x) => format!(", first {x:?}"),
        None => String::new(),
    }
}

/// `L ≺ L' ⇒ L < L' ⇒ L ⪯ L'` on the labels of `pre` evaluated at the period of
/// `poset`, together with `L ≺ S L` and agreement of blocks.
pub fn order_compat_check(poset: &LabeledPoset, pre: &PreOrder) -> OrderCompatReport {
    let p = &poset.period;
    let mut map: Vec<(usize, usize)> = Vec::new();
    let mut unmatched = 0usize;
    let mut nonintegral = Vec::new();
    for (i, l) in pre.labels.iter().enumerate() {
        match l.value_at(p) {
            Some(v) => match poset.index_of(&Label::concrete(l.point, v)) {
                Some(k) => map.push((i, k)),
                None => unmatched += 1,
            },
            None => nonintegral.push(i),
        }
    }
    let mut checks = Vec::new();
    checks.push(Check {
        name: "labels integral at p",
        passed: nonintegral.is_empty(),
        detail: format!("{} labels not integral{}", nonintegral.len(), sample(&nonintegral)),
    });

    let mut first = Vec::new();
    let mut second = Vec::new();
    let mut blocks = Vec::new();
    for &(i, a) in &map {
        for &(j, b) in &map {
            if i == j {
                continue;
            }
            if pre.lt(i, j) && !poset.lt(a, b) {
                first.push((i, j));
            }
            if poset.lt(a, b) && !pre.le(i, j) {
                second.push((i, j));
            }
            if let Some(bl) = &poset.blocks {
                if (pre.beta[i] == pre.beta[j]) != (bl[a] == bl[b]) {
                    blocks.push((i, j));
                }
            }
        }
    }
    let pairs = map.len() * map.len().saturating_sub(1);
    checks.push(Check {
        name: "strict pre-order implies order",
        passed: first.is_empty(),
        detail: format!("{pairs} pairs, {} violations{}", first.len(), sample(&first)),
    });
    checks.push(Check {
        name: "order implies pre-order",
        passed: second.is_empty(),
        detail: format!("{pairs} pairs, {} violations{}", second.len(), sample(&second)),
    });
    checks.push(Check {
        name: "equivariant blocks agree",
        passed: poset.blocks.is_some() && blocks.is_empty(),
        detail: format!("{} violations{}", blocks.len(), sample(&blocks)),
    });
    let bad: Vec<usize> = (0..pre.len())
        .filter(|&i| {
            let l = &pre.labels[i];
            !pre.lt_labels(l, &l.shift_symbolic(1), pre.beta[i], pre.beta[i])
        })
        .collect();
    checks.push(Check {
        name: "L strictly below S L",
        passed: bad.is_empty(),
        detail: format!("{} violations{}", bad.len(), sample(&bad)),
    });
    OrderCompatReport {
        checks,
        matched: map.len(),
        unmatched,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::compat::find_compatible;
    use crate::fixed_points::{c_from_lambda, hilb_instance, lambda_from_c};
    use crate::geometry::{faces_of, real_alcove_of};
    use crate::order::hw::hw_order;

    /// Pair for the alcove of `c` (c coordinates) and its face at `t`.
    fn hilb_pair(inst: &FixedPointInstance, c: &str, t: &str) -> CompatiblePair {
        let w = &inst.walls;
        let x = RationalVector(vec![lambda_from_c(&q(c))]);
        let a = real_alcove_of(w, &x).unwrap();
        let mu = RationalVector(vec![lambda_from_c(&q(t))]);
        let face = faces_of(&a, w)
            .unwrap()
            .into_iter()
            .find(|f| f.is_point() && f.witness == mu)
            .unwrap();
        find_compatible(w, &a, &face, 12).unwrap()
    }

    #[test]
    fn kappa0_matches_residues() {
        let inst = hilb_instance(3, 0).unwrap();
        let pair = hilb_pair(&inst, "-7/12", "-2/3");
        for p in [23i64, 47, 71] {
            let pb = BigInt::from(p);
            let lam = pair.p_point_at(&pb).to_lattice().unwrap();
            let res = crate::order::hw::residues(&inst, &lam, &pb).unwrap();
            for (x, r) in res.iter().enumerate() {
                let k = kappa0(&inst, x, &pair.lambda, &pair.mu).eval_at(&pb).to_integer().unwrap();
                assert_eq!(num_integer::Integer::mod_floor(&(k - r), &pb), BigInt::from(0));
            }
        }
    }

    #[test]
    fn hilb2_classes() {
        let inst = hilb_instance(2, 0).unwrap();
        let pair = hilb_pair(&inst, "-1/4", "-1/2");
        let pre = ss_preorder(&inst, &pair, (-2, 3), &[0]).unwrap();
        let classes = equivalence_classes(&inst, &pre).unwrap();
        assert!(classes.iter().any(|c| c.len() == 2));
        let full: Vec<&Vec<usize>> = classes.iter().filter(|c| c.len() == 2).collect();
        for c in full {
            assert_ne!(pre.labels[c[0]].point, pre.labels[c[1]].point);
        }
    }

    #[test]
    fn hilb3_order_within_classes_follows_content() {
        // Face -1/2 with b = 2: (3) and (1+1+1) have contents 3 and -3.
        let inst = hilb_instance(3, 0).unwrap();
        let below = hilb_pair(&inst, "-7/12", "-1/2");
        let above = hilb_pair(&inst, "-5/12", "-1/2");
        assert!(c_from_lambda(&below.lambda.0[0]).is_negative());
        assert!(c_from_lambda(&above.lambda.0[0]).is_positive());
        let p = BigInt::from(71);
        for (pair, reversed) in [(&below, true), (&above, false)] {
            let pre = ss_preorder(&inst, pair, (-2, 3), &[0]).unwrap();
            let (lo, hi) = pre.kappa_range(&p).unwrap();
            let lam = pair.p_point_at(&p).to_lattice().unwrap();
            let po = hw_order(&inst, &lam, &p, (lo.floor().try_into().unwrap(), i64::try_from(hi.ceil()).unwrap() + 1)).unwrap();
            assert!(order_compat_check(&po, &pre).passed());
            let mut seen = 0;
            for class in &pre.classes {
                for &i in class {
                    for &j in class {
                        let (x, y) = (pre.labels[i].point, pre.labels[j].point);
                        let (ci, cj) = (inst.points[x].c_linear.0[0].clone(), inst.points[y].c_linear.0[0].clone());
                        if ci == cj {
                            continue;
                        }
                        let a = po.index_of(&Label::concrete(x, pre.labels[i].value_at(&p).unwrap())).unwrap();
                        let b = po.index_of(&Label::concrete(y, pre.labels[j].value_at(&p).unwrap())).unwrap();
                        if po.lt(a, b) {
                            seen += 1;
                            assert_eq!(ci > cj, reversed);
                        }
                    }
                }
            }
            assert!(seen > 0);
        }
    }

    #[test]
    fn inverted_slopes_break_the_first_implication() {
        let inst = hilb_instance(3, 0).unwrap();
        let pair = hilb_pair(&inst, "-7/12", "-2/3");
        let pre = ss_preorder(&inst, &pair, (-1, 2), &[0]).unwrap();
        let p = BigInt::from(71);
        let (lo, hi) = pre.kappa_range(&p).unwrap();
        let lam = pair.p_point_at(&p).to_lattice().unwrap();
        let po = hw_order(&inst, &lam, &p, (lo.floor().try_into().unwrap(), i64::try_from(hi.ceil()).unwrap() + 1)).unwrap();
        assert!(order_compat_check(&po, &pre).passed());
        let bad = order_compat_check(&po, &pre.reversed());
        assert!(!bad.checks[1].passed);
    }

    #[test]
    fn distinct_blocks_are_incomparable() {
        let inst = hilb_instance(2, 0).unwrap();
        let pair = hilb_pair(&inst, "-1/4", "-1/2");
        let pre = ss_preorder(&inst, &pair, (0, 2), &[0, 1]).unwrap();
        for i in 0..pre.len() {
            for j in 0..pre.len() {
                if pre.beta[i] != pre.beta[j] {
                    assert!(!pre.le(i, j));
                }
            }
        }
        assert!(pre.is_interval(&[0]));
    }
}
