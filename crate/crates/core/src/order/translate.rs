use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use super::poset::Label;
use super::preorder::{ss_preorder_at, PreOrder};
use crate::arith::{LatticeVector, Rational};
use crate::error::{Error, Result};
use crate::fixed_points::FixedPointInstance;

/// `(x, kappa + wt_chi(x))`.
pub fn label_translate(inst: &FixedPointInstance, l: &Label, chi: &LatticeVector) -> Result<Label> {
    let w = inst.wt_chi(l.point, chi);
    if !w.is_integer() {
        return Err(Error::NotIntegral(format!(
            "wt_chi at {} is {w:?}",
            inst.points[l.point].id
        )));
    }
    Ok(Label::new(l.point, l.kappa.add_constant(&w)))
}

/// Pre-order for `lambda + chi` on the same window and blocks.
pub fn translated_preorder(inst: &FixedPointInstance, pre: &PreOrder, chi: &LatticeVector) -> Result<PreOrder> {
    let lambda = pre.lambda.add(&chi.to_rational());
    ss_preorder_at(inst, &lambda, &pre.mu, pre.window, &pre.blocks)
}

/// Image of an interval of classes of `from` in `to`, where `to` is the
/// pre-order for `lambda + chi`. Every class must land on a whole class and
/// the order between classes must be kept.
pub fn interval_image(
    inst: &FixedPointInstance,
    from: &PreOrder,
    to: &PreOrder,
    interval: &[usize],
    chi: &LatticeVector,
) -> Result<Vec<usize>> {
    if !from.is_interval(interval) {
        return Err(Error::Invalid(format!("classes {interval:?} do not form an interval")));
    }
    let expected = from.lambda.add(&chi.to_rational());
    if expected != to.lambda || from.mu != to.mu {
        return Err(Error::Invalid("target pre-order is not the translate by chi".into()));
    }
    let mut image = Vec::with_capacity(interval.len());
    for &c in interval {
        let mut targets = BTreeSet::new();
        for &i in &from.classes[c] {
            let t = label_translate(inst, &from.labels[i], chi)?;
            let j = to
                .index_of(&t)
                .ok_or_else(|| Error::NotInWindow(format!("translate {t:?} of {:?}", from.labels[i])))?;
            targets.insert(to.class_of(j));
        }
        let d = match targets.len() {
            1 => *targets.first().expect("one element"),
            _ => {
                return Err(Error::Invalid(format!(
                    "class {c} splits over classes {targets:?}"
                )))
            }
        };
        if to.classes[d].len() != from.classes[c].len() {
            return Err(Error::Invalid(format!(
                "class {c} of size {} maps into class {d} of size {}",
                from.classes[c].len(),
                to.classes[d].len()
            )));
        }
        image.push(d);
    }
    for (a, &c) in interval.iter().enumerate() {
        for (b, &d) in interval.iter().enumerate() {
            if from.class_le(c, d) != to.class_le(image[a], image[b]) {
                return Err(Error::Invalid(format!(
                    "order between classes {c} and {d} is not preserved"
                )));
            }
        }
    }
    if !to.is_interval(&image) {
        return Err(Error::Invalid(format!("image {image:?} is not an interval")));
    }
    Ok(image)
}

/// Two pre-orders for the same `mu` whose parameters differ by an integral
/// weight agree after translating labels.
pub fn preorder_independent(inst: &FixedPointInstance, a: &PreOrder, b: &PreOrder) -> Result<bool> {
    let chi = b
        .lambda
        .sub(&a.lambda)
        .to_lattice()
        .ok_or_else(|| Error::NotIntegral("parameters differ by a non-integral weight".into()))?;
    if a.mu != b.mu {
        return Ok(false);
    }
    let mut map = Vec::with_capacity(a.len());
    for l in &a.labels {
        match b.index_of(&label_translate(inst, l, &chi)?) {
            Some(j) => map.push(j),
            None => return Ok(false),
        }
    }
    Ok((0..a.len()).all(|i| (0..a.len()).all(|j| a.le(i, j) == b.le(map[i], map[j]))))
}

/// All weights `wt_chi(x)` integral.
pub fn integral_weights(inst: &FixedPointInstance, chi: &LatticeVector) -> bool {
    (0..inst.len()).all(|x| inst.wt_chi(x, chi).is_integer())
}

/// `wt_chi(x)` for every point.
pub fn weights(inst: &FixedPointInstance, chi: &LatticeVector) -> Vec<Rational> {
    (0..inst.len()).map(|x| inst.wt_chi(x, chi)).collect()
}
