//! JSON and DOT renderings of label posets and pre-orders.

use std::fmt::Write;

use alcove_core::fixed_points::FixedPointInstance;
use alcove_core::order::{Label, LabeledPoset, PreOrder};
use alcove_core::{AffineInP, Rational};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::LabError;

const PALETTE: [&str; 8] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666",
];

pub fn q(r: &Rational) -> String {
    format!("{r:?}")
}

pub fn affine(a: &AffineInP) -> String {
    if a.is_constant() {
        q(&a.constant)
    } else {
        format!("{} + {}p", q(&a.constant), q(&a.slope))
    }
}

fn parse_affine(s: &str) -> Result<AffineInP, LabError> {
    let bad = || LabError::Schema(format!("bad affine value {s:?}"));
    match s.split_once(" + ") {
        Some((c, m)) => {
            let m = m.strip_suffix('p').ok_or_else(bad)?;
            Ok(AffineInP::new(c.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?))
        }
        None => Ok(AffineInP::constant(s.parse().map_err(|_| bad())?)),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LabelJson {
    pub point: usize,
    pub id: String,
    pub kappa: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PosetJson {
    pub period: String,
    pub labels: Vec<LabelJson>,
    pub covers: Vec<(usize, usize)>,
    pub classes: Option<Vec<Vec<usize>>>,
    pub blocks: Option<Vec<String>>,
}

fn point_id(inst: Option<&FixedPointInstance>, x: usize) -> String {
    inst.map(|i| i.points[x].id.clone()).unwrap_or_else(|| x.to_string())
}

fn labels_json(inst: Option<&FixedPointInstance>, labels: &[Label]) -> Vec<LabelJson> {
    labels
        .iter()
        .map(|l| LabelJson {
            point: l.point,
            id: point_id(inst, l.point),
            kappa: affine(&l.kappa),
        })
        .collect()
}

pub fn poset_json(inst: Option<&FixedPointInstance>, poset: &LabeledPoset) -> PosetJson {
    PosetJson {
        period: poset.period.to_string(),
        labels: labels_json(inst, &poset.labels),
        covers: poset.covers().to_vec(),
        classes: None,
        blocks: poset
            .blocks
            .as_ref()
            .map(|b| b.iter().map(ToString::to_string).collect()),
    }
}

/// Rebuild a poset from its exported covers.
pub fn poset_from_json(j: &PosetJson) -> Result<LabeledPoset, LabError> {
    let period: BigInt = j
        .period
        .parse()
        .map_err(|_| LabError::Schema(format!("bad period {:?}", j.period)))?;
    let labels = j
        .labels
        .iter()
        .map(|l| Ok(Label::new(l.point, parse_affine(&l.kappa)?)))
        .collect::<Result<Vec<_>, LabError>>()?;
    let n = labels.len();
    let mut rel = vec![vec![false; n]; n];
    for &(a, b) in &j.covers {
        if a >= n || b >= n {
            return Err(LabError::Schema(format!("cover ({a}, {b}) out of range")));
        }
        rel[a][b] = true;
    }
    let mut poset = LabeledPoset::from_relation(period, labels, |a, b| rel[a][b])?;
    if let Some(bl) = &j.blocks {
        let parsed = bl
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|_| LabError::Schema(format!("bad block {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        poset.blocks = Some(parsed);
    }
    Ok(poset)
}

fn node_name(inst: Option<&FixedPointInstance>, l: &Label) -> String {
    format!("{} @ {}", point_id(inst, l.point), affine(&l.kappa))
}

/// Hasse diagram of the window, colored by equivariant block.
pub fn poset_dot(inst: Option<&FixedPointInstance>, poset: &LabeledPoset) -> String {
    let mut colors: Vec<&BigInt> = poset.blocks.iter().flatten().collect();
    colors.sort();
    colors.dedup();
    let mut s = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=box, style=filled];\n");
    for (i, l) in poset.labels.iter().enumerate() {
        let color = poset
            .blocks
            .as_ref()
            .map(|b| {
                let k = colors.binary_search(&&b[i]).unwrap_or(0);
                PALETTE[k % PALETTE.len()]
            })
            .unwrap_or("white");
        let _ = writeln!(s, "  n{i} [label=\"{}\", fillcolor=\"{color}\"];", node_name(inst, l));
    }
    for &(a, b) in poset.covers() {
        let _ = writeln!(s, "  n{a} -> n{b};");
    }
    s.push_str("}\n");
    s
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PreOrderJson {
    pub lambda: Vec<String>,
    pub mu: Vec<String>,
    pub labels: Vec<LabelJson>,
    pub blocks: Vec<i64>,
    pub classes: Vec<Vec<usize>>,
    /// Covers `(c, d)` of the strict order between classes.
    pub class_covers: Vec<(usize, usize)>,
}

pub fn class_covers(pre: &PreOrder) -> Vec<(usize, usize)> {
    let k = pre.classes.len();
    let mut out = Vec::new();
    for c in 0..k {
        for d in 0..k {
            if pre.class_lt(c, d) && !(0..k).any(|e| pre.class_lt(c, e) && pre.class_lt(e, d)) {
                out.push((c, d));
            }
        }
    }
    out
}

pub fn preorder_json(inst: Option<&FixedPointInstance>, pre: &PreOrder) -> PreOrderJson {
    PreOrderJson {
        lambda: pre.lambda.0.iter().map(q).collect(),
        mu: pre.mu.0.iter().map(q).collect(),
        labels: labels_json(inst, &pre.labels),
        blocks: pre.beta.clone(),
        classes: pre.classes.clone(),
        class_covers: class_covers(pre),
    }
}

/// One node per label, one color per equivalence class, edges between
/// consecutive classes.
pub fn preorder_dot(inst: Option<&FixedPointInstance>, pre: &PreOrder) -> String {
    let mut s = String::from("digraph preorder {\n  rankdir=BT;\n  compound=true;\n  node [shape=box, style=filled];\n");
    for (c, members) in pre.classes.iter().enumerate() {
        let _ = writeln!(s, "  subgraph cluster_{c} {{\n    label=\"class {c}\";");
        for &i in members {
            let _ = writeln!(
                s,
                "    n{i} [label=\"{}\", fillcolor=\"{}\"];",
                node_name(inst, &pre.labels[i]),
                PALETTE[c % PALETTE.len()]
            );
        }
        s.push_str("  }\n");
    }
    for (c, d) in class_covers(pre) {
        let (a, b) = (pre.classes[c][0], pre.classes[d][0]);
        let _ = writeln!(s, "  n{a} -> n{b} [ltail=cluster_{c}, lhead=cluster_{d}];");
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> LabeledPoset {
        let labels = vec![Label::concrete(0, BigInt::from(0)), Label::concrete(1, BigInt::from(3))];
        LabeledPoset::from_relation(BigInt::from(5), labels, |a, b| a == 0 && b == 1).unwrap()
    }

    #[test]
    fn two_label_chain_has_one_edge() {
        let dot = poset_dot(None, &chain());
        assert_eq!(dot.matches("->").count(), 1);
    }

    #[test]
    fn empty_window_is_an_empty_graph() {
        let e = LabeledPoset::from_relation(BigInt::from(5), Vec::new(), |_, _| false).unwrap();
        assert_eq!(poset_dot(None, &e).matches("->").count(), 0);
        assert_eq!(poset_from_json(&poset_json(None, &e)).unwrap(), e);
    }

    #[test]
    fn json_round_trip() {
        let p = chain();
        let j = poset_json(None, &p);
        let text = serde_json::to_string(&j).unwrap();
        let back: PosetJson = serde_json::from_str(&text).unwrap();
        assert_eq!(poset_from_json(&back).unwrap(), p);
        let a = AffineInP::new(Rational::new(-3, 2), Rational::new(5, 1));
        assert_eq!(parse_affine(&affine(&a)).unwrap(), a);
    }
}
