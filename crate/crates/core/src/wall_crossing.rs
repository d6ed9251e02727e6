//! Mullineux involution on `e`-regular partitions and the wall-crossing
//! bijections of the Hilbert scheme built from it.
//!
//! [`mullineux`] peels `e`-rims and conjugates the resulting symbol.
//! [`mullineux_oracle`] removes good nodes and adds cogood nodes of negated
//! residue. The two are kept independent.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::partition::{partitions, Partition};

fn check_regular(mu: &Partition, e: u32) -> Result<()> {
    if e < 2 {
        return Err(Error::Invalid(format!("e = {e} must be at least 2")));
    }
    if mu.is_regular(e) {
        return Ok(());
    }
    let parts = mu.parts();
    let bad = parts
        .iter()
        .find(|&&r| parts.iter().filter(|&&s| s == r).count() >= e as usize)
        .copied()
        .unwrap_or(0);
    Err(Error::NotRegular(format!(
        "{mu} repeats the part {bad} at least {e} times"
    )))
}

/// Columns `(a_i, r_i)`: size of the `i`-th `e`-rim and number of rows before
/// removing it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MullineuxSymbol {
    pub columns: Vec<(u32, u32)>,
}

impl MullineuxSymbol {
    pub fn size(&self) -> u32 {
        self.columns.iter().map(|c| c.0).sum()
    }

    /// `(a_i, a_i - r_i + eps_i)` with `eps_i = 1` unless `e` divides `a_i`.
    pub fn conjugate(&self, e: u32) -> MullineuxSymbol {
        MullineuxSymbol {
            columns: self
                .columns
                .iter()
                .map(|&(a, r)| {
                    let eps = u32::from(a % e != 0);
                    (a, a + eps - r)
                })
                .collect(),
        }
    }
}

/// Row lengths left after removing the `e`-rim, and the size of the rim.
fn remove_e_rim(rows: &[u32], e: u32) -> (Vec<u32>, u32) {
    let len = rows.len();
    let part = |i: usize| rows.get(i).copied().unwrap_or(0);
    let mut taken = vec![0u32; len];
    let mut total = 0;
    let mut start = 0usize;
    loop {
        let (mut i, mut j) = (start, part(start) - 1);
        let mut count = 0;
        loop {
            taken[i] += 1;
            total += 1;
            count += 1;
            if count == e {
                break;
            }
            if part(i + 1) > j {
                i += 1;
            } else if j > 0 {
                j -= 1;
            } else {
                break;
            }
        }
        if i + 1 >= len {
            break;
        }
        start = i + 1;
    }
    let rest: Vec<u32> = rows
        .iter()
        .zip(&taken)
        .map(|(r, t)| r - t)
        .filter(|&r| r > 0)
        .collect();
    (rest, total)
}

pub fn mullineux_symbol(mu: &Partition, e: u32) -> Result<MullineuxSymbol> {
    check_regular(mu, e)?;
    let mut rows = mu.parts().to_vec();
    let mut columns = Vec::new();
    while !rows.is_empty() {
        let r = rows.len() as u32;
        let (rest, a) = remove_e_rim(&rows, e);
        if rest.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!(
                "removing the {e}-rim of {rows:?} left {rest:?}"
            )));
        }
        columns.push((a, r));
        rows = rest;
    }
    Ok(MullineuxSymbol { columns })
}

/// The `e`-regular partition with the given symbol.
pub fn from_symbol(sym: &MullineuxSymbol, e: u32) -> Result<Partition> {
    let mut nu = Partition::empty();
    for &(a, r) in sym.columns.iter().rev() {
        let n = nu.size() + a;
        let found: Vec<Partition> = partitions(n)
            .into_iter()
            .filter(|lam| {
                lam.len() == r as usize
                    && lam.is_regular(e)
                    && lam.contains(&nu)
                    && remove_e_rim(lam.parts(), e).0 == nu.parts()
            })
            .collect();
        match found.len() {
            1 => nu = found.into_iter().next().expect("one candidate"),
            0 => {
                return Err(Error::Invalid(format!(
                    "no {e}-regular partition with {r} rows and an {e}-rim of size {a} over {nu}"
                )))
            }
            _ => {
                return Err(Error::Invalid(format!(
                    "symbol column ({a}, {r}) over {nu} is ambiguous: {found:?}"
                )))
            }
        }
    }
    Ok(nu)
}

/// Mullineux image by `e`-rim peeling.
pub fn mullineux(mu: &Partition, e: u32) -> Result<Partition> {
    let sym = mullineux_symbol(mu, e)?;
    from_symbol(&sym.conjugate(e), e)
}

fn residue(row: usize, col: usize, e: u32) -> u32 {
    (col as i64 - row as i64).rem_euclid(e as i64) as u32
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Node {
    Addable(usize),
    Removable(usize),
}

/// Addable and removable `i`-nodes, top to bottom, keyed by row.
fn signature(rows: &[u32], i: u32, e: u32) -> Vec<Node> {
    let part = |k: usize| rows.get(k).copied().unwrap_or(0);
    let mut out = Vec::new();
    for k in 0..=rows.len() {
        let addable = k == 0 || part(k - 1) > part(k);
        if addable && residue(k, part(k) as usize, e) == i {
            out.push(Node::Addable(k));
        }
        let removable = part(k) > 0 && part(k) > part(k + 1);
        if removable && residue(k, part(k) as usize - 1, e) == i {
            out.push(Node::Removable(k));
        }
    }
    out
}

/// Unmatched removable and addable nodes after cancelling each addable node
/// with a removable node below it.
fn reduce(sig: &[Node]) -> (Vec<usize>, Vec<usize>) {
    let mut open: Vec<usize> = Vec::new();
    let mut normal = Vec::new();
    for n in sig {
        match *n {
            Node::Addable(k) => open.push(k),
            Node::Removable(k) => {
                if open.pop().is_none() {
                    normal.push(k);
                }
            }
        }
    }
    (normal, open)
}

/// Row of the good `i`-node: the lowest normal one.
fn good(rows: &[u32], i: u32, e: u32) -> Option<usize> {
    reduce(&signature(rows, i, e)).0.last().copied()
}

/// Row of the cogood `i`-node: the highest conormal one.
fn cogood(rows: &[u32], i: u32, e: u32) -> Option<usize> {
    reduce(&signature(rows, i, e)).1.first().copied()
}

/// Residues of a good node removal sequence, first removal first.
pub fn good_path(mu: &Partition, e: u32) -> Result<Vec<u32>> {
    check_regular(mu, e)?;
    let mut rows = mu.parts().to_vec();
    let mut path = Vec::with_capacity(mu.size() as usize);
    while !rows.is_empty() {
        let (i, k) = (0..e)
            .find_map(|i| good(&rows, i, e).map(|k| (i, k)))
            .ok_or_else(|| Error::Invalid(format!("{rows:?} has no good node")))?;
        rows[k] -= 1;
        if rows[k] == 0 {
            rows.pop();
        }
        path.push(i);
    }
    Ok(path)
}

/// Partition reached from the empty one by adding cogood nodes.
pub fn from_good_path(path: &[u32], e: u32) -> Result<Partition> {
    let mut rows: Vec<u32> = Vec::new();
    for &i in path.iter().rev() {
        let k = cogood(&rows, i, e).ok_or_else(|| {
            Error::Invalid(format!("{rows:?} has no cogood {i}-node"))
        })?;
        if k == rows.len() {
            rows.push(1);
        } else {
            rows[k] += 1;
        }
    }
    Partition::new(rows)
}

/// Mullineux image through the crystal: negate every residue of a good path.
pub fn mullineux_oracle(mu: &Partition, e: u32) -> Result<Partition> {
    let path = good_path(mu, e)?;
    let neg: Vec<u32> = path.iter().map(|&i| (e - i) % e).collect();
    from_good_path(&neg, e)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variant {
    /// Mullineux on `b`-regular labels.
    Plain,
    /// `mu -> M(mu^t)^t` on `b`-restricted labels.
    Restricted,
}

impl core::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "plain" => Ok(Variant::Plain),
            "restricted" => Ok(Variant::Restricted),
            _ => Err(Error::Parse(format!("unknown variant {s}"))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Provenance {
    Computed,
    /// Outside the support of the variant; the extended involution is not
    /// implemented here.
    External,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WcEntry {
    pub source: Partition,
    pub image: Option<Partition>,
    pub provenance: Provenance,
    pub note: String,
}

/// Wall-crossing table on partitions of `n` for denominator `b`.
pub fn wc_bijection_hilb(n: u32, b: u32, variant: Variant) -> Result<Vec<WcEntry>> {
    if b < 2 || b > n {
        return Err(Error::Invalid(format!("b = {b} must satisfy 2 <= b <= n = {n}")));
    }
    partitions(n)
        .into_iter()
        .map(|mu| {
            let (supported, why) = match variant {
                Variant::Plain => (mu.is_regular(b), format!("not {b}-regular")),
                Variant::Restricted => (mu.is_restricted(b), format!("not {b}-restricted")),
            };
            if !supported {
                return Ok(WcEntry {
                    source: mu,
                    image: None,
                    provenance: Provenance::External,
                    note: why,
                });
            }
            let image = match variant {
                Variant::Plain => mullineux(&mu, b)?,
                Variant::Restricted => mullineux(&mu.transpose(), b)?.transpose(),
            };
            Ok(WcEntry {
                source: mu,
                image: Some(image),
                provenance: Provenance::Computed,
                note: String::new(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn small_cases() {
        for e in 2..7 {
            assert_eq!(mullineux(&Partition::empty(), e).unwrap(), Partition::empty());
            assert_eq!(mullineux(&p("1"), e).unwrap(), p("1"));
            assert_eq!(mullineux_oracle(&p("1"), e).unwrap(), p("1"));
            assert_eq!(mullineux_oracle(&Partition::empty(), e).unwrap(), Partition::empty());
        }
        let err = mullineux(&p("2+1+1"), 2).unwrap_err();
        assert!(format!("{err}").contains("part 1"));
    }

    #[test]
    fn symbol_of_a_hook() {
        // The 3-rim of (3, 1, 1) is the hook minus nothing: rows 0 and 2 end
        // segments, the whole rim has five nodes.
        let s = mullineux_symbol(&p("3+1+1"), 3).unwrap();
        assert_eq!(s.columns, vec![(5, 3)]);
        assert_eq!(from_symbol(&s, 3).unwrap(), p("3+1+1"));
        assert_eq!(s.conjugate(3).columns, vec![(5, 3)]);
    }

    #[test]
    fn characteristic_two_is_trivial() {
        for n in 0..=12 {
            for mu in partitions(n).into_iter().filter(|m| m.is_regular(2)) {
                assert_eq!(mullineux(&mu, 2).unwrap(), mu);
                assert_eq!(mullineux_oracle(&mu, 2).unwrap(), mu);
            }
        }
    }

    #[test]
    fn large_e_is_transpose() {
        for n in 0..=10 {
            for mu in partitions(n) {
                assert_eq!(mullineux(&mu, (n + 1).max(2)).unwrap(), mu.transpose());
                assert_eq!(mullineux_oracle(&mu, (n + 1).max(2)).unwrap(), mu.transpose());
            }
        }
    }

    #[test]
    fn wall_crossing_tables() {
        let t = wc_bijection_hilb(2, 2, Variant::Plain).unwrap();
        assert_eq!(t[0].image, Some(p("2")));
        assert_eq!(t[1].provenance, Provenance::External);
        let t = wc_bijection_hilb(3, 3, Variant::Plain).unwrap();
        for entry in t.iter().filter(|e| e.provenance == Provenance::Computed) {
            assert_eq!(entry.image, Some(mullineux_oracle(&entry.source, 3).unwrap()));
        }
        assert_eq!(t.iter().filter(|e| e.image.is_some()).count(), 2);
        assert!(wc_bijection_hilb(3, 4, Variant::Plain).is_err());
        let r = wc_bijection_hilb(4, 2, Variant::Restricted).unwrap();
        for entry in &r {
            assert_eq!(entry.image.is_some(), entry.source.is_restricted(2));
        }
    }

    fn regular_partition() -> impl Strategy<Value = (Partition, u32)> {
        (0u32..=12, 2u32..=6).prop_flat_map(|(n, e)| {
            let all: Vec<Partition> = partitions(n).into_iter().filter(|m| m.is_regular(e)).collect();
            (proptest::sample::select(all), Just(e))
        })
    }

    proptest! {
        #[test]
        fn involution_preserving_size_and_regularity((mu, e) in regular_partition()) {
            let m = mullineux(&mu, e).unwrap();
            prop_assert_eq!(m.size(), mu.size());
            prop_assert!(m.is_regular(e));
            prop_assert_eq!(mullineux(&m, e).unwrap(), mu.clone());
            prop_assert_eq!(mullineux_oracle(&mu, e).unwrap(), m);
        }
    }
}
