//! Integer partitions.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Partition> {
        parts.retain(|&x| x > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(alloc::format!("parts not decreasing: {parts:?}")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn transpose(&self) -> Partition {
        let w = self.part(0);
        Partition(
            (0..w)
                .map(|j| self.0.iter().filter(|&&r| r > j).count() as u32)
                .collect(),
        )
    }

    /// No part repeated `e` or more times.
    pub fn is_regular(&self, e: u32) -> bool {
        let mut run = 0;
        for i in 0..self.0.len() {
            run = if i > 0 && self.0[i] == self.0[i - 1] { run + 1 } else { 1 };
            if run >= e {
                return false;
            }
        }
        true
    }

    /// Consecutive parts differ by less than `e`.
    pub fn is_restricted(&self, e: u32) -> bool {
        (0..self.0.len()).all(|i| self.part(i) - self.part(i + 1) < e)
    }

    /// Sum of contents `j - i` over the boxes.
    pub fn content(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                let r = r as i64;
                r * (r - 1) / 2 - (i as i64) * r
            })
            .sum()
    }

    /// `sum (i - 1) lambda_i`.
    pub fn n_stat(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &r)| i as i64 * r as i64)
            .sum()
    }

    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.len()).all(|i| self.part(i) >= other.part(i))
    }

    pub fn to_id(&self) -> String {
        if self.0.is_empty() {
            return String::from("0");
        }
        let mut s = String::new();
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                s.push('+');
            }
            s.push_str(&alloc::format!("{r}"));
        }
        s
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_id())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_id())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Partition> {
        let t = s.trim();
        if t.is_empty() || t == "0" {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(['+', ','])
            .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(t.into())))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n` in reverse lexicographic order.
pub fn partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            rec(rest - k, k, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn counts_match_partition_numbers() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(partitions(3), vec![p("3"), p("2+1"), p("1+1+1")]);
    }

    #[test]
    fn statistics() {
        assert_eq!(p("2+1").content(), 0);
        assert_eq!(p("3").content(), 3);
        assert_eq!(p("1+1+1").content(), -3);
        assert_eq!(p("4+1+1").content(), 3);
        assert_eq!(p("3+3").content(), 3);
        assert_eq!(p("2+1").n_stat(), 1);
        assert_eq!(p("1+1+1").n_stat(), 3);
        for lam in partitions(7) {
            assert_eq!(lam.transpose().transpose(), lam);
            assert_eq!(lam.transpose().content(), -lam.content());
            assert_eq!(lam.content(), lam.transpose().n_stat() - lam.n_stat());
        }
    }

    #[test]
    fn regular_and_restricted_are_dual() {
        for n in 0..9 {
            for lam in partitions(n) {
                for e in 2..5 {
                    assert_eq!(lam.is_regular(e), lam.transpose().is_restricted(e));
                }
            }
        }
        assert!(!p("2+2").is_regular(2));
        assert!(p("3+1").is_regular(2));
    }
}
