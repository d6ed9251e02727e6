use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::poset::{Bits, Label, LabeledPoset};
use crate::arith::LatticeVector;
use crate::error::{Error, Result};
use crate::fixed_points::FixedPointInstance;
use crate::geometry::{is_prime, p_membership, residue, Check};

/// `(p + 1) c(x, lambda') mod p` for every fixed point.
pub fn residues(inst: &FixedPointInstance, lambda: &LatticeVector, p: &BigInt) -> Result<Vec<BigInt>> {
    let lam = lambda.to_rational();
    (0..inst.len())
        .map(|x| {
            residue(inst, x, &lam, p).ok_or_else(|| {
                Error::NotIntegral(format!(
                    "(p+1) c at {} is not an integer; p fails validate_p",
                    inst.points[x].id
                ))
            })
        })
        .collect()
}

/// Equivariant block `c̄(x) - kappa mod p` of a concrete label.
pub fn block_of(inst: &FixedPointInstance, l: &Label, lambda: &LatticeVector, p: &BigInt) -> Result<BigInt> {
    let k = l
        .value()
        .ok_or_else(|| Error::NotIntegral(format!("label {l:?} is not a concrete integer")))?;
    let lam = lambda.to_rational();
    let c = residue(inst, l.point, &lam, p).ok_or_else(|| {
        Error::NotIntegral(format!(
            "(p+1) c at {} is not an integer; p fails validate_p",
            inst.points[l.point].id
        ))
    })?;
    Ok((c - k).mod_floor(p))
}

/// Highest weight order on `{(x, kappa) : z1 <= kappa < z2}` at the lattice
/// parameter `lambda`: same equivariant block and smaller `kappa`.
pub fn hw_order(
    inst: &FixedPointInstance,
    lambda: &LatticeVector,
    p: &BigInt,
    window: (i64, i64),
) -> Result<LabeledPoset> {
    let (z1, z2) = window;
    if z1 >= z2 {
        return Err(Error::Invalid(format!("empty window [{z1}, {z2})")));
    }
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    p_membership(&inst.walls, lambda, p)?;
    let res = residues(inst, lambda, p)?;

    let mut labels = Vec::new();
    let mut block = Vec::new();
    for k in z1..z2 {
        for (x, r) in res.iter().enumerate() {
            let kb = BigInt::from(k);
            block.push((r - &kb).mod_floor(p));
            labels.push(Label::concrete(x, kb));
        }
    }
    let n = labels.len();
    let mut by_block: BTreeMap<&BigInt, Vec<usize>> = BTreeMap::new();
    for (i, b) in block.iter().enumerate() {
        by_block.entry(b).or_default().push(i);
    }
    // Labels are generated in increasing kappa, so within a block every
    // later label with a strictly larger kappa lies above.
    let mut above = vec![Bits::new(n); n];
    let npts = res.len();
    for members in by_block.values() {
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                if j / npts > i / npts {
                    above[i].set(j);
                }
            }
        }
    }
    let mut poset = LabeledPoset::from_closure(p.clone(), labels, above)?;
    poset.blocks = Some(block);
    Ok(poset)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PhwReport {
    pub checks: Vec<Check>,
    pub orbits: usize,
    pub max_chain: usize,
    /// Pairs `L < L'` whose witnessing shift leaves the window.
    pub undetermined: usize,
}

impl PhwReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Periodic highest weight axioms on a finite window.
pub fn phw_axiom_check(poset: &LabeledPoset, d_bound: usize) -> PhwReport {
    let n = poset.len();
    let mut checks = Vec::new();

    let orbits = poset.orbits();
    let sizes: Vec<usize> = orbits.values().map(Vec::len).collect();
    let min = sizes.iter().copied().min().unwrap_or(0);
    let max = sizes.iter().copied().max().unwrap_or(0);
    let fixed = (0..n).filter(|&i| poset.shifted(i, 1) == Some(i)).count();
    checks.push(Check {
        name: "free action, finitely many orbits",
        passed: poset.period.is_positive() && fixed == 0 && min == max && (n == 0 || min >= 2),
        detail: format!(
            "{} orbits, {min}..{max} labels each, {fixed} fixed labels",
            orbits.len()
        ),
    });

    let mut bad = 0usize;
    let mut tested = 0usize;
    for i in 0..n {
        let Some(si) = poset.shifted(i, 1) else { continue };
        for j in 0..n {
            let Some(sj) = poset.shifted(j, 1) else { continue };
            tested += 1;
            if poset.lt(i, j) != poset.lt(si, sj) {
                bad += 1;
            }
        }
    }
    checks.push(Check {
        name: "shift preserves the order",
        passed: bad == 0,
        detail: format!("{tested} pairs, {bad} violations"),
    });

    let mut bad = 0usize;
    let mut tested = 0usize;
    for i in 0..n {
        if let Some(si) = poset.shifted(i, 1) {
            tested += 1;
            if !poset.lt(i, si) {
                bad += 1;
            }
        }
    }
    checks.push(Check {
        name: "L < S L",
        passed: bad == 0,
        detail: format!("{tested} labels, {bad} violations"),
    });

    let mut found = 0usize;
    let mut undetermined = 0usize;
    let mut bad = 0usize;
    let mut worst = 0usize;
    for i in 0..n {
        for j in poset.upper(i) {
            let mut k = 0usize;
            loop {
                match poset.shifted(i, k as i64) {
                    None => {
                        undetermined += 1;
                        break;
                    }
                    Some(s) if poset.lt(j, s) => {
                        found += 1;
                        worst = worst.max(k);
                        if k > d_bound {
                            bad += 1;
                        }
                        break;
                    }
                    Some(_) => k += 1,
                }
            }
        }
    }
    checks.push(Check {
        name: "cofinality",
        passed: bad == 0,
        detail: format!(
            "{found} pairs witnessed (largest shift {worst}), {undetermined} undetermined, {bad} beyond the bound {d_bound}"
        ),
    });

    let max_chain = poset.longest_chain();
    checks.push(Check {
        name: "bounded chains",
        passed: max_chain <= d_bound,
        detail: format!("longest chain {max_chain}, bound {d_bound}"),
    });

    PhwReport {
        checks,
        orbits: orbits.len(),
        max_chain,
        undetermined,
    }
}
