use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::alcove::RealAlcove;
use super::palcove::{find_lattice_point, p_alcove_of};
use crate::arith::{Rational, RationalVector, WallSet};
use crate::fixed_points::FixedPointInstance;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValidationReport {
    pub p: BigInt,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Data a prime is validated against.
#[derive(Clone, Copy, Debug)]
pub struct ValidationInput<'a> {
    pub walls: &'a WallSet,
    pub instance: Option<&'a FixedPointInstance>,
    pub lambdas: &'a [RationalVector],
    pub alcoves: &'a [RealAlcove],
}

pub fn is_prime(p: &BigInt) -> bool {
    if p < &BigInt::from(2) {
        return false;
    }
    let mut d = BigInt::from(2);
    while &(&d * &d) <= p {
        if (p % &d).is_zero() {
            return false;
        }
        d += 1;
    }
    true
}

/// Admissibility of `p` for the registered data.
pub fn validate_p(p: &BigInt, input: ValidationInput<'_>) -> ValidationReport {
    let p1 = p + BigInt::one();
    let mut checks = Vec::new();

    checks.push(Check {
        name: "prime",
        passed: is_prime(p),
        detail: format!("p = {p}"),
    });

    let den = input.walls.denominator();
    checks.push(Check {
        name: "sigma denominators divide p+1",
        passed: (&p1 % &den).is_zero(),
        detail: format!("lcm of denominators {den}, p+1 = {p1}"),
    });

    let p1q = Rational::from(&p1);
    let bad: Vec<usize> = input
        .lambdas
        .iter()
        .enumerate()
        .filter(|(_, l)| !l.scale(&p1q).is_integral())
        .map(|(i, _)| i)
        .collect();
    checks.push(Check {
        name: "(p+1) lambda integral",
        passed: bad.is_empty(),
        detail: format!("{} registered, failing {:?}", input.lambdas.len(), bad),
    });

    if let Some(inst) = input.instance {
        let mut bad = Vec::new();
        for (li, l) in input.lambdas.iter().enumerate() {
            for x in 0..inst.len() {
                if !(&inst.c_value(x, l) * &p1q).is_integer() {
                    bad.push((li, inst.points[x].id.clone()));
                }
            }
        }
        checks.push(Check {
            name: "(p+1) c integral",
            passed: bad.is_empty(),
            detail: format!("failing {bad:?}"),
        });

        let mut bad = Vec::new();
        for (li, l) in input.lambdas.iter().enumerate() {
            if let Some(why) = h_block_ordering(inst, l, p) {
                bad.push(format!("lambda {li}: {why}"));
            }
        }
        checks.push(Check {
            name: "h-block ordering",
            passed: bad.is_empty(),
            detail: if bad.is_empty() {
                format!("{} registered", input.lambdas.len())
            } else {
                bad.join("; ")
            },
        });
    }

    let mut empty = Vec::new();
    for (i, a) in input.alcoves.iter().enumerate() {
        let ok = p_alcove_of(a, input.walls)
            .ok()
            .and_then(|pa| find_lattice_point(input.walls.rank, &pa.constraints_at(input.walls, p)))
            .is_some();
        if !ok {
            empty.push(i);
        }
    }
    checks.push(Check {
        name: "p-alcoves meet the lattice",
        passed: empty.is_empty(),
        detail: format!("{} registered, empty {:?}", input.alcoves.len(), empty),
    });

    ValidationReport {
        p: p.clone(),
        checks,
    }
}

/// Residue of `(p + 1) c(x, lambda)` in `[0, p)`, if integral.
pub fn residue(inst: &FixedPointInstance, x: usize, lambda: &RationalVector, p: &BigInt) -> Option<BigInt> {
    let v = &inst.c_value(x, lambda) * &Rational::from(p + BigInt::one());
    v.to_integer().map(|n| n.mod_floor(p))
}

/// Two h-blocks never interleave in residue order. Returns a description of
/// the first violation.
pub fn h_block_ordering(inst: &FixedPointInstance, lambda: &RationalVector, p: &BigInt) -> Option<String> {
    let mut blocks: BTreeMap<Rational, (BigInt, BigInt)> = BTreeMap::new();
    for x in 0..inst.len() {
        let Some(r) = residue(inst, x, lambda, p) else {
            return Some(format!("(p+1) c not integral at {}", inst.points[x].id));
        };
        let key = inst.c_value(x, lambda).fract();
        blocks
            .entry(key)
            .and_modify(|(lo, hi)| {
                if &r < lo {
                    *lo = r.clone();
                }
                if &r > hi {
                    *hi = r.clone();
                }
            })
            .or_insert((r.clone(), r));
    }
    let spans: Vec<(Rational, (BigInt, BigInt))> = blocks.into_iter().collect();
    for i in 0..spans.len() {
        for j in 0..spans.len() {
            if i == j {
                continue;
            }
            let (a, (alo, ahi)) = &spans[i];
            let (b, (blo, bhi)) = &spans[j];
            let all_above = alo > bhi;
            let none_above = ahi <= blo;
            if !all_above && !none_above {
                return Some(format!(
                    "blocks {a:?} [{alo}, {ahi}] and {b:?} [{blo}, {bhi}] interleave"
                ));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::fixed_points::hilb_instance;
    use alloc::vec;

    #[test]
    fn hilb3_primes() {
        let inst = hilb_instance(3, 0).unwrap();
        let input = ValidationInput {
            walls: &inst.walls,
            instance: Some(&inst),
            lambdas: &[],
            alcoves: &[],
        };
        assert!(validate_p(&BigInt::from(23), input).passed());
        let r13 = validate_p(&BigInt::from(13), input);
        assert!(!r13.passed());
        assert_eq!(r13.failures()[0].name, "sigma denominators divide p+1");
        assert!(!validate_p(&BigInt::from(35), input).passed());
    }

    #[test]
    fn lambda_conditions() {
        let inst = hilb_instance(3, 0).unwrap();
        let lam = vec![RationalVector(vec![q("7/6")])];
        let input = ValidationInput {
            walls: &inst.walls,
            instance: Some(&inst),
            lambdas: &lam,
            alcoves: &[],
        };
        let r = validate_p(&BigInt::from(23), input);
        assert!(r.checks.iter().find(|c| c.name == "(p+1) lambda integral").unwrap().passed);
        assert!(!validate_p(&BigInt::from(7), input).checks[2].passed);
    }
}
