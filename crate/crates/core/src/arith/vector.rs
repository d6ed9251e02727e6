use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Point of the integral lattice.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LatticeVector(pub Vec<BigInt>);

/// Point of the rational span of the lattice.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RationalVector(pub Vec<Rational>);

/// Integral linear functional on the lattice.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Covector(pub Vec<BigInt>);

impl LatticeVector {
    pub fn from_i64(v: &[i64]) -> Self {
        LatticeVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(d: usize) -> Self {
        LatticeVector(alloc::vec![BigInt::zero(); d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(self.0.iter().map(Rational::from).collect())
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn l1(&self) -> BigInt {
        self.0.iter().map(|a| a.abs()).sum()
    }
}

impl RationalVector {
    pub fn from_i64(v: &[i64]) -> Self {
        RationalVector(v.iter().map(|&x| Rational::integer(x)).collect())
    }

    pub fn zero(d: usize) -> Self {
        RationalVector(alloc::vec![Rational::zero(); d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> RationalVector {
        RationalVector(self.0.iter().map(|a| a * s).collect())
    }

    pub fn dot(&self, other: &RationalVector) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Rational::is_integer)
    }

    pub fn to_lattice(&self) -> Option<LatticeVector> {
        self.0
            .iter()
            .map(Rational::to_integer)
            .collect::<Option<Vec<_>>>()
            .map(LatticeVector)
    }

    pub fn floor(&self) -> LatticeVector {
        LatticeVector(self.0.iter().map(Rational::floor).collect())
    }

    /// Least common multiple of the denominators.
    pub fn denominator(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()))
    }

    pub fn check_dim(&self, d: usize) -> Result<()> {
        if self.dim() != d {
            return Err(Error::Dimension {
                expected: d,
                got: self.dim(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl Covector {
    pub fn from_i64(v: &[i64]) -> Self {
        Covector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Divides by the content and makes the first nonzero entry positive.
    pub fn primitive(v: Vec<BigInt>) -> Result<Covector> {
        let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return Err(Error::ZeroCovector);
        }
        let first_neg = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
        let g = if first_neg { -g } else { g };
        Ok(Covector(v.into_iter().map(|x| x / &g).collect()))
    }

    pub fn is_primitive(&self) -> bool {
        Covector::primitive(self.0.clone()).is_ok_and(|c| &c == self)
    }

    pub fn neg(&self) -> Covector {
        Covector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scaled(&self, sign: i32) -> Covector {
        if sign < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn pair(&self, x: &RationalVector) -> Rational {
        self.0
            .iter()
            .zip(&x.0)
            .map(|(a, b)| Rational::from(a) * b)
            .sum()
    }

    pub fn pair_lattice(&self, x: &LatticeVector) -> BigInt {
        self.0.iter().zip(&x.0).map(|(a, b)| a * b).sum()
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(self.0.iter().map(Rational::from).collect())
    }
}
