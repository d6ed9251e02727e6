use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use super::Rational;

/// The quantity `constant + slope * p`, viewed as a function of `p`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AffineInP {
    pub constant: Rational,
    pub slope: Rational,
}

impl AffineInP {
    pub fn new(constant: Rational, slope: Rational) -> Self {
        AffineInP { constant, slope }
    }

    pub fn constant(c: Rational) -> Self {
        AffineInP {
            constant: c,
            slope: Rational::zero(),
        }
    }

    pub fn eval_at(&self, p: &BigInt) -> Rational {
        &self.constant + &(&self.slope * &Rational::from(p))
    }

    pub fn eval_i64(&self, p: i64) -> Rational {
        self.eval_at(&BigInt::from(p))
    }

    /// Sign of `self - other` for all sufficiently large `p`.
    pub fn cmp_large_p(&self, other: &AffineInP) -> Ordering {
        self.slope
            .cmp(&other.slope)
            .then_with(|| self.constant.cmp(&other.constant))
    }

    /// Least `p0 >= 0` such that the sign of `self - other` at every `p > p0`
    /// agrees with [`AffineInP::cmp_large_p`].
    pub fn threshold(&self, other: &AffineInP) -> BigInt {
        let ds = &self.slope - &other.slope;
        if ds.is_zero() {
            return BigInt::zero();
        }
        let cross = (&other.constant - &self.constant) / ds;
        let c = cross.ceil();
        if c < BigInt::zero() {
            BigInt::zero()
        } else {
            c
        }
    }

    pub fn add_constant(&self, c: &Rational) -> AffineInP {
        AffineInP::new(&self.constant + c, self.slope.clone())
    }

    pub fn add_slope(&self, s: &Rational) -> AffineInP {
        AffineInP::new(self.constant.clone(), &self.slope + s)
    }

    pub fn is_constant(&self) -> bool {
        self.slope.is_zero()
    }
}

impl PartialOrd for AffineInP {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Large `p` order.
impl Ord for AffineInP {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_large_p(other)
    }
}

impl fmt::Debug for AffineInP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + {:?}p", self.constant, self.slope)
    }
}

impl fmt::Display for AffineInP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*p", self.constant, self.slope)
    }
}

impl Add<&AffineInP> for &AffineInP {
    type Output = AffineInP;
    fn add(self, rhs: &AffineInP) -> AffineInP {
        AffineInP::new(&self.constant + &rhs.constant, &self.slope + &rhs.slope)
    }
}

impl Sub<&AffineInP> for &AffineInP {
    type Output = AffineInP;
    fn sub(self, rhs: &AffineInP) -> AffineInP {
        AffineInP::new(&self.constant - &rhs.constant, &self.slope - &rhs.slope)
    }
}

impl Neg for &AffineInP {
    type Output = AffineInP;
    fn neg(self) -> AffineInP {
        AffineInP::new(-&self.constant, -&self.slope)
    }
}
