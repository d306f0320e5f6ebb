use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An element of `Z/p^M`, always stored reduced into `[0, p^M)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueRing {
    p: u64,
    precision: u32,
    modulus: BigInt,
    value: BigInt,
}

impl ResidueRing {
    pub fn new(p: u64, precision: u32, value: impl Into<BigInt>) -> Self {
        assert!(precision >= 1, "precision must be at least 1");
        let modulus = BigInt::from(p).pow(precision);
        let value = value.into().mod_floor(&modulus);
        ResidueRing {
            p,
            precision,
            modulus,
            value,
        }
    }

    pub fn zero(p: u64, precision: u32) -> Self {
        Self::new(p, precision, 0)
    }

    pub fn one(p: u64, precision: u32) -> Self {
        Self::new(p, precision, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Signed representative in `(-p^M/2, p^M/2]`.
    pub fn centered(&self) -> BigInt {
        let half = &self.modulus >> 1;
        if self.value > half {
            &self.value - &self.modulus
        } else {
            self.value.clone()
        }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p, self.precision);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> Result<Self> {
        let g = self.value.extended_gcd(&self.modulus);
        if !g.gcd.is_one() {
            return Err(Error::NotAUnit {
                value: self.value.to_string(),
                modulus: self.modulus.to_string(),
            });
        }
        Ok(Self::new(self.p, self.precision, g.x))
    }

    /// Reduction to a lower precision.
    pub fn truncate(&self, precision: u32) -> Self {
        assert!(precision <= self.precision);
        Self::new(self.p, precision, self.value.clone())
    }

    fn check(&self, other: &Self) {
        assert!(
            self.p == other.p && self.precision == other.precision,
            "mixed residue rings: {}^{} vs {}^{}",
            self.p,
            self.precision,
            other.p,
            other.precision
        );
    }
}

impl Add for &ResidueRing {
    type Output = ResidueRing;
    fn add(self, rhs: &ResidueRing) -> ResidueRing {
        self.check(rhs);
        let mut v = &self.value + &rhs.value;
        if v >= self.modulus {
            v -= &self.modulus;
        }
        ResidueRing {
            value: v,
            ..self.clone()
        }
    }
}

impl Sub for &ResidueRing {
    type Output = ResidueRing;
    fn sub(self, rhs: &ResidueRing) -> ResidueRing {
        self.check(rhs);
        let mut v = &self.value - &rhs.value;
        if v < BigInt::zero() {
            v += &self.modulus;
        }
        ResidueRing {
            value: v,
            ..self.clone()
        }
    }
}

impl Mul for &ResidueRing {
    type Output = ResidueRing;
    fn mul(self, rhs: &ResidueRing) -> ResidueRing {
        self.check(rhs);
        ResidueRing {
            value: (&self.value * &rhs.value) % &self.modulus,
            ..self.clone()
        }
    }
}

impl Neg for &ResidueRing {
    type Output = ResidueRing;
    fn neg(self) -> ResidueRing {
        let value = if self.value.is_zero() {
            BigInt::zero()
        } else {
            &self.modulus - &self.value
        };
        ResidueRing {
            value,
            ..self.clone()
        }
    }
}

impl fmt::Display for ResidueRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.value, self.p, self.precision)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_operations() {
        let a = ResidueRing::new(3, 3, -1);
        assert_eq!(a.value(), &BigInt::from(26));
        assert_eq!(a.centered(), BigInt::from(-1));
        let b = ResidueRing::new(3, 3, 5);
        assert_eq!((&a * &b).value(), &BigInt::from(22));
        assert_eq!((&a + &b).value(), &BigInt::from(4));
        assert_eq!((&b - &a).value(), &BigInt::from(6));
        let inv = b.inverse().unwrap();
        assert!((&inv * &b).value().is_one());
        assert!(ResidueRing::new(3, 3, 6).inverse().is_err());
        assert_eq!(b.pow(18).value(), &BigInt::from(1));
    }
}
