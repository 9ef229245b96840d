//! Fractions of positive integers under multiplication: the multiplicative
//! twin of the T-account group. Equality is by cross-multiples and the
//! canonical form is lowest terms.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::PairGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FractionError {
    #[error("fraction entries must be positive, got ({numerator}/{denominator})")]
    ZeroEntry {
        numerator: BigUint,
        denominator: BigUint,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fraction {
    numerator: BigUint,
    denominator: BigUint,
}

fn gcd(a: &BigUint, b: &BigUint) -> BigUint {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

impl Fraction {
    pub fn new(numerator: BigUint, denominator: BigUint) -> Result<Self, FractionError> {
        if numerator.is_zero() || denominator.is_zero() {
            return Err(FractionError::ZeroEntry {
                numerator,
                denominator,
            });
        }
        Ok(Fraction {
            numerator,
            denominator,
        })
    }

    pub fn from_u64(numerator: u64, denominator: u64) -> Result<Self, FractionError> {
        Fraction::new(numerator.into(), denominator.into())
    }

    /// The unit fraction `(1/1)`.
    pub fn one() -> Self {
        Fraction {
            numerator: BigUint::one(),
            denominator: BigUint::one(),
        }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    pub fn mul(&self, other: &Fraction) -> Fraction {
        Fraction {
            numerator: &self.numerator * &other.numerator,
            denominator: &self.denominator * &other.denominator,
        }
    }

    /// `(x/y) = (w/z)` iff `x*z == y*w`.
    pub fn cross_eq(&self, other: &Fraction) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }

    pub fn invert(&self) -> Fraction {
        Fraction {
            numerator: self.denominator.clone(),
            denominator: self.numerator.clone(),
        }
    }

    pub fn reduce(&self) -> Fraction {
        let g = gcd(&self.numerator, &self.denominator);
        Fraction {
            numerator: &self.numerator / &g,
            denominator: &self.denominator / &g,
        }
    }

    pub fn is_lowest_terms(&self) -> bool {
        gcd(&self.numerator, &self.denominator).is_one()
    }
}

impl Mul for &Fraction {
    type Output = Fraction;

    fn mul(self, rhs: &Fraction) -> Fraction {
        Fraction::mul(self, rhs)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}/{})", self.numerator, self.denominator)
    }
}

impl PairGroup for Fraction {
    type Error = std::convert::Infallible;

    fn combine(&self, other: &Self) -> Result<Self, Self::Error> {
        Ok(Fraction::mul(self, other))
    }

    fn identity_like(&self) -> Self {
        Fraction::one()
    }

    fn inverse(&self) -> Self {
        self.invert()
    }

    fn equivalent(&self, other: &Self) -> Result<bool, Self::Error> {
        Ok(self.cross_eq(other))
    }

    fn canonical(&self) -> Self {
        self.reduce()
    }
}
