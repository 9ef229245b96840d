//! The group of differences over unsigned vectors.
//!
//! A [`TTerm`] is an ordered pair `[debit // credit]` of [`NatVec`]s. Terms add
//! side by side and two terms are equal in the group when their cross-sums
//! agree. Structural equality (`==`) is kept separate from group equality
//! ([`TTerm::group_eq`]): containers and serialization see the raw pair, the
//! algebra sees the class. Every binary operation checks dimensions at runtime.
//!
//! Components are arbitrary-precision, so addition never overflows.

use std::fmt;
use std::ops::Neg;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("dimension mismatch: {left} vs {right}")]
pub struct DimensionMismatch {
    pub left: usize,
    pub right: usize,
}

fn same_dim(left: usize, right: usize) -> Result<(), DimensionMismatch> {
    if left == right {
        Ok(())
    } else {
        Err(DimensionMismatch { left, right })
    }
}

fn write_components<T: fmt::Display>(f: &mut fmt::Formatter<'_>, xs: &[T]) -> fmt::Result {
    if xs.len() == 1 {
        return write!(f, "{}", xs[0]);
    }
    f.write_str("(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

/// An n-tuple of unsigned whole numbers. Dimension 1 is the scalar case.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NatVec(Vec<BigUint>);

impl NatVec {
    pub fn new(components: Vec<BigUint>) -> Self {
        NatVec(components)
    }

    pub fn zeros(dim: usize) -> Self {
        NatVec(vec![BigUint::zero(); dim])
    }

    pub fn from_u64s(components: &[u64]) -> Self {
        NatVec(components.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[BigUint] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn zip_with(
        &self,
        other: &NatVec,
        f: impl Fn(&BigUint, &BigUint) -> BigUint,
    ) -> Result<NatVec, DimensionMismatch> {
        same_dim(self.dim(), other.dim())?;
        Ok(NatVec(
            self.0.iter().zip(&other.0).map(|(a, b)| f(a, b)).collect(),
        ))
    }

    /// Componentwise minimum.
    pub fn min(&self, other: &NatVec) -> Result<NatVec, DimensionMismatch> {
        self.zip_with(other, |a, b| a.min(b).clone())
    }

    /// Componentwise maximum.
    pub fn max(&self, other: &NatVec) -> Result<NatVec, DimensionMismatch> {
        self.zip_with(other, |a, b| a.max(b).clone())
    }

    /// Two vectors are disjoint when their componentwise minimum is zero.
    pub fn is_disjoint(&self, other: &NatVec) -> Result<bool, DimensionMismatch> {
        Ok(self.min(other)?.is_zero())
    }

    pub fn try_add(&self, other: &NatVec) -> Result<NatVec, DimensionMismatch> {
        self.zip_with(other, |a, b| a + b)
    }

    // Only valid when `other <= self` componentwise.
    fn sub_dominated(&self, other: &NatVec) -> NatVec {
        NatVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// The same vector seen as a non-negative signed vector.
    pub fn to_signed(&self) -> IntVec {
        IntVec(self.0.iter().map(|c| BigInt::from(c.clone())).collect())
    }
}

impl fmt::Display for NatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_components(f, &self.0)
    }
}

impl<const N: usize> From<[u64; N]> for NatVec {
    fn from(components: [u64; N]) -> Self {
        NatVec::from_u64s(&components)
    }
}

/// An n-tuple of signed integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntVec(Vec<BigInt>);

impl IntVec {
    pub fn new(components: Vec<BigInt>) -> Self {
        IntVec(components)
    }

    pub fn zeros(dim: usize) -> Self {
        IntVec(vec![BigInt::zero(); dim])
    }

    pub fn from_i64s(components: &[i64]) -> Self {
        IntVec(components.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn try_add(&self, other: &IntVec) -> Result<IntVec, DimensionMismatch> {
        same_dim(self.dim(), other.dim())?;
        Ok(IntVec(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn try_sub(&self, other: &IntVec) -> Result<IntVec, DimensionMismatch> {
        same_dim(self.dim(), other.dim())?;
        Ok(IntVec(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    /// Sums `items`, all of which must have dimension `dim`.
    pub fn sum<'a>(
        dim: usize,
        items: impl IntoIterator<Item = &'a IntVec>,
    ) -> Result<IntVec, DimensionMismatch> {
        items
            .into_iter()
            .try_fold(IntVec::zeros(dim), |acc, x| acc.try_add(x))
    }

    /// Splits the vector into its positive part `max(x, 0)` and negative part
    /// `-min(x, 0)`. The two parts are disjoint and `pos - neg == x`.
    pub fn jordan_decompose(&self) -> (NatVec, NatVec) {
        let mut pos = Vec::with_capacity(self.dim());
        let mut neg = Vec::with_capacity(self.dim());
        for c in &self.0 {
            let magnitude = c.magnitude().clone();
            match c.sign() {
                Sign::Minus => {
                    pos.push(BigUint::zero());
                    neg.push(magnitude);
                }
                _ => {
                    pos.push(magnitude);
                    neg.push(BigUint::zero());
                }
            }
        }
        (NatVec(pos), NatVec(neg))
    }

    pub fn is_non_negative(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }
}

impl Neg for IntVec {
    type Output = IntVec;

    fn neg(self) -> IntVec {
        IntVec(self.0.into_iter().map(|c| -c).collect())
    }
}

impl Neg for &IntVec {
    type Output = IntVec;

    fn neg(self) -> IntVec {
        -self.clone()
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_components(f, &self.0)
    }
}

impl<const N: usize> From<[i64; N]> for IntVec {
    fn from(components: [i64; N]) -> Self {
        IntVec::from_i64s(&components)
    }
}

/// A T-account `[debit // credit]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TTerm {
    debit: NatVec,
    credit: NatVec,
}

impl TTerm {
    pub fn new(debit: NatVec, credit: NatVec) -> Result<Self, DimensionMismatch> {
        same_dim(debit.dim(), credit.dim())?;
        Ok(TTerm { debit, credit })
    }

    /// The zero T-account `[0 // 0]` of the given dimension.
    pub fn zero(dim: usize) -> Self {
        TTerm {
            debit: NatVec::zeros(dim),
            credit: NatVec::zeros(dim),
        }
    }

    /// `[amount // 0]`
    pub fn debit_only(amount: NatVec) -> Self {
        let credit = NatVec::zeros(amount.dim());
        TTerm {
            debit: amount,
            credit,
        }
    }

    /// `[0 // amount]`
    pub fn credit_only(amount: NatVec) -> Self {
        let debit = NatVec::zeros(amount.dim());
        TTerm {
            debit,
            credit: amount,
        }
    }

    pub fn debit(&self) -> &NatVec {
        &self.debit
    }

    pub fn credit(&self) -> &NatVec {
        &self.credit
    }

    pub fn dim(&self) -> usize {
        self.debit.dim()
    }

    /// Adds debits to debits and credits to credits.
    pub fn try_add(&self, other: &TTerm) -> Result<TTerm, DimensionMismatch> {
        Ok(TTerm {
            debit: self.debit.try_add(&other.debit)?,
            credit: self.credit.try_add(&other.credit)?,
        })
    }

    pub fn sum<'a>(
        dim: usize,
        terms: impl IntoIterator<Item = &'a TTerm>,
    ) -> Result<TTerm, DimensionMismatch> {
        terms
            .into_iter()
            .try_fold(TTerm::zero(dim), |acc, t| acc.try_add(t))
    }

    /// Group equality: `[x // y] = [w // z]` iff `x + z == y + w`.
    pub fn group_eq(&self, other: &TTerm) -> Result<bool, DimensionMismatch> {
        let left = self.debit.try_add(&other.credit)?;
        let right = other.debit.try_add(&self.credit)?;
        Ok(left == right)
    }

    /// The additive inverse, with debit and credit swapped.
    pub fn negate(&self) -> TTerm {
        TTerm {
            debit: self.credit.clone(),
            credit: self.debit.clone(),
        }
    }

    /// Subtracts the componentwise minimum from both sides.
    pub fn reduce(&self) -> TTerm {
        let common = self
            .debit
            .min(&self.credit)
            .expect("sides share a dimension");
        TTerm {
            debit: self.debit.sub_dominated(&common),
            credit: self.credit.sub_dominated(&common),
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.debit
            .is_disjoint(&self.credit)
            .expect("sides share a dimension")
    }

    /// True when the term equals `[0 // 0]` in the group, i.e. both sides match.
    pub fn is_zero(&self) -> bool {
        self.debit == self.credit
    }

    /// Debit isomorphism: `[x // y] -> x - y`.
    pub fn debit_iso(&self) -> IntVec {
        self.debit
            .to_signed()
            .try_sub(&self.credit.to_signed())
            .expect("sides share a dimension")
    }

    /// Credit isomorphism: `[x // y] -> y - x`.
    pub fn credit_iso(&self) -> IntVec {
        self.credit
            .to_signed()
            .try_sub(&self.debit.to_signed())
            .expect("sides share a dimension")
    }

    /// Inverse of the debit isomorphism: `x -> [x+ // x-]`. Always reduced.
    pub fn encode_debit(x: &IntVec) -> TTerm {
        let (pos, neg) = x.jordan_decompose();
        TTerm {
            debit: pos,
            credit: neg,
        }
    }

    /// Inverse of the credit isomorphism: `x -> [x- // x+]`. Always reduced.
    pub fn encode_credit(x: &IntVec) -> TTerm {
        let (pos, neg) = x.jordan_decompose();
        TTerm {
            debit: neg,
            credit: pos,
        }
    }
}

impl Neg for TTerm {
    type Output = TTerm;

    fn neg(self) -> TTerm {
        TTerm {
            debit: self.credit,
            credit: self.debit,
        }
    }
}

impl fmt::Display for TTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} // {}]", self.debit, self.credit)
    }
}

/// A group built from ordered pairs with a cross-condition for equality.
///
/// T-terms under addition and fractions under multiplication are the two
/// instances; the law checks in the test suites run against both.
pub trait PairGroup: Sized + Clone {
    type Error: std::fmt::Debug;

    fn combine(&self, other: &Self) -> Result<Self, Self::Error>;
    /// The identity with the same shape as `self`.
    fn identity_like(&self) -> Self;
    fn inverse(&self) -> Self;
    fn equivalent(&self, other: &Self) -> Result<bool, Self::Error>;
    /// The unique reduced representative of the class.
    fn canonical(&self) -> Self;
}

impl PairGroup for TTerm {
    type Error = DimensionMismatch;

    fn combine(&self, other: &Self) -> Result<Self, DimensionMismatch> {
        self.try_add(other)
    }

    fn identity_like(&self) -> Self {
        TTerm::zero(self.dim())
    }

    fn inverse(&self) -> Self {
        self.negate()
    }

    fn equivalent(&self, other: &Self) -> Result<bool, DimensionMismatch> {
        self.group_eq(other)
    }

    fn canonical(&self) -> Self {
        self.reduce()
    }
}
