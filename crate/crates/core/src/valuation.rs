//! Valuing property vectors with a price vector.
//!
//! The dot product with a price vector is additive, so it maps a vector
//! ledger onto a scalar ledger that still sums to the zero-account.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::algebra::{DimensionMismatch, IntVec};
use crate::ledger::{Account, Ledger, LedgerError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValuationError {
    #[error("price {index} is negative ({price})")]
    NegativePrice { index: usize, price: BigRational },
    #[error("price vector: {0}")]
    Dimension(#[from] DimensionMismatch),
    #[error("account {account} values to {value}, which is not a whole number")]
    NonIntegral { account: String, value: BigRational },
    #[error(transparent)]
    Ledger(#[from] LedgerError),
}

/// Non-negative exact per-unit prices, one per ledger component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriceVector(Vec<BigRational>);

impl PriceVector {
    pub fn new(prices: Vec<BigRational>) -> Result<Self, ValuationError> {
        if let Some((index, price)) = prices.iter().enumerate().find(|(_, p)| p.is_negative()) {
            return Err(ValuationError::NegativePrice {
                index,
                price: price.clone(),
            });
        }
        Ok(PriceVector(prices))
    }

    pub fn from_integers(prices: &[u64]) -> Self {
        PriceVector(
            prices
                .iter()
                .map(|&p| BigRational::from_integer(p.into()))
                .collect(),
        )
    }

    /// The i-th standard basis vector.
    pub fn basis(dim: usize, i: usize) -> Self {
        PriceVector(
            (0..dim)
                .map(|j| BigRational::from_integer(BigInt::from(u8::from(i == j))))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn prices(&self) -> &[BigRational] {
        &self.0
    }

    /// `sum_i p_i * x_i`
    pub fn dot(&self, x: &IntVec) -> Result<BigRational, DimensionMismatch> {
        if self.dim() != x.dim() {
            return Err(DimensionMismatch {
                left: self.dim(),
                right: x.dim(),
            });
        }
        Ok(self
            .0
            .iter()
            .zip(x.components())
            .fold(BigRational::zero(), |acc, (p, c)| {
                acc + p * BigRational::from_integer(c.clone())
            }))
    }
}

impl fmt::Display for PriceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn dot_value(prices: &PriceVector, x: &IntVec) -> Result<BigRational, DimensionMismatch> {
    prices.dot(x)
}

/// Values every account's reduced signed balance and re-encodes it by role
/// into a one-component ledger with the single unit `value`.
///
/// Fractional prices are allowed, but each valued balance must come out
/// whole since scalar T-terms hold whole numbers.
pub fn value_ledger(ledger: &Ledger, prices: &PriceVector) -> Result<Ledger, ValuationError> {
    if prices.dim() != ledger.dimension() {
        return Err(DimensionMismatch {
            left: ledger.dimension(),
            right: prices.dim(),
        }
        .into());
    }
    let mut accounts = Vec::with_capacity(ledger.accounts().len());
    for a in ledger.accounts() {
        let signed = a.role.decode(&a.balance.reduce());
        let value = prices.dot(&signed)?;
        if !value.is_integer() {
            return Err(ValuationError::NonIntegral {
                account: a.name.clone(),
                value,
            });
        }
        let scalar = IntVec::new(vec![value.to_integer()]);
        accounts.push(Account {
            balance: a.role.encode(&scalar),
            ..a.clone()
        });
    }
    let units = vec!["value".to_string()];
    Ok(if ledger.is_balanced() {
        Ledger::new(units, accounts)?
    } else {
        Ledger::unverified(units, accounts)?
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ledger::{BalanceSheetEquation, Term};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn dot_examples() {
        let p = PriceVector::from_integers(&[1, 100, 40]);
        assert_eq!(p.dot(&IntVec::from([9700, 40, 20])).unwrap(), q(14500, 1));
        assert_eq!(p.dot(&IntVec::zeros(3)).unwrap(), q(0, 1));
        assert_eq!(
            dot_value(&p, &IntVec::from([500, 40, 20])).unwrap(),
            q(5300, 1)
        );
        assert!(p.dot(&IntVec::zeros(2)).is_err());
    }

    #[test]
    fn negative_prices_rejected() {
        assert!(matches!(
            PriceVector::new(vec![q(1, 1), q(-1, 2)]),
            Err(ValuationError::NegativePrice { index: 1, .. })
        ));
    }

    #[test]
    fn fractional_prices() {
        let p = PriceVector::new(vec![q(1, 2), q(3, 4)]).unwrap();
        assert_eq!(p.dot(&IntVec::from([3, 2])).unwrap(), q(3, 1));

        let ledger = BalanceSheetEquation::new(
            vec![Term::new("A", [1, 0].into())],
            vec![Term::new("E", [1, 0].into())],
        )
        .encode(vec!["x".into(), "y".into()])
        .unwrap();
        assert!(matches!(
            value_ledger(&ledger, &p),
            Err(ValuationError::NonIntegral { .. })
        ));
    }

    #[test]
    fn zero_ledger_values_to_zero() {
        let ledger = BalanceSheetEquation::new(
            vec![Term::new("A", IntVec::zeros(3))],
            vec![Term::new("E", IntVec::zeros(3))],
        )
        .encode(vec!["a".into(), "b".into(), "c".into()])
        .unwrap();
        let valued = value_ledger(&ledger, &PriceVector::from_integers(&[1, 100, 40])).unwrap();
        assert_eq!(valued.dimension(), 1);
        assert!(valued
            .accounts()
            .iter()
            .all(|a| a.balance.debit().is_zero() && a.balance.credit().is_zero()));
    }
}
