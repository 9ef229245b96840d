//! Exact double-entry bookkeeping built on the group of differences.
//!
//! Amounts are vectors of unsigned whole numbers ([`NatVec`]); a T-account
//! ([`TTerm`]) is a `[debit // credit]` pair of them. A balance-sheet equation
//! encodes as a [`Ledger`] whose accounts sum to the zero T-account, journal
//! entries are zero-terms added to it, and the result is reduced and decoded
//! back into an equation. The signed single-sided view ([`sss`]), the scalar
//! transactions table ([`matrix`]) and price valuation ([`valuation`]) are
//! alternative readings of the same books.

pub mod algebra;
pub mod convention;
pub mod format;
pub mod fraction;
pub mod ledger;
pub mod matrix;
pub mod sss;
pub mod valuation;

pub use algebra::{DimensionMismatch, IntVec, NatVec, PairGroup, TTerm};
pub use convention::{ConventionRegistry, CreditConvention, DebitConvention, SignConvention};
pub use fraction::Fraction;
pub use ledger::{
    Account, AccountRole, BalanceSheetEquation, JournalEntry, Ledger, LedgerError, Posting, Side,
    Term, TrialBalance, ValidationReport,
};
pub use sss::{SignedLedger, SignedRow};
pub use valuation::PriceVector;
