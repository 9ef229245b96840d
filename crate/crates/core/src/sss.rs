//! Single-sided accounts holding signed vectors.
//!
//! The signed view is obtained from a double-entry ledger through a sign
//! convention (the debit isomorphism by default). Ledgers and transactions
//! become zero-rows: lists of signed vectors summing to zero. Posting the
//! signed journal to the signed ledger lands on the same ending balances as
//! posting in double-entry form and converting afterwards.

use thiserror::Error;

use crate::algebra::{DimensionMismatch, IntVec};
use crate::convention::{DebitConvention, SignConvention};
use crate::ledger::{AccountRole, BalanceSheetEquation, JournalEntry, Ledger, LedgerError, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedAccount {
    pub name: String,
    /// Kept only to render the ledger back as `A = L + E`.
    pub role: AccountRole,
    pub balance: IntVec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedLedger {
    units: Vec<String>,
    accounts: Vec<SignedAccount>,
}

/// One transaction in signed form: a change per affected account.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedRow {
    pub description: String,
    pub changes: Vec<(String, IntVec)>,
}

impl SignedRow {
    pub fn values(&self) -> Vec<IntVec> {
        self.changes.iter().map(|(_, v)| v.clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SssError {
    #[error("row {row} ({description:?}) does not sum to zero, residual {residual}")]
    RowNotZero {
        row: usize,
        description: String,
        residual: IntVec,
    },
    #[error("row {row}: unknown account {account}")]
    UnknownAccount { row: usize, account: String },
    #[error("row {row}: account {account}: {source}")]
    Dimension {
        row: usize,
        account: String,
        source: DimensionMismatch,
    },
}

/// True iff the vectors sum to zero. An empty row is trivially a zero-row.
pub fn zero_row_check(row: &[IntVec]) -> Result<bool, DimensionMismatch> {
    let Some(first) = row.first() else {
        return Ok(true);
    };
    Ok(IntVec::sum(first.dim(), row)?.is_zero())
}

/// Signed view through the debit isomorphism.
pub fn to_signed(ledger: &Ledger) -> SignedLedger {
    to_signed_with(ledger, &DebitConvention)
}

pub fn to_signed_with(ledger: &Ledger, convention: &dyn SignConvention) -> SignedLedger {
    SignedLedger {
        units: ledger.units().to_vec(),
        accounts: ledger
            .accounts()
            .iter()
            .map(|a| SignedAccount {
                name: a.name.clone(),
                role: a.role,
                balance: convention.to_signed(&a.balance),
            })
            .collect(),
    }
}

/// Converts each entry to one signed row through the debit isomorphism.
pub fn journal_to_signed(
    journal: &[JournalEntry],
    ledger: &Ledger,
) -> Result<Vec<SignedRow>, LedgerError> {
    journal_to_signed_with(journal, ledger, &DebitConvention)
}

/// Each entry nets to one signed vector per account it touches, in order of
/// first appearance.
pub fn journal_to_signed_with(
    journal: &[JournalEntry],
    ledger: &Ledger,
    convention: &dyn SignConvention,
) -> Result<Vec<SignedRow>, LedgerError> {
    journal
        .iter()
        .enumerate()
        .map(|(i, entry)| {
            let report = ledger.validate(entry);
            if !report.is_valid() {
                return Err(LedgerError::EntryRejected {
                    entry: i + 1,
                    description: entry.description.clone(),
                    report: Box::new(report),
                });
            }
            let nets = entry.net_terms(ledger.dimension()).expect("validated");
            Ok(SignedRow {
                description: entry.description.clone(),
                changes: nets
                    .into_iter()
                    .map(|(name, term)| (name, convention.to_signed(&term)))
                    .collect(),
            })
        })
        .collect()
}

impl SignedLedger {
    pub fn dimension(&self) -> usize {
        self.units.len()
    }

    pub fn units(&self) -> &[String] {
        &self.units
    }

    pub fn accounts(&self) -> &[SignedAccount] {
        &self.accounts
    }

    pub fn account(&self, name: &str) -> Option<&SignedAccount> {
        self.accounts.iter().find(|a| a.name == name)
    }

    pub fn balances(&self) -> Vec<IntVec> {
        self.accounts.iter().map(|a| a.balance.clone()).collect()
    }

    pub fn is_zero_row(&self) -> bool {
        IntVec::sum(self.dimension(), self.accounts.iter().map(|a| &a.balance))
            .map(|s| s.is_zero())
            .unwrap_or(false)
    }

    fn check_row(&self, index: usize, row: &SignedRow) -> Result<(), SssError> {
        let dim = self.dimension();
        for (name, value) in &row.changes {
            if self.account(name).is_none() {
                return Err(SssError::UnknownAccount {
                    row: index,
                    account: name.clone(),
                });
            }
            if value.dim() != dim {
                return Err(SssError::Dimension {
                    row: index,
                    account: name.clone(),
                    source: DimensionMismatch {
                        left: dim,
                        right: value.dim(),
                    },
                });
            }
        }
        let residual = IntVec::sum(dim, row.changes.iter().map(|(_, v)| v)).expect("checked");
        if !residual.is_zero() {
            return Err(SssError::RowNotZero {
                row: index,
                description: row.description.clone(),
                residual,
            });
        }
        Ok(())
    }

    /// Adds each row's changes to the matching balances. Every row must be a
    /// zero-row over known accounts; otherwise nothing is posted.
    pub fn post(&self, rows: &[SignedRow]) -> Result<SignedLedger, SssError> {
        for (i, row) in rows.iter().enumerate() {
            self.check_row(i + 1, row)?;
        }
        let mut accounts = self.accounts.clone();
        for (name, value) in rows.iter().flat_map(|r| &r.changes) {
            let acc = accounts
                .iter_mut()
                .find(|a| a.name == *name)
                .expect("checked");
            acc.balance = acc.balance.try_add(value).expect("checked");
        }
        Ok(SignedLedger {
            units: self.units.clone(),
            accounts,
        })
    }

    /// Rewrites the `A - L - E = 0` row as `A = L + E`. `convention` must be
    /// the one the ledger was built with.
    pub fn to_equation(&self, convention: &dyn SignConvention) -> BalanceSheetEquation {
        let mut eq = BalanceSheetEquation::default();
        for a in &self.accounts {
            let value = a.role.decode(&convention.to_term(&a.balance));
            let term = Term::new(a.name.clone(), value);
            match a.role {
                AccountRole::DebitBalance => eq.lhs.push(term),
                AccountRole::CreditBalance => eq.rhs.push(term),
            }
        }
        eq
    }
}

/// Free-function form of [`SignedLedger::post`].
pub fn signed_post(ledger: &SignedLedger, rows: &[SignedRow]) -> Result<SignedLedger, SssError> {
    ledger.post(rows)
}
