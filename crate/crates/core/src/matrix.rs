//! The scalar transactions table.
//!
//! Each simple transfer lands in the cell at (debited account row, credited
//! account column). Row sums are the debits to an account and column sums its
//! credits, so `[row // col]` is exactly the summed journal T-term of that
//! account. Only dimension 1 is supported.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{NatVec, TTerm};
use crate::ledger::{AccountRole, JournalEntry, Ledger, LedgerError, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("transactions tables need a scalar ledger, this one has dimension {0}")]
    NotScalar(usize),
    #[error(
        "entry {entry} ({description:?}) debits {debited:?} and credits {credited:?}; \
         split it into simple transfers with one debit account and one credit account"
    )]
    CompoundEntry {
        entry: usize,
        description: String,
        debited: Vec<String>,
        credited: Vec<String>,
    },
    #[error(transparent)]
    InvalidEntry(#[from] LedgerError),
    #[error("table accounts {table:?} do not match ledger accounts {ledger:?}")]
    AccountMismatch {
        table: Vec<String>,
        ledger: Vec<String>,
    },
    #[error("table must be square over its {0} accounts")]
    NotSquare(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransactionsTable {
    accounts: Vec<String>,
    /// `cells[i][j]`: amount debited to account `i` and credited to account `j`.
    cells: Vec<Vec<BigUint>>,
    warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSums {
    pub row_sums: Vec<BigUint>,
    pub col_sums: Vec<BigUint>,
}

fn distinct_accounts(entry: &JournalEntry, side: Side) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for p in entry.postings.iter().filter(|p| p.side == side) {
        if !out.contains(&p.account) {
            out.push(p.account.clone());
        }
    }
    out
}

/// Builds the table over the ledger's accounts, in ledger order.
pub fn build_table(
    journal: &[JournalEntry],
    ledger: &Ledger,
) -> Result<TransactionsTable, MatrixError> {
    if ledger.dimension() != 1 {
        return Err(MatrixError::NotScalar(ledger.dimension()));
    }
    let accounts: Vec<String> = ledger.accounts().iter().map(|a| a.name.clone()).collect();
    let index = |name: &str| accounts.iter().position(|a| a == name).expect("validated");
    let m = accounts.len();
    let mut cells = vec![vec![BigUint::zero(); m]; m];
    let mut warnings = Vec::new();

    for (i, entry) in journal.iter().enumerate() {
        let report = ledger.validate(entry);
        if !report.is_valid() {
            return Err(LedgerError::EntryRejected {
                entry: i + 1,
                description: entry.description.clone(),
                report: Box::new(report),
            }
            .into());
        }
        let debited = distinct_accounts(entry, Side::Dr);
        let credited = distinct_accounts(entry, Side::Cr);
        if debited.len() != 1 || credited.len() != 1 {
            return Err(MatrixError::CompoundEntry {
                entry: i + 1,
                description: entry.description.clone(),
                debited,
                credited,
            });
        }
        let amount: BigUint = entry
            .postings
            .iter()
            .filter(|p| p.side == Side::Dr)
            .map(|p| &p.amount.components()[0])
            .sum();
        let (row, col) = (index(&debited[0]), index(&credited[0]));
        if row == col {
            warnings.push(format!(
                "entry {} ({:?}) debits and credits {}; recorded on the diagonal",
                i + 1,
                entry.description,
                debited[0]
            ));
        }
        cells[row][col] += amount;
    }

    Ok(TransactionsTable {
        accounts,
        cells,
        warnings,
    })
}

impl TransactionsTable {
    /// A table from explicit cells; `cells` must be square over `accounts`.
    pub fn from_cells(
        accounts: Vec<String>,
        cells: Vec<Vec<BigUint>>,
    ) -> Result<Self, MatrixError> {
        let m = accounts.len();
        if cells.len() != m || cells.iter().any(|r| r.len() != m) {
            return Err(MatrixError::NotSquare(m));
        }
        Ok(TransactionsTable {
            accounts,
            cells,
            warnings: Vec::new(),
        })
    }

    pub fn accounts(&self) -> &[String] {
        &self.accounts
    }

    pub fn cells(&self) -> &[Vec<BigUint>] {
        &self.cells
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    fn index(&self, name: &str) -> Option<usize> {
        self.accounts.iter().position(|a| a == name)
    }

    /// The cell for (`debited`, `credited`).
    pub fn cell(&self, debited: &str, credited: &str) -> Option<&BigUint> {
        Some(&self.cells[self.index(debited)?][self.index(credited)?])
    }

    pub fn sums(&self) -> TableSums {
        let m = self.accounts.len();
        let row_sums = self.cells.iter().map(|r| r.iter().sum()).collect();
        let col_sums = (0..m)
            .map(|j| self.cells.iter().map(|r| &r[j]).sum())
            .collect();
        TableSums { row_sums, col_sums }
    }

    /// Per-account change in balance: row minus column for debit-balance
    /// accounts, column minus row for credit-balance ones.
    pub fn net_changes(&self, ledger: &Ledger) -> Result<Vec<(String, BigInt)>, MatrixError> {
        let ledger_names: Vec<String> = ledger.accounts().iter().map(|a| a.name.clone()).collect();
        if ledger_names != self.accounts {
            return Err(MatrixError::AccountMismatch {
                table: self.accounts.clone(),
                ledger: ledger_names,
            });
        }
        let sums = self.sums();
        Ok(ledger
            .accounts()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let row = BigInt::from(sums.row_sums[i].clone());
                let col = BigInt::from(sums.col_sums[i].clone());
                let change = match a.role {
                    AccountRole::DebitBalance => row - col,
                    AccountRole::CreditBalance => col - row,
                };
                (a.name.clone(), change)
            })
            .collect())
    }

    /// True iff every account's `[row sum // column sum]` equals, in the
    /// group, the sum of that account's journal T-terms.
    pub fn is_consistent_with(&self, journal: &[JournalEntry], ledger: &Ledger) -> bool {
        let names: Vec<&str> = ledger.accounts().iter().map(|a| a.name.as_str()).collect();
        if ledger.dimension() != 1 || names != self.accounts {
            return false;
        }
        let mut totals = vec![TTerm::zero(1); names.len()];
        for p in journal.iter().flat_map(|e| &e.postings) {
            let (Some(i), 1) = (self.index(&p.account), p.amount.dim()) else {
                return false;
            };
            totals[i] = totals[i].try_add(&p.term()).expect("scalar");
        }
        let sums = self.sums();
        totals.iter().enumerate().all(|(i, total)| {
            let from_table = TTerm::new(
                NatVec::new(vec![sums.row_sums[i].clone()]),
                NatVec::new(vec![sums.col_sums[i].clone()]),
            )
            .expect("scalar");
            from_table.group_eq(total).expect("scalar")
        })
    }
}

/// Free-function form of [`TransactionsTable::is_consistent_with`].
pub fn consistency_check(
    table: &TransactionsTable,
    journal: &[JournalEntry],
    ledger: &Ledger,
) -> bool {
    table.is_consistent_with(journal, ledger)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ledger::{BalanceSheetEquation, Posting, Term};

    fn ab() -> Ledger {
        BalanceSheetEquation::new(
            vec![Term::new("A", [10].into())],
            vec![Term::new("B", [10].into())],
        )
        .encode(vec!["value".into()])
        .unwrap()
    }

    fn transfer(dr: &str, cr: &str, amount: u64) -> JournalEntry {
        JournalEntry::new(
            format!("{dr} <- {cr}"),
            vec![
                Posting::dr(dr, [amount].into()),
                Posting::cr(cr, [amount].into()),
            ],
        )
    }

    #[test]
    fn repeated_pairs_accumulate() {
        let j = [transfer("A", "B", 10), transfer("A", "B", 5)];
        let table = build_table(&j, &ab()).unwrap();
        assert_eq!(table.cell("A", "B"), Some(&BigUint::from(15u32)));
        assert_eq!(table.cell("B", "A"), Some(&BigUint::zero()));
        assert!(table.is_consistent_with(&j, &ab()));
    }

    #[test]
    fn empty_journal_gives_zero_table() {
        let table = build_table(&[], &ab()).unwrap();
        assert!(table.cells().iter().flatten().all(Zero::is_zero));
        let sums = table.sums();
        assert!(sums
            .row_sums
            .iter()
            .chain(&sums.col_sums)
            .all(Zero::is_zero));
        assert!(table
            .net_changes(&ab())
            .unwrap()
            .iter()
            .all(|(_, c)| c.is_zero()));
        assert!(consistency_check(&table, &[], &ab()));
    }

    #[test]
    fn rejects_vectors_and_compound_entries() {
        let vector = Ledger::empty(vec!["x".into(), "y".into()]).unwrap();
        assert_eq!(build_table(&[], &vector), Err(MatrixError::NotScalar(2)));

        let ledger = ab()
            .open_account("C", AccountRole::DebitBalance, false)
            .unwrap();
        let compound = JournalEntry::new(
            "split",
            vec![
                Posting::dr("A", [3].into()),
                Posting::dr("C", [2].into()),
                Posting::cr("B", [5].into()),
            ],
        );
        let err = build_table(&[compound], &ledger).unwrap_err();
        assert!(matches!(err, MatrixError::CompoundEntry { entry: 1, .. }));
        assert!(err.to_string().contains("split it into simple transfers"));

        let unbalanced = JournalEntry::new(
            "bad",
            vec![Posting::dr("A", [3].into()), Posting::cr("B", [2].into())],
        );
        assert!(matches!(
            build_table(&[unbalanced], &ab()),
            Err(MatrixError::InvalidEntry(_))
        ));
    }

    #[test]
    fn diagonal_is_a_warning() {
        let table = build_table(&[transfer("A", "A", 4)], &ab()).unwrap();
        assert_eq!(table.cell("A", "A"), Some(&BigUint::from(4u32)));
        assert_eq!(table.warnings().len(), 1);
    }

    #[test]
    fn tampered_table_is_inconsistent() {
        let j = [transfer("A", "B", 10)];
        let table = build_table(&j, &ab()).unwrap();
        let mut cells = table.cells().to_vec();
        cells[0][1] += 1u32;
        let tampered = TransactionsTable::from_cells(table.accounts().to_vec(), cells).unwrap();
        assert!(!tampered.is_consistent_with(&j, &ab()));
    }

    #[test]
    fn net_changes_needs_matching_accounts() {
        let table = build_table(&[], &ab()).unwrap();
        let other = ab()
            .open_account("C", AccountRole::DebitBalance, false)
            .unwrap();
        assert!(matches!(
            table.net_changes(&other),
            Err(MatrixError::AccountMismatch { .. })
        ));
        assert!(TransactionsTable::from_cells(vec!["A".into()], vec![]).is_err());
    }
}
