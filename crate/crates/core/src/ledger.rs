//! The double-entry method: a balance-sheet equation is encoded as a ledger
//! whose accounts sum to the zero T-account, journal entries are zero-terms
//! added to it, and the ending ledger is reduced and decoded back to an
//! equation.
//!
//! Every operation returns a new [`Ledger`]; nothing is mutated in place.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::algebra::{DimensionMismatch, IntVec, NatVec, TTerm};
use crate::convention::{CreditConvention, DebitConvention, SignConvention};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AccountRole {
    DebitBalance,
    CreditBalance,
}

impl AccountRole {
    /// The isomorphism used to read and write balances of this role.
    pub fn convention(self) -> &'static dyn SignConvention {
        match self {
            AccountRole::DebitBalance => &DebitConvention,
            AccountRole::CreditBalance => &CreditConvention,
        }
    }

    pub fn decode(self, term: &TTerm) -> IntVec {
        self.convention().to_signed(term)
    }

    pub fn encode(self, value: &IntVec) -> TTerm {
        self.convention().to_term(value)
    }
}

impl fmt::Display for AccountRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AccountRole::DebitBalance => "debit-balance",
            AccountRole::CreditBalance => "credit-balance",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Dr,
    Cr,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Dr => "dr",
            Side::Cr => "cr",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Account {
    pub name: String,
    pub role: AccountRole,
    /// Income-statement (temporary) account, closed into equity at period end.
    pub nominal: bool,
    pub balance: TTerm,
}

impl Account {
    pub fn new(name: impl Into<String>, role: AccountRole, balance: TTerm) -> Self {
        Account {
            name: name.into(),
            role,
            nominal: false,
            balance,
        }
    }

    /// A nominal account opened with a zero balance.
    pub fn nominal(name: impl Into<String>, role: AccountRole, dim: usize) -> Self {
        Account {
            name: name.into(),
            role,
            nominal: true,
            balance: TTerm::zero(dim),
        }
    }

    /// The balance read through the account's role.
    pub fn signed_balance(&self) -> IntVec {
        self.role.decode(&self.balance)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Posting {
    pub account: String,
    pub side: Side,
    pub amount: NatVec,
}

impl Posting {
    pub fn dr(account: impl Into<String>, amount: NatVec) -> Self {
        Posting {
            account: account.into(),
            side: Side::Dr,
            amount,
        }
    }

    pub fn cr(account: impl Into<String>, amount: NatVec) -> Self {
        Posting {
            account: account.into(),
            side: Side::Cr,
            amount,
        }
    }

    pub fn term(&self) -> TTerm {
        match self.side {
            Side::Dr => TTerm::debit_only(self.amount.clone()),
            Side::Cr => TTerm::credit_only(self.amount.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JournalEntry {
    pub description: String,
    pub postings: Vec<Posting>,
}

impl JournalEntry {
    pub fn new(description: impl Into<String>, postings: Vec<Posting>) -> Self {
        JournalEntry {
            description: description.into(),
            postings,
        }
    }

    /// Sum of all posting terms.
    pub fn total(&self, dim: usize) -> Result<TTerm, DimensionMismatch> {
        self.postings
            .iter()
            .try_fold(TTerm::zero(dim), |acc, p| acc.try_add(&p.term()))
    }

    /// Net T-term per account, in order of first appearance.
    pub fn net_terms(&self, dim: usize) -> Result<Vec<(String, TTerm)>, DimensionMismatch> {
        let mut out: Vec<(String, TTerm)> = Vec::new();
        for p in &self.postings {
            let term = p.term();
            match out.iter_mut().find(|(name, _)| *name == p.account) {
                Some((_, acc)) => *acc = acc.try_add(&term)?,
                None => {
                    if term.dim() != dim {
                        return Err(DimensionMismatch {
                            left: dim,
                            right: term.dim(),
                        });
                    }
                    out.push((p.account.clone(), term));
                }
            }
        }
        Ok(out)
    }
}

/// Outcome of checking one journal entry against a ledger.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub description: String,
    pub unknown_accounts: Vec<String>,
    /// `(account, amount dimension)` for every posting of the wrong size.
    pub dimension_mismatches: Vec<(String, usize)>,
    /// Set when the entry has fewer than two postings.
    pub too_few_postings: Option<usize>,
    /// Raw sum of the postings when it is not a zero-account.
    pub residual: Option<TTerm>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.unknown_accounts.is_empty()
            && self.dimension_mismatches.is_empty()
            && self.too_few_postings.is_none()
            && self.residual.is_none()
    }

    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(n) = self.too_few_postings {
            out.push(format!("needs at least two postings, has {n}"));
        }
        for name in &self.unknown_accounts {
            out.push(format!("unknown account {name}"));
        }
        for (name, dim) in &self.dimension_mismatches {
            out.push(format!("posting to {name} has {dim} components"));
        }
        if let Some(r) = &self.residual {
            out.push(format!("debits and credits differ, residual {r}"));
        }
        out
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            f.write_str("ok")?;
        } else {
            f.write_str(&self.problems().join("; "))?;
        }
        for w in &self.warnings {
            write!(f, " (warning: {w})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialBalance {
    pub debit_total: NatVec,
    pub credit_total: NatVec,
    pub balanced: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub name: String,
    pub value: IntVec,
}

impl Term {
    pub fn new(name: impl Into<String>, value: IntVec) -> Self {
        Term {
            name: name.into(),
            value,
        }
    }
}

/// `lhs_1 + ... = rhs_1 + ...` over signed vectors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BalanceSheetEquation {
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
}

impl BalanceSheetEquation {
    pub fn new(lhs: Vec<Term>, rhs: Vec<Term>) -> Self {
        BalanceSheetEquation { lhs, rhs }
    }

    pub fn is_empty(&self) -> bool {
        self.lhs.is_empty() && self.rhs.is_empty()
    }

    /// Signed totals of both sides.
    pub fn sides(&self, dim: usize) -> Result<(IntVec, IntVec), DimensionMismatch> {
        Ok((
            IntVec::sum(dim, self.lhs.iter().map(|t| &t.value))?,
            IntVec::sum(dim, self.rhs.iter().map(|t| &t.value))?,
        ))
    }

    pub fn is_balanced(&self, dim: usize) -> Result<bool, DimensionMismatch> {
        let (l, r) = self.sides(dim)?;
        Ok(l == r)
    }

    /// Encodes the equation as an equation zero-account: left-hand terms
    /// become debit-balance accounts, right-hand terms credit-balance ones.
    /// `units` names the components and fixes the dimension.
    pub fn encode(&self, units: Vec<String>) -> Result<Ledger, LedgerError> {
        let dim = units.len();
        let mut seen = HashSet::new();
        for term in self.lhs.iter().chain(&self.rhs) {
            if !seen.insert(term.name.as_str()) {
                return Err(LedgerError::DuplicateAccount(term.name.clone()));
            }
            if term.value.dim() != dim {
                return Err(LedgerError::Dimension {
                    account: term.name.clone(),
                    source: DimensionMismatch {
                        left: dim,
                        right: term.value.dim(),
                    },
                });
            }
        }
        let (l, r) = self.sides(dim).expect("dimensions checked");
        if l != r {
            return Err(LedgerError::UnbalancedEquation { lhs: l, rhs: r });
        }
        let accounts = self
            .lhs
            .iter()
            .map(|t| (t, AccountRole::DebitBalance))
            .chain(self.rhs.iter().map(|t| (t, AccountRole::CreditBalance)))
            .map(|(t, role)| Account::new(t.name.clone(), role, role.encode(&t.value)))
            .collect();
        Ledger::new(units, accounts)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LedgerError {
    #[error("a ledger needs at least one unit")]
    NoUnits,
    #[error("duplicate unit name {0}")]
    DuplicateUnit(String),
    #[error("account names must be non-empty")]
    EmptyName,
    #[error("duplicate account {0}")]
    DuplicateAccount(String),
    #[error("account {account}: {source}")]
    Dimension {
        account: String,
        source: DimensionMismatch,
    },
    #[error("accounts do not sum to a zero-account, residual {residual}")]
    Unbalanced { residual: TTerm },
    #[error("equation does not balance: left side {lhs}, right side {rhs}")]
    UnbalancedEquation { lhs: IntVec, rhs: IntVec },
    #[error("entry {entry} ({description:?}) rejected: {report}")]
    EntryRejected {
        /// 1-based position in the journal.
        entry: usize,
        description: String,
        report: Box<ValidationReport>,
    },
    #[error("unknown account {0}")]
    UnknownAccount(String),
    #[error("equity account {0} is nominal")]
    NominalEquity(String),
    #[error("equity account {0} is not credit-balance")]
    EquityNotCreditBalance(String),
}

/// The listing of account T-terms encoding a balance-sheet equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ledger {
    units: Vec<String>,
    accounts: Vec<Account>,
}

impl Ledger {
    /// Builds a ledger and checks that its accounts sum to a zero-account.
    pub fn new(units: Vec<String>, accounts: Vec<Account>) -> Result<Self, LedgerError> {
        let ledger = Ledger::unverified(units, accounts)?;
        let total = ledger.balance_total();
        if !total.is_zero() {
            return Err(LedgerError::Unbalanced { residual: total });
        }
        Ok(ledger)
    }

    /// Builds a ledger with every structural check except the zero-account
    /// property, so that out-of-balance books can still be trial-balanced.
    pub fn unverified(units: Vec<String>, accounts: Vec<Account>) -> Result<Self, LedgerError> {
        if units.is_empty() {
            return Err(LedgerError::NoUnits);
        }
        let mut seen = HashSet::new();
        for u in &units {
            if !seen.insert(u.as_str()) {
                return Err(LedgerError::DuplicateUnit(u.clone()));
            }
        }
        let dim = units.len();
        let mut names = HashSet::new();
        for a in &accounts {
            if a.name.is_empty() {
                return Err(LedgerError::EmptyName);
            }
            if !names.insert(a.name.as_str()) {
                return Err(LedgerError::DuplicateAccount(a.name.clone()));
            }
            if a.balance.dim() != dim {
                return Err(LedgerError::Dimension {
                    account: a.name.clone(),
                    source: DimensionMismatch {
                        left: dim,
                        right: a.balance.dim(),
                    },
                });
            }
        }
        Ok(Ledger { units, accounts })
    }

    pub fn empty(units: Vec<String>) -> Result<Self, LedgerError> {
        Ledger::new(units, Vec::new())
    }

    pub fn dimension(&self) -> usize {
        self.units.len()
    }

    pub fn units(&self) -> &[String] {
        &self.units
    }

    pub fn accounts(&self) -> &[Account] {
        &self.accounts
    }

    pub fn account(&self, name: &str) -> Option<&Account> {
        self.accounts.iter().find(|a| a.name == name)
    }

    fn position(&self, name: &str) -> Option<usize> {
        self.accounts.iter().position(|a| a.name == name)
    }

    /// Adds a zero-balance account. The zero-account property is unaffected.
    pub fn open_account(
        &self,
        name: impl Into<String>,
        role: AccountRole,
        nominal: bool,
    ) -> Result<Ledger, LedgerError> {
        let mut accounts = self.accounts.clone();
        accounts.push(Account {
            name: name.into(),
            role,
            nominal,
            balance: TTerm::zero(self.dimension()),
        });
        Ledger::unverified(self.units.clone(), accounts)
    }

    /// Sum of every account balance.
    pub fn balance_total(&self) -> TTerm {
        TTerm::sum(self.dimension(), self.accounts.iter().map(|a| &a.balance))
            .expect("account dimensions checked at construction")
    }

    pub fn is_balanced(&self) -> bool {
        self.balance_total().is_zero()
    }

    /// Checks an entry for known accounts, matching dimensions, at least two
    /// postings and equal debits and credits.
    pub fn validate(&self, entry: &JournalEntry) -> ValidationReport {
        let dim = self.dimension();
        let mut unknown_accounts = Vec::new();
        let mut dimension_mismatches = Vec::new();
        for p in &entry.postings {
            if self.account(&p.account).is_none() && !unknown_accounts.contains(&p.account) {
                unknown_accounts.push(p.account.clone());
            }
            if p.amount.dim() != dim {
                dimension_mismatches.push((p.account.clone(), p.amount.dim()));
            }
        }
        let too_few_postings = (entry.postings.len() < 2).then_some(entry.postings.len());
        let residual = if dimension_mismatches.is_empty() {
            let total = entry.total(dim).expect("dimensions checked");
            (!total.is_zero()).then_some(total)
        } else {
            None
        };

        let mut warnings = Vec::new();
        let debited: HashSet<&str> = entry
            .postings
            .iter()
            .filter(|p| p.side == Side::Dr)
            .map(|p| p.account.as_str())
            .collect();
        let mut flagged = HashSet::new();
        for p in entry.postings.iter().filter(|p| p.side == Side::Cr) {
            if debited.contains(p.account.as_str()) && flagged.insert(p.account.as_str()) {
                warnings.push(format!("{} is both debited and credited", p.account));
            }
        }

        ValidationReport {
            description: entry.description.clone(),
            unknown_accounts,
            dimension_mismatches,
            too_few_postings,
            residual,
            warnings,
        }
    }

    /// Posts a journal: every posting's T-term is added to its account in
    /// order. Balances are left unreduced. If any entry fails validation the
    /// whole journal is rejected.
    pub fn post(&self, journal: &[JournalEntry]) -> Result<Ledger, LedgerError> {
        for (i, entry) in journal.iter().enumerate() {
            let report = self.validate(entry);
            if !report.is_valid() {
                return Err(LedgerError::EntryRejected {
                    entry: i + 1,
                    description: entry.description.clone(),
                    report: Box::new(report),
                });
            }
        }
        let mut accounts = self.accounts.clone();
        for p in journal.iter().flat_map(|e| &e.postings) {
            let idx = self.position(&p.account).expect("validated");
            accounts[idx].balance = accounts[idx].balance.try_add(&p.term()).expect("validated");
        }
        Ok(Ledger {
            units: self.units.clone(),
            accounts,
        })
    }

    pub fn trial_balance(&self) -> TrialBalance {
        let total = self.balance_total();
        TrialBalance {
            balanced: total.is_zero(),
            debit_total: total.debit().clone(),
            credit_total: total.credit().clone(),
        }
    }

    /// Every balance replaced by its reduced form.
    pub fn reduced(&self) -> Ledger {
        Ledger {
            units: self.units.clone(),
            accounts: self
                .accounts
                .iter()
                .map(|a| Account {
                    balance: a.balance.reduce(),
                    ..a.clone()
                })
                .collect(),
        }
    }

    /// Reads the ledger back as an equation: debit-balance accounts on the
    /// left, credit-balance accounts on the right.
    pub fn decode(&self) -> BalanceSheetEquation {
        let mut eq = BalanceSheetEquation::default();
        for a in &self.accounts {
            let term = Term::new(a.name.clone(), a.signed_balance());
            match a.role {
                AccountRole::DebitBalance => eq.lhs.push(term),
                AccountRole::CreditBalance => eq.rhs.push(term),
            }
        }
        eq
    }

    /// Closes every nominal account into `equity`. One entry per non-zero
    /// nominal account moves its reduced balance over; the entries are
    /// posted and returned.
    pub fn close_nominal(&self, equity: &str) -> Result<(Ledger, Vec<JournalEntry>), LedgerError> {
        let target = self
            .account(equity)
            .ok_or_else(|| LedgerError::UnknownAccount(equity.to_string()))?;
        if target.nominal {
            return Err(LedgerError::NominalEquity(equity.to_string()));
        }
        if target.role != AccountRole::CreditBalance {
            return Err(LedgerError::EquityNotCreditBalance(equity.to_string()));
        }

        let mut entries = Vec::new();
        for a in self.accounts.iter().filter(|a| a.nominal) {
            let r = a.balance.reduce();
            if r.is_zero() {
                continue;
            }
            let (d, c) = (r.debit(), r.credit());
            let mut postings = Vec::new();
            if !c.is_zero() {
                postings.push(Posting::dr(a.name.clone(), c.clone()));
            }
            if !d.is_zero() {
                postings.push(Posting::cr(a.name.clone(), d.clone()));
            }
            if !d.is_zero() {
                postings.push(Posting::dr(equity, d.clone()));
            }
            if !c.is_zero() {
                postings.push(Posting::cr(equity, c.clone()));
            }
            entries.push(JournalEntry::new(
                format!("close {} into {}", a.name, equity),
                postings,
            ));
        }
        let closed = self.post(&entries)?;
        Ok((closed, entries))
    }
}
