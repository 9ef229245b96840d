//! Plain-text ledger and journal files, and balance-sheet rendering.
//!
//! Ledger file:
//!
//! ```text
//! pacioli-ledger v1
//! dimension 1
//! units value
//! account Assets dr 15000 // 0
//! account Revenue cr nominal 0 // 0
//! ```
//!
//! Journal file:
//!
//! ```text
//! pacioli-journal v1
//! dimension 1
//! entry "inputs used up"
//!   cr Assets 1200
//!   dr Equity 1200
//! end
//! ```
//!
//! `#` starts a comment that runs to the end of the line (outside quotes).
//! Amounts are base-10 unsigned integer literals.

use std::collections::HashSet;
use std::fmt::Write as _;

use num_bigint::BigUint;
use thiserror::Error;

use crate::algebra::{NatVec, TTerm};
use crate::ledger::{
    Account, AccountRole, BalanceSheetEquation, JournalEntry, Ledger, LedgerError, Posting, Term,
};

pub const LEDGER_HEADER: &str = "pacioli-ledger v1";
pub const JOURNAL_HEADER: &str = "pacioli-journal v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input, expected {expected}")]
    UnexpectedEof { expected: &'static str },
    #[error("line {line}: {token:?} is not an unsigned integer")]
    NotANumber { line: usize, token: String },
    #[error("line {line}: expected {expected} components, found {found}")]
    ComponentCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: duplicate account {name}")]
    DuplicateAccount { line: usize, name: String },
    #[error("line {line}: duplicate unit {name}")]
    DuplicateUnit { line: usize, name: String },
    #[error("ledger accounts do not sum to a zero-account, residual {residual}")]
    Unbalanced { residual: TTerm },
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

fn strip_comment(line: &str) -> &str {
    let mut quoted = false;
    for (i, ch) in line.char_indices() {
        match ch {
            '"' => quoted = !quoted,
            '#' if !quoted => return &line[..i],
            _ => {}
        }
    }
    line
}

/// Non-blank lines with comments removed, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l).trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_number(line: usize, token: &str) -> Result<BigUint, FormatError> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(FormatError::NotANumber {
            line,
            token: token.to_string(),
        });
    }
    Ok(token.parse().expect("digits only"))
}

fn parse_amount(line: usize, tokens: &[&str], dim: usize) -> Result<NatVec, FormatError> {
    if tokens.len() != dim {
        return Err(FormatError::ComponentCount {
            line,
            expected: dim,
            found: tokens.len(),
        });
    }
    tokens
        .iter()
        .map(|t| parse_number(line, t))
        .collect::<Result<Vec<_>, _>>()
        .map(NatVec::new)
}

type Lines<'a> = std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>;

fn lines(text: &str) -> Lines<'_> {
    let boxed: Box<dyn Iterator<Item = (usize, &str)>> = Box::new(content_lines(text));
    boxed.peekable()
}

fn expect_header(lines: &mut Lines<'_>, header: &'static str) -> Result<(), FormatError> {
    let (n, l) = lines
        .next()
        .ok_or(FormatError::UnexpectedEof { expected: header })?;
    if l.split_whitespace().collect::<Vec<_>>() != header.split(' ').collect::<Vec<_>>() {
        return Err(syntax(
            n,
            format!("expected header `{header}`, found `{l}`"),
        ));
    }
    Ok(())
}

fn expect_dimension(lines: &mut Lines<'_>) -> Result<usize, FormatError> {
    let (n, l) = lines.next().ok_or(FormatError::UnexpectedEof {
        expected: "dimension <n>",
    })?;
    let tokens: Vec<&str> = l.split_whitespace().collect();
    match tokens.as_slice() {
        ["dimension", d] => {
            let dim: usize = d
                .parse()
                .ok()
                .filter(|n: &usize| *n > 0 && n.to_string() == *d)
                .ok_or_else(|| {
                    syntax(
                        n,
                        format!("dimension must be a positive integer, got {d:?}"),
                    )
                })?;
            Ok(dim)
        }
        _ => Err(syntax(n, format!("expected `dimension <n>`, found `{l}`"))),
    }
}

fn parse_ledger_parts(text: &str) -> Result<(Vec<String>, Vec<Account>), FormatError> {
    let mut lines = lines(text);
    expect_header(&mut lines, LEDGER_HEADER)?;
    let dim = expect_dimension(&mut lines)?;

    let (n, l) = lines.next().ok_or(FormatError::UnexpectedEof {
        expected: "units <name> ...",
    })?;
    let tokens: Vec<&str> = l.split_whitespace().collect();
    if tokens[0] != "units" {
        return Err(syntax(n, format!("expected `units`, found `{l}`")));
    }
    if tokens.len() - 1 != dim {
        return Err(FormatError::ComponentCount {
            line: n,
            expected: dim,
            found: tokens.len() - 1,
        });
    }
    let mut seen = HashSet::new();
    for u in &tokens[1..] {
        if !seen.insert(*u) {
            return Err(FormatError::DuplicateUnit {
                line: n,
                name: u.to_string(),
            });
        }
    }
    let units: Vec<String> = tokens[1..].iter().map(|s| s.to_string()).collect();

    let mut accounts: Vec<Account> = Vec::new();
    for (n, l) in lines {
        let tokens: Vec<&str> = l.split_whitespace().collect();
        if tokens[0] != "account" {
            return Err(syntax(
                n,
                format!("expected `account`, found `{}`", tokens[0]),
            ));
        }
        let [_, name, role, rest @ ..] = tokens.as_slice() else {
            return Err(syntax(
                n,
                "expected `account <name> <dr|cr> [nominal] <debit> // <credit>`",
            ));
        };
        let role = match *role {
            "dr" => AccountRole::DebitBalance,
            "cr" => AccountRole::CreditBalance,
            other => {
                return Err(syntax(
                    n,
                    format!("account role must be dr or cr, got {other:?}"),
                ))
            }
        };
        let (nominal, rest) = match rest {
            ["nominal", rest @ ..] => (true, rest),
            _ => (false, rest),
        };
        let sep = rest
            .iter()
            .position(|t| *t == "//")
            .ok_or_else(|| syntax(n, "missing `//` between debit and credit sides"))?;
        let debit = parse_amount(n, &rest[..sep], dim)?;
        let credit = parse_amount(n, &rest[sep + 1..], dim)?;
        if accounts.iter().any(|a| a.name == *name) {
            return Err(FormatError::DuplicateAccount {
                line: n,
                name: name.to_string(),
            });
        }
        accounts.push(Account {
            name: name.to_string(),
            role,
            nominal,
            balance: TTerm::new(debit, credit).expect("same dimension"),
        });
    }
    Ok((units, accounts))
}

fn into_format_error(e: LedgerError) -> FormatError {
    match e {
        LedgerError::Unbalanced { residual } => FormatError::Unbalanced { residual },
        other => syntax(0, other.to_string()),
    }
}

/// Parses a ledger file. The accounts must sum to a zero-account.
pub fn parse_ledger(text: &str) -> Result<Ledger, FormatError> {
    let (units, accounts) = parse_ledger_parts(text)?;
    Ledger::new(units, accounts).map_err(into_format_error)
}

/// Parses a ledger file without requiring it to balance.
pub fn parse_ledger_unverified(text: &str) -> Result<Ledger, FormatError> {
    let (units, accounts) = parse_ledger_parts(text)?;
    Ledger::unverified(units, accounts).map_err(into_format_error)
}

fn parse_description(line: usize, rest: &str) -> Result<String, FormatError> {
    let rest = rest.trim();
    let inner = rest
        .strip_prefix('"')
        .and_then(|r| r.strip_suffix('"'))
        .filter(|r| !r.contains('"'))
        .ok_or_else(|| syntax(line, "expected `entry \"<description>\"`"))?;
    Ok(inner.to_string())
}

/// Parses a journal file. Only the shape is checked here; balancing is left
/// to [`Ledger::validate`].
pub fn parse_journal(text: &str) -> Result<Vec<JournalEntry>, FormatError> {
    let mut lines = lines(text);
    expect_header(&mut lines, JOURNAL_HEADER)?;
    let dim = expect_dimension(&mut lines)?;

    let mut entries = Vec::new();
    while let Some((n, l)) = lines.next() {
        let description = match l.split_once(char::is_whitespace) {
            Some(("entry", rest)) => parse_description(n, rest)?,
            _ => {
                return Err(syntax(
                    n,
                    format!("expected `entry \"<description>\"`, found `{l}`"),
                ))
            }
        };
        let mut postings = Vec::new();
        loop {
            let (n, l) = lines
                .next()
                .ok_or(FormatError::UnexpectedEof { expected: "end" })?;
            let tokens: Vec<&str> = l.split_whitespace().collect();
            match tokens.as_slice() {
                ["end"] => break,
                [side @ ("dr" | "cr"), account, amount @ ..] => {
                    let amount = parse_amount(n, amount, dim)?;
                    postings.push(if *side == "dr" {
                        Posting::dr(*account, amount)
                    } else {
                        Posting::cr(*account, amount)
                    });
                }
                _ => {
                    return Err(syntax(
                        n,
                        format!("expected `dr <account> <amount>`, `cr <account> <amount>` or `end`, found `{l}`"),
                    ))
                }
            }
        }
        if postings.is_empty() {
            return Err(syntax(n, format!("entry {description:?} has no postings")));
        }
        entries.push(JournalEntry::new(description, postings));
    }
    Ok(entries)
}

fn push_components(out: &mut String, v: &NatVec) {
    for c in v.components() {
        write!(out, " {c}").unwrap();
    }
}

/// Writes a ledger in file form. Balances are written as given.
pub fn render_ledger(ledger: &Ledger) -> String {
    let mut out = String::new();
    writeln!(out, "{LEDGER_HEADER}").unwrap();
    writeln!(out, "dimension {}", ledger.dimension()).unwrap();
    writeln!(out, "units {}", ledger.units().join(" ")).unwrap();
    for a in ledger.accounts() {
        let role = match a.role {
            AccountRole::DebitBalance => "dr",
            AccountRole::CreditBalance => "cr",
        };
        write!(out, "account {} {role}", a.name).unwrap();
        if a.nominal {
            out.push_str(" nominal");
        }
        push_components(&mut out, a.balance.debit());
        out.push_str(" //");
        push_components(&mut out, a.balance.credit());
        out.push('\n');
    }
    out
}

/// Writes a journal in file form.
pub fn render_journal(entries: &[JournalEntry], dim: usize) -> String {
    let mut out = String::new();
    writeln!(out, "{JOURNAL_HEADER}").unwrap();
    writeln!(out, "dimension {dim}").unwrap();
    for e in entries {
        writeln!(out, "entry \"{}\"", e.description.replace('"', "'")).unwrap();
        for p in &e.postings {
            write!(out, "  {} {}", p.side, p.account).unwrap();
            push_components(&mut out, &p.amount);
            out.push('\n');
        }
        out.push_str("end\n");
    }
    out
}

fn side_line(terms: &[Term], f: impl Fn(&Term) -> String) -> String {
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.iter().map(f).collect::<Vec<_>>().join(" + ")
    }
}

/// Two lines: the account names and their values, e.g.
/// `Assets = Liabilities + Equity` over `14500 = 9200 + 5300`.
pub fn render_balance_sheet(eq: &BalanceSheetEquation) -> String {
    if eq.is_empty() {
        return "(empty)\n".to_string();
    }
    let names = |t: &Term| t.name.clone();
    let values = |t: &Term| t.value.to_string();
    format!(
        "{} = {}\n{} = {}\n",
        side_line(&eq.lhs, names),
        side_line(&eq.rhs, names),
        side_line(&eq.lhs, values),
        side_line(&eq.rhs, values),
    )
}
