#![allow(dead_code)]

//! Shared test support: a signed-integer oracle that never touches the
//! library's arithmetic, seeded random instance generators, and the two
//! worked examples built by hand.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use pacioli::{
    Account, AccountRole, BalanceSheetEquation, IntVec, JournalEntry, Ledger, NatVec, Posting,
    TTerm, Term,
};
use rand::Rng;

pub mod oracle {
    //! T-terms as plain `(Vec<u64>, Vec<u64>)` pairs mapped into `i128`.

    pub type Pair = (Vec<u64>, Vec<u64>);

    pub fn signed(p: &Pair) -> Vec<i128> {
        p.0.iter()
            .zip(&p.1)
            .map(|(&d, &c)| d as i128 - c as i128)
            .collect()
    }

    pub fn add(a: &[i128], b: &[i128]) -> Vec<i128> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn neg(a: &[i128]) -> Vec<i128> {
        a.iter().map(|x| -x).collect()
    }

    pub fn is_zero(a: &[i128]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn positive_part(a: &[i128]) -> Vec<i128> {
        a.iter().map(|&x| x.max(0)).collect()
    }

    pub fn negative_part(a: &[i128]) -> Vec<i128> {
        a.iter().map(|&x| (-x).max(0)).collect()
    }

    pub fn min(a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| *x.min(y)).collect()
    }

    pub fn max(a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
    }
}

pub fn nat(xs: &[u64]) -> NatVec {
    NatVec::from_u64s(xs)
}

pub fn term(p: &oracle::Pair) -> TTerm {
    TTerm::new(nat(&p.0), nat(&p.1)).unwrap()
}

pub fn tt(d: &[u64], c: &[u64]) -> TTerm {
    TTerm::new(nat(d), nat(c)).unwrap()
}

pub fn iv(xs: &[i64]) -> IntVec {
    IntVec::from_i64s(xs)
}

pub fn int_to_i128(x: &IntVec) -> Vec<i128> {
    x.components()
        .iter()
        .map(|c| c.to_i128().unwrap())
        .collect()
}

pub fn nat_to_i128(x: &NatVec) -> Vec<i128> {
    x.components()
        .iter()
        .map(|c| c.to_i128().unwrap())
        .collect()
}

pub fn i128_to_int(xs: &[i128]) -> IntVec {
    IntVec::new(xs.iter().map(|&x| BigInt::from(x)).collect())
}

pub fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

pub fn units(dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("u{i}")).collect()
}

// ---------------------------------------------------------------------------
// Worked examples, built directly from their published figures.

pub fn scalar_equation() -> BalanceSheetEquation {
    BalanceSheetEquation::new(
        vec![Term::new("Assets", iv(&[15000]))],
        vec![
            Term::new("Liabilities", iv(&[10000])),
            Term::new("Equity", iv(&[5000])),
        ],
    )
}

pub fn scalar_ledger() -> Ledger {
    scalar_equation().encode(vec!["value".into()]).unwrap()
}

pub fn scalar_journal() -> Vec<JournalEntry> {
    vec![
        JournalEntry::new(
            "1",
            vec![
                Posting::cr("Assets", nat(&[1200])),
                Posting::dr("Equity", nat(&[1200])),
            ],
        ),
        JournalEntry::new(
            "2",
            vec![
                Posting::dr("Assets", nat(&[1500])),
                Posting::cr("Equity", nat(&[1500])),
            ],
        ),
        JournalEntry::new(
            "3",
            vec![
                Posting::cr("Assets", nat(&[800])),
                Posting::dr("Liabilities", nat(&[800])),
            ],
        ),
    ]
}

pub fn vector_units() -> Vec<String> {
    vec!["cash".into(), "widgets".into(), "halfwidgets".into()]
}

pub fn vector_equation() -> BalanceSheetEquation {
    BalanceSheetEquation::new(
        vec![Term::new("Assets", iv(&[9000, 40, 50]))],
        vec![
            Term::new("Liabilities", iv(&[10000, 0, 0])),
            Term::new("Equity", iv(&[-1000, 40, 50])),
        ],
    )
}

pub fn vector_ledger() -> Ledger {
    vector_equation().encode(vector_units()).unwrap()
}

pub fn vector_journal() -> Vec<JournalEntry> {
    vec![
        JournalEntry::new(
            "1",
            vec![
                Posting::cr("Assets", nat(&[0, 0, 30])),
                Posting::dr("Equity", nat(&[0, 0, 30])),
            ],
        ),
        JournalEntry::new(
            "2a",
            vec![
                Posting::dr("Assets", nat(&[0, 15, 0])),
                Posting::cr("Equity", nat(&[0, 15, 0])),
            ],
        ),
        JournalEntry::new(
            "2b",
            vec![
                Posting::dr("Assets", nat(&[1500, 0, 0])),
                Posting::cr("Assets", nat(&[0, 15, 0])),
                Posting::dr("Equity", nat(&[0, 15, 0])),
                Posting::cr("Equity", nat(&[1500, 0, 0])),
            ],
        ),
        JournalEntry::new(
            "3",
            vec![
                Posting::cr("Assets", nat(&[800, 0, 0])),
                Posting::dr("Liabilities", nat(&[800, 0, 0])),
            ],
        ),
    ]
}

pub fn data_file(name: &str) -> String {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/");
    std::fs::read_to_string(format!("{path}{name}")).unwrap()
}

// ---------------------------------------------------------------------------
// Random instances. Components are drawn from 0..=1000.

pub fn rand_vec(rng: &mut impl Rng, dim: usize) -> Vec<u64> {
    (0..dim).map(|_| rng.gen_range(0..=1000)).collect()
}

pub fn rand_pair(rng: &mut impl Rng, dim: usize) -> oracle::Pair {
    (rand_vec(rng, dim), rand_vec(rng, dim))
}

fn role(rng: &mut impl Rng) -> AccountRole {
    if rng.gen_bool(0.5) {
        AccountRole::DebitBalance
    } else {
        AccountRole::CreditBalance
    }
}

/// A ledger of 2..=6 accounts with random balances; the last account absorbs
/// whatever makes the accounts sum to zero.
pub fn rand_ledger(rng: &mut impl Rng, dim: usize) -> Ledger {
    let n = rng.gen_range(2..=6);
    let mut accounts = Vec::new();
    let mut sum = vec![0i128; dim];
    for i in 0..n - 1 {
        let p = rand_pair(rng, dim);
        sum = oracle::add(&sum, &oracle::signed(&p));
        accounts.push(Account::new(format!("A{i}"), role(rng), term(&p)));
    }
    // Balancing term: debit side carries -sum's positive part, plus a random
    // common amount so it is not always reduced.
    let extra = rand_vec(rng, dim);
    let fix = oracle::neg(&sum);
    let d: Vec<u64> = oracle::positive_part(&fix)
        .iter()
        .zip(&extra)
        .map(|(&x, &e)| x as u64 + e)
        .collect();
    let c: Vec<u64> = oracle::negative_part(&fix)
        .iter()
        .zip(&extra)
        .map(|(&x, &e)| x as u64 + e)
        .collect();
    accounts.push(Account::new(format!("A{}", n - 1), role(rng), tt(&d, &c)));
    Ledger::new(units(dim), accounts).unwrap()
}

/// A balanced entry over the ledger's accounts with 2..=5 postings.
pub fn rand_entry(rng: &mut impl Rng, ledger: &Ledger, label: usize) -> JournalEntry {
    let dim = ledger.dimension();
    let names: Vec<&str> = ledger.accounts().iter().map(|a| a.name.as_str()).collect();
    let pick = |rng: &mut dyn rand::RngCore| names[rng.gen_range(0..names.len())].to_string();
    let k = rng.gen_range(1..=3);
    let mut postings = Vec::new();
    let mut sum = vec![0i128; dim];
    for _ in 0..k {
        let amount = rand_vec(rng, dim);
        let p = if rng.gen_bool(0.5) {
            sum = oracle::add(&sum, &amount.iter().map(|&x| x as i128).collect::<Vec<_>>());
            Posting::dr(pick(rng), nat(&amount))
        } else {
            sum = oracle::add(
                &sum,
                &amount.iter().map(|&x| -(x as i128)).collect::<Vec<_>>(),
            );
            Posting::cr(pick(rng), nat(&amount))
        };
        postings.push(p);
    }
    // Balance with one credit and one debit posting carrying the residual.
    let cr: Vec<u64> = oracle::positive_part(&sum)
        .iter()
        .map(|&x| x as u64)
        .collect();
    let dr: Vec<u64> = oracle::negative_part(&sum)
        .iter()
        .map(|&x| x as u64)
        .collect();
    postings.push(Posting::cr(pick(rng), nat(&cr)));
    postings.push(Posting::dr(pick(rng), nat(&dr)));
    JournalEntry::new(format!("random {label}"), postings)
}

pub fn rand_journal(rng: &mut impl Rng, ledger: &Ledger) -> Vec<JournalEntry> {
    let n = rng.gen_range(0..=6);
    (0..n).map(|i| rand_entry(rng, ledger, i)).collect()
}

/// A scalar simple transfer between two distinct accounts.
pub fn rand_transfer(rng: &mut impl Rng, ledger: &Ledger, label: usize) -> JournalEntry {
    let names: Vec<&str> = ledger.accounts().iter().map(|a| a.name.as_str()).collect();
    let i = rng.gen_range(0..names.len());
    let mut j = rng.gen_range(0..names.len() - 1);
    if j >= i {
        j += 1;
    }
    let amount = rng.gen_range(0..=1000);
    JournalEntry::new(
        format!("transfer {label}"),
        vec![
            Posting::dr(names[i], nat(&[amount])),
            Posting::cr(names[j], nat(&[amount])),
        ],
    )
}
