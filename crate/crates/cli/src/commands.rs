use std::path::PathBuf;
use std::str::FromStr;

use clap::builder::PossibleValuesParser;
use clap::{value_parser, Arg, ArgMatches, Command};
use num_rational::BigRational;
use pacioli::format::{
    parse_journal, parse_ledger, parse_ledger_unverified, render_balance_sheet, render_journal,
    render_ledger,
};
use pacioli::matrix::build_table;
use pacioli::sss::{journal_to_signed_with, to_signed_with, zero_row_check};
use pacioli::valuation::value_ledger;
use pacioli::{ConventionRegistry, JournalEntry, Ledger, PriceVector, SignedLedger};

use crate::{read_file, write_file, CliError, Status, Streams, Subcommand};

fn ledger_arg() -> Arg {
    Arg::new("ledger")
        .long("ledger")
        .value_name("FILE")
        .required(true)
        .value_parser(value_parser!(PathBuf))
        .help("Ledger file")
}

fn journal_arg(required: bool) -> Arg {
    Arg::new("journal")
        .long("journal")
        .value_name("FILE")
        .required(required)
        .value_parser(value_parser!(PathBuf))
        .help("Journal file")
}

fn out_arg() -> Arg {
    Arg::new("out")
        .long("out")
        .value_name("FILE")
        .value_parser(value_parser!(PathBuf))
        .help("Write the resulting ledger here instead of standard output")
}

fn path<'a>(m: &'a ArgMatches, id: &str) -> Option<&'a PathBuf> {
    m.get_one::<PathBuf>(id)
}

fn load_ledger(m: &ArgMatches) -> Result<Ledger, CliError> {
    let p = path(m, "ledger").expect("required");
    parse_ledger(&read_file(p)?).map_err(|source| CliError::Parse {
        path: p.clone(),
        source,
    })
}

fn load_journal(m: &ArgMatches) -> Result<Option<Vec<JournalEntry>>, CliError> {
    let Some(p) = path(m, "journal") else {
        return Ok(None);
    };
    parse_journal(&read_file(p)?)
        .map(Some)
        .map_err(|source| CliError::Parse {
            path: p.clone(),
            source,
        })
}

fn emit_ledger(m: &ArgMatches, io: &mut Streams<'_>, ledger: &Ledger) -> Result<(), CliError> {
    let text = render_ledger(&ledger.reduced());
    match path(m, "out") {
        Some(p) => write_file(p, &text),
        None => Ok(io.out.write_all(text.as_bytes())?),
    }
}

/// Left-aligns the first column and right-aligns the rest.
fn grid(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|j| {
            rows.iter()
                .filter_map(|r| r.get(j))
                .map(String::len)
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(j, c)| {
                if j == 0 {
                    format!("{c:<w$}", w = widths[0])
                } else {
                    format!("{c:>w$}", w = widths[j])
                }
            })
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub struct Validate;

impl Subcommand for Validate {
    fn name(&self) -> &'static str {
        "validate"
    }

    fn about(&self) -> &'static str {
        "Check each journal entry against the ledger"
    }

    fn args(&self, cmd: Command) -> Command {
        cmd.arg(ledger_arg()).arg(journal_arg(true))
    }

    fn run(&self, m: &ArgMatches, io: &mut Streams<'_>) -> Result<Status, CliError> {
        let ledger = load_ledger(m)?;
        let journal = load_journal(m)?.expect("required");
        let mut rejected = 0;
        for (i, entry) in journal.iter().enumerate() {
            let report = ledger.validate(entry);
            if !report.is_valid() {
                rejected += 1;
            }
            writeln!(io.out, "entry {} {:?}: {report}", i + 1, entry.description)?;
        }
        writeln!(io.out, "{} entries, {rejected} rejected", journal.len())?;
        Ok(if rejected == 0 {
            Status::Ok
        } else {
            Status::Rejected
        })
    }
}

pub struct Post;

impl Subcommand for Post {
    fn name(&self) -> &'static str {
        "post"
    }

    fn about(&self) -> &'static str {
        "Post a journal and write the reduced ending ledger"
    }

    fn args(&self, cmd: Command) -> Command {
        cmd.arg(ledger_arg()).arg(journal_arg(true)).arg(out_arg())
    }

    fn run(&self, m: &ArgMatches, io: &mut Streams<'_>) -> Result<Status, CliError> {
        let ledger = load_ledger(m)?;
        let journal = load_journal(m)?.expect("required");
        let posted = ledger.post(&journal).map_err(CliError::rejected)?;
        for (i, entry) in journal.iter().enumerate() {
            for w in ledger.validate(entry).warnings {
                writeln!(io.err, "warning: entry {}: {w}", i + 1)?;
            }
        }
        emit_ledger(m, io, &posted)?;
        Ok(Status::Ok)
    }
}

pub struct TrialBalance;

impl Subcommand for TrialBalance {
    fn name(&self) -> &'static str {
        "trial-balance"
    }

    fn about(&self) -> &'static str {
        "Total the debit and credit columns"
    }

    fn args(&self, cmd: Command) -> Command {
        cmd.arg(ledger_arg())
    }

    fn run(&self, m: &ArgMatches, io: &mut Streams<'_>) -> Result<Status, CliError> {
        // Unbalanced books are what this command exists to report.
        let p = path(m, "ledger").expect("required");
        let ledger = parse_ledger_unverified(&read_file(p)?).map_err(|source| CliError::Parse {
            path: p.clone(),
            source,
        })?;
        let tb = ledger.trial_balance();
        let rows = vec![
            vec!["debit total".to_string(), tb.debit_total.to_string()],
            vec!["credit total".to_string(), tb.credit_total.to_string()],
        ];
        io.out.write_all(grid(&rows).as_bytes())?;
        if tb.balanced {
            writeln!(io.out, "BALANCED")?;
            Ok(Status::Ok)
        } else {
            writeln!(io.out, "UNBALANCED")?;
            Ok(Status::Rejected)
        }
    }
}

pub struct Report;

impl Subcommand for Report {
    fn name(&self) -> &'static str {
        "report"
    }

    fn about(&self) -> &'static str {
        "Print the balance-sheet equation of a ledger"
    }

    fn args(&self, cmd: Command) -> Command {
        cmd.arg(ledger_arg())
    }

    fn run(&self, m: &ArgMatches, io: &mut Streams<'_>) -> Result<Status, CliError> {
        let ledger = load_ledger(m)?;
        let eq = ledger.reduced().decode();
        io.out.write_all(render_balance_sheet(&eq).as_bytes())?;
        Ok(Status::Ok)
    }
}

pub struct Matrix;

impl Subcommand for Matrix {
    fn name(&self) -> &'static str {
        "matrix"
    }

    fn about(&self) -> &'static str {
        "Show a scalar journal as a transactions table"
    }

    fn args(&self, cmd: Command) -> Command {
        cmd.arg(ledger_arg()).arg(journal_arg(true))
    }

    fn run(&self, m: &ArgMatches, io: &mut Streams<'_>) -> Result<Status, CliError> {
        let ledger = load_ledger(m)?;
        let journal = load_journal(m)?.expect("required");
        let table = build_table(&journal, &ledger).map_err(CliError::rejected)?;
        for w in table.warnings() {
            writeln!(io.err, "warning: {w}")?;
        }
        let sums = table.sums();

        let mut rows = Vec::new();
        let mut header = vec!["Dr.\\Cr.".to_string()];
        header.extend(table.accounts().iter().cloned());
        header.push("row sum".into());
        rows.push(header);
        for (i, name) in table.accounts().iter().enumerate() {
            let mut row = vec![name.clone()];
            row.extend(table.cells()[i].iter().map(ToString::to_string));
            row.push(sums.row_sums[i].to_string());
            rows.push(row);
        }
        let mut footer = vec!["col sum".to_string()];
        footer.extend(sums.col_sums.iter().map(ToString::to_string));
        rows.push(footer);
        io.out.write_all(grid(&rows).as_bytes())?;

        let changes = table.net_changes(&ledger).map_err(CliError::rejected)?;
        let mut rows = vec![vec![
            "account".to_string(),
            "beginning".into(),
            "net change".into(),
            "ending".into(),
        ]];
        for (account, (name, change)) in ledger.reduced().accounts().iter().zip(changes) {
            let beginning = account.signed_balance().components()[0].clone();
            let ending = &beginning + &change;
            rows.push(vec![
                name,
                beginning.to_string(),
                change.to_string(),
                ending.to_string(),
            ]);
        }
        writeln!(io.out)?;
        io.out.write_all(grid(&rows).as_bytes())?;
        Ok(Status::Ok)
    }
}

pub struct Sss;

impl Sss {
    fn write_ledger(io: &mut Streams<'_>, ledger: &SignedLedger) -> Result<(), CliError> {
        let mut rows: Vec<Vec<String>> = ledger
            .accounts()
            .iter()
            .map(|a| vec![a.name.clone(), a.balance.to_string()])
            .collect();
        let zero = if ledger.is_zero_row() { "yes" } else { "no" };
        rows.push(vec!["zero-row".into(), zero.into()]);
        Ok(io.out.write_all(grid(&rows).as_bytes())?)
    }
}

impl Subcommand for Sss {
    fn name(&self) -> &'static str {
        "sss"
    }

    fn about(&self) -> &'static str {
        "Show the ledger as signed single-sided balances"
    }

    fn args(&self, cmd: Command) -> Command {
        let names: Vec<&'static str> = ConventionRegistry::default().names().collect();
        cmd.arg(ledger_arg()).arg(journal_arg(false)).arg(
            Arg::new("convention")
                .long("convention")
                .value_parser(PossibleValuesParser::new(names))
                .default_value("debit")
                .help("Which side counts as positive"),
        )
    }

    fn run(&self, m: &ArgMatches, io: &mut Streams<'_>) -> Result<Status, CliError> {
        let ledger = load_ledger(m)?;
        let journal = load_journal(m)?;
        let registry = ConventionRegistry::default();
        let name = m.get_one::<String>("convention").expect("defaulted");
        let convention = registry.get(name).expect("restricted to registered names");
        writeln!(io.out, "convention: {}", convention.describe())?;

        let mut signed = to_signed_with(&ledger, convention);
        if let Some(journal) = journal {
            writeln!(io.out, "\nbeginning")?;
            Self::write_ledger(io, &signed)?;
            let rows = journal_to_signed_with(&journal, &ledger, convention)
                .map_err(CliError::rejected)?;
            writeln!(io.out, "\nrows")?;
            for (i, row) in rows.iter().enumerate() {
                let changes: Vec<String> = row
                    .changes
                    .iter()
                    .map(|(a, v)| format!("{a} {v}"))
                    .collect();
                let zero = zero_row_check(&row.values()).map_err(CliError::rejected)?;
                writeln!(
                    io.out,
                    "{} {:?}: {}; zero-row {}",
                    i + 1,
                    row.description,
                    changes.join(", "),
                    if zero { "yes" } else { "no" }
                )?;
            }
            signed = signed.post(&rows).map_err(CliError::rejected)?;
            writeln!(io.out, "\nending")?;
        } else {
            writeln!(io.out)?;
        }
        Self::write_ledger(io, &signed)?;
        writeln!(io.out)?;
        io.out
            .write_all(render_balance_sheet(&signed.to_equation(convention)).as_bytes())?;
        Ok(if signed.is_zero_row() {
            Status::Ok
        } else {
            Status::Rejected
        })
    }
}

pub struct Value;

impl Value {
    fn prices(m: &ArgMatches, dim: usize) -> Result<PriceVector, CliError> {
        let raw: Vec<&String> = m.get_many::<String>("prices").expect("required").collect();
        if raw.len() != dim {
            return Err(CliError::Usage(format!(
                "the ledger has {dim} units but {} prices were given",
                raw.len()
            )));
        }
        let prices = raw
            .iter()
            .map(|s| {
                BigRational::from_str(s)
                    .map_err(|e| CliError::Usage(format!("price {s:?} is not a rational: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        PriceVector::new(prices).map_err(|e| CliError::Usage(e.to_string()))
    }
}

impl Subcommand for Value {
    fn name(&self) -> &'static str {
        "value"
    }

    fn about(&self) -> &'static str {
        "Value every account with a price vector and report in scalar terms"
    }

    fn args(&self, cmd: Command) -> Command {
        cmd.arg(ledger_arg()).arg(
            Arg::new("prices")
                .long("prices")
                .value_name("PRICE")
                .num_args(1..)
                .required(true)
                .allow_negative_numbers(true)
                .help("One price per unit, as integers or fractions like 3/2"),
        )
    }

    fn run(&self, m: &ArgMatches, io: &mut Streams<'_>) -> Result<Status, CliError> {
        let ledger = load_ledger(m)?;
        let prices = Self::prices(m, ledger.dimension())?;
        let valued = value_ledger(&ledger, &prices).map_err(CliError::rejected)?;
        writeln!(io.out, "prices {prices}")?;
        io.out
            .write_all(render_balance_sheet(&valued.decode()).as_bytes())?;
        Ok(Status::Ok)
    }
}

pub struct Close;

impl Subcommand for Close {
    fn name(&self) -> &'static str {
        "close"
    }

    fn about(&self) -> &'static str {
        "Close nominal accounts into an equity account"
    }

    fn args(&self, cmd: Command) -> Command {
        cmd.arg(ledger_arg()).arg(out_arg()).arg(
            Arg::new("equity")
                .long("equity")
                .value_name("NAME")
                .required(true)
                .help("Credit-balance account that receives the nominal balances"),
        )
    }

    fn run(&self, m: &ArgMatches, io: &mut Streams<'_>) -> Result<Status, CliError> {
        let ledger = load_ledger(m)?;
        let equity = m.get_one::<String>("equity").expect("required");
        let (closed, entries) = ledger.close_nominal(equity).map_err(CliError::rejected)?;
        io.out
            .write_all(render_journal(&entries, ledger.dimension()).as_bytes())?;
        if path(m, "out").is_none() {
            writeln!(io.out)?;
        }
        emit_ledger(m, io, &closed)?;
        Ok(Status::Ok)
    }
}
