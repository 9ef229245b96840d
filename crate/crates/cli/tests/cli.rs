use std::path::PathBuf;
use std::process::Command;

use pacioli_cli::{run, Registry, EXIT_INPUT, EXIT_OK, EXIT_REJECTED};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

/// Runs the CLI in-process; returns (status, stdout, stderr).
fn pacioli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("pacioli").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn post_then_report_gives_the_ending_equation() {
    let dir = tempfile::tempdir().unwrap();
    let end = dir.path().join("end.ledger");
    let end = end.to_str().unwrap();
    let (code, _, err) = pacioli(&[
        "post",
        "--ledger",
        &data("scalar.ledger"),
        "--journal",
        &data("scalar.journal"),
        "--out",
        end,
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let (code, out, _) = pacioli(&["report", "--ledger", end]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "Assets = Liabilities + Equity\n14500 = 9200 + 5300\n");
    // the written file is reduced
    let written = std::fs::read_to_string(end).unwrap();
    assert!(
        written.contains("account Assets dr 14500 // 0\n"),
        "{written}"
    );
}

#[test]
fn post_vector_example_to_stdout() {
    let (code, out, err) = pacioli(&[
        "post",
        "--ledger",
        &data("vector.ledger"),
        "--journal",
        &data("vector.journal"),
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(
        out.contains("account Assets dr 9700 40 20 // 0 0 0\n"),
        "{out}"
    );
    assert!(
        out.contains("account Equity cr 0 0 0 // 500 40 20\n"),
        "{out}"
    );
    // entry 2b debits and credits the same accounts
    assert!(err.contains("warning: entry 3"), "{err}");
}

#[test]
fn trial_balance_of_beginning_ledger() {
    let (code, out, _) = pacioli(&["trial-balance", "--ledger", &data("scalar.ledger")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "debit total   15000\ncredit total  15000\nBALANCED\n");
}

#[test]
fn trial_balance_reports_unbalanced_books() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("skewed.ledger");
    std::fs::write(
        &path,
        "pacioli-ledger v1\ndimension 1\nunits value\n\
         account Assets dr 15000 // 0\naccount Equity cr 0 // 5000\n",
    )
    .unwrap();
    let (code, out, _) = pacioli(&["trial-balance", "--ledger", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_REJECTED);
    assert!(out.ends_with("UNBALANCED\n"), "{out}");
    // other commands refuse to load it
    let (code, _, err) = pacioli(&["report", "--ledger", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("residual"), "{err}");
}

#[test]
fn matrix_shows_the_transactions_table() {
    let (code, out, _) = pacioli(&[
        "matrix",
        "--ledger",
        &data("scalar.ledger"),
        "--journal",
        &data("scalar.journal"),
    ]);
    assert_eq!(code, EXIT_OK);
    let expected = "\
Dr.\\Cr.      Assets  Liabilities  Equity  row sum
Assets            0            0    1500     1500
Liabilities     800            0       0      800
Equity         1200            0       0     1200
col sum        2000            0    1500

account      beginning  net change  ending
Assets           15000        -500   14500
Liabilities      10000        -800    9200
Equity            5000         300    5300
";
    assert_eq!(out, expected);
}

#[test]
fn matrix_rejects_vector_ledgers() {
    let (code, _, err) = pacioli(&[
        "matrix",
        "--ledger",
        &data("vector.ledger"),
        "--journal",
        &data("vector.journal"),
    ]);
    assert_eq!(code, EXIT_REJECTED);
    assert!(err.contains("scalar"), "{err}");
}

#[test]
fn validate_reports_each_entry() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.journal");
    std::fs::write(
        &path,
        "pacioli-journal v1\ndimension 1\n\
         entry \"fine\"\n  dr Assets 5\n  cr Equity 5\nend\n\
         entry \"lopsided\"\n  dr Assets 5\n  cr Equity 4\nend\n\
         entry \"stranger\"\n  dr Cash 5\n  cr Equity 5\nend\n",
    )
    .unwrap();
    let (code, out, _) = pacioli(&[
        "validate",
        "--ledger",
        &data("scalar.ledger"),
        "--journal",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_REJECTED);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "entry 1 \"fine\": ok");
    assert!(lines[1].contains("residual"), "{out}");
    assert!(lines[2].contains("unknown account Cash"), "{out}");
    assert_eq!(lines[3], "3 entries, 2 rejected");

    // posting the same journal changes nothing and names the entry
    let (code, out, err) = pacioli(&[
        "post",
        "--ledger",
        &data("scalar.ledger"),
        "--journal",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_REJECTED);
    assert!(out.is_empty());
    assert!(err.contains("entry 2"), "{err}");
}

#[test]
fn sss_view_ends_in_a_zero_row() {
    let (code, out, _) = pacioli(&[
        "sss",
        "--ledger",
        &data("scalar.ledger"),
        "--journal",
        &data("scalar.journal"),
    ]);
    assert_eq!(code, EXIT_OK);
    let ending = out.split("\nending\n").nth(1).unwrap();
    assert!(
        ending.starts_with(
            "Assets       14500\nLiabilities  -9200\nEquity       -5300\nzero-row       yes\n"
        ),
        "{ending}"
    );
    assert!(out.ends_with("14500 = 9200 + 5300\n"), "{out}");
}

#[test]
fn sss_credit_convention_flips_signs() {
    let (code, out, _) = pacioli(&[
        "sss",
        "--ledger",
        &data("scalar.ledger"),
        "--convention",
        "credit",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("Assets       -15000\n"), "{out}");
    assert!(out.ends_with("15000 = 10000 + 5000\n"), "{out}");
}

#[test]
fn value_collapses_vector_books() {
    let dir = tempfile::tempdir().unwrap();
    let end = dir.path().join("end.ledger");
    let end = end.to_str().unwrap();
    pacioli(&[
        "post",
        "--ledger",
        &data("vector.ledger"),
        "--journal",
        &data("vector.journal"),
        "--out",
        end,
    ]);
    let (code, out, _) = pacioli(&["value", "--ledger", end, "--prices", "1", "100", "40"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.ends_with("14500 = 9200 + 5300\n"), "{out}");
    let (code, out, _) = pacioli(&[
        "value",
        "--ledger",
        &data("vector.ledger"),
        "--prices",
        "1",
        "100",
        "40",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.ends_with("15000 = 10000 + 5000\n"), "{out}");
}

#[test]
fn value_rejects_bad_prices() {
    let ledger = data("vector.ledger");
    for prices in [
        &["1", "100"][..],
        &["1", "-100", "40"],
        &["1", "x", "40"],
        &["1", "1/0", "40"],
    ] {
        let mut args = vec!["value", "--ledger", &ledger, "--prices"];
        args.extend_from_slice(prices);
        let (code, _, err) = pacioli(&args);
        assert_eq!(code, EXIT_INPUT, "{prices:?}: {err}");
    }
    // a fractional price that leaves a balance between whole numbers
    let (code, _, err) = pacioli(&["value", "--ledger", &ledger, "--prices", "1/7", "1", "1"]);
    assert_eq!(code, EXIT_REJECTED);
    assert!(err.contains("not a whole number"), "{err}");
}

#[test]
fn close_moves_nominal_balances_into_equity() {
    let dir = tempfile::tempdir().unwrap();
    let posted = dir.path().join("posted.ledger");
    let closed = dir.path().join("closed.ledger");
    let (code, _, _) = pacioli(&[
        "post",
        "--ledger",
        &data("nominal.ledger"),
        "--journal",
        &data("nominal.journal"),
        "--out",
        posted.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let (code, out, _) = pacioli(&[
        "close",
        "--ledger",
        posted.to_str().unwrap(),
        "--equity",
        "Equity",
        "--out",
        closed.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("entry \"close Revenue into Equity\""), "{out}");
    let (_, report, _) = pacioli(&["report", "--ledger", closed.to_str().unwrap()]);
    assert!(
        report.ends_with("14500 + 0 = 9200 + 5300 + 0\n"),
        "{report}"
    );

    let (code, _, err) = pacioli(&[
        "close",
        "--ledger",
        posted.to_str().unwrap(),
        "--equity",
        "Assets",
    ]);
    assert_eq!(code, EXIT_REJECTED);
    assert!(err.contains("Assets"), "{err}");
}

#[test]
fn usage_and_input_errors_exit_2() {
    let (code, _, err) = pacioli(&["audit"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("Usage"), "{err}");
    let (code, _, err) = pacioli(&["report", "--ledger", &data("scalar.ledger"), "--bogus"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("Usage"), "{err}");
    let (code, _, err) = pacioli(&["report", "--ledger", "/nonexistent/x.ledger"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("/nonexistent/x.ledger"), "{err}");
    // a journal handed over as a ledger is a parse error with a line number
    let (code, _, err) = pacioli(&["report", "--ledger", &data("scalar.journal")]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("line 1"), "{err}");
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, err) = pacioli(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(err.is_empty());
    for name in Registry::default().names() {
        assert!(out.contains(name), "help lists {name}");
    }
}

#[test]
fn binary_exit_statuses() {
    let bin = env!("CARGO_BIN_EXE_pacioli");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["trial-balance", "--ledger", &data("vector.ledger")]);
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).ends_with("BALANCED\n"));
    let usage = status(&["nope"]);
    assert_eq!(usage.status.code(), Some(EXIT_INPUT));
    assert!(!usage.stderr.is_empty());
}
