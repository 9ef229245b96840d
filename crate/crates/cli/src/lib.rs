//! Command-line front end for the `pacioli` engine.
//!
//! Each subcommand is a [`Subcommand`] trait object held in a [`Registry`];
//! the registry builds the clap command tree and dispatches on the parsed
//! name. [`run`] is the whole program minus process exit, so tests drive it
//! with in-memory streams.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{ArgMatches, Command};
use pacioli::format::FormatError;
use thiserror::Error;

mod commands;

pub use commands::{Close, Matrix, Post, Report, Sss, TrialBalance, Validate, Value};

/// Exit status for success.
pub const EXIT_OK: i32 = 0;
/// Exit status when the books or entries fail a check.
pub const EXIT_REJECTED: i32 = 1;
/// Exit status for unreadable input, malformed files and bad arguments.
pub const EXIT_INPUT: i32 = 2;

/// How a subcommand that ran to completion came out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// The report was produced but something in it failed a check.
    Rejected,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: FormatError },
    #[error("{0}")]
    Usage(String),
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
    /// An engine operation refused the books or the journal.
    #[error("{0}")]
    Rejected(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Rejected(_) => EXIT_REJECTED,
            _ => EXIT_INPUT,
        }
    }

    pub(crate) fn rejected(e: impl std::fmt::Display) -> Self {
        CliError::Rejected(e.to_string())
    }
}

/// Output and diagnostic streams handed to a subcommand.
pub struct Streams<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

pub trait Subcommand: Send + Sync {
    fn name(&self) -> &'static str;

    fn about(&self) -> &'static str;

    /// Adds this subcommand's arguments to `cmd`.
    fn args(&self, cmd: Command) -> Command;

    fn run(&self, matches: &ArgMatches, io: &mut Streams<'_>) -> Result<Status, CliError>;
}

pub struct Registry {
    commands: Vec<Box<dyn Subcommand>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry {
            commands: Vec::new(),
        }
    }

    /// Registers a subcommand, replacing any previous one with the same name.
    pub fn register(&mut self, command: Box<dyn Subcommand>) {
        self.commands.retain(|c| c.name() != command.name());
        self.commands.push(command);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Subcommand> {
        self.commands
            .iter()
            .find(|c| c.name() == name)
            .map(|c| c.as_ref())
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.commands.iter().map(|c| c.name())
    }

    pub fn command(&self) -> Command {
        let root = Command::new("pacioli")
            .about("Exact double-entry bookkeeping over T-accounts")
            .version(env!("CARGO_PKG_VERSION"))
            .subcommand_required(true)
            .arg_required_else_help(true);
        self.commands.iter().fold(root, |root, c| {
            root.subcommand(c.args(Command::new(c.name()).about(c.about())))
        })
    }
}

impl Default for Registry {
    fn default() -> Self {
        let mut registry = Registry::empty();
        registry.register(Box::new(Validate));
        registry.register(Box::new(Post));
        registry.register(Box::new(TrialBalance));
        registry.register(Box::new(Report));
        registry.register(Box::new(Matrix));
        registry.register(Box::new(Sss));
        registry.register(Box::new(Value));
        registry.register(Box::new(Close));
        registry
    }
}

/// Parses `args` (program name first) and runs the chosen subcommand.
/// Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(&Registry::default(), args, out, err)
}

pub fn run_with<I, T>(registry: &Registry, args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match registry.command().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_INPUT
                }
            };
        }
    };
    let (name, sub) = matches.subcommand().expect("subcommand is required");
    let command = registry
        .get(name)
        .expect("clap only accepts registered names");
    let mut io = Streams { out, err };
    match command.run(sub, &mut io) {
        Ok(Status::Ok) => EXIT_OK,
        Ok(Status::Rejected) => EXIT_REJECTED,
        Err(e) => {
            let _ = writeln!(io.err, "pacioli {name}: {e}");
            e.exit_code()
        }
    }
}

pub(crate) fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}
