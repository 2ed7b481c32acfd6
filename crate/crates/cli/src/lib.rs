//! Batch front end: problem files, commands, serialization and DOT output.

mod commands;
mod dot;
mod error;
mod lex;
mod problem;
mod serialize;

pub use commands::{execute, Cli, Command};
pub use dot::emit_dot;
pub use error::{CliError, ParseError, ParseErrorKind};
pub use problem::{parse_problem, FieldChoice, NamedMap, Problem, Sections, TriangleDef, FIELD_ENV};
pub use serialize::{write_complex, write_map};

use exact_linalg::{Rational, Scalar, F32003};

pub type QProblem = Problem<Rational>;
pub type FpProblem = Problem<F32003>;

/// The field a problem text asks for, after the optional override.
pub fn field_for(text: &str, over: Option<&str>) -> Result<FieldChoice, CliError> {
    let declared = Sections::parse(text)?.field()?;
    match over {
        None => Ok(declared),
        Some(s) => FieldChoice::parse(s).ok_or_else(|| CliError::Usage(format!("{FIELD_ENV}: unknown field `{s}`"))),
    }
}

fn run_in<F: Scalar>(text: &str, cmd: &Command) -> Result<String, CliError> {
    let p = parse_problem::<F>(text)?;
    execute(&p, cmd)
}

/// Parses `text` over the chosen field and runs `cmd`; no command runs the
/// `[tasks]` section.
pub fn run_text(text: &str, cmd: Option<&Command>, over: Option<&str>) -> Result<String, CliError> {
    let cmd = cmd.unwrap_or(&Command::Run);
    match field_for(text, over)? {
        FieldChoice::Rational => run_in::<Rational>(text, cmd),
        FieldChoice::Prime => run_in::<F32003>(text, cmd),
    }
}

/// Reads the problem file named on the command line and runs the command,
/// honouring the field override in the environment.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let text = std::fs::read_to_string(&cli.problem)
        .map_err(|e| CliError::Usage(format!("{}: {e}", cli.problem.display())))?;
    let over = std::env::var(FIELD_ENV).ok();
    run_text(&text, cli.command.as_ref(), over.as_deref())
}
