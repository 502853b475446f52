//! Library surface of the `ntop` command-line tool: each subcommand is a
//! plain function returning its rendered output, so the commands are
//! testable without spawning processes.

pub mod commands;
pub mod fault;

pub use commands::{
    cmd_axioms, cmd_cantor, cmd_eval, cmd_fann, cmd_hawkeye, CliError, EXIT_CHECK_FAILED,
    EXIT_OK, EXIT_STALL, EXIT_USAGE,
};
