//! Command-line front end for `relhom`: the workspace format, command
//! dispatch with table and JSON reports, and seeded verification suites.

pub mod commands;
pub mod report;
pub mod suites;
pub mod workspace;

pub use commands::{run, run_command, Cli, CliError, Command, Global};
pub use report::{parse_machine, Machine, Report, Status};
pub use suites::{run_suite, Mutation, Suite, SuiteReport};
pub use workspace::{parse_workspace, parse_workspace_over, Diagnostic, Workspace};
