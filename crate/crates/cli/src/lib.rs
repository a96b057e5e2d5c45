//! Command-line front end: the SCX format, the bundled corpus and the `ihom` commands.

pub mod commands;
pub mod corpus;
pub mod scx;

pub use commands::{main_with, run, verify_case, Check, Cli, Command, Outcome};
pub use scx::{parse_scx, ScxDocument, ScxError};
