//! Library side of the `bandsolve` command: band file I/O, the JSON result
//! document and one function per subcommand.

#![forbid(unsafe_code)]

pub mod bandfile;
pub mod commands;
pub mod document;
mod error;

pub use document::{Checks, Mode, ResultDocument};
pub use error::CliError;
