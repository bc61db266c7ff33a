//! JSON front end for `dgsymp-core`: input documents, a polynomial parser,
//! and one report per command.

pub mod document;
pub mod error;
pub mod poly;
pub mod run;

pub use document::InputDocument;
pub use error::CliError;
pub use run::{run, Overrides, Report, COMMANDS};
