//! Problem files, command dispatch and JSON reports for the `mm` binary.

pub mod error;
pub mod problem;
pub mod report;
pub mod run;

pub use error::CliError;
pub use problem::ProblemFile;
pub use run::{run, Command, Options, Outcome};
