//! Instance files, reports and the command-line front end for `linv-core`.

pub mod cli;
pub mod format;
pub mod report;
