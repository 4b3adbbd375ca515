//! Command-line front end and JSON formats for `porc-core`.

pub mod cli;
pub mod json;
