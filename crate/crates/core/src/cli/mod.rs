//! Command-line front end: caching, output formats, reports and commands.

pub mod cache;
pub mod commands;
pub mod format;
pub mod report;
