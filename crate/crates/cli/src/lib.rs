//! Command-line pipelines over the port-tfidf library: ingest records,
//! sweep noise thresholds, scan for high TF-IDF ports, characterize
//! waves, and generate labeled synthetic traffic.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod outio;

pub use error::CliError;
