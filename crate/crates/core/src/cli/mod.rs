//! Configuration-driven experiment runner behind the `bcva` binary.

pub mod config;
pub mod run;
pub mod svg;
pub mod validate;

pub use config::{ConfigError, RunConfig};
pub use run::{evaluate, run_rows, write_csv, Row, RunError, CSV_HEADER};
