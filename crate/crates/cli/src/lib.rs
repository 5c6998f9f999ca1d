//! Command-line front end for `bqz`: literal and JSON spec parsing, catalog
//! verification, recurrence checks and the worked-example suite, all
//! reporting through deterministic JSON.

pub mod commands;
pub mod error;
pub mod report;
pub mod sample;
pub mod spec;
pub mod suite;

pub use commands::{
    check_catalog_row, cmd_eval, cmd_recurrence, cmd_verify_catalog, RowCheck, Settings, ROUND_TRIP_TOL,
};
pub use error::CliError;
pub use report::{Report, Status};
pub use suite::{cmd_golden_suite, SUITE_CHECKS};
