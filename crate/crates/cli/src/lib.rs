//! Command-line front end for `rjv-core`: scenario files, analysis
//! reports, region sweeps with CSV/SVG output, and the discretised oracle.

pub mod error;
pub mod oracle_run;
pub mod report;
pub mod scenario;
pub mod svg;
pub mod sweep;

pub use error::{CliError, Result};
