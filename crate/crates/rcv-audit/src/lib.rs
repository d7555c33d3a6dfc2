//! Std companion to `rcv-audit-core`: cast-vote-record ingestion, the
//! normalized ballot CSV format, configuration files, report rendering and
//! the `rcv-audit` command line.

pub mod ballot_csv;
pub mod cli;
pub mod config;
pub mod cvr;
pub mod keyvalue;
pub mod report;

pub use ballot_csv::{read_ballot_csv, write_ballot_csv, BallotCsvError};
pub use cli::run_cli;
pub use config::{ConfigError, Settings};
pub use cvr::{parse_cvr, CvrError, CvrSchema, Layout};
pub use report::{render_report, AnalysisReport, Format};
