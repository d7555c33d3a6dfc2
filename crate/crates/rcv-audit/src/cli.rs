//! The `rcv-audit` command line.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when
//! `audit --fail-on-paradox` finds at least one witness.
//!
//! Settings are layered: defaults, then the config file (`--config`, or the
//! file named by `RCV_AUDIT_CONFIG` when no flag is given), then flags.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rcv_audit_core::{normalize_ballot, Candidate, DiscardReason, Normalized, PreferenceProfile, RawBallotRecord};

use crate::ballot_csv::{read_ballot_csv, write_ballot_csv, BallotCsvError};
use crate::config::{self, ConfigError, Settings};
use crate::cvr::{parse_cvr, CvrError, CvrSchema};
use crate::report::{
    render_condorcet, render_report, render_tabulation, AnalysisReport, CondorcetReport, TabulationReport,
};

pub const CONFIG_ENV: &str = "RCV_AUDIT_CONFIG";

#[derive(Parser, Debug)]
#[command(name = "rcv-audit", version, about = "Tabulate ranked-choice elections and audit them for paradoxes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the instant-runoff count and print every round.
    Tabulate(Common),
    /// Print the pairwise matrix and the Condorcet winner and loser.
    Condorcet(Common),
    /// Full sweep: count, pairwise analysis, spoilers, monotonicity and no-show.
    Audit {
        #[command(flatten)]
        common: Common,
        /// Exit with status 2 if any witness is found.
        #[arg(long)]
        fail_on_paradox: bool,
    },
    /// Normalize a raw CVR into the ballot CSV format.
    Normalize {
        #[command(flatten)]
        common: Common,
        /// Write the ballot CSV here instead of standard output.
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
        /// Write one `record_id,reason` line per discarded record.
        #[arg(long, value_name = "PATH")]
        discards: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Ballot CSV, or a raw CVR when a schema is given.
    #[arg(long, value_name = "PATH")]
    input: PathBuf,
    #[arg(long, value_parser = ["text", "json"])]
    format: Option<String>,
    #[arg(long, value_parser = ["lex", "error"])]
    tie_rule: Option<String>,
    #[arg(long, value_parser = ["truncate", "discard"])]
    overvote: Option<String>,
    #[arg(long, value_parser = ["compress", "truncate"])]
    skips: Option<String>,
    #[arg(long, value_parser = ["first", "discard"])]
    duplicates: Option<String>,
    #[arg(long, value_parser = ["drop", "candidate"])]
    writeins: Option<String>,
    /// CVR schema; makes `--input` a raw CVR that is normalized first.
    #[arg(long, value_name = "PATH")]
    schema: Option<PathBuf>,
    /// `key = value` config file (overrides RCV_AUDIT_CONFIG).
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Config { path: PathBuf, source: ConfigError },
    #[error("{}: {source}", path.display())]
    Cvr { path: PathBuf, source: CvrError },
    #[error("{}: {source}", path.display())]
    BallotCsv { path: PathBuf, source: BallotCsvError },
    #[error("{0}")]
    Tabulation(#[from] rcv_audit_core::Error),
    #[error("no CVR schema given (use --schema or `schema` in the config file)")]
    MissingSchema,
    #[error("writing output: {0}")]
    Output(std::io::Error),
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn settings(common: &Common) -> Result<Settings, CliError> {
    let file = common.config.clone().or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    let mut s = Settings::default();
    if let Some(path) = file {
        s = s.apply_file(&read(&path)?).map_err(|source| CliError::Config { path, source })?;
    }
    // clap has already restricted every value to the accepted spellings.
    if let Some(v) = &common.format {
        s.format = config::parse_format(v).unwrap();
    }
    if let Some(v) = &common.tie_rule {
        s.tie_rule = config::parse_tie_rule(v).unwrap();
    }
    if let Some(v) = &common.overvote {
        s.rules.overvote_policy = config::parse_overvote(v).unwrap();
    }
    if let Some(v) = &common.skips {
        s.rules.skip_policy = config::parse_skips(v).unwrap();
    }
    if let Some(v) = &common.duplicates {
        s.rules.duplicate_policy = config::parse_duplicates(v).unwrap();
    }
    if let Some(v) = &common.writeins {
        s.rules.writein_policy = config::parse_writeins(v).unwrap();
    }
    if common.schema.is_some() {
        s.schema = common.schema.clone();
    }
    Ok(s)
}

struct NormalizedCvr {
    profile: PreferenceProfile,
    records: usize,
    discards: Vec<(String, DiscardReason)>,
}

fn normalize_cvr(input: &Path, schema_path: &Path, s: &Settings) -> Result<NormalizedCvr, CliError> {
    let schema = CvrSchema::parse(&read(schema_path)?)
        .map_err(|source| CliError::Cvr { path: schema_path.to_path_buf(), source })?;
    let file = fs::File::open(input).map_err(|source| CliError::Io { path: input.to_path_buf(), source })?;
    let records: Vec<RawBallotRecord> =
        parse_cvr(file, &schema).map_err(|source| CliError::Cvr { path: input.to_path_buf(), source })?;

    let mut ballots = Vec::new();
    let mut discards = Vec::new();
    for record in &records {
        match normalize_ballot(record, &s.rules) {
            Normalized::Ballot(b) => ballots.push(b),
            Normalized::Discarded(reason) => discards.push((record.record_id.clone(), reason)),
        }
    }
    let mut roster: BTreeSet<Candidate> = ballots.iter().flat_map(|b| b.ranking().iter().cloned()).collect();
    for name in schema.candidates.iter().flatten() {
        roster.insert(Candidate::new(name.as_str())?);
    }
    let profile = PreferenceProfile::aggregate(roster, ballots)?;
    Ok(NormalizedCvr { profile, records: records.len(), discards })
}

fn load_profile(common: &Common, s: &Settings) -> Result<PreferenceProfile, CliError> {
    match &s.schema {
        Some(schema) => Ok(normalize_cvr(&common.input, schema, s)?.profile),
        None => read_ballot_csv(&read(&common.input)?)
            .map_err(|source| CliError::BallotCsv { path: common.input.clone(), source }),
    }
}

fn execute(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Tabulate(common) => {
            let s = settings(&common)?;
            let report = TabulationReport::build(&load_profile(&common, &s)?, s.tie_rule)?;
            stdout.write_all(&render_tabulation(&report, s.format)).map_err(CliError::Output)?;
            Ok(0)
        }
        Command::Condorcet(common) => {
            let s = settings(&common)?;
            let report = CondorcetReport::build(&load_profile(&common, &s)?);
            stdout.write_all(&render_condorcet(&report, s.format)).map_err(CliError::Output)?;
            Ok(0)
        }
        Command::Audit { common, fail_on_paradox } => {
            let s = settings(&common)?;
            let report = AnalysisReport::build(&load_profile(&common, &s)?, s.tie_rule)?;
            stdout.write_all(&render_report(&report, s.format)).map_err(CliError::Output)?;
            Ok(if fail_on_paradox && !report.witnesses.is_empty() { 2 } else { 0 })
        }
        Command::Normalize { common, output, discards } => {
            let s = settings(&common)?;
            let schema = s.schema.clone().ok_or(CliError::MissingSchema)?;
            let n = normalize_cvr(&common.input, &schema, &s)?;
            let csv = write_ballot_csv(&n.profile)
                .map_err(|source| CliError::BallotCsv { path: common.input.clone(), source })?;
            match &output {
                Some(path) => fs::write(path, &csv).map_err(|source| CliError::Io { path: path.clone(), source })?,
                None => stdout.write_all(csv.as_bytes()).map_err(CliError::Output)?,
            }
            if let Some(path) = &discards {
                let mut text = String::from("record_id,reason\n");
                for (id, reason) in &n.discards {
                    text.push_str(&format!("{id},{reason}\n"));
                }
                fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source })?;
            }
            writeln!(
                stderr,
                "records: {}, ballots: {}, discarded: {}",
                n.records,
                n.profile.total_voters(),
                n.discards.len()
            )
            .map_err(CliError::Output)?;
            Ok(0)
        }
    }
}

/// Runs the command line given by `args` (including the program name) and
/// returns the process exit code.
pub fn run_cli<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}
