//! Run settings from a `key = value` config file, overridden by CLI flags.
//!
//! Recognized keys and values:
//!
//! | key          | values                 |
//! |--------------|------------------------|
//! | `format`     | `text`, `json`         |
//! | `tie_rule`   | `lex`, `error`         |
//! | `overvote`   | `truncate`, `discard`  |
//! | `skips`      | `compress`, `truncate` |
//! | `duplicates` | `first`, `discard`     |
//! | `writeins`   | `drop`, `candidate`    |
//! | `schema`     | path to a CVR schema   |

use std::path::PathBuf;

use rcv_audit_core::{DuplicatePolicy, NormalizationRules, OvervotePolicy, SkipPolicy, TieRule, WriteInPolicy};

use crate::keyvalue;
use crate::report::Format;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("config {0}")]
    Syntax(#[from] keyvalue::KeyValueError),
    #[error("config line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("config line {line}: invalid value {value:?} for {key}")]
    InvalidValue { line: usize, key: String, value: String },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Settings {
    pub format: Format,
    pub tie_rule: TieRule,
    pub rules: NormalizationRules,
    pub schema: Option<PathBuf>,
}

pub(crate) fn parse_format(v: &str) -> Option<Format> {
    match v {
        "text" => Some(Format::Text),
        "json" => Some(Format::Json),
        _ => None,
    }
}

pub(crate) fn parse_tie_rule(v: &str) -> Option<TieRule> {
    match v {
        "lex" => Some(TieRule::LexicographicById),
        "error" => Some(TieRule::ErrorOnTie),
        _ => None,
    }
}

pub(crate) fn parse_overvote(v: &str) -> Option<OvervotePolicy> {
    match v {
        "truncate" => Some(OvervotePolicy::TruncateAtOvervote),
        "discard" => Some(OvervotePolicy::DiscardBallot),
        _ => None,
    }
}

pub(crate) fn parse_skips(v: &str) -> Option<SkipPolicy> {
    match v {
        "compress" => Some(SkipPolicy::CompressSkips),
        "truncate" => Some(SkipPolicy::TruncateAtSkip),
        _ => None,
    }
}

pub(crate) fn parse_duplicates(v: &str) -> Option<DuplicatePolicy> {
    match v {
        "first" => Some(DuplicatePolicy::KeepFirstOccurrence),
        "discard" => Some(DuplicatePolicy::DiscardBallot),
        _ => None,
    }
}

pub(crate) fn parse_writeins(v: &str) -> Option<WriteInPolicy> {
    match v {
        "drop" => Some(WriteInPolicy::DropWriteins),
        "candidate" => Some(WriteInPolicy::TreatAsCandidate),
        _ => None,
    }
}

impl Settings {
    /// Applies a config file on top of `self`.
    pub fn apply_file(mut self, text: &str) -> Result<Self, ConfigError> {
        for (line, key, value) in keyvalue::parse(text)? {
            let invalid = || ConfigError::InvalidValue { line, key: key.clone(), value: value.clone() };
            match key.as_str() {
                "format" => self.format = parse_format(&value).ok_or_else(invalid)?,
                "tie_rule" => self.tie_rule = parse_tie_rule(&value).ok_or_else(invalid)?,
                "overvote" => self.rules.overvote_policy = parse_overvote(&value).ok_or_else(invalid)?,
                "skips" => self.rules.skip_policy = parse_skips(&value).ok_or_else(invalid)?,
                "duplicates" => self.rules.duplicate_policy = parse_duplicates(&value).ok_or_else(invalid)?,
                "writeins" => self.rules.writein_policy = parse_writeins(&value).ok_or_else(invalid)?,
                "schema" => self.schema = Some(PathBuf::from(value)),
                _ => return Err(ConfigError::UnknownKey { line, key }),
            }
        }
        Ok(self)
    }
}
