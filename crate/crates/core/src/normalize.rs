//! Normalization of raw cast-vote records into clean ballots.
//!
//! Raw records carry whatever the voter marked: several candidates at one
//! rank (overvotes), empty ranks (skips), the same candidate at several ranks
//! (duplicates) and write-ins. [`normalize_ballot`] resolves every anomaly
//! under an explicit [`NormalizationRules`] and yields either a [`Ballot`] or
//! a [`DiscardReason`].
//!
//! Ranks are walked from 1 up to the highest marked rank:
//!
//! - an empty rank is a skip, handled by [`SkipPolicy`];
//! - a rank holding more than one distinct choice is an overvote, handled by
//!   [`OvervotePolicy`];
//! - a candidate already placed on the ballot is a duplicate, handled by
//!   [`DuplicatePolicy`];
//! - a write-in is removed or kept as a candidate per [`WriteInPolicy`]. A
//!   dropped write-in is a real mark, so it never counts as a skip.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::profile::{Ballot, Candidate};

/// What a voter marked at one rank.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Choice {
    Candidate(String),
    /// A write-in mark; the label is whatever the export recorded.
    WriteIn(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mark {
    /// 1-based rank position.
    pub rank: u32,
    pub choice: Choice,
}

impl Mark {
    pub fn candidate(rank: u32, name: impl Into<String>) -> Self {
        Mark { rank, choice: Choice::Candidate(name.into()) }
    }

    pub fn write_in(rank: u32, label: impl Into<String>) -> Self {
        Mark { rank, choice: Choice::WriteIn(label.into()) }
    }
}

/// One row of a cast-vote-record export, before any normalization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawBallotRecord {
    pub record_id: String,
    pub marks: Vec<Mark>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OvervotePolicy {
    /// Keep the ranks before the overvote.
    #[default]
    TruncateAtOvervote,
    DiscardBallot,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipPolicy {
    /// Close up empty ranks.
    #[default]
    CompressSkips,
    /// Keep the ranks before the first empty one.
    TruncateAtSkip,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DuplicatePolicy {
    #[default]
    KeepFirstOccurrence,
    DiscardBallot,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WriteInPolicy {
    #[default]
    DropWriteins,
    /// The write-in label becomes a candidate id.
    TreatAsCandidate,
}

/// The four knobs that decide how anomalous records become ballots. The
/// default is truncate at overvote, compress skips, keep the first occurrence
/// of a duplicate and drop write-ins.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationRules {
    pub overvote_policy: OvervotePolicy,
    pub skip_policy: SkipPolicy,
    pub duplicate_policy: DuplicatePolicy,
    pub writein_policy: WriteInPolicy,
}

/// Why a record produced no ballot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscardReason {
    /// The record carries no marks at all.
    NoMarks,
    /// Truncation (at an overvote or a skip) happened before anything was ranked.
    EmptyAfterTruncation,
    /// Nothing survived normalization, e.g. only write-ins that were dropped.
    EmptyAfterNormalization,
    /// An overvote under [`OvervotePolicy::DiscardBallot`].
    Overvote { rank: u32 },
    /// A repeated candidate under [`DuplicatePolicy::DiscardBallot`].
    DuplicateRanking { rank: u32, candidate: String },
    /// A mark names a candidate id that is not a valid candidate (empty).
    InvalidCandidate { rank: u32 },
}

impl fmt::Display for DiscardReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiscardReason::NoMarks => f.write_str("no_marks"),
            DiscardReason::EmptyAfterTruncation => f.write_str("empty_after_truncation"),
            DiscardReason::EmptyAfterNormalization => f.write_str("empty_after_normalization"),
            DiscardReason::Overvote { rank } => write!(f, "overvote at rank {rank}"),
            DiscardReason::DuplicateRanking { rank, candidate } => {
                write!(f, "duplicate ranking of {candidate} at rank {rank}")
            }
            DiscardReason::InvalidCandidate { rank } => write!(f, "invalid candidate at rank {rank}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalized {
    Ballot(Ballot),
    Discarded(DiscardReason),
}

impl Normalized {
    pub fn ballot(&self) -> Option<&Ballot> {
        match self {
            Normalized::Ballot(b) => Some(b),
            Normalized::Discarded(_) => None,
        }
    }
}

pub fn normalize_ballot(record: &RawBallotRecord, rules: &NormalizationRules) -> Normalized {
    if record.marks.is_empty() {
        return Normalized::Discarded(DiscardReason::NoMarks);
    }

    // Distinct choices per rank, in order of appearance.
    let mut slots: BTreeMap<u32, Vec<&Choice>> = BTreeMap::new();
    for mark in &record.marks {
        let slot = slots.entry(mark.rank).or_default();
        if !slot.contains(&&mark.choice) {
            slot.push(&mark.choice);
        }
    }
    let max_rank = slots.keys().next_back().copied().unwrap_or(0);

    let mut ranking: Vec<Candidate> = Vec::new();
    let mut truncated = false;
    for rank in 1..=max_rank {
        let choices = slots.get(&rank).map(Vec::as_slice).unwrap_or(&[]);
        match choices {
            [] => match rules.skip_policy {
                SkipPolicy::CompressSkips => continue,
                SkipPolicy::TruncateAtSkip => {
                    truncated = true;
                    break;
                }
            },
            [choice] => {
                let name = match choice {
                    Choice::Candidate(name) => name,
                    Choice::WriteIn(label) => match rules.writein_policy {
                        WriteInPolicy::DropWriteins => continue,
                        WriteInPolicy::TreatAsCandidate => label,
                    },
                };
                let Ok(candidate) = Candidate::new(name.as_str()) else {
                    return Normalized::Discarded(DiscardReason::InvalidCandidate { rank });
                };
                if ranking.contains(&candidate) {
                    match rules.duplicate_policy {
                        DuplicatePolicy::KeepFirstOccurrence => continue,
                        DuplicatePolicy::DiscardBallot => {
                            return Normalized::Discarded(DiscardReason::DuplicateRanking {
                                rank,
                                candidate: name.clone(),
                            })
                        }
                    }
                }
                ranking.push(candidate);
            }
            _ => match rules.overvote_policy {
                OvervotePolicy::TruncateAtOvervote => {
                    truncated = true;
                    break;
                }
                OvervotePolicy::DiscardBallot => {
                    return Normalized::Discarded(DiscardReason::Overvote { rank });
                }
            },
        }
    }

    if ranking.is_empty() {
        let reason =
            if truncated { DiscardReason::EmptyAfterTruncation } else { DiscardReason::EmptyAfterNormalization };
        return Normalized::Discarded(reason);
    }
    match Ballot::new(ranking) {
        Ok(b) => Normalized::Ballot(b),
        // duplicates were filtered above
        Err(_) => unreachable!("normalized ranking is duplicate-free"),
    }
}
