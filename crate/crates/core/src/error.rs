use alloc::vec::Vec;
use core::fmt;

use crate::profile::{Ballot, Candidate};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A candidate id was the empty string.
    EmptyCandidateName,
    /// A candidate appears twice in a roster or in one ranking.
    DuplicateCandidate(Candidate),
    /// A ballot or operation names a candidate outside the roster.
    UnknownCandidate(Candidate),
    /// No ballot ranks any candidate, so there is nothing to tabulate.
    NoVotes,
    /// An elimination tie under [`TieRule::ErrorOnTie`](crate::TieRule::ErrorOnTie).
    Tie(Vec<Candidate>),
    /// A modification asks for more ballots of a type than the profile holds.
    InsufficientBallots { ranking: Ballot, available: u64, requested: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyCandidateName => f.write_str("candidate name is empty"),
            Error::DuplicateCandidate(c) => write!(f, "candidate {c} appears more than once"),
            Error::UnknownCandidate(c) => write!(f, "candidate {c} is not in the roster"),
            Error::NoVotes => f.write_str("no ballot ranks any candidate"),
            Error::Tie(tied) => {
                f.write_str("elimination tie between ")?;
                for (i, c) in tied.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
            Error::InsufficientBallots { ranking, available, requested } => {
                write!(f, "ballot type {ranking} has {available} ballots, {requested} requested")
            }
        }
    }
}

impl core::error::Error for Error {}
