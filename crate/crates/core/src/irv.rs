//! Single-winner instant-runoff tabulation.
//!
//! Each round counts every continuing ballot for its highest-ranked
//! continuing candidate. A candidate holding more than half of the continuing
//! (non-exhausted) votes wins. Otherwise exactly one candidate with the fewest
//! votes is eliminated and each of their ballots moves to its next continuing
//! choice, or is exhausted when none is left. Two continuing candidates
//! without a majority are tied; the tie rule then decides the winner in that
//! same round, so every round has at least two continuing candidates unless
//! the roster has only one.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::engine::{self, EngineError, Indexed, RawRound};
use crate::profile::{Candidate, PreferenceProfile};
use crate::Error;

/// How to pick among candidates tied for the fewest votes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieRule {
    /// Eliminate the tied candidate whose id sorts first.
    #[default]
    LexicographicById,
    ErrorOnTie,
}

/// Where the ballots of an eliminated candidate went.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transfer {
    /// Ballots received by each candidate still in the count (zeros included).
    pub to: BTreeMap<Candidate, u64>,
    pub exhausted: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    /// Votes held by each continuing candidate at the start of the round.
    pub tallies: BTreeMap<Candidate, u64>,
    /// Cumulative exhausted ballots at the start of the round, including
    /// ballots that ranked nobody.
    pub exhausted: u64,
    /// Absent in the final round. A final-round tie is settled by the tie
    /// rule without an elimination.
    pub eliminated: Option<Candidate>,
    /// Candidates that shared the fewest votes, when the tie rule was needed.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tied: Vec<Candidate>,
    pub transfer: Option<Transfer>,
}

impl Round {
    pub fn continuing_votes(&self) -> u64 {
        self.tallies.values().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundLog {
    pub total_voters: u64,
    pub rounds: Vec<Round>,
    pub winner: Candidate,
}

impl RoundLog {
    /// True when any round resolved an elimination tie.
    pub fn had_tie(&self) -> bool {
        self.rounds.iter().any(|r| !r.tied.is_empty())
    }

    pub fn final_round(&self) -> &Round {
        self.rounds.last().expect("a round log has at least one round")
    }

    pub fn eliminated(&self) -> impl Iterator<Item = &Candidate> + '_ {
        self.rounds.iter().filter_map(|r| r.eliminated.as_ref())
    }
}

/// First-choice votes per roster candidate; unsupported candidates map to 0.
pub fn first_place_tallies(profile: &PreferenceProfile) -> BTreeMap<Candidate, u64> {
    let mut out: BTreeMap<Candidate, u64> = profile.roster().iter().map(|c| (c.clone(), 0)).collect();
    for (ballot, count) in profile.ballot_types() {
        if let Some(first) = ballot.first() {
            *out.get_mut(first).expect("ballots stay within the roster") += count;
        }
    }
    out
}

/// Runs the count to completion and returns every round.
pub fn tabulate(profile: &PreferenceProfile, tie_rule: TieRule) -> Result<RoundLog, Error> {
    let ix = Indexed::new(profile);
    let mut raw = Vec::new();
    let outcome = engine::run(ix.candidates.len(), &ix.rankings, &ix.counts, tie_rule, Some(&mut raw))
        .map_err(|e| engine_error(&ix, e))?;
    let rounds = raw.into_iter().map(|r| named_round(&ix, r)).collect();
    Ok(RoundLog { total_voters: profile.total_voters(), rounds, winner: ix.candidates[outcome.winner].clone() })
}

pub(crate) fn engine_error(ix: &Indexed, e: EngineError) -> Error {
    match e {
        EngineError::NoVotes => Error::NoVotes,
        EngineError::Tie(tied) => Error::Tie(tied.into_iter().map(|i| ix.candidates[i].clone()).collect()),
    }
}

fn named_round(ix: &Indexed, r: RawRound) -> Round {
    let name = |i: usize| ix.candidates[i].clone();
    let transfer = r.eliminated.map(|_| Transfer {
        to: r.transfer_to.iter().map(|&(c, n)| (name(c), n)).collect(),
        exhausted: r.transfer_exhausted,
    });
    Round {
        tallies: r.tallies.iter().map(|&(c, n)| (name(c), n)).collect(),
        exhausted: r.exhausted,
        eliminated: r.eliminated.map(name),
        tied: r.tied.into_iter().map(name).collect(),
        transfer,
    }
}

/// Result of one elimination step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepOutcome {
    /// Per newly eliminated candidate, where their ballots went.
    pub transfers: BTreeMap<Candidate, Transfer>,
    pub tallies: BTreeMap<Candidate, u64>,
    /// Ballots exhausted by this step alone.
    pub exhausted: u64,
}

/// Moves the ballots of newly eliminated candidates.
///
/// `tallies` holds the continuing candidates and their current votes.
/// Candidates in `eliminated` that are still keys of `tallies` are eliminated
/// by this step; roster candidates missing from `tallies` count as eliminated
/// earlier. Each affected ballot moves to its highest-ranked candidate that
/// stays in the count.
pub fn round_step(
    tallies: &BTreeMap<Candidate, u64>,
    profile: &PreferenceProfile,
    eliminated: &BTreeSet<Candidate>,
) -> Result<StepOutcome, Error> {
    if let Some(c) = eliminated.iter().find(|c| !profile.roster().contains(*c)) {
        return Err(Error::UnknownCandidate(c.clone()));
    }
    let leaving: BTreeSet<&Candidate> = eliminated.iter().filter(|c| tallies.contains_key(*c)).collect();
    let staying: BTreeSet<&Candidate> = tallies.keys().filter(|c| !leaving.contains(c)).collect();

    let mut transfers: BTreeMap<Candidate, Transfer> = leaving
        .iter()
        .map(|&c| {
            let to = staying.iter().map(|&s| (s.clone(), 0)).collect();
            (c.clone(), Transfer { to, exhausted: 0 })
        })
        .collect();
    let mut new_tallies: BTreeMap<Candidate, u64> =
        tallies.iter().filter(|(c, _)| !leaving.contains(c)).map(|(c, n)| (c.clone(), *n)).collect();
    let mut exhausted = 0;

    for (ballot, count) in profile.ballot_types() {
        let Some(holder) = ballot.ranking().iter().find(|c| tallies.contains_key(*c)) else {
            continue;
        };
        if !leaving.contains(holder) {
            continue;
        }
        let transfer = transfers.get_mut(holder).expect("holder is leaving");
        match ballot.ranking().iter().find(|c| staying.contains(c)) {
            Some(next) => {
                *transfer.to.get_mut(next).expect("recipient is staying") += count;
                *new_tallies.get_mut(next).expect("recipient is staying") += count;
            }
            None => {
                transfer.exhausted += count;
                exhausted += count;
            }
        }
    }
    Ok(StepOutcome { transfers, tallies: new_tallies, exhausted })
}
