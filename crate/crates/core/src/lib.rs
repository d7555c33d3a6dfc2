//! Instant-runoff tabulation and election auditing over preference profiles.
//!
//! The crate is `no_std` (it needs `alloc`) and carries no IO: parsing cast
//! vote records, reading ballot files and rendering reports live in the
//! `rcv-audit` companion crate.
//!
//! - [`profile`]: candidates, ballots and preference profiles.
//! - [`normalize`]: turning raw cast-vote records into clean ballots.
//! - [`irv`]: round-by-round instant-runoff tabulation with a full audit log.
//! - [`condorcet`]: pairwise matrix, Condorcet winner and loser.
//! - [`pathology`]: spoiler, upward-monotonicity and no-show witness searches.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod condorcet;
mod engine;
mod error;
pub mod irv;
pub mod normalize;
pub mod pathology;
pub mod profile;

pub use condorcet::{condorcet_loser, condorcet_winner, pairwise_matrix, PairwiseEntry, PairwiseMatrix, PairwiseTable};
pub use error::Error;
pub use irv::{first_place_tallies, round_step, tabulate, Round, RoundLog, StepOutcome, TieRule, Transfer};
pub use normalize::{
    normalize_ballot, Choice, DiscardReason, DuplicatePolicy, Mark, NormalizationRules, Normalized, OvervotePolicy,
    RawBallotRecord, SkipPolicy, WriteInPolicy,
};
pub use pathology::{
    find_no_show_witness, find_spoilers, find_upward_monotonicity_witness, is_upward_shift, verify_witness,
    Modification, ParadoxWitness, WitnessKind,
};
pub use profile::{Ballot, Candidate, PreferenceProfile};
