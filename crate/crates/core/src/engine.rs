//! Index-based instant-runoff engine.
//!
//! Candidates are numbered by their position in the (sorted) roster, so the
//! lowest index is also the lexicographically smallest id. The pathology
//! searches re-run this engine hundreds of thousands of times on perturbed
//! counts, so it works on plain slices and only records rounds on request.

use alloc::vec;
use alloc::vec::Vec;

use crate::irv::TieRule;
use crate::profile::{Ballot, Candidate, PreferenceProfile};

pub(crate) struct Indexed {
    pub candidates: Vec<Candidate>,
    pub rankings: Vec<Vec<usize>>,
    pub counts: Vec<u64>,
}

impl Indexed {
    pub fn new(profile: &PreferenceProfile) -> Self {
        let candidates: Vec<Candidate> = profile.roster().iter().cloned().collect();
        let mut rankings = Vec::with_capacity(profile.num_ballot_types());
        let mut counts = Vec::with_capacity(profile.num_ballot_types());
        for (ballot, count) in profile.ballot_types() {
            rankings.push(index_ranking(&candidates, ballot));
            counts.push(count);
        }
        Indexed { candidates, rankings, counts }
    }

    pub fn index_of(&self, c: &Candidate) -> Option<usize> {
        self.candidates.binary_search(c).ok()
    }

    pub fn ballot(&self, ranking: &[usize]) -> Ballot {
        let names = ranking.iter().map(|&i| self.candidates[i].clone()).collect();
        Ballot::new(names).expect("indexed rankings are duplicate-free")
    }

    /// Index of `ranking` among the ballot types, appending it with a zero
    /// count when absent.
    pub fn type_index(&mut self, ranking: &[usize]) -> usize {
        if let Some(i) = self.rankings.iter().position(|r| r == ranking) {
            return i;
        }
        self.rankings.push(ranking.to_vec());
        self.counts.push(0);
        self.rankings.len() - 1
    }
}

fn index_ranking(candidates: &[Candidate], ballot: &Ballot) -> Vec<usize> {
    ballot
        .ranking()
        .iter()
        .map(|c| candidates.binary_search(c).expect("profile ballots stay within the roster"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum EngineError {
    NoVotes,
    Tie(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RawRound {
    /// Tally per continuing candidate, as (candidate, votes).
    pub tallies: Vec<(usize, u64)>,
    pub exhausted: u64,
    pub eliminated: Option<usize>,
    /// Candidates sharing the minimal tally when more than one did.
    pub tied: Vec<usize>,
    /// Transfers out of the eliminated candidate: per recipient, then exhausted.
    pub transfer_to: Vec<(usize, u64)>,
    pub transfer_exhausted: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Outcome {
    pub winner: usize,
    /// Some elimination needed the tie rule.
    pub tie_seen: bool,
}

/// Runs IRV over `rankings` weighted by `counts`. Rounds are pushed onto
/// `log` when given.
pub(crate) fn run(
    num_candidates: usize,
    rankings: &[Vec<usize>],
    counts: &[u64],
    tie_rule: TieRule,
    mut log: Option<&mut Vec<RawRound>>,
) -> Result<Outcome, EngineError> {
    let mut continuing = vec![true; num_candidates];
    let mut remaining = num_candidates;
    // Position in each ranking of the current holder; `len` means exhausted.
    let mut holder: Vec<usize> = vec![0; rankings.len()];
    let mut tallies = vec![0u64; num_candidates];
    let mut exhausted = 0u64;
    for (t, ranking) in rankings.iter().enumerate() {
        let n = counts[t];
        match ranking.first() {
            Some(&c) => tallies[c] += n,
            None => exhausted += n,
        }
    }
    let mut tie_seen = false;

    loop {
        let active: u64 = (0..num_candidates).filter(|&c| continuing[c]).map(|c| tallies[c]).sum();
        if active == 0 {
            return Err(EngineError::NoVotes);
        }
        let round_tallies = || (0..num_candidates).filter(|&c| continuing[c]).map(|c| (c, tallies[c])).collect();

        if let Some(winner) = (0..num_candidates).find(|&c| continuing[c] && tallies[c] * 2 > active) {
            if let Some(log) = log.as_deref_mut() {
                log.push(RawRound {
                    tallies: round_tallies(),
                    exhausted,
                    eliminated: None,
                    tied: Vec::new(),
                    transfer_to: Vec::new(),
                    transfer_exhausted: 0,
                });
            }
            return Ok(Outcome { winner, tie_seen });
        }

        let min = (0..num_candidates).filter(|&c| continuing[c]).map(|c| tallies[c]).min().unwrap_or(0);
        let lowest: Vec<usize> = (0..num_candidates).filter(|&c| continuing[c] && tallies[c] == min).collect();
        let tied = if lowest.len() > 1 {
            tie_seen = true;
            if tie_rule == TieRule::ErrorOnTie {
                return Err(EngineError::Tie(lowest));
            }
            lowest.clone()
        } else {
            Vec::new()
        };
        if remaining == 2 {
            // Two left without a majority means they are tied: the tie rule
            // settles the count in this round.
            let winner = lowest[1];
            if let Some(log) = log.as_deref_mut() {
                log.push(RawRound {
                    tallies: round_tallies(),
                    exhausted,
                    eliminated: None,
                    tied,
                    transfer_to: Vec::new(),
                    transfer_exhausted: 0,
                });
            }
            return Ok(Outcome { winner, tie_seen });
        }
        let out = lowest[0];
        let before = if log.is_some() { Some(round_tallies()) } else { None };

        continuing[out] = false;
        remaining -= 1;
        let mut moved = vec![0u64; num_candidates];
        let mut moved_exhausted = 0u64;
        for (t, ranking) in rankings.iter().enumerate() {
            let n = counts[t];
            if n == 0 || holder[t] >= ranking.len() || ranking[holder[t]] != out {
                continue;
            }
            let mut pos = holder[t] + 1;
            while pos < ranking.len() && !continuing[ranking[pos]] {
                pos += 1;
            }
            holder[t] = pos;
            match ranking.get(pos) {
                Some(&next) => moved[next] += n,
                None => moved_exhausted += n,
            }
        }
        for c in 0..num_candidates {
            tallies[c] += moved[c];
        }
        tallies[out] = 0;
        exhausted += moved_exhausted;

        if let Some(log) = log.as_deref_mut() {
            log.push(RawRound {
                tallies: before.unwrap_or_default(),
                exhausted: exhausted - moved_exhausted,
                eliminated: Some(out),
                tied,
                transfer_to: (0..num_candidates).filter(|&c| continuing[c]).map(|c| (c, moved[c])).collect(),
                transfer_exhausted: moved_exhausted,
            });
        }
    }
}
