//! Searches for spoiler candidates, upward-monotonicity paradoxes and
//! no-show paradoxes.
//!
//! Every finding is a [`ParadoxWitness`]: a concrete change to the profile
//! together with the round logs before and after it, so that anyone can
//! replay the claim with [`verify_witness`]. A witness is only accepted when
//! neither replay needed the tie rule, so no claim depends on tie-breaking.
//!
//! The monotonicity and no-show searches modify one ballot type at a time and
//! scan the number of moved or removed ballots linearly from 1, because the
//! winner need not change monotonically in that number. The witness with the
//! smallest count wins; equal counts go to the family that sorts first by
//! (source ranking, target ranking).

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::engine::{self, Indexed};
use crate::irv::{tabulate, RoundLog, TieRule};
use crate::profile::{Ballot, Candidate, PreferenceProfile};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    Spoiler,
    UpwardMonotonicity,
    NoShow,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Modification {
    DeleteCandidate {
        candidate: Candidate,
    },
    /// `count` voters who cast `from` cast `to` instead.
    ShiftBallots {
        from: Ballot,
        to: Ballot,
        count: u64,
    },
    /// `count` voters who cast `ranking` stay home.
    RemoveBallots {
        ranking: Ballot,
        count: u64,
    },
}

impl Modification {
    pub fn apply(&self, profile: &PreferenceProfile) -> Result<PreferenceProfile, Error> {
        match self {
            Modification::DeleteCandidate { candidate } => profile.remove_candidate(candidate),
            Modification::ShiftBallots { from, to, count } => {
                let mut out = profile.clone();
                out.withdraw(from, *count)?;
                out.insert(to.clone(), *count)?;
                Ok(out)
            }
            Modification::RemoveBallots { ranking, count } => {
                let mut out = profile.clone();
                out.withdraw(ranking, *count)?;
                Ok(out)
            }
        }
    }

    /// The number of ballots touched, for shift and removal.
    pub fn count(&self) -> Option<u64> {
        match self {
            Modification::DeleteCandidate { .. } => None,
            Modification::ShiftBallots { count, .. } | Modification::RemoveBallots { count, .. } => Some(*count),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParadoxWitness {
    pub kind: WitnessKind,
    pub modification: Modification,
    pub original_winner: Candidate,
    pub new_winner: Candidate,
    /// True when an upward shift ranks the winner on ballots that did not
    /// rank her at all before. Always false for other kinds.
    pub adds_new_ranking: bool,
    pub before: RoundLog,
    pub after: RoundLog,
}

/// Losing candidates whose removal changes the winner, sorted by id.
pub fn find_spoilers(profile: &PreferenceProfile, tie_rule: TieRule) -> Result<Vec<ParadoxWitness>, Error> {
    let before = tabulate(profile, tie_rule)?;
    if before.had_tie() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for c in profile.roster().iter().filter(|c| **c != before.winner) {
        let modification = Modification::DeleteCandidate { candidate: c.clone() };
        let Ok(after) = tabulate(&modification.apply(profile)?, tie_rule) else {
            continue;
        };
        if after.had_tie() || after.winner == before.winner {
            continue;
        }
        out.push(ParadoxWitness {
            kind: WitnessKind::Spoiler,
            modification,
            original_winner: before.winner.clone(),
            new_winner: after.winner.clone(),
            adds_new_ranking: false,
            before: before.clone(),
            after,
        });
    }
    Ok(out)
}

/// Rankings obtained from `ranking` by placing `w` strictly higher while
/// keeping every other candidate in place relative to the rest.
fn upward_targets(ranking: &[usize], w: usize) -> Vec<Vec<usize>> {
    let pos = ranking.iter().position(|&c| c == w);
    let rest: Vec<usize> = ranking.iter().copied().filter(|&c| c != w).collect();
    let slots = match pos {
        Some(p) => 0..p,
        None => 0..rest.len() + 1,
    };
    slots
        .map(|j| {
            let mut t = rest.clone();
            t.insert(j, w);
            t
        })
        .collect()
}

/// Whether moving a ballot from `from` to `to` strictly raises `w` and leaves
/// the relative order (and ranked / unranked status) of everyone else alone.
pub fn is_upward_shift(from: &Ballot, to: &Ballot, w: &Candidate) -> bool {
    let Some(new_pos) = to.position(w) else {
        return false;
    };
    let raised = match from.position(w) {
        Some(old_pos) => new_pos < old_pos,
        None => true,
    };
    raised && from.without(w) == to.without(w)
}

struct Best {
    count: u64,
    from: usize,
    to: usize,
}

/// Smallest group of voters who, by ranking the winner higher, make her lose.
///
/// The profile is first collapsed with
/// [`collapse_full_rankings`](PreferenceProfile::collapse_full_rankings), and
/// the returned modification applies to the collapsed profile.
pub fn find_upward_monotonicity_witness(
    profile: &PreferenceProfile,
    tie_rule: TieRule,
) -> Result<Option<ParadoxWitness>, Error> {
    let before = tabulate(profile, tie_rule)?;
    if before.had_tie() {
        return Ok(None);
    }
    let collapsed = profile.collapse_full_rankings();
    let mut ix = Indexed::new(&collapsed);
    let w = ix.index_of(&before.winner).expect("winner is on the roster");

    let mut families: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for (t, ranking) in ix.rankings.iter().enumerate() {
        if ix.counts[t] == 0 {
            continue;
        }
        for target in upward_targets(ranking, w) {
            families.push((ranking.clone(), target));
        }
    }
    families.sort();

    let mut best: Option<Best> = None;
    let base_len = ix.rankings.len();
    for (from, to) in &families {
        let f = ix.type_index(from);
        let t = ix.type_index(to);
        let limit = best.as_ref().map_or(ix.counts[f], |b| ix.counts[f].min(b.count - 1));
        let mut counts = ix.counts.clone();
        for k in 1..=limit {
            counts[f] -= 1;
            counts[t] += 1;
            if changes_winner(&ix, &counts, tie_rule, w, |_| true) {
                best = Some(Best { count: k, from: f, to: t });
                break;
            }
        }
    }
    debug_assert!(ix.counts[base_len..].iter().all(|&n| n == 0));

    let Some(best) = best else {
        return Ok(None);
    };
    let from = ix.ballot(&ix.rankings[best.from]);
    let to = ix.ballot(&ix.rankings[best.to]);
    let adds_new_ranking = !from.contains(&before.winner);
    let modification = Modification::ShiftBallots { from, to, count: best.count };
    let after = tabulate(&modification.apply(&collapsed)?, tie_rule)?;
    Ok(Some(ParadoxWitness {
        kind: WitnessKind::UpwardMonotonicity,
        modification,
        original_winner: before.winner.clone(),
        new_winner: after.winner.clone(),
        adds_new_ranking,
        before,
        after,
    }))
}

/// Smallest group of identical voters who get a winner they prefer by not
/// voting at all.
pub fn find_no_show_witness(profile: &PreferenceProfile, tie_rule: TieRule) -> Result<Option<ParadoxWitness>, Error> {
    let before = tabulate(profile, tie_rule)?;
    if before.had_tie() {
        return Ok(None);
    }
    let ix = Indexed::new(profile);
    let w = ix.index_of(&before.winner).expect("winner is on the roster");

    let mut best: Option<Best> = None;
    for (t, ranking) in ix.rankings.iter().enumerate() {
        // candidates these voters rank above the winner
        let above: BTreeSet<usize> = ranking.iter().copied().take_while(|&c| c != w).collect();
        if above.is_empty() {
            continue;
        }
        let limit = best.as_ref().map_or(ix.counts[t], |b| ix.counts[t].min(b.count - 1));
        let mut counts = ix.counts.clone();
        for k in 1..=limit {
            counts[t] -= 1;
            if changes_winner(&ix, &counts, tie_rule, w, |c| above.contains(&c)) {
                best = Some(Best { count: k, from: t, to: t });
                break;
            }
        }
    }

    let Some(best) = best else {
        return Ok(None);
    };
    let modification = Modification::RemoveBallots { ranking: ix.ballot(&ix.rankings[best.from]), count: best.count };
    let after = tabulate(&modification.apply(profile)?, tie_rule)?;
    Ok(Some(ParadoxWitness {
        kind: WitnessKind::NoShow,
        modification,
        original_winner: before.winner.clone(),
        new_winner: after.winner.clone(),
        adds_new_ranking: false,
        before,
        after,
    }))
}

fn changes_winner(
    ix: &Indexed,
    counts: &[u64],
    tie_rule: TieRule,
    w: usize,
    acceptable: impl Fn(usize) -> bool,
) -> bool {
    match engine::run(ix.candidates.len(), &ix.rankings, counts, tie_rule, None) {
        Ok(out) => !out.tie_seen && out.winner != w && acceptable(out.winner),
        Err(_) => false,
    }
}

/// Replays a witness from scratch.
///
/// Accepts only when the original profile elects `original_winner`, the
/// modified profile elects `new_winner`, the two differ, neither count needed
/// the tie rule, the stored round logs match the replays, and the
/// modification is valid for its kind. It does not check minimality.
pub fn verify_witness(profile: &PreferenceProfile, witness: &ParadoxWitness, tie_rule: TieRule) -> bool {
    let Ok(before) = tabulate(profile, tie_rule) else {
        return false;
    };
    if before.had_tie() || before.winner != witness.original_winner || before != witness.before {
        return false;
    }
    if witness.new_winner == witness.original_winner {
        return false;
    }
    let w = &witness.original_winner;
    let base = match (&witness.kind, &witness.modification) {
        (WitnessKind::Spoiler, Modification::DeleteCandidate { candidate }) => {
            if candidate == w || witness.adds_new_ranking {
                return false;
            }
            profile.clone()
        }
        (WitnessKind::UpwardMonotonicity, Modification::ShiftBallots { from, to, count }) => {
            if *count == 0 || !is_upward_shift(from, to, w) || witness.adds_new_ranking == from.contains(w) {
                return false;
            }
            profile.collapse_full_rankings()
        }
        (WitnessKind::NoShow, Modification::RemoveBallots { ranking, count }) => {
            if *count == 0 || !ranking.prefers(&witness.new_winner, w) || witness.adds_new_ranking {
                return false;
            }
            profile.clone()
        }
        _ => return false,
    };
    let Ok(modified) = witness.modification.apply(&base) else {
        return false;
    };
    let Ok(after) = tabulate(&modified, tie_rule) else {
        return false;
    };
    !after.had_tie() && after.winner == witness.new_winner && after == witness.after
}
