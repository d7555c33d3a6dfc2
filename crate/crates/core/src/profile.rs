//! Candidates, ballots and preference profiles.
//!
//! A [`Ballot`] is a strict, possibly truncated ranking stored as an ordered
//! list: earlier entries are preferred to later ones, and every ranked
//! candidate is preferred to every unranked one. A [`PreferenceProfile`]
//! counts how many voters cast each distinct ranking.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::Error;

/// A candidate, identified by its exact display name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Candidate(String);

impl Candidate {
    pub fn new(name: impl Into<String>) -> Result<Self, Error> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::EmptyCandidateName);
        }
        Ok(Candidate(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Candidate {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// A strict ranking, most preferred first. May be empty only as the result of
/// removing candidates from a profile.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Candidate>", into = "Vec<Candidate>")]
pub struct Ballot(Vec<Candidate>);

impl Ballot {
    pub fn new(ranking: Vec<Candidate>) -> Result<Self, Error> {
        let mut seen = BTreeSet::new();
        for c in &ranking {
            if !seen.insert(c) {
                return Err(Error::DuplicateCandidate(c.clone()));
            }
        }
        Ok(Ballot(ranking))
    }

    /// Builds a ballot from names, e.g. `Ballot::from_names(["A", "B"])`.
    pub fn from_names<I, S>(names: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let ranking = names.into_iter().map(Candidate::new).collect::<Result<Vec<_>, _>>()?;
        Ballot::new(ranking)
    }

    pub fn empty() -> Self {
        Ballot(Vec::new())
    }

    pub fn ranking(&self) -> &[Candidate] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<&Candidate> {
        self.0.first()
    }

    /// Zero-based rank of `c`, or `None` when unranked.
    pub fn position(&self, c: &Candidate) -> Option<usize> {
        self.0.iter().position(|x| x == c)
    }

    pub fn contains(&self, c: &Candidate) -> bool {
        self.0.contains(c)
    }

    /// True when this ballot strictly prefers `a` to `b`. An unranked
    /// candidate sits below every ranked one; two unranked candidates are
    /// incomparable.
    pub fn prefers(&self, a: &Candidate, b: &Candidate) -> bool {
        match (self.position(a), self.position(b)) {
            (Some(pa), Some(pb)) => pa < pb,
            (Some(_), None) => true,
            _ => false,
        }
    }

    pub fn without(&self, c: &Candidate) -> Ballot {
        Ballot(self.0.iter().filter(|x| *x != c).cloned().collect())
    }
}

impl TryFrom<Vec<Candidate>> for Ballot {
    type Error = Error;

    fn try_from(ranking: Vec<Candidate>) -> Result<Self, Error> {
        Ballot::new(ranking)
    }
}

impl From<Ballot> for Vec<Candidate> {
    fn from(b: Ballot) -> Self {
        b.0
    }
}

impl fmt::Display for Ballot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" > ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// A multiset of ballots over a fixed roster.
///
/// Ballot types with a zero count are never stored, so two profiles with the
/// same roster and the same positive counts compare equal.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PreferenceProfile {
    roster: BTreeSet<Candidate>,
    tallies: BTreeMap<Ballot, u64>,
}

impl PreferenceProfile {
    /// An empty profile over `roster`.
    pub fn new<I>(roster: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = Candidate>,
    {
        let mut set = BTreeSet::new();
        for c in roster {
            if set.contains(&c) {
                return Err(Error::DuplicateCandidate(c));
            }
            set.insert(c);
        }
        Ok(PreferenceProfile { roster: set, tallies: BTreeMap::new() })
    }

    /// Counts each distinct ballot in `ballots`.
    pub fn aggregate<R, B>(roster: R, ballots: B) -> Result<Self, Error>
    where
        R: IntoIterator<Item = Candidate>,
        B: IntoIterator<Item = Ballot>,
    {
        let mut profile = PreferenceProfile::new(roster)?;
        for b in ballots {
            profile.insert(b, 1)?;
        }
        Ok(profile)
    }

    /// Builds a profile from (ballot, count) pairs; repeated ballots add up.
    pub fn from_counts<R, B>(roster: R, counts: B) -> Result<Self, Error>
    where
        R: IntoIterator<Item = Candidate>,
        B: IntoIterator<Item = (Ballot, u64)>,
    {
        let mut profile = PreferenceProfile::new(roster)?;
        for (b, n) in counts {
            profile.insert(b, n)?;
        }
        Ok(profile)
    }

    /// Like [`from_counts`](Self::from_counts) with the roster taken to be
    /// every candidate that appears on some ballot.
    pub fn from_counts_inferred<B>(counts: B) -> Result<Self, Error>
    where
        B: IntoIterator<Item = (Ballot, u64)>,
    {
        let counts: Vec<(Ballot, u64)> = counts.into_iter().collect();
        let roster: BTreeSet<Candidate> = counts.iter().flat_map(|(b, _)| b.ranking().iter().cloned()).collect();
        PreferenceProfile::from_counts(roster, counts)
    }

    pub(crate) fn insert(&mut self, ballot: Ballot, count: u64) -> Result<(), Error> {
        if let Some(c) = ballot.ranking().iter().find(|c| !self.roster.contains(*c)) {
            return Err(Error::UnknownCandidate(c.clone()));
        }
        if count > 0 {
            *self.tallies.entry(ballot).or_insert(0) += count;
        }
        Ok(())
    }

    /// Takes `count` ballots of type `ballot` out of the profile.
    pub(crate) fn withdraw(&mut self, ballot: &Ballot, count: u64) -> Result<(), Error> {
        let available = self.count(ballot);
        if available < count {
            return Err(Error::InsufficientBallots { ranking: ballot.clone(), available, requested: count });
        }
        if available == count {
            self.tallies.remove(ballot);
        } else if let Some(n) = self.tallies.get_mut(ballot) {
            *n -= count;
        }
        Ok(())
    }

    pub fn roster(&self) -> &BTreeSet<Candidate> {
        &self.roster
    }

    /// Ballot types in lexicographic order with their (positive) counts.
    pub fn ballot_types(&self) -> impl Iterator<Item = (&Ballot, u64)> + '_ {
        self.tallies.iter().map(|(b, n)| (b, *n))
    }

    pub fn tallies(&self) -> &BTreeMap<Ballot, u64> {
        &self.tallies
    }

    pub fn count(&self, ballot: &Ballot) -> u64 {
        self.tallies.get(ballot).copied().unwrap_or(0)
    }

    pub fn num_ballot_types(&self) -> usize {
        self.tallies.len()
    }

    /// Sum of all counts, empty rankings included.
    pub fn total_voters(&self) -> u64 {
        self.tallies.values().sum()
    }

    /// Merges every ranking of `n - 1` candidates into the full ranking it
    /// implies. Does not change the IRV outcome or any round tally.
    pub fn collapse_full_rankings(&self) -> PreferenceProfile {
        let n = self.roster.len();
        let mut out = PreferenceProfile { roster: self.roster.clone(), tallies: BTreeMap::new() };
        for (ballot, count) in self.ballot_types() {
            let ballot = if n >= 2 && ballot.len() == n - 1 {
                let missing = self.roster.iter().find(|c| !ballot.contains(c)).cloned();
                let mut ranking = ballot.ranking().to_vec();
                ranking.extend(missing);
                Ballot(ranking)
            } else {
                ballot.clone()
            };
            *out.tallies.entry(ballot).or_insert(0) += count;
        }
        out
    }

    /// Deletes `c` from the roster and from every ranking. Ballots left
    /// empty keep their counts.
    pub fn remove_candidate(&self, c: &Candidate) -> Result<PreferenceProfile, Error> {
        if !self.roster.contains(c) {
            return Err(Error::UnknownCandidate(c.clone()));
        }
        let mut roster = self.roster.clone();
        roster.remove(c);
        let mut tallies = BTreeMap::new();
        for (ballot, count) in self.ballot_types() {
            *tallies.entry(ballot.without(c)).or_insert(0) += count;
        }
        Ok(PreferenceProfile { roster, tallies })
    }
}
