//! Pairwise comparisons and Condorcet winner / loser identification.

use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::profile::{Candidate, PreferenceProfile};

/// One cell of the matrix: `over` voters rank `a` above `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairwiseEntry {
    pub a: Candidate,
    pub b: Candidate,
    pub over: u64,
}

/// For every ordered pair of distinct candidates, the number of voters
/// ranking the first above the second. A ranked candidate beats every
/// unranked one on the same ballot; two unranked candidates count for
/// neither side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "PairwiseTable", try_from = "PairwiseTable")]
pub struct PairwiseMatrix {
    candidates: Vec<Candidate>,
    /// Row-major `n * n`; the diagonal stays zero.
    over: Vec<u64>,
}

impl PairwiseMatrix {
    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    fn index(&self, c: &Candidate) -> Option<usize> {
        self.candidates.binary_search(c).ok()
    }

    /// Voters ranking `a` above `b`; `None` if either is not in the matrix.
    pub fn over(&self, a: &Candidate, b: &Candidate) -> Option<u64> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        Some(self.over[i * self.candidates.len() + j])
    }

    fn at(&self, i: usize, j: usize) -> u64 {
        self.over[i * self.candidates.len() + j]
    }

    /// All off-diagonal entries, ordered by (a, b).
    pub fn entries(&self) -> Vec<PairwiseEntry> {
        let n = self.candidates.len();
        let mut out = Vec::with_capacity(n * n.saturating_sub(1));
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out.push(PairwiseEntry {
                        a: self.candidates[i].clone(),
                        b: self.candidates[j].clone(),
                        over: self.at(i, j),
                    });
                }
            }
        }
        out
    }

    /// The matrix restricted to `keep` (candidates outside the matrix are ignored).
    pub fn restrict<'a, I>(&self, keep: I) -> PairwiseMatrix
    where
        I: IntoIterator<Item = &'a Candidate>,
    {
        let mut idx: Vec<usize> = keep.into_iter().filter_map(|c| self.index(c)).collect();
        idx.sort_unstable();
        idx.dedup();
        let candidates = idx.iter().map(|&i| self.candidates[i].clone()).collect();
        let mut over = Vec::with_capacity(idx.len() * idx.len());
        for &i in &idx {
            for &j in &idx {
                over.push(self.at(i, j));
            }
        }
        PairwiseMatrix { candidates, over }
    }

    fn beats_all(&self, i: usize) -> bool {
        (0..self.candidates.len()).all(|j| j == i || self.at(i, j) > self.at(j, i))
    }

    fn loses_all(&self, i: usize) -> bool {
        (0..self.candidates.len()).all(|j| j == i || self.at(i, j) < self.at(j, i))
    }
}

/// Serialized form of [`PairwiseMatrix`]: the sorted candidate list and the
/// ordered `(a, b, over)` table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairwiseTable {
    pub candidates: Vec<Candidate>,
    pub table: Vec<PairwiseEntry>,
}

impl From<PairwiseMatrix> for PairwiseTable {
    fn from(m: PairwiseMatrix) -> Self {
        let table = m.entries();
        PairwiseTable { candidates: m.candidates, table }
    }
}

impl TryFrom<PairwiseTable> for PairwiseMatrix {
    type Error = &'static str;

    fn try_from(t: PairwiseTable) -> Result<Self, Self::Error> {
        let PairwiseTable { mut candidates, table: entries } = t;
        let len = candidates.len();
        candidates.sort();
        candidates.dedup();
        let n = candidates.len();
        if n != len {
            return Err("duplicate candidate in pairwise table");
        }
        if entries.len() != n * n.saturating_sub(1) {
            return Err("pairwise table must list every ordered pair exactly once");
        }
        let mut over = vec![0; n * n];
        let mut seen = vec![false; n * n];
        for e in entries {
            let i = candidates.binary_search(&e.a).map_err(|_| "unknown candidate in pairwise table")?;
            let j = candidates.binary_search(&e.b).map_err(|_| "unknown candidate in pairwise table")?;
            if i == j || seen[i * n + j] {
                return Err("pairwise table must list every ordered pair exactly once");
            }
            seen[i * n + j] = true;
            over[i * n + j] = e.over;
        }
        Ok(PairwiseMatrix { candidates, over })
    }
}

pub fn pairwise_matrix(profile: &PreferenceProfile) -> PairwiseMatrix {
    let candidates: Vec<Candidate> = profile.roster().iter().cloned().collect();
    let n = candidates.len();
    let mut over = vec![0u64; n * n];
    let mut ranked = vec![false; n];
    for (ballot, count) in profile.ballot_types() {
        let idx: Vec<usize> = ballot
            .ranking()
            .iter()
            .map(|c| candidates.binary_search(c).expect("ballots stay within the roster"))
            .collect();
        ranked.iter_mut().for_each(|r| *r = false);
        for &i in &idx {
            ranked[i] = true;
        }
        for (k, &i) in idx.iter().enumerate() {
            for &j in &idx[k + 1..] {
                over[i * n + j] += count;
            }
            for j in 0..n {
                if !ranked[j] {
                    over[i * n + j] += count;
                }
            }
        }
    }
    PairwiseMatrix { candidates, over }
}

/// The candidate who strictly beats every other head to head, if any.
pub fn condorcet_winner(matrix: &PairwiseMatrix) -> Option<Candidate> {
    (0..matrix.candidates.len()).find(|&i| matrix.beats_all(i)).map(|i| matrix.candidates[i].clone())
}

/// The candidate who strictly loses to every other head to head, if any.
pub fn condorcet_loser(matrix: &PairwiseMatrix) -> Option<Candidate> {
    (0..matrix.candidates.len()).find(|&i| matrix.loses_all(i)).map(|i| matrix.candidates[i].clone())
}
