//! The normalized ballot CSV: one row per ballot type.
//!
//! ```text
//! count,rank1,rank2,rank3
//! 27053,Nick Begich,Sarah Palin,Mary Peltola
//! 11290,Nick Begich,,
//! ```
//!
//! Cells are exact candidate names (no trimming, no quoting); an empty cell
//! ends the ranking and every later cell in the row must be empty too. Names
//! containing commas, quotes or line breaks cannot be written. The roster is
//! the set of candidates that appear in some row.

use std::fmt::Write as _;

use rcv_audit_core::{Ballot, Candidate, PreferenceProfile};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BallotCsvError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("candidate name {0:?} cannot be written to ballot CSV")]
    UnwritableName(String),
}

fn malformed(line: usize, message: impl Into<String>) -> BallotCsvError {
    BallotCsvError::Malformed { line, message: message.into() }
}

pub fn read_ballot_csv(text: &str) -> Result<PreferenceProfile, BallotCsvError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)));
    let (_, header) = lines.next().ok_or_else(|| malformed(1, "missing header"))?;
    let columns: Vec<&str> = header.split(',').collect();
    if columns.len() < 2 || columns[0] != "count" {
        return Err(malformed(1, "header must be `count,rank1,...,rankN`"));
    }
    for (i, col) in columns[1..].iter().enumerate() {
        if *col != format!("rank{}", i + 1) {
            return Err(malformed(1, format!("expected column rank{}, found {col:?}", i + 1)));
        }
    }

    let mut rows = Vec::new();
    for (line, row) in lines {
        if row.is_empty() {
            continue;
        }
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != columns.len() {
            return Err(malformed(line, format!("expected {} fields, found {}", columns.len(), cells.len())));
        }
        let count: u64 = cells[0]
            .parse()
            .map_err(|_| malformed(line, format!("count {:?} is not a nonnegative integer", cells[0])))?;
        let ranked = cells[1..].iter().take_while(|c| !c.is_empty()).count();
        if cells[1 + ranked..].iter().any(|c| !c.is_empty()) {
            return Err(malformed(line, "candidate after an empty rank"));
        }
        let ranking = cells[1..=ranked]
            .iter()
            .map(|name| Candidate::new(*name))
            .collect::<Result<Vec<_>, _>>()
            .and_then(Ballot::new)
            .map_err(|e| malformed(line, e.to_string()))?;
        rows.push((ranking, count));
    }
    PreferenceProfile::from_counts_inferred(rows).map_err(|e| malformed(1, e.to_string()))
}

fn writable(name: &str) -> bool {
    !name.contains([',', '"', '\n', '\r'])
}

/// Renders `profile` with one `rank` column per roster candidate (at least
/// one) and rows in ballot order.
pub fn write_ballot_csv(profile: &PreferenceProfile) -> Result<String, BallotCsvError> {
    if let Some(bad) = profile.roster().iter().find(|c| !writable(c.as_str())) {
        return Err(BallotCsvError::UnwritableName(bad.as_str().to_string()));
    }
    let width = profile.roster().len().max(1);
    let mut out = String::from("count");
    for i in 1..=width {
        write!(out, ",rank{i}").unwrap();
    }
    out.push('\n');
    for (ballot, count) in profile.ballot_types() {
        write!(out, "{count}").unwrap();
        for i in 0..width {
            out.push(',');
            if let Some(c) = ballot.ranking().get(i) {
                out.push_str(c.as_str());
            }
        }
        out.push('\n');
    }
    Ok(out)
}
