#![allow(dead_code)]

use rcv_audit_core::{Ballot, Candidate, PreferenceProfile};

pub const BEGICH: &str = "Nick Begich";
pub const PALIN: &str = "Sarah Palin";
pub const PELTOLA: &str = "Mary Peltola";

pub fn c(name: &str) -> Candidate {
    Candidate::new(name).unwrap()
}

pub fn b(names: &[&str]) -> Ballot {
    Ballot::from_names(names.iter().copied()).unwrap()
}

/// The August 2022 Alaska special election profile (write-ins disregarded).
pub fn ak_profile() -> PreferenceProfile {
    let rows: [(&[&str], u64); 9] = [
        (&[BEGICH, PALIN, PELTOLA], 27053),
        (&[BEGICH, PELTOLA, PALIN], 15467),
        (&[BEGICH], 11290),
        (&[PALIN, BEGICH, PELTOLA], 34049),
        (&[PALIN, PELTOLA, BEGICH], 3652),
        (&[PALIN], 21272),
        (&[PELTOLA, BEGICH, PALIN], 47407),
        (&[PELTOLA, PALIN, BEGICH], 4645),
        (&[PELTOLA], 23747),
    ];
    PreferenceProfile::from_counts([c(BEGICH), c(PALIN), c(PELTOLA)], rows.iter().map(|(r, n)| (b(r), *n))).unwrap()
}

/// Plain IRV over weighted ballot types, written without reference to the
/// library engine. Returns the winner and whether any
/// elimination had more than one candidate at the minimum; `None` when no
/// ballot ranks anybody.
pub fn naive_irv(roster: &[String], ballots: &[(Vec<String>, u64)]) -> Option<(String, bool)> {
    let mut alive: Vec<String> = roster.to_vec();
    alive.sort();
    let mut tie = false;
    loop {
        let mut votes: Vec<(String, u64)> = alive.iter().map(|c| (c.clone(), 0)).collect();
        for (ballot, n) in ballots {
            if let Some(top) = ballot.iter().find(|x| alive.contains(x)) {
                votes.iter_mut().find(|(c, _)| c == top).unwrap().1 += n;
            }
        }
        let total: u64 = votes.iter().map(|(_, v)| v).sum();
        if total == 0 {
            return None;
        }
        if let Some((w, _)) = votes.iter().find(|(_, v)| 2 * v > total) {
            return Some((w.clone(), tie));
        }
        let min = votes.iter().map(|(_, v)| *v).min().unwrap();
        let losers: Vec<&String> = votes.iter().filter(|(_, v)| *v == min).map(|(c, _)| c).collect();
        if losers.len() > 1 {
            tie = true;
        }
        let out = losers[0].clone();
        alive.retain(|x| *x != out);
    }
}

pub fn names(ballot: &[&str]) -> Vec<String> {
    ballot.iter().map(|s| s.to_string()).collect()
}

pub fn types_of(p: &PreferenceProfile) -> Vec<(Vec<String>, u64)> {
    p.ballot_types().map(|(b, n)| (b.ranking().iter().map(|c| c.as_str().to_string()).collect(), n)).collect()
}

pub fn roster_of(p: &PreferenceProfile) -> Vec<String> {
    p.roster().iter().map(|c| c.as_str().to_string()).collect()
}

fn prefers(r: &[String], x: &str, y: &str) -> bool {
    match (r.iter().position(|c| c == x), r.iter().position(|c| c == y)) {
        (Some(a), Some(b)) => a < b,
        (Some(_), None) => true,
        _ => false,
    }
}

/// Every non-empty strict ranking over `roster`.
pub fn all_rankings(roster: &[String]) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<String>> = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        for c in roster {
            if !prefix.contains(c) {
                let mut next = prefix.clone();
                next.push(c.clone());
                out.push(next.clone());
                stack.push(next);
            }
        }
    }
    out
}

/// Independent collapse: rankings one short of complete get the missing
/// candidate appended, and equal rankings merge.
pub fn oracle_collapse(roster: &[String], types: &[(Vec<String>, u64)]) -> Vec<(Vec<String>, u64)> {
    let mut out: Vec<(Vec<String>, u64)> = Vec::new();
    for (r, n) in types {
        let mut r = r.clone();
        if roster.len() >= 2 && r.len() == roster.len() - 1 {
            let missing = roster.iter().find(|c| !r.contains(c)).unwrap().clone();
            r.push(missing);
        }
        match out.iter_mut().find(|(x, _)| *x == r) {
            Some(e) => e.1 += n,
            None => out.push((r, *n)),
        }
    }
    out
}

/// Brute-force upward monotonicity search: every source type, every
/// ranking on the roster that raises the winner while keeping all other
/// pairwise preferences and ranked/unranked status, every k. Returns the
/// smallest k that elects someone else with no tie, or `None`.
pub fn oracle_upward_monotonicity(roster: &[String], types: &[(Vec<String>, u64)]) -> Option<u64> {
    let (w, tie) = naive_irv(roster, types)?;
    if tie {
        return None;
    }
    let types = oracle_collapse(roster, types);
    let candidates = all_rankings(roster);
    let mut best: Option<u64> = None;
    for (from, n) in &types {
        let old = from.iter().position(|c| *c == w).unwrap_or(usize::MAX);
        for to in &candidates {
            let Some(new) = to.iter().position(|c| *c == w) else { continue };
            if new >= old {
                continue;
            }
            let others: Vec<&String> = roster.iter().filter(|c| **c != w).collect();
            let same_status = others.iter().all(|x| from.contains(x) == to.contains(x));
            let same_order = others.iter().all(|x| others.iter().all(|y| prefers(from, x, y) == prefers(to, x, y)));
            if !same_status || !same_order {
                continue;
            }
            for k in 1..=*n {
                let mut modified: Vec<(Vec<String>, u64)> =
                    types.iter().map(|(r, m)| (r.clone(), if r == from { m - k } else { *m })).collect();
                modified.push((to.clone(), k));
                if let Some((x, tie)) = naive_irv(roster, &modified) {
                    if !tie && x != w {
                        best = Some(best.map_or(k, |b| b.min(k)));
                        break;
                    }
                }
            }
        }
    }
    best
}

/// Brute-force no-show search over single ballot types.
pub fn oracle_no_show(roster: &[String], types: &[(Vec<String>, u64)]) -> Option<u64> {
    let (w, tie) = naive_irv(roster, types)?;
    if tie {
        return None;
    }
    let mut best: Option<u64> = None;
    for (from, n) in types {
        for k in 1..=*n {
            let modified: Vec<(Vec<String>, u64)> =
                types.iter().map(|(r, m)| (r.clone(), if r == from { m - k } else { *m })).collect();
            if let Some((x, tie)) = naive_irv(roster, &modified) {
                if !tie && x != w && prefers(from, &x, &w) {
                    best = Some(best.map_or(k, |b| b.min(k)));
                    break;
                }
            }
        }
    }
    best
}
