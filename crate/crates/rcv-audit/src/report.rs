//! Analysis reports and their text / JSON renderings.
//!
//! JSON field names are fixed by the serde derives below and by the core
//! types; candidates always appear in lexicographic order and every number
//! is an exact integer. Rendering is deterministic: the same report always
//! yields the same bytes.

use std::fmt::Write as _;

use rcv_audit_core::{
    condorcet_loser, condorcet_winner, find_no_show_witness, find_spoilers, find_upward_monotonicity_witness,
    pairwise_matrix, tabulate, Ballot, Candidate, Modification, PairwiseMatrix, ParadoxWitness, PreferenceProfile,
    RoundLog, TieRule,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallotTypeCount {
    pub ranking: Ballot,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileSummary {
    pub roster: Vec<Candidate>,
    pub total_voters: u64,
    pub ballot_types: Vec<BallotTypeCount>,
}

impl ProfileSummary {
    pub fn of(profile: &PreferenceProfile) -> Self {
        ProfileSummary {
            roster: profile.roster().iter().cloned().collect(),
            total_voters: profile.total_voters(),
            ballot_types: profile
                .ballot_types()
                .map(|(b, n)| BallotTypeCount { ranking: b.clone(), count: n })
                .collect(),
        }
    }
}

/// Output of `tabulate`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TabulationReport {
    pub winner: Candidate,
    pub profile: ProfileSummary,
    pub round_log: RoundLog,
}

/// Output of `condorcet`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CondorcetReport {
    pub pairwise: PairwiseMatrix,
    pub condorcet_winner: Option<Candidate>,
    pub condorcet_loser: Option<Candidate>,
}

/// Output of `audit`: everything at once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub winner: Candidate,
    pub profile: ProfileSummary,
    pub round_log: RoundLog,
    pub pairwise: PairwiseMatrix,
    pub condorcet_winner: Option<Candidate>,
    pub condorcet_loser: Option<Candidate>,
    /// A Condorcet winner exists and is not the IRV winner.
    pub rcv_vs_condorcet_disagreement: bool,
    /// Spoilers (by candidate), then the monotonicity and no-show witnesses.
    pub witnesses: Vec<ParadoxWitness>,
}

impl TabulationReport {
    pub fn build(profile: &PreferenceProfile, tie_rule: TieRule) -> Result<Self, rcv_audit_core::Error> {
        let round_log = tabulate(profile, tie_rule)?;
        Ok(TabulationReport { winner: round_log.winner.clone(), profile: ProfileSummary::of(profile), round_log })
    }
}

impl CondorcetReport {
    pub fn build(profile: &PreferenceProfile) -> Self {
        let pairwise = pairwise_matrix(profile);
        CondorcetReport {
            condorcet_winner: condorcet_winner(&pairwise),
            condorcet_loser: condorcet_loser(&pairwise),
            pairwise,
        }
    }
}

impl AnalysisReport {
    pub fn build(profile: &PreferenceProfile, tie_rule: TieRule) -> Result<Self, rcv_audit_core::Error> {
        let TabulationReport { winner, profile: summary, round_log } = TabulationReport::build(profile, tie_rule)?;
        let CondorcetReport { pairwise, condorcet_winner, condorcet_loser } = CondorcetReport::build(profile);
        let mut witnesses = find_spoilers(profile, tie_rule)?;
        witnesses.extend(find_upward_monotonicity_witness(profile, tie_rule)?);
        witnesses.extend(find_no_show_witness(profile, tie_rule)?);
        let rcv_vs_condorcet_disagreement = condorcet_winner.as_ref().is_some_and(|c| *c != winner);
        Ok(AnalysisReport {
            winner,
            profile: summary,
            round_log,
            pairwise,
            condorcet_winner,
            condorcet_loser,
            rcv_vs_condorcet_disagreement,
            witnesses,
        })
    }

    fn condorcet(&self) -> CondorcetReport {
        CondorcetReport {
            pairwise: self.pairwise.clone(),
            condorcet_winner: self.condorcet_winner.clone(),
            condorcet_loser: self.condorcet_loser.clone(),
        }
    }
}

fn json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("reports serialize");
    out.push(b'\n');
    out
}

pub fn render_report(report: &AnalysisReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => json(report),
        Format::Text => {
            let mut s = String::new();
            write_profile(&mut s, &report.profile);
            s.push('\n');
            write_rounds(&mut s, &report.round_log);
            s.push('\n');
            write_condorcet(&mut s, &report.condorcet());
            writeln!(
                s,
                "RCV and Condorcet winners disagree: {}",
                if report.rcv_vs_condorcet_disagreement { "yes" } else { "no" }
            )
            .unwrap();
            s.push('\n');
            write_witnesses(&mut s, &report.witnesses);
            s.into_bytes()
        }
    }
}

pub fn render_tabulation(report: &TabulationReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => json(report),
        Format::Text => {
            let mut s = String::new();
            write_profile(&mut s, &report.profile);
            s.push('\n');
            write_rounds(&mut s, &report.round_log);
            s.into_bytes()
        }
    }
}

pub fn render_condorcet(report: &CondorcetReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => json(report),
        Format::Text => {
            let mut s = String::new();
            write_condorcet(&mut s, report);
            s.into_bytes()
        }
    }
}

fn write_profile(s: &mut String, p: &ProfileSummary) {
    let names: Vec<&str> = p.roster.iter().map(Candidate::as_str).collect();
    writeln!(s, "Profile").unwrap();
    writeln!(s, "  candidates: {}", names.join(", ")).unwrap();
    writeln!(s, "  total voters: {}", p.total_voters).unwrap();
    writeln!(s, "  ballot types: {}", p.ballot_types.len()).unwrap();
}

fn write_rounds(s: &mut String, log: &RoundLog) {
    writeln!(s, "Rounds").unwrap();
    let width = log.rounds.iter().flat_map(|r| r.tallies.keys()).map(|c| c.as_str().len()).max().unwrap_or(0);
    for (i, r) in log.rounds.iter().enumerate() {
        writeln!(s, "  Round {} (continuing {}, exhausted {})", i + 1, r.continuing_votes(), r.exhausted).unwrap();
        for (c, n) in &r.tallies {
            writeln!(s, "    {:<width$}  {n}", c.as_str()).unwrap();
        }
        if !r.tied.is_empty() {
            let tied: Vec<&str> = r.tied.iter().map(Candidate::as_str).collect();
            writeln!(s, "    tie for fewest votes: {}", tied.join(", ")).unwrap();
        }
        if let (Some(out), Some(tr)) = (&r.eliminated, &r.transfer) {
            write!(s, "    eliminated {out}:").unwrap();
            for (c, n) in &tr.to {
                write!(s, " {n} to {c},").unwrap();
            }
            writeln!(s, " {} exhausted", tr.exhausted).unwrap();
        }
    }
    let fin = log.final_round();
    let tallies: Vec<String> = fin.tallies.iter().map(|(c, n)| format!("{c} {n}")).collect();
    writeln!(s, "Final tallies: {}", tallies.join(", ")).unwrap();
    writeln!(s, "Winner: {}", log.winner).unwrap();
}

fn write_condorcet(s: &mut String, r: &CondorcetReport) {
    writeln!(s, "Pairwise").unwrap();
    for e in r.pairwise.entries() {
        writeln!(s, "  {} over {}: {}", e.a, e.b, e.over).unwrap();
    }
    let show = |c: &Option<Candidate>| c.as_ref().map_or("none".to_string(), |c| c.to_string());
    writeln!(s, "Condorcet winner: {}", show(&r.condorcet_winner)).unwrap();
    writeln!(s, "Condorcet loser: {}", show(&r.condorcet_loser)).unwrap();
}

fn write_witnesses(s: &mut String, witnesses: &[ParadoxWitness]) {
    if witnesses.is_empty() {
        writeln!(s, "Pathologies: none found").unwrap();
        return;
    }
    writeln!(s, "Pathologies").unwrap();
    for w in witnesses {
        let change = match &w.modification {
            Modification::DeleteCandidate { candidate } => format!("remove candidate {candidate}"),
            Modification::ShiftBallots { from, to, count } => format!("{count} ballots {from} instead cast {to}"),
            Modification::RemoveBallots { ranking, count } => format!("{count} ballots {ranking} abstain"),
        };
        let kind = match w.kind {
            rcv_audit_core::WitnessKind::Spoiler => "spoiler",
            rcv_audit_core::WitnessKind::UpwardMonotonicity => "upward monotonicity",
            rcv_audit_core::WitnessKind::NoShow => "no-show",
        };
        write!(s, "  {kind}: {change}; winner {} becomes {}", w.original_winner, w.new_winner).unwrap();
        if w.adds_new_ranking {
            s.push_str(" (adds a new ranking)");
        }
        s.push('\n');
    }
}
