use std::path::PathBuf;
use std::process::Command;

use rcv_audit::{read_ballot_csv, render_report, run_cli, AnalysisReport, Format};
use rcv_audit_core::{TieRule, WitnessKind};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_str().unwrap().to_string()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let mut argv = vec!["rcv-audit"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_cli(argv, &mut out, &mut err);
    Run { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn tabulate_ak_text() {
    let r = run(&["tabulate", "--input", &fixture("ak2022.csv")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("Winner: Mary Peltola\n"));
    assert!(r.stdout.contains("Final tallies: Mary Peltola 91266, Sarah Palin 86026\n"));
    assert!(r.stdout.contains("eliminated Nick Begich: 15467 to Mary Peltola, 27053 to Sarah Palin, 11290 exhausted"));
}

#[test]
fn tabulate_empty_is_input_error() {
    let r = run(&["tabulate", "--input", &fixture("empty.csv")]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("no ballot ranks any candidate"), "{}", r.stderr);
}

#[test]
fn usage_errors_exit_one() {
    for args in
        [&["tabulate", "--bogus"][..], &["frob"], &[], &["tabulate"], &["tabulate", "--input", "x", "--format", "xml"]]
    {
        let r = run(args);
        assert_eq!(r.code, 1, "{args:?}");
        assert!(r.stdout.is_empty());
        assert!(!r.stderr.is_empty());
    }
}

#[test]
fn help_and_version_exit_zero() {
    let r = run(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("normalize"));
    let r = run(&["--version"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("rcv-audit "));
}

#[test]
fn missing_input_file() {
    let r = run(&["tabulate", "--input", "/nonexistent/ballots.csv"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("/nonexistent/ballots.csv"));
}

#[test]
fn audit_json_matches_library_and_round_trips() {
    let r = run(&["audit", "--input", &fixture("ak2022.csv"), "--format", "json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let value: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(value["winner"], "Mary Peltola");
    assert_eq!(value["rcv_vs_condorcet_disagreement"], true);

    let parsed: AnalysisReport = serde_json::from_str(&r.stdout).unwrap();
    let profile = read_ballot_csv(&std::fs::read_to_string(fixture("ak2022.csv")).unwrap()).unwrap();
    let built = AnalysisReport::build(&profile, TieRule::LexicographicById).unwrap();
    assert_eq!(parsed, built);
    let kinds: Vec<WitnessKind> = parsed.witnesses.iter().map(|w| w.kind).collect();
    assert_eq!(kinds, [WitnessKind::Spoiler, WitnessKind::UpwardMonotonicity, WitnessKind::NoShow]);
    assert_eq!(render_report(&parsed, Format::Json), r.stdout.as_bytes());
}

#[test]
fn audit_text_sections() {
    let r = run(&["audit", "--input", &fixture("ak2022.csv")]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("Condorcet winner: Nick Begich\n"));
    assert!(r.stdout.contains("Condorcet loser: Sarah Palin\n"));
    assert!(r.stdout.contains("RCV and Condorcet winners disagree: yes\n"));
    assert!(r.stdout.contains("spoiler: remove candidate Sarah Palin"));
    assert!(r.stdout.contains("5164 ballots [Sarah Palin] instead cast [Mary Peltola > Sarah Palin]"));
    assert!(r.stdout.contains("5164 ballots [Sarah Palin > Nick Begich > Mary Peltola] abstain"));
}

#[test]
fn output_is_deterministic() {
    for format in ["text", "json"] {
        let args = ["audit", "--input", &fixture("ak2022.csv"), "--format", format];
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}

#[test]
fn fail_on_paradox() {
    let r = run(&["audit", "--input", &fixture("ak2022.csv"), "--fail-on-paradox"]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.contains("Pathologies\n"));

    let dir = tempfile::tempdir().unwrap();
    let calm = write_temp(&dir, "calm.csv", "count,rank1,rank2\n10,A,B\n3,B,A\n");
    let r = run(&["audit", "--input", &calm, "--fail-on-paradox"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("Pathologies: none found\n"));
}

#[test]
fn condorcet_subcommand() {
    let r = run(&["condorcet", "--input", &fixture("ak2022.csv"), "--format", "json"]);
    assert_eq!(r.code, 0);
    let value: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(value["condorcet_winner"], "Nick Begich");
    assert_eq!(value["condorcet_loser"], "Sarah Palin");
    assert_eq!(value["pairwise"]["candidates"].as_array().unwrap().len(), 3);
}

#[test]
fn tie_rule_flag_and_config_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let tied = write_temp(&dir, "tied.csv", "count,rank1\n4,A\n4,B\n");
    let strict = write_temp(&dir, "strict.conf", "tie_rule = error\nformat = json\n");

    let r = run(&["tabulate", "--input", &tied]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("Winner: B\n"));

    let r = run(&["tabulate", "--input", &tied, "--config", &strict]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("tie"), "{}", r.stderr);

    let r = run(&["tabulate", "--input", &tied, "--config", &strict, "--tie-rule", "lex", "--format", "text"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("tie for fewest votes: A, B"));
}

#[test]
fn bad_config_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let conf = write_temp(&dir, "bad.conf", "tie_rule = coin\n");
    let r = run(&["tabulate", "--input", &fixture("ak2022.csv"), "--config", &conf]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("line 1"), "{}", r.stderr);
}

#[test]
fn env_config_is_default_and_flag_overrides_it() {
    let dir = tempfile::tempdir().unwrap();
    let json = write_temp(&dir, "json.conf", "format = json\n");
    let text = write_temp(&dir, "text.conf", "format = text\n");
    let bin = env!("CARGO_BIN_EXE_rcv-audit");
    let out = |extra: &[&str]| {
        let o = Command::new(bin)
            .args(["tabulate", "--input", &fixture("ak2022.csv")])
            .args(extra)
            .env("RCV_AUDIT_CONFIG", &json)
            .output()
            .unwrap();
        assert!(o.status.success());
        String::from_utf8(o.stdout).unwrap()
    };
    assert!(out(&[]).starts_with('{'));
    assert!(out(&["--config", &text]).starts_with("Profile"));
    assert!(out(&["--format", "text"]).starts_with("Profile"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_rcv-audit");
    let code = |args: &[&str]| Command::new(bin).args(args).env_remove("RCV_AUDIT_CONFIG").status().unwrap().code();
    assert_eq!(code(&["tabulate", "--input", &fixture("ak2022.csv")]), Some(0));
    assert_eq!(code(&["tabulate", "--input", &fixture("empty.csv")]), Some(1));
    assert_eq!(code(&["audit", "--input", &fixture("ak2022.csv"), "--fail-on-paradox"]), Some(2));
    assert_eq!(code(&["nonsense"]), Some(1));
}

#[test]
fn raw_cvr_input_via_schema() {
    let r = run(&["tabulate", "--input", &fixture("cvr/raw.csv"), "--schema", &fixture("cvr/schema.txt")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("total voters: 19\n"));
}

#[test]
fn normalize_needs_schema_and_writes_output_file() {
    let r = run(&["normalize", "--input", &fixture("cvr/raw.csv")]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("schema"));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ballots.csv");
    let r = run(&[
        "normalize",
        "--input",
        &fixture("cvr/raw.csv"),
        "--schema",
        &fixture("cvr/schema.txt"),
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty());
    assert_eq!(r.stderr, "records: 25, ballots: 19, discarded: 6\n");
    assert_eq!(std::fs::read(out).unwrap(), std::fs::read(fixture("cvr/expected_default.csv")).unwrap());
}

#[test]
fn normalized_output_reads_back() {
    let r = run(&["normalize", "--input", &fixture("cvr/raw.csv"), "--schema", &fixture("cvr/schema.txt")]);
    let profile = read_ballot_csv(&r.stdout).unwrap();
    assert_eq!(profile.total_voters(), 19);
    assert_eq!(rcv_audit::write_ballot_csv(&profile).unwrap(), r.stdout);
}
