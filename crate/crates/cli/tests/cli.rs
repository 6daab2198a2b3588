use std::process::{Command, Output};

use serde::Deserialize;

const BIN: &str = env!("CARGO_BIN_EXE_quartika");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("QUARTIKA_THREADS").output().expect("spawn quartika")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
struct Record {
    source: String,
    n: String,
    x: String,
    y: String,
    z: String,
    w: String,
    meta: String,
}

fn parse_csv(text: &str) -> Vec<Record> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rdr.headers().unwrap(), vec!["source", "n", "x", "y", "z", "w", "meta"]);
    rdr.deserialize().map(|r| r.unwrap()).collect()
}

fn parse_json(text: &str) -> Vec<Record> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn assert_verifies(records: &[Record]) {
    for r in records {
        let o = run(&["verify", &r.n, &r.x, &r.y, &r.z, &r.w]);
        assert!(o.status.success(), "{r:?}: {}", stdout(&o));
        assert_eq!(stdout(&o).trim(), "OK");
    }
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", "2", "7", "20", "21", "19"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok).trim(), "OK");

    let bad = run(&["verify", "2", "7", "20", "21", "18"]);
    assert_eq!(bad.status.code(), Some(1));
    let text = stdout(&bad);
    assert!(text.starts_with("FAIL"));
    assert!(text.contains("324802") && text.contains("299457"), "{text}");

    assert_eq!(run(&["verify", "1", "0", "0", "0", "0"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "2", "seven", "20", "21", "19"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "2", "7", "20"]).status.code(), Some(2));
}

#[test]
fn pipeline17_reproduces_table() {
    let o = run(&["pipeline", "--method", "17", "--multiples", "2..5", "--format", "csv"]);
    assert!(o.status.success());
    let recs = parse_csv(&stdout(&o));
    assert_eq!(recs.len(), 4);
    let first4: Vec<[&str; 4]> = recs[..3].iter().map(|r| [&*r.x, &*r.y, &*r.z, &*r.w]).collect();
    assert_eq!(
        first4,
        vec![
            ["3120", "1921", "2242", "6529"],
            ["18418554", "88538885", "176117272", "95896333"],
            ["87733253643360", "108376421998081", "198203611434238", "206237591201281"],
        ]
    );
    assert!(recs.iter().all(|r| r.source == "pipeline-17" && r.n == "17"));
    assert_verifies(&recs);
}

#[test]
fn family_row() {
    let o = run(&["family", "--method", "1", "--m", "9", "--n", "7", "--which", "2q"]);
    assert!(o.status.success());
    let recs = parse_csv(&stdout(&o));
    assert_eq!(recs.len(), 1);
    let r = &recs[0];
    assert_eq!([&*r.n, &*r.x, &*r.y, &*r.z, &*r.w], ["4481", "5009", "2929", "30969", "38647"]);
    assert_eq!(r.source, "family1-2Q");
    assert_eq!(r.meta, "m=9;n=7");
}

#[test]
fn search_smoke() {
    let o = run(&["search", "--n-min", "2", "--n-max", "50", "--bound", "40", "--threads", "2"]);
    assert!(o.status.success());
    let recs = parse_csv(&stdout(&o));
    let ns: Vec<&str> = recs.iter().map(|r| r.n.as_str()).collect();
    assert_eq!(ns, ["2", "8", "17", "41"]);
    assert_verifies(&recs);
}

#[test]
fn threads_env_overrides_flag() {
    let o = Command::new(BIN)
        .args(["search", "--n-max", "20", "--bound", "10", "--threads", "3"])
        .env("QUARTIKA_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(BIN)
        .args(["search", "--n-max", "20", "--bound", "25", "--threads", "0"])
        .env("QUARTIKA_THREADS", "1")
        .output()
        .unwrap();
    assert!(o.status.success());
}

#[test]
fn csv_and_json_carry_the_same_records() {
    let cases: [&[&str]; 5] = [
        &["family", "--method", "2", "--m", "5"],
        &["pipeline", "--method", "41", "--multiples", "2..4"],
        &["pipeline", "--method", "1", "--m", "5", "--n", "3", "--multiples", "2..3"],
        &["richmond", "--n", "97", "--seed", "112,71,10,37", "--steps", "2"],
        &["search", "--n-max", "120", "--bound", "60"],
    ];
    for args in cases {
        let mut csv_args = args.to_vec();
        csv_args.extend(["--format", "csv"]);
        let mut json_args = args.to_vec();
        json_args.extend(["--format", "json"]);
        let a = parse_csv(&stdout(&run(&csv_args)));
        let b = parse_json(&stdout(&run(&json_args)));
        assert!(!a.is_empty(), "{args:?}");
        assert_eq!(a, b, "{args:?}");
        assert_verifies(&a);
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.jsonl");
    let o = run(&["pipeline", "--method", "41", "--multiples", "2..3", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let recs = parse_json(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(recs.len(), 2);
    assert_eq!([&*recs[0].x, &*recs[0].y, &*recs[0].z, &*recs[0].w], ["29", "11", "63", "61"]);
}

#[test]
fn richmond_accepts_both_orientations() {
    let a = parse_csv(&stdout(&run(&["richmond", "--n", "97", "--seed", "112,71,10,37"])));
    let b = parse_csv(&stdout(&run(&["richmond", "--n", "97", "--seed", "10,37,112,71"])));
    assert_eq!(a.len(), 1);
    assert_eq!((&a[0].x, &a[0].y, &a[0].z, &a[0].w), (&b[0].x, &b[0].y, &b[0].z, &b[0].w));
    assert_eq!(run(&["richmond", "--n", "97", "--seed", "1,2,3,4"]).status.code(), Some(1));
}

#[test]
fn domain_and_usage_errors() {
    let o = run(&["family", "--method", "1", "--m", "4", "--n", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("ParityMismatch"));

    assert_eq!(run(&["family", "--method", "1", "--m", "3"]).status.code(), Some(2));
    assert_eq!(run(&["pipeline", "--method", "17", "--m", "3"]).status.code(), Some(2));
    assert_eq!(run(&["pipeline", "--method", "17", "--multiples", "5..2"]).status.code(), Some(2));
    assert_eq!(run(&["pipeline", "--method", "9"]).status.code(), Some(2));
    assert_eq!(run(&["search", "--n-min", "10", "--n-max", "2", "--bound", "5"]).status.code(), Some(1));
}
