use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(name)
}

fn koalign(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_koalign"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).expect("stderr is JSON")
}

fn p(path: &std::path::Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn mine_writes_table_and_coverage() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.tsv");
    let o = koalign(&["mine", p(&fixture("learner.conllu")), "-o", p(&out)]);
    assert!(o.status.success(), "{o:?}");
    let coverage = stdout(&o);
    assert_eq!(
        coverage,
        "threshold\tcovered_eojeols\ttotal_eojeols\tcovered_percent\treviewed_constructions\theuristic_constructions\n5\t29\t84\t34.52\t2\t27\n"
    );
    let table = fs::read_to_string(&out).unwrap();
    let sum: u64 = table
        .lines()
        .skip(1)
        .map(|l| l.split('\t').nth(1).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(sum, 84);
    assert!(table.starts_with("xpos_seq\tfrequency\texamples\nSF\t20\t"));
}

#[test]
fn missing_input_is_a_user_error() {
    let o = koalign(&["mine", "/nonexistent/x.conllu", "-o", "/tmp/never.tsv"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["error"], "FILE_NOT_FOUND");
}

#[test]
fn parse_error_is_reported_with_code() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.conllu");
    fs::write(&bad, "1\t가\n\n").unwrap();
    let o = koalign(&["mine", p(&bad), "-o", p(&dir.path().join("o.tsv"))]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["error"], "PARSE_ERROR");
}

#[test]
fn align_table1_and_rerun_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a.conllu");
    let o = koalign(&["align", p(&fixture("table1.conllu")), "-o", p(&out)]);
    assert!(o.status.success(), "{o:?}");
    assert!(stdout(&o).starts_with("changed\t16\n"));
    let upos: Vec<String> = fs::read_to_string(&out)
        .unwrap()
        .lines()
        .filter(|l| l.starts_with("1\t"))
        .map(|l| l.split('\t').nth(3).unwrap().to_string())
        .collect();
    let expected: Vec<String> = fs::read_to_string(fixture("table1_expected.tsv"))
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split('\t').nth(2).unwrap().to_string())
        .collect();
    assert_eq!(upos, expected);
    let changes = fs::read_to_string(dir.path().join("a.changes.tsv")).unwrap();
    assert_eq!(changes.lines().count(), 17);

    let again = dir.path().join("b.conllu");
    let o = koalign(&["align", p(&out), "-o", p(&again)]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("changed\t0\n"));
    assert_eq!(
        fs::read_to_string(dir.path().join("b.changes.tsv"))
            .unwrap()
            .lines()
            .count(),
        1
    );
    assert_eq!(fs::read(&out).unwrap(), fs::read(&again).unwrap());
}

#[test]
fn align_change_count_bounds_delta() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.conllu");
    let o = koalign(&["align", p(&fixture("delta.conllu")), "-o", p(&out)]);
    assert!(o.status.success());
    let changes = fs::read_to_string(dir.path().join("d.changes.tsv")).unwrap();
    assert_eq!(changes.lines().count() - 1, 3);
    let delta = fs::read_to_string(dir.path().join("d.delta.tsv")).unwrap();
    assert!(
        delta.contains("ADJ\t0\t3\t+3\n") && delta.contains("VERB\t4\t1\t-3\n"),
        "{delta}"
    );
    let o = koalign(&["report", p(&fixture("delta.conllu")), p(&out)]);
    assert_eq!(stdout(&o), delta);
}

#[test]
fn align_with_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("rules.toml");
    fs::write(&cfg, "adverbial_jkb_upos = \"ADV\"\n").unwrap();
    let empty = dir.path().join("empty.tsv");
    fs::write(&empty, "xpos_seq\tupos\tstatus\tfrequency\tnote\n").unwrap();
    let out = dir.path().join("a.conllu");
    let o = koalign(&[
        "align",
        p(&fixture("learner.conllu")),
        "-o",
        p(&out),
        "--table",
        p(&empty),
        "--config",
        p(&cfg),
    ]);
    assert!(o.status.success(), "{o:?}");
    let text = fs::read_to_string(&out).unwrap();
    assert!(
        text.contains("1\t학교에\t학교+에\tADV\tNNG+JKB\t"),
        "{text}"
    );

    fs::write(&cfg, "no_such_key = 1\n").unwrap();
    let o = koalign(&[
        "align",
        p(&fixture("learner.conllu")),
        "-o",
        p(&out),
        "--config",
        p(&cfg),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["error"], "BAD_CONFIG");
}

#[test]
fn invalid_corpus_lists_issues() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.conllu");
    fs::write(&bad, "1\t가\t가\t_\tVV\t_\t1\troot\t_\t_\n\n").unwrap();
    let o = koalign(&["align", p(&bad), "-o", p(&dir.path().join("o.conllu"))]);
    assert_eq!(o.status.code(), Some(2));
    let e = error_json(&o);
    assert_eq!(e["error"], "INVALID_CORPUS");
    assert_eq!(e["issues"][0]["code"], "SELF_HEAD");
}

#[test]
fn eval_outputs() {
    let o = koalign(&[
        "eval",
        p(&fixture("eval_gold.conllu")),
        p(&fixture("eval_gold.conllu")),
    ]);
    assert!(stdout(&o).starts_with(
        "metric\tscore\nUPOS\t100.00\nXPOS\t100.00\nLEMMA\t100.00\nUAS\t100.00\nLAS\t100.00\n"
    ));
    let o = koalign(&[
        "eval",
        p(&fixture("eval_gold.conllu")),
        p(&fixture("eval_system.conllu")),
    ]);
    assert!(stdout(&o).contains("UPOS\t90.00\n"));
    let o = koalign(&[
        "eval",
        p(&fixture("eval_gold.conllu")),
        p(&fixture("learner.conllu")),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["error"], "SHAPE_MISMATCH");
}

#[test]
fn split_is_deterministic_and_recorded() {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for d in &dirs {
        let o = koalign(&[
            "split",
            p(&fixture("learner.conllu")),
            "--out-dir",
            p(d.path()),
            "--seed",
            "42",
        ]);
        assert!(o.status.success(), "{o:?}");
        assert_eq!(stdout(&o), "train\t16\ndev\t2\ntest\t2\nseed\t42\n");
    }
    for f in ["train.conllu", "dev.conllu", "test.conllu", "split.tsv"] {
        assert_eq!(
            fs::read(dirs[0].path().join(f)).unwrap(),
            fs::read(dirs[1].path().join(f)).unwrap()
        );
    }
    let manifest = fs::read_to_string(dirs[0].path().join("split.tsv")).unwrap();
    assert!(manifest.starts_with("# seed\t42\n"));
    let o = koalign(&[
        "split",
        p(&fixture("learner.conllu")),
        "--out-dir",
        p(dirs[0].path()),
        "--seed",
        "1",
        "--ratios",
        "8:1",
    ]);
    assert_eq!(error_json(&o)["error"], "BAD_SPLIT");
}

#[test]
fn seed_table_round_trips_through_align() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("seed.tsv");
    assert!(koalign(&["seed-table", p(&t)]).status.success());
    let text = fs::read_to_string(&t).unwrap();
    assert!(text.contains("NNG+JKO\tNOUN\treviewed\t3679\t"), "{text}");
    let out = dir.path().join("a.conllu");
    let o = koalign(&[
        "align",
        p(&fixture("table1.conllu")),
        "-o",
        p(&out),
        "--table",
        p(&t),
    ]);
    assert!(stdout(&o).starts_with("changed\t16\n"));
}

#[test]
fn busy_port_fails() {
    let listener = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap().to_string();
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.tsv");
    assert!(koalign(&["seed-table", p(&t)]).status.success());
    let o = koalign(&[
        "review-serve",
        p(&fixture("learner.conllu")),
        "--table",
        p(&t),
        "--state-dir",
        p(&dir.path().join("state")),
        "--bind",
        &addr,
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["error"], "PORT_BUSY");
}
