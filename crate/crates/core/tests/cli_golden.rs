use std::fs;
use std::path::PathBuf;

use fragmerge::cli::{run, CliOutput, RunReport};

fn fixture(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn cli(args: &[&str]) -> CliOutput {
    run(std::iter::once("fragmerge").chain(args.iter().copied()))
}

fn golden(args: &[&str], expected: &str) {
    let out = cli(args);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    let want = fs::read_to_string(fixture(expected)).unwrap();
    assert_eq!(out.stdout, want, "output differs from {expected}");
}

/// Text output must equal the rendering of the JSON payload.
fn round_trip(args: &[&str]) {
    let text = cli(args);
    let mut json_args = vec!["--json"];
    json_args.extend_from_slice(args);
    let json = cli(&json_args);
    assert_eq!(json.code, text.code);
    let report: RunReport = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(report.exit_code, text.code);
    assert_eq!(report.payload.render(), text.stdout, "args {args:?}");
    let again: RunReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(again.payload, report.payload);
}

fn example1_merge() -> Vec<String> {
    [
        "merge",
        "--atoms",
        "a,b",
        "--distance",
        "hamming",
        "--agg",
        "sum",
        "--profile",
        &fixture("example1/k1.kb"),
        &fixture("example1/k2.kb"),
        "--constraint",
        &fixture("example1/mu.kb"),
        "--show-matrix",
    ]
    .map(String::from)
    .to_vec()
}

fn one_cnf_merge(agg: &str, k1: &str, k2: &str, labels: [&str; 2]) -> Vec<String> {
    [
        "merge",
        "--atoms",
        "a,b",
        "--distance",
        "hamming",
        "--agg",
        agg,
        "--profile",
        &fixture(&format!("one_cnf/{k1}.kb")),
        &fixture(&format!("one_cnf/{k2}.kb")),
        "--constraint",
        &fixture("one_cnf/mu.kb"),
        "--show-matrix",
        "--labels",
        labels[0],
        labels[1],
    ]
    .map(String::from)
    .to_vec()
}

fn one_cnf_distances() -> Vec<String> {
    let mut v: Vec<String> = ["distances", "--atoms", "a,b", "--distance", "hamming", "--profile"]
        .map(String::from)
        .to_vec();
    for k in ["k_empty", "k_a", "k_b", "k_ab"] {
        v.push(fixture(&format!("one_cnf/{k}.kb")));
    }
    v.extend(
        [
            "--constraint",
            &fixture("one_cnf/mu.kb"),
            "--labels",
            "K{}",
            "K{a}",
            "K{b}",
            "K{a,b}",
            "--no-agg",
        ]
        .map(String::from),
    );
    v
}

const KROM_ATOMS: &str = "a,b,c,d,e,x,y,z";

fn krom_distances() -> Vec<String> {
    let mut v: Vec<String> = ["distances", "--atoms", KROM_ATOMS, "--distance", "hamming", "--profile"]
        .map(String::from)
        .to_vec();
    for k in ["w1", "w2", "w3", "w4"] {
        v.push(fixture(&format!("krom/{k}.kb")));
    }
    v.extend(
        [
            "--constraint",
            &fixture("krom/mu.kb"),
            "--labels",
            "ω1",
            "ω2",
            "ω3",
            "ω4",
            "--no-agg",
        ]
        .map(String::from),
    );
    v
}

fn krom_merge() -> Vec<String> {
    [
        "merge",
        "--atoms",
        KROM_ATOMS,
        "--distance",
        "hamming",
        "--agg",
        "sum",
        "--profile",
        &fixture("krom/kprime.kb"),
        "--constraint",
        &fixture("krom/mu.kb"),
        "--show-matrix",
        "--labels",
        "K'",
    ]
    .map(String::from)
    .to_vec()
}

fn refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

#[test]
fn example1_matrix_golden() {
    golden(&refs(&example1_merge()), "example1/merge_sum.txt");
}

#[test]
fn one_cnf_golden() {
    golden(
        &refs(&one_cnf_merge("gmin", "k_a", "k_b", ["K{a}", "K{b}"])),
        "one_cnf/merge_gmin.txt",
    );
    golden(
        &refs(&one_cnf_merge("gmax", "k_empty", "k_ab", ["K{}", "K{a,b}"])),
        "one_cnf/merge_gmax.txt",
    );
    golden(&refs(&one_cnf_distances()), "one_cnf/distances.txt");
}

#[test]
fn krom_golden() {
    golden(&refs(&krom_distances()), "krom/distances.txt");
    golden(&refs(&krom_merge()), "krom/merge_sum.txt");
}

#[test]
fn json_round_trips() {
    round_trip(&refs(&example1_merge()));
    round_trip(&refs(&one_cnf_merge("gmax", "k_empty", "k_ab", ["K{}", "K{a,b}"])));
    round_trip(&refs(&one_cnf_distances()));
    round_trip(&refs(&krom_merge()));
    let k = fixture("example1/k.kb");
    let one_cnf_k = fixture("one_cnf/k.kb");
    round_trip(&["models", "--atoms", "a,b", "--kb", &k]);
    round_trip(&["expressible", "--atoms", "a,b", "--fragment", "horn", "--kb", &k]);
    round_trip(&["closure", "--atoms", "a,b", "--fragment", "horn", "--kb", &k]);
    round_trip(&["synthesize", "--atoms", "a,b", "--fragment", "krom", "--kb", &k]);
    round_trip(&["critical-pairs", "--atoms", "a,b", "--kb", &one_cnf_k]);
    round_trip(&[
        "distribute",
        "--atoms",
        "a,b",
        "--fragment",
        "horn",
        "--distance",
        "hamming",
        "--agg",
        "sum",
        "--kb",
        &k,
    ]);
    round_trip(&[
        "search",
        "--atoms",
        "a,b",
        "--fragment",
        "1cnf",
        "--distance",
        "hamming",
        "--kb",
        &one_cnf_k,
    ]);
    round_trip(&["check-lemma", "--profiles", "5", "--pairs", "5"]);
    round_trip(&["report", "--max-atoms", "2"]);
}

#[test]
fn example1_cli_behaviour() {
    let k = fixture("example1/k.kb");
    let out = cli(&refs(&example1_merge()));
    assert!(out.stdout.starts_with("{a}\n{b}\n{a,b}\n"));

    let out = cli(&["expressible", "--atoms", "a,b", "--fragment", "horn", "--kb", &k]);
    assert_eq!((out.code, out.stdout.as_str()), (1, "no\n"));
    let out = cli(&["expressible", "--atoms", "a,b", "--fragment", "full", "--kb", &k]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "yes\n"));

    let out = cli(&["models", "--atoms", "a,b", "--kb", &fixture("example1/mu.kb")]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "{}\n{a}\n{b}\n{a,b}\n");
}

#[test]
fn closure_and_synthesis_commands() {
    let k = fixture("example1/k.kb");
    let out = cli(&["closure", "--atoms", "a,b", "--fragment", "horn", "--kb", &k]);
    assert_eq!(out.stdout, "{}\n{a}\n{b}\n{a,b}\n");
    let out = cli(&["synthesize", "--atoms", "a,b", "--fragment", "horn", "--kb", &k]);
    assert_eq!(out.code, 2, "non-closed set must be rejected");
    let out = cli(&["synthesize", "--atoms", "a,b", "--fragment", "full", "--kb", &k]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("full\n"));
}

#[test]
fn usage_and_io_errors_exit_2() {
    let missing = cli(&["models", "--atoms", "a,b", "--kb", "/nonexistent/k.kb"]);
    assert_eq!(missing.code, 2);
    assert!(missing.stderr.starts_with("error:"));
    assert_eq!(missing.stderr.lines().count(), 1);

    assert_eq!(cli(&["merge", "--atoms", "a,b"]).code, 2);
    assert_eq!(cli(&["no-such-command"]).code, 2);

    let bad_atoms = cli(&["models", "--atoms", "a,a", "--kb", &fixture("example1/k.kb")]);
    assert_eq!(bad_atoms.code, 2);

    let bad_fragment = cli(&["models", "--atoms", "a,b", "--kb", &fixture("one_cnf/k.kb")]);
    assert_eq!(bad_fragment.code, 0, "full KB with binary clauses is fine");
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.kb");
    fs::write(&p, "1cnf\na b\n").unwrap();
    let out = cli(&["models", "--atoms", "a,b", "--kb", p.to_str().unwrap()]);
    assert_eq!(out.code, 2);

    let report = cli(&["report", "--max-atoms", "9"]);
    assert_eq!(report.code, 2);
}

#[test]
fn exhausted_search_exits_1() {
    let k = fixture("one_cnf/k.kb");
    let out = cli(&[
        "distribute",
        "--atoms",
        "a,b",
        "--fragment",
        "1cnf",
        "--distance",
        "hamming",
        "--agg",
        "sum",
        "--kb",
        &k,
        "--method",
        "search",
        "--max-len",
        "3",
    ]);
    assert_eq!(out.code, 1);
    assert!(
        out.stdout.starts_with("UNDISTRIBUTABLE within bounds len=3 fresh=0\n"),
        "{}",
        out.stdout
    );
    assert!(!out.stdout.contains("not excluded"));

    let out = cli(&[
        "search",
        "--atoms",
        "a,b",
        "--fragment",
        "1cnf",
        "--distance",
        "hamming",
        "--kb",
        &k,
        "--mode",
        "simplify",
        "--fresh-atoms",
        "1",
    ]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("fresh=1"));
    assert!(
        out.stdout.contains("not excluded"),
        "fresh-atom search must carry its caveat"
    );
}

#[test]
fn node_budget_flag_rejects_large_search() {
    let k = fixture("one_cnf/k.kb");
    let out = cli(&[
        "search",
        "--atoms",
        "a,b",
        "--fragment",
        "1cnf",
        "--distance",
        "hamming",
        "--kb",
        &k,
        "--max-len",
        "3",
        "--node-budget",
        "10",
    ]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("budget"), "{}", out.stderr);
}

#[test]
fn witness_directory_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("w");
    let k = fixture("example1/k.kb");
    let out = cli(&[
        "distribute",
        "--atoms",
        "a,b",
        "--fragment",
        "horn",
        "--distance",
        "hamming",
        "--agg",
        "sum",
        "--kb",
        &k,
        "--method",
        "search",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("# construction: search\n"));
    assert!(out_dir.join("meta.json").exists());
    assert!(out_dir.join("constraint.kb").exists());
    assert!(out_dir.join("profile/001.kb").exists());

    let verify = cli(&["verify", "--witness", out_dir.to_str().unwrap()]);
    assert_eq!(verify.code, 0);
    assert_eq!(verify.stdout, "# construction: search\nhamming,sum: equivalent\n");

    // Dropping {b} from the constraint breaks the witness.
    fs::write(out_dir.join("constraint.kb"), "horn\na\n").unwrap();
    let broken = cli(&["verify", "--witness", out_dir.to_str().unwrap()]);
    assert_eq!(broken.code, 1, "{}{}", broken.stdout, broken.stderr);
    assert!(broken.stdout.contains("NOT equivalent"));

    fs::write(out_dir.join("constraint.kb"), "krom\n").unwrap();
    assert_eq!(cli(&["verify", "--witness", out_dir.to_str().unwrap()]).code, 2);
}

#[test]
fn fresh_atom_witness_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let models = dir.path().join("t.models");
    fs::write(&models, "{a,b}\n{b,c,e}\n{a,c,d}\n").unwrap();
    let out_dir = dir.path().join("krom");
    let out = cli(&[
        "distribute",
        "--atoms",
        "a,b,c,d,e",
        "--fragment",
        "krom",
        "--distance",
        "hamming",
        "--agg",
        "sum",
        "--models",
        models.to_str().unwrap(),
        "--method",
        "krom",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("# universe: a,b,c,d,e,_x1,_x2,_x3\n"));
    let verify = cli(&["verify", "--witness", out_dir.to_str().unwrap()]);
    assert_eq!(verify.code, 0, "{}{}", verify.stdout, verify.stderr);
}

#[test]
fn critical_pairs_command() {
    let dir = tempfile::tempdir().unwrap();
    let models = dir.path().join("t.models");
    fs::write(&models, "{}\n{a}\n{b}\n{c}\n{a,c}\n{b,c}\n{a,b,c}\n").unwrap();
    let out = cli(&[
        "critical-pairs",
        "--atoms",
        "a,b,c",
        "--models",
        models.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.lines().any(|l| l == "{a,c} {a,b} case 5"), "{}", out.stdout);
    assert!(out.stdout.lines().any(|l| l == "{a} {b} case 2"), "{}", out.stdout);

    let out = cli(&["critical-pairs", "--atoms", "a,b", "--kb", &fixture("example1/k1.kb")]);
    assert_eq!(out.stdout, "none\n");
}

#[test]
fn check_lemma_modes() {
    let out = cli(&["check-lemma", "--seed", "3", "--profiles", "20", "--pairs", "10"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "cap-cup identity held in 200 of 200 cases (seed 3)\n");

    let out = cli(&[
        "check-lemma",
        "--atoms",
        "a,b",
        "--profile",
        &fixture("one_cnf/k_a.kb"),
        &fixture("one_cnf/k_b.kb"),
        "--w1",
        "{a}",
        "--w2",
        "{b}",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout, "cap-cup identity held in 1 of 1 cases\n");

    let out = cli(&[
        "check-lemma",
        "--atoms",
        "a,b",
        "--profile",
        &fixture("example1/k2.kb"),
        "--w1",
        "{a}",
        "--w2",
        "{b}",
    ]);
    assert_eq!(out.code, 2, "a non-1CNF base is rejected");
}

#[test]
fn jobs_flag_keeps_output() {
    let k = fixture("example1/k.kb");
    let args = [
        "search",
        "--atoms",
        "a,b",
        "--fragment",
        "horn",
        "--distance",
        "hamming",
        "--kb",
        &k,
        "--max-len",
        "2",
    ];
    let base = cli(&args);
    let mut with_jobs = vec!["--jobs", "1"];
    with_jobs.extend_from_slice(&args);
    assert_eq!(cli(&with_jobs).stdout, base.stdout);
}

#[test]
fn report_two_atoms() {
    let out = cli(&["report", "--max-atoms", "2"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("| | 1CNF | 2CNF | Horn |\n"));
    // Every set over two atoms is 2CNF-expressible, so those cells carry no evidence.
    assert!(
        out.stdout
            .contains("| simplifiable w.r.t. Δ^D | × / × | × / ? | × / × |"),
        "{}",
        out.stdout
    );
    assert!(out.stdout.contains("All cells consistent"));
}
