//! End-to-end tests running the compiled binary: documented output lines,
//! exit-status contracts, format switches, and cross-subcommand agreement.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use turan_core::{graph6, Graph};

fn turan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_turan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn turan_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_turan"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .expect("stdin piped")
        .write_all(input.as_bytes())
        .expect("stdin accepts input");
    child.wait_with_output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

#[test]
fn value_prints_the_documented_line() {
    let out = turan(&["value", "--n", "7", "--k", "3", "--r", "3", "--s", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "5 (join-side, K[5,1,1])");
}

#[test]
fn count_prints_the_documented_line_for_a_triangle() {
    let out = turan_stdin(&["count", "--r", "3"], "Bw\n");
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "cliques 1, matching 1");
}

#[test]
fn verify_recurrences_exits_zero() {
    let out = turan(&["verify", "--suite", "recurrences", "--t-max", "50", "--k-max", "10"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS [2420 cases]"), "unexpected report: {text}");
    assert!(text.trim_end().ends_with("verdict: PASS"));
}

#[test]
fn invalid_graph6_input_exits_nonzero_and_names_the_line() {
    let out = turan_stdin(&["count", "--r", "3"], "Bw\nzz!!!\n");
    assert!(!out.status.success());
    assert!(stderr(&out).contains("line 2"), "stderr: {}", stderr(&out));
}

#[test]
fn missing_required_parameters_exit_nonzero() {
    let out = turan(&["value", "--r", "3"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("--n"), "stderr: {}", stderr(&out));
}

#[test]
fn certify_emits_a_checkable_certificate_or_the_exceeds_line() {
    let split = turan(&["construct", "--kind", "split", "--n", "7", "--k", "3", "--s", "2"]);
    assert!(split.status.success());
    let line = stdout(&split).trim().to_string();

    let within = turan_stdin(&["certify", "--s", "2"], &line);
    assert!(within.status.success());
    assert!(stdout(&within).starts_with("matching 2 within bound 2"));

    let exceeded = turan_stdin(&["certify", "--s", "1"], &line);
    assert!(!exceeded.status.success());
    assert_eq!(stdout(&exceeded).trim(), "exceeds bound");
}

#[test]
fn construct_output_feeds_count_with_the_expected_numbers() {
    let out = turan(&["construct", "--kind", "split", "--n", "7", "--k", "3", "--s", "2"]);
    assert!(out.status.success());
    let line = stdout(&out).trim().to_string();
    let g = graph6::decode(&line).expect("construct emits valid graph6");
    assert_eq!(g.n(), 7);

    let counted = turan_stdin(&["count", "--r", "3"], &format!("{line}\n"));
    assert!(counted.status.success());
    assert_eq!(stdout(&counted).trim(), "cliques 5, matching 2");
}

#[test]
fn oracle_text_report_agrees_with_the_closed_form() {
    let out = turan(&["oracle", "--n", "7", "--r", "3", "--k", "3", "--s", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("value 5 ("), "unexpected report: {text}");
    for witness in text.lines().skip(1) {
        let g = graph6::decode(witness).expect("witnesses are valid graph6");
        assert_eq!(g.count_cliques(3).value, 5);
    }
}

#[test]
fn oracle_stream_mode_reproduces_the_exhaustive_value() {
    let mut candidates = String::new();
    // the two n = 6 optima plus noise the search must ignore
    for g in [
        Graph::complete_bipartite(1, 5).unwrap(),
        turan_core::matching_turan_graph(6, 3, 2).unwrap(),
        turan_core::turan_graph(6, 3).unwrap(),
        Graph::empty(6).unwrap(),
    ] {
        candidates.push_str(&graph6::encode(&g).unwrap());
        candidates.push('\n');
    }
    let dir = std::env::temp_dir().join(format!("turan-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("stream6.g6");
    std::fs::write(&path, candidates).unwrap();

    let streamed = turan(&[
        "oracle", "--n", "6", "--r", "3", "--k", "3", "--s", "2", "--stream",
        path.to_str().unwrap(),
    ]);
    assert!(streamed.status.success());
    let text = stdout(&streamed);
    assert!(text.starts_with("value 4 ("), "unexpected report: {text}");
    assert!(text.contains("graph6-stream"));

    let exhaustive = turan(&["oracle", "--n", "6", "--r", "3", "--k", "3", "--s", "2"]);
    assert!(exhaustive.status.success());
    assert!(stdout(&exhaustive).starts_with("value 4 ("));

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_json_is_deterministic_once_the_timestamp_is_isolated() {
    let normalize = |raw: &str| -> String {
        let mut v: serde_json::Value = serde_json::from_str(raw).expect("report parses");
        v["meta"]["timestamp"] = serde_json::json!(0);
        serde_json::to_string(&v).unwrap()
    };
    let a = turan(&["verify", "--suite", "window", "--format", "json"]);
    let b = turan(&["verify", "--suite", "window", "--format", "json"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(normalize(&stdout(&a)), normalize(&stdout(&b)));
}

#[test]
fn value_json_carries_parameters_and_witness_partitions() {
    let out = turan(&[
        "value", "--n", "7", "--k", "3", "--r", "3", "--s", "2", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], 5);
    assert_eq!(v["dominant"], "join");
    assert_eq!(v["witnesses"], serde_json::json!([[5, 1, 1]]));
    assert_eq!(v["n"], 7);
}

#[test]
fn value_csv_quotes_fields_containing_commas() {
    let out = turan(&[
        "value", "--n", "7", "--k", "3", "--r", "3", "--s", "2", "--format", "csv",
    ]);
    assert!(out.status.success());
    let table = stdout(&out);
    let mut rdr = csv::Reader::from_reader(table.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(&headers[4], "value");
    let record = rdr.records().next().unwrap().unwrap();
    assert_eq!(&record[4], "5");
    assert_eq!(&record[6], "K[5,1,1]");
}

#[test]
fn slope_value_matches_the_two_colorable_formula() {
    let c4 = graph6::encode(&Graph::cycle(4).unwrap()).unwrap();
    let zero = turan(&["value", "--r", "3", "--pattern", &c4]);
    assert!(zero.status.success());
    assert_eq!(stdout(&zero).trim(), "0 (per-vertex slope)");

    let one = turan(&["value", "--r", "2", "--pattern", &c4]);
    assert!(one.status.success());
    assert_eq!(stdout(&one).trim(), "1 (per-vertex slope)");

    let triangle = graph6::encode(&Graph::complete(3).unwrap()).unwrap();
    let odd = turan(&["value", "--r", "2", "--pattern", &triangle]);
    assert!(!odd.status.success());
}

#[test]
fn symmetrize_reports_the_committed_climb() {
    let lonely_edge = graph6::encode(&Graph::from_edges(3, &[(0, 1)]).unwrap()).unwrap();
    let out = turan_stdin(&["symmetrize", "--r", "2"], &format!("{lonely_edge}\n"));
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("1 steps, count 1 -> 2, fixed-point"),
        "unexpected trace summary: {text}"
    );
    let final_g6 = text.split_whitespace().nth(2).unwrap().trim_end_matches(':');
    let final_graph = graph6::decode(final_g6).unwrap();
    assert_eq!(final_graph.edge_count(), 2);
}

#[test]
fn symmetrize_respects_the_forbidden_family() {
    let g = turan_core::matching_turan_graph(7, 3, 2).unwrap();
    let line = graph6::encode(&g).unwrap();
    let out = turan_stdin(
        &["symmetrize", "--r", "3", "--k", "3", "--s", "2"],
        &format!("{line}\n"),
    );
    assert!(out.status.success());
    assert!(stdout(&out).contains("0 steps, count 5 -> 5, fixed-point"));
}

#[test]
fn crossover_table_covers_the_requested_grid() {
    let out = turan(&["crossover", "--k-max", "3", "--s-max", "2", "--format", "csv"]);
    assert!(out.status.success());
    let table = stdout(&out);
    let mut rdr = csv::Reader::from_reader(table.as_bytes());
    let rows: Vec<_> = rdr.records().map(|r| r.unwrap()).collect();
    // k in {2,3}, r in 2..=k, s in {1,2}: (1 + 2) * 2 rows
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().any(|r| &r[3] == "never"));
    assert!(rows.iter().any(|r| r[3].starts_with("n = ")));
}

#[test]
fn output_flag_writes_the_file_and_keeps_stdout_quiet() {
    let dir = std::env::temp_dir().join(format!("turan-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("value.json");
    let out = turan(&[
        "value", "--n", "7", "--k", "3", "--r", "3", "--s", "2", "--format", "json",
        "--output", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["value"], 5);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn thread_controls_are_accepted() {
    let flagged = turan(&["--threads", "2", "verify", "--suite", "slope", "--s-max", "4"]);
    assert!(flagged.status.success());

    let via_env = Command::new(env!("CARGO_BIN_EXE_turan"))
        .env("TURAN_THREADS", "2")
        .args(["verify", "--suite", "slope", "--s-max", "4"])
        .output()
        .expect("binary runs");
    assert!(via_env.status.success());
}
