use std::path::PathBuf;
use std::process::{Command, Output};

use lexpath::fixtures::{BENCHMARK, DIAMOND, DISCONNECTED, SINGLE_EDGE};
use lexpath::{LexWeight, StateVector};
use serde_json::Value;

fn write_fixture(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn lexpath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lexpath")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn benchmark() -> String {
    write_fixture("benchmark.txt", BENCHMARK).display().to_string()
}

fn diamond() -> String {
    write_fixture("diamond.txt", DIAMOND).display().to_string()
}

fn single() -> String {
    write_fixture("single.txt", SINGLE_EDGE).display().to_string()
}

fn disconnected() -> String {
    write_fixture("disconnected.txt", DISCONNECTED).display().to_string()
}

#[test]
fn earliest_command() {
    let o = lexpath(&["earliest", &benchmark()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("path 1-2-4-6, arcs {1,3,7}, weight 69, vector 10100010"));

    let o = lexpath(&["earliest", &single()]);
    assert!(stdout(&o).contains("weight 1,"));

    let o = lexpath(&["earliest", &disconnected()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("no source-sink path"));
}

#[test]
fn latest_command() {
    let o = lexpath(&["latest", &benchmark()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("path 1-3-5-6, arcs {2,5,8}, weight 73"));
    let o = lexpath(&["latest", &diamond()]);
    assert!(stdout(&o).contains("path 1-3-4, arcs {2,4}, weight 5"));
    assert_eq!(lexpath(&["latest", &disconnected()]).status.code(), Some(3));
}

#[test]
fn xfc_command() {
    let o = lexpath(&["xfc", "--method", "paper", &benchmark()]);
    assert_eq!(stdout(&o), "01001001\ncorrect 10100010\ndiverges yes\n");
    let o = lexpath(&["xfc", "--method", "correct", &benchmark()]);
    assert_eq!(stdout(&o), "10100010\n");
    let o = lexpath(&["xfc", "--method", "paper", &single()]);
    assert_eq!(stdout(&o), "1\ncorrect 1\ndiverges no\n");
    assert_eq!(lexpath(&["xfc", &disconnected()]).status.code(), Some(3));

    let o = lexpath(&["--json", "xfc", "--method", "paper", &benchmark()]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["diverges"], Value::Bool(true));
    assert_eq!(v["result"]["value"]["decimal"], "146");
}

#[test]
fn enum_command() {
    let o = lexpath(&["enum", "-k", "5"]);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 32);
    assert_eq!(&lines[..5], ["00000", "10000", "01000", "11000", "00100"]);
    assert_eq!(lines[16], "00001");
    assert_eq!(stdout(&lexpath(&["enum", "-k", "1"])), "0\n1\n");

    assert_eq!(lexpath(&["enum", "-k", "3", "--annotate", &diamond()]).status.code(), Some(2));
    assert_eq!(lexpath(&["enum", "-k", "0"]).status.code(), Some(2));
    assert_eq!(lexpath(&["enum", "-k", "25"]).status.code(), Some(2));

    let o = lexpath(&["enum", "-k", "4", "--annotate", &diamond()]);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines[4], "0010 4 disconnected");
    assert_eq!(lines[5], "1010 5 connected");
    assert_eq!(lines[12], "0011 12 disconnected");
}

#[test]
fn regions_command() {
    let o = lexpath(&["regions", &diamond()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("before-earliest           5          0            5"));
    assert!(text.contains("disconnected after latest 1"));

    let o = lexpath(&["--json", "regions", &benchmark()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["last_disconnected"]["value"]["decimal"], "252");
    assert_eq!(v["result"]["latest"]["value"]["decimal"], "146");
    assert_eq!(v["result"]["regions"]["before_earliest"]["connected"], 0);

    let o = lexpath(&["--json", "regions", &single()]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["violations"]["disconnected_after_latest"], 0);
    assert_eq!(v["result"]["violations"]["simple_paths_after_latest"], 0);
    assert_eq!(lexpath(&["regions", &disconnected()]).status.code(), Some(3));
}

#[test]
fn reliability_command() {
    let half = write_fixture("diamond-half.txt", "4 4 1 4\n1 2 0.5\n1 3 0.5\n2 4 0.5\n3 4 0.5\n");
    let o = lexpath(&["reliability", half.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("probability 0.437500000000\n"));

    let p9 = write_fixture("single-p9.txt", "2 1 1 2\n1 2 0.9\n");
    assert!(stdout(&lexpath(&["reliability", p9.to_str().unwrap()])).starts_with("probability 0.900000000000\n"));

    let bench_half = BENCHMARK.lines().enumerate().map(|(i, l)| if i == 0 { format!("{l}\n") } else { format!("{l} 0.5\n") }).collect::<String>();
    let b = write_fixture("benchmark-half.txt", &bench_half);
    let full = stdout(&lexpath(&["reliability", b.to_str().unwrap()]));
    let pruned = stdout(&lexpath(&["reliability", "--prune", b.to_str().unwrap()]));
    assert_eq!(full.lines().next(), pruned.lines().next());
    assert!(pruned.contains("vectors pruned 69"));

    let bad = write_fixture("bad-p.txt", "2 1 1 2\n1 2 1.5\n");
    let o = lexpath(&["reliability", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("probability"));
}

#[test]
fn verify_command() {
    let o = lexpath(&["verify", "--cases", "0"]);
    assert_eq!(o.status.code(), Some(0));

    let o = lexpath(&["verify", "--seed", "42", "--cases", "200"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("all mandatory invariants hold"));

    let o = lexpath(&["--json", "verify", "--cases", "0", "--include-fixtures"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let claim = v["result"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "claim-connected-after-latest")
        .unwrap();
    assert_eq!(claim["hits"], 2);
    assert_eq!(claim["mandatory"], false);
    assert!(v["network"].is_null());
}

#[test]
fn input_errors_exit_two() {
    let bad = write_fixture("selfloop.txt", "3 1 1 3\n2 2\n");
    let o = lexpath(&["earliest", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(lexpath(&["earliest", "/nonexistent/net.txt"]).status.code(), Some(2));
    assert_eq!(lexpath(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [vec!["--json", "regions"], vec!["--json", "earliest"], vec!["regions"]] {
        let mut full = args.clone();
        let b = benchmark();
        full.push(&b);
        assert_eq!(lexpath(&full).stdout, lexpath(&full).stdout);
    }
}

#[test]
fn json_values_round_trip() {
    let o = lexpath(&["--json", "earliest", &benchmark()]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "earliest");
    assert_eq!(v["version"], "1");
    assert_eq!(v["network"]["m"], 8);
    let path = &v["result"]["path"];
    let vector: StateVector = path["vector"].as_str().unwrap().parse().unwrap();
    assert_eq!(vector.to_string(), "10100010");
    let weight = LexWeight::parse_decimal(path["weight"]["decimal"].as_str().unwrap()).unwrap();
    assert_eq!(weight, LexWeight::from(69));
    assert_eq!(weight.to_bit_string(8), path["weight"]["binary"].as_str().unwrap());
}
