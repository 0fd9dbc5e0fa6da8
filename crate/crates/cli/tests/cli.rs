use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn leaky(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leaky"))
        .args(args)
        .env_remove("LEAKY_FIXTURES")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn number_examples() {
    let v = json(&leaky(&["number", "-g", "1", "-k", "1", "-x", "7,-3,-1", "-e", "1,0,0"]));
    assert_eq!(v["H"], "51/4");
    assert_eq!(v["covers"], 5);
    assert_eq!(json(&leaky(&["number", "-g", "0", "-k", "1", "-x", "3,-1,-1"]))["H"], "1");
    assert_eq!(json(&leaky(&["number", "-g", "0", "-k", "2", "-x", "1,1,1,1"]))["H"], "0");
}

#[test]
fn negative_leading_entries_parse() {
    let v = json(&leaky(&["number", "-g", "1", "-k", "-1", "-x", "-7,3,1", "-e", "1,0,0"]));
    assert_eq!(v["H"], "51/4");
}

#[test]
fn covers_carry_the_table_columns() {
    let v = json(&leaky(&["covers", "-g", "1", "-k", "1", "-x", "7,-3,-1", "-e", "1,0,0"]));
    let covers = v.as_array().unwrap();
    assert_eq!(covers.len(), 5);
    let mut mults: Vec<&str> = covers.iter().map(|c| c["multiplicity"].as_str().unwrap()).collect();
    mults.sort();
    assert_eq!(mults, vec!["-1/24", "1/2", "175/24", "2", "3"]);
    let auts: u64 = covers.iter().map(|c| c["aut"].as_u64().unwrap()).sum();
    assert_eq!(auts, 1 + 1 + 1 + 2 + 2);
    assert_eq!(json(&leaky(&["covers", "-k", "1", "-x", "3,-1,-1"])).as_array().unwrap().len(), 1);
    assert!(json(&leaky(&["covers", "-k", "2", "-x", "1,1,1,1", "--nonzero"])).as_array().unwrap().is_empty());
}

#[test]
fn chamber_commands() {
    let v = json(&leaky(&["polynomial", "-k", "1", "-x", "6,-1,-1,1,-2", "-e", "1,0,0,0,0"]));
    assert_eq!(v["polynomial"], "3*x1-3");
    assert_eq!(v["degree"], 1);
    let v = json(&leaky(&["wallcross", "-n", "5", "-k", "1", "-e", "1,0,0,0,0", "--subset", "1,2,3"]));
    assert_eq!(v["computed"], "2*(x1+x2+x3-2)");
    assert_eq!(v["formula"], "2*(x1+x2+x3-2)");
    assert_eq!(v["agree"], true);
    let v = json(&leaky(&["walls", "-n", "4", "-k", "1"]));
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert_eq!(v[0]["subset"], serde_json::json!([1, 2]));
    assert_eq!(v[0]["form"], "x1+x2-k");
}

#[test]
fn wallcross_at_given_points() {
    let v = json(&leaky(&[
        "wallcross", "-n", "4", "-k", "0", "--subset", "1,2", "--plus", "3,-2,4,-5", "--minus", "2,-3,5,-4",
    ]));
    assert_eq!(v["computed"], "2*(x1+x2)");
    assert_eq!(v["agree"], true);
}

#[test]
fn classify_examples() {
    assert_eq!(json(&leaky(&["classify", "-k", "2", "-x", "1,1,1,1", "-e", "0,0,0,0"]))["class"], "Zero");
    assert_eq!(json(&leaky(&["classify", "-k", "2", "-x", "1,1,1,1", "-e", "1,0,0,0"]))["class"], "Positive");
    assert_eq!(json(&leaky(&["classify", "-k", "0", "-x", "0,0,0,0"]))["class"], "Zero");
}

#[test]
fn table_format() {
    let out = leaky(&["number", "-g", "1", "-k", "1", "-x", "7,-3,-1", "-e", "1,0,0", "--format", "table"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "H = 51/4\ncovers = 5\n");
}

#[test]
fn exit_codes() {
    assert_eq!(leaky(&["number", "-k", "1", "-x", "7,-3,-1"]).status.code(), Some(2));
    assert_eq!(leaky(&["number", "-k", "1", "-x", "3,-1,-1", "-e", "1,0,0"]).status.code(), Some(2));
    let missing = leaky(&["number", "-g", "1", "-k", "3", "-x", "10,-4"]);
    assert_eq!(missing.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("degrees=[3]"));
    assert_eq!(leaky(&["polynomial", "-k", "1", "-x", "2,-1,-1,2"]).status.code(), Some(6));
    assert_eq!(leaky(&["number", "-k", "1", "-x", "3,-1,-1", "--fixtures", "/nonexistent/f.json"]).status.code(), Some(4));
}

#[test]
fn fixture_file_and_env_fallback() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, r#"[{{"genus":1,"k":3,"degrees":[3],"psi":[0],"value":"-1/24"}}]"#).unwrap();
    let path = file.path().to_str().unwrap();
    let v = json(&leaky(&["number", "-g", "1", "-k", "3", "-x", "10,-4", "--fixtures", path]));
    // (1/12)(d-k)(d-k-1)(d-k+1) - k/24 at d = 10, k = 3
    assert_eq!(v["H"], "223/8");
    let out = Command::new(env!("CARGO_BIN_EXE_leaky"))
        .args(["number", "-g", "1", "-k", "3", "-x", "10,-4"])
        .env("LEAKY_FIXTURES", path)
        .output()
        .unwrap();
    assert_eq!(json(&out)["H"], "223/8");
}

#[test]
fn conflicting_fixture_is_rejected() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, r#"[{{"genus":1,"k":1,"degrees":[1],"psi":[0],"value":"1/24"}}]"#).unwrap();
    let out = leaky(&["number", "-k", "1", "-x", "3,-1,-1", "--fixtures", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn output_is_deterministic() {
    let args = ["covers", "-k", "1", "-x", "9,-2,-1,3,-4,-2", "-e", "1,0,0,0,0,0", "--jobs", "2"];
    assert_eq!(leaky(&args).stdout, leaky(&args).stdout);
}

#[test]
fn selftest_passes() {
    let out = leaky(&["selftest"]);
    let v = json(&out);
    assert!(v.as_array().unwrap().iter().all(|c| c["pass"] == true));
}
