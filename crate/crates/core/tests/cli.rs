use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_preproj")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

#[test]
fn restrict_lists_roots() {
    let (code, v) = json(&["restrict", "D5:I=1,3,5"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["restricted_roots"], serde_json::json!(["10", "01", "11", "21", "22"]));
    assert_eq!(v["results"]["primitive"], serde_json::json!(["10", "01", "11", "21"]));
    assert_eq!(v["inputs_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn arrangement_reports_atoms() {
    let (code, v) = json(&["arrangement", "A2:I="]);
    assert_eq!(code, 0);
    let r = &v["results"];
    assert_eq!(r["chamber_count"], 6);
    for a in r["atoms"].as_array().unwrap() {
        assert_eq!(a["atoms"], 6);
        assert_eq!(a["longest"]["length"], 3);
    }
    let dot = String::from_utf8(run(&["arrangement", "A2:I=", "--dot"]).stdout).unwrap();
    assert!(dot.starts_with("graph"));
}

#[test]
fn reports_are_byte_stable() {
    let a = run(&["verify", "heart", "--seed", "7"]);
    let b = run(&["verify", "heart", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 7);
    assert!(v.get("timings").is_none());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["roots", "Q4"]).status.code(), Some(2));
    assert_eq!(run(&["hom", "pi:A2", "/nonexistent.json", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["mutate", "pi:A2", "standard", "--at", "3", "--dir", "L"]).status.code(), Some(3));
    assert_eq!(run(&["verify", "roots"]).status.code(), Some(0));
    // the worked example has known failing checks
    assert_eq!(run(&["verify", "ex-6-13"]).status.code(), Some(1));
}

#[test]
fn module_files_round_trip_through_commands() {
    let dir = std::env::temp_dir().join(format!("preproj-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let e = dir.join("e.json");
    std::fs::write(&e, r#"{"dims": {"1": 1, "2": 1}, "arrows": {"a*": [["1"]]}}"#).unwrap();
    let e = e.to_str().unwrap();

    let (code, v) = json(&["bounds", "pi:A2", e]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["standard"], "[0,0]");

    let (code, v) = json(&["hom", "pi:A2", e, e, "--shift", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["dim"], 1);

    let (code, v) = json(&["complete", "pi:A2", e]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["smc"]["elements"].as_array().unwrap().len(), 2);

    let (code, v) = json(&["mutate", "pi:A2", "standard", "--at", "2", "--dir", "L"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["valid"], true);
    let u = dir.join("u.json");
    std::fs::write(&u, v["results"]["smc"].to_string()).unwrap();
    let (code, v) = json(&["mutate", "pi:A2", u.to_str().unwrap(), "--at", "2", "--dir", "R"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["smc"]["provenance"]["path"], serde_json::json!([[2, "L"], [2, "R"]]));

    let (code, v) = json(&["brick-scan", "pi:A2", "--bound", "1,1", "--field", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["field"], "F_2");
    let _ = std::fs::remove_dir_all(&dir);
}
