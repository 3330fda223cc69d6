use std::process::{Command, Output};

fn ringlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringlab"))
        .args(args)
        .env_remove("RINGLAB_CORPUS")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout_json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn construct_writes_ring_files() {
    let dir = tempfile::tempdir().unwrap();
    for (expr, order) in [("M(2,Zn(3))", 81), ("Zn(1)", 1), ("Hst(Zn(4),s=1,t=3)", 64)] {
        let path = dir.path().join("r.json");
        let o = ringlab(&["construct", expr, "--out", path.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(v["order"], order);
        assert!(String::from_utf8_lossy(&o.stdout).contains(&format!("order {order}")));
    }
}

#[test]
fn round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert_eq!(code(&ringlab(&["construct", "K0(Zn(2))", "--out", a.to_str().unwrap()])), 0);
    assert_eq!(code(&ringlab(&["construct", a.to_str().unwrap(), "--out", b.to_str().unwrap()])), 0);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

fn radical(expr: &str, which: &str) -> Vec<u64> {
    let o = ringlab(&["radical", expr, "--which", which]);
    assert_eq!(code(&o), 0);
    stdout_json(&o)["radicals"][0]["elements"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect()
}

#[test]
fn radical_examples() {
    assert_eq!(radical("Zn(4)", "delta"), [0, 2]);
    assert_eq!(radical("M(2,Zn(3))", "delta").len(), 81);
    assert_eq!(radical("Zn(2)", "jacobson"), [0]);
    let o = ringlab(&["radical", "T(2,Zn(2))", "--all-characterizations"]);
    let v = stdout_json(&o);
    assert_eq!(v["agree"], true);
    assert_eq!(v["characterizations"].as_array().unwrap().len(), 6);
}

#[test]
fn check_separates_on_matrix_ring() {
    let o = ringlab(&["check", "M(2,Zn(3))", "--props", "delta-reversible,j-reversible"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["results"]["delta-reversible"]["verdict"], true);
    assert_eq!(v["results"]["j-reversible"]["verdict"], false);
    assert_eq!(v["results"]["j-reversible"]["witness"].as_array().unwrap().len(), 2);
}

#[test]
fn hunt_exit_codes() {
    let o = ringlab(&["hunt", "--implies", "delta-reversible => j-reversible"]);
    assert_eq!(code(&o), 1);
    let ring = stdout_json(&o)["findings"][0]["ring"].as_str().unwrap().to_string();
    assert!(ring == "M(2,Zn(2))" || ring == "M(2,Zn(3))", "{ring}");
    let o = ringlab(&["hunt", "--implies", "reversible => reversible", "--corpus", "small-v1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout_json(&o)["findings"].as_array().unwrap().is_empty());
}

#[test]
fn enumerate_order_four() {
    let o = ringlab(&["enumerate", "--order", "4", "--up-to-iso"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["count"], 4);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["construct", "M(2,"][..],
        &["check", "Zn(4)", "--props", "bogus"],
        &["hunt", "--implies", "reversible"],
        &["suite", "--jobs", "0"],
        &["radical", "Zn(4)", "--which", "nil"],
        &[],
    ] {
        assert_eq!(code(&ringlab(args)), 2, "{args:?}");
    }
}

#[test]
fn suite_is_independent_of_jobs() {
    let one = ringlab(&["suite", "--jobs", "1"]);
    let eight = ringlab(&["suite", "--jobs", "8"]);
    assert_eq!(one.stdout, eight.stdout);
    assert_eq!(code(&one), code(&eight));
    let v = stdout_json(&one);
    assert_eq!(v["corpus"], "default-v1");
    let failing = v["cases"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["kind"] != "observation" && c["verdict"] == "FAIL");
    assert_eq!(code(&one), if failing { 1 } else { 0 });
}

#[test]
fn corpus_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_ringlab"))
        .args(["suite", "--format", "markdown"])
        .env("RINGLAB_CORPUS", "Zn(4); T(2,Zn(2))")
        .output()
        .unwrap();
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("- corpus: Zn(4); T(2,Zn(2))"));
    assert!(text.contains("- corpus_size: 2"));
    assert!(text.contains("| T19-converse |"));
}
