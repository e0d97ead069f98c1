use std::fs;
use std::process::{Command, Output};

fn raagscope(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_raagscope")).args(args).env_remove("RAAGSCOPE_CATALOG").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn classify_exit_codes() {
    assert_eq!(raagscope(&["classify", "builtin:C5"]).status.code(), Some(1));
    assert_eq!(raagscope(&["classify", "builtin:P4"]).status.code(), Some(0));
    assert_eq!(raagscope(&["classify", "builtin:K2,3"]).status.code(), Some(0));
    let out = raagscope(&["classify", "builtin:Gamma2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("HasSurfaceSubgroup"));
}

#[test]
fn budget_exhaustion_is_unknown() {
    let out = raagscope(&["classify", "builtin:P9", "--budget", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).starts_with("Unknown"));
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(raagscope(&["classify", "builtin:nope"]).status.code(), Some(64));
    assert_eq!(raagscope(&["classify", "/nonexistent/graph.g6"]).status.code(), Some(66));
    assert_eq!(raagscope(&["frobnicate"]).status.code(), Some(64));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "vertices: a b\na c\n").unwrap();
    assert_eq!(raagscope(&["classify", bad.to_str().unwrap()]).status.code(), Some(64));
}

#[test]
fn verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (name, other) in [("C5", "C6"), ("C4", "C5"), ("Gamma1", "P1(8)")] {
        let out = raagscope(&["classify", &format!("builtin:{name}"), "--json"]);
        let report = dir.path().join(format!("{name}.json"));
        fs::write(&report, &out.stdout).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["schema"], "raagscope.report/1");
        let ok = raagscope(&["verify", &format!("builtin:{name}"), report.to_str().unwrap()]);
        assert_eq!(ok.status.code(), Some(0), "{name}");
        assert_eq!(stdout(&ok).trim(), "valid");
        let wrong = raagscope(&["verify", &format!("builtin:{other}"), report.to_str().unwrap()]);
        assert_eq!(wrong.status.code(), Some(1), "{name} against {other}");
    }
    let junk = dir.path().join("junk.json");
    fs::write(&junk, "{\"type\": 3}").unwrap();
    assert_eq!(raagscope(&["verify", "builtin:C5", junk.to_str().unwrap()]).status.code(), Some(65));
    assert_eq!(raagscope(&["verify", "builtin:C5", "/nonexistent.json"]).status.code(), Some(66));
}

#[test]
fn batch_graph6() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("batch.g6");
    // C5, P4 (as v1-v2-v3-v4), K3
    fs::write(&file, "Dhc\nCr\nBw\n").unwrap();
    let out = raagscope(&["classify", file.to_str().unwrap()]);
    let text = stdout(&out);
    let verdicts: Vec<&str> = text.lines().map(|l| l.split('\t').nth(1).unwrap().split(':').next().unwrap()).collect();
    assert_eq!(verdicts, ["HasSurfaceSubgroup", "NoSurfaceSubgroup", "NoSurfaceSubgroup"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn ops() {
    let out = raagscope(&["ops", "complement", "builtin:C5", "--to", "graph6"]);
    assert_eq!(out.status.code(), Some(0));
    let co = stdout(&out);
    let g = tempfile::NamedTempFile::new().unwrap();
    fs::write(g.path(), co.trim()).unwrap();
    // the complement of C5 is again a 5-cycle
    assert_eq!(raagscope(&["classify", g.path().to_str().unwrap()]).status.code(), Some(1));

    let out = raagscope(&["ops", "cocontract", "builtin:P4", "--set", "v1,v4"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("$co(v1,v4)"));
    let out = raagscope(&["ops", "cocontract", "builtin:P4", "--set", "v1,v2"]);
    assert_ne!(out.status.code(), Some(0));

    let out = raagscope(&["ops", "separators", "builtin:P4"]);
    assert!(stdout(&out).lines().count() >= 2);
    let out = raagscope(&["ops", "extend", "builtin:K2", "--to", "dot"]);
    assert!(stdout(&out).starts_with("graph"));
}

#[test]
fn words() {
    let sq = "builtin:C4";
    assert_eq!(raagscope(&["word", "trivial", sq, "v1 v2 v1^-1 v2^-1"]).status.code(), Some(0));
    assert_eq!(raagscope(&["word", "trivial", sq, "v1 v3 v1^-1 v3^-1"]).status.code(), Some(1));
    assert_eq!(raagscope(&["word", "equal", sq, "v2 v1", "v1 v2"]).status.code(), Some(0));
    let nf = raagscope(&["word", "nf", sq, "v2 v1 v3 v3^-1"]);
    assert_eq!(stdout(&nf).trim(), "v1 v2");
    let nf = raagscope(&["word", "nf", sq, "v1 v1^-1"]);
    assert_eq!(stdout(&nf).trim(), "(empty)");
    assert_eq!(raagscope(&["word", "trivial", sq, "q"]).status.code(), Some(64));
}

#[test]
fn surface_kernel() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("edge.txt");
    fs::write(&g, "vertices: a b\na b\n").unwrap();
    let hom = dir.path().join("hom.json");
    fs::write(
        &hom,
        r#"{"presentation":{"genus":1,"boundary":1},"images":{"x1":"a","y1":"b","d1":""}}"#,
    )
    .unwrap();
    let out = raagscope(&["surf", "kernel", g.to_str().unwrap(), hom.to_str().unwrap(), "--max-len", "6"]);
    assert_eq!(stdout(&out).trim(), "x1 y1 x1^-1 y1^-1");
    let out = raagscope(&["surf", "check", g.to_str().unwrap(), hom.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn catalog_listing() {
    let out = raagscope(&["catalog", "list"]);
    let text = stdout(&out);
    for name in ["C5", "coC6", "P1(8)", "Gamma1", "Gamma2"] {
        assert!(text.lines().any(|l| l.split('\t').next() == Some(name)), "{name} missing");
    }
    let out = raagscope(&["catalog", "export"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["P1(8)", "Gamma1", "Gamma2"]);
}
