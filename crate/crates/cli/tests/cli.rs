use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pgroup-lab"))
}

const Z2Z8: &str = r#"{"p":2,"blocks":[{"exp":1,"mult":1},{"exp":3,"mult":1}]}"#;

#[test]
fn info_prints_invariants() {
    let out = bin().args(["info", "--spec", Z2Z8]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("order: 16"));
    assert!(text.contains("ulm invariants: [1, 0, 1]"));
    assert!(text.contains("(agree)"));
}

#[test]
fn spec_can_come_from_a_file() {
    let path = std::env::temp_dir().join("pgroup-lab-spec.json");
    std::fs::write(&path, Z2Z8).unwrap();
    let out = bin()
        .args(["info", "--spec", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("group: Z/2 + Z/8"));
    std::fs::remove_file(path).ok();
}

#[test]
fn invalid_input_exits_2() {
    let out = bin()
        .args(["info", "--spec", r#"{"p":4,"blocks":[{"exp":1,"mult":1}]}"#])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cap_exceeded_exits_3() {
    let out = bin()
        .args([
            "info",
            "--max-group-order",
            "8",
            "--spec",
            r#"{"p":2,"blocks":[{"exp":5,"mult":1}]}"#,
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = bin()
        .args(["endo", "--max-endo-count", "8", "--spec", Z2Z8])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn claim_failures_still_exit_0() {
    let out = bin()
        .args(["verify", "--spec", Z2Z8, "--claims", "C1,C2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("C1   fails"));
    assert!(text.contains("C2   fails"));
}

#[test]
fn unknown_claim_exits_2() {
    let out = bin()
        .args(["verify", "--spec", Z2Z8, "--claims", "C99"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_json_is_byte_identical_across_runs() {
    let dir = std::env::temp_dir();
    let first = dir.join("pgroup-lab-verify-1.json");
    let second = dir.join("pgroup-lab-verify-2.json");
    for path in [&first, &second] {
        let out = bin()
            .args(["verify", "--json", path.to_str().unwrap()])
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    let a = std::fs::read(&first).unwrap();
    let b = std::fs::read(&second).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
    let doc: serde_json::Value = serde_json::from_slice(&a).unwrap();
    let reports = doc.as_array().unwrap();
    assert_eq!(reports.len(), 10);
    for report in reports {
        assert_eq!(report["schema"], "pgroup-lab/claims-v1");
        assert_eq!(report["claims"].as_array().unwrap().len(), 10);
    }
    std::fs::remove_file(first).ok();
    std::fs::remove_file(second).ok();
}

#[test]
fn dot_exports_are_valid_digraphs() {
    let dir = std::env::temp_dir();
    let dot = dir.join("pgroup-lab-ideals.dot");
    let out = bin()
        .args([
            "ideals",
            "--spec",
            r#"{"p":2,"blocks":[{"exp":2,"mult":2}]}"#,
            "--dot",
            dot.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("3 ideals"));
    let dot_text = std::fs::read_to_string(&dot).unwrap();
    assert!(dot_text.starts_with("digraph ideal_lattice {"));
    assert!(dot_text.contains("n0 -> n1"));
    std::fs::remove_file(dot).ok();
}

#[test]
fn ranked_lattice_evaluates_pairs() {
    let out = bin()
        .args([
            "ranked-lattice",
            "((0,2,inf) | aleph1, aleph0)",
            "((1,2,inf) | aleph0)",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("y <= x (ideal order): true"));
    assert!(text.contains("meet: ((1,2,inf) | aleph0)"));
    // The strict model refuses undecidable comparisons.
    let out = bin()
        .args([
            "--cardinal-model",
            "strict",
            "ranked-lattice",
            "((0,inf) | aleph1)",
            "((0,inf) | 2^aleph0)",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
