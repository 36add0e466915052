use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gw-euler"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    json_of(&out)
}

fn exit_code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exited normally")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

const QUADRIC: &str = r#"{"type":"quadric_surface","a":["1","2","3","5"]}"#;

#[test]
fn quadric_surface_example() {
    let doc = ok(&["chi", "--spec", QUADRIC]);
    assert_eq!(doc["rank"], 4);
    assert_eq!(
        doc["witt"]["anisotropic"]["diag"],
        serde_json::json!(["2", "-15"])
    );
    assert_eq!(doc["witt"]["hyperbolic_count"], 1);
    // ⟨2, −15⟩ and ⟨2, −60⟩ agree in W(ℚ)
    let same = ok(&[
        "gw-op",
        "witt-equal",
        &doc["witt"].to_string(),
        r#"{"diag":["2","-60"]}"#,
    ]);
    assert_eq!(same["equal"], true);
    assert!(doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}

#[test]
fn hodge_example() {
    let doc = ok(&["hodge", "--hypersurface", "2", "4"]);
    assert_eq!(doc["diamond"]["h"][1][1], 20);
    assert_eq!(doc["euler_rank"], 24);
    assert_eq!(doc["chi_top"], "24");
}

#[test]
fn isometric_example_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let q1 = write(dir.path(), "q1.json", r#"{"diag": ["1", "-1"]}"#);
    let q2 = write(dir.path(), "q2.json", r#"{"diag": ["2", "-2"]}"#);
    let doc = ok(&["form-isometric", &q1, &q2]);
    assert_eq!(doc, serde_json::json!({ "isometric": true }));
    let doc = ok(&[
        "form-isometric",
        r#"{"diag":["1","1"]}"#,
        r#"{"diag":["3","3"]}"#,
    ]);
    assert_eq!(doc["isometric"], false);
}

#[test]
fn output_is_deterministic() {
    let cases: [&[&str]; 5] = [
        &["chi", "--spec", QUADRIC],
        &["trace", "[1,-3,0,1]"],
        &["hodge", "--hypersurface", "3", "5"],
        &["form-invariants", r#"{"gram":[["1","2"],["2","7"]]}"#],
        &["gw-op", "lambda2", r#"{"diag":["1","2","3"]}"#],
    ];
    for args in cases {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn keys_are_sorted() {
    let out = run(&["chi", "--spec", QUADRIC]);
    let text = String::from_utf8(out.stdout).unwrap();
    let top: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim_start().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = top.clone();
    sorted.sort();
    assert_eq!(top, sorted);
}

#[test]
fn form_invariants_round_trip() {
    let doc = ok(&["form-invariants", r#"{"diag":["1/4","-3","6"]}"#]);
    assert_eq!(doc["rank"], 3);
    assert_eq!(doc["signature"], 1);
    let again = ok(&["form-invariants", &doc.to_string()]);
    assert_eq!(again, doc);
}

#[test]
fn gw_op_round_trip() {
    let sum = ok(&[
        "gw-op",
        "sum",
        r#"{"diag":["1","2"]}"#,
        r#"{"plus":{"diag":["3"]},"minus":{"diag":["1"]}}"#,
    ]);
    let again = ok(&["gw-op", "sum", &sum.to_string(), r#"{"diag":[]}"#]);
    assert_eq!(again, sum);
    let equal = ok(&["gw-op", "equal", &sum.to_string(), r#"{"diag":["2","3"]}"#]);
    assert_eq!(equal["equal"], true);
    let witt = ok(&["gw-op", "witt", &sum.to_string()]);
    let back = ok(&["gw-op", "witt", &witt.to_string()]);
    assert_eq!(back, witt);
    let neg = ok(&["gw-op", "neg", &sum.to_string()]);
    let zero = ok(&["gw-op", "sum", &sum.to_string(), &neg.to_string()]);
    assert_eq!(
        ok(&["gw-op", "equal", &zero.to_string(), r#"{"diag":[]}"#])["equal"],
        true
    );
}

#[test]
fn trace_round_trip() {
    let doc = ok(&["trace", r#"{"coeffs":["1","-3","0","1"]}"#]);
    assert_eq!(doc["signature"], 3);
    assert_eq!(doc["real_roots"], 3);
    assert_eq!(
        doc["gram"],
        serde_json::json!([["3", "0", "6"], ["0", "6", "-3"], ["6", "-3", "18"]])
    );
    assert_eq!(ok(&["trace", &doc.to_string()]), doc);

    let twisted = ok(&["trace", "[1,0,1]", "--delta", "[0,1]"]);
    assert_eq!(
        twisted["gram"],
        serde_json::json!([["0", "-2"], ["-2", "0"]])
    );
    assert_eq!(ok(&["trace", &twisted.to_string()]), twisted);
}

#[test]
fn hodge_round_trip() {
    let doc = ok(&[
        "hodge",
        "--spec",
        r#"{"type":"product","left":{"type":"curve","genus":2},"right":{"type":"proj_space","n":1}}"#,
    ]);
    assert_eq!(doc["euler_rank"], -4);
    let again = ok(&["hodge", "--spec", &doc.to_string()]);
    assert_eq!(again, doc);
    let bare = ok(&["hodge", "--spec", &doc["diamond"].to_string()]);
    assert_eq!(bare, doc);
}

#[test]
fn chi_round_trip() {
    for spec in [
        QUADRIC,
        r#"{"type":"blowup_p2","f":{"coeffs":["-2","0","1"]}}"#,
        r#"{"type":"cubic_surface","f":{"coeffs":["0","4","0","-5","0","1"]}}"#,
        r#"{"type":"hypersurface","n":2,"d":4}"#,
        r#"{"type":"curve","genus":3}"#,
    ] {
        let doc = ok(&["chi", "--spec", spec]);
        assert_eq!(ok(&["chi", "--spec", &doc.to_string()]), doc, "{spec}");
    }
}

#[test]
fn json_and_out_paths() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "spec.json", QUADRIC);
    let out_path = dir.path().join("out.json");
    let out_str = out_path.display().to_string();
    let out = run(&["chi", "--json", &spec, "--out", &out_str]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written: Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(written, ok(&["chi", "--spec", QUADRIC]));
    // a path given in place of inline JSON is read as a file
    assert_eq!(ok(&["chi", "--spec", &spec]), written);

    let form = write(dir.path(), "form.json", r#"{"diag":["1","1"]}"#);
    let doc = ok(&["form-invariants", "--json", &form, "--field", "R"]);
    assert_eq!(doc["signature"], 2);
}

#[test]
fn field_flag() {
    let doc = ok(&[
        "form-invariants",
        r#"{"diag":["3","5"]}"#,
        "--field",
        "Fp:7",
    ]);
    assert_eq!(doc["field"], "Fp:7");
    let iso = ok(&[
        "form-isometric",
        r#"{"diag":["1","1"]}"#,
        r#"{"diag":["3","5"]}"#,
        "--field",
        "Fp:7",
    ]);
    assert_eq!(iso["isometric"], true);
    let iso = ok(&[
        "form-isometric",
        r#"{"diag":["5","-3"]}"#,
        r#"{"diag":["1","1"]}"#,
        "--field",
        "Cbar",
    ]);
    assert_eq!(iso["isometric"], true);
}

#[test]
fn invalid_input_exits_2() {
    let fixtures: [&[&str]; 7] = [
        // characteristic 2
        &["form-invariants", r#"{"diag":["1"]}"#, "--field", "Fp:2"],
        // degenerate form
        &["form-invariants", r#"{"gram":[["1","1"],["1","1"]]}"#],
        // non-squarefree polynomial
        &["trace", "[1,2,1]"],
        // zero quadric coefficient
        &[
            "chi",
            "--spec",
            r#"{"type":"quadric_surface","a":["1","0","3","5"]}"#,
        ],
        // malformed JSON
        &["chi", "--spec", "{not json"],
        // not a prime modulus
        &["form-invariants", r#"{"diag":["1"]}"#, "--field", "Fp:9"],
        // unknown subcommand
        &["frobnicate"],
    ];
    for args in fixtures {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
    // library errors carry a JSON document on stderr
    let out = run(&["trace", "[1,2,1]"]);
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["exit_code"], 2);
    assert!(err["error"].as_str().unwrap().contains("squarefree"));
}

#[test]
fn unsupported_exits_3() {
    let args = [
        "chi",
        "--spec",
        r#"{"type":"hypersurface","n":2,"d":4}"#,
        "--require-middle",
    ];
    assert_eq!(exit_code(&args), 3);
    // without the flag the rank is still reported
    let doc = ok(&args[..3]);
    assert_eq!(doc["rank"], 24);
    assert_eq!(doc["gw"], Value::Null);
}

#[test]
fn resource_limit_exits_4() {
    // (2^89 − 1)(2^107 − 1): a composite cofactor beyond the factoring budget
    let n = "100433627766186892221372630609062766858404681029709092356097";
    let form = format!(r#"{{"diag":["{n}"]}}"#);
    let out = run(&["form-invariants", &form]);
    assert_eq!(out.status.code(), Some(4));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["exit_code"], 4);
}

#[test]
fn verify_passes() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["criteria"].as_array().unwrap().len(), 8);
    let table = String::from_utf8(out.stderr).unwrap();
    assert_eq!(table.lines().filter(|l| l.starts_with("[PASS]")).count(), 8);
}
