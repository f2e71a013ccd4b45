use std::process::Command;

fn quadprice(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_quadprice"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("quadprice-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn solve_corpus_revenues() {
    let (code, out, _) = quadprice(&["solve", "--corpus", "cutlery", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["revenue"], "1");
    assert_eq!(v["status"], "found");

    let (code, out, _) = quadprice(&["solve", "--corpus", "cutlery-shifted", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["revenue"], "7");
}

#[test]
fn walrasian_flag() {
    let (code, out, _) = quadprice(&["solve", "--corpus", "cutlery", "--walrasian"]);
    assert_eq!(code, 2);
    assert!(out.contains("no Walrasian equilibrium"));
    let (code, _, _) = quadprice(&["solve", "--corpus", "cutlery-shifted", "--walrasian"]);
    assert_eq!(code, 0);
}

#[test]
fn jobs_do_not_change_the_answer() {
    let one = quadprice(&["solve", "--corpus", "idp-k4", "--json"]);
    let four = quadprice(&["solve", "--corpus", "idp-k4", "--json", "--jobs", "4"]);
    assert_eq!(one.0, 0);
    assert_eq!(one.1, four.1);
}

#[test]
fn solve_at_a_point() {
    let (code, out, _) = quadprice(&[
        "solve",
        "--corpus",
        "cutlery",
        "--point",
        "1,1,1,1,0,0",
        "--json",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("\"revenue\":\"1\""));
    let (code, out, _) = quadprice(&[
        "solve",
        "--corpus",
        "idp-k4",
        "--point",
        "2,2,2,2,1,1,1,1,1,1",
    ]);
    assert_eq!(code, 2);
    assert!(out.contains("infeasible-at-point"));
}

#[test]
fn verify_examples() {
    let (code, out, _) = quadprice(&[
        "verify",
        "--corpus",
        "cutlery",
        "--alloc",
        r#"{"allocation":[[1,2],[3],[]],"price":["0","0","0","1","1","1"]}"#,
        "--pe",
    ]);
    assert_eq!(code, 2);
    assert!(out.contains("CE pass") && out.contains("PE fail"));

    let alloc = temp_file(
        "alloc.json",
        r#"{"allocation":[[1,2,3],[],[]],"price":["3","3","1","0","0","0"]}"#,
    );
    let (code, out, _) = quadprice(&[
        "verify",
        "--corpus",
        "cutlery-shifted",
        "--alloc",
        alloc.to_str().unwrap(),
        "--pe",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("PE pass"));

    let inst = temp_file(
        "zero.json",
        r#"{"n": 2, "agents": [{"vertex_weights": ["1", "2"]}], "supply": [0, 0]}"#,
    );
    let (code, out, _) = quadprice(&[
        "verify",
        inst.to_str().unwrap(),
        "--alloc",
        r#"{"allocation":[[]],"price":["0","0","0"]}"#,
    ]);
    // positive values at zero price: the empty bundle is not demanded
    assert_eq!(code, 2);
    assert!(out.contains("prefers {1,2}"));
    let (code, _, _) = quadprice(&[
        "verify",
        inst.to_str().unwrap(),
        "--alloc",
        r#"{"allocation":[[]],"price":["5","5","0"]}"#,
        "--pe",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn verify_dimension_mismatch_is_an_input_error() {
    let (code, _, err) = quadprice(&[
        "verify",
        "--corpus",
        "cutlery",
        "--alloc",
        r#"{"allocation":[[1],[2],[3]],"price":["0","0","0"]}"#,
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("price"));
}

#[test]
fn corpus_prints_instances() {
    let (code, out, _) = quadprice(&["corpus", "idp-k4"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        v["point"],
        serde_json::json!([2, 2, 2, 2, 1, 1, 1, 1, 1, 1])
    );
    assert_eq!(v["faces"].as_array().unwrap().len(), 4);

    let (code, out, _) = quadprice(&["corpus", "house"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["n"], 5);
    assert_eq!(v["edges"].as_array().unwrap().len(), 6);

    let (code, out, _) = quadprice(&["corpus", "cutlery"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["agents"].as_array().unwrap().len(), 3);
    assert_eq!(v["supply"], serde_json::json!([1, 1, 1]));

    let (code, _, err) = quadprice(&["corpus", "unknown"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown corpus"));
}

#[test]
fn printed_corpus_solves_like_the_builtin() {
    let (_, text, _) = quadprice(&["corpus", "cutlery-shifted"]);
    let path = temp_file("shifted.json", &text);
    let (code, out, _) = quadprice(&["solve", path.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"revenue\":\"7\""));
}

#[test]
fn decompose_reports() {
    let (code, out, _) = quadprice(&["decompose", "--corpus", "house"]);
    assert_eq!(code, 0);
    assert!(out.contains("minkowski sum contains point: true"));
    assert!(out.contains("vertex sum: absent"));
    let (code, out, _) = quadprice(&["decompose", "--corpus", "idp-k4"]);
    assert_eq!(code, 2);
    assert!(out.contains("0 decompositions"));
    let (code, out, _) = quadprice(&[
        "decompose",
        "--corpus",
        "cutlery",
        "--point",
        "1,1,1,1,1,1",
        "--parts",
        "1",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("decomposition: {A,B,C}"));
}

#[test]
fn demand_report() {
    let (code, out, _) = quadprice(&[
        "demand",
        "--corpus",
        "cutlery",
        "--agent",
        "1",
        "--price",
        "0,0,0,1,1,1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out.trim(),
        "agent 1: utility 0 demands {} {A} {B} {A,B} {C}"
    );
}

#[test]
fn parse_errors_name_the_field() {
    let inst = temp_file(
        "bad.json",
        r#"{"n": 2, "agents": [{"vertex_weights": ["1", "oops"]}], "supply": [1, 1]}"#,
    );
    let (code, _, err) = quadprice(&["solve", inst.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("agents[0].vertex_weights[1]"), "{err}");
}

#[test]
fn raised_caps_warn() {
    let (code, _, err) = quadprice(&["solve", "--corpus", "cutlery", "--max-n", "8"]);
    assert_eq!(code, 0);
    assert!(err.contains("warning"));
    let (code, _, err) = quadprice(&["solve", "--corpus", "cutlery", "--max-m", "2"]);
    assert_eq!(code, 1);
    assert!(err.contains("cap"));
}

#[test]
fn covering_mode_from_file() {
    let inst = temp_file(
        "cover.json",
        r#"{
            "n": 3,
            "agents": [
                {"vertex_weights": ["1", "1", "-inf"], "edge_weights": {"1-2": "2", "1-3": "-inf", "2-3": "-inf"}},
                {"vertex_weights": ["-inf", "1", "3"], "edge_weights": {"1-2": "-inf", "1-3": "-inf", "2-3": "1"}}
            ],
            "supply": [1, 1, 1],
            "mode": {"covering": true}
        }"#,
    );
    let (code, out, err) = quadprice(&["solve", inst.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "found");
    assert_eq!(v["point"], serde_json::json!([1, 1, 1, 1, 0, 0]));
}
