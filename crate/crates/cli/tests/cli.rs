use std::process::Command;

fn gzb(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gzb"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn check_text_and_json() {
    let (code, out, _) = gzb(&["check", "--c", "3", "--d", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("witnesses: {2,3}"), "{out}");
    assert!(out.trim_end().ends_with("verdict: IsomorphicToBrQt"));

    let (code, out, _) = gzb(&["check", "--c", "3", "--d", "2", "--json"]);
    assert_eq!(code, 0);
    let keys = [
        "\"version\"",
        "\"inputs\"",
        "\"square_class_normalization\"",
        "\"local_symbols\"",
        "\"conic_search\"",
        "\"w_check\"",
        "\"verdict\"",
    ];
    let pos: Vec<usize> = keys
        .iter()
        .map(|k| out.find(k).unwrap_or_else(|| panic!("missing {k}")))
        .collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "key order {pos:?}");

    let (code, out, _) = gzb(&["check", "--c", "-1/4", "--d", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: RationalConic"), "{out}");
}

#[test]
fn check_input_errors_exit_two() {
    assert_eq!(gzb(&["check", "--c", "0", "--d", "2"]).0, 2);
    let (code, _, err) = gzb(&["check", "--c", "3x", "--d", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("error"), "{err}");
    assert_eq!(gzb(&["check", "--c", "3"]).0, 2);
    assert_eq!(gzb(&["frobnicate"]).0, 2);
}

#[test]
fn ulm_reports() {
    let (code, out, _) = gzb(&["ulm", "--group", "C1+C3+P", "--verify"]);
    assert_eq!(code, 0);
    assert!(
        out.contains("U(0) = 1  [oracle 1]") && out.contains("U(1) = 0") && out.contains("U(2) = 1"),
        "{out}"
    );
    assert!(out.contains("divisible rank: 1"));
    let (_, out, _) = gzb(&["ulm", "--group", "G1", "--verify"]);
    assert!(out.contains("U(ω) = 1"), "{out}");
    let (code, _, err) = gzb(&["ulm", "--group", "C1+Q"]);
    assert_eq!(code, 2);
    assert!(err.contains('3') || err.contains("position"), "{err}");
}

#[test]
fn inp_reports() {
    let (code, out, _) = gzb(&["inp", "--matrix", "[[0,1],[1,0]]"]);
    assert_eq!(code, 0);
    assert!(out.contains("P-pairs: 1"), "{out}");
    let (_, out, _) = gzb(&["inp", "--matrix", "[[-1,0],[0,-1]]", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["n_rank"], 2);
    assert_eq!(gzb(&["inp", "--matrix", "[[1,1],[0,1]]"]).0, 2);
}

#[test]
fn hilbert_reports() {
    let (code, out, _) = gzb(&["hilbert", "--a", "3", "--b", "2", "--place", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("(3, 2)_3 = -1"), "{out}");
    let (_, out, _) = gzb(&["hilbert", "--a", "-1", "--b", "-1"]);
    assert!(
        out.contains("(-1, -1)_inf = -1") && out.contains("(-1, -1)_2 = -1"),
        "{out}"
    );
    assert!(out.contains("product over listed places: +1"));
    assert_eq!(gzb(&["hilbert", "--a", "3", "--b", "2", "--place", "4"]).0, 2);
}

#[test]
fn selftest_fault_is_detected() {
    let (code, out, _) = gzb(&["selftest", "--criterion", "1", "--inject-fault", "hilbert"]);
    assert_eq!(code, 1);
    assert!(out.contains("criterion  1: FAIL"), "{out}");
    let (code, out, _) = gzb(&["selftest", "--criterion", "10", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["suites"][0]["id"], 10);
}
