use hlzeta::cli::{run, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hlzeta")
        .chain(args.iter().copied())
        .map(std::ffi::OsString::from);
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn expand_text_and_json() {
    let (code, out, _) = invoke(&["expand", "--l", "0,0"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("B_(1,1)"), "{out}");

    let (code, json, _) = invoke(&["expand", "--l", "1,0", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(
        parsed["terms"].as_array().is_some_and(|t| !t.is_empty()),
        "{json}"
    );
    assert_eq!(
        invoke(&["expand", "--l", "1,0", "--format", "json"]).1,
        json
    );
}

#[test]
fn expand_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let (code, _, _) = invoke(&[
        "expand",
        "--l",
        "0,1",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(hlzeta::expansion::from_json(&written).is_ok());
}

#[test]
fn expand_usage_errors() {
    assert_eq!(invoke(&["expand", "--l", "2"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["expand", "--l", "a,b"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["expand"]).0, EXIT_USAGE);
}

#[test]
fn eval_is_scale_invariant() {
    let base = ["eval", "--l", "0,0", "--a", "1,1", "--z", "1/2,1/3"];
    let (c1, o1, _) = invoke(&[&base[..], &["--eps", "1,1"]].concat());
    let (c2, o2, _) = invoke(&[&base[..], &["--eps", "5/7,5/7"]].concat());
    assert_eq!((c1, c2), (EXIT_OK, EXIT_OK));
    assert_eq!(o1, o2);
    assert!(o1.trim_start().starts_with('3'), "{o1}");
}

#[test]
fn eval_requires_regime_at_z_one() {
    let (code, _, err) = invoke(&[
        "eval", "--l", "0,0", "--a", "1,1", "--z", "1,1/2", "--eps", "1,1",
    ]);
    assert_eq!(code, EXIT_USAGE);
    assert!(!err.is_empty());
    let (code, _, _) = invoke(&[
        "eval", "--l", "0,0", "--a", "1,1", "--z", "1,1/2", "--eps", "1,1", "--regime", "1,g",
    ]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn verify_reports_and_fails_on_corruption() {
    let (code, out, _) = invoke(&["verify"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("13/13 references reproduced"), "{out}");
    let (code, out, _) = invoke(&["verify", "--only", "r3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("4/4"), "{out}");
    assert_eq!(invoke(&["verify", "--corrupt-fixture"]).0, EXIT_FAILURE);
}

#[test]
fn probe_passes_and_rejects_unit_circle() {
    let (code, out, _) = invoke(&["probe", "--l", "0,0", "--a", "1,1", "--z", "1/2,1/3"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert_eq!(
        invoke(&["probe", "--l", "0,0", "--a", "1,1", "--z", "1,1/2"]).0,
        EXIT_USAGE
    );
}

#[test]
fn apostol_modes() {
    let (code, out, _) = invoke(&["apostol", "--n", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "2/(z-1)·a - 2z/(z-1)^2");

    let (code, out, _) = invoke(&["apostol", "--zeta", "2", "--a", "1", "--z", "0.5"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.trim_start().starts_with("12"), "{out}");

    let (code, out, _) = invoke(&["apostol", "--n", "3", "--z", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains('a'), "{out}");
    assert_eq!(
        invoke(&["apostol", "--n", "2", "--a", "1", "--z", "1"]).0,
        EXIT_USAGE
    );
}
