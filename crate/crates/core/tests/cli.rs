use sl2cremona::cli::run_with;

fn run(args: &[&str]) -> (i32, String) {
    run_with(std::iter::once("sl2cremona").chain(args.iter().copied()))
}

#[test]
fn classify_prints_the_matrix_type() {
    let (code, out) = run(&["classify", "R R S^-1 R"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.to_lowercase().contains("hyperbolic"), "{out}");
}

#[test]
fn bad_word_is_a_usage_error() {
    let (code, _) = run(&["classify", "R Q"]);
    assert_eq!(code, 2);
}

#[test]
fn gram_derive_reports_json() {
    let (code, out) = run(&["--format", "json", "gram-derive", "--case", "j1"]);
    assert!(code == 0 || code == 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn geometric_picard_case_verifies() {
    let (code, out) = run(&["verify", "picard", "--case", "M6-i"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn non_geometric_picard_case_exits_one() {
    let (code, out) = run(&["verify", "picard", "--case", "M4-ii"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("FAIL"), "{out}");
}
