use std::process::{Command, Output};

fn braces(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braces"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn koszul_two_even() {
    let o = braces(&["brace", "koszul", "--n", "2", "--parities", "0,0", "--format", "text"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "∇(a1 a2) - ∇(a1) a2 - ∇(a2) a1\n");
}

#[test]
fn borjeson_three_with_odd_first_argument() {
    let o = braces(&["brace", "borjeson", "--n", "3", "--parities", "1,0,0", "--format", "text"]);
    assert_eq!(code(&o), 0);
    // (-1)^{|a1|} = -1 flips the two a1-leading terms.
    assert_eq!(stdout(&o), "∇(a1 a2 a3) - ∇(a1 a2) a3 + a1 ∇(a2 a3) - a1 ∇(a2) a3\n");
    let even = braces(&["brace", "borjeson", "--n", "3", "--parities", "0,0,0"]);
    assert_eq!(stdout(&even), "∇(a1 a2 a3) - ∇(a1 a2) a3 - a1 ∇(a2 a3) + a1 ∇(a2) a3\n");
}

#[test]
fn series_golden() {
    let o = braces(&["series", "invert", "--preset", "exp-minus-one", "--order", "6", "--convention", "factorial"]);
    assert_eq!((code(&o), stdout(&o)), (0, "1, -1, 2, -6, 24, -120\n".to_string()));
    let o = braces(&["series", "coeffs-c", "--preset", "exp-minus-one", "--r-max", "6"]);
    assert_eq!((code(&o), stdout(&o)), (0, "1, -1, 1, -1, 1, -1, 1\n".to_string()));
    let o = braces(&["series", "invert", "--coeffs", "1,-1/2", "--convention", "plain"]);
    assert_eq!(stdout(&o), "1, 1/2\n");
}

#[test]
fn verification_suites_pass() {
    for args in [
        &["verify", "pullback-koszul", "--n-max", "6"][..],
        &["verify", "pullback-borjeson", "--n-max", "5"],
        &["verify", "c-identity", "--r-max", "12"],
        &["verify", "linf", "--n-max", "4"],
        &["verify", "ainf", "--n-max", "4", "--family", "trivial"],
        &["verify", "series-inverse", "--count", "5"],
        &["verify", "pullback-general", "--n-max", "3", "--count", "3"],
    ] {
        let o = braces(args);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).starts_with("PASS "), "{args:?}");
    }
}

#[test]
fn mutations_fail_with_residual() {
    let o = braces(&["verify", "linf", "--n-max", "5", "--mutate", "phi2-sign"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.starts_with("FAIL linf"));
    assert!(out.contains("residual: "));
    let o = braces(&["verify", "ainf", "--n-max", "5", "--mutate", "b3-drop-last"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("arity 3"));
}

#[test]
fn exit_codes() {
    let usage: &[&[&str]] = &[
        &["brace", "koszul", "--n", "0"],
        &["brace", "koszul", "--n", "2", "--parities", "0"],
        &["brace", "koszul", "--n", "2", "--parities", "0,2"],
        &["brace", "general", "--n", "2"],
        &["brace", "general", "--n", "2", "--coeffs", "1,1/0"],
        &["brace", "nope", "--n", "2"],
        &["verify", "bogus"],
        &["verify", "linf", "--mutate", "q7"],
        &["verify", "linf", "--mutate", "b2-sign"],
        &["verify", "c-identity", "--mutate", "phi2-sign"],
        &["verify", "linf", "--family", "borjeson"],
        &["series", "invert", "--coeffs", "x"],
        &["series", "invert", "--preset", "exp-minus-one", "--coeffs", "1"],
        &["series", "coeffs-c", "--preset", "exp-minus-one", "--order", "3", "--r-max", "6"],
        &["series", "compose", "--preset", "geometric"],
        &[],
    ];
    for args in usage {
        let o = braces(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
    let singular: &[&[&str]] = &[
        &["series", "invert", "--coeffs", "0", "--order", "4"],
        &["series", "coeffs-c", "--coeffs", "0,1"],
        &["brace", "general", "--n", "2", "--coeffs", "0,1"],
    ];
    for args in singular {
        let o = braces(args);
        assert_eq!(code(&o), 1, "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("singular"), "{args:?}");
    }
    assert_eq!(code(&braces(&["--help"])), 0);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["brace", "koszul", "--n", "4", "--parities", "1,0,1,1", "--format", "json"][..],
        &["brace", "general", "--n", "3", "--coeffs", "2,1/3,-5", "--format", "latex"],
        &["verify", "pullback-general", "--n-max", "3", "--count", "2", "--seed", "7"],
    ] {
        let a = braces(args);
        let b = braces(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phi.tex");
    let p = path.to_str().unwrap();
    let o = braces(&["brace", "koszul", "--n", "2", "--format", "latex", "--out", p]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, "\\nabla(a_{1} a_{2}) - \\nabla(a_{1}) a_{2} - \\nabla(a_{2}) a_{1}\n");
    let bad = dir.path().join("missing").join("x.txt");
    let o = braces(&["brace", "koszul", "--n", "1", "--out", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn json_output_parses_back() {
    let o = braces(&["brace", "borjeson", "--n", "4", "--parities", "0,1,1,0", "--format", "json"]);
    let e = braces_cli::render::parse_json(stdout(&o).trim()).unwrap();
    let text = braces(&["brace", "borjeson", "--n", "4", "--parities", "0,1,1,0"]);
    assert_eq!(braces_cli::render::text(&e) + "\n", stdout(&text));
}
