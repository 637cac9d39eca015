use std::process::Command as Process;

use proptest::prelude::*;
use serde_json::{json, Value};

use mixmult_cli::run::difftest_case;
use mixmult_cli::{run, Command, Options, ProblemFile};

const SAMPLE: &str = "p = 32003
vars = [x, y]
gamma = []
J = [\"x\", \"y\"]
I = [[\"x^2\", \"y^3\"]]
base0 = 4
window = 3
seed = 7
";

fn mm(args: &[&str]) -> (Value, i32) {
    let out = Process::new(env!("CARGO_BIN_EXE_mm"))
        .args(args)
        .output()
        .unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap();
    (json, out.status.code().unwrap())
}

fn sample_file() -> tempfile::NamedTempFile {
    let f = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(f.path(), SAMPLE).unwrap();
    f
}

#[test]
fn sample_parses_and_prints_back() {
    let (file, p) = ProblemFile::load(SAMPLE).unwrap();
    assert_eq!(p.s(), 1);
    assert_eq!(p.model().dim().unwrap(), 2);
    assert_eq!(file.print(), SAMPLE);
}

#[test]
fn comments_and_quoted_vars() {
    let text = "# header\nvars = [\"x\", y]  # two\nJ = [\"x\", \"y\"]\nI = [[\"x*y\"], [\"x\"]]\n";
    let f = ProblemFile::parse(text).unwrap();
    assert_eq!(f.vars, vec!["x", "y"]);
    assert_eq!(f.ideals.len(), 2);
    assert_eq!(f.p, 32003);
    assert_eq!(ProblemFile::parse(&f.print()).unwrap(), f);
}

#[test]
fn validation_errors_have_distinct_codes() {
    let code = |t: &str| ProblemFile::load(t).unwrap_err().code;
    assert_eq!(
        code("vars = [x, y]\nJ = [\"x\"]\nI = [[\"x\"]]\n"),
        "J_NOT_M_PRIMARY"
    );
    assert_eq!(
        code("vars = [x, y]\ngamma = [\"x^2\"]\nJ = [\"x\", \"y\"]\nI = [[\"x\"]]\n"),
        "I_NILPOTENT"
    );
    assert_eq!(
        code("vars = [x, y]\nJ = [\"x\", \"y^2 + x\"]\nI = [[\"x\"]]\n"),
        "NOT_HOMOGENEOUS"
    );
    let e = ProblemFile::load("vars = [x, y]\nJ = [\"x\", \"y\"]\nI = [[\"x*\"]]\n").unwrap_err();
    assert_eq!(
        (e.code.as_str(), e.line, e.column),
        ("SYNTAX", Some(3), Some(10))
    );
    let e = ProblemFile::parse("vars = [x, y]\nJ = [\"x\"\n").unwrap_err();
    assert_eq!((e.code.as_str(), e.line), ("SYNTAX", Some(2)));
    assert_eq!(
        ProblemFile::parse("vars = [x]\nvars = [y]\n")
            .unwrap_err()
            .code,
        "SYNTAX"
    );
    assert_eq!(
        ProblemFile::parse("vars = [x]\nI = []\n").unwrap_err().code,
        "INPUT"
    );
}

#[test]
fn mixed_report_on_the_sample() {
    let f = ProblemFile::parse(SAMPLE).unwrap();
    let out = run(Command::Mixed, Some(&f), &Options::default()).unwrap();
    assert_eq!(out.exit, 0);
    assert_eq!(out.json["ell"], json!(2));
    assert_eq!(out.json["e"], json!({ "(1,0)": 1, "(0,1)": 2 }));
}

#[test]
fn binary_verify_and_json_output() {
    let f = sample_file();
    let path = f.path().to_str().unwrap();
    let out = tempfile::NamedTempFile::new().unwrap();
    let (v, code) = mm(&[
        "verify",
        path,
        "--type",
        "0,1",
        "--json",
        out.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["equal"], json!(true));
    assert_eq!(v["e_reduced"], json!(2));
    let written: Value =
        serde_json::from_str(&std::fs::read_to_string(out.path()).unwrap()).unwrap();
    assert_eq!(written, v);
}

#[test]
fn binary_exit_codes() {
    let f = sample_file();
    let path = f.path().to_str().unwrap();
    let (v, code) = mm(&["mixed", path, "--window", "1"]);
    assert_eq!((code, v["error"]["code"].as_str()), (1, Some("INPUT")));
    let (_, code) = mm(&["verify", path, "--all"]);
    assert_eq!(code, 0);
    // I_1 = xy(x, y^2) has no homogeneous general element
    let g = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(
        g.path(),
        "vars = [x, y]\nJ = [\"x^2\", \"y\"]\nI = [[\"x^2*y\", \"x*y^3\"], [\"x*y\", \"x^2\"]]\n",
    )
    .unwrap();
    let (v, code) = mm(&["fc", g.path().to_str().unwrap(), "--type", "0,1,0"]);
    assert_eq!(
        (code, v["error"]["code"].as_str()),
        (3, Some("SEARCH_FAILURE"))
    );
    assert_eq!(v["error"]["detail"]["elements"], json!([]));
    let (v, code) = mm(&["free", "--d", "2", "--t", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["e"], json!({ "(2,0)": 0, "(1,1)": 1, "(0,2)": 0 }));
}

#[test]
fn difftest_is_reproducible() {
    let o = Options {
        count: Some(6),
        seed: Some(17),
        ..Options::default()
    };
    let a = run(Command::Difftest, None, &o).unwrap();
    let b = run(Command::Difftest, None, &o).unwrap();
    assert_eq!(a.json, b.json);
    assert_eq!(a.exit, 0);
    assert_eq!(a.json["mismatches"], json!(0));
    assert_eq!(difftest_case(17, 3), difftest_case(17, 3));
}

#[test]
fn hsm_of_a_plane_curve() {
    let f = ProblemFile::parse(SAMPLE).unwrap();
    let o = Options {
        h: Some(vec!["x^3 - y^3".into()]),
        ..Options::default()
    };
    let out = run(Command::Hsm, Some(&f), &o).unwrap();
    assert_eq!(
        out.json,
        json!({ "dim": 1, "mult": 3, "base": out.json["base"] })
    );
}

fn gen_strategy() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["x", "y", "x^2", "x*y", "y^3 - x^3", "2*x + y"])
        .prop_map(String::from)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_then_parse_is_identity(
        gamma in prop::collection::vec(gen_strategy(), 0..2),
        j in prop::collection::vec(gen_strategy(), 1..3),
        ideals in prop::collection::vec(prop::collection::vec(gen_strategy(), 1..3), 1..3),
        base0 in prop::option::of(1u32..9),
        seed in prop::option::of(any::<u64>()),
    ) {
        let f = ProblemFile {
            p: 32003,
            vars: vec!["x".into(), "y".into()],
            gamma, j, ideals, base0, window: None, seed, retries: Some(3),
        };
        let back = ProblemFile::parse(&f.print()).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.print(), f.print());
    }
}
