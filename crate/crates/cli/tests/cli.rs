use std::path::PathBuf;
use std::process::{Command, Output};

use braidquot::groebner::{groebner_basis, Ideal};
use braidquot::poly::VariableOrder;
use braidquot::{parse_polynomial, BraidGraph};
use serde_json::Value;

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("specs")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidquot"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut args = args.to_vec();
    args.push("--json");
    let o = run(&args);
    let v = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (o.status.code().unwrap(), v)
}

fn validate(v: &Value) {
    let schema: Value = serde_json::from_str(include_str!("../schema/output.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{v}");
}

fn lines(o: &Output) -> Vec<String> {
    stdout(o).lines().map(str::to_string).collect()
}

#[test]
fn theorem_on_ladder_exits_zero() {
    let ladder = spec("ladder.json");
    let o = run(&[
        "verify",
        "--claim",
        "theorem",
        "--spec",
        ladder.to_str().unwrap(),
        "--k",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let (code, v) = run_json(&[
        "verify",
        "--claim",
        "theorem",
        "--spec",
        ladder.to_str().unwrap(),
        "--k",
        "1",
    ]);
    assert_eq!(code, 0);
    // Reduced form of {x1 - x2, x2*x4 - x1*x5, x4 - x5}.
    assert_eq!(v["lhs_basis"], serde_json::json!(["x1 - x2", "x4 - x5"]));
    validate(&v);
}

#[test]
fn failing_check_exits_one() {
    let one = spec("one_crossing.json");
    // A variable is a nonzerodivisor on the quotient by a prime binomial; zero is not.
    let args = [
        "verify",
        "--claim",
        "nzd",
        "--spec",
        one.to_str().unwrap(),
        "--by",
        "x0",
    ];
    assert_eq!(run(&args).status.code(), Some(0));
    let args = [
        "verify",
        "--claim",
        "nzd",
        "--spec",
        one.to_str().unwrap(),
        "--by",
        "0",
    ];
    assert_eq!(run(&args).status.code(), Some(1));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let ladder = spec("ladder.json");
    let p = ladder.to_str().unwrap();
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["ideal", "X", "--spec", p]).status.code(), Some(2));
    assert_eq!(
        run(&["ideal", "N", "--spec", "/nonexistent.json"])
            .status
            .code(),
        Some(2)
    );
    let o = run(&["quotient", "--spec", p, "--ideal", "N", "--by", "x1 +* x2"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 1, column"), "{err}");
    assert_eq!(
        run(&["verify", "--claim", "corollary", "--spec", p])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["golden", "--framing", "1,2"]).status.code(), Some(2));
}

#[test]
fn empty_diagram_has_no_nonlocal_generators() {
    let (code, v) = run_json(&["ideal", "N", "--spec", spec("empty.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["generators"], serde_json::json!([]));
    validate(&v);
}

#[test]
fn working_basis_from_flags() {
    let ladder = spec("ladder.json");
    let (code, v) = run_json(&[
        "gb",
        "--spec",
        ladder.to_str().unwrap(),
        "--ideal",
        "N",
        "--nu",
        "--extra",
        "nu*x1 - x1",
    ]);
    assert_eq!(code, 0);
    validate(&v);
    // The hand-computed working basis, reduced.
    let order = VariableOrder::new(["x1", "x0", "x2", "x4", "x5"])
        .unwrap()
        .with_nu()
        .unwrap();
    let working = [
        "nu*x1 - x1",
        "nu*x1 - nu*x2",
        "-nu*x1*x5 + nu*x2*x4",
        "nu*x1*x4 - nu*x1*x5",
        "nu*x2 - x1",
        "nu*x2*x4 - x1*x5",
        "x1^2 - x1*x2",
        "x1^2*x5 - x1*x2*x4",
        "x1*x4 - x1*x5",
    ];
    let gens = working
        .iter()
        .map(|s| parse_polynomial(s, &order).unwrap())
        .collect();
    let expected = groebner_basis(&Ideal::new(&order, gens).unwrap()).to_strings();
    assert_eq!(v["basis"], serde_json::json!(expected));
    assert_eq!(
        v["order"],
        serde_json::json!(["nu", "x1", "x0", "x2", "x4", "x5"])
    );
}

#[test]
fn aliases_are_accepted_in_input() {
    let ladder = spec("ladder.json");
    let p = ladder.to_str().unwrap();
    let a = run(&["quotient", "--spec", p, "--ideal", "N", "--by", "zt2"]);
    let b = run(&["quotient", "--spec", p, "--ideal", "N", "--by", "x1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn printed_polynomials_reparse() {
    for (name, level) in [
        ("ladder.json", "1"),
        ("ladder_framed.json", "1"),
        ("open_layered.json", "0"),
    ] {
        let path = spec(name);
        let graph = BraidGraph::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let ring = graph.edge_ring(level.parse().unwrap()).unwrap();
        for kind in ["F", "L", "Q", "N"] {
            let o = run(&[
                "ideal",
                kind,
                "--spec",
                path.to_str().unwrap(),
                "--level",
                level,
            ]);
            assert_eq!(o.status.code(), Some(0));
            let out = lines(&o);
            let names: Vec<&str> = out[0].trim_start_matches("order: ").split(" > ").collect();
            let order = VariableOrder::new(names.iter().copied()).unwrap();
            for line in &out[1..] {
                let p = parse_polynomial(line, &order).unwrap();
                assert_eq!(&p.to_string(), line);
            }
        }
        let o = run(&[
            "gb",
            "--spec",
            path.to_str().unwrap(),
            "--ideal",
            "N",
            "--level",
            level,
        ]);
        let out = lines(&o);
        let order = ring.order();
        let reparsed: Vec<String> = out[1..]
            .iter()
            .map(|l| parse_polynomial(l, order).unwrap().to_string())
            .collect();
        assert_eq!(reparsed, out[1..]);
        assert_eq!(
            reparsed,
            groebner_basis(&ring.nonlocal_ideal()).to_strings()
        );
    }
}

#[test]
fn json_and_text_agree_on_verdict() {
    let ladder = spec("ladder.json");
    let framed = spec("ladder_framed.json");
    let one = spec("one_crossing.json");
    let cases: Vec<Vec<&str>> = vec![
        vec![
            "verify",
            "--claim",
            "theorem",
            "--spec",
            ladder.to_str().unwrap(),
        ],
        vec![
            "verify",
            "--claim",
            "theorem",
            "--spec",
            framed.to_str().unwrap(),
        ],
        vec![
            "verify",
            "--claim",
            "open-qn",
            "--spec",
            one.to_str().unwrap(),
        ],
        vec![
            "verify",
            "--claim",
            "corollary",
            "--spec",
            one.to_str().unwrap(),
        ],
        vec![
            "verify",
            "--claim",
            "nzd",
            "--spec",
            one.to_str().unwrap(),
            "--by",
            "x0*x2 - x1*x3",
        ],
        vec!["golden"],
        vec!["golden", "--framing=1,0,-1,2,0,1"],
    ];
    for args in cases {
        let text = run(&args);
        let (code, v) = run_json(&args);
        validate(&v);
        assert_eq!(text.status.code(), Some(code), "{args:?}");
        assert_eq!(v["passed"].as_bool(), Some(code == 0), "{args:?}");
        assert!(stdout(&text).starts_with(if code == 0 { "PASS" } else { "FAIL" }));
    }
}

#[test]
fn graph_and_intersection_outputs_validate() {
    let ladder = spec("ladder.json");
    let p = ladder.to_str().unwrap();
    let (code, v) = run_json(&["graph", "--spec", p]);
    assert_eq!(code, 0);
    validate(&v);
    assert_eq!(v["aliases"]["zt2"], "x1");
    let (code, v) = run_json(&["intersect", "--vars", "a,b", "--gen", "a", "--with", "b"]);
    assert_eq!(code, 0);
    validate(&v);
    assert_eq!(v["basis"], serde_json::json!(["a*b"]));
    let (code, v) = run_json(&[
        "quotient", "--vars", "a,b", "--gen", "a*b", "--gen", "a^2", "--by", "a",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["basis"], serde_json::json!(["a", "b"]));
}

#[test]
fn corpus_sweep_summary_validates() {
    let (code, v) = run_json(&["verify", "--claim", "open-qn", "--corpus", "--seed", "7"]);
    assert_eq!(code, 0);
    validate(&v);
    assert_eq!(v["total"], 828);
    assert_eq!(v["passed_all"], true);
}
