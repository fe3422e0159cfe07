use std::io::Write;

use lrspos::decide::{Config, Verdict};
use lrspos_cli::{exit_code, parse_input, run, run_problem, Command, ProblemInput, Report};
use num_bigint::BigInt;
use proptest::prelude::*;
use serde_json::Value;

fn doc(file: &tempfile::NamedTempFile) -> String {
    file.path().to_str().unwrap().to_string()
}

fn write(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn invoke(args: &[&str]) -> lrspos_cli::Outcome {
    let mut v = vec!["lrspos"];
    v.extend_from_slice(args);
    run(v, || Ok(String::new()))
}

const FIB: &str = r#"{"recurrence":["1","1"],"initial":["0","1"]}"#;
const OSC: &str = r#"{"recurrence":["2","-2"],"initial":["0","1"]}"#;
const BIG: &str = r#"{"recurrence":["3","-2"],"initial":["-99","-98"]}"#;

fn json(out: &lrspos_cli::Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn decide_fib() {
    let f = write(FIB);
    let out = invoke(&["decide", &doc(&f)]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(json(&out)["verdict"], "Positive");
}

#[test]
fn decide_osc() {
    let f = write(OSC);
    let out = invoke(&["decide", &doc(&f), "--verify"]);
    assert_eq!(out.code, 1);
    let v = json(&out);
    assert_eq!(v["verdict"], "NotPositive");
    assert_eq!(v["witness"], 5);
    assert_eq!(v["verified"], true);
}

#[test]
fn decide_big_small_budget() {
    let f = write(BIG);
    let out = invoke(&["decide", &doc(&f), "--budget", "10"]);
    assert_eq!(out.code, 1);
    assert_eq!(json(&out)["witness"], 0);
}

#[test]
fn ultimate_big() {
    let f = write(BIG);
    let out = invoke(&["ultimate", &doc(&f), "--format", "text"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("UltimatelyPositive"));
}

#[test]
fn stdin_input() {
    let out = run(["lrspos", "decide", "-"], || Ok(FIB.to_string()));
    assert_eq!(out.code, 0);
    let out = run(["lrspos", "decide"], || Ok(OSC.to_string()));
    assert_eq!(out.code, 1);
}

#[test]
fn input_errors_exit_3() {
    let out = invoke(&["decide", "--frobnicate"]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("Usage"));
    let f = write(r#"{"recurrence":["1","0"],"initial":["1","1"]}"#);
    let out = invoke(&["decide", &doc(&f)]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("zero trailing coefficient"));
    let f = write("{\"recurrence\": [\"1\",");
    let out = invoke(&["decide", &doc(&f)]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("line 1"));
    assert_eq!(invoke(&["decide", "/nonexistent/x.json"]).code, 3);
}

#[test]
fn matrix_form_shifts_witness() {
    // Singular matrix: term 0 is read off directly, the rest follow 2,-2.
    let m = r#"{"matrix":[["0","0","0"],["0","2","-2"],["0","1","0"]],"v":["0","1","0"],"w":["1","0","1"]}"#;
    let out = run(["lrspos", "decide"], || Ok(m.to_string()));
    let v = json(&out);
    let p = parse_input(m).unwrap();
    let (s, conv) = lrspos_cli::to_lrs(&p).unwrap();
    let lrspos_cli::Conversion::Matrix { offset, prefix } = conv else { panic!() };
    let w = v["witness"].as_u64().expect("witness");
    let term = |n: u64| -> BigInt {
        if (n as usize) < offset {
            prefix[n as usize].clone()
        } else {
            s.term_at(n - offset as u64)
        }
    };
    assert!(term(w) < BigInt::from(0));
    assert!((0..w).all(|n| term(n) >= BigInt::from(0)));
    assert_eq!(out.code, 1);
}

#[test]
fn golden_exit_codes() {
    let cfg = Config::default();
    let cases = [
        (FIB, Command::Decide, 0),
        (OSC, Command::Decide, 1),
        (BIG, Command::Decide, 1),
        (BIG, Command::Ultimate, 0),
        (OSC, Command::Ultimate, 1),
        (r#"{"recurrence":["3/2"],"initial":["1"]}"#, Command::Decide, 0),
        (r#"{"recurrence":["-1/2"],"initial":["1"]}"#, Command::Ultimate, 1),
    ];
    for (text, cmd, code) in cases {
        let r = run_problem(parse_input(text).unwrap(), cmd, &cfg, true).unwrap();
        assert_eq!(r.exit_code(), code, "{text} {:?}", r.verdict);
        assert_eq!(r.verified, Some(true), "{text}");
    }
}

#[test]
fn exit_codes_by_verdict() {
    assert_eq!(exit_code(Verdict::Positive), 0);
    assert_eq!(exit_code(Verdict::UltimatelyPositive), 0);
    assert_eq!(exit_code(Verdict::NotPositive), 1);
    assert_eq!(exit_code(Verdict::NotUltimatelyPositive), 1);
    assert_eq!(exit_code(Verdict::PositiveConditional), 2);
    assert_eq!(exit_code(Verdict::Unknown), 2);
}

fn big_int() -> impl Strategy<Value = BigInt> {
    prop::collection::vec(any::<u32>(), 1..6).prop_flat_map(|d| {
        any::<bool>().prop_map(move |neg| {
            let n = BigInt::from_slice(num_bigint::Sign::Plus, &d);
            if neg {
                -n
            } else {
                n
            }
        })
    })
}

fn small_lrs() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (1usize..4).prop_flat_map(|k| {
        (
            prop::collection::vec(-4i64..=4, k).prop_map(|mut b| {
                if *b.last().unwrap() == 0 {
                    *b.last_mut().unwrap() = 1;
                }
                b
            }),
            prop::collection::vec(-6i64..=6, k),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn report_round_trip((b, u) in small_lrs(), ult in any::<bool>()) {
        let input = ProblemInput::Recurrence {
            recurrence: b.into_iter().map(BigInt::from).collect(),
            initial: u.into_iter().map(BigInt::from).collect(),
        };
        let cfg = Config { budget: 2000, ..Config::default() };
        let cmd = if ult { Command::Ultimate } else { Command::Decide };
        // Repeated roots are rejected; those inputs are not reports.
        if let Ok(r) = run_problem(input, cmd, &cfg, false) {
            let s = r.to_json();
            let back = Report::from_json(&s).unwrap();
            prop_assert_eq!(back.to_json(), s);
        }
    }

    #[test]
    fn integers_exact(xs in prop::collection::vec(big_int(), 1..5)) {
        let mut ys = xs.clone();
        ys.reverse();
        if ys[ys.len() - 1] == BigInt::from(0) {
            let n = ys.len();
            ys[n - 1] = BigInt::from(1);
        }
        let input = ProblemInput::Recurrence { recurrence: ys.clone(), initial: xs.clone() };
        let text = serde_json::to_string(&input).unwrap();
        prop_assert_eq!(parse_input(&text).unwrap(), input);
    }
}
