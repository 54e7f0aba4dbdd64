mod common;

use common::{fuzz_line, random_value, rng, value_of_kind, KINDS};
use proptest::prelude::*;
use std::panic::{catch_unwind, AssertUnwindSafe};
use thompson::{json, parse_value, run_script, Session, Value};

fn reparse(v: &Value) -> Value {
    let text = v.to_string();
    parse_value(&text).unwrap_or_else(|e| panic!("`{text}` does not parse: {e}"))
}

fn rejson(v: &Value) -> Value {
    let text = json::to_json(v).to_string();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    json::from_json(&doc).unwrap_or_else(|e| panic!("{text}: {e}"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>()) {
        let v = random_value(&mut rng(seed), 2);
        prop_assert_eq!(reparse(&v), v);
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let v = random_value(&mut rng(seed), 2);
        prop_assert_eq!(rejson(&v), v);
    }

    #[test]
    fn printing_is_idempotent(seed in any::<u64>()) {
        let v = random_value(&mut rng(seed), 2);
        let once = v.to_string();
        prop_assert_eq!(reparse(&v).to_string(), once);
    }
}

#[test]
fn every_kind_round_trips() {
    let mut r = rng(77);
    for kind in 0..KINDS {
        for _ in 0..30 {
            let v = value_of_kind(&mut r, kind, 2);
            assert_eq!(reparse(&v), v);
            assert_eq!(rejson(&v), v);
        }
    }
}

#[test]
fn canonical_examples() {
    for text in [
        "pl[(0,0),(1/2,1/4),(3/4,3/4),(1,1)]",
        "circ[(0,1/4),(1/4,3/4),(1/2,0)]",
        "(1/4) + (r2/4)*ph + (r2/4)*ph^-1",
        "step{0:1/2 => 1 + r2*i; 1/2:1 => (1)*ph^-2}",
        "exp{0:1/2 => 1; 1/2:1 => -1}",
        "charf(1/2, 0, 1/3, 1/2, 0)",
        "charr(5)",
        "vec[(1/8, 1, 1/2)]",
        "[1, 2.5, \"hi\", true]",
        "{a: 1, b: [1/2]}",
    ] {
        assert_eq!(parse_value(text).unwrap().to_string(), text);
    }
}

#[test]
fn fuzzed_lines_never_panic() {
    let mut r = rng(4242);
    for _ in 0..10_000 {
        let line = fuzz_line(&mut r);
        let res = catch_unwind(AssertUnwindSafe(|| run_script(&line, &mut Session::new(1, 0.0), false)));
        let report = res.unwrap_or_else(|_| panic!("panicked on `{line}`"));
        assert!((0..=3).contains(&report.code), "`{line}` gave exit {}", report.code);
        assert_eq!(report.code == 0 || report.code == 3, report.stderr.is_empty(), "{line}");
    }
}
