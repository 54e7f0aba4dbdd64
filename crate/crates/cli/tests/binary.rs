mod common;

use std::io::Write;

use common::{bin, code, run, stdout};
use thompson::exit;

const G0: &str = "pl[(0,0),(1/2,1/4),(3/4,3/4),(1,1)]";

fn script(lines: &str, extra: &[&str]) -> std::process::Output {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.tl");
    std::fs::write(&path, lines).unwrap();
    let mut args = vec!["--script", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

#[test]
fn worked_examples() {
    let out = script(
        &format!("let g = {G0}\nlet one = const(1)\npi g one | norm\ninner (pi g one) one\n"),
        &[],
    );
    assert_eq!(code(&out), exit::OK);
    assert_eq!(stdout(&out), "1\n(1/4) + (r2/4)*ph + (r2/4)*ph^-1\n");
    let out = run(&["equiv", "--s", "0", "--t", "9.064720284"]);
    assert_eq!((code(&out), stdout(&out).as_str()), (exit::OK, "equivalent (k=1)\n"));
    let out = run(&["equiv", "--s", "0", "--t", "1"]);
    assert_eq!(
        (code(&out), stdout(&out).as_str()),
        (exit::OK, "inequivalent (nearest k=0)\n")
    );
}

#[test]
fn composition_and_inverse() {
    let out = script(
        &format!("let a = {G0}\nlet b = pl[(0,0),(1/4,1/8),(3/8,3/8),(1,1)]\na * b^-1\ncompose a (invert b)\n"),
        &[],
    );
    let text = stdout(&out);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], lines[1]);
}

#[test]
fn exit_code_contract() {
    let cases: &[(&str, i32)] = &[
        ("1 + 1", exit::OK),
        ("pl[(0,0),", exit::PARSE),
        ("let = 3", exit::PARSE),
        ("let pi = 3", exit::PARSE),
        ("\"open", exit::PARSE),
        ("1/0", exit::PARSE),
        ("pl[(0,0),(1/3,1/2),(1,1)]", exit::INVALID),
        ("undefined_name", exit::INVALID),
        ("orbit --p 1/2", exit::INVALID),
        ("quad pl[(0,0),(1/2,1/4),(3/4,3/4),(1,1)] --p 1/2", exit::INVALID),
        ("load \"/nonexistent-dir/x\"", exit::INVALID),
        ("probe-const const(2)", exit::NEGATIVE),
        ("probe-action ind(0,1/2) --a 5/8 --b 3/4", exit::NEGATIVE),
        ("rho0-orbit rot(1/4) --count 4", exit::NEGATIVE),
        ("probe-const ind(1/4,1/2)", exit::OK),
        ("probe-action ind(0,1/2) --a 1/4 --b 3/8", exit::OK),
    ];
    for (line, want) in cases {
        let out = run(&[line]);
        assert_eq!(code(&out), *want, "`{line}`: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn scripts_stop_at_the_first_error() {
    let out = script("1\nprobe-const const(1)\nnope(\n2\n", &[]);
    assert_eq!(code(&out), exit::PARSE);
    assert_eq!(stdout(&out), "1\nconstant\n");
    assert!(String::from_utf8_lossy(&out.stderr).contains("3:"));
    let out = script("probe-const const(1)\n2\n", &[]);
    assert_eq!((code(&out), stdout(&out).as_str()), (exit::NEGATIVE, "constant\n2\n"));
}

#[test]
fn batch_output_is_byte_identical() {
    let src = "\
let f = random --step --pieces 6
let g = random --depth 5
let t = random --circle
pi g f | numeval
rho t f
g * t
probe-const f
";
    let a = script(src, &["--seed", "99"]);
    let b = script(src, &["--seed", "99"]);
    assert_eq!(code(&a), code(&b));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    let c = script(src, &["--seed", "100"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn numeric_output_carries_s() {
    let out = run(&["--s", "2.5", "numeval", "ph"]);
    assert!(stdout(&out).starts_with("{s: 2.5, "));
    let out = run(&["numeval", "ph", "--s", "-1"]);
    assert!(stdout(&out).starts_with("{s: -1.0, "));
}

#[test]
fn embedding_is_noted() {
    let out = run(&[&format!("{G0} * rot(1/2)")]);
    assert_eq!(
        stdout(&out),
        format!("# embedded {G0} into T\ncirc[(0,1/4),(1/4,3/4),(1/2,0)]\n")
    );
}

#[test]
fn json_mode_emits_one_value_per_line() {
    let out = script(&format!("{G0}\n{G0} * rot(1/2)\n[1, true]\n"), &["--json"]);
    let text = stdout(&out);
    let docs: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let kinds: Vec<_> = docs.iter().map(|d| d["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["pl", "note", "circ", "list"]);
}

#[test]
fn stdin_is_read_as_a_script() {
    let mut child = bin()
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"let x = 1/2\nx + 1/4\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!((code(&out), stdout(&out).as_str()), (exit::OK, "3/4\n"));
}
