#![allow(dead_code)]

use std::process::{Command, Output};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use thompson::Value;
use thompson_core::reptheory::{rn_derivative, CharacterF, CharacterR, InducedVector, Label};
use thompson_core::sample::{random_coeff, random_element_with, random_step_function, random_t_element, rng_from_seed};
use thompson_core::Dyadic;

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_thompson"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rational<R: Rng>(r: &mut R) -> BigRational {
    BigRational::new(BigInt::from(r.gen_range(-40..=40)), BigInt::from(r.gen_range(1..=24)))
}

fn open_unit_dyadic<R: Rng>(r: &mut R) -> Dyadic {
    let k = r.gen_range(1..=8u32);
    Dyadic::new(r.gen_range(1..(1i64 << k)), k)
}

fn real<R: Rng>(r: &mut R) -> f64 {
    match r.gen_range(0..4) {
        0 => r.gen_range(-10.0..10.0),
        1 => r.gen_range(-4i32..=4) as f64,
        2 => r.gen::<f64>() * 10f64.powi(r.gen_range(-300..300)),
        _ => loop {
            let x = f64::from_bits(r.gen());
            if x.is_finite() {
                break x;
            }
        },
    }
}

const CHARS: &[char] = &['a', 'Z', ' ', '"', '\\', '\n', '\t', '#', '|', '(', 'é', '7', '-'];

fn text<R: Rng>(r: &mut R) -> String {
    (0..r.gen_range(0..12))
        .map(|_| CHARS[r.gen_range(0..CHARS.len())])
        .collect()
}

const KEYS: &[&str] = &["a", "b", "pts", "s", "witness", "x_1", "Count"];

/// A random value of kind `kind` (0..13); lists and records nest up to `depth`.
pub fn value_of_kind<R: Rng>(r: &mut R, kind: usize, depth: u32) -> Value {
    match kind {
        0 => Value::Scalar(random_coeff(r, 3, 4, 20)),
        1 => Value::Real(real(r)),
        2 => Value::F(random_element_with(r, 6).unwrap()),
        3 => Value::T(random_t_element(r, 5).unwrap()),
        4 => Value::Step(random_step_function(r, 6, 8).unwrap()),
        5 => Value::Exp(rn_derivative(&random_element_with(r, 6).unwrap())),
        6 => Value::CharF(Box::new(
            CharacterF::new(open_unit_dyadic(r), std::array::from_fn(|_| rational(r))).unwrap(),
        )),
        7 => Value::CharR(CharacterR { c: r.gen_range(-9..=9) }),
        8 => {
            let mut v = InducedVector::zero();
            for _ in 0..r.gen_range(0..4) {
                let label = if r.gen_bool(0.5) {
                    Label::Point(open_unit_dyadic(r))
                } else {
                    Label::coset(&random_t_element(r, 4).unwrap())
                };
                v.add_term(label, rational(r), rational(r));
            }
            Value::Vector(v)
        }
        9 => Value::Bool(r.gen()),
        10 => Value::Text(text(r)),
        11 => {
            let n = if depth == 0 { 0 } else { r.gen_range(0..4) };
            Value::List((0..n).map(|_| random_value(r, depth - 1)).collect())
        }
        _ => {
            let n = if depth == 0 { 0 } else { r.gen_range(0..4) };
            let mut keys: Vec<&str> = KEYS.to_vec();
            let fields = (0..n)
                .map(|_| {
                    let k = keys.remove(r.gen_range(0..keys.len()));
                    (k.to_string(), random_value(r, depth - 1))
                })
                .collect();
            Value::Record(fields)
        }
    }
}

pub const KINDS: usize = 13;

pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    rng_from_seed(seed)
}

pub fn random_value<R: Rng>(r: &mut R, depth: u32) -> Value {
    let kind = r.gen_range(0..KINDS);
    value_of_kind(r, kind, depth)
}

/// Token soup for grammar fuzzing. String tokens name paths that cannot be
/// created, so `save` and `export` fail instead of writing files.
const VOCAB: &[&str] = &[
    "let",
    "=",
    "|",
    "(",
    ")",
    "[",
    "]",
    "{",
    "}",
    ",",
    ":",
    ";",
    "=>",
    "*",
    "/",
    "+",
    "-",
    "^",
    "^-1",
    ".",
    "pl[",
    "circ[",
    "vec[",
    "step{",
    "exp{",
    "rot(",
    "charf(",
    "charr(",
    "const(",
    "ind(",
    "delta(",
    "id()",
    "0",
    "1",
    "2",
    "1/2",
    "3/8",
    "1/3",
    "-1",
    "4096",
    "99999999999999999999",
    "0.5",
    "1e309",
    "2.5e-3",
    "r2",
    "i",
    "ph",
    "true",
    "false",
    "g",
    "x",
    "\"",
    "\"/nonexistent-dir/f\"",
    "#",
    "--s",
    "--t",
    "--p",
    "--q",
    "--a",
    "--b",
    "--count",
    "--depth",
    "--circle",
    "--step",
    "--fixed",
    "--tol",
    "--",
    "@",
    "$",
    "\\",
    "é",
    "(0,0)",
    "(1,1)",
    "(1/2,1/4)",
    "(0,1/2)",
    "0:1",
    "0:1/2",
    "1/2:1",
];

/// Valid lines that mutation starts from.
const SEEDS: &[&str] = &[
    "pi pl[(0,0),(1/2,1/4),(3/4,3/4),(1,1)] const(1) | norm",
    "inner (pi pl[(0,0),(1/2,1/4),(3/4,3/4),(1,1)] ind(0, 1/2)) const(1)",
    "equiv --s 0 --t 9.064720284 --tol 1e-9",
    "orbit --p 1/2 --q 1/4 --count 8",
    "probe-action step{0:1/2 => 1; 1/2:1 => r2*i} --a 1/4 --b 3/4",
    "probe-const ind(1/4, 1/2)",
    "induce-f charf(1/2, 0, 1/3, 1/2, 0) pl[(0,0),(1/2,1/4),(3/4,3/4),(1,1)] vec[(1/4, 1, 0)]",
    "induce-t charr(2) rot(1/4) vec[(circ[(0,1/2),(1/2,3/4),(3/4,0)], 1, 0)]",
    "embed pl[(0,0),(1/2,1/4),(3/4,3/4),(1,1)] | rho0-orbit --count 4",
    "from-partitions [0, 1/4, 1] [0, 1/2, 1] --fixed 0",
    "numeval ((1/4) + (r2/4)*ph^-1) --s 2.5",
    "let g = rot(3/8) * pl[(0,0),(1/2,1/4),(3/4,3/4),(1,1)]^-2",
    "quad pl[(0,0),(1/4,1/8),(3/8,3/8),(1,1)] --p 1/2",
    "random --step --depth 4 --pieces 3 | probe-const",
    "coset circ[(0,1/2),(1/2,3/4),(3/4,0)]",
    "conj-char charf(5/8, 1/3, 0, 0, 1/2) section(3/8, 5/8) 3/8",
    "rn rot(1/4) * circ[(0,1/2),(1/2,3/4),(3/4,0)]",
    "exp{0:1/2 => 1; 1/2:1 => -1}",
];

/// A valid line with a few tokens deleted, duplicated, or replaced.
fn mutated_line<R: Rng>(r: &mut R) -> String {
    let src = SEEDS[r.gen_range(0..SEEDS.len())];
    let toks = thompson::lexer::tokenize(src).unwrap();
    let mut words: Vec<String> = toks
        .iter()
        .map(|t| {
            let (a, b) = (t.col - 1, src.len());
            let rest = &src[a..b];
            let end = toks
                .iter()
                .find(|u| u.col > t.col)
                .map(|u| u.col - 1 - a)
                .unwrap_or(rest.len());
            rest[..end].to_string()
        })
        .collect();
    for _ in 0..r.gen_range(1..4) {
        let i = r.gen_range(0..words.len());
        match r.gen_range(0..3) {
            0 if words.len() > 1 => {
                words.remove(i);
            }
            1 => {
                let w = words[i].clone();
                words.insert(i, w);
            }
            _ => words[i] = VOCAB[r.gen_range(0..VOCAB.len())].to_string(),
        }
    }
    words.concat()
}

pub fn fuzz_line<R: Rng>(r: &mut R) -> String {
    if r.gen_bool(0.5) {
        return mutated_line(r);
    }
    let mut words: Vec<String> = Vec::new();
    for _ in 0..r.gen_range(1..14) {
        let w = if r.gen_bool(0.3) {
            let names = thompson::commands::command_names();
            names[r.gen_range(0..names.len())].to_string()
        } else {
            VOCAB[r.gen_range(0..VOCAB.len())].to_string()
        };
        words.push(w);
    }
    let sep = if r.gen_bool(0.5) { " " } else { "" };
    words.join(sep)
}
