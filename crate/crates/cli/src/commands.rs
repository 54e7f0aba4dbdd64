//! The command table.

use std::collections::BTreeMap;

use thompson_core::exactnum::{decompose_power_sum, rep_scalar};
use thompson_core::plgroup::{from_partitions, gamma_translation, stabilizer_generators};
use thompson_core::reptheory::{self as rt, ActionProbe, ConstancyProbe, Rho0Orbit, DEFAULT_TOLERANCE};
use thompson_core::sample::{random_element_with, random_step_function, random_t_element, rng_from_seed};
use thompson_core::{Dyadic, Side};

use crate::ast::Command;
use crate::error::CliError;
use crate::session::{Outcome, Session};
use crate::value::Value;
use crate::{io, json};

/// Longest list a command will build.
pub const MAX_COUNT: usize = 4096;

const COMMANDS: &[&str] = &[
    "compose",
    "invert",
    "eval",
    "rn",
    "pi",
    "rho",
    "inner",
    "norm",
    "numeval",
    "project",
    "mul",
    "quad",
    "char-eval",
    "induce-f",
    "induce-t",
    "section",
    "orbit",
    "probe-const",
    "probe-action",
    "equiv",
    "save",
    "load",
    "export",
    "import",
    "translate",
    "fixes",
    "supported",
    "slope",
    "decompose",
    "rep-scalar",
    "is-constant",
    "transport",
    "random",
    "embed",
    "is-rotation",
    "coset",
    "conj-char",
    "invariance",
    "rho0-orbit",
    "from-partitions",
    "matrix-coeff",
    "stabilizers",
    "show",
];

pub fn is_command(name: &str) -> bool {
    COMMANDS.contains(&name)
}

pub fn command_names() -> &'static [&'static str] {
    COMMANDS
}

struct Args {
    name: String,
    pos: Vec<Value>,
    flags: BTreeMap<String, Option<Value>>,
}

impl Args {
    fn bad(&self, msg: impl std::fmt::Display) -> CliError {
        CliError::invalid(format!("{}: {msg}", self.name))
    }

    /// Checks positional count and that only `allowed` flags appear.
    fn shape(&self, min: usize, max: usize, allowed: &[&str]) -> Result<(), CliError> {
        if self.pos.len() < min || self.pos.len() > max {
            let want = if min == max {
                format!("{min}")
            } else {
                format!("{min} to {max}")
            };
            return Err(self.bad(format!("expected {want} argument(s), got {}", self.pos.len())));
        }
        if let Some(f) = self.flags.keys().find(|f| !allowed.contains(&f.as_str())) {
            return Err(self.bad(format!("unknown flag --{f}")));
        }
        Ok(())
    }

    fn at(&self, i: usize) -> &Value {
        &self.pos[i]
    }

    fn flag(&self, name: &str) -> Result<Option<&Value>, CliError> {
        match self.flags.get(name) {
            None => Ok(None),
            Some(Some(v)) => Ok(Some(v)),
            Some(None) => Err(self.bad(format!("--{name} needs a value"))),
        }
    }

    fn switch(&self, name: &str) -> Result<bool, CliError> {
        match self.flags.get(name) {
            None => Ok(false),
            Some(None) => Ok(true),
            Some(Some(_)) => Err(self.bad(format!("--{name} takes no value"))),
        }
    }

    fn required(&self, name: &str) -> Result<&Value, CliError> {
        self.flag(name)?.ok_or_else(|| self.bad(format!("missing --{name}")))
    }

    /// Positional argument `i`, or the flag `name` when it is absent.
    fn pos_or_flag(&self, i: usize, name: &str) -> Result<&Value, CliError> {
        match (self.pos.get(i), self.flag(name)?) {
            (Some(_), Some(_)) => Err(self.bad(format!("{name} given twice"))),
            (Some(v), None) | (None, Some(v)) => Ok(v),
            (None, None) => Err(self.bad(format!("missing {name}"))),
        }
    }
}

fn record(fields: Vec<(&str, Value)>) -> Value {
    Value::Record(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

fn dyadics(xs: &[Dyadic]) -> Value {
    Value::List(xs.iter().map(Value::from_dyadic).collect())
}

fn complex_fields(z: num_complex::Complex64) -> [(&'static str, Value); 2] {
    [("re", Value::Real(z.re)), ("im", Value::Real(z.im))]
}

/// Runs `cmd`, with `piped` (from `|`) as its first argument.
pub(crate) fn run(
    session: &mut Session,
    cmd: &Command,
    piped: Option<Value>,
    out: &mut Outcome,
) -> Result<Value, CliError> {
    let mut pos: Vec<Value> = piped.into_iter().collect();
    for a in &cmd.args {
        pos.push(session.eval(a, out)?);
    }
    let mut flags = BTreeMap::new();
    for (name, e) in &cmd.flags {
        let v = match e {
            Some(e) => Some(session.eval(e, out)?),
            None => None,
        };
        if flags.insert(name.clone(), v).is_some() {
            return Err(CliError::invalid(format!("{}: --{name} given twice", cmd.name)));
        }
    }
    let a = Args {
        name: cmd.name.clone(),
        pos,
        flags,
    };
    dispatch(session, &a, out)
}

fn dispatch(session: &mut Session, a: &Args, out: &mut Outcome) -> Result<Value, CliError> {
    Ok(match a.name.as_str() {
        "show" => {
            a.shape(1, 1, &[])?;
            a.at(0).clone()
        }
        "compose" => {
            a.shape(2, usize::MAX, &[])?;
            let mut acc = a.at(0).clone();
            for next in &a.pos[1..] {
                acc = match (&acc, next) {
                    (Value::F(g), Value::F(h)) => Value::F(g.compose(h)),
                    (Value::F(_) | Value::T(_), Value::F(_) | Value::T(_)) => {
                        for v in [&acc, next] {
                            if let Value::F(g) = v {
                                out.notes.push(format!("embedded {g} into T"));
                            }
                        }
                        Value::T(acc.t()?.compose(&next.t()?))
                    }
                    _ => return Err(a.bad("arguments must be group elements")),
                };
            }
            acc
        }
        "invert" => {
            a.shape(1, 1, &[])?;
            match a.at(0) {
                Value::F(g) => Value::F(g.invert()),
                Value::T(t) => Value::T(t.invert()),
                other => return Err(a.bad(format!("cannot invert {}", other.kind()))),
            }
        }
        "eval" => {
            a.shape(2, 2, &[])?;
            let x = a.at(1).dyadic()?;
            match a.at(0) {
                Value::F(g) => Value::from_dyadic(&g.evaluate(&x)?),
                Value::T(t) => Value::from_dyadic(&t.evaluate(&x)),
                other => return Err(a.bad(format!("cannot evaluate {}", other.kind()))),
            }
        }
        "embed" => {
            a.shape(1, 1, &[])?;
            Value::T(a.at(0).t()?)
        }
        "rn" => {
            a.shape(1, 1, &[])?;
            match a.at(0) {
                Value::F(g) => Value::Exp(rt::rn_derivative(g)),
                other => Value::Exp(rt::rn_derivative_circle(&other.t()?)),
            }
        }
        "pi" => {
            a.shape(2, 2, &[])?;
            Value::Step(rt::apply_pi(&a.at(0).f()?, &a.at(1).step()?))
        }
        "rho" => {
            a.shape(2, 2, &[])?;
            Value::Step(rt::apply_rho(&a.at(0).t()?, &a.at(1).step()?))
        }
        "transport" => {
            a.shape(1, 1, &[])?;
            Value::Step(rt::restriction_transport(&a.at(0).step()?))
        }
        "inner" => {
            a.shape(2, 2, &[])?;
            Value::Scalar(a.at(0).step()?.inner_product(&a.at(1).step()?))
        }
        "norm" => {
            a.shape(1, 1, &[])?;
            Value::Scalar(a.at(0).step()?.norm_sq())
        }
        "matrix-coeff" => {
            a.shape(3, 3, &[])?;
            Value::Scalar(rt::matrix_coefficient(
                &a.at(0).f()?,
                &a.at(1).step()?,
                &a.at(2).step()?,
            ))
        }
        "numeval" => {
            a.shape(1, 1, &["s"])?;
            let s = match a.flag("s")? {
                Some(v) => v.real()?,
                None => session.s,
            };
            match a.at(0) {
                Value::Scalar(c) => {
                    let [re, im] = complex_fields(c.numeric_eval(s));
                    record(vec![("s", Value::Real(s)), re, im])
                }
                Value::Step(f) => {
                    let pieces = f
                        .pieces()
                        .map(|(x, y, c)| {
                            let [re, im] = complex_fields(c.numeric_eval(s));
                            record(vec![
                                ("from", Value::from_dyadic(x)),
                                ("to", Value::from_dyadic(y)),
                                re,
                                im,
                            ])
                        })
                        .collect();
                    record(vec![("s", Value::Real(s)), ("pieces", Value::List(pieces))])
                }
                other => return Err(a.bad(format!("cannot evaluate {} numerically", other.kind()))),
            }
        }
        "project" => {
            a.shape(1, 3, &["a", "b"])?;
            let (lo, hi) = (a.pos_or_flag(1, "a")?.dyadic()?, a.pos_or_flag(2, "b")?.dyadic()?);
            Value::Step(a.at(0).step()?.project(&lo, &hi)?)
        }
        "mul" => {
            a.shape(2, 2, &[])?;
            Value::Step(a.at(1).step()?.pointwise_mul(&a.at(0).step()?))
        }
        "is-constant" => {
            a.shape(1, 1, &[])?;
            Value::Bool(a.at(0).step()?.is_constant())
        }
        "quad" => {
            a.shape(1, 2, &["p"])?;
            let p = a.pos_or_flag(1, "p")?.dyadic()?;
            Value::List(
                a.at(0)
                    .f()?
                    .log_slope_quadruple(&p)?
                    .iter()
                    .map(|k| Value::from_int(*k))
                    .collect(),
            )
        }
        "slope" => {
            a.shape(2, 2, &["left", "right"])?;
            let side = match (a.switch("left")?, a.switch("right")?) {
                (true, true) => return Err(a.bad("give only one of --left and --right")),
                (true, false) => Side::Left,
                _ => Side::Right,
            };
            let x = a.at(1).dyadic()?;
            Value::from_int(match a.at(0) {
                Value::F(g) => g.slope_exponent(&x, side)?,
                other => other.t()?.slope_exponent(&x, side),
            })
        }
        "fixes" => {
            a.shape(2, 2, &[])?;
            let p = a.at(1).dyadic()?;
            Value::Bool(match a.at(0) {
                Value::F(g) => g.fixes(&p),
                other => other.t()?.fixes(&p),
            })
        }
        "supported" => {
            a.shape(1, 3, &["a", "b"])?;
            let (lo, hi) = (a.pos_or_flag(1, "a")?.dyadic()?, a.pos_or_flag(2, "b")?.dyadic()?);
            Value::Bool(a.at(0).f()?.supported_in(&lo, &hi))
        }
        "is-rotation" => {
            a.shape(1, 1, &[])?;
            Value::Bool(a.at(0).t()?.is_rotation())
        }
        "coset" => {
            a.shape(1, 1, &[])?;
            let (repr, h) = a.at(0).t()?.coset_repr();
            record(vec![("repr", Value::T(repr)), ("h", Value::from_dyadic(&h))])
        }
        "translate" => {
            a.shape(0, 3, &["a", "b", "h"])?;
            let (lo, hi, h) = (a.pos_or_flag(0, "a")?, a.pos_or_flag(1, "b")?, a.pos_or_flag(2, "h")?);
            Value::F(gamma_translation(&lo.dyadic()?, &hi.dyadic()?, &h.dyadic()?)?)
        }
        "from-partitions" => {
            a.shape(2, 2, &["fixed"])?;
            let xs = a
                .at(0)
                .list()?
                .iter()
                .map(Value::dyadic)
                .collect::<Result<Vec<_>, _>>()?;
            let ys = a
                .at(1)
                .list()?
                .iter()
                .map(Value::dyadic)
                .collect::<Result<Vec<_>, _>>()?;
            let fixed = a.flag("fixed")?.map(|v| v.count(MAX_COUNT)).transpose()?;
            Value::F(from_partitions(&xs, &ys, fixed)?)
        }
        "section" => {
            a.shape(2, 2, &[])?;
            Value::F(rt::section(&a.at(0).dyadic()?, &a.at(1).dyadic()?)?)
        }
        "stabilizers" => {
            a.shape(1, 1, &[])?;
            Value::List(
                stabilizer_generators(&a.at(0).dyadic()?)?
                    .into_iter()
                    .map(Value::F)
                    .collect(),
            )
        }
        "decompose" => {
            a.shape(2, 2, &[])?;
            let k = a.at(1).count(MAX_COUNT)?;
            Value::List(
                decompose_power_sum(&a.at(0).dyadic()?, k)?
                    .into_iter()
                    .map(Value::from_int)
                    .collect(),
            )
        }
        "rep-scalar" => {
            a.shape(1, 1, &[])?;
            let m = a.at(0).int()?;
            if m.unsigned_abs() > crate::session::MAX_POWER as u64 {
                return Err(a.bad(format!("|m| must be at most {}", crate::session::MAX_POWER)));
            }
            Value::Scalar(rep_scalar(m))
        }
        "char-eval" => {
            a.shape(2, 2, &[])?;
            match a.at(0) {
                Value::CharF(chi) => Value::from_rational(rt::eval_character(chi, &a.at(1).f()?)?),
                Value::CharR(chi) => {
                    let t = a.at(1).t()?;
                    Value::from_rational(chi.angle(&t).ok_or_else(|| a.bad(format!("{t} is not a rotation")))?)
                }
                other => return Err(a.bad(format!("expected a character, got {}", other.kind()))),
            }
        }
        "conj-char" => {
            a.shape(2, 3, &["p"])?;
            let Value::CharF(chi) = a.at(0) else {
                return Err(a.bad("expected a stabilizer character"));
            };
            Value::CharF(Box::new(rt::conjugate_character(
                chi,
                &a.at(1).f()?,
                &a.pos_or_flag(2, "p")?.dyadic()?,
            )?))
        }
        "induce-f" => {
            a.shape(3, 3, &[])?;
            let Value::CharF(chi) = a.at(0) else {
                return Err(a.bad("expected a stabilizer character"));
            };
            Value::Vector(rt::induced_apply_f(chi, &a.at(1).f()?, &vector(a, 2)?)?)
        }
        "induce-t" => {
            a.shape(3, 3, &[])?;
            let Value::CharR(chi) = a.at(0) else {
                return Err(a.bad("expected a rotation character"));
            };
            Value::Vector(rt::induced_apply_t(chi, &a.at(1).t()?, &vector(a, 2)?)?)
        }
        "invariance" => {
            a.shape(2, 3, &["p"])?;
            let (g, f) = (a.at(0).f()?, a.at(1).step()?);
            Value::Bool(rt::invariance_check(&g, &a.pos_or_flag(2, "p")?.dyadic()?, &f)?)
        }
        "orbit" => {
            a.shape(0, 0, &["p", "q", "count"])?;
            let (p, q) = (a.required("p")?.dyadic()?, a.required("q")?.dyadic()?);
            let w = rt::orbit_witness(&p, &q, a.required("count")?.count(MAX_COUNT)?)?;
            record(vec![
                ("generator", Value::F(w.generator)),
                ("points", dyadics(&w.points)),
            ])
        }
        "rho0-orbit" => {
            a.shape(1, 1, &["count"])?;
            let count = a.required("count")?.count(MAX_COUNT)?;
            match rt::rho0_one_orbit(&a.at(0).t()?, count)? {
                Rho0Orbit::Rotation => {
                    out.negative = true;
                    Value::Text("rotation: the element lies in R".into())
                }
                Rho0Orbit::Orbit { angles, functions } => record(vec![
                    ("angles", dyadics(&angles)),
                    (
                        "functions",
                        Value::List(functions.into_iter().map(Value::Step).collect()),
                    ),
                ]),
            }
        }
        "probe-const" => {
            a.shape(1, 1, &[])?;
            match rt::constancy_witness(&a.at(0).step()?)? {
                ConstancyProbe::Constant => {
                    out.negative = true;
                    Value::Text("constant".into())
                }
                ConstancyProbe::Witness { a: lo, b: hi, h } => record(vec![
                    ("a", Value::from_dyadic(&lo)),
                    ("b", Value::from_dyadic(&hi)),
                    ("h", Value::from_dyadic(&h)),
                ]),
            }
        }
        "probe-action" => {
            a.shape(1, 3, &["a", "b"])?;
            let (lo, hi) = (a.pos_or_flag(1, "a")?.dyadic()?, a.pos_or_flag(2, "b")?.dyadic()?);
            match rt::probe_nontrivial_action(&a.at(0).step()?, &lo, &hi)? {
                ActionProbe::Vanishes => {
                    out.negative = true;
                    Value::Text(format!("vanishes on [{lo}, {hi}]"))
                }
                ActionProbe::Witness(g) => record(vec![("witness", Value::F(g))]),
            }
        }
        "equiv" => {
            a.shape(0, 0, &["s", "t", "tol"])?;
            let tol = a
                .flag("tol")?
                .map(Value::real)
                .transpose()?
                .unwrap_or(DEFAULT_TOLERANCE);
            let e = rt::equivalence_check(a.required("s")?.real()?, a.required("t")?.real()?, tol)?;
            Value::Text(if e.equivalent {
                format!("equivalent (k={})", e.k)
            } else {
                format!("inequivalent (nearest k={})", e.k)
            })
        }
        "random" => {
            a.shape(0, 0, &["depth", "circle", "step", "pieces"])?;
            let depth = a.flag("depth")?.map(|v| v.count(64)).transpose()?.unwrap_or(6) as u32;
            let mut rng = rng_from_seed(session.seed.wrapping_add(session.draws));
            session.draws += 1;
            match (a.switch("circle")?, a.switch("step")?) {
                (true, true) => return Err(a.bad("give only one of --circle and --step")),
                (true, false) => Value::T(random_t_element(&mut rng, depth)?),
                (false, true) => {
                    let pieces = a.flag("pieces")?.map(|v| v.count(64)).transpose()?.unwrap_or(8);
                    Value::Step(random_step_function(&mut rng, depth, pieces.max(1))?)
                }
                (false, false) => Value::F(random_element_with(&mut rng, depth)?),
            }
        }
        "save" => {
            a.shape(1, 1, &[])?;
            let path = a.at(0).text()?;
            io::save(session, &path)?;
            Value::Text(format!("saved {} binding(s) to {path}", session.bindings.len()))
        }
        "load" => {
            a.shape(1, 1, &[])?;
            let path = a.at(0).text()?;
            *session = io::load(&path)?;
            Value::Text(format!("loaded {} binding(s) from {path}", session.bindings.len()))
        }
        "export" => {
            a.shape(2, 2, &[])?;
            let path = a.at(1).text()?;
            std::fs::write(&path, json::to_json(a.at(0)).to_string() + "\n")?;
            Value::Text(format!("wrote {path}"))
        }
        "import" => {
            a.shape(1, 1, &[])?;
            let text = std::fs::read_to_string(a.at(0).text()?)?;
            let doc: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| CliError::invalid(format!("import: {e}")))?;
            json::from_json(&doc)?
        }
        other => return Err(CliError::invalid(format!("unknown command `{other}`"))),
    })
}

fn vector(a: &Args, i: usize) -> Result<thompson_core::reptheory::InducedVector, CliError> {
    match a.at(i) {
        Value::Vector(v) => Ok(v.clone()),
        other => Err(a.bad(format!("expected an induced vector, got {}", other.kind()))),
    }
}
