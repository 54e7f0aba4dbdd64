//! Bindings, expression evaluation, and statement execution.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thompson_core::reptheory::{CharacterF, CharacterR, InducedVector, Label};
use thompson_core::{Coeff, Dyadic, ExpStep, FElement, StepFunction, TElement};

use crate::ast::{BinOp, Expr, Pipeline, Stage, Stmt};
use crate::commands;
use crate::error::CliError;
use crate::parser::parse_stmt;
use crate::value::Value;

/// Largest `|n|` accepted in `x^n`.
pub const MAX_POWER: i64 = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct Session {
    pub bindings: BTreeMap<String, Value>,
    pub seed: u64,
    /// Default representation parameter for numeric output.
    pub s: f64,
    /// Number of random draws made so far; each draw reseeds from
    /// `seed + draws`, so saved sessions continue the same stream.
    pub draws: u64,
}

/// What one statement produced.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    pub value: Option<Value>,
    /// Informational lines, such as automatic embeddings of `F` into `T`.
    pub notes: Vec<String>,
    /// A probe reported a vanishing, constant, or rotation verdict.
    pub negative: bool,
}

impl Default for Session {
    fn default() -> Self {
        Session::new(0, 0.0)
    }
}

impl Session {
    pub fn new(seed: u64, s: f64) -> Self {
        Session {
            bindings: BTreeMap::new(),
            seed,
            s,
            draws: 0,
        }
    }

    /// Parses and runs one line. `line` is used for error positions.
    pub fn run_line(&mut self, src: &str, line: usize) -> Result<Outcome, CliError> {
        let stmt = parse_stmt(src, line)?;
        let mut out = Outcome::default();
        match stmt {
            Stmt::Empty => {}
            Stmt::Let(name, p) => {
                let v = self.pipeline(&p, &mut out)?;
                self.bindings.insert(name, v);
            }
            Stmt::Run(p) => out.value = Some(self.pipeline(&p, &mut out)?),
        }
        Ok(out)
    }

    pub(crate) fn pipeline(&mut self, p: &Pipeline, out: &mut Outcome) -> Result<Value, CliError> {
        let mut carried: Option<Value> = None;
        for stage in &p.stages {
            carried = Some(match stage {
                Stage::Command(cmd) => commands::run(self, cmd, carried.take(), out)?,
                Stage::Expr(e) => {
                    if carried.is_some() {
                        return Err(CliError::invalid("only commands can receive piped input"));
                    }
                    self.eval(e, out)?
                }
            });
        }
        Ok(carried.expect("pipelines have a stage"))
    }

    pub(crate) fn eval(&mut self, e: &Expr, out: &mut Outcome) -> Result<Value, CliError> {
        Ok(match e {
            Expr::Num(q) => Value::from_rational(q.clone()),
            Expr::Float(x) => Value::Real(*x),
            Expr::Str(s) => Value::Text(s.clone()),
            Expr::Ident(name) => self.lookup(name)?,
            Expr::Call(name, args) => {
                let args = args.iter().map(|a| self.eval(a, out)).collect::<Result<Vec<_>, _>>()?;
                call(name, &args)?
            }
            Expr::Pl(pts) => Value::F(FElement::new(self.points(pts, out)?)?),
            Expr::Circ(pts) => Value::T(TElement::new(self.points(pts, out)?)?),
            Expr::Step(pieces) => {
                let (cuts, vals) = self.pieces(pieces, out)?;
                let vals = vals.iter().map(Value::coeff).collect::<Result<Vec<_>, _>>()?;
                Value::Step(StepFunction::new(cuts, vals)?)
            }
            Expr::Exp(pieces) => {
                let (cuts, vals) = self.pieces(pieces, out)?;
                let vals = vals.iter().map(Value::int).collect::<Result<Vec<_>, _>>()?;
                Value::Exp(ExpStep::new(cuts, vals)?)
            }
            Expr::Vector(terms) => {
                let mut v = InducedVector::zero();
                for (label, amp, angle) in terms {
                    let label = match self.eval(label, out)? {
                        Value::T(t) => Label::coset(&t),
                        other => Label::Point(other.dyadic()?),
                    };
                    v.add_term(
                        label,
                        self.eval(amp, out)?.rational()?,
                        self.eval(angle, out)?.rational()?,
                    );
                }
                Value::Vector(v)
            }
            Expr::List(items) => Value::List(items.iter().map(|i| self.eval(i, out)).collect::<Result<_, _>>()?),
            Expr::Record(fields) => {
                let mut vals: Vec<(String, Value)> = Vec::with_capacity(fields.len());
                for (k, e) in fields {
                    if vals.iter().any(|(j, _)| j == k) {
                        return Err(CliError::invalid(format!("duplicate field `{k}`")));
                    }
                    vals.push((k.clone(), self.eval(e, out)?));
                }
                Value::Record(vals)
            }
            Expr::Neg(inner) => negate(self.eval(inner, out)?)?,
            Expr::Bin(op, a, b) => {
                let (a, b) = (self.eval(a, out)?, self.eval(b, out)?);
                binary(op, a, b, out)?
            }
            Expr::Pow(base, n) => power(self.eval(base, out)?, n)?,
            Expr::Field(inner, name) => self.eval(inner, out)?.field(name)?,
            Expr::Group(p) => self.pipeline(p, out)?,
        })
    }

    fn lookup(&self, name: &str) -> Result<Value, CliError> {
        Ok(match name {
            "r2" => Value::Scalar(Coeff::sqrt2()),
            "i" => Value::Scalar(Coeff::i()),
            "ph" => Value::Scalar(Coeff::phase(1)),
            "true" => Value::Bool(true),
            "false" => Value::Bool(false),
            _ => self
                .bindings
                .get(name)
                .cloned()
                .ok_or_else(|| CliError::invalid(format!("unbound name `{name}`")))?,
        })
    }

    fn points(&mut self, pts: &[(Expr, Expr)], out: &mut Outcome) -> Result<Vec<(Dyadic, Dyadic)>, CliError> {
        pts.iter()
            .map(|(x, y)| Ok((self.eval(x, out)?.dyadic()?, self.eval(y, out)?.dyadic()?)))
            .collect()
    }

    fn pieces(
        &mut self,
        pieces: &[(Expr, Expr, Expr)],
        out: &mut Outcome,
    ) -> Result<(Vec<Dyadic>, Vec<Value>), CliError> {
        let mut cuts = Vec::with_capacity(pieces.len() + 1);
        let mut vals = Vec::with_capacity(pieces.len());
        for (k, (a, b, v)) in pieces.iter().enumerate() {
            let (a, b) = (self.eval(a, out)?.dyadic()?, self.eval(b, out)?.dyadic()?);
            if k == 0 {
                cuts.push(a);
            } else if cuts.last() != Some(&a) {
                return Err(CliError::invalid(format!(
                    "piece starting at {a} does not continue the previous piece"
                )));
            }
            cuts.push(b);
            vals.push(self.eval(v, out)?);
        }
        Ok((cuts, vals))
    }
}

fn arity(name: &str, args: &[Value], n: usize) -> Result<(), CliError> {
    if args.len() != n {
        return Err(CliError::invalid(format!(
            "{name}() takes {n} argument(s), got {}",
            args.len()
        )));
    }
    Ok(())
}

/// Built-in constructor functions, written `name(args)`.
fn call(name: &str, args: &[Value]) -> Result<Value, CliError> {
    Ok(match name {
        "rot" => {
            arity(name, args, 1)?;
            Value::T(TElement::rotation(&args[0].dyadic()?))
        }
        "charf" => {
            arity(name, args, 5)?;
            let angles = [
                args[1].rational()?,
                args[2].rational()?,
                args[3].rational()?,
                args[4].rational()?,
            ];
            Value::CharF(Box::new(CharacterF::new(args[0].dyadic()?, angles)?))
        }
        "charr" => {
            arity(name, args, 1)?;
            Value::CharR(CharacterR { c: args[0].int()? })
        }
        "delta" => {
            arity(name, args, 1)?;
            Value::Vector(InducedVector::basis(match &args[0] {
                Value::T(t) => Label::coset(t),
                other => Label::Point(other.dyadic()?),
            }))
        }
        "const" => {
            arity(name, args, 1)?;
            Value::Step(StepFunction::constant(args[0].coeff()?))
        }
        "ind" => {
            arity(name, args, 2)?;
            Value::Step(StepFunction::indicator(&args[0].dyadic()?, &args[1].dyadic()?)?)
        }
        "id" => {
            arity(name, args, 0)?;
            Value::F(FElement::identity())
        }
        _ => return Err(CliError::invalid(format!("unknown function `{name}`"))),
    })
}

fn negate(v: Value) -> Result<Value, CliError> {
    Ok(match v {
        Value::Scalar(c) => Value::Scalar(-c),
        Value::Real(x) => Value::Real(-x),
        Value::Step(f) => Value::Step(f.scale(&-Coeff::one())),
        Value::Vector(v) => Value::Vector(scale_vector(&v, &BigRational::from_integer((-1).into()))),
        other => return Err(CliError::invalid(format!("cannot negate {}", other.kind()))),
    })
}

fn scale_vector(v: &InducedVector, q: &BigRational) -> InducedVector {
    let mut out = InducedVector::zero();
    for (l, amp, angle) in v.terms() {
        out.add_term(l.clone(), amp * q, angle.clone());
    }
    out
}

fn binary(op: &BinOp, a: Value, b: Value, out: &mut Outcome) -> Result<Value, CliError> {
    use Value::*;
    let mismatch = |a: &Value, b: &Value, sym: &str| {
        CliError::invalid(format!("cannot apply `{sym}` to {} and {}", a.kind(), b.kind()))
    };
    Ok(match op {
        BinOp::Add | BinOp::Sub => {
            let sub = matches!(op, BinOp::Sub);
            match (&a, &b) {
                (Scalar(x), Scalar(y)) => Scalar(if sub { x - y } else { x + y }),
                (Real(x), Real(y)) => Real(if sub { x - y } else { x + y }),
                (Step(_) | Scalar(_), Step(_) | Scalar(_)) => {
                    let (f, g) = (a.step()?, b.step()?);
                    Step(if sub { f.sub(&g) } else { f.add(&g) })
                }
                (Vector(x), Vector(y)) => {
                    let y = if sub {
                        scale_vector(y, &BigRational::from_integer((-1).into()))
                    } else {
                        y.clone()
                    };
                    let mut sum = x.clone();
                    for (l, amp, angle) in y.terms() {
                        sum.add_term(l.clone(), amp.clone(), angle.clone());
                    }
                    Vector(sum)
                }
                _ => return Err(mismatch(&a, &b, if sub { "-" } else { "+" })),
            }
        }
        BinOp::Mul => match (&a, &b) {
            (Scalar(x), Scalar(y)) => Scalar(x * y),
            (Real(x), Real(y)) => Real(x * y),
            (F(g), F(h)) => F(g.compose(h)),
            (T(s), T(t)) => T(s.compose(t)),
            (F(g), T(t)) => {
                out.notes.push(format!("embedded {g} into T"));
                T(TElement::embed(g).compose(t))
            }
            (T(s), F(h)) => {
                out.notes.push(format!("embedded {h} into T"));
                T(s.compose(&TElement::embed(h)))
            }
            (Scalar(c), Step(f)) | (Step(f), Scalar(c)) => Step(f.scale(c)),
            (Step(f), Step(g)) => Step(f.pointwise_mul(g)),
            (Scalar(_), Vector(v)) | (Vector(v), Scalar(_)) => {
                let q = if let Scalar(_) = a {
                    a.rational()?
                } else {
                    b.rational()?
                };
                Vector(scale_vector(v, &q))
            }
            _ => return Err(mismatch(&a, &b, "*")),
        },
        BinOp::Div => {
            let divisor = match &b {
                Scalar(c) => c
                    .inverse()
                    .ok_or_else(|| CliError::invalid(format!("cannot divide by {c}")))?,
                Real(y) => return a.real().map(|x| Real(x / y)),
                _ => return Err(mismatch(&a, &b, "/")),
            };
            match a {
                Scalar(x) => Scalar(&x * &divisor),
                Step(f) => Step(f.scale(&divisor)),
                _ => return Err(mismatch(&a, &b, "/")),
            }
        }
    })
}

fn power(base: Value, n: &BigInt) -> Result<Value, CliError> {
    let k = n
        .to_i64()
        .filter(|k| k.abs() <= MAX_POWER)
        .ok_or_else(|| CliError::invalid(format!("exponent {n} exceeds {MAX_POWER} in absolute value")))?;
    Ok(match base {
        Value::F(g) => Value::F(g.pow(k)),
        Value::T(t) => Value::T(t.pow(k)),
        Value::Scalar(c) => Value::Scalar(
            c.pow(k)
                .ok_or_else(|| CliError::invalid(format!("{c} has no inverse")))?,
        ),
        Value::Real(x) => Value::Real(x.powi(k as i32)),
        other => return Err(CliError::invalid(format!("cannot raise {} to a power", other.kind()))),
    })
}
