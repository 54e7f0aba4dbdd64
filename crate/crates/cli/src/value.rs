//! Runtime values and their canonical textual forms.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thompson_core::reptheory::{CharacterF, CharacterR, InducedVector};
use thompson_core::{Coeff, Dyadic, ExpStep, FElement, StepFunction, TElement};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(Coeff),
    Real(f64),
    F(FElement),
    T(TElement),
    Step(StepFunction),
    Exp(ExpStep),
    CharF(Box<CharacterF>),
    CharR(CharacterR),
    Vector(InducedVector),
    Bool(bool),
    Text(String),
    List(Vec<Value>),
    Record(Vec<(String, Value)>),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Real(_) => "real",
            Value::F(_) => "F element",
            Value::T(_) => "T element",
            Value::Step(_) => "step function",
            Value::Exp(_) => "exponent step function",
            Value::CharF(_) => "stabilizer character",
            Value::CharR(_) => "rotation character",
            Value::Vector(_) => "induced vector",
            Value::Bool(_) => "boolean",
            Value::Text(_) => "text",
            Value::List(_) => "list",
            Value::Record(_) => "record",
        }
    }

    fn type_error(&self, want: &str) -> CliError {
        CliError::invalid(format!("expected {want}, got {} `{}`", self.kind(), self.short()))
    }

    /// Canonical form truncated for error messages.
    fn short(&self) -> String {
        let s = self.to_string();
        if s.chars().count() > 60 {
            s.chars().take(57).collect::<String>() + "..."
        } else {
            s
        }
    }

    pub fn rational(&self) -> Result<BigRational, CliError> {
        match self {
            Value::Scalar(c) => c.as_rational().ok_or_else(|| self.type_error("a rational number")),
            _ => Err(self.type_error("a rational number")),
        }
    }

    pub fn dyadic(&self) -> Result<Dyadic, CliError> {
        Ok(Dyadic::try_from(&self.rational()?)?)
    }

    pub fn int(&self) -> Result<i64, CliError> {
        let q = self.rational()?;
        if !q.is_integer() {
            return Err(self.type_error("an integer"));
        }
        q.to_integer()
            .to_i64()
            .ok_or_else(|| CliError::invalid(format!("integer {q} is out of range")))
    }

    /// Non-negative integer at most `cap`.
    pub fn count(&self, cap: usize) -> Result<usize, CliError> {
        let n = self.int()?;
        if n < 0 || n as u64 > cap as u64 {
            return Err(CliError::invalid(format!("count {n} must lie in 0..={cap}")));
        }
        Ok(n as usize)
    }

    pub fn real(&self) -> Result<f64, CliError> {
        match self {
            Value::Real(x) => Ok(*x),
            Value::Scalar(_) => {
                let q = self.rational()?;
                q.to_f64()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| self.type_error("a finite real"))
            }
            _ => Err(self.type_error("a real number")),
        }
    }

    pub fn coeff(&self) -> Result<Coeff, CliError> {
        match self {
            Value::Scalar(c) => Ok(c.clone()),
            _ => Err(self.type_error("a coefficient")),
        }
    }

    pub fn f(&self) -> Result<FElement, CliError> {
        match self {
            Value::F(g) => Ok(g.clone()),
            Value::T(t) => t.to_f().ok_or_else(|| self.type_error("an F element")),
            _ => Err(self.type_error("an F element")),
        }
    }

    /// `T` elements, with `F` embedded.
    pub fn t(&self) -> Result<TElement, CliError> {
        match self {
            Value::T(t) => Ok(t.clone()),
            Value::F(g) => Ok(TElement::embed(g)),
            _ => Err(self.type_error("a T element")),
        }
    }

    /// Step functions; scalars read as constants.
    pub fn step(&self) -> Result<StepFunction, CliError> {
        match self {
            Value::Step(f) => Ok(f.clone()),
            Value::Scalar(c) => Ok(StepFunction::constant(c.clone())),
            _ => Err(self.type_error("a step function")),
        }
    }

    pub fn text(&self) -> Result<String, CliError> {
        match self {
            Value::Text(s) => Ok(s.clone()),
            _ => Err(self.type_error("a string")),
        }
    }

    pub fn list(&self) -> Result<&[Value], CliError> {
        match self {
            Value::List(items) => Ok(items),
            _ => Err(self.type_error("a list")),
        }
    }

    pub fn field(&self, name: &str) -> Result<Value, CliError> {
        match self {
            Value::Record(fields) => fields
                .iter()
                .find(|(k, _)| k == name)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| CliError::invalid(format!("record has no field `{name}`"))),
            _ => Err(self.type_error("a record")),
        }
    }

    pub fn from_rational(q: BigRational) -> Value {
        Value::Scalar(Coeff::from_rational(q))
    }

    pub fn from_int(n: i64) -> Value {
        Value::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_dyadic(x: &Dyadic) -> Value {
        Value::Scalar(Coeff::from_dyadic(x))
    }

    /// Text for terminal output: strings print raw, everything else in
    /// canonical form.
    pub fn display(&self) -> String {
        match self {
            Value::Text(s) => s.clone(),
            other => other.to_string(),
        }
    }
}

pub fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn write_joined(f: &mut fmt::Formatter<'_>, items: impl Iterator<Item = String>) -> fmt::Result {
    for (i, s) in items.enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        f.write_str(&s)?;
    }
    Ok(())
}

impl fmt::Display for Value {
    /// The canonical form, which parses back to the same value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(c) => write!(f, "{c}"),
            Value::Real(x) => write!(f, "{x:?}"),
            Value::F(g) => write!(f, "{g}"),
            Value::T(t) => write!(f, "{t}"),
            Value::Step(s) => write!(f, "{s}"),
            Value::Exp(s) => write!(f, "{s}"),
            Value::CharF(c) => write!(f, "{c}"),
            Value::CharR(c) => write!(f, "{c}"),
            Value::Vector(v) => write!(f, "{v}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Text(s) => f.write_str(&quote(s)),
            Value::List(items) => {
                f.write_str("[")?;
                write_joined(f, items.iter().map(Value::to_string))?;
                f.write_str("]")
            }
            Value::Record(fields) => {
                f.write_str("{")?;
                write_joined(f, fields.iter().map(|(k, v)| format!("{k}: {v}")))?;
                f.write_str("}")
            }
        }
    }
}
