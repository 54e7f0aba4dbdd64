//! JSON forms of values.
//!
//! Dyadics are strings `"num/2^k"`, other rationals `"p/q"`, and a
//! coefficient is an array of terms `{"ph": m, "a": …, "b": …, "c": …, "d": …}`
//! for `(a + b·√2 + (c + d·√2)·i)·φ^m`. Every value carries a `"kind"` tag.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value as Json};
use thompson_core::reptheory::{CharacterF, CharacterR, InducedVector, Label};
use thompson_core::{Coeff, Dyadic, ExpStep, FElement, GaussSqrt2, StepFunction, TElement};

use crate::error::CliError;
use crate::value::Value;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::invalid(format!("json: {}", msg.into()))
}

pub fn dyadic_to_json(x: &Dyadic) -> Json {
    Json::String(format!("{}/2^{}", x.numerator(), x.exponent()))
}

pub fn dyadic_from_json(j: &Json) -> Result<Dyadic, CliError> {
    let s = j.as_str().ok_or_else(|| bad("dyadic must be a string"))?;
    let (num, exp) = s
        .split_once("/2^")
        .ok_or_else(|| bad(format!("`{s}` is not of the form num/2^k")))?;
    let num: BigInt = num.parse().map_err(|_| bad(format!("bad numerator in `{s}`")))?;
    let exp: u32 = exp.parse().map_err(|_| bad(format!("bad exponent in `{s}`")))?;
    Ok(Dyadic::new(num, exp))
}

fn rational_to_json(q: &BigRational) -> Json {
    Json::String(format!("{}/{}", q.numer(), q.denom()))
}

fn rational_from_json(j: &Json) -> Result<BigRational, CliError> {
    let s = j.as_str().ok_or_else(|| bad("rational must be a string"))?;
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.parse().map_err(|_| bad(format!("bad rational `{s}`")))?;
    let d: BigInt = d.parse().map_err(|_| bad(format!("bad rational `{s}`")))?;
    if d == BigInt::from(0) {
        return Err(bad(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(n, d))
}

pub fn coeff_to_json(c: &Coeff) -> Json {
    Json::Array(
        c.terms()
            .map(|(m, g)| {
                json!({
                    "ph": m,
                    "a": rational_to_json(g.a()),
                    "b": rational_to_json(g.b()),
                    "c": rational_to_json(g.c()),
                    "d": rational_to_json(g.d()),
                })
            })
            .collect(),
    )
}

pub fn coeff_from_json(j: &Json) -> Result<Coeff, CliError> {
    let terms = j
        .as_array()
        .ok_or_else(|| bad("coefficient must be an array of terms"))?;
    let mut c = Coeff::zero();
    for t in terms {
        let m = t
            .get("ph")
            .and_then(Json::as_i64)
            .ok_or_else(|| bad("term needs an integer `ph`"))?;
        let part = |k: &str| {
            t.get(k)
                .ok_or_else(|| bad(format!("term needs `{k}`")))
                .and_then(rational_from_json)
        };
        let g = GaussSqrt2::new(part("a")?, part("b")?, part("c")?, part("d")?);
        c = &c + &Coeff::monomial(g, m);
    }
    Ok(c)
}

fn points_to_json(pts: &[(Dyadic, Dyadic)]) -> Json {
    Json::Array(
        pts.iter()
            .map(|(x, y)| json!([dyadic_to_json(x), dyadic_to_json(y)]))
            .collect(),
    )
}

fn points_from_json(j: &Json) -> Result<Vec<(Dyadic, Dyadic)>, CliError> {
    let arr = j.as_array().ok_or_else(|| bad("breaks must be an array"))?;
    arr.iter()
        .map(|p| match p.as_array().map(Vec::as_slice) {
            Some([x, y]) => Ok((dyadic_from_json(x)?, dyadic_from_json(y)?)),
            _ => Err(bad("breakpoint must be a pair")),
        })
        .collect()
}

fn label_to_json(l: &Label) -> Json {
    match l {
        Label::Point(x) => json!({ "point": dyadic_to_json(x) }),
        Label::Coset(t) => json!({ "coset": points_to_json(t.breaks()) }),
    }
}

fn label_from_json(j: &Json) -> Result<Label, CliError> {
    if let Some(p) = j.get("point") {
        return Ok(Label::Point(dyadic_from_json(p)?));
    }
    if let Some(c) = j.get("coset") {
        return Ok(Label::coset(&TElement::new(points_from_json(c)?)?));
    }
    Err(bad("label needs `point` or `coset`"))
}

fn get<'a>(j: &'a Json, key: &str) -> Result<&'a Json, CliError> {
    j.get(key).ok_or_else(|| bad(format!("missing `{key}`")))
}

fn array<'a>(j: &'a Json, key: &str) -> Result<&'a Vec<Json>, CliError> {
    get(j, key)?
        .as_array()
        .ok_or_else(|| bad(format!("`{key}` must be an array")))
}

pub fn to_json(v: &Value) -> Json {
    match v {
        Value::Scalar(c) => json!({ "kind": "scalar", "terms": coeff_to_json(c) }),
        Value::Real(x) => json!({ "kind": "real", "value": x }),
        Value::F(g) => json!({ "kind": "pl", "breaks": points_to_json(g.breaks()) }),
        Value::T(t) => json!({ "kind": "circ", "breaks": points_to_json(t.breaks()) }),
        Value::Step(f) => json!({
            "kind": "step",
            "cuts": f.cuts().iter().map(dyadic_to_json).collect::<Vec<_>>(),
            "values": f.values().iter().map(coeff_to_json).collect::<Vec<_>>(),
        }),
        Value::Exp(f) => json!({
            "kind": "exp",
            "cuts": f.cuts().iter().map(dyadic_to_json).collect::<Vec<_>>(),
            "values": f.values(),
        }),
        Value::CharF(c) => json!({
            "kind": "charf",
            "p": dyadic_to_json(c.point()),
            "angles": c.angles().iter().map(rational_to_json).collect::<Vec<_>>(),
        }),
        Value::CharR(c) => json!({ "kind": "charr", "c": c.c }),
        Value::Vector(v) => json!({
            "kind": "vec",
            "terms": v.terms().map(|(l, amp, angle)| json!({
                "label": label_to_json(l),
                "amp": rational_to_json(amp),
                "angle": rational_to_json(angle),
            })).collect::<Vec<_>>(),
        }),
        Value::Bool(b) => json!({ "kind": "bool", "value": b }),
        Value::Text(s) => json!({ "kind": "text", "value": s }),
        Value::List(items) => json!({ "kind": "list", "items": items.iter().map(to_json).collect::<Vec<_>>() }),
        Value::Record(fields) => json!({
            "kind": "record",
            "fields": fields.iter().map(|(k, v)| json!([k, to_json(v)])).collect::<Vec<_>>(),
        }),
    }
}

pub fn from_json(j: &Json) -> Result<Value, CliError> {
    let kind = get(j, "kind")?.as_str().ok_or_else(|| bad("`kind` must be a string"))?;
    Ok(match kind {
        "scalar" => Value::Scalar(coeff_from_json(get(j, "terms")?)?),
        "real" => Value::Real(get(j, "value")?.as_f64().ok_or_else(|| bad("real needs a number"))?),
        "pl" => Value::F(FElement::new(points_from_json(get(j, "breaks")?)?)?),
        "circ" => Value::T(TElement::new(points_from_json(get(j, "breaks")?)?)?),
        "step" => {
            let cuts = array(j, "cuts")?
                .iter()
                .map(dyadic_from_json)
                .collect::<Result<_, _>>()?;
            let values = array(j, "values")?
                .iter()
                .map(coeff_from_json)
                .collect::<Result<_, _>>()?;
            Value::Step(StepFunction::new(cuts, values)?)
        }
        "exp" => {
            let cuts = array(j, "cuts")?
                .iter()
                .map(dyadic_from_json)
                .collect::<Result<_, _>>()?;
            let values = array(j, "values")?
                .iter()
                .map(|v| v.as_i64().ok_or_else(|| bad("exponents must be integers")))
                .collect::<Result<_, _>>()?;
            Value::Exp(ExpStep::new(cuts, values)?)
        }
        "charf" => {
            let angles = array(j, "angles")?
                .iter()
                .map(rational_from_json)
                .collect::<Result<Vec<_>, _>>()?;
            let angles: [BigRational; 4] = angles.try_into().map_err(|_| bad("charf needs four angles"))?;
            Value::CharF(Box::new(CharacterF::new(dyadic_from_json(get(j, "p")?)?, angles)?))
        }
        "charr" => Value::CharR(CharacterR {
            c: get(j, "c")?.as_i64().ok_or_else(|| bad("charr needs an integer"))?,
        }),
        "vec" => {
            let mut v = InducedVector::zero();
            for t in array(j, "terms")? {
                v.add_term(
                    label_from_json(get(t, "label")?)?,
                    rational_from_json(get(t, "amp")?)?,
                    rational_from_json(get(t, "angle")?)?,
                );
            }
            Value::Vector(v)
        }
        "bool" => Value::Bool(
            get(j, "value")?
                .as_bool()
                .ok_or_else(|| bad("bool needs true or false"))?,
        ),
        "text" => Value::Text(
            get(j, "value")?
                .as_str()
                .ok_or_else(|| bad("text needs a string"))?
                .to_string(),
        ),
        "list" => Value::List(array(j, "items")?.iter().map(from_json).collect::<Result<_, _>>()?),
        "record" => {
            let mut fields = Vec::new();
            for f in array(j, "fields")? {
                match f.as_array().map(Vec::as_slice) {
                    Some([Json::String(k), v]) => fields.push((k.clone(), from_json(v)?)),
                    _ => return Err(bad("record field must be [name, value]")),
                }
            }
            Value::Record(fields)
        }
        other => return Err(bad(format!("unknown kind `{other}`"))),
    })
}
