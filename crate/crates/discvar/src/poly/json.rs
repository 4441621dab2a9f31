//! JSON forms: `{vars, terms: [{exps, num, den}]}` for a polynomial over
//! the rationals, and the same shape with coefficient arrays for the
//! rational-function field. Integers travel as decimal strings so
//! arbitrary precision survives the trip.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use thiserror::Error;

use super::{Monomial, MonomialOrder, MultiPoly, VarContext};
use crate::field::Rat;
use crate::ratfunc::{KPoly, RatFunc};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed polynomial json: {0}")]
    Malformed(String),
}

fn bad(msg: impl Into<String>) -> JsonError {
    JsonError::Malformed(msg.into())
}

pub fn order_to_json(order: MonomialOrder) -> Value {
    match order {
        MonomialOrder::GrevLex => json!("grevlex"),
        MonomialOrder::Lex => json!("lex"),
        MonomialOrder::Block { first } => json!({ "block": first }),
    }
}

pub fn order_from_json(v: &Value) -> Result<MonomialOrder, JsonError> {
    match v {
        Value::String(s) if s == "grevlex" => Ok(MonomialOrder::GrevLex),
        Value::String(s) if s == "lex" => Ok(MonomialOrder::Lex),
        Value::Object(m) => {
            let first = m
                .get("block")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("block order needs a size"))?;
            Ok(MonomialOrder::Block {
                first: first as usize,
            })
        }
        other => Err(bad(format!("unknown order {other}"))),
    }
}

pub fn poly_to_json(p: &MultiPoly<Rat>) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .iter()
        .map(|(m, c)| {
            json!({
                "exps": m.exps(),
                "num": c.numer().to_string(),
                "den": c.denom().to_string(),
            })
        })
        .collect();
    json!({ "vars": p.ctx().names(), "terms": terms })
}

fn vars_from_json(v: &Value) -> Result<VarContext, JsonError> {
    let names = v
        .get("vars")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing vars"))?
        .iter()
        .map(|s| {
            s.as_str()
                .map(str::to_string)
                .ok_or_else(|| bad("vars must be strings"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VarContext::new(names))
}

fn exps_from_json(t: &Map<String, Value>, nvars: usize) -> Result<Monomial, JsonError> {
    let exps = t
        .get("exps")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("term missing exps"))?
        .iter()
        .map(|e| {
            e.as_u64()
                .map(|x| x as u32)
                .ok_or_else(|| bad("exponent must be an integer"))
        })
        .collect::<Result<Vec<u32>, _>>()?;
    if exps.len() != nvars {
        return Err(bad("exponent vector length mismatch"));
    }
    Ok(Monomial::from_exps(exps))
}

fn bigint_field(t: &Map<String, Value>, key: &str) -> Result<BigInt, JsonError> {
    let s = t
        .get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| bad(format!("term missing {key}")))?;
    s.parse::<BigInt>()
        .map_err(|e| bad(format!("bad integer in {key}: {e}")))
}

pub fn poly_from_json(v: &Value, order: MonomialOrder) -> Result<MultiPoly<Rat>, JsonError> {
    let ctx = vars_from_json(v)?;
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing terms"))?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let t = t.as_object().ok_or_else(|| bad("term must be an object"))?;
        let m = exps_from_json(t, ctx.len())?;
        let num = bigint_field(t, "num")?;
        let den = bigint_field(t, "den")?;
        if den == BigInt::from(0) {
            return Err(bad("zero denominator"));
        }
        out.push((m, Rat::new(num, den)));
    }
    Ok(MultiPoly::from_terms(&ctx, order, out))
}

fn kpoly_to_json(p: &KPoly) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .map(|c| json!(format!("{}/{}", c.numer(), c.denom())))
            .collect(),
    )
}

fn kpoly_from_json(v: &Value) -> Result<KPoly, JsonError> {
    let arr = v.as_array().ok_or_else(|| bad("k-coefficient array"))?;
    let coeffs = arr
        .iter()
        .map(|c| {
            let s = c.as_str().ok_or_else(|| bad("k-coefficient string"))?;
            let (n, d) = s.split_once('/').ok_or_else(|| bad("a/b form"))?;
            let num = n.parse::<BigInt>().map_err(|e| bad(e.to_string()))?;
            let den = d.parse::<BigInt>().map_err(|e| bad(e.to_string()))?;
            Ok(Rat::new(num, den))
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    Ok(KPoly::new(coeffs))
}

/// Rational-function coefficients serialize as `{num: [..], den: [..]}`
/// with ascending-degree `a/b` string entries.
pub fn ratfunc_poly_to_json(p: &MultiPoly<RatFunc>) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .iter()
        .map(|(m, c)| {
            json!({
                "exps": m.exps(),
                "num": kpoly_to_json(c.numer()),
                "den": kpoly_to_json(c.denom()),
            })
        })
        .collect();
    json!({ "vars": p.ctx().names(), "terms": terms })
}

pub fn ratfunc_poly_from_json(
    v: &Value,
    order: MonomialOrder,
) -> Result<MultiPoly<RatFunc>, JsonError> {
    let ctx = vars_from_json(v)?;
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing terms"))?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let t = t.as_object().ok_or_else(|| bad("term must be an object"))?;
        let m = exps_from_json(t, ctx.len())?;
        let num = kpoly_from_json(t.get("num").ok_or_else(|| bad("missing num"))?)?;
        let den = kpoly_from_json(t.get("den").ok_or_else(|| bad("missing den"))?)?;
        out.push((m, RatFunc::new(num, den)));
    }
    Ok(MultiPoly::from_terms(&ctx, order, out))
}
