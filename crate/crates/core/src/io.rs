//! JSON encodings of series, loop-space points and twisting data.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::expr::{parse_kclass, parse_laurent, parse_qrat, ExprContext};
use crate::lefschetz::{DegreeVec, NovSeries};
use crate::loopspace::LoopPoint;
use crate::twistkit::{Support, TwistData, TwistMode};

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field \"{key}\"")))
}

fn as_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| bad(format!("{what} must be an integer")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| bad(format!("{what} must be a string")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))
}

/// `{"n", "truncation", "terms": [{"d": [..], "value": ".."}]}`.
pub fn novseries_to_json(s: &NovSeries) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(d, f)| json!({ "d": d.0, "value": f.render() }))
        .collect();
    json!({ "n": s.rank(), "truncation": s.truncation(), "terms": terms })
}

pub fn novseries_from_json(v: &Value, ctx: &ExprContext) -> Result<NovSeries> {
    let n = as_i64(field(v, "n")?, "n")?;
    if n < 1 || n as usize != ctx.n {
        return Err(bad(format!("series rank {n} does not match n = {}", ctx.n)));
    }
    let truncation = as_i64(field(v, "truncation")?, "truncation")?;
    let mut terms = Vec::new();
    let mut picard = None;
    for t in as_array(field(v, "terms")?, "terms")? {
        let d: Vec<i64> = as_array(field(t, "d")?, "d")?
            .iter()
            .map(|x| as_i64(x, "degree component"))
            .collect::<Result<_>>()?;
        picard.get_or_insert(d.len());
        let value = parse_qrat(as_str(field(t, "value")?, "value")?, ctx)?;
        terms.push((DegreeVec(d), value));
    }
    NovSeries::from_terms(ctx.n, picard.unwrap_or(1), truncation, terms)
}

/// `{"components": [{"r": .., "value": ".."}]}`.
pub fn looppoint_to_json(p: &LoopPoint) -> Value {
    let comps: Vec<Value> = p
        .components()
        .map(|(r, f)| json!({ "r": r, "value": f.render() }))
        .collect();
    json!({ "components": comps })
}

pub fn looppoint_from_json(v: &Value, ctx: &ExprContext) -> Result<LoopPoint> {
    let mut comps = Vec::new();
    for c in as_array(field(v, "components")?, "components")? {
        let r = as_i64(field(c, "r")?, "r")?;
        let value = parse_qrat(as_str(field(c, "value")?, "value")?, ctx)?;
        comps.push((r, value));
    }
    LoopPoint::new(comps)
}

/// `{"mode", "entries": [{"k", "E"}]}`, plus `"lines"` and `"support"` for Eulerian modes.
pub fn twist_to_json(t: &TwistData) -> Value {
    let mut m = Map::new();
    m.insert("mode".into(), json!(t.mode().name()));
    if t.mode().is_eulerian() {
        let lines: Vec<String> = t.lines().iter().map(|l| l.render()).collect();
        m.insert("lines".into(), json!(lines));
        m.insert("support".into(), json!(t.support().name()));
    } else {
        let entries: Vec<Value> = t
            .entries()
            .map(|(k, e)| json!({ "k": k, "E": e.render() }))
            .collect();
        m.insert("entries".into(), json!(entries));
    }
    Value::Object(m)
}

pub fn twist_from_json(v: &Value, ctx: &ExprContext) -> Result<TwistData> {
    let mode_name = as_str(field(v, "mode")?, "mode")?;
    let mode = TwistMode::from_name(mode_name).ok_or_else(|| bad(format!("unknown twist mode \"{mode_name}\"")))?;
    if mode.is_eulerian() {
        let lines = as_array(field(v, "lines")?, "lines")?
            .iter()
            .map(|l| parse_kclass(as_str(l, "line")?, ctx))
            .collect::<Result<Vec<_>>>()?;
        let data = match mode {
            TwistMode::EulerianPi => TwistData::eulerian_pi(ctx.n, lines)?,
            _ => TwistData::eulerian_dual(ctx.n, lines)?,
        };
        let support = match v.get("support").map(|s| as_str(s, "support")).transpose()? {
            None | Some("negative") => Support::Negative,
            Some("positive") => Support::Positive,
            Some(other) => return Err(bad(format!("unknown support \"{other}\""))),
        };
        return Ok(data.with_support(support));
    }
    let mut entries = Vec::new();
    if let Some(list) = v.get("entries") {
        for e in as_array(list, "entries")? {
            let k = as_i64(field(e, "k")?, "k")?;
            let value = parse_laurent(as_str(field(e, "E")?, "E")?, ctx)?;
            entries.push((k, value));
        }
    }
    match mode {
        TwistMode::Finite => TwistData::finite(ctx.n, entries),
        _ => TwistData::infinitesimal(ctx.n, entries),
    }
}
