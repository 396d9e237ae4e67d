//! Canonical JSON for series, tables and Laurent polynomials.
//!
//! Objects use sorted keys and series terms are listed by `(ℓ, s)`, so equal
//! values always serialize to equal bytes.

use serde_json::{json, Map, Value};

use ecs_core::eigenfunction::{AlphaTable, ResidualReport};
use ecs_core::eigenvalue::{EigenvalueSeries, GkTable};
use ecs_core::fhat::LaurentPoly;
use ecs_core::{BiSeries, PPoly, PRatFunc, Rational, Scalar};

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("schema: {0}")]
    Schema(String),
    #[error(transparent)]
    Core(#[from] ecs_core::Error),
    #[error(transparent)]
    Syntax(#[from] serde_json::Error),
}

fn schema(msg: impl Into<String>) -> JsonError {
    JsonError::Schema(msg.into())
}

/// Scalars with a JSON form.
pub trait JsonScalar: Scalar {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, JsonError>;
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_pq_string())
    }

    fn from_json(v: &Value) -> Result<Self, JsonError> {
        let s = v.as_str().ok_or_else(|| schema("rational must be a \"p/q\" string"))?;
        Ok(s.parse()?)
    }
}

fn poly_to_json(p: &PPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| c.to_json()).collect())
}

fn poly_from_json(v: &Value) -> Result<PPoly, JsonError> {
    let arr = v.as_array().ok_or_else(|| schema("polynomial must be an array"))?;
    let coeffs = arr.iter().map(Rational::from_json).collect::<Result<Vec<_>, _>>()?;
    Ok(PPoly::from_coeffs(coeffs))
}

impl JsonScalar for PRatFunc {
    /// `{"num": [c_0, c_1, …], "den": […]}`, ascending powers of `P`.
    fn to_json(&self) -> Value {
        json!({ "num": poly_to_json(self.num()), "den": poly_to_json(self.den()) })
    }

    fn from_json(v: &Value) -> Result<Self, JsonError> {
        let num = poly_from_json(v.get("num").ok_or_else(|| schema("missing num"))?)?;
        let den = poly_from_json(v.get("den").ok_or_else(|| schema("missing den"))?)?;
        Ok(PRatFunc::new(num, den)?)
    }
}

fn get_usize(v: &Value, key: &str) -> Result<usize, JsonError> {
    v.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| schema(format!("missing unsigned field {key}")))
}

fn get_ints(v: &Value, key: &str) -> Result<Vec<i64>, JsonError> {
    v.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| schema(format!("missing array {key}")))?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| schema(format!("{key} must hold integers"))))
        .collect()
}

pub fn series_to_json<F: JsonScalar>(s: &BiSeries<F>) -> Value {
    let terms: Vec<Value> =
        s.terms().map(|(l, g, c)| json!({ "q2": l, "gamma": g, "value": c.to_json() })).collect();
    json!({
        "q2_order": s.q2_order(),
        "gamma_order": s.gamma_order(),
        "scalar": F::KIND,
        "terms": terms,
    })
}

pub fn series_from_json<F: JsonScalar>(v: &Value) -> Result<BiSeries<F>, JsonError> {
    let lq = get_usize(v, "q2_order")?;
    let sg = get_usize(v, "gamma_order")?;
    if v.get("scalar").and_then(Value::as_str) != Some(F::KIND) {
        return Err(schema(format!("expected scalar kind {}", F::KIND)));
    }
    let mut out = BiSeries::zero(lq, sg);
    for t in v.get("terms").and_then(Value::as_array).ok_or_else(|| schema("missing terms"))? {
        let l = get_usize(t, "q2")?;
        let g = get_usize(t, "gamma")?;
        if l > lq || g > sg {
            return Err(schema("term beyond the stated truncation"));
        }
        let c = F::from_json(t.get("value").ok_or_else(|| schema("missing value"))?)?;
        out.add_term(l, g, c);
    }
    Ok(out)
}

pub fn eigenvalue_to_json<F: JsonScalar>(e: &EigenvalueSeries<F>) -> Value {
    json!({ "e0": e.e0.to_json(), "tilde_e": series_to_json(&e.tilde_e) })
}

pub fn gk_table_to_json<F: JsonScalar>(t: &GkTable<F>) -> Value {
    json!({
        "label": t.label(),
        "q2_order": t.q2_order(),
        "gamma_order": t.gamma_order(),
        "entries": t.entries().iter().map(series_to_json).collect::<Vec<_>>(),
    })
}

pub fn gk_table_from_json<F: JsonScalar>(v: &Value) -> Result<GkTable<F>, JsonError> {
    let label = v.get("label").and_then(Value::as_str).ok_or_else(|| schema("missing label"))?;
    let entries = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("missing entries"))?
        .iter()
        .map(series_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GkTable::from_entries(get_usize(v, "q2_order")?, get_usize(v, "gamma_order")?, label.to_string(), entries)?)
}

/// Window entries of the table as `[{mu, series}]`, lexicographic in `μ`.
pub fn alpha_table_to_json<F: JsonScalar>(t: &AlphaTable<F>) -> Value {
    Value::Array(
        t.window_entries()
            .map(|(mu, s)| json!({ "mu": mu.as_slice(), "series": series_to_json(s) }))
            .collect(),
    )
}

pub fn residual_to_json<F: JsonScalar>(r: &ResidualReport<F>) -> Value {
    let mut m = Map::new();
    m.insert("window_points".into(), json!(r.window_points));
    m.insert("halo_points".into(), json!(r.halo_points));
    m.insert("max_residual".into(), json!(if r.is_exact() { 0 } else { 1 }));
    let bad: Vec<Value> = r
        .window_residuals
        .iter()
        .chain(r.halo_residuals.iter())
        .map(|(mu, s)| json!({ "mu": mu.as_slice(), "residual": series_to_json(s) }))
        .collect();
    m.insert("nonzero".into(), Value::Array(bad));
    Value::Object(m)
}

pub fn laurent_to_json(p: &LaurentPoly) -> Value {
    let terms: Vec<Value> = p.terms().map(|(k, s)| json!({ "exps": k, "series": series_to_json(s) })).collect();
    let (lq, sg) = p.orders();
    json!({ "n": p.n_vars(), "q2_order": lq, "gamma_order": sg, "terms": terms })
}

pub fn laurent_from_json(v: &Value) -> Result<LaurentPoly, JsonError> {
    let nn = get_usize(v, "n")?;
    let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| schema("missing terms"))?;
    let parsed = terms
        .iter()
        .map(|t| {
            let exps = get_ints(t, "exps")?;
            if exps.len() != nn {
                return Err(schema("exponent vector of wrong length"));
            }
            Ok((exps, series_from_json::<Rational>(t.get("series").ok_or_else(|| schema("missing series"))?)?))
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    let (lq, sg) = (get_usize(v, "q2_order")?, get_usize(v, "gamma_order")?);
    if parsed.iter().any(|(_, s)| s.orders() != (lq, sg)) {
        return Err(schema("term truncation differs from the polynomial's"));
    }
    let mut out = LaurentPoly::zero(nn, lq, sg);
    for (k, s) in parsed {
        out.add_term(k, s);
    }
    Ok(out)
}

/// Pretty JSON text with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}
