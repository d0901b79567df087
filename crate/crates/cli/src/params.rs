//! Parsing of the JSON-valued flags.

use dlie::liecore::Metric;
use dlie::scalar::{self, Scalar, Vector};
use dlie::sofamilies::{self, OrthogonalBasisIndex};
use dlie::{Error, Result};
use serde_json::Value;

fn scalar_of(v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => scalar::parse(s),
        Value::Number(n) => n.as_i64().map(scalar::int).ok_or_else(|| Error::ParseScalar(n.to_string())),
        other => Err(Error::ParseScalar(other.to_string())),
    }
}

fn index_of(v: &Value, n1: usize) -> Result<usize> {
    let i = v.as_u64().ok_or_else(|| Error::BadParams(format!("expected a 1-based index, got {v}")))? as usize;
    if i == 0 || i > n1 {
        return Err(Error::IndexOutOfRange { index: i, dim: n1 });
    }
    Ok(i - 1)
}

/// `[[i, j, "v"], …]` with 1-based indices into the raised antisymmetric `s`.
pub fn raised_s(json: Option<&str>, n1: usize) -> Result<Vec<Vector>> {
    let Some(json) = json else { return Ok(vec![scalar::zeros(n1); n1]) };
    let value: Value = serde_json::from_str(json)?;
    let entries = value.as_array().ok_or_else(|| Error::BadParams("--s must be a JSON array".into()))?;
    let mut out = Vec::new();
    for e in entries {
        let triple = e.as_array().filter(|a| a.len() == 3).ok_or_else(|| Error::BadParams(format!("bad s entry {e}")))?;
        out.push((index_of(&triple[0], n1)?, index_of(&triple[1], n1)?, scalar_of(&triple[2])?));
    }
    Ok(sofamilies::raised_matrix(n1, out))
}

/// `[[m, n], …]` with 1-based indices.
pub fn d_pairs(json: Option<&str>, n1: usize) -> Result<Vec<(usize, usize)>> {
    let Some(json) = json else { return Ok(Vec::new()) };
    let value: Value = serde_json::from_str(json)?;
    let entries = value.as_array().ok_or_else(|| Error::BadParams("--d must be a JSON array".into()))?;
    entries
        .iter()
        .map(|e| {
            let pair = e.as_array().filter(|a| a.len() == 2).ok_or_else(|| Error::BadParams(format!("bad D entry {e}")))?;
            Ok((index_of(&pair[0], n1)?, index_of(&pair[1], n1)?))
        })
        .collect()
}

/// A vector of `V` written with the labels `e1 … e_{n+1}`.
pub fn v_element(met: &Metric, expr: &str) -> Result<Vector> {
    let iso = sofamilies::build_iso(met);
    let idx = OrthogonalBasisIndex::new(met.len());
    let full = sofamilies::parse_element(&iso, met, expr)?;
    if full[..idx.so_dim()].iter().any(|c| *c != scalar::zero()) {
        return Err(Error::BadParams(format!("{expr:?} is not a vector of V")));
    }
    Ok(full[idx.so_dim()..].to_vec())
}

/// Row-major matrix of floats.
pub fn float_rows(json: &str) -> Result<Vec<Vec<f64>>> {
    Ok(serde_json::from_str(json)?)
}
