//! wasm-bindgen exports for the static demo page in `www/`.
//!
//! Every export returns a JSON string; errors surface as JS exceptions.

use meantail::meantail::{chvatal_argmin, mean_tail, nearest_to_two_thirds, piece_decompose, piece_index_of, Family, Value};
use meantail::verification::ProbeGrid;
use meantail::Rational;
use serde_json::{json, Value as Json};
use wasm_bindgen::prelude::*;

const PRECISION_BITS: u32 = 128;
const MAX_POINTS: u32 = 2000;
const MAX_PIECES: u64 = 400;
const MAX_CHVATAL_N: u64 = 400;

fn family(name: &str, r: u32) -> Result<Family, String> {
    match name {
        "poisson" => Ok(Family::Poisson),
        "geometric" => Ok(Family::Geometric),
        "pascal" if r >= 1 => Ok(Family::Pascal { r: r as u64 }),
        "pascal" => Err("Pascal r must be >= 1".into()),
        other => Err(format!("unknown family {other:?}")),
    }
}

fn value_json(v: &Value) -> Json {
    match v {
        Value::Exact(q) => json!({ "exact": q.to_fraction_string(), "approx": q.to_f64() }),
        Value::Certified(c) => json!({
            "midpoint": c.midpoint().to_decimal_string(15),
            "radius": c.radius().to_scientific_upper(3),
            "approx": c.to_f64(),
        }),
    }
}

fn parse(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

/// `P(X <= E[X])` on a linear grid of the family parameter.
pub fn mean_tail_curve_json(name: &str, r: u32, from: &str, to: &str, count: u32) -> Result<String, String> {
    let fam = family(name, r)?;
    if !(2..=MAX_POINTS).contains(&count) {
        return Err(format!("count must lie in [2, {MAX_POINTS}]"));
    }
    let grid = ProbeGrid::linear(parse(from)?, parse(to)?, count as usize).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for x in grid.points() {
        let v = mean_tail(fam, &x, PRECISION_BITS).map_err(|e| e.to_string())?;
        let piece = piece_index_of(fam, &x).map_err(|e| e.to_string())?;
        rows.push(json!({ "param": x.to_f64(), "param_exact": x.to_string(), "piece": piece, "value": value_json(&v) }));
    }
    Ok(Json::Array(rows).to_string())
}

/// Per-piece infima for pieces `first..=last`.
pub fn piece_infima_json(name: &str, r: u32, first: u32, last: u32) -> Result<String, String> {
    let fam = family(name, r)?;
    let (first, last) = (first as u64, last as u64);
    if last < first || last - first >= MAX_PIECES {
        return Err(format!("need first <= last and at most {MAX_PIECES} pieces"));
    }
    let pieces = piece_decompose(fam, first, last, PRECISION_BITS).map_err(|e| e.to_string())?;
    let rows: Vec<Json> = pieces
        .iter()
        .map(|p| {
            json!({
                "index": p.piece_index,
                "interval": p.interval.to_string(),
                "lo": p.interval.lo.to_f64(),
                "hi": p.interval.hi.to_f64(),
                "infimum": value_json(&p.piece_infimum),
            })
        })
        .collect();
    Ok(Json::Array(rows).to_string())
}

/// All `q_m = P(B(n, m/n) <= m)` with the exact minimizers.
pub fn chvatal_profile_json(n: u32) -> Result<String, String> {
    let n = n as u64;
    if !(2..=MAX_CHVATAL_N).contains(&n) {
        return Err(format!("n must lie in [2, {MAX_CHVATAL_N}]"));
    }
    let profile = chvatal_argmin(n).map_err(|e| e.to_string())?;
    let q: Vec<f64> = profile.q_values.iter().map(Rational::to_f64).collect();
    Ok(json!({
        "n": n,
        "q": q,
        "minimizers": profile.minimizers,
        "nearest_two_thirds": nearest_to_two_thirds(n),
        "minimum": profile.minimum().to_fraction_string(),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn mean_tail_curve(family: &str, r: u32, from: &str, to: &str, count: u32) -> Result<String, JsError> {
    mean_tail_curve_json(family, r, from, to, count).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn piece_infima(family: &str, r: u32, first: u32, last: u32) -> Result<String, JsError> {
    piece_infima_json(family, r, first, last).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn chvatal_profile(n: u32) -> Result<String, JsError> {
    chvatal_profile_json(n).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_rows() {
        let s = mean_tail_curve_json("geometric", 0, "1/2", "1", 3).unwrap();
        let v: Json = serde_json::from_str(&s).unwrap();
        assert_eq!(v[0]["value"]["exact"], "3/4");
        assert_eq!(v[2]["value"]["exact"], "1/1");
        assert!(mean_tail_curve_json("pascal", 0, "1/2", "1", 3).is_err());
        assert!(mean_tail_curve_json("geometric", 0, "1/2", "1", 1).is_err());
    }

    #[test]
    fn infima_rows() {
        let v: Json = serde_json::from_str(&piece_infima_json("pascal", 3, 3, 5).unwrap()).unwrap();
        assert_eq!(v[0]["infimum"]["exact"], "27/64");
        assert_eq!(v[1]["infimum"]["exact"], "297/625");
        let p: Json = serde_json::from_str(&piece_infima_json("poisson", 0, 0, 1).unwrap()).unwrap();
        assert!(p[0]["infimum"]["midpoint"].as_str().unwrap().starts_with("0.367879441171442"));
    }

    #[test]
    fn chvatal_rows() {
        let v: Json = serde_json::from_str(&chvatal_profile_json(3).unwrap()).unwrap();
        assert_eq!(v["minimizers"], json!([2]));
        assert_eq!(v["nearest_two_thirds"], json!([2]));
        assert!(chvatal_profile_json(1).is_err());
    }
}
