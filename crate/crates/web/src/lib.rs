//! WebAssembly bindings behind `www/index.html`.
//!
//! Each export takes sequences in the usual text format and returns a JSON
//! document the page plots. Distances come both as exact `p/q` strings and
//! as floats for drawing.

use normmatch::oracles::{threesum_to_sham, ThreeSumInstance};
use normmatch::rational::{render, to_f64};
use normmatch::{hamming, l2, Bounds, Rational, Sequence};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Patterns and texts typed into a page stay small.
const MAX_TEXT_LEN: usize = 20_000;

fn parse(label: &str, raw: &str) -> Result<Sequence, String> {
    let seq = Sequence::parse_with_bounds(raw, &Bounds::default())
        .map_err(|e| format!("{label}: {e}"))?;
    if seq.len() > MAX_TEXT_LEN {
        return Err(format!(
            "{label}: at most {MAX_TEXT_LEN} symbols in the demo"
        ));
    }
    Ok(seq)
}

fn series(distances: &[Rational]) -> Value {
    json!({
        "exact": distances.iter().map(render).collect::<Vec<_>>(),
        "values": distances.iter().map(to_f64).collect::<Vec<_>>(),
    })
}

/// Shift, shift-scale and degree-`degree` polynomial L2 profiles.
pub fn l2_profiles_json(pattern: &str, text: &str, degree: usize) -> Result<String, String> {
    let pattern = parse("pattern", pattern)?;
    let text = parse("text", text)?;
    if !(1..=l2::DEFAULT_MAX_DEGREE).contains(&degree) {
        return Err(format!("degree must be 1..={}", l2::DEFAULT_MAX_DEGREE));
    }
    let (shift, scale) =
        l2::shift_and_shift_scale_profiles(&text, &pattern).map_err(|e| e.to_string())?;
    let poly = l2::poly_l2_profile(&text, &pattern, degree).map_err(|e| e.to_string())?;
    Ok(json!({
        "shift": series(&shift.distances),
        "shift_alpha": shift.minimisers.iter().map(render).collect::<Vec<_>>(),
        "shift_scale": series(&scale.distances),
        "shift_scale_fit": scale
            .minimisers
            .iter()
            .map(|(a, b)| [render(a), render(b)])
            .collect::<Vec<_>>(),
        "poly": series(&poly.distances),
        "degree": degree,
    })
    .to_string())
}

/// Unbounded shift Hamming profile and the profile capped at `k + 1`.
pub fn hamming_profiles_json(pattern: &str, text: &str, k: usize) -> Result<String, String> {
    let pattern = parse("pattern", pattern)?;
    let text = parse("text", text)?;
    let full = hamming::sham_profile(&text, &pattern).map_err(|e| e.to_string())?;
    let capped = hamming::skmismatch_profile(&text, &pattern, k).map_err(|e| e.to_string())?;
    Ok(json!({
        "sham": full.distances,
        "shift": full.minimisers,
        "kmismatch": capped.distances,
        "k": k,
        "m": pattern.len(),
    })
    .to_string())
}

/// Builds the shift Hamming instance for a 3SUM set and its profile; the
/// minimum is `m − 2` exactly when the set has `a + b = c`.
pub fn threesum_json(elements: &str) -> Result<String, String> {
    let values = elements
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .map_err(|_| format!("not an integer: {s:?}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() > 200 {
        return Err("at most 200 elements in the demo".into());
    }
    let instance = ThreeSumInstance::new(values).map_err(|e| e.to_string())?;
    let pair = threesum_to_sham(&instance).map_err(|e| e.to_string())?;
    let prof = hamming::sham_profile(&pair.text, &pair.pattern).map_err(|e| e.to_string())?;
    Ok(json!({
        "pattern": pair.pattern.to_string(),
        "text": pair.text.to_string(),
        "notes": pair.metadata,
        "sham": prof.distances,
        "m": pair.pattern.len(),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn l2_profiles(pattern: &str, text: &str, degree: usize) -> Result<String, JsError> {
    l2_profiles_json(pattern, text, degree).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn hamming_profiles(pattern: &str, text: &str, k: usize) -> Result<String, JsError> {
    hamming_profiles_json(pattern, text, k).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn threesum(elements: &str) -> Result<String, JsError> {
    threesum_json(elements).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_json(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn l2_document() {
        let v = parse_json(&l2_profiles_json("1 2", "5 6 7", 2).unwrap());
        assert_eq!(v["shift"]["exact"], json!(["0/1", "0/1"]));
        assert_eq!(v["shift_alpha"], json!(["4/1", "5/1"]));
        assert_eq!(v["poly"]["values"], json!([0.0, 0.0]));
    }

    #[test]
    fn hamming_document() {
        let v = parse_json(&hamming_profiles_json("0 0 0", "0 0 9 0 0", 1).unwrap());
        assert_eq!(v["sham"], json!([1, 1, 1]));
        assert_eq!(v["kmismatch"], json!([1, 1, 1]));
    }

    #[test]
    fn threesum_document() {
        let v = parse_json(&threesum_json("1, 2, 3").unwrap());
        let min = v["sham"]
            .as_array()
            .unwrap()
            .iter()
            .map(|d| d.as_u64().unwrap())
            .min();
        assert_eq!(min, Some(7));
    }

    #[test]
    fn errors_are_messages() {
        assert!(l2_profiles_json("1 2 3", "1", 1).is_err());
        assert!(l2_profiles_json("1", "1 2", 0).is_err());
        assert!(hamming_profiles_json("1 *", "1 2 3", 1)
            .unwrap_err()
            .contains("wildcard"));
        assert!(threesum_json("1 two").is_err());
    }
}
