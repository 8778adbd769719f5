//! Browser bindings: each export takes plain arguments and returns a JSON
//! string, or throws a string error.

use cellgrowth::cell_calc::MIN_CLASSIFY_ORDER;
use cellgrowth::numeric::ln_big;
use cellgrowth::{classify, count_coded_graphs, parse, profile};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Keeps a click in the page from locking up the tab.
pub const MAX_ORDER: usize = 4096;

fn bounded(n: usize, low: usize) -> Result<(), String> {
    if n < low || n > MAX_ORDER {
        return Err(format!("n must lie in {low}..={MAX_ORDER}, got {n}"));
    }
    Ok(())
}

pub fn profile_report(expr: &str, n: usize) -> Result<String, String> {
    bounded(n, 1)?;
    let tree = parse(expr).map_err(|e| e.to_string())?;
    let p = profile(&tree, n).map_err(|e| e.to_string())?;
    let report = classify(&tree, n.max(MIN_CLASSIFY_ORDER)).ok();
    let rows: Vec<_> = p
        .values
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let ln = ln_big(v);
            json!({
                "n": i,
                "value": v.to_string(),
                "log_value": ln.is_finite().then_some(ln),
                "normalizer": report.as_ref().and_then(|r| r.normalizer(i, v)).filter(|x| x.is_finite()),
            })
        })
        .collect();
    let out = json!({
        "tree": tree.to_string(),
        "order": n,
        "regime": report.map(|r| r.regime.as_str()),
        "rows": rows,
    });
    Ok(out.to_string())
}

pub fn classify_report(expr: &str, n: usize) -> Result<String, String> {
    bounded(n, MIN_CLASSIFY_ORDER)?;
    let tree = parse(expr).map_err(|e| e.to_string())?;
    let report = classify(&tree, n).map_err(|e| e.to_string())?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

pub fn witness_report(max_edges: usize) -> Result<String, String> {
    let counts = (1..=max_edges)
        .map(count_coded_graphs)
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    serde_json::to_string(&counts).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn profile_json(expr: &str, n: usize) -> Result<String, JsValue> {
    profile_report(expr, n).map_err(JsValue::from)
}

#[wasm_bindgen]
pub fn classify_json(expr: &str, n: usize) -> Result<String, JsValue> {
    classify_report(expr, n).map_err(JsValue::from)
}

/// Coded-graph counts for 1..=max_edges edges.
#[wasm_bindgen]
pub fn witness_json(max_edges: usize) -> Result<String, JsValue> {
    witness_report(max_edges).map_err(JsValue::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn profile_rows_are_partition_numbers() {
        let v: Value = serde_json::from_str(&profile_report("mset_inf(set)", 8).unwrap()).unwrap();
        let values: Vec<&str> = v["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["value"].as_str().unwrap())
            .collect();
        assert_eq!(values, ["1", "1", "2", "3", "5", "7", "11", "15", "22"]);
        assert_eq!(v["regime"], "stretched_exponential");
    }

    #[test]
    fn classify_reports_depth() {
        let v: Value =
            serde_json::from_str(&classify_report("mset_inf(mset_inf(set))", 256).unwrap())
                .unwrap();
        assert_eq!(v["regime"], "log_iterated");
    }

    #[test]
    fn witness_lists_each_edge_count() {
        let v: Value = serde_json::from_str(&witness_report(4).unwrap()).unwrap();
        let values: Vec<&str> = v
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["value"].as_str().unwrap())
            .collect();
        assert_eq!(values, ["1", "3", "6", "16"]);
    }

    #[test]
    fn errors_are_strings() {
        assert!(profile_report("mset(", 5).unwrap_err().contains("syntax"));
        assert!(profile_report("set", MAX_ORDER + 1).is_err());
        assert!(classify_report("set", 10).is_err());
        assert!(witness_report(40).is_err());
    }
}
