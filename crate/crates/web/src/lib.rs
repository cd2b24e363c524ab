//! Browser bindings. Every export takes plain strings and numbers and returns
//! a JSON string, either a result object or `{"error": "..."}`.

use bsdecomp::decompose::enumerate_maximal_chains;
use bsdecomp::monomial::{betti_table, parse_ideal_json};
use bsdecomp::{detect_stabilization, greedy_decompose, Window};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn error(message: impl ToString) -> String {
    json!({ "error": message.to_string() }).to_string()
}

fn respond(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => error(e),
    }
}

/// Betti table of `I^k` with its positive decomposition.
#[wasm_bindgen]
pub fn power_table(ideal_json: &str, k: u32) -> String {
    respond((|| {
        if k == 0 {
            return Err("k must be at least 1".to_string());
        }
        let ideal = parse_ideal_json(ideal_json).map_err(|e| e.to_string())?;
        let power = ideal.power(k).map_err(|e| e.to_string())?;
        let table = betti_table(&power).map_err(|e| e.to_string())?;
        let decomposition = greedy_decompose(&table).map_err(|e| e.to_string())?;
        Ok(json!({
            "generators": power.generators().len(),
            "pretty": table.pretty(),
            "btt": table.to_btt(),
            "decomposition": decomposition.to_json(),
        }))
    })())
}

/// Number of maximal chains in a window plus the first `limit` of them.
#[wasm_bindgen]
pub fn maximal_chains(min_row: i32, max_row: i32, max_col: u32, limit: u32) -> String {
    respond((|| {
        let window = Window::new(min_row as i64, max_row as i64, max_col as usize).map_err(|e| e.to_string())?;
        let mut count = 0u64;
        let mut shown = Vec::new();
        for chain in enumerate_maximal_chains(window) {
            if (shown.len() as u32) < limit {
                shown.push(serde_json::to_value(chain.elements()).map_err(|e| e.to_string())?);
            }
            count += 1;
        }
        Ok(json!({ "count": count, "chains": shown }))
    })())
}

/// Stabilization report over `k_min..=k_max`; a negative bound means the default.
#[wasm_bindgen]
pub fn stabilize(ideal_json: &str, k_min: i32, k_max: i32, degree_bound: i32) -> String {
    respond((|| {
        let ideal = parse_ideal_json(ideal_json).map_err(|e| e.to_string())?;
        let bound = if degree_bound < 0 { ideal.num_vars() - 1 } else { degree_bound as usize };
        let report = detect_stabilization(&ideal, k_min as i64, k_max as i64, bound).map_err(|e| e.to_string())?;
        Ok(json!({ "summary": report.summary(), "report": report.to_json() }))
    })())
}
