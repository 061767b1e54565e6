//! Browser bindings. Each exported function takes plain strings or numbers
//! and returns a JSON string; errors surface as JS exceptions carrying the
//! message.

use monodromy_core::document::{parse_integers, MatrixDocument};
use monodromy_core::dynamics::SystemSpec;
use monodromy_core::exact_int::PrimitiveVector;
use monodromy_core::monodromy::{continue_loop, CycleSample, LoopSpec, MonodromyReport, Orientation};
use monodromy_core::normal_forms::{classify, unimodular_completion, Classification};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct ClassifyView<'a> {
    input: &'a MatrixDocument,
    classification: &'a Classification,
}

pub fn classify_json(document: &str) -> Result<String, String> {
    let doc = MatrixDocument::parse(document).map_err(|e| e.to_string())?;
    let c = classify(&doc.entries).map_err(|e| e.to_string())?;
    Ok(to_json(&ClassifyView { input: &doc, classification: &c }))
}

pub fn complete_json(vector: &str) -> Result<String, String> {
    let entries = parse_integers(vector).map_err(|e| e.to_string())?;
    let u = PrimitiveVector::new(entries).map_err(|e| e.to_string())?;
    let s = unimodular_completion(&u).map_err(|e| e.to_string())?;
    Ok(MatrixDocument::new(s).map_err(|e| e.to_string())?.to_json())
}

#[derive(Serialize)]
struct SimulateView<'a> {
    report: &'a MonodromyReport,
    samples: &'a [CycleSample],
}

pub fn simulate_json(center: [f64; 2], radii: [f64; 2], samples: usize, clockwise: bool) -> Result<String, String> {
    let orientation = if clockwise { Orientation::Cw } else { Orientation::Ccw };
    let spec = LoopSpec::new(center, radii, samples, orientation).map_err(|e| e.to_string())?;
    let report = continue_loop(&spec, &SystemSpec::champagne_bottle()).map_err(|e| e.to_string())?;
    Ok(to_json(&SimulateView { report: &report, samples: &report.samples }))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("views always serialize")
}

/// Normal form of a matrix document (text or JSON).
#[wasm_bindgen(js_name = classifyMatrix)]
pub fn classify_matrix(document: &str) -> Result<String, JsError> {
    classify_json(document).map_err(|e| JsError::new(&e))
}

/// Unimodular matrix with the given primitive first column.
#[wasm_bindgen(js_name = completeVector)]
pub fn complete_vector(vector: &str) -> Result<String, JsError> {
    complete_json(vector).map_err(|e| JsError::new(&e))
}

/// Monodromy of the champagne bottle around an elliptic loop of `(J, H)`
/// values, with the per-sample data for plotting.
#[wasm_bindgen(js_name = simulateLoop)]
pub fn simulate_loop(
    center_j: f64,
    center_h: f64,
    radius_j: f64,
    radius_h: f64,
    samples: usize,
    clockwise: bool,
) -> Result<String, JsError> {
    simulate_json([center_j, center_h], [radius_j, radius_h], samples, clockwise).map_err(|e| JsError::new(&e))
}
