use std::collections::HashSet;

use curvegr::Field;
use serde::Deserialize;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingInput {
    #[serde(default)]
    pub field: Field,
    pub generators: Vec<String>,
    #[serde(default)]
    pub reduction: Option<String>,
    #[serde(default)]
    pub apery_basis: Option<Vec<String>>,
    #[serde(default)]
    pub precision: Option<u32>,
    #[serde(default)]
    pub label: Option<String>,
}

impl RingInput {
    pub fn label(&self) -> String {
        self.label
            .clone()
            .unwrap_or_else(|| format!("k[[{}]]", self.generators.join(", ")))
    }
}

/// A single ring object or an array of them. Returns the inputs and whether
/// the document was a batch.
pub fn parse_document(text: &str) -> Result<(Vec<RingInput>, bool), String> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| format!("malformed JSON: {e}"))?;
    let batch = value.is_array();
    let inputs: Vec<RingInput> = if batch {
        serde_json::from_value(value).map_err(|e| e.to_string())?
    } else {
        vec![serde_json::from_value(value).map_err(|e| e.to_string())?]
    };
    validate_labels(&inputs)?;
    Ok((inputs, batch))
}

pub fn validate_labels(inputs: &[RingInput]) -> Result<(), String> {
    let mut seen = HashSet::new();
    for input in inputs {
        let label = input.label();
        if label.trim().is_empty() {
            return Err("ring label must be nonempty".into());
        }
        if !seen.insert(label.clone()) {
            return Err(format!("duplicate ring label {label:?}"));
        }
    }
    Ok(())
}

/// `rational`, `QQ`, or a prime `p`.
pub fn parse_field(text: &str) -> Result<Field, String> {
    match text.trim() {
        "rational" | "QQ" | "Q" => Ok(Field::Rational),
        p => {
            let p = p
                .trim_start_matches("GF(")
                .trim_end_matches(')')
                .parse::<u64>()
                .map_err(|_| format!("unknown field {text:?}"))?;
            Field::prime(p).map_err(|e| e.to_string())
        }
    }
}
