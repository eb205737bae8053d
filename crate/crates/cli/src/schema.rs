//! The versioned JSON schema for report envelopes and its validator.

use serde_json::Value;

pub const REPORT_SCHEMA: &str = include_str!("../schema/report-v1.schema.json");

/// Validates a report envelope; errors carry the JSON pointer of the offending value.
pub fn validate(instance: &Value) -> Result<(), Vec<String>> {
    let schema: Value = serde_json::from_str(REPORT_SCHEMA).expect("embedded schema is JSON");
    let validator = jsonschema::validator_for(&schema).expect("embedded schema compiles");
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| format!("{}: {e}", e.instance_path())).collect();
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}
