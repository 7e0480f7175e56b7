use serde::Serialize;
use serde_json::Value;

/// Everything a command writes to stdout.
#[derive(Debug, Serialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub parameters: Value,
    pub result: Value,
    pub diagnostics: Option<Value>,
}

pub fn to_json(env: &OutputEnvelope) -> String {
    serde_json::to_string_pretty(env).expect("envelope serializes")
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(";"),
        Value::Object(_) => v.to_string(),
        other => other.to_string(),
    }
}

fn table_rows(v: &Value) -> Vec<Vec<String>> {
    match v {
        Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
            let header: Vec<String> = items[0].as_object().unwrap().keys().cloned().collect();
            let mut rows = vec![header.clone()];
            for item in items {
                let obj = item.as_object().unwrap();
                rows.push(header.iter().map(|k| obj.get(k).map(cell).unwrap_or_default()).collect());
            }
            rows
        }
        Value::Array(items) => {
            let mut rows = vec![vec!["index".to_string(), "value".to_string()]];
            rows.extend(items.iter().enumerate().map(|(i, x)| vec![i.to_string(), cell(x)]));
            rows
        }
        Value::Object(obj) => {
            for key in ["entries", "criteria", "records"] {
                if let Some(inner @ Value::Array(_)) = obj.get(key) {
                    return table_rows(inner);
                }
            }
            let mut rows = vec![vec!["key".to_string(), "value".to_string()]];
            rows.extend(obj.iter().map(|(k, x)| vec![k.clone(), cell(x)]));
            rows
        }
        scalar => vec![vec!["value".to_string()], vec![cell(scalar)]],
    }
}

/// Flattens `result` into a table: arrays of objects become one row per
/// object, report-like objects use their entry list.
pub fn to_csv(env: &OutputEnvelope) -> String {
    let mut writer = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for row in table_rows(&env.result) {
        writer.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 cells")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn env(result: Value) -> OutputEnvelope {
        OutputEnvelope {
            command: "x".into(),
            parameters: json!({}),
            result,
            diagnostics: None,
        }
    }

    #[test]
    fn records_table() {
        let out = to_csv(&env(json!([{"n": 0, "coeffs": ["1"]}, {"n": 1, "coeffs": ["0", "1"]}])));
        assert_eq!(out, "coeffs,n\n1,0\n0;1,1\n");
    }

    #[test]
    fn scalar_array() {
        assert_eq!(to_csv(&env(json!(["1", "2"]))), "index,value\n0,1\n1,2\n");
    }

    #[test]
    fn report_uses_entries() {
        let out = to_csv(&env(json!({"check": "c", "entries": [{"label": "re", "abs_dev": 0.0}]})));
        assert_eq!(out, "abs_dev,label\n0.0,re\n");
    }
}
