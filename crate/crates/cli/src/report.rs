//! Command payloads and their two renderings.

use serde_json::{Map, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldValue {
    Text(String),
    List(Vec<String>),
    /// Rows of `(key, value)` pairs, e.g. duality failures.
    Records(Vec<Vec<(String, String)>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    /// JSON key.
    pub key: String,
    /// Table label; usually the key.
    pub label: String,
    pub value: FieldValue,
}

/// Ordered fields of one command result.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub fields: Vec<Field>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn text(mut self, key: &str, value: impl ToString) -> Self {
        self.fields.push(Field { key: key.into(), label: key.into(), value: FieldValue::Text(value.to_string()) });
        self
    }

    pub fn labelled(mut self, key: &str, label: &str, value: impl ToString) -> Self {
        self.fields.push(Field { key: key.into(), label: label.into(), value: FieldValue::Text(value.to_string()) });
        self
    }

    pub fn list<I, S>(mut self, key: &str, items: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        let items = items.into_iter().map(|s| s.to_string()).collect();
        self.fields.push(Field { key: key.into(), label: key.into(), value: FieldValue::List(items) });
        self
    }

    pub fn records(mut self, key: &str, rows: Vec<Vec<(String, String)>>) -> Self {
        self.fields.push(Field { key: key.into(), label: key.into(), value: FieldValue::Records(rows) });
        self
    }

    pub fn get(&self, key: &str) -> Option<&FieldValue> {
        self.fields.iter().find(|f| f.key == key).map(|f| &f.value)
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        for f in &self.fields {
            let v = match &f.value {
                FieldValue::Text(s) => Value::String(s.clone()),
                FieldValue::List(items) => Value::Array(items.iter().cloned().map(Value::String).collect()),
                FieldValue::Records(rows) => Value::Array(
                    rows.iter()
                        .map(|row| {
                            Value::Object(row.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect())
                        })
                        .collect(),
                ),
            };
            obj.insert(f.key.clone(), v);
        }
        Value::Object(obj)
    }

    /// A lone unlabelled scalar prints bare, a lone list prints one item per
    /// line, anything else prints `label: value` lines.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        match self.fields.as_slice() {
            [Field { value: FieldValue::Text(s), key, label }] if key == label => {
                out.push_str(s);
                out.push('\n');
            }
            [Field { value: FieldValue::List(items), .. }] => {
                for item in items {
                    out.push_str(item);
                    out.push('\n');
                }
            }
            fields => {
                for f in fields {
                    match &f.value {
                        FieldValue::Text(s) => out.push_str(&format!("{}: {}\n", f.label, s)),
                        FieldValue::List(items) => {
                            out.push_str(&format!("{}:\n", f.label));
                            for item in items {
                                out.push_str(&format!("  - {item}\n"));
                            }
                        }
                        FieldValue::Records(rows) => {
                            out.push_str(&format!("{}:\n", f.label));
                            for row in rows {
                                let cells: Vec<String> = row.iter().map(|(k, v)| format!("{k}={v}")).collect();
                                out.push_str(&format!("  - {}\n", cells.join(" ")));
                            }
                        }
                    }
                }
            }
        }
        out
    }
}
