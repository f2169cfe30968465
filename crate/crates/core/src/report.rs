//! Tabular command output, rendered as TSV or JSON.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub label: String,
    pub ok: bool,
}

impl Verdict {
    pub fn pass(label: &str) -> Self {
        Verdict {
            label: label.to_string(),
            ok: true,
        }
    }

    pub fn fail(label: &str) -> Self {
        Verdict {
            label: label.to_string(),
            ok: false,
        }
    }

    pub fn from_bool(ok: bool, pass: &str, fail: &str) -> Self {
        if ok {
            Verdict::pass(pass)
        } else {
            Verdict::fail(fail)
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub config: Map<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    pub verdict: Verdict,
}

impl Report {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Report {
            command: command.to_string(),
            config: Map::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            verdict: Verdict::pass("OK"),
        }
    }

    pub fn config(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.config.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    /// `0` when the verdict holds, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.verdict.ok {
            0
        } else {
            1
        }
    }

    /// Header line, one line per row, then `# verdict: LABEL`.
    pub fn to_tsv(&self) -> String {
        let mut out = self.columns.join("\t");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(cell).collect();
            writeln!(out, "{}", cells.join("\t")).unwrap();
        }
        writeln!(out, "# verdict: {}", self.verdict.label).unwrap();
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .cloned()
                    .zip(row.iter().cloned())
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "command": self.command,
            "config": self.config,
            "rows": rows,
            "verdict": self.verdict.label,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}
