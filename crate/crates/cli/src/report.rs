use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    JsonLines,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json-lines" => Ok(Format::JsonLines),
            _ => Err(format!("unknown format {s:?} (expected text or json-lines)")),
        }
    }
}

/// Outcome of one case of a suite. Non-gating cases are reported but do
/// not affect the exit status.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub suite: &'static str,
    pub case: String,
    pub pass: bool,
    pub gating: bool,
    pub detail: String,
}

impl Record {
    pub fn new(suite: &'static str, case: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Record {
            suite,
            case: case.into(),
            pass,
            gating: true,
            detail: detail.into(),
        }
    }

    pub fn informational(mut self) -> Self {
        self.gating = false;
        self
    }
}

enum Entry {
    Record(Record),
    Info { kind: &'static str, fields: Value, text: String },
}

/// Ordered list of output lines with a pass/fail verdict.
#[derive(Default)]
pub struct Report {
    entries: Vec<Entry>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn record(&mut self, r: Record) {
        self.entries.push(Entry::Record(r));
    }

    pub fn records(&mut self, rs: impl IntoIterator<Item = Record>) {
        for r in rs {
            self.record(r);
        }
    }

    /// A non-verdict line: `text` in text mode, `{"kind": .., ..fields}` in
    /// json-lines mode.
    pub fn info(&mut self, kind: &'static str, fields: Value, text: impl Into<String>) {
        self.entries.push(Entry::Info {
            kind,
            fields,
            text: text.into(),
        });
    }

    pub fn failed(&self) -> bool {
        self.entries
            .iter()
            .any(|e| matches!(e, Entry::Record(r) if r.gating && !r.pass))
    }

    /// Appends one summary line per suite, in first-appearance order.
    pub fn summarize(&mut self) {
        let mut order: Vec<&'static str> = Vec::new();
        let mut counts: Vec<(usize, usize, bool)> = Vec::new();
        for e in &self.entries {
            if let Entry::Record(r) = e {
                let i = order.iter().position(|s| *s == r.suite).unwrap_or_else(|| {
                    order.push(r.suite);
                    counts.push((0, 0, false));
                    order.len() - 1
                });
                counts[i].1 += 1;
                if r.pass {
                    counts[i].0 += 1;
                }
                counts[i].2 |= r.gating;
            }
        }
        for (suite, (passed, total, gating)) in order.into_iter().zip(counts) {
            let verdict = match (gating, passed == total) {
                (false, _) => "REPORTED",
                (true, true) => "PASS",
                (true, false) => "FAIL",
            };
            self.info(
                "summary",
                json!({"suite": suite, "passed": passed, "total": total, "verdict": verdict}),
                format!("summary {suite}: {passed}/{total} {verdict}"),
            );
        }
        let overall = if self.failed() { "FAIL" } else { "PASS" };
        self.info("overall", json!({"verdict": overall}), format!("overall: {overall}"));
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let line = match (format, e) {
                (Format::Text, Entry::Record(r)) => {
                    let tag = match (r.gating, r.pass) {
                        (true, true) => "PASS",
                        (true, false) => "FAIL",
                        (false, true) => "INFO",
                        (false, false) => "NOTE",
                    };
                    format!("{tag} {}/{} {}", r.suite, r.case, r.detail)
                }
                (Format::Text, Entry::Info { text, .. }) => text.clone(),
                (Format::JsonLines, Entry::Record(r)) => {
                    let mut v = serde_json::to_value(r).expect("record serializes");
                    v.as_object_mut().expect("object").insert("kind".into(), json!("case"));
                    v.to_string()
                }
                (Format::JsonLines, Entry::Info { kind, fields, .. }) => {
                    let mut v = fields.clone();
                    match v.as_object_mut() {
                        Some(o) => {
                            o.insert("kind".into(), json!(kind));
                        }
                        None => v = json!({"kind": kind, "value": fields}),
                    }
                    v.to_string()
                }
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        let mut r = Report::new();
        r.record(Record::new("a", "0", true, ""));
        r.record(Record::new("b", "0", false, "x").informational());
        assert!(!r.failed());
        r.record(Record::new("a", "1", false, "bad"));
        assert!(r.failed());
        r.summarize();
        let text = r.render(Format::Text);
        assert!(text.contains("summary a: 1/2 FAIL"));
        assert!(text.contains("summary b: 0/1 REPORTED"));
        assert!(text.ends_with("overall: FAIL\n"));
        let json = r.render(Format::JsonLines);
        for line in json.lines() {
            let v: Value = serde_json::from_str(line).unwrap();
            assert!(v.get("kind").is_some());
        }
    }
}
