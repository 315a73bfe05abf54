//! Versioned JSON run report.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Graph,
    Oracle,
    Enumeration,
}

impl Method {
    pub fn tag(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Graph => "graph",
            Method::Oracle => "oracle",
            Method::Enumeration => "enumeration",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub name: String,
    pub value: Value,
    pub method: Method,
    /// Set when the value was cross-checked against an independent path.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub quantity: String,
    pub point: Value,
    pub expected: Value,
    pub found: Value,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Skip {
    pub point: Value,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub step: String,
    pub millis: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<Value>,
    pub values: Vec<Quantity>,
    pub discrepancies: Vec<Discrepancy>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<Skip>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<Timing>>,
}

impl RunReport {
    pub fn new(command: &str, spec: Option<Value>, timings: bool) -> Self {
        RunReport {
            schema: SCHEMA.into(),
            command: command.into(),
            spec,
            values: Vec::new(),
            discrepancies: Vec::new(),
            skipped: Vec::new(),
            timings: timings.then(Vec::new),
        }
    }

    pub fn push(&mut self, name: &str, value: impl Serialize, method: Method) {
        self.push_checked(name, value, method, None);
    }

    pub fn push_checked(&mut self, name: &str, value: impl Serialize, method: Method, verified: Option<bool>) {
        self.values.push(Quantity {
            name: name.into(),
            value: serde_json::to_value(value).expect("report values serialize"),
            method,
            verified,
        });
    }

    pub fn discrepancy(
        &mut self,
        quantity: &str,
        point: Value,
        expected: impl Serialize,
        found: impl Serialize,
        note: &str,
    ) {
        self.discrepancies.push(Discrepancy {
            quantity: quantity.into(),
            point,
            expected: serde_json::to_value(expected).expect("serialize"),
            found: serde_json::to_value(found).expect("serialize"),
            note: note.into(),
        });
    }

    /// Run `f`, recording its wall time when timings are on.
    pub fn timed<T>(&mut self, step: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if let Some(t) = self.timings.as_mut() {
            t.push(Timing { step: step.into(), millis: start.elapsed().as_secs_f64() * 1e3 });
        }
        out
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.values.iter().find(|q| q.name == name).map(|q| &q.value)
    }

    /// 0 when clean, 2 when any discrepancy was recorded.
    pub fn exit_code(&self) -> i32 {
        if self.discrepancies.is_empty() {
            0
        } else {
            2
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command  {}", self.command);
        if let Some(spec) = &self.spec {
            let _ = writeln!(out, "spec     {}", compact(spec));
        }
        let width = self.values.iter().map(|q| q.name.len()).max().unwrap_or(0);
        for q in &self.values {
            let status = match q.verified {
                Some(true) => "  verified",
                Some(false) => "  MISMATCH",
                None => "",
            };
            let _ = writeln!(out, "{:width$}  {}  [{}]{}", q.name, compact(&q.value), q.method.tag(), status);
        }
        for d in &self.discrepancies {
            let _ = writeln!(
                out,
                "discrepancy  {} at {}: expected {}, found {}{}",
                d.quantity,
                compact(&d.point),
                compact(&d.expected),
                compact(&d.found),
                if d.note.is_empty() { String::new() } else { format!(" ({})", d.note) }
            );
        }
        for s in &self.skipped {
            let _ = writeln!(out, "skipped  {}: {}", compact(&s.point), s.reason);
        }
        if let Some(ts) = &self.timings {
            for t in ts {
                let _ = writeln!(out, "time  {}  {:.3} ms", t.step, t.millis);
            }
        }
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
