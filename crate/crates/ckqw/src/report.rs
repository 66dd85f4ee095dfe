use serde::Serialize;
use serde_json::{Map, Value};

/// How the residual decides the outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    /// Pass when the residual is at most the tolerance.
    AtMost,
    /// Pass when the residual exceeds the tolerance (negative controls).
    Above,
}

/// One line of a verification run.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check: String,
    #[serde(flatten)]
    pub inputs: Map<String, Value>,
    pub residual: f64,
    pub tolerance: f64,
    pub expect: Expect,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

impl Report {
    pub fn new(check: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Report {
            check: check.into(),
            inputs: Map::new(),
            residual,
            tolerance,
            expect: Expect::AtMost,
            pass: residual <= tolerance,
            detail: None,
            wall_ms: None,
        }
    }

    /// A negative control: passes when the residual is above `threshold`.
    pub fn control(check: impl Into<String>, residual: f64, threshold: f64) -> Self {
        let mut r = Report::new(check, residual, threshold);
        r.expect = Expect::Above;
        r.pass = residual > threshold;
        r
    }

    /// A check whose outcome is a yes/no fact; the residual is 0 or 1.
    pub fn flag(check: impl Into<String>, ok: bool) -> Self {
        Report::new(check, if ok { 0.0 } else { 1.0 }, 0.0)
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn detail(mut self, text: impl Into<String>) -> Self {
        self.detail = Some(text.into());
        self
    }

    /// Replaces `pass` by `pass && ok`, e.g. for a side condition.
    pub fn require(mut self, ok: bool) -> Self {
        self.pass &= ok;
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }

    /// Inputs rendered as `k=v` pairs in key order.
    pub fn inputs_text(&self) -> String {
        self.inputs
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Deterministic ordering key: check id, then inputs.
    pub fn sort_key(&self) -> (String, String) {
        (self.check.clone(), serde_json::to_string(&self.inputs).expect("plain data"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let r = Report::new("frt.qybe", 1e-15, 1e-10).input("signature", "n,1").input("v", "0.37");
        let s = r.to_json_line();
        assert!(s.starts_with(r#"{"check":"frt.qybe","signature":"n,1","v":"0.37","residual":1e-15"#));
        assert!(s.contains(r#""pass":true"#));
        assert!(!s.contains("wall_ms"));
    }

    #[test]
    fn control_inverts() {
        assert!(Report::control("x", 0.3, 1e-6).pass);
        assert!(!Report::control("x", 1e-12, 1e-6).pass);
    }
}
