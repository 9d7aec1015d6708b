//! Machine-readable command reports: a named list of check verdicts plus the
//! inputs that produced them. Verdict names are unique within a report.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "status", content = "value")]
pub enum Outcome {
    Pass,
    Fail,
    Value(Value),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub verdicts: Vec<Verdict>,
    pub artifacts: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, inputs: Value) -> Report {
        Report { command: command.into(), inputs, verdicts: Vec::new(), artifacts: Vec::new() }
    }

    fn push(&mut self, name: &str, outcome: Outcome) {
        assert!(
            self.verdicts.iter().all(|v| v.name != name),
            "duplicate verdict name {name:?}"
        );
        self.verdicts.push(Verdict { name: name.to_string(), outcome });
    }

    pub fn add_check(&mut self, name: &str, pass: bool) {
        self.push(name, if pass { Outcome::Pass } else { Outcome::Fail });
    }

    pub fn add_value(&mut self, name: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("verdict value serializes");
        self.push(name, Outcome::Value(v));
    }

    pub fn add_artifact(&mut self, path: impl Into<String>) {
        self.artifacts.push(path.into());
    }

    pub fn all_checks_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.outcome != Outcome::Fail)
    }

    /// 0 when every check passed, 1 otherwise (2 is reserved for usage and
    /// parse errors at the CLI boundary).
    pub fn exit_code(&self) -> i32 {
        if self.all_checks_pass() {
            0
        } else {
            1
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {}\n", self.command));
        for v in &self.verdicts {
            let line = match &v.outcome {
                Outcome::Pass => format!("PASS  {}", v.name),
                Outcome::Fail => format!("FAIL  {}", v.name),
                Outcome::Value(val) => format!("      {} = {}", v.name, val),
            };
            out.push_str(&line);
            out.push('\n');
        }
        for a in &self.artifacts {
            out.push_str(&format!("wrote {a}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_names_are_unique() {
        let mut r = Report::new("demo", serde_json::json!({}));
        r.add_check("a", true);
        r.add_value("b", 3);
        assert!(r.all_checks_pass());
        assert_eq!(r.exit_code(), 0);
        r.add_check("c", false);
        assert_eq!(r.exit_code(), 1);
        let res = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
            r.add_check("a", true);
        }));
        assert!(res.is_err());
    }
}
