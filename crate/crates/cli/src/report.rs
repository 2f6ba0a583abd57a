use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

/// Bumped whenever a report field changes meaning or disappears.
pub const SCHEMA_VERSION: u32 = 1;

/// One named comparison of an expected value against a computed one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl ToString, computed: impl ToString) -> Self {
        let expected = expected.to_string();
        let computed = computed.to_string();
        let passed = expected == computed;
        Check { name: name.into(), expected, computed, passed }
    }

    /// A check whose outcome is decided by the caller.
    pub fn with_outcome(name: impl Into<String>, expected: impl ToString, computed: impl ToString, passed: bool) -> Self {
        Check { name: name.into(), expected: expected.to_string(), computed: computed.to_string(), passed }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub data: Value,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            checks: Vec::new(),
            notes: Vec::new(),
            data: Value::Null,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn passed(&self) -> usize {
        self.checks.len() - self.failed()
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed() == 0 {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} (schema v{})", self.command, self.schema_version).unwrap();
        for n in &self.notes {
            writeln!(out, "  note: {n}").unwrap();
        }
        if !self.checks.is_empty() {
            let w_name = self.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0).max(5);
            let w_exp = self.checks.iter().map(|c| c.expected.chars().count()).max().unwrap_or(0).max(8);
            writeln!(out, "  {:<6} {:<w_name$}  {:<w_exp$}  COMPUTED", "STATUS", "CHECK", "EXPECTED").unwrap();
            for c in &self.checks {
                let status = if c.passed { "pass" } else { "FAIL" };
                writeln!(out, "  {:<6} {:<w_name$}  {:<w_exp$}  {}", status, c.name, c.expected, c.computed).unwrap();
            }
        }
        writeln!(out, "{} passed, {} failed", self.passed(), self.failed()).unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_follows_failures() {
        let mut r = Report::new("t");
        r.push(Check::new("a", 1, 1));
        assert_eq!(r.exit_code(), 0);
        r.push(Check::new("b", 1, 2));
        assert_eq!(r.exit_code(), 1);
        assert!(r.render_table().contains("FAIL   b"));
        assert!(r.to_json().contains("\"schema_version\": 1"));
    }
}
