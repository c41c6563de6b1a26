//! Check records and their JSON / CSV / aligned-text renderings.

use serde::{Deserialize, Serialize};

/// One verified (or abstained) statement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
    pub pass: bool,
    #[serde(default)]
    pub abstained: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certifications: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, inputs: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            inputs: inputs.into(),
            expected: String::new(),
            actual: String::new(),
            bound: None,
            pass: false,
            abstained: false,
            certifications: Vec::new(),
        }
    }

    /// Passes iff `expected == actual`.
    pub fn equal<T: PartialEq + ToString>(name: impl Into<String>, inputs: impl Into<String>, expected: T, actual: T) -> Self {
        let mut c = Check::new(name, inputs);
        c.pass = expected == actual;
        c.expected = expected.to_string();
        c.actual = actual.to_string();
        c
    }

    pub fn holds(name: impl Into<String>, inputs: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        let mut c = Check::new(name, inputs);
        c.pass = pass;
        c.expected = "true".into();
        c.actual = detail.into();
        c
    }

    pub fn abstain(name: impl Into<String>, inputs: impl Into<String>, reason: impl Into<String>) -> Self {
        let mut c = Check::new(name, inputs);
        c.abstained = true;
        c.actual = reason.into();
        c
    }

    pub fn with_certification(mut self, cert: impl Into<String>) -> Self {
        self.certifications.push(cert.into());
        self
    }

    pub fn with_bound(mut self, bound: impl Into<String>) -> Self {
        self.bound = Some(bound.into());
        self
    }

    pub fn failed(&self) -> bool {
        !self.pass && !self.abstained
    }

    pub fn status(&self) -> &'static str {
        if self.abstained {
            "ABSTAIN"
        } else if self.pass {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub abstained: usize,
}

/// A named collection of checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
    #[serde(default)]
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            checks: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
        self.refresh();
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
        self.refresh();
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.extend(other.checks);
    }

    fn refresh(&mut self) {
        let abstained = self.checks.iter().filter(|c| c.abstained).count();
        let passed = self.checks.iter().filter(|c| c.pass && !c.abstained).count();
        self.summary = Summary {
            total: self.checks.len(),
            passed,
            failed: self.checks.len() - passed - abstained,
            abstained,
        };
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.failed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "suite", "name", "inputs", "expected", "actual", "bound", "status", "certifications",
        ])
        .expect("in-memory csv");
        for c in &self.checks {
            w.write_record([
                self.suite.as_str(),
                &c.name,
                &c.inputs,
                &c.expected,
                &c.actual,
                c.bound.as_deref().unwrap_or(""),
                c.status(),
                &c.certifications.join(";"),
            ])
            .expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_table(&self) -> String {
        let header = ["check", "inputs", "expected", "actual", "status"];
        let rows: Vec<[String; 5]> = self
            .checks
            .iter()
            .map(|c| {
                [
                    c.name.clone(),
                    c.inputs.clone(),
                    match &c.bound {
                        Some(b) if !c.expected.contains(b.as_str()) => format!("{} (bound {b})", c.expected),
                        _ => c.expected.clone(),
                    },
                    c.actual.clone(),
                    c.status().to_string(),
                ]
            })
            .collect();
        let mut widths = header.map(str::len);
        for r in &rows {
            for (w, cell) in widths.iter_mut().zip(r) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let line = |cells: &[&str], out: &mut String| {
            let parts: Vec<String> = cells
                .iter()
                .zip(widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            out.push_str(parts.join("  ").trim_end());
            out.push('\n');
        };
        out.push_str(&format!("suite: {}\n", self.suite));
        line(&header, &mut out);
        for r in &rows {
            let cells: Vec<&str> = r.iter().map(String::as_str).collect();
            line(&cells, &mut out);
        }
        let s = self.summary;
        out.push_str(&format!(
            "summary: {} checks, {} passed, {} failed, {} abstained\n",
            s.total, s.passed, s.failed, s.abstained
        ));
        out
    }
}
