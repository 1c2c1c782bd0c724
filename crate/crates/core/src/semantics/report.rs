//! Pass/fail reports with witnesses, rendered as text or JSON lines.

use std::fmt;

use serde_json::json;

/// One checked property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    /// How many instances were evaluated before stopping.
    pub checked: usize,
    /// A concrete falsifying assignment, in step-function literal syntax.
    pub witness: Option<String>,
}

/// A list of outcomes for one subject (a theory or a check family) over one
/// lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub subject: String,
    pub lattice: String,
    pub outcomes: Vec<CheckOutcome>,
    /// Free-form qualifications, such as the parameter cap used.
    pub notes: Vec<String>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }

    pub fn outcome(&self, name: &str) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }

    pub fn passed_count(&self) -> usize {
        self.outcomes.iter().filter(|o| o.passed).count()
    }

    /// One JSON object per outcome followed by a summary object.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for o in &self.outcomes {
            let line = json!({
                "subject": self.subject,
                "lattice": self.lattice,
                "name": o.name,
                "status": if o.passed { "PASS" } else { "FAIL" },
                "checked": o.checked,
                "witness": o.witness,
            });
            out.push_str(&line.to_string());
            out.push('\n');
        }
        let summary = json!({
            "summary": true,
            "subject": self.subject,
            "lattice": self.lattice,
            "total": self.outcomes.len(),
            "passed": self.passed_count(),
            "failed": self.outcomes.len() - self.passed_count(),
            "notes": self.notes,
        });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            if o.passed {
                writeln!(
                    f,
                    "PASS {} [{}] checked={}",
                    o.name, self.lattice, o.checked
                )?;
            } else {
                let w = o.witness.as_deref().unwrap_or("-");
                writeln!(f, "FAIL {} [{}] witness: {}", o.name, self.lattice, w)?;
            }
        }
        writeln!(f, "summary")?;
        writeln!(f, "  subject: {}", self.subject)?;
        writeln!(f, "  lattice: {}", self.lattice)?;
        writeln!(f, "  total: {}", self.outcomes.len())?;
        writeln!(f, "  passed: {}", self.passed_count())?;
        writeln!(f, "  failed: {}", self.outcomes.len() - self.passed_count())?;
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
