//! Validation reports. Every validator in this crate returns one of these
//! instead of failing fast, so a caller sees all broken laws at once, each
//! with a concrete witness.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Name of the law that failed, e.g. "associativity".
    pub law: String,
    /// The concrete elements exhibiting the failure.
    pub witness: String,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub context: String,
    pub checked: Vec<String>,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new(context: impl Into<String>) -> Self {
        Report { context: context.into(), checked: Vec::new(), violations: Vec::new() }
    }

    /// Record that a law was checked (whether or not it also gets violations).
    pub fn law(&mut self, law: &str) {
        if !self.checked.iter().any(|c| c == law) {
            self.checked.push(law.to_string());
        }
    }

    pub fn violation(&mut self, law: &str, witness: impl Into<String>) {
        self.law(law);
        self.violations.push(Violation { law: law.to_string(), witness: witness.into() });
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Merge a sub-report, prefixing its law names for context.
    pub fn absorb(&mut self, prefix: &str, sub: Report) {
        for law in sub.checked {
            self.law(&format!("{prefix}: {law}"));
        }
        for v in sub.violations {
            self.violations.push(Violation {
                law: format!("{prefix}: {}", v.law),
                witness: v.witness,
            });
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.context, if self.is_valid() { "valid" } else { "INVALID" })?;
        for law in &self.checked {
            let bad: Vec<_> = self.violations.iter().filter(|v| &v.law == law).collect();
            if bad.is_empty() {
                writeln!(f, "  ok: {law}")?;
            } else {
                for v in bad {
                    writeln!(f, "  VIOLATION {}: {}", v.law, v.witness)?;
                }
            }
        }
        Ok(())
    }
}
