//! Structured pass/fail records produced by every validator.

use serde::Serialize;

/// One named check with the locus of its first counterexample on failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub locus: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: true,
            locus: None,
        });
    }

    pub fn fail(&mut self, name: impl Into<String>, locus: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: false,
            locus: Some(locus.into()),
        });
    }

    /// Records `Ok` as a pass and `Err(locus)` as a failure.
    pub fn record(&mut self, name: impl Into<String>, outcome: Result<(), String>) {
        match outcome {
            Ok(()) => self.pass(name),
            Err(locus) => self.fail(name, locus),
        }
    }

    /// Appends `other`'s checks, prefixing their names with `prefix/`.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            if !prefix.is_empty() {
                c.name = format!("{prefix}/{}", c.name);
            }
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.failures().next()
    }

    /// The first check whose name ends with `suffix`.
    pub fn find(&self, suffix: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name.ends_with(suffix))
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

impl std::fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            match &c.locus {
                None => writeln!(f, "[pass] {}", c.name)?,
                Some(l) if c.passed => writeln!(f, "[pass] {} ({l})", c.name)?,
                Some(l) => writeln!(f, "[FAIL] {} at {l}", c.name)?,
            }
        }
        Ok(())
    }
}
