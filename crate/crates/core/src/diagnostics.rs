//! Named pass/fail checks with capped counterexample lists.

use std::fmt;

/// Counterexamples kept per check.
pub const MAX_WITNESSES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub failure_count: usize,
    /// The first [`MAX_WITNESSES`] counterexamples, in evaluation order.
    pub witnesses: Vec<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
}

impl Diagnostics {
    pub fn new() -> Self {
        Self::default()
    }

    fn slot(&mut self, name: &str) -> &mut Check {
        if let Some(i) = self.checks.iter().rposition(|c| c.name == name) {
            return &mut self.checks[i];
        }
        self.checks.push(Check { name: name.to_string(), failure_count: 0, witnesses: Vec::new() });
        self.checks.last_mut().unwrap()
    }

    /// Registers `name` so it is reported even if it never fails.
    pub fn ensure(&mut self, name: &str) {
        self.slot(name);
    }

    /// Records one evaluation of check `name`. The witness is only built
    /// on failure.
    pub fn record(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> String) {
        let c = self.slot(name);
        if !ok {
            c.failure_count += 1;
            if c.witnesses.len() < MAX_WITNESSES {
                c.witnesses.push(witness());
            }
        }
    }

    pub fn warn(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// Appends every check of `other`, prefixing names.
    pub fn absorb(&mut self, prefix: &str, other: Diagnostics) {
        for c in other.checks {
            let name = format!("{prefix}{}", c.name);
            let slot = self.slot(&name);
            slot.failure_count += c.failure_count;
            for w in c.witnesses {
                if slot.witnesses.len() < MAX_WITNESSES {
                    slot.witnesses.push(w);
                }
            }
        }
        self.warnings.extend(other.warnings);
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.passed() {
                writeln!(f, "PASS {}", c.name)?;
            } else {
                writeln!(f, "FAIL {} ({} failures)", c.name, c.failure_count)?;
                for w in &c.witnesses {
                    writeln!(f, "  {w}")?;
                }
            }
        }
        for w in &self.warnings {
            writeln!(f, "WARN {w}")?;
        }
        Ok(())
    }
}
