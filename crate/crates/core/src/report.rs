//! Structured pass/fail records for identity checks.

use std::fmt;

use serde_json::{json, Map, Value};

/// One evaluated identity instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    /// Which identity, e.g. `"qsystem"` or `"gl3-relation-2"`.
    pub identity: String,
    /// Integer parameters of the instance, in canonical order.
    pub instance: Vec<(String, i64)>,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerificationReport {
    checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `lhs == rhs`.
    pub fn record<T: PartialEq + fmt::Display>(
        &mut self,
        identity: &str,
        instance: &[(&str, i64)],
        lhs: &T,
        rhs: &T,
    ) -> bool {
        let pass = lhs == rhs;
        self.push(Check {
            identity: identity.to_string(),
            instance: instance.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            pass,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
        pass
    }

    /// Records a boolean property; `witness` describes the evaluated value.
    pub fn record_property(
        &mut self,
        identity: &str,
        instance: &[(&str, i64)],
        pass: bool,
        witness: impl fmt::Display,
    ) -> bool {
        self.push(Check {
            identity: identity.to_string(),
            instance: instance.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            pass,
            lhs: witness.to_string(),
            rhs: "true".to_string(),
        });
        pass
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn total(&self) -> usize {
        self.checks.len()
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// `{"checks":[...],"summary":{"total":n,"pass":n}}`.
    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut inst = Map::new();
                for (k, v) in &c.instance {
                    inst.insert(k.clone(), json!(v));
                }
                json!({
                    "identity": c.identity,
                    "instance": inst,
                    "pass": c.pass,
                    "lhs": c.lhs,
                    "rhs": c.rhs,
                })
            })
            .collect();
        json!({
            "checks": checks,
            "summary": {"total": self.total(), "pass": self.passed()},
        })
    }

    pub fn summary_line(&self) -> String {
        format!("{} checks, {} pass", self.total(), self.passed())
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let inst: Vec<String> = c.instance.iter().map(|(k, v)| format!("{k}={v}")).collect();
            if c.pass {
                writeln!(f, "PASS {} {}", c.identity, inst.join(" "))?;
            } else {
                writeln!(
                    f,
                    "FAIL {} {}: lhs = {}, rhs = {}",
                    c.identity,
                    inst.join(" "),
                    c.lhs,
                    c.rhs
                )?;
            }
        }
        write!(f, "{}", self.summary_line())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_json_shape() {
        let mut r = VerificationReport::new();
        assert!(r.record("id", &[("k", 1)], &3, &3));
        assert!(!r.record("id", &[("k", 2)], &3, &4));
        assert_eq!((r.total(), r.passed()), (2, 1));
        assert!(!r.all_pass());
        let v = r.to_json();
        assert_eq!(v["summary"]["total"], 2);
        assert_eq!(v["checks"][1]["lhs"], "3");
        assert_eq!(v["checks"][1]["instance"]["k"], 2);
        assert!(r.to_string().ends_with("2 checks, 1 pass"));
        assert!(VerificationReport::new().all_pass());
    }
}
