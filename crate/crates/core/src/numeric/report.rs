use serde::{Deserialize, Serialize};

/// One failing trial. `seed` alone reproduces it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub seed: u64,
    pub alpha: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub trials: usize,
    pub failures: Vec<Failure>,
    /// Whether the comparison was exact (rational) rather than floating point.
    pub exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slope: Option<f64>,
    /// Trials whose remainder vanished identically; reported, not failed.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub degenerate: usize,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

impl VerificationReport {
    pub fn new(identity: impl Into<String>, exact: bool) -> Self {
        VerificationReport {
            identity: identity.into(),
            trials: 0,
            failures: Vec::new(),
            exact,
            slope: None,
            degenerate: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records one trial outcome; `Err(detail)` is a failure.
    pub fn record(&mut self, seed: u64, alpha: impl ToString, outcome: Result<(), String>) {
        self.trials += 1;
        if let Err(detail) = outcome {
            self.failures.push(Failure {
                seed,
                alpha: alpha.to_string(),
                detail,
            });
        }
    }

    /// Folds another report on the same identity into this one.
    pub fn merge(&mut self, other: VerificationReport) {
        debug_assert_eq!(self.identity, other.identity);
        self.trials += other.trials;
        self.failures.extend(other.failures);
        self.exact &= other.exact;
        self.degenerate += other.degenerate;
        self.slope = match (self.slope, other.slope) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
    }

    /// One line: `PASS identity (n trials)` or `FAIL identity (k/n failed)`.
    pub fn summary(&self) -> String {
        let mut s = if self.passed() {
            format!("PASS {} ({} trials", self.identity, self.trials)
        } else {
            format!(
                "FAIL {} ({}/{} failed",
                self.identity,
                self.failures.len(),
                self.trials
            )
        };
        if let Some(slope) = self.slope {
            s.push_str(&format!(", min slope {slope:.3}"));
        }
        if self.degenerate > 0 {
            s.push_str(&format!(", {} degenerate", self.degenerate));
        }
        s.push(')');
        s
    }
}
