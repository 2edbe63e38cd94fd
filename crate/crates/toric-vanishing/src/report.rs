//! Machine-readable verification reports.
//!
//! Every harness run produces a [`VerificationReport`]: the suite name, a
//! fingerprint of the fan it ran on, the parameters used, and one
//! [`Check`] per claim with a pass/fail status and a witness sufficient to
//! re-run that claim in isolation.  Reports serialize to JSON; the
//! [canonical form](VerificationReport::canonical_json) drops timing so
//! that identically-seeded runs compare byte-for-byte.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Outcome of a single claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// One verified claim: a stable id, its status, and a witness.  For failing
/// checks the witness pins down the offending degree, cone, or dimension;
/// for passing checks it records what was actually verified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub status: CheckStatus,
    pub witness: String,
}

impl Check {
    pub fn pass(id: &str, witness: impl Into<String>) -> Check {
        Check { id: id.into(), status: CheckStatus::Pass, witness: witness.into() }
    }

    pub fn fail(id: &str, witness: impl Into<String>) -> Check {
        Check { id: id.into(), status: CheckStatus::Fail, witness: witness.into() }
    }

    /// Pass/fail from a condition, with one witness for each side.
    pub fn verdict(id: &str, ok: bool, pass_witness: impl Into<String>, fail_witness: impl Into<String>) -> Check {
        if ok {
            Check::pass(id, pass_witness)
        } else {
            Check::fail(id, fail_witness)
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// A complete run record.  `params` is free-form JSON (prime, divisor
/// coefficients, seed, sample counts) so different suites can record
/// different inputs without schema churn.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub fan_fingerprint: String,
    pub params: serde_json::Value,
    pub checks: Vec<Check>,
    pub status: CheckStatus,
    pub timing_ms: u64,
}

impl VerificationReport {
    /// Assembles a report; the overall status is `pass` exactly when every
    /// check passed.
    pub fn from_checks(
        suite: &str,
        fan_fingerprint: String,
        params: serde_json::Value,
        checks: Vec<Check>,
        timing_ms: u64,
    ) -> VerificationReport {
        let status = if checks.iter().all(Check::passed) {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        VerificationReport {
            suite: suite.into(),
            fan_fingerprint,
            params,
            checks,
            status,
            timing_ms,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    /// Full JSON, timing included.
    pub fn to_json_string(&self) -> Result<String> {
        serde_json::to_string_pretty(self)
            .map_err(|e| Error::Internal(format!("report serialization failed: {e}")))
    }

    /// Compact JSON with timing removed: two runs with the same inputs and
    /// seed must agree on this string byte for byte.
    pub fn canonical_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Canonical<'a> {
            suite: &'a str,
            fan_fingerprint: &'a str,
            params: &'a serde_json::Value,
            checks: &'a [Check],
            status: CheckStatus,
        }
        let shadow = Canonical {
            suite: &self.suite,
            fan_fingerprint: &self.fan_fingerprint,
            params: &self.params,
            checks: &self.checks,
            status: self.status,
        };
        serde_json::to_string(&shadow)
            .map_err(|e| Error::Internal(format!("report serialization failed: {e}")))
    }

    /// Human-readable rendering: one line per check, then a verdict.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("suite: {}\n", self.suite));
        out.push_str(&format!("fan:   {}\n", self.fan_fingerprint));
        out.push_str(&format!("params: {}\n", self.params));
        for c in &self.checks {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("  [{tag}] {:<32} {}\n", c.id, c.witness));
        }
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        out.push_str(&format!("status: {verdict} ({} ms)\n", self.timing_ms));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(timing: u64) -> VerificationReport {
        VerificationReport::from_checks(
            "bott",
            "abc123".into(),
            serde_json::json!({"prime": 3, "seed": 42}),
            vec![
                Check::pass("higher-vanishing", "h = [6, 0, 0]"),
                Check::pass("ample-certificate", "coeffs [0, 0, 1]"),
            ],
            timing,
        )
    }

    #[test]
    fn status_aggregates_checks() {
        assert!(sample(5).passed());
        let failing = VerificationReport::from_checks(
            "bott",
            "abc123".into(),
            serde_json::json!({}),
            vec![Check::pass("a", ""), Check::fail("b", "h^1 = 2 at degree (0, -1)")],
            5,
        );
        assert!(!failing.passed());
        assert_eq!(failing.status, CheckStatus::Fail);
    }

    #[test]
    fn canonical_json_is_timing_independent_and_ordered() {
        let a = sample(5).canonical_json().unwrap();
        let b = sample(99999).canonical_json().unwrap();
        assert_eq!(a, b);
        // Field order is fixed by declaration order; frozen here so any
        // accidental schema change is caught.
        assert_eq!(
            a,
            "{\"suite\":\"bott\",\"fan_fingerprint\":\"abc123\",\
             \"params\":{\"prime\":3,\"seed\":42},\
             \"checks\":[\
             {\"id\":\"higher-vanishing\",\"status\":\"pass\",\"witness\":\"h = [6, 0, 0]\"},\
             {\"id\":\"ample-certificate\",\"status\":\"pass\",\"witness\":\"coeffs [0, 0, 1]\"}],\
             \"status\":\"pass\"}"
        );
    }

    #[test]
    fn json_round_trip() {
        let r = sample(7);
        let s = r.to_json_string().unwrap();
        let back: VerificationReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert!(s.contains("\"timing_ms\": 7"));
    }

    #[test]
    fn text_rendering_flags_failures() {
        let r = VerificationReport::from_checks(
            "kv",
            "f".into(),
            serde_json::json!({}),
            vec![Check::fail("kv-vanishing", "h^1 = 1")],
            0,
        );
        let text = r.render_text();
        assert!(text.contains("[FAIL] kv-vanishing"));
        assert!(text.contains("status: FAIL"));
    }
}
