//! Structured verification reports.
//!
//! Every verification suite produces a [`VerificationReport`]: a named list of
//! checks with expected/actual values, deviations, tolerances and pass flags,
//! serialized as JSON under a versioned schema. Serialization is deterministic:
//! struct field order is fixed, `params` maps are sorted, and floats use
//! shortest round-trip formatting. Wall-clock timing is excluded unless
//! explicitly requested so that repeated runs are byte-identical.

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Schema version stamped into every report for golden-file stability.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationCase {
    pub name: String,
    pub params: Value,
    pub expected: f64,
    pub actual: f64,
    pub max_abs_dev: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationSummary {
    pub passed: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub suite: String,
    /// Convention notes attached by the suite (e.g. raising/lowering labels).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub cases: Vec<VerificationCase>,
    pub summary: VerificationSummary,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            schema: REPORT_SCHEMA_VERSION,
            suite: suite.into(),
            notes: Vec::new(),
            cases: Vec::new(),
            summary: VerificationSummary {
                passed: 0,
                failed: 0,
                wall_time_ms: None,
            },
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Record a check of `actual` against `expected` with an absolute tolerance
    /// on the deviation.
    pub fn check_abs(
        &mut self,
        name: impl Into<String>,
        params: Value,
        expected: f64,
        actual: f64,
        tol: f64,
    ) -> bool {
        let dev = (actual - expected).abs();
        let rel = if expected != 0.0 {
            dev / expected.abs()
        } else {
            dev
        };
        self.push(name, params, expected, actual, dev, rel, tol, dev <= tol)
    }

    /// Record a check of `actual` against `expected` with a relative tolerance.
    pub fn check_rel(
        &mut self,
        name: impl Into<String>,
        params: Value,
        expected: f64,
        actual: f64,
        tol: f64,
    ) -> bool {
        let dev = (actual - expected).abs();
        let rel = if expected != 0.0 {
            dev / expected.abs()
        } else {
            dev
        };
        self.push(name, params, expected, actual, dev, rel, tol, rel <= tol)
    }

    /// Record a residual-style check: the quantity itself must not exceed `tol`.
    pub fn check_residual(
        &mut self,
        name: impl Into<String>,
        params: Value,
        residual: f64,
        tol: f64,
    ) -> bool {
        self.push(
            name,
            params,
            0.0,
            residual,
            residual.abs(),
            residual.abs(),
            tol,
            residual.abs() <= tol,
        )
    }

    /// Record an exact structural check (integer equality, rank equality).
    pub fn check_exact(
        &mut self,
        name: impl Into<String>,
        params: Value,
        expected: f64,
        actual: f64,
    ) -> bool {
        let dev = (actual - expected).abs();
        self.push(name, params, expected, actual, dev, dev, 0.0, dev == 0.0)
    }

    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        name: impl Into<String>,
        params: Value,
        expected: f64,
        actual: f64,
        max_abs_dev: f64,
        rel_err: f64,
        tol: f64,
        pass: bool,
    ) -> bool {
        self.cases.push(VerificationCase {
            name: name.into(),
            params,
            expected,
            actual,
            max_abs_dev,
            rel_err,
            tol,
            pass,
        });
        if pass {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
        }
        pass
    }

    /// Append all cases of `other`, prefixing their names with `prefix/`.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for mut case in other.cases {
            case.name = format!("{prefix}/{}", case.name);
            if case.pass {
                self.summary.passed += 1;
            } else {
                self.summary.failed += 1;
            }
            self.cases.push(case);
        }
        for note in other.notes {
            self.notes.push(format!("{prefix}: {note}"));
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Fixed-width float formatting for CSV output: 17 significant digits,
/// scientific notation, locale-independent.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_counts_match_cases() {
        let mut rep = VerificationReport::new("demo");
        rep.check_abs("a", serde_json::json!({}), 1.0, 1.0 + 1e-14, 1e-12);
        rep.check_abs("b", serde_json::json!({}), 1.0, 2.0, 1e-12);
        assert_eq!(rep.summary.passed, 1);
        assert_eq!(rep.summary.failed, 1);
        assert!(!rep.all_passed());
    }

    #[test]
    fn json_roundtrip_and_no_timing_by_default() {
        let mut rep = VerificationReport::new("demo");
        rep.check_rel("a", serde_json::json!({"n": 2}), -2.0, -2.0, 1e-12);
        let s = rep.to_json();
        assert!(!s.contains("wall_time_ms"));
        let back: VerificationReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back.suite, "demo");
        assert_eq!(back.cases.len(), 1);
    }

    #[test]
    fn fmt_is_17_significant_digits() {
        assert_eq!(fmt_f64(-2.0), "-2.0000000000000000e0");
        assert_eq!(fmt_f64(0.1), "1.0000000000000001e-1");
    }
}
