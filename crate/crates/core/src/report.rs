//! Check reports shared by every verification routine.
//!
//! A `Check` row is asserted: it passes or fails against a bound. A `Finding`
//! row records a measured value (typically a discrepancy against a reference
//! closed form) and never counts as a failure.

use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    /// Pass when `value <= bound`.
    AtMost(f64),
    /// Pass when `value > bound`.
    Above(f64),
}

impl Bound {
    pub fn admits(self, value: f64) -> bool {
        match self {
            Bound::AtMost(b) => value <= b,
            Bound::Above(b) => value > b,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RowKind {
    Check { bound: Bound, passed: bool },
    Finding { note: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub name: String,
    pub value: f64,
    pub kind: RowKind,
}

impl ReportRow {
    pub fn is_check(&self) -> bool {
        matches!(self.kind, RowKind::Check { .. })
    }

    /// `Some(pass)` for check rows, `None` for findings.
    pub fn passed(&self) -> Option<bool> {
        match self.kind {
            RowKind::Check { passed, .. } => Some(passed),
            RowKind::Finding { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CheckReport {
    pub title: String,
    pub rows: Vec<ReportRow>,
}

impl CheckReport {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            rows: Vec::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, value: f64, bound: Bound) -> &mut Self {
        let passed = bound.admits(value);
        self.rows.push(ReportRow {
            name: name.into(),
            value,
            kind: RowKind::Check { bound, passed },
        });
        self
    }

    /// Residual that must be exactly zero.
    pub fn check_exact(&mut self, name: impl Into<String>, residual: f64) -> &mut Self {
        self.check(name, residual, Bound::AtMost(0.0))
    }

    pub fn check_at_most(&mut self, name: impl Into<String>, residual: f64, tol: f64) -> &mut Self {
        self.check(name, residual, Bound::AtMost(tol))
    }

    pub fn finding(
        &mut self,
        name: impl Into<String>,
        value: f64,
        note: impl Into<String>,
    ) -> &mut Self {
        self.rows.push(ReportRow {
            name: name.into(),
            value,
            kind: RowKind::Finding { note: note.into() },
        });
        self
    }

    pub fn extend(&mut self, other: CheckReport) -> &mut Self {
        self.rows.extend(other.rows);
        self
    }

    /// True when every check row passed. Findings are ignored.
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed() != Some(false))
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| r.passed() == Some(false))
    }

    pub fn get(&self, name: &str) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.name == name)
    }

    pub fn checks(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| r.is_check())
    }

    pub fn findings(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| !r.is_check())
    }

    /// Plain-text rendering, one line per row.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        if !self.title.is_empty() {
            let _ = writeln!(out, "# {}", self.title);
        }
        for row in &self.rows {
            match &row.kind {
                RowKind::Check { bound, passed } => {
                    let verdict = if *passed { "pass" } else { "FAIL" };
                    let bound = match bound {
                        Bound::AtMost(b) => format!("<= {b:e}"),
                        Bound::Above(b) => format!("> {b:e}"),
                    };
                    let _ = writeln!(
                        out,
                        "CHECK {}: {} (value {:.6e}, required {})",
                        row.name, verdict, row.value, bound
                    );
                }
                RowKind::Finding { note } => {
                    let _ = writeln!(out, "FINDING {}: {:.6e} ({})", row.name, row.value, note);
                }
            }
        }
        out
    }
}
