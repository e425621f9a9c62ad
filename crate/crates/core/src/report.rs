//! Structured results of the identity verifiers.

use std::fmt;

use serde_json::{json, Value};

use crate::series::{Rational, Series};
use crate::trees::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Mismatch,
    PreconditionFailed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Mismatch => "FAIL",
            Status::PreconditionFailed => "PRECONDITION FAILED",
        }
    }
}

/// The first disagreeing coefficient of a failed comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub context: String,
    pub monomial: Monomial,
    pub left: Rational,
    pub right: Rational,
}

/// A labelled side-by-side value pair, used by reports that compare
/// per-orbit values rather than whole series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub label: String,
    pub left: Rational,
    pub right: Rational,
}

impl Entry {
    pub fn matches(&self) -> bool {
        self.left == self.right
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub check: String,
    pub status: Status,
    pub precision: usize,
    pub comparisons: usize,
    pub first_mismatch: Option<Discrepancy>,
    pub left_name: String,
    pub right_name: String,
    pub entries: Vec<Entry>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(check: impl Into<String>, precision: usize) -> Self {
        Report {
            check: check.into(),
            status: Status::Pass,
            precision,
            comparisons: 0,
            first_mismatch: None,
            left_name: "left".into(),
            right_name: "right".into(),
            entries: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn sides(mut self, left: &str, right: &str) -> Self {
        self.left_name = left.into();
        self.right_name = right.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Compares two series to their shared precision.
    pub fn compare(&mut self, context: impl Into<String>, left: &Series, right: &Series) {
        self.comparisons += 1;
        if let Some(mm) = left.first_mismatch(right) {
            self.flag(Discrepancy {
                context: context.into(),
                monomial: mm.monomial,
                left: mm.left,
                right: mm.right,
            });
        }
    }

    pub fn entry(&mut self, label: impl Into<String>, left: Rational, right: Rational) {
        self.comparisons += 1;
        let e = Entry {
            label: label.into(),
            left,
            right,
        };
        if !e.matches() && self.status == Status::Pass {
            self.status = Status::Mismatch;
        }
        self.entries.push(e);
    }

    fn flag(&mut self, d: Discrepancy) {
        if self.status == Status::Pass {
            self.status = Status::Mismatch;
        }
        if self.first_mismatch.is_none() {
            self.first_mismatch = Some(d);
        }
    }

    pub fn precondition_failed(&mut self, why: impl Into<String>) {
        self.status = Status::PreconditionFailed;
        self.notes.push(why.into());
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check,
            "status": self.status.as_str(),
            "precision": self.precision,
            "comparisons": self.comparisons,
            "first_mismatch": self.first_mismatch.as_ref().map(|d| json!({
                "context": d.context,
                "monomial": d.monomial.encoding(),
                self.left_name.as_str(): d.left.to_string(),
                self.right_name.as_str(): d.right.to_string(),
            })),
            "entries": self.entries.iter().map(|e| json!({
                "label": e.label,
                "status": if e.matches() { "MATCH" } else { "MISMATCH" },
                self.left_name.as_str(): e.left.to_string(),
                self.right_name.as_str(): e.right.to_string(),
            })).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} (precision {}, {} comparisons)",
            self.status.as_str(),
            self.check,
            self.precision,
            self.comparisons
        )?;
        if let Some(d) = &self.first_mismatch {
            write!(
                f,
                "\n  first mismatch [{}] at {}: {} = {}, {} = {}",
                d.context, d.monomial, self.left_name, d.left, self.right_name, d.right
            )?;
        }
        for e in &self.entries {
            write!(
                f,
                "\n  {:<8} {}: {} = {}, {} = {}",
                if e.matches() { "MATCH" } else { "MISMATCH" },
                e.label,
                self.left_name,
                e.left,
                self.right_name,
                e.right
            )?;
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}
