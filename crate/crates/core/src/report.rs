//! Verification results shared by every check.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Vacuous,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// Only an explicit failure counts against a run.
    pub fn is_failure(self) -> bool {
        self == Status::Fail
    }
}

/// One named verification line.
///
/// `witness` holds 1-based basis indices of the worst tuple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub defect: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, status: Status, defect: f64) -> Self {
        Self {
            name: name.into(),
            status,
            defect: sanitize(defect),
            witness: None,
            note: None,
        }
    }

    /// Builds a report from a [`Defect`] scan: pass iff the worst value is
    /// negligible at `tol`.
    pub fn from_defect<T: Scalar>(name: impl Into<String>, defect: &Defect<T>, tol: f64) -> Self {
        let ok = defect.is_negligible(tol);
        Self {
            name: name.into(),
            status: Status::from_bool(ok),
            defect: sanitize(defect.value_f64()),
            witness: if ok { None } else { defect.witness_one_based() },
            note: None,
        }
    }

    pub fn skipped(name: impl Into<String>, why: impl Into<String>) -> Self {
        Self::new(name, Status::Skipped, 0.0).with_note(why)
    }

    pub fn vacuous(name: impl Into<String>, why: impl Into<String>) -> Self {
        Self::new(name, Status::Vacuous, 0.0).with_note(why)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_witness(mut self, witness: Vec<usize>) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

// JSON cannot carry NaN or infinities.
fn sanitize(x: f64) -> f64 {
    if x.is_nan() {
        f64::MAX
    } else {
        x.clamp(-f64::MAX, f64::MAX)
    }
}

/// A named group of check lines. Statuses are never merged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSuite {
    pub name: String,
    pub items: Vec<CheckReport>,
}

impl CheckSuite {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            items: Vec::new(),
        }
    }

    pub fn push(&mut self, report: CheckReport) {
        self.items.push(report);
    }

    pub fn get(&self, name: &str) -> Option<&CheckReport> {
        self.items.iter().find(|r| r.name == name)
    }

    pub fn status_of(&self, name: &str) -> Option<Status> {
        self.get(name).map(|r| r.status)
    }

    /// True when no line failed.
    pub fn no_failures(&self) -> bool {
        !self.items.iter().any(|r| r.status.is_failure())
    }

    /// True when every line passed or was vacuous.
    pub fn all_pass(&self) -> bool {
        self.items
            .iter()
            .all(|r| matches!(r.status, Status::Pass | Status::Vacuous))
    }
}

/// Running maximum of absolute defects with the tuple that produced it.
#[derive(Debug, Clone)]
pub struct Defect<T> {
    value: T,
    witness: Option<Vec<usize>>,
}

impl<T: Scalar> Default for Defect<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> Defect<T> {
    pub fn new() -> Self {
        Self {
            value: T::zero(),
            witness: None,
        }
    }

    /// Records `|x|` for the 0-based tuple `at`.
    pub fn update(&mut self, x: &T, at: &[usize]) {
        let a = x.abs();
        if a > self.value {
            self.value = a;
            self.witness = Some(at.to_vec());
        }
    }

    /// Records every coordinate of a vector-valued defect.
    pub fn update_all<'a>(&mut self, xs: impl IntoIterator<Item = &'a T>, at: &[usize]) {
        for x in xs {
            self.update(x, at);
        }
    }

    pub fn merge(&mut self, other: Defect<T>) {
        if other.value > self.value {
            *self = other;
        }
    }

    pub fn value(&self) -> &T {
        &self.value
    }

    pub fn value_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.value.is_negligible(tol)
    }

    pub fn witness(&self) -> Option<&[usize]> {
        self.witness.as_deref()
    }

    pub fn witness_one_based(&self) -> Option<Vec<usize>> {
        self.witness
            .as_ref()
            .map(|w| w.iter().map(|i| i + 1).collect())
    }
}
