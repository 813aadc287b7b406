//! Structured verdicts of individual checks.

use std::time::Instant;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    WindowExhausted,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::WindowExhausted => "window-exhausted",
        }
    }
}

/// Where and how two sides of a check disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub location: String,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn new(location: impl Into<String>, lhs: impl ToString, rhs: impl ToString) -> Self {
        Witness {
            location: location.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub millis: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    pub fn pass(id: impl Into<String>) -> Self {
        CheckReport {
            id: id.into(),
            verdict: Verdict::Pass,
            witness: None,
            millis: 0,
            window: None,
            note: None,
        }
    }

    pub fn fail(id: impl Into<String>, witness: Witness) -> Self {
        CheckReport {
            verdict: Verdict::Fail,
            witness: Some(witness),
            ..Self::pass(id)
        }
    }

    pub fn exhausted(id: impl Into<String>, window: i64) -> Self {
        CheckReport {
            verdict: Verdict::WindowExhausted,
            window: Some(window),
            ..Self::pass(id)
        }
    }

    /// A failure that is not tied to a specific entry, such as an evaluation
    /// error.
    pub fn error(id: impl Into<String>, message: impl ToString) -> Self {
        CheckReport {
            note: Some(message.to_string()),
            ..Self::fail(id, Witness::new("evaluation", "error", "error"))
        }
    }

    pub fn from_witness(id: impl Into<String>, witness: Option<Witness>) -> Self {
        match witness {
            None => Self::pass(id),
            Some(w) => Self::fail(id, w),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn with_window(mut self, n: i64) -> Self {
        self.window = Some(n);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }
}

/// Runs `f` and stamps the elapsed wall time on its report.
pub fn timed<F: FnOnce() -> CheckReport>(f: F) -> CheckReport {
    let start = Instant::now();
    let mut r = f();
    r.millis = start.elapsed().as_millis() as u64;
    r
}
