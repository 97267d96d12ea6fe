//! Check reports. A report is a list of named sections, each carrying the
//! number of cases it examined, the violations it found (with witnesses),
//! anything it had to leave undecided, and free-form notes. Reports render
//! to text and to JSON with exactly the same information, and both renderings
//! are deterministic for a fixed input and seed.

use serde::Serialize;

/// Three-valued outcome of a bounded search. `Undecided` is surfaced, never
/// silently treated as no.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision<W> {
    Yes(W),
    No,
    Undecided,
}

impl<W> Decision<W> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn witness(self) -> Option<W> {
        match self {
            Decision::Yes(w) => Some(w),
            _ => None,
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Decision<V> {
        match self {
            Decision::Yes(w) => Decision::Yes(f(w)),
            Decision::No => Decision::No,
            Decision::Undecided => Decision::Undecided,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undecided,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    /// How many cases the check actually examined.
    pub checked: usize,
    pub violations: Vec<String>,
    pub undecided: Vec<String>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            checked: 0,
            violations: Vec::new(),
            undecided: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn status(&self) -> Status {
        if !self.violations.is_empty() {
            Status::Fail
        } else if !self.undecided.is_empty() {
            Status::Undecided
        } else {
            Status::Pass
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub sections: Vec<CheckReport>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, section: CheckReport) {
        self.sections.push(section);
    }

    pub fn merge(&mut self, other: Report) {
        self.sections.extend(other.sections);
    }

    pub fn status(&self) -> Status {
        let mut status = Status::Pass;
        for s in &self.sections {
            match s.status() {
                Status::Fail => return Status::Fail,
                Status::Undecided => status = Status::Undecided,
                Status::Pass => {}
            }
        }
        status
    }

    /// Exit-code contract shared with the CLI: 0 pass, 2 violation,
    /// 3 undecided-only. (1 is reserved for I/O and parse errors.)
    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Status::Pass => 0,
            Status::Fail => 2,
            Status::Undecided => 3,
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            let tag = match s.status() {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Undecided => "UNDECIDED",
            };
            out.push_str(&format!("[{tag}] {} (checked {})\n", s.name, s.checked));
            for v in &s.violations {
                out.push_str(&format!("  violation: {v}\n"));
            }
            for u in &s.undecided {
                out.push_str(&format!("  undecided: {u}\n"));
            }
            for n in &s.notes {
                out.push_str(&format!("  note: {n}\n"));
            }
        }
        let overall = match self.status() {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Undecided => "UNDECIDED",
        };
        out.push_str(&format!("overall: {overall}\n"));
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "sections": self.sections,
            "overall": match self.status() {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Undecided => "undecided",
            },
            "exit_code": self.exit_code(),
        })
    }
}
