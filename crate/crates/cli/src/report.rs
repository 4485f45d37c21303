use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skip => "skip",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub name: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
    /// Wall time; excluded from renderings unless asked for.
    #[serde(skip)]
    pub millis: u128,
}

impl Entry {
    pub fn new(name: impl Into<String>, status: Status, lhs: impl ToString, rhs: impl ToString) -> Self {
        Entry { name: name.into(), status, lhs: lhs.to_string(), rhs: rhs.to_string(), detail: String::new(), millis: 0 }
    }

    pub fn compare<T: PartialEq + ToString>(name: impl Into<String>, lhs: T, rhs: T) -> Self {
        Self::new(name, Status::of(lhs == rhs), lhs.to_string(), rhs.to_string())
    }

    pub fn skip(name: impl Into<String>, why: impl Into<String>) -> Self {
        Entry { detail: why.into(), ..Self::new(name, Status::Skip, "", "") }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    /// Runs `f` and records its wall time on the entries it returns.
    pub fn timed(f: impl FnOnce() -> Vec<Entry>) -> Vec<Entry> {
        let t = Instant::now();
        let mut out = f();
        let ms = t.elapsed().as_millis();
        for e in &mut out {
            e.millis = ms;
        }
        out
    }
}

/// Check results ordered by name.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new(mut entries: Vec<Entry>) -> Self {
        entries.sort_by(|a, b| a.name.cmp(&b.name));
        Report { entries }
    }

    pub fn count(&self, s: Status) -> usize {
        self.entries.iter().filter(|e| e.status == s).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn render_human(&self, timings: bool) -> String {
        let w = self.entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for e in &self.entries {
            let _ = write!(out, "{}  {:w$}", e.status.label(), e.name);
            if !e.lhs.is_empty() || !e.rhs.is_empty() {
                let _ = write!(out, "  {} {} {}", e.lhs, if e.status == Status::Fail { "!=" } else { "=" }, e.rhs);
            }
            if !e.detail.is_empty() {
                let _ = write!(out, "  ({})", e.detail);
            }
            if timings {
                let _ = write!(out, "  [{} ms]", e.millis);
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{} passed, {} failed, {} skipped",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skip)
        );
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
