//! Three-valued outcomes for the lemma and theorem checkers.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// Premises hold and so does the conclusion.
    Holds,
    /// Premises hold but the conclusion fails on this instance.
    Violated,
    /// A premise fails, so the statement says nothing about the instance.
    NotApplicable,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Holds
        } else {
            Status::Violated
        }
    }

    pub fn holds(self) -> bool {
        self == Status::Holds
    }

    /// Process exit code used by the command-line tool.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Holds => 0,
            Status::Violated => 1,
            Status::NotApplicable => 4,
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Violated => "violated",
            Status::NotApplicable => "not-applicable",
        })
    }
}
