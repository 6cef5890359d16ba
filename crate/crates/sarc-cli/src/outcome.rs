use serde_json::Value;

use sarc::error::Error;

/// Process exit status of one invocation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
    Usage,
    /// A resource limit was hit or a search could not certify completeness.
    NonCertified,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Match => 0,
            Status::Mismatch => 1,
            Status::Usage => 2,
            Status::NonCertified => 3,
        }
    }

    pub fn of_error(e: &Error) -> Status {
        match e {
            Error::ResourceLimit(_) => Status::NonCertified,
            _ => Status::Usage,
        }
    }
}

/// The JSON document, a one-paragraph summary and the exit status.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub report: Value,
    pub summary: String,
}

impl Outcome {
    pub fn new(status: Status, report: Value, summary: impl Into<String>) -> Outcome {
        Outcome { status, report, summary: summary.into() }
    }

    pub fn error(e: &Error) -> Outcome {
        let status = Status::of_error(e);
        Outcome::new(status, serde_json::json!({ "error": e.to_string() }), format!("error: {e}"))
    }

    /// Match when `ok`, otherwise Mismatch.
    pub fn check(ok: bool, report: Value, summary: impl Into<String>) -> Outcome {
        Outcome::new(if ok { Status::Match } else { Status::Mismatch }, report, summary)
    }
}
