//! JSON report envelope, versioned as `izclose2/1`.

use serde::Serialize;
use serde_json::{Map, Value};

use izclose::qpoly::ParseError;

pub const SCHEMA: &str = "izclose2/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Exists,
    NotExists,
    VerificationFailed,
    ParseError,
    PreconditionViolation,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok | Status::Exists => 0,
            Status::NotExists | Status::VerificationFailed => 1,
            Status::ParseError => 2,
            Status::PreconditionViolation => 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorEntry {
    pub kind: Status,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub position: Option<Position>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Position {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
    pub expected: String,
}

impl From<&ParseError> for Position {
    fn from(e: &ParseError) -> Self {
        Position {
            offset: e.offset,
            line: e.line,
            column: e.column,
            expected: e.expected.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub parse_ms: f64,
    pub run_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub input: String,
    pub seed: u64,
    pub degree_bound: u32,
    pub status: Status,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<String>,
    /// Command-specific payload; matrices and ideals are in the text grammar.
    pub result: Map<String, Value>,
    pub errors: Vec<ErrorEntry>,
    pub timings: Timings,
    /// Human-readable summary, not serialized.
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str, input: &str, seed: u64, degree_bound: u32) -> Self {
        Report {
            schema: SCHEMA,
            command: command.to_string(),
            input: input.to_string(),
            seed,
            degree_bound,
            status: Status::Ok,
            exit_code: 0,
            verdict: None,
            branch: None,
            result: Map::new(),
            errors: Vec::new(),
            timings: Timings {
                parse_ms: 0.0,
                run_ms: 0.0,
            },
            lines: Vec::new(),
        }
    }

    pub fn set_status(&mut self, status: Status) {
        self.status = status;
        self.exit_code = status.exit_code();
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) {
        self.result.insert(key.to_string(), value.into());
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn fail(&mut self, status: Status, message: impl Into<String>, position: Option<Position>) {
        let message = message.into();
        self.line(format!("error: {message}"));
        self.errors.push(ErrorEntry {
            kind: status,
            message,
            position,
        });
        self.set_status(status);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for l in &self.lines {
            s.push_str(l);
            if !l.ends_with('\n') {
                s.push('\n');
            }
        }
        s
    }
}
