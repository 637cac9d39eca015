use serde_json::{json, Value};

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_FINDING: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// A failure with a stable code, an exit status, and an optional position
/// in the problem file.
#[derive(Debug, Clone, thiserror::Error)]
#[error("{code}: {message}")]
pub struct CliError {
    pub code: String,
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub exit: i32,
    /// Partial results worth keeping, e.g. an unfinished sequence.
    pub detail: Option<Box<Value>>,
}

impl CliError {
    pub fn new(code: &str, message: impl Into<String>, exit: i32) -> Self {
        CliError {
            code: code.into(),
            message: message.into(),
            line: None,
            column: None,
            exit,
            detail: None,
        }
    }

    pub fn input(message: impl Into<String>) -> Self {
        Self::new("INPUT", message, EXIT_INPUT)
    }

    pub fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self::new("SYNTAX", message, EXIT_INPUT).at(line, column)
    }

    pub fn at(mut self, line: usize, column: usize) -> Self {
        self.line = Some(line);
        self.column = Some(column);
        self
    }

    pub fn at_line(mut self, line: usize) -> Self {
        self.line = Some(line);
        self
    }

    pub fn to_json(&self) -> Value {
        let mut e = json!({ "code": self.code, "message": self.message });
        if let Some(l) = self.line {
            e["line"] = json!(l);
        }
        if let Some(c) = self.column {
            e["column"] = json!(c);
        }
        if let Some(d) = &self.detail {
            e["detail"] = (**d).clone();
        }
        json!({ "error": e })
    }
}

impl From<mixmult::Error> for CliError {
    fn from(e: mixmult::Error) -> Self {
        let exit = if e.is_inconclusive() {
            EXIT_INCONCLUSIVE
        } else if matches!(e, mixmult::Error::Inconsistency(_)) {
            EXIT_FINDING
        } else {
            EXIT_INPUT
        };
        let detail = match &e {
            mixmult::Error::SearchFailure { record, .. } => {
                Some(crate::report::record_json(record))
            }
            mixmult::Error::Stabilization(table) => Some(crate::report::table_json(table)),
            mixmult::Error::SamuelStabilization { base, values } => {
                Some(json!({ "base": base, "values": values }))
            }
            _ => None,
        };
        let mut out = CliError::new(e.code(), e.to_string(), exit);
        out.detail = detail.map(Box::new);
        out
    }
}
