use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    /// Tokens or constructs that would have been accepted here.
    pub expected: Vec<String>,
    pub found: String,
    pub message: Option<String>,
}

impl ParseError {
    pub(crate) fn unexpected(line: usize, col: usize, expected: &[&str], found: &str) -> Self {
        ParseError {
            line,
            col,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: found.to_string(),
            message: None,
        }
    }

    pub(crate) fn message(line: usize, col: usize, found: &str, message: String) -> Self {
        ParseError {
            line,
            col,
            expected: Vec::new(),
            found: found.to_string(),
            message: Some(message),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.col)?;
        if let Some(m) = &self.message {
            return f.write_str(m);
        }
        match self.expected.as_slice() {
            [] => write!(f, "unexpected {}", self.found),
            [one] => write!(f, "expected {one}, found {}", self.found),
            many => write!(f, "expected one of {}, found {}", many.join(", "), self.found),
        }
    }
}
