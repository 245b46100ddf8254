//! Source positions and diagnostics.

use std::fmt;

/// Position range in a source file. Lines and columns are 1-based and
/// count characters, not bytes; both endpoints are inclusive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub file: String,
    pub start_line: u32,
    pub start_col: u32,
    pub end_line: u32,
    pub end_col: u32,
}

impl SourceSpan {
    pub fn point(file: &str, line: u32, col: u32) -> Self {
        SourceSpan {
            file: file.to_string(),
            start_line: line,
            start_col: col,
            end_line: line,
            end_col: col,
        }
    }

    /// Smallest span covering both spans.
    pub fn to(&self, other: &SourceSpan) -> SourceSpan {
        let mut s = self.clone();
        if (other.start_line, other.start_col) < (s.start_line, s.start_col) {
            s.start_line = other.start_line;
            s.start_col = other.start_col;
        }
        if (other.end_line, other.end_col) > (s.end_line, s.end_col) {
            s.end_line = other.end_line;
            s.end_col = other.end_col;
        }
        s
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.start_line, self.start_col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

/// A single problem found while lexing, parsing, or elaborating.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub span: SourceSpan,
    /// Short stable category, e.g. "syntax" or "unknown-name".
    pub code: &'static str,
    pub message: String,
}

impl Diagnostic {
    pub fn error(span: SourceSpan, code: &'static str, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            span,
            code,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}: {kind}[{}]: {}", self.span, self.code, self.message)
    }
}
