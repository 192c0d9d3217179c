//! Diagnostics shared by the static checker and the contract suites.

use std::fmt;

use serde::Serialize;

use crate::model::SourceSpan;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Location {
    Span(SourceSpan),
    Path(String),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Span(s) => write!(f, "{s}"),
            Location::Path(p) => f.write_str(p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    #[serde(rename = "ruleId")]
    pub rule_id: String,
    pub severity: Severity,
    pub location: Location,
    pub message: String,
}

impl Diagnostic {
    pub fn error(rule_id: &str, location: Location, message: impl Into<String>) -> Self {
        Diagnostic { rule_id: rule_id.to_string(), severity: Severity::Error, location, message: message.into() }
    }

    pub fn warning(rule_id: &str, location: Location, message: impl Into<String>) -> Self {
        Diagnostic { rule_id: rule_id.to_string(), severity: Severity::Warning, location, message: message.into() }
    }

    pub fn at(rule_id: &str, span: SourceSpan, message: impl Into<String>) -> Self {
        Self::error(rule_id, Location::Span(span), message)
    }

    pub fn on(rule_id: &str, path: impl Into<String>, message: impl Into<String>) -> Self {
        Self::error(rule_id, Location::Path(path.into()), message)
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{sev}[{}] {}: {}", self.rule_id, self.location, self.message)
    }
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}
