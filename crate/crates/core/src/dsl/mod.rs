//! Textual front end: an s-expression language of definitions followed by
//! queries.
//!
//! ```text
//! (def R1 (pullback :T (af :tdeg 3 :dim 1 :maximal (:ht 1 :res-tdeg 2 :unique))
//!                   :D (field 1)))
//! (tensor-dim R1 R1)
//! ```

pub mod ast;
mod exec;
mod parse;

use std::fmt;

pub use ast::{Def, Expr, ExprKind, Pos, Program, Query, QueryKind, Span};
pub use exec::{execute, Answer, Outcome, QueryResult};
pub use parse::parse;

use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DiagnosticKind {
    Syntax,
    UnboundName,
    Redefinition,
    Invalid,
    Hypothesis,
    Internal,
}

/// An error tied to a source location.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub span: Span,
    pub message: String,
    /// For syntax errors, the tokens that would have been accepted.
    pub expected: Vec<String>,
}

impl Diagnostic {
    pub fn new(kind: DiagnosticKind, span: Span, message: impl Into<String>) -> Self {
        Diagnostic {
            kind,
            span,
            message: message.into(),
            expected: Vec::new(),
        }
    }

    pub fn syntax(span: Span, message: impl Into<String>, expected: Vec<String>) -> Self {
        Diagnostic {
            expected,
            ..Diagnostic::new(DiagnosticKind::Syntax, span, message)
        }
    }

    pub(crate) fn from_error(span: Span, e: Error) -> Self {
        let kind = match &e {
            Error::Invalid(_) => DiagnosticKind::Invalid,
            Error::Inconsistent(_) => DiagnosticKind::Internal,
            _ => DiagnosticKind::Hypothesis,
        };
        Diagnostic::new(kind, span, e.to_string())
    }

    /// 2 for internal consistency failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.kind == DiagnosticKind::Internal {
            2
        } else {
            1
        }
    }

    /// `file:line:col: error: message`.
    pub fn render(&self, source_name: &str) -> String {
        format!("{source_name}:{}: error: {}", self.span, self.message)
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.span, self.message)
    }
}

/// Parses and executes `src` in one step.
pub fn run(src: &str) -> Result<Outcome, Diagnostic> {
    Ok(execute(&parse(src)?))
}
