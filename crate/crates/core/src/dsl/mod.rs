//! The `.itg` textual model format: parsing and canonical printing.
//!
//! Grammar (EBNF; `#` starts a line comment, blank lines are ignored):
//!
//! ```text
//! model      := "system" IDENT decl* region*
//! decl       := actor | block | channel
//! actor      := "actor" IDENT STRING?
//! block      := "block" IDENT STRING?
//! channel    := "channel" IDENT "(" paramlist? ")"
//! paramlist  := param ("," param)*
//! param      := ("in"|"out"|"inout") IDENT ":" IDENT
//! region     := "region" IDENT "initial" IDENT "{" trans* "}"
//! trans      := IDENT "->" IDENT ":" IDENT IDENT IDENT   # source -> target : caller channel callee
//! IDENT      := [A-Za-z_][A-Za-z0-9_]*
//! STRING     := double-quoted; backslash escapes for `"` and `\`
//! ```
//!
//! A region's state set is inferred as the union of all mentioned
//! source/target ids plus the declared initial state. Keywords are
//! contextual: `system`, `region`, `in`, … are legal state or agent ids.
//!
//! [`parse`] reports the earliest error with a line/column span and never
//! panics on malformed input; name resolution and uniqueness are *not*
//! checked here — that is [`crate::validate::validate`]'s job.

mod lexer;
mod parser;
mod printer;

pub use parser::{parse, parse_with_spans, Parsed, SpanTable};
pub use printer::print;

use std::fmt;

/// A half-open source range: 1-based line and column, length in characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl SourceSpan {
    pub fn new(line: usize, column: usize, length: usize) -> Self {
        debug_assert!(line >= 1 && column >= 1);
        SourceSpan {
            line,
            column,
            length,
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// A parse-time error: where, what, and a stable code
/// (`LEX_ERROR` or `SYNTAX_ERROR`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub span: SourceSpan,
    pub code: &'static str,
    pub message: String,
}

impl fmt::Display for ParseDiagnostic {
    /// Formats as `<line>:<col>: <code>: <message>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.span, self.code, self.message)
    }
}
