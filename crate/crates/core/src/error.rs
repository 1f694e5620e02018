use thiserror::Error;

use crate::token::{SourcePos, Token, TokenKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unterminated string literal")]
    UnterminatedString { pos: SourcePos },

    #[error("invalid character {ch:?}")]
    InvalidCharacter { ch: char, pos: SourcePos },

    #[error("indentation to column {column} does not match any enclosing block level")]
    IndentMismatch { column: u32, pos: SourcePos },

    #[error("tab in indentation")]
    TabsDisallowed { pos: SourcePos },

    #[error("expected {}, found {}", fmt_expected(expected), fmt_found(found))]
    Parse {
        expected: Vec<TokenKind>,
        found: Token,
    },

    #[error("no statement parser for {}", fmt_found(found))]
    NoStatementParser { found: Token },

    #[error("{0}")]
    CompositionConflict(String),

    #[error("unbalanced control tokens: {0}")]
    UnbalancedStream(String),
}

fn fmt_expected(kinds: &[TokenKind]) -> String {
    match kinds {
        [] => "something else".to_string(),
        [k] => k.name().to_string(),
        _ => {
            let names: Vec<_> = kinds.iter().map(|k| k.name()).collect();
            format!("one of {}", names.join(", "))
        }
    }
}

fn fmt_found(t: &Token) -> String {
    if t.lexeme.is_empty() {
        t.kind.name().to_string()
    } else {
        format!("{} {:?}", t.kind.name(), t.lexeme)
    }
}

impl Error {
    /// Stable machine-readable code used in diagnostics and corpus manifests.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnterminatedString { .. } => "UnterminatedString",
            Error::InvalidCharacter { .. } => "InvalidCharacter",
            Error::IndentMismatch { .. } => "IndentMismatch",
            Error::TabsDisallowed { .. } => "TabsDisallowed",
            Error::Parse { .. } => "ParseError",
            Error::NoStatementParser { .. } => "NoStatementParser",
            Error::CompositionConflict(_) => "CompositionConflict",
            Error::UnbalancedStream(_) => "UnbalancedStream",
        }
    }

    pub fn pos(&self) -> Option<SourcePos> {
        match self {
            Error::UnterminatedString { pos }
            | Error::InvalidCharacter { pos, .. }
            | Error::IndentMismatch { pos, .. }
            | Error::TabsDisallowed { pos } => Some(*pos),
            Error::Parse { found, .. } | Error::NoStatementParser { found } => Some(found.pos),
            Error::CompositionConflict(_) | Error::UnbalancedStream(_) => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
