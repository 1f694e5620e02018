//! Mode dispatcher: suspends indentation processing inside brackets.
//!
//! Outside brackets every token goes to the indentation preprocessor. An
//! opening bracket switches to insensitive mode, where tokens bypass the
//! preprocessor and go straight to the buffer until the outermost bracket
//! closes. Pairing of brackets is not checked here; the parser does that.
//! EOF always goes to the preprocessor, even inside brackets, so that open
//! blocks are closed and the stream stays balanced.

use crate::token::{Token, TokenKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    WsSensitive,
    WsInsensitive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Through the indentation preprocessor.
    ToPreprocessor,
    /// Directly to the buffer.
    ToBuffer,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DispatcherState {
    brackets: Vec<TokenKind>,
}

impl DispatcherState {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sensitive exactly when no bracket is open.
    pub fn mode(&self) -> Mode {
        if self.brackets.is_empty() {
            Mode::WsSensitive
        } else {
            Mode::WsInsensitive
        }
    }

    pub fn depth(&self) -> usize {
        self.brackets.len()
    }

    pub fn open_brackets(&self) -> &[TokenKind] {
        &self.brackets
    }

    /// Routes `kind` and updates the bracket stack in place.
    pub fn step(&mut self, kind: TokenKind) -> Route {
        if kind == TokenKind::Eof {
            return Route::ToPreprocessor;
        }
        match self.mode() {
            Mode::WsSensitive if kind.opens_bracket() => {
                self.brackets.push(kind);
                Route::ToBuffer
            }
            Mode::WsSensitive => Route::ToPreprocessor,
            Mode::WsInsensitive => {
                if kind.opens_bracket() {
                    self.brackets.push(kind);
                } else if kind.closes_bracket() {
                    self.brackets.pop();
                }
                Route::ToBuffer
            }
        }
    }
}

/// Pure form of [`DispatcherState::step`].
pub fn dispatch(t: &Token, st: &DispatcherState) -> (Route, DispatcherState) {
    let mut next = st.clone();
    let route = next.step(t.kind);
    (route, next)
}
