//! Lexer → mode dispatcher → indentation preprocessor → buffer.
//!
//! The pipeline is pulled lazily by the parser. Each raw token may turn into
//! no token, itself, or itself plus control tokens; the buffer hides that and
//! keeps layout tokens off the parser-visible channel.

use std::collections::VecDeque;

use crate::dispatch::{DispatcherState, Route};
use crate::error::Result;
use crate::indent::{IndentProcessor, TokenCursor};
use crate::lexer::{Lexer, LexerConfig};
use crate::token::{Channel, Token, TokenKind};

pub struct Pipeline<'s> {
    cursor: TokenCursor<Lexer<'s>>,
    dispatcher: DispatcherState,
    indent: IndentProcessor,
    queue: VecDeque<Token>,
    hidden: Vec<Token>,
    started: bool,
    raw_done: bool,
    eof_returned: bool,
}

impl<'s> Pipeline<'s> {
    pub fn new(source: &'s str, cfg: &LexerConfig) -> Self {
        Pipeline {
            cursor: TokenCursor::new(Lexer::new(source, cfg.clone())),
            dispatcher: DispatcherState::new(),
            indent: IndentProcessor::new(cfg.indent_policy),
            queue: VecDeque::new(),
            hidden: Vec::new(),
            started: false,
            raw_done: false,
            eof_returned: false,
        }
    }

    /// Pulls one raw token through the stages. Returns false once the raw
    /// stream is exhausted.
    fn pump(&mut self) -> Result<bool> {
        if !self.started {
            self.started = true;
            self.indent.begin(&mut self.cursor)?;
        }
        if self.raw_done {
            return Ok(false);
        }
        let Some(mut t) = self.cursor.next_token()? else {
            self.raw_done = true;
            return Ok(false);
        };
        if t.kind == TokenKind::Eof {
            self.raw_done = true;
        }
        match self.dispatcher.step(t.kind) {
            Route::ToPreprocessor => {
                let mut out = Vec::new();
                self.indent.process(t, &mut self.cursor, &mut out)?;
                self.queue.extend(out);
            }
            Route::ToBuffer => {
                if t.kind.is_layout() {
                    t.channel = Channel::Hidden;
                }
                self.indent.observe_bypassed(&t);
                self.queue.push_back(t);
            }
        }
        Ok(true)
    }

    /// Next token of the complete processed stream, hidden tokens included.
    pub fn next_full(&mut self) -> Result<Option<Token>> {
        loop {
            if let Some(t) = self.queue.pop_front() {
                return Ok(Some(t));
            }
            if !self.pump()? {
                return Ok(None);
            }
        }
    }

    /// Next parser-visible token. Hidden tokens are kept aside (see
    /// [`Pipeline::hidden_tokens`]). Once EOF has been returned, further
    /// calls keep returning it.
    pub fn next_parser_token(&mut self) -> Result<Token> {
        while let Some(t) = self.next_full()? {
            if t.is_hidden() {
                self.hidden.push(t);
                continue;
            }
            if t.kind == TokenKind::Eof {
                self.eof_returned = true;
            }
            return Ok(t);
        }
        debug_assert!(self.eof_returned);
        Ok(Token::synthesized(TokenKind::Eof, Default::default()))
    }

    pub fn hidden_tokens(&self) -> &[Token] {
        &self.hidden
    }
}

/// The complete post-preprocessing stream of `source`.
pub fn full_stream(source: &str, cfg: &LexerConfig) -> Result<Vec<Token>> {
    let mut p = Pipeline::new(source, cfg);
    let mut out = Vec::new();
    while let Some(t) = p.next_full()? {
        out.push(t);
    }
    Ok(out)
}

/// Every parser-visible token of `source`, ending with EOF.
pub fn parser_tokens(source: &str, cfg: &LexerConfig) -> Result<Vec<Token>> {
    let mut p = Pipeline::new(source, cfg);
    let mut out = Vec::new();
    loop {
        let t = p.next_parser_token()?;
        let eof = t.kind == TokenKind::Eof;
        out.push(t);
        if eof {
            return Ok(out);
        }
    }
}
