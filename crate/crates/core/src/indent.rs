//! Indentation preprocessor.
//!
//! Turns the layout tokens of the sensitive regions into explicit
//! `BLOCK_START` / `BLOCK_END` / `STMT_END` control tokens. Open indentation
//! levels are kept on a stack so a single dedent can close several blocks.
//!
//! ```text
//! if a:            IF a COLON BLOCK_START
//!     if b:        IF b COLON BLOCK_START
//!         x = 1    x ASSIGN 1 STMT_END BLOCK_END BLOCK_END
//! y = 2            y ASSIGN 2 STMT_END
//! ```
//!
//! Blank and comment-only lines never produce boundaries.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::token::{IndentPolicy, SourcePos, Token, TokenKind};

/// Peeking access to the raw tokens that have not been processed yet.
pub trait Lookahead {
    /// The `n`-th upcoming token, or `None` past the end of the stream.
    fn peek_nth(&mut self, n: usize) -> Result<Option<&Token>>;
}

/// Buffers tokens pulled from a fallible token iterator so they can be peeked.
pub struct TokenCursor<I> {
    source: I,
    buf: VecDeque<Token>,
}

impl<I> TokenCursor<I>
where
    I: Iterator<Item = Result<Token>>,
{
    pub fn new(source: I) -> Self {
        TokenCursor {
            source,
            buf: VecDeque::new(),
        }
    }

    pub fn next_token(&mut self) -> Result<Option<Token>> {
        if let Some(t) = self.buf.pop_front() {
            return Ok(Some(t));
        }
        self.source.next().transpose()
    }
}

impl<I> Lookahead for TokenCursor<I>
where
    I: Iterator<Item = Result<Token>>,
{
    fn peek_nth(&mut self, n: usize) -> Result<Option<&Token>> {
        while self.buf.len() <= n {
            match self.source.next() {
                Some(t) => self.buf.push_back(t?),
                None => return Ok(None),
            }
        }
        Ok(self.buf.get(n))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NextIndent {
    /// Indentation width of the next line holding content, and where that
    /// line starts.
    Column { width: u32, line_start: SourcePos },
    EndOfInput,
}

/// Measures the indentation of the next line that holds content, skipping
/// blank and comment-only lines. Peeks only; nothing is consumed.
pub fn calc_current_indent(la: &mut impl Lookahead, policy: &IndentPolicy) -> Result<NextIndent> {
    let mut width = 0;
    let mut tab_at: Option<SourcePos> = None;
    let mut line: Option<u32> = None;
    let mut i = 0;
    loop {
        let Some(t) = la.peek_nth(i)? else {
            return Ok(NextIndent::EndOfInput);
        };
        i += 1;
        let line_no = *line.get_or_insert(t.pos.line);
        match t.kind {
            TokenKind::Ws => {
                if tab_at.is_none() && t.lexeme.contains('\t') {
                    tab_at = Some(t.pos);
                }
                width += policy.width_from(width, &t.lexeme);
            }
            TokenKind::Comment => {}
            TokenKind::Newline => {
                width = 0;
                tab_at = None;
                line = Some(t.pos.line + 1);
            }
            TokenKind::Eof => return Ok(NextIndent::EndOfInput),
            _ => {
                if let (Some(pos), false) = (tab_at, policy.allow_tabs) {
                    return Err(Error::TabsDisallowed { pos });
                }
                return Ok(NextIndent::Column {
                    width,
                    line_start: SourcePos::new(line_no, 0),
                });
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndentState {
    /// Open indentation columns, strictly increasing, bottom element 0.
    pub indent_stack: Vec<u32>,
    pub pending_line_continuation: bool,
    /// A content token has been emitted since the last statement boundary.
    pub content_since_boundary: bool,
    /// The current logical line holds at least one parser-visible token.
    pub line_has_tokens: bool,
}

impl Default for IndentState {
    fn default() -> Self {
        IndentState {
            indent_stack: vec![0],
            pending_line_continuation: false,
            content_since_boundary: false,
            line_has_tokens: false,
        }
    }
}

impl IndentState {
    /// Number of open blocks.
    pub fn block_depth(&self) -> usize {
        self.indent_stack.len() - 1
    }

    fn top(&self) -> u32 {
        *self.indent_stack.last().expect("indent stack never empty")
    }
}

#[derive(Debug, Clone)]
pub struct IndentProcessor {
    state: IndentState,
    policy: IndentPolicy,
    started: bool,
}

impl IndentProcessor {
    pub fn new(policy: IndentPolicy) -> Self {
        IndentProcessor {
            state: IndentState::default(),
            policy,
            started: false,
        }
    }

    pub fn state(&self) -> &IndentState {
        &self.state
    }

    /// Checks the indentation of the first line. Must run before the first
    /// token is taken off the lookahead.
    pub fn begin(&mut self, la: &mut impl Lookahead) -> Result<()> {
        if self.started {
            return Ok(());
        }
        self.started = true;
        match calc_current_indent(la, &self.policy)? {
            NextIndent::Column { width, line_start } if width > 0 => Err(Error::IndentMismatch {
                column: width,
                pos: line_start,
            }),
            _ => Ok(()),
        }
    }

    /// Records a parser-visible token that went around the preprocessor
    /// (the contents of a bracketed region).
    pub fn observe_bypassed(&mut self, t: &Token) {
        if !t.is_hidden() && t.kind != TokenKind::Eof {
            self.state.content_since_boundary = true;
            self.state.line_has_tokens = true;
        }
    }

    /// Handles one token routed to the preprocessor, appending what it emits
    /// to `out`.
    pub fn process(&mut self, t: Token, la: &mut impl Lookahead, out: &mut Vec<Token>) -> Result<()> {
        debug_assert!(self.started, "begin() must run before process()");
        let st = &mut self.state;
        match t.kind {
            TokenKind::LineCont => {
                st.pending_line_continuation = true;
            }
            TokenKind::Newline if st.pending_line_continuation => {
                st.pending_line_continuation = false;
            }
            TokenKind::Newline if !st.line_has_tokens => {
                out.push(t);
            }
            TokenKind::Newline => {
                let target = match calc_current_indent(la, &self.policy)? {
                    NextIndent::Column { width, line_start } => Some((width, line_start)),
                    NextIndent::EndOfInput => None,
                };
                self.boundary(target, t.pos, out)?;
                out.push(t);
            }
            TokenKind::Eof => {
                let st = &mut self.state;
                if st.content_since_boundary {
                    out.push(Token::synthesized(TokenKind::StmtEnd, t.pos));
                }
                for _ in 0..st.block_depth() {
                    out.push(Token::synthesized(TokenKind::BlockEnd, t.pos));
                }
                st.indent_stack.truncate(1);
                st.content_since_boundary = false;
                st.line_has_tokens = false;
                st.pending_line_continuation = false;
                out.push(t);
            }
            TokenKind::Ws | TokenKind::Comment => out.push(t),
            TokenKind::StmtEnd => {
                st.content_since_boundary = false;
                st.line_has_tokens = true;
                out.push(t);
            }
            _ => {
                st.content_since_boundary = true;
                st.line_has_tokens = true;
                out.push(t);
            }
        }
        Ok(())
    }

    /// Emits the control tokens for the end of a logical line. `target` is
    /// the indentation of the next content line; `None` at end of input,
    /// which closes every open block.
    fn boundary(
        &mut self,
        target: Option<(u32, SourcePos)>,
        at: SourcePos,
        out: &mut Vec<Token>,
    ) -> Result<()> {
        let st = &mut self.state;
        let (width, line_start) = target.unwrap_or((0, at));
        let top = st.top();
        if width > top {
            st.indent_stack.push(width);
            out.push(Token::synthesized(TokenKind::BlockStart, at));
        } else {
            if st.content_since_boundary {
                out.push(Token::synthesized(TokenKind::StmtEnd, at));
            }
            while st.top() > width {
                st.indent_stack.pop();
                out.push(Token::synthesized(TokenKind::BlockEnd, at));
            }
            if st.top() != width {
                return Err(Error::IndentMismatch {
                    column: width,
                    pos: line_start,
                });
            }
        }
        st.content_since_boundary = false;
        st.line_has_tokens = false;
        Ok(())
    }
}

/// Runs the preprocessor alone over a raw token sequence, treating every
/// token as routed to it.
pub fn preprocess_all(tokens: Vec<Token>, policy: IndentPolicy) -> Result<Vec<Token>> {
    let mut cursor = TokenCursor::new(tokens.into_iter().map(Ok));
    let mut proc = IndentProcessor::new(policy);
    proc.begin(&mut cursor)?;
    let mut out = Vec::new();
    while let Some(t) = cursor.next_token()? {
        proc.process(t, &mut cursor, &mut out)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexer::{lex, LexerConfig};
    use TokenKind::*;

    fn raw(src: &str) -> Vec<Token> {
        lex(src, &LexerConfig::default()).unwrap()
    }

    fn indent_of(src: &str, policy: IndentPolicy) -> Result<NextIndent> {
        let mut cursor = TokenCursor::new(raw(src).into_iter().map(Ok));
        calc_current_indent(&mut cursor, &policy)
    }

    fn visible(src: &str) -> Vec<TokenKind> {
        preprocess_all(raw(src), IndentPolicy::default())
            .unwrap()
            .into_iter()
            .filter(|t| !t.is_hidden())
            .map(|t| t.kind)
            .collect()
    }

    fn width(n: NextIndent) -> u32 {
        match n {
            NextIndent::Column { width, .. } => width,
            NextIndent::EndOfInput => panic!("unexpected end of input"),
        }
    }

    #[test]
    fn indent_counts_spaces() {
        assert_eq!(width(indent_of("    x", IndentPolicy::default()).unwrap()), 4);
    }

    #[test]
    fn indent_skips_blank_and_comment_lines() {
        // NEWLINE, COMMENT, NEWLINE, WS("  "), NAME(y)
        let n = indent_of("\n# c\n  y", IndentPolicy::default()).unwrap();
        assert_eq!(
            n,
            NextIndent::Column {
                width: 2,
                line_start: SourcePos::new(3, 0)
            }
        );
    }

    #[test]
    fn indent_expands_tabs() {
        assert_eq!(width(indent_of("\tx", IndentPolicy::default()).unwrap()), 8);
        assert_eq!(width(indent_of("  \tx", IndentPolicy::with_tab_stop(4)).unwrap()), 4);
    }

    #[test]
    fn indent_rejects_tabs_when_disallowed() {
        let policy = IndentPolicy {
            tab_stop: 8,
            allow_tabs: false,
        };
        assert!(matches!(indent_of("\tx", policy), Err(Error::TabsDisallowed { .. })));
        // tabs on skipped comment lines do not count
        assert_eq!(width(indent_of("\t# c\n  x", policy).unwrap()), 2);
    }

    #[test]
    fn indent_end_of_input() {
        assert_eq!(indent_of("\n  # c\n", IndentPolicy::default()).unwrap(), NextIndent::EndOfInput);
    }

    #[test]
    fn lookahead_consumes_nothing() {
        let mut cursor = TokenCursor::new(raw("\n  y").into_iter().map(Ok));
        calc_current_indent(&mut cursor, &IndentPolicy::default()).unwrap();
        assert_eq!(cursor.next_token().unwrap().unwrap().kind, Newline);
    }

    #[test]
    fn toy_print_program() {
        let src = "print \"Hello\"\nif 1 < 2:\n\tprint \" world\"\n";
        assert_eq!(
            visible(src),
            vec![
                Name, String, StmtEnd, If, Int, Lt, Int, Colon, BlockStart, Name, String, StmtEnd,
                BlockEnd, Eof
            ]
        );
    }

    #[test]
    fn multi_level_dedent() {
        let src = "if a:\n    if b:\n        x = 1\ny = 2\n";
        assert_eq!(
            visible(src),
            vec![
                If, Name, Colon, BlockStart, If, Name, Colon, BlockStart, Name, Assign, Int,
                StmtEnd, BlockEnd, BlockEnd, Name, Assign, Int, StmtEnd, Eof
            ]
        );
    }

    #[test]
    fn empty_input() {
        assert_eq!(visible(""), vec![Eof]);
        assert_eq!(visible("\n\n# only a comment\n"), vec![Eof]);
    }

    #[test]
    fn no_trailing_newline_closes_at_eof() {
        assert_eq!(
            visible("if a:\n  x"),
            vec![If, Name, Colon, BlockStart, Name, StmtEnd, BlockEnd, Eof]
        );
    }

    #[test]
    fn line_continuation_joins_lines() {
        let out = preprocess_all(raw("x = 1 + \\\n    2\ny\n"), IndentPolicy::default()).unwrap();
        let kinds: Vec<_> = out.iter().map(|t| t.kind).collect();
        assert!(!kinds.contains(&LineCont));
        assert_eq!(kinds.iter().filter(|k| **k == Newline).count(), 2);
        assert_eq!(
            visible("x = 1 + \\\n    2\ny\n"),
            vec![Name, Assign, Int, Plus, Int, StmtEnd, Name, StmtEnd, Eof]
        );
    }

    #[test]
    fn dedent_to_unknown_level() {
        let err = preprocess_all(raw("if a:\n    x\n  y\n"), IndentPolicy::default()).unwrap_err();
        assert_eq!(
            err,
            Error::IndentMismatch {
                column: 2,
                pos: SourcePos::new(3, 0)
            }
        );
    }

    #[test]
    fn first_line_indented() {
        let err = preprocess_all(raw("  x\n"), IndentPolicy::default()).unwrap_err();
        assert_eq!(
            err,
            Error::IndentMismatch {
                column: 2,
                pos: SourcePos::new(1, 0)
            }
        );
    }

    #[test]
    fn semicolons_are_boundaries() {
        assert_eq!(visible("a; b\n"), vec![Name, StmtEnd, Name, StmtEnd, Eof]);
        assert_eq!(visible("a;\nb\n"), vec![Name, StmtEnd, Name, StmtEnd, Eof]);
        assert_eq!(
            visible("if a:\n  b;\nc\n"),
            vec![If, Name, Colon, BlockStart, Name, StmtEnd, BlockEnd, Name, StmtEnd, Eof]
        );
    }

    #[test]
    fn control_tokens_take_trigger_position() {
        let out = preprocess_all(raw("x\n"), IndentPolicy::default()).unwrap();
        let stmt_end = out.iter().find(|t| t.kind == StmtEnd).unwrap();
        assert_eq!(stmt_end.pos, SourcePos::new(1, 1));
        assert!(stmt_end.lexeme.is_empty());
    }

    #[test]
    fn state_is_reset_at_eof() {
        let mut cursor = TokenCursor::new(raw("if a:\n  if b:\n    c").into_iter().map(Ok));
        let mut proc = IndentProcessor::new(IndentPolicy::default());
        proc.begin(&mut cursor).unwrap();
        let mut out = Vec::new();
        while let Some(t) = cursor.next_token().unwrap() {
            proc.process(t, &mut cursor, &mut out).unwrap();
        }
        assert_eq!(proc.state().indent_stack, vec![0]);
        assert!(!proc.state().pending_line_continuation);
    }
}
