use crate::ast::{Block, Expr, Module, Span, Stmt, StmtKind};
use crate::error::{Error, Result};
use crate::pipeline::Pipeline;
use crate::token::{IndentPolicy, SourcePos, Token, TokenKind};

use super::Registry;

/// Where the parser pulls its tokens from. Implementations hand out only
/// parser-visible tokens and keep returning EOF once the stream is done.
pub trait TokenSource {
    fn next_token(&mut self) -> Result<Token>;
}

impl TokenSource for Pipeline<'_> {
    fn next_token(&mut self) -> Result<Token> {
        self.next_parser_token()
    }
}

/// A token source over an already lexed sequence, such as delimited input.
/// Hidden tokens are skipped.
pub struct TokenVecSource {
    tokens: std::vec::IntoIter<Token>,
    last: SourcePos,
}

impl TokenVecSource {
    pub fn new(tokens: Vec<Token>) -> Self {
        TokenVecSource {
            tokens: tokens.into_iter(),
            last: SourcePos::START,
        }
    }
}

impl TokenSource for TokenVecSource {
    fn next_token(&mut self) -> Result<Token> {
        for t in self.tokens.by_ref() {
            self.last = t.pos;
            if !t.is_hidden() {
                return Ok(t);
            }
        }
        Ok(Token::synthesized(TokenKind::Eof, self.last))
    }
}

/// Recursive-descent driver shared by all components. Statement dispatch is
/// on the leading token; expressions use the registry's Pratt tables.
pub struct Parser<'a> {
    reg: &'a Registry,
    src: &'a mut dyn TokenSource,
    current: Token,
    last_end: SourcePos,
    policy: IndentPolicy,
}

impl<'a> Parser<'a> {
    pub fn new(reg: &'a Registry, src: &'a mut dyn TokenSource, policy: IndentPolicy) -> Result<Self> {
        let current = src.next_token()?;
        let last_end = current.pos;
        Ok(Parser {
            reg,
            src,
            current,
            last_end,
            policy,
        })
    }

    pub fn registry(&self) -> &Registry {
        self.reg
    }

    pub fn peek(&self) -> &Token {
        &self.current
    }

    pub fn peek_kind(&self) -> TokenKind {
        self.current.kind
    }

    pub fn at(&self, kind: TokenKind) -> bool {
        self.current.kind == kind
    }

    /// Start position of the next token.
    pub fn pos(&self) -> SourcePos {
        self.current.pos
    }

    /// Span from `start` to the end of the last consumed content token.
    pub fn span_from(&self, start: SourcePos) -> Span {
        Span::new(start, self.last_end.max(start))
    }

    pub fn advance(&mut self) -> Result<Token> {
        let next = if self.current.kind == TokenKind::Eof {
            self.current.clone()
        } else {
            self.src.next_token()?
        };
        let tok = std::mem::replace(&mut self.current, next);
        if tok.kind.is_content() {
            self.last_end = tok.end_pos(&self.policy);
        }
        Ok(tok)
    }

    pub fn eat(&mut self, kind: TokenKind) -> Result<Option<Token>> {
        if self.at(kind) {
            self.advance().map(Some)
        } else {
            Ok(None)
        }
    }

    pub fn expect(&mut self, kind: TokenKind) -> Result<Token> {
        if self.at(kind) {
            self.advance()
        } else {
            Err(self.unexpected(vec![kind]))
        }
    }

    pub fn unexpected(&self, expected: Vec<TokenKind>) -> Error {
        Error::Parse {
            expected,
            found: self.current.clone(),
        }
    }

    /// The `EndStmt` extension point.
    pub fn expect_end_stmt(&mut self) -> Result<Token> {
        self.expect(self.reg.bindings().end_stmt)
    }

    pub fn parse_expr(&mut self) -> Result<Expr> {
        self.parse_expr_bp(0)
    }

    /// Pratt loop: parses an expression whose infix operators all bind
    /// tighter than `min_bp`.
    pub fn parse_expr_bp(&mut self, min_bp: u8) -> Result<Expr> {
        let Some(prefix) = self.reg.prefix_rule(self.peek_kind()) else {
            return Err(self.unexpected(vec![]));
        };
        let tok = self.advance()?;
        let mut left = prefix(self, tok)?;
        while let Some(rule) = self.reg.infix_rule(self.peek_kind()) {
            if rule.binding_power <= min_bp {
                break;
            }
            let tok = self.advance()?;
            left = (rule.parse)(self, left, tok)?;
        }
        Ok(left)
    }

    /// Dispatches on the leading token, falling back to an expression or
    /// assignment statement.
    pub fn parse_statement(&mut self) -> Result<Stmt> {
        let head = self.peek_kind();
        if let Some(rule) = self.reg.statement_rule(head) {
            return (rule.parse)(self);
        }
        if self.reg.prefix_rule(head).is_some() {
            return super::components::expr_or_assign(self);
        }
        Err(Error::NoStatementParser {
            found: self.current.clone(),
        })
    }

    /// `StartBlock Statement+ EndBlock | Statement`.
    pub fn parse_block(&mut self) -> Result<Block> {
        let bindings = self.reg.bindings();
        if self.eat(bindings.start_block)?.is_some() {
            let mut stmts = Vec::new();
            while !self.at(bindings.end_block) {
                if self.at(TokenKind::Eof) {
                    return Err(self.unexpected(vec![bindings.end_block]));
                }
                stmts.push(self.parse_statement()?);
            }
            if stmts.is_empty() {
                return Err(self.unexpected(vec![]));
            }
            self.advance()?;
            let span = stmts[0].span.to(stmts[stmts.len() - 1].span);
            return Ok(Block { stmts, span });
        }
        if !self.reg.starts_statement(self.peek_kind()) {
            return Err(self.unexpected(vec![bindings.start_block]));
        }
        let stmt = self.parse_statement()?;
        let span = stmt.span;
        Ok(Block {
            stmts: vec![stmt],
            span,
        })
    }

    pub fn parse_module(&mut self) -> Result<Module> {
        let start = self.pos();
        let mut body = Vec::new();
        while !self.at(TokenKind::Eof) {
            body.push(self.parse_statement()?);
        }
        let span = match (body.first(), body.last()) {
            (Some(f), Some(l)) => f.span.to(l.span),
            _ => Span::new(start, start),
        };
        Ok(Module { body, span })
    }

    pub fn finish_stmt(&self, kind: StmtKind, start: SourcePos) -> Stmt {
        Stmt {
            kind,
            span: self.span_from(start),
        }
    }
}

/// Parses a whole module from `tokens`.
pub fn parse_module(tokens: &mut dyn TokenSource, reg: &Registry) -> Result<Module> {
    Parser::new(reg, tokens, IndentPolicy::default())?.parse_module()
}
