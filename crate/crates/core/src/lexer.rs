//! Lossless lexer.
//!
//! Whitespace, line breaks, comments and line continuations are emitted as
//! real tokens on the hidden channel instead of being skipped, so the stages
//! after the lexer can see the layout of the source. Joining the lexemes of
//! every token reproduces the input exactly.

use crate::error::{Error, Result};
use crate::token::{ControlTokenConfig, IndentPolicy, SourcePos, Token, TokenKind};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LexerConfig {
    pub indent_policy: IndentPolicy,
    pub control_tokens: ControlTokenConfig,
    /// Lex the block glyphs and the primary statement-end glyph as control
    /// tokens. Only set for delimited input.
    pub recognize_control_glyphs: bool,
    /// Additional reserved words, checked before the built-in keywords.
    pub extra_keywords: Vec<(String, TokenKind)>,
}

impl LexerConfig {
    pub fn delimited(&self) -> LexerConfig {
        LexerConfig {
            recognize_control_glyphs: true,
            ..self.clone()
        }
    }
}

const TWO_CHAR_OPS: &[(&str, TokenKind)] = &[
    ("**", TokenKind::DoubleStar),
    ("//", TokenKind::DoubleSlash),
    ("==", TokenKind::Eq),
    ("!=", TokenKind::Ne),
    ("<=", TokenKind::Le),
    (">=", TokenKind::Ge),
    ("+=", TokenKind::PlusAssign),
    ("-=", TokenKind::MinusAssign),
    ("++", TokenKind::PlusPlus),
];

fn single_char_op(c: char) -> Option<TokenKind> {
    Some(match c {
        '+' => TokenKind::Plus,
        '-' => TokenKind::Minus,
        '*' => TokenKind::Star,
        '/' => TokenKind::Slash,
        '%' => TokenKind::Percent,
        '<' => TokenKind::Lt,
        '>' => TokenKind::Gt,
        '=' => TokenKind::Assign,
        '(' => TokenKind::LParen,
        ')' => TokenKind::RParen,
        '[' => TokenKind::LBracket,
        ']' => TokenKind::RBracket,
        '{' => TokenKind::LBrace,
        '}' => TokenKind::RBrace,
        ',' => TokenKind::Comma,
        ':' => TokenKind::Colon,
        '.' => TokenKind::Dot,
        _ => return None,
    })
}

fn is_name_start(c: char) -> bool {
    c == '_' || c.is_alphabetic()
}

fn is_name_continue(c: char) -> bool {
    c == '_' || c.is_alphanumeric()
}

/// Streaming lexer. Yields tokens until exactly one EOF, or stops after the
/// first error.
pub struct Lexer<'s> {
    src: &'s str,
    offset: usize,
    pos: SourcePos,
    cfg: LexerConfig,
    finished: bool,
}

impl<'s> Lexer<'s> {
    pub fn new(src: &'s str, cfg: LexerConfig) -> Self {
        Lexer {
            src,
            offset: 0,
            pos: SourcePos::START,
            cfg,
            finished: false,
        }
    }

    pub fn config(&self) -> &LexerConfig {
        &self.cfg
    }

    fn rest(&self) -> &'s str {
        &self.src[self.offset..]
    }

    fn advance_pos(&mut self, text: &str) {
        for c in text.chars() {
            match c {
                '\n' => {
                    self.pos.line += 1;
                    self.pos.column = 0;
                }
                '\r' => {}
                '\t' => self.pos.column = self.cfg.indent_policy.expand_tab(self.pos.column),
                _ => self.pos.column += 1,
            }
        }
    }

    /// Consumes `len` bytes as a token of `kind`.
    fn take(&mut self, kind: TokenKind, len: usize) -> Token {
        let start = self.pos;
        let lexeme = &self.src[self.offset..self.offset + len];
        self.offset += len;
        self.advance_pos(lexeme);
        Token::new(kind, lexeme, start)
    }

    fn glyph_match(&self) -> Option<(TokenKind, usize)> {
        let rest = self.rest();
        let ct = &self.cfg.control_tokens;
        if self.cfg.recognize_control_glyphs {
            if rest.starts_with(ct.block_start_glyph.as_str()) {
                return Some((TokenKind::BlockStart, ct.block_start_glyph.len()));
            }
            if rest.starts_with(ct.block_end_glyph.as_str()) {
                return Some((TokenKind::BlockEnd, ct.block_end_glyph.len()));
            }
            if let Some(g) = ct.stmt_end_glyphs.first() {
                if rest.starts_with(g.as_str()) {
                    return Some((TokenKind::StmtEnd, g.len()));
                }
            }
        }
        // The alternative separators (";") are valid in ordinary source too.
        ct.stmt_end_glyphs
            .iter()
            .skip(1)
            .find(|g| !g.is_empty() && rest.starts_with(g.as_str()))
            .map(|g| (TokenKind::StmtEnd, g.len()))
    }

    fn lex_string(&mut self, quote: char) -> Result<Token> {
        let rest = self.rest();
        let triple: String = std::iter::repeat_n(quote, 3).collect();
        let is_triple = rest.starts_with(&triple);
        let open_len = if is_triple { 3 } else { 1 };
        let bytes = rest.as_bytes();
        let mut i = open_len;
        loop {
            let Some(c) = rest[i..].chars().next() else {
                return Err(Error::UnterminatedString { pos: self.pos });
            };
            match c {
                '\\' => {
                    i += 1;
                    match rest[i..].chars().next() {
                        None => return Err(Error::UnterminatedString { pos: self.pos }),
                        Some('\r') if bytes.get(i + 1) == Some(&b'\n') => i += 2,
                        Some(e) => i += e.len_utf8(),
                    }
                }
                '\n' | '\r' if !is_triple => {
                    return Err(Error::UnterminatedString { pos: self.pos });
                }
                c if c == quote => {
                    if !is_triple {
                        i += 1;
                        break;
                    }
                    if rest[i..].starts_with(&triple) {
                        i += 3;
                        break;
                    }
                    i += 1;
                }
                c => i += c.len_utf8(),
            }
        }
        Ok(self.take(TokenKind::String, i))
    }

    fn lex_number(&mut self) -> Token {
        let bytes = self.rest().as_bytes();
        let digits = |from: usize| {
            bytes[from..]
                .iter()
                .take_while(|b| b.is_ascii_digit())
                .count()
        };
        let mut len = digits(0);
        let mut kind = TokenKind::Int;
        if bytes.get(len) == Some(&b'.') && bytes.get(len + 1).is_some_and(u8::is_ascii_digit) {
            len += 1 + digits(len + 1);
            kind = TokenKind::Float;
            if matches!(bytes.get(len), Some(b'e' | b'E')) {
                let sign = usize::from(matches!(bytes.get(len + 1), Some(b'+' | b'-')));
                let exp = digits(len + 1 + sign);
                if exp > 0 {
                    len += 1 + sign + exp;
                }
            }
        }
        self.take(kind, len)
    }

    fn lex_name(&mut self) -> Token {
        let rest = self.rest();
        let len = rest
            .char_indices()
            .find(|&(_, c)| !is_name_continue(c))
            .map_or(rest.len(), |(i, _)| i);
        let word = &rest[..len];
        let kind = self
            .cfg
            .extra_keywords
            .iter()
            .find(|(w, _)| w == word)
            .map(|&(_, k)| k)
            .or_else(|| TokenKind::keyword(word))
            .unwrap_or(TokenKind::Name);
        self.take(kind, len)
    }

    fn next_token(&mut self) -> Result<Token> {
        let rest = self.rest();
        let Some(c) = rest.chars().next() else {
            self.finished = true;
            return Ok(Token::synthesized(TokenKind::Eof, self.pos));
        };
        if let Some((kind, len)) = self.glyph_match() {
            return Ok(self.take(kind, len));
        }
        match c {
            ' ' | '\t' | '\x0c' => {
                let len = rest
                    .bytes()
                    .take_while(|b| matches!(b, b' ' | b'\t' | b'\x0c'))
                    .count();
                Ok(self.take(TokenKind::Ws, len))
            }
            '\n' => Ok(self.take(TokenKind::Newline, 1)),
            '\r' if rest.starts_with("\r\n") => Ok(self.take(TokenKind::Newline, 2)),
            '#' => {
                let mut len = rest.find('\n').unwrap_or(rest.len());
                if rest[..len].ends_with('\r') && len < rest.len() {
                    len -= 1;
                }
                Ok(self.take(TokenKind::Comment, len))
            }
            '\\' if rest[1..].starts_with('\n') || rest[1..].starts_with("\r\n") => {
                Ok(self.take(TokenKind::LineCont, 1))
            }
            '"' | '\'' => self.lex_string(c),
            c if c.is_ascii_digit() => Ok(self.lex_number()),
            c if is_name_start(c) => Ok(self.lex_name()),
            c => {
                if let Some(&(op, kind)) = TWO_CHAR_OPS.iter().find(|(op, _)| rest.starts_with(op)) {
                    return Ok(self.take(kind, op.len()));
                }
                match single_char_op(c) {
                    Some(kind) => Ok(self.take(kind, 1)),
                    None => Err(Error::InvalidCharacter { ch: c, pos: self.pos }),
                }
            }
        }
    }
}

impl Iterator for Lexer<'_> {
    type Item = Result<Token>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.finished {
            return None;
        }
        let result = self.next_token();
        if result.is_err() {
            self.finished = true;
        }
        Some(result)
    }
}

/// Lexes a whole source. The result ends with exactly one EOF token.
pub fn lex(source: &str, cfg: &LexerConfig) -> Result<Vec<Token>> {
    Lexer::new(source, cfg.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::token::Channel;

    fn kinds(src: &str) -> Vec<TokenKind> {
        lex(src, &LexerConfig::default())
            .unwrap()
            .into_iter()
            .map(|t| t.kind)
            .collect()
    }

    use TokenKind::*;

    #[test]
    fn simple_assignment() {
        let toks = lex("x = 1\n", &LexerConfig::default()).unwrap();
        let got: Vec<_> = toks.iter().map(|t| (t.kind, t.lexeme.as_str())).collect();
        assert_eq!(
            got,
            vec![
                (Name, "x"),
                (Ws, " "),
                (Assign, "="),
                (Ws, " "),
                (Int, "1"),
                (Newline, "\n"),
                (Eof, ""),
            ]
        );
        for t in &toks {
            assert_eq!(t.channel == Channel::Hidden, t.kind.is_layout());
        }
    }

    #[test]
    fn triple_quoted_string_is_one_token() {
        let toks = lex("s = \"\"\"a\n  b\"\"\"\n", &LexerConfig::default()).unwrap();
        let got: Vec<_> = toks.iter().map(|t| (t.kind, t.lexeme.as_str())).collect();
        assert_eq!(
            got,
            vec![
                (Name, "s"),
                (Ws, " "),
                (Assign, "="),
                (Ws, " "),
                (String, "\"\"\"a\n  b\"\"\""),
                (Newline, "\n"),
                (Eof, ""),
            ]
        );
        assert_eq!(toks[5].pos, SourcePos::new(2, 6));
    }

    #[test]
    fn line_continuation_does_not_capture_break() {
        assert_eq!(kinds("x \\\ny"), vec![Name, Ws, LineCont, Newline, Name, Eof]);
    }

    #[test]
    fn longest_match() {
        assert_eq!(kinds("a<=b"), vec![Name, Le, Name, Eof]);
        assert_eq!(kinds("i++"), vec![Name, PlusPlus, Eof]);
        assert_eq!(kinds("a+++b"), vec![Name, PlusPlus, Plus, Name, Eof]);
        assert_eq!(kinds("a**-b//c"), vec![Name, DoubleStar, Minus, Name, DoubleSlash, Name, Eof]);
        assert_eq!(kinds("x+=1"), vec![Name, PlusAssign, Int, Eof]);
    }

    #[test]
    fn numbers() {
        assert_eq!(kinds("1.5"), vec![Float, Eof]);
        assert_eq!(kinds("1.5e-3"), vec![Float, Eof]);
        assert_eq!(kinds("1.x"), vec![Int, Dot, Name, Eof]);
        assert_eq!(kinds("2.5e"), vec![Float, Name, Eof]);
    }

    #[test]
    fn extra_keywords_take_priority() {
        let cfg = LexerConfig {
            extra_keywords: vec![("print".to_string(), TokenKind::Print)],
            ..LexerConfig::default()
        };
        let kinds: Vec<_> = lex("print printer", &cfg).unwrap().iter().map(|t| t.kind).collect();
        assert_eq!(kinds, vec![TokenKind::Print, TokenKind::Ws, TokenKind::Name, TokenKind::Eof]);
        assert_eq!(lex("print", &LexerConfig::default()).unwrap()[0].kind, TokenKind::Name);
    }

    #[test]
    fn keywords_are_distinct_kinds() {
        assert_eq!(kinds("if elif else None Nonex"), vec![If, Ws, Elif, Ws, Else, Ws, None, Ws, Name, Eof]);
    }

    #[test]
    fn comments_and_crlf() {
        let toks = lex("a # c\r\nb", &LexerConfig::default()).unwrap();
        let got: Vec<_> = toks.iter().map(|t| (t.kind, t.lexeme.as_str())).collect();
        assert_eq!(
            got,
            vec![(Name, "a"), (Ws, " "), (Comment, "# c"), (Newline, "\r\n"), (Name, "b"), (Eof, "")]
        );
        assert_eq!(toks[4].pos, SourcePos::new(2, 0));
    }

    #[test]
    fn tab_columns() {
        let toks = lex("\tx", &LexerConfig::default()).unwrap();
        assert_eq!(toks[1].pos, SourcePos::new(1, 8));
    }

    #[test]
    fn unterminated_strings() {
        let err = lex("x = 'abc\n", &LexerConfig::default()).unwrap_err();
        assert_eq!(err, Error::UnterminatedString { pos: SourcePos::new(1, 4) });
        let err = lex("\"\"\"abc\n\n", &LexerConfig::default()).unwrap_err();
        assert_eq!(err, Error::UnterminatedString { pos: SourcePos::new(1, 0) });
        assert!(lex("'a\\", &LexerConfig::default()).is_err());
    }

    #[test]
    fn escaped_quote_and_newline_in_string() {
        assert_eq!(kinds(r#"'it\'s'"#), vec![String, Eof]);
        assert_eq!(kinds("'a\\\nb'"), vec![String, Eof]);
    }

    #[test]
    fn invalid_characters() {
        assert!(matches!(
            lex("a ? b", &LexerConfig::default()),
            Err(Error::InvalidCharacter { ch: '?', .. })
        ));
        assert!(matches!(
            lex("a \\ b", &LexerConfig::default()),
            Err(Error::InvalidCharacter { ch: '\\', .. })
        ));
        assert!(matches!(
            lex("a \u{2983}", &LexerConfig::default()),
            Err(Error::InvalidCharacter { ch: '\u{2983}', .. })
        ));
    }

    #[test]
    fn glyphs_in_delimited_mode() {
        let cfg = LexerConfig::default().delimited();
        let toks = lex("if a:\u{2983}x\u{204F}\u{2984}", &cfg).unwrap();
        let ks: Vec<_> = toks.iter().map(|t| t.kind).collect();
        assert_eq!(ks, vec![If, Ws, Name, Colon, BlockStart, Name, StmtEnd, BlockEnd, Eof]);
        assert_eq!(toks[4].pos, SourcePos::new(1, 5));
        assert_eq!(toks[5].pos, SourcePos::new(1, 6));
    }

    #[test]
    fn semicolon_separates_statements() {
        assert_eq!(kinds("a;b"), vec![Name, StmtEnd, Name, Eof]);
    }

    #[test]
    fn empty_source_is_just_eof() {
        assert_eq!(kinds(""), vec![Eof]);
    }
}
