//! Tokens, channels and the configurable control tokens shared by every
//! pipeline stage.

use std::fmt;

use serde::Serialize;

/// A position in the source text.
///
/// Lines are 1-based. Columns are 0-based and measured after tab expansion,
/// so the column of the first token on a line is also its indentation width.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SourcePos {
    pub line: u32,
    pub column: u32,
}

impl SourcePos {
    pub const START: SourcePos = SourcePos { line: 1, column: 0 };

    pub fn new(line: u32, column: u32) -> Self {
        debug_assert!(line >= 1);
        SourcePos { line, column }
    }
}

impl Default for SourcePos {
    fn default() -> Self {
        SourcePos::START
    }
}

impl fmt::Display for SourcePos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Channel {
    Default,
    Hidden,
}

impl Channel {
    pub fn as_str(self) -> &'static str {
        match self {
            Channel::Default => "DEFAULT",
            Channel::Hidden => "HIDDEN",
        }
    }
}

macro_rules! token_kinds {
    ($($variant:ident => $name:literal,)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
        pub enum TokenKind {
            $($variant,)*
        }

        impl TokenKind {
            pub const ALL: &'static [TokenKind] = &[$(TokenKind::$variant,)*];

            /// The upper-case name used by the debug token format.
            pub fn name(self) -> &'static str {
                match self {
                    $(TokenKind::$variant => $name,)*
                }
            }

            pub fn from_name(name: &str) -> Option<TokenKind> {
                match name {
                    $($name => Some(TokenKind::$variant),)*
                    _ => None,
                }
            }
        }
    };
}

token_kinds! {
    Name => "NAME",
    Int => "INT",
    Float => "FLOAT",
    String => "STRING",

    If => "IF",
    Elif => "ELIF",
    Else => "ELSE",
    While => "WHILE",
    For => "FOR",
    In => "IN",
    Def => "DEF",
    Return => "RETURN",
    Pass => "PASS",
    Break => "BREAK",
    Continue => "CONTINUE",
    Import => "IMPORT",
    // not a Mini-Python keyword; available to lexer configs that map a word to it
    Print => "PRINT",
    And => "AND",
    Or => "OR",
    Not => "NOT",
    True => "TRUE",
    False => "FALSE",
    None => "NONE",

    Plus => "PLUS",
    Minus => "MINUS",
    Star => "STAR",
    Slash => "SLASH",
    DoubleSlash => "DOUBLESLASH",
    Percent => "PERCENT",
    DoubleStar => "DOUBLESTAR",
    Eq => "EQ",
    Ne => "NE",
    Lt => "LT",
    Gt => "GT",
    Le => "LE",
    Ge => "GE",
    Assign => "ASSIGN",
    PlusAssign => "PLUSASSIGN",
    MinusAssign => "MINUSASSIGN",
    PlusPlus => "PLUSPLUS",
    LParen => "LPAREN",
    RParen => "RPAREN",
    LBracket => "LBRACKET",
    RBracket => "RBRACKET",
    LBrace => "LBRACE",
    RBrace => "RBRACE",
    Comma => "COMMA",
    Colon => "COLON",
    Dot => "DOT",

    Newline => "NEWLINE",
    Ws => "WS",
    Comment => "COMMENT",
    LineCont => "LINE_CONT",

    BlockStart => "BLOCK_START",
    BlockEnd => "BLOCK_END",
    StmtEnd => "STMT_END",

    Eof => "EOF",
}

impl TokenKind {
    pub fn keyword(word: &str) -> Option<TokenKind> {
        Some(match word {
            "if" => TokenKind::If,
            "elif" => TokenKind::Elif,
            "else" => TokenKind::Else,
            "while" => TokenKind::While,
            "for" => TokenKind::For,
            "in" => TokenKind::In,
            "def" => TokenKind::Def,
            "return" => TokenKind::Return,
            "pass" => TokenKind::Pass,
            "break" => TokenKind::Break,
            "continue" => TokenKind::Continue,
            "import" => TokenKind::Import,
            "and" => TokenKind::And,
            "or" => TokenKind::Or,
            "not" => TokenKind::Not,
            "True" => TokenKind::True,
            "False" => TokenKind::False,
            "None" => TokenKind::None,
            _ => return None,
        })
    }

    /// NEWLINE, WS, COMMENT and LINE_CONT.
    pub fn is_layout(self) -> bool {
        matches!(
            self,
            TokenKind::Newline | TokenKind::Ws | TokenKind::Comment | TokenKind::LineCont
        )
    }

    /// BLOCK_START, BLOCK_END and STMT_END.
    pub fn is_control(self) -> bool {
        matches!(
            self,
            TokenKind::BlockStart | TokenKind::BlockEnd | TokenKind::StmtEnd
        )
    }

    /// Everything a grammar component can consume besides control tokens and EOF.
    pub fn is_content(self) -> bool {
        !self.is_layout() && !self.is_control() && self != TokenKind::Eof
    }

    pub fn opens_bracket(self) -> bool {
        matches!(
            self,
            TokenKind::LParen | TokenKind::LBracket | TokenKind::LBrace
        )
    }

    pub fn closes_bracket(self) -> bool {
        matches!(
            self,
            TokenKind::RParen | TokenKind::RBracket | TokenKind::RBrace
        )
    }
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    /// Exact source characters. Empty for synthesized control tokens.
    pub lexeme: String,
    pub channel: Channel,
    pub pos: SourcePos,
}

impl Token {
    pub fn new(kind: TokenKind, lexeme: impl Into<String>, pos: SourcePos) -> Self {
        let channel = if kind.is_layout() {
            Channel::Hidden
        } else {
            Channel::Default
        };
        Token {
            kind,
            lexeme: lexeme.into(),
            channel,
            pos,
        }
    }

    /// A control token (or EOF) injected by the pipeline at `pos`.
    pub fn synthesized(kind: TokenKind, pos: SourcePos) -> Self {
        Token::new(kind, "", pos)
    }

    pub fn is_hidden(&self) -> bool {
        self.channel == Channel::Hidden
    }

    /// Position just past the end of the lexeme, in the same column metric
    /// the lexer uses.
    pub fn end_pos(&self, policy: &IndentPolicy) -> SourcePos {
        let mut pos = self.pos;
        for c in self.lexeme.chars() {
            match c {
                '\n' => {
                    pos.line += 1;
                    pos.column = 0;
                }
                '\r' => {}
                '\t' => pos.column = policy.expand_tab(pos.column),
                _ => pos.column += 1,
            }
        }
        pos
    }

    /// One line of the debug format: `LINE:COL KIND "lexeme" CHANNEL`.
    pub fn debug_line(&self) -> String {
        format!(
            "{}:{} {} \"{}\" {}",
            self.pos.line,
            self.pos.column,
            self.kind.name(),
            escape_lexeme(&self.lexeme),
            self.channel.as_str()
        )
    }
}

fn escape_lexeme(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out
}

/// Renders a token sequence in the debug format, one token per line.
pub fn debug_dump(tokens: &[Token]) -> String {
    let mut out = String::new();
    for t in tokens {
        out.push_str(&t.debug_line());
        out.push('\n');
    }
    out
}

/// Glyphs used to print control tokens and to recognise them in delimited input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlTokenConfig {
    pub block_start_glyph: String,
    pub block_end_glyph: String,
    /// The first entry is the rendering glyph; later entries are alternatives
    /// that are also statement separators in ordinary source text.
    pub stmt_end_glyphs: Vec<String>,
}

impl Default for ControlTokenConfig {
    fn default() -> Self {
        ControlTokenConfig {
            block_start_glyph: "\u{2983}".to_string(),
            block_end_glyph: "\u{2984}".to_string(),
            stmt_end_glyphs: vec!["\u{204F}".to_string(), ";".to_string()],
        }
    }
}

impl ControlTokenConfig {
    pub fn stmt_end_glyph(&self) -> &str {
        self.stmt_end_glyphs.first().map(String::as_str).unwrap_or("")
    }

    /// Checks that the glyph sets are nonempty and pairwise disjoint.
    pub fn validate(&self) -> Result<(), String> {
        if self.block_start_glyph.is_empty() || self.block_end_glyph.is_empty() {
            return Err("block glyphs must be nonempty".into());
        }
        if self.stmt_end_glyphs.is_empty() || self.stmt_end_glyphs.iter().any(|g| g.is_empty()) {
            return Err("at least one nonempty statement-end glyph is required".into());
        }
        if self.block_start_glyph == self.block_end_glyph {
            return Err("block start and end glyphs coincide".into());
        }
        for g in &self.stmt_end_glyphs {
            if *g == self.block_start_glyph || *g == self.block_end_glyph {
                return Err(format!("statement-end glyph {g:?} collides with a block glyph"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndentPolicy {
    pub tab_stop: u32,
    pub allow_tabs: bool,
}

impl Default for IndentPolicy {
    fn default() -> Self {
        IndentPolicy {
            tab_stop: 8,
            allow_tabs: true,
        }
    }
}

impl IndentPolicy {
    pub fn with_tab_stop(tab_stop: u32) -> Self {
        IndentPolicy {
            tab_stop: tab_stop.max(1),
            ..IndentPolicy::default()
        }
    }

    /// Column reached by a tab at `column`.
    pub fn expand_tab(&self, column: u32) -> u32 {
        let stop = self.tab_stop.max(1);
        (column / stop + 1) * stop
    }

    /// Width of a run of spaces and tabs starting at `column`.
    pub fn width_from(&self, column: u32, ws: &str) -> u32 {
        let mut col = column;
        for c in ws.chars() {
            if c == '\t' {
                col = self.expand_tab(col);
            } else {
                col += 1;
            }
        }
        col - column
    }
}

/// Textual form of `t` for serialization back into characters.
pub fn render_token(t: &Token, cfg: &ControlTokenConfig) -> String {
    match t.kind {
        TokenKind::BlockStart => cfg.block_start_glyph.clone(),
        TokenKind::BlockEnd => cfg.block_end_glyph.clone(),
        TokenKind::StmtEnd => cfg.stmt_end_glyph().to_string(),
        TokenKind::Newline if t.lexeme.is_empty() => "\n".to_string(),
        TokenKind::Eof => String::new(),
        _ => t.lexeme.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_content_and_control_tokens() {
        let cfg = ControlTokenConfig::default();
        let name = Token::new(TokenKind::Name, "print", SourcePos::START);
        assert_eq!(render_token(&name, &cfg), "print");
        let start = Token::synthesized(TokenKind::BlockStart, SourcePos::START);
        assert_eq!(render_token(&start, &cfg), "\u{2983}");
        let end = Token::synthesized(TokenKind::BlockEnd, SourcePos::START);
        assert_eq!(render_token(&end, &cfg), "\u{2984}");
        let stmt = Token::synthesized(TokenKind::StmtEnd, SourcePos::START);
        assert_eq!(render_token(&stmt, &cfg), "\u{204F}");
        let nl = Token::new(TokenKind::Newline, "\n", SourcePos::START);
        assert_eq!(render_token(&nl, &cfg), "\n");
        let ws = Token::new(TokenKind::Ws, " \t", SourcePos::START);
        assert_eq!(render_token(&ws, &cfg), " \t");
    }

    #[test]
    fn render_is_total() {
        let cfg = ControlTokenConfig::default();
        for &kind in TokenKind::ALL {
            let _ = render_token(&Token::synthesized(kind, SourcePos::START), &cfg);
        }
    }

    #[test]
    fn layout_tokens_start_hidden() {
        for &kind in TokenKind::ALL {
            let t = Token::synthesized(kind, SourcePos::START);
            assert_eq!(t.is_hidden(), kind.is_layout(), "{kind}");
        }
    }

    #[test]
    fn kind_names_round_trip() {
        for &kind in TokenKind::ALL {
            assert_eq!(TokenKind::from_name(kind.name()), Some(kind));
        }
    }

    #[test]
    fn debug_line_escapes() {
        let t = Token::new(TokenKind::String, "\"a\\n\"", SourcePos::new(3, 4));
        assert_eq!(t.debug_line(), r#"3:4 STRING "\"a\\n\"" DEFAULT"#);
        let nl = Token::new(TokenKind::Newline, "\r\n", SourcePos::new(1, 5));
        assert_eq!(nl.debug_line(), r#"1:5 NEWLINE "\r\n" HIDDEN"#);
    }

    #[test]
    fn default_glyphs_are_disjoint() {
        ControlTokenConfig::default().validate().unwrap();
        let bad = ControlTokenConfig {
            stmt_end_glyphs: vec!["\u{2983}".into()],
            ..ControlTokenConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn tab_expansion() {
        let p = IndentPolicy::default();
        assert_eq!(p.width_from(0, "\t"), 8);
        assert_eq!(p.width_from(0, "  \t"), 8);
        assert_eq!(p.width_from(0, "\t  "), 10);
        assert_eq!(IndentPolicy::with_tab_stop(4).width_from(0, "\t\t"), 8);
    }

    #[test]
    fn end_pos_tracks_newlines() {
        let p = IndentPolicy::default();
        let t = Token::new(TokenKind::String, "\"\"\"a\n  b\"\"\"", SourcePos::new(2, 4));
        assert_eq!(t.end_pos(&p), SourcePos::new(3, 6));
    }
}
