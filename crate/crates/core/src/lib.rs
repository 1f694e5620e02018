//! Indentation-sensitive frontends from whitespace-insensitive grammar
//! components.
//!
//! Source text goes through a lossless [`lexer`], a bracket-tracking
//! [`dispatch`]er, and an [`indent`] preprocessor that inserts explicit
//! block-start, block-end and statement-end tokens. The resulting stream is
//! consumed by a parser composed from reusable [`grammar`] components, or
//! rendered back to text with explicit delimiters by the [`serializer`].

pub mod ast;
pub mod corpus;
pub mod dispatch;
pub mod error;
pub mod grammar;
pub mod indent;
pub mod lexer;
pub mod oracle;
pub mod pipeline;
pub mod serializer;
pub mod token;
pub mod wellformed;

pub use ast::Module;
pub use error::{Error, Result};
pub use grammar::Registry;
pub use lexer::LexerConfig;
pub use token::{Channel, ControlTokenConfig, IndentPolicy, SourcePos, Token, TokenKind};

use grammar::{Parser, TokenVecSource};
use pipeline::Pipeline;

/// A lexer configuration paired with a composed grammar.
pub struct Frontend {
    lexer: LexerConfig,
    registry: Registry,
}

impl Frontend {
    pub fn new(lexer: LexerConfig, registry: Registry) -> Self {
        Frontend { lexer, registry }
    }

    /// The Mini-Python frontend with default settings.
    pub fn minipython() -> Self {
        let lexer = LexerConfig::default();
        let registry = grammar::build_minipython_registry(&lexer.control_tokens)
            .expect("built-in components compose");
        Frontend { lexer, registry }
    }

    /// Mini-Python without the named components.
    pub fn minipython_without(excluded: &[&str]) -> Result<Self> {
        let lexer = LexerConfig::default();
        let registry = grammar::build_registry_without(&lexer.control_tokens, excluded)?;
        Ok(Frontend { lexer, registry })
    }

    pub fn with_tab_stop(mut self, tab_stop: u32) -> Self {
        self.set_tab_stop(tab_stop);
        self
    }

    pub fn set_tab_stop(&mut self, tab_stop: u32) {
        self.lexer.indent_policy.tab_stop = tab_stop.max(1);
    }

    pub fn lexer_config(&self) -> &LexerConfig {
        &self.lexer
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    /// Lexer output only.
    pub fn raw_tokens(&self, source: &str) -> Result<Vec<Token>> {
        lexer::lex(source, &self.lexer)
    }

    /// The full processed stream, hidden tokens included.
    pub fn processed_tokens(&self, source: &str) -> Result<Vec<Token>> {
        pipeline::full_stream(source, &self.lexer)
    }

    pub fn parse(&self, source: &str) -> Result<Module> {
        let mut pipe = Pipeline::new(source, &self.lexer);
        Parser::new(&self.registry, &mut pipe, self.lexer.indent_policy)?.parse_module()
    }

    /// Parses text that already carries explicit delimiter glyphs, with no
    /// indentation processing.
    pub fn parse_delimited(&self, text: &str) -> Result<Module> {
        let tokens = lexer::lex(text, &self.lexer.delimited())?;
        let mut src = TokenVecSource::new(tokens);
        Parser::new(&self.registry, &mut src, self.lexer.indent_policy)?.parse_module()
    }

    /// Renders `source` with explicit delimiter glyphs.
    pub fn render(&self, source: &str) -> Result<String> {
        let stream = self.processed_tokens(source)?;
        serializer::render_delimited(&stream, &self.lexer.control_tokens)
    }
}
