//! Renders a processed token stream back into characters with explicit
//! control glyphs, so an unmodified whitespace-insensitive frontend can read
//! it.

use crate::error::{Error, Result};
use crate::lexer::{lex, LexerConfig};
use crate::token::{render_token, ControlTokenConfig, Token, TokenKind};

fn check_balance(stream: &[Token]) -> Result<()> {
    let mut depth: usize = 0;
    for t in stream.iter().filter(|t| !t.is_hidden()) {
        match t.kind {
            TokenKind::BlockStart => depth += 1,
            TokenKind::BlockEnd => {
                depth = depth.checked_sub(1).ok_or_else(|| {
                    Error::UnbalancedStream(format!("BLOCK_END at {} closes nothing", t.pos))
                })?;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::UnbalancedStream(format!("{depth} block(s) left open")));
    }
    Ok(())
}

/// Whether `text` lexes to exactly the token texts in `expected`.
fn relexes_as(text: &str, expected: &[String], cfg: &LexerConfig) -> bool {
    match lex(text, cfg) {
        Ok(tokens) => {
            let got: Vec<&str> = tokens
                .iter()
                .filter(|t| t.kind != TokenKind::Eof)
                .map(|t| t.lexeme.as_str())
                .collect();
            got.len() == expected.len() && got.iter().zip(expected).all(|(a, b)| a == b)
        }
        Err(_) => false,
    }
}

/// Renders `stream` (a full processed stream, hidden tokens included).
///
/// Control tokens become their glyphs, NEWLINE tokens become line breaks,
/// whitespace and comments are dropped, and a single space is put between
/// two tokens only when gluing them would lex differently.
pub fn render_delimited(stream: &[Token], cfg: &ControlTokenConfig) -> Result<String> {
    check_balance(stream)?;
    let lex_cfg = LexerConfig {
        control_tokens: cfg.clone(),
        recognize_control_glyphs: true,
        ..LexerConfig::default()
    };
    let mut out = String::new();
    // Texts of the tokens written since the last space or line break.
    let mut glued: Vec<String> = Vec::new();
    let mut glued_text = String::new();
    for t in stream {
        match t.kind {
            TokenKind::Ws | TokenKind::Comment | TokenKind::LineCont | TokenKind::Eof => {}
            TokenKind::Newline => {
                out.push('\n');
                glued.clear();
                glued_text.clear();
            }
            _ => {
                let text = render_token(t, cfg);
                if !glued.is_empty() {
                    let candidate = format!("{glued_text}{text}");
                    glued.push(text.clone());
                    if relexes_as(&candidate, &glued, &lex_cfg) {
                        out.push_str(&text);
                        glued_text = candidate;
                        continue;
                    }
                    out.push(' ');
                    glued.clear();
                    glued_text.clear();
                }
                out.push_str(&text);
                glued_text.push_str(&text);
                glued.push(text);
            }
        }
    }
    Ok(out)
}
