//! Line-based reference for the indentation preprocessor.
//!
//! Works on physical lines and characters, shares no code with the lexer or
//! the streaming preprocessor, and is used to cross-check them. It knows just
//! enough lexical structure to join logical lines (brackets, backslashes,
//! string literals) and to count tokens.

use crate::error::{Error, Result};
use crate::token::{IndentPolicy, SourcePos, Token, TokenKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryEvent {
    StmtEnd,
    BlockStart,
    BlockEnd,
    /// A run of this many content tokens between two boundaries.
    Content(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum StrState {
    None,
    Single(char),
    Triple(char),
}

struct LogicalLine {
    line: u32,
    indent: u32,
    /// Token counts of the `;`-separated pieces.
    segments: Vec<usize>,
}

const TWO_CHAR: [&str; 9] = ["**", "//", "==", "!=", "<=", ">=", "+=", "-=", "++"];

struct Scanner {
    strings: StrState,
    depth: i64,
}

impl Scanner {
    /// Scans one physical line (or its remainder), adding token counts to
    /// `segments`. Returns true when the line ends with a backslash
    /// continuation.
    fn scan(&mut self, text: &str, segments: &mut Vec<usize>) -> bool {
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            match self.strings {
                StrState::Triple(q) => {
                    if c == '\\' {
                        i += 2;
                    } else if c == q && chars.get(i + 1) == Some(&q) && chars.get(i + 2) == Some(&q) {
                        self.strings = StrState::None;
                        i += 3;
                    } else {
                        i += 1;
                    }
                    continue;
                }
                StrState::Single(q) => {
                    if c == '\\' {
                        if i + 1 == chars.len() {
                            // escaped line break, string continues
                            return false;
                        }
                        i += 2;
                    } else if c == q {
                        self.strings = StrState::None;
                        i += 1;
                    } else {
                        i += 1;
                    }
                    continue;
                }
                StrState::None => {}
            }
            let count = segments.last_mut().expect("at least one segment");
            if c == ' ' || c == '\t' || c == '\x0c' {
                i += 1;
            } else if c == '#' {
                break;
            } else if c == '\\' {
                return i + 1 == chars.len();
            } else if c == '"' || c == '\'' {
                *count += 1;
                if chars.get(i + 1) == Some(&c) && chars.get(i + 2) == Some(&c) {
                    self.strings = StrState::Triple(c);
                    i += 3;
                } else {
                    self.strings = StrState::Single(c);
                    i += 1;
                }
            } else if c.is_ascii_digit() {
                *count += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if chars.get(i) == Some(&'.') && chars.get(i + 1).is_some_and(char::is_ascii_digit) {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if matches!(chars.get(i), Some('e' | 'E')) {
                        let mut j = i + 1;
                        if matches!(chars.get(j), Some('+' | '-')) {
                            j += 1;
                        }
                        if chars.get(j).is_some_and(char::is_ascii_digit) {
                            i = j;
                            while i < chars.len() && chars[i].is_ascii_digit() {
                                i += 1;
                            }
                        }
                    }
                }
            } else if c == '_' || c.is_alphabetic() {
                *count += 1;
                while i < chars.len() && (chars[i] == '_' || chars[i].is_alphanumeric()) {
                    i += 1;
                }
            } else if c == ';' {
                if self.depth == 0 {
                    segments.push(0);
                } else {
                    *count += 1;
                }
                i += 1;
            } else {
                *count += 1;
                match c {
                    '(' | '[' | '{' => self.depth += 1,
                    ')' | ']' | '}' => self.depth -= 1,
                    _ => {}
                }
                let pair: String = chars[i..chars.len().min(i + 2)].iter().collect();
                i += if TWO_CHAR.contains(&pair.as_str()) { 2 } else { 1 };
            }
        }
        false
    }
}

fn indent_width(ws: &str, policy: &IndentPolicy) -> u32 {
    let stop = policy.tab_stop.max(1);
    let mut col = 0;
    for c in ws.chars() {
        if c == '\t' {
            col = (col / stop + 1) * stop;
        } else {
            col += 1;
        }
    }
    col
}

fn logical_lines(source: &str, policy: &IndentPolicy) -> Result<Vec<LogicalLine>> {
    let mut out = Vec::new();
    let mut scanner = Scanner {
        strings: StrState::None,
        depth: 0,
    };
    let mut current: Option<LogicalLine> = None;
    for (idx, raw) in source.split('\n').enumerate() {
        let line_no = idx as u32 + 1;
        let text = raw.strip_suffix('\r').unwrap_or(raw);
        let continued = match current.as_mut() {
            Some(ll) => scanner.scan(text, &mut ll.segments),
            None => {
                let body = text.trim_start_matches([' ', '\t', '\x0c']);
                if body.is_empty() || body.starts_with('#') {
                    continue;
                }
                let ws = &text[..text.len() - body.len()];
                if ws.contains('\t') && !policy.allow_tabs {
                    return Err(Error::TabsDisallowed {
                        pos: SourcePos::new(line_no, 0),
                    });
                }
                let mut ll = LogicalLine {
                    line: line_no,
                    indent: indent_width(ws, policy),
                    segments: vec![0],
                };
                let cont = scanner.scan(body, &mut ll.segments);
                current = Some(ll);
                cont
            }
        };
        if !continued && scanner.depth <= 0 && scanner.strings == StrState::None {
            out.extend(current.take());
        }
    }
    if scanner.strings != StrState::None {
        let line = current.as_ref().map_or(1, |ll| ll.line);
        return Err(Error::UnterminatedString {
            pos: SourcePos::new(line, 0),
        });
    }
    out.extend(current);
    Ok(out)
}

/// Boundary events of `source` computed line by line.
pub fn oracle_boundaries(source: &str, policy: &IndentPolicy) -> Result<Vec<BoundaryEvent>> {
    let lines = logical_lines(source, policy)?;
    let mut events = Vec::new();
    let mut stack = vec![0u32];
    let mut open_statement = false;
    for (i, ll) in lines.iter().enumerate() {
        let top = *stack.last().unwrap();
        let mismatch = Error::IndentMismatch {
            column: ll.indent,
            pos: SourcePos::new(ll.line, 0),
        };
        if i == 0 {
            if ll.indent > 0 {
                return Err(mismatch);
            }
        } else if ll.indent > top {
            stack.push(ll.indent);
            events.push(BoundaryEvent::BlockStart);
        } else {
            if open_statement {
                events.push(BoundaryEvent::StmtEnd);
            }
            while *stack.last().unwrap() > ll.indent {
                stack.pop();
                events.push(BoundaryEvent::BlockEnd);
            }
            if *stack.last().unwrap() != ll.indent {
                return Err(mismatch);
            }
        }
        open_statement = false;
        let last = ll.segments.len() - 1;
        for (j, &count) in ll.segments.iter().enumerate() {
            if count > 0 {
                events.push(BoundaryEvent::Content(count));
                open_statement = true;
            }
            if j < last {
                events.push(BoundaryEvent::StmtEnd);
                open_statement = false;
            }
        }
    }
    if open_statement {
        events.push(BoundaryEvent::StmtEnd);
    }
    events.extend(std::iter::repeat_n(BoundaryEvent::BlockEnd, stack.len() - 1));
    Ok(events)
}

/// Projects a processed token stream onto boundary events for comparison
/// with [`oracle_boundaries`].
pub fn stream_boundaries(stream: &[Token]) -> Vec<BoundaryEvent> {
    let mut events = Vec::new();
    let mut run = 0;
    for t in stream.iter().filter(|t| !t.is_hidden()) {
        let event = match t.kind {
            TokenKind::StmtEnd => BoundaryEvent::StmtEnd,
            TokenKind::BlockStart => BoundaryEvent::BlockStart,
            TokenKind::BlockEnd => BoundaryEvent::BlockEnd,
            TokenKind::Eof => continue,
            _ => {
                run += 1;
                continue;
            }
        };
        if run > 0 {
            events.push(BoundaryEvent::Content(run));
            run = 0;
        }
        events.push(event);
    }
    if run > 0 {
        events.push(BoundaryEvent::Content(run));
    }
    events
}

#[cfg(test)]
mod tests {
    use super::*;
    use BoundaryEvent::*;

    fn events(src: &str) -> Vec<BoundaryEvent> {
        oracle_boundaries(src, &IndentPolicy::default()).unwrap()
    }

    #[test]
    fn flat_file() {
        assert_eq!(events("a\nb\n"), vec![Content(1), StmtEnd, Content(1), StmtEnd]);
    }

    #[test]
    fn one_block() {
        assert_eq!(
            events("if a:\n  b\n"),
            vec![Content(3), BlockStart, Content(1), StmtEnd, BlockEnd]
        );
    }

    #[test]
    fn double_dedent() {
        assert_eq!(
            events("if a:\n  if b:\n    c\nd\n"),
            vec![
                Content(3),
                BlockStart,
                Content(3),
                BlockStart,
                Content(1),
                StmtEnd,
                BlockEnd,
                BlockEnd,
                Content(1),
                StmtEnd
            ]
        );
    }

    #[test]
    fn continuation_and_blank_lines() {
        assert_eq!(
            events("x = 1 + \\\n      2\n\n# note\n   \ny\n"),
            vec![Content(5), StmtEnd, Content(1), StmtEnd]
        );
    }

    #[test]
    fn brackets_and_strings_join_lines() {
        assert_eq!(events("f(a,\nb)\n"), vec![Content(6), StmtEnd]);
        assert_eq!(events("s = '''x\ny'''\n"), vec![Content(3), StmtEnd]);
        assert_eq!(events("s = 'a#b' # c\n"), vec![Content(3), StmtEnd]);
    }

    #[test]
    fn operators_count_once() {
        assert_eq!(events("a <= b ** 2.5e3\n"), vec![Content(5), StmtEnd]);
    }

    #[test]
    fn semicolons() {
        assert_eq!(
            events("a; b\nc;\n"),
            vec![Content(1), StmtEnd, Content(1), StmtEnd, Content(1), StmtEnd]
        );
    }

    #[test]
    fn mismatches() {
        let p = IndentPolicy::default();
        assert_eq!(
            oracle_boundaries("  x\n", &p),
            Err(Error::IndentMismatch {
                column: 2,
                pos: SourcePos::new(1, 0)
            })
        );
        assert!(matches!(
            oracle_boundaries("if a:\n    b\n  c\n", &p),
            Err(Error::IndentMismatch { column: 2, .. })
        ));
    }

    #[test]
    fn empty() {
        assert!(events("").is_empty());
    }
}
