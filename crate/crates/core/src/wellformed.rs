//! Post-parse checks for constructs the reused expression component accepts
//! but Mini-Python does not.

use std::fmt;

use serde::Serialize;

use crate::ast::{walk_exprs, ExprKind, Module, Span, UnaryOp};

/// Code for `++x` / `x++`.
pub const INCREMENT_NOT_ALLOWED: &str = "WS001";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub code: &'static str,
    pub message: String,
    pub span: Span,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} {}", self.span.start, self.code, self.message)
    }
}

/// One diagnostic per increment expression, in source order.
pub fn check_wellformed(m: &Module) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    walk_exprs(m, &mut |e| {
        let message = match &e.kind {
            ExprKind::Unary {
                op: UnaryOp::PreInc,
                ..
            } => "prefix increment is not allowed",
            ExprKind::IncSuffix { .. } => "suffix increment is not allowed",
            _ => return,
        };
        out.push(Diagnostic {
            code: INCREMENT_NOT_ALLOWED,
            message: message.to_string(),
            span: e.span,
        });
    });
    out.sort_by_key(|d| d.span.start);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::token::SourcePos;
    use crate::Frontend;

    fn diags(src: &str) -> Vec<Diagnostic> {
        check_wellformed(&Frontend::minipython().parse(src).unwrap())
    }

    #[test]
    fn prefix_increment() {
        let d = diags("x = ++i\n");
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].code, "WS001");
        assert_eq!(
            d[0].span,
            Span::new(SourcePos::new(1, 4), SourcePos::new(1, 7))
        );
    }

    #[test]
    fn clean_module() {
        assert!(diags("x = i\n").is_empty());
        assert!(diags("x = i + +1\n").is_empty());
    }

    #[test]
    fn both_forms_counted() {
        let d = diags("y = a++ + ++b\n");
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].span.start, SourcePos::new(1, 4));
        assert_eq!(d[1].span.start, SourcePos::new(1, 10));
    }

    #[test]
    fn nested_in_blocks() {
        assert_eq!(diags("while a:\n    f(i++)\n").len(), 1);
    }
}
