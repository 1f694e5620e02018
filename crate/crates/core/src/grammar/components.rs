//! The bundled components. `Basics`, `CommonLiterals` and
//! `CommonExpressions` are C-style and know nothing about layout;
//! `BasicStatements` and `PyStatements` reach blocks and statement ends only
//! through the registry's extension points.

use crate::ast::{
    AssignOp, BinOp, CmpOp, DictEntry, ElifClause, Expr, ExprKind, Span, Stmt, StmtKind, UnaryOp,
};
use crate::error::{Error, Result};
use crate::token::{Token, TokenKind};

use super::{Component, Parser};

/// Binding powers, loosest first.
mod bp {
    pub const OR: u8 = 10;
    pub const AND: u8 = 20;
    pub const NOT: u8 = 30;
    pub const COMPARE: u8 = 40;
    pub const ADDITIVE: u8 = 50;
    pub const MULTIPLICATIVE: u8 = 60;
    pub const UNARY: u8 = 70;
    pub const POWER: u8 = 80;
    pub const POSTFIX: u8 = 90;
}

/// Every Mini-Python component, in composition order.
pub const MINIPYTHON_COMPONENTS: &[fn() -> Component] = &[
    basics,
    common_literals,
    common_expressions,
    basic_statements,
    py_statements,
];

pub fn component_by_name(name: &str) -> Option<Component> {
    MINIPYTHON_COMPONENTS
        .iter()
        .map(|f| f())
        .find(|c| c.name == name)
}

fn tok_span(p: &Parser<'_>, tok: &Token) -> Span {
    p.span_from(tok.pos)
}

pub fn basics() -> Component {
    Component::new("Basics").prefix(TokenKind::Name, |p, tok| {
        let span = tok_span(p, &tok);
        Ok(Expr::new(ExprKind::Name { id: tok.lexeme }, span))
    })
}

pub fn common_literals() -> Component {
    Component::new("CommonLiterals")
        .prefix(TokenKind::Int, |p, tok| {
            let span = tok_span(p, &tok);
            Ok(Expr::new(ExprKind::IntLit { value: tok.lexeme }, span))
        })
        .prefix(TokenKind::Float, |p, tok| {
            let span = tok_span(p, &tok);
            Ok(Expr::new(ExprKind::FloatLit { value: tok.lexeme }, span))
        })
        .prefix(TokenKind::String, |p, tok| {
            let span = tok_span(p, &tok);
            Ok(Expr::new(ExprKind::StrLit { value: tok.lexeme }, span))
        })
        .prefix(TokenKind::True, |p, tok| {
            Ok(Expr::new(ExprKind::BoolLit { value: true }, tok_span(p, &tok)))
        })
        .prefix(TokenKind::False, |p, tok| {
            Ok(Expr::new(ExprKind::BoolLit { value: false }, tok_span(p, &tok)))
        })
        .prefix(TokenKind::None, |p, tok| {
            Ok(Expr::new(ExprKind::NoneLit, tok_span(p, &tok)))
        })
}

fn unary(p: &mut Parser<'_>, tok: Token, op: UnaryOp, operand_bp: u8) -> Result<Expr> {
    let operand = p.parse_expr_bp(operand_bp)?;
    Ok(Expr::new(
        ExprKind::Unary {
            op,
            operand: Box::new(operand),
        },
        p.span_from(tok.pos),
    ))
}

fn binary(p: &mut Parser<'_>, left: Expr, op: BinOp, right_bp: u8) -> Result<Expr> {
    let right = p.parse_expr_bp(right_bp)?;
    let span = p.span_from(left.span.start);
    Ok(Expr::new(
        ExprKind::Binary {
            op,
            left: Box::new(left),
            right: Box::new(right),
        },
        span,
    ))
}

fn compare_op(kind: TokenKind) -> Option<CmpOp> {
    Some(match kind {
        TokenKind::Eq => CmpOp::Eq,
        TokenKind::Ne => CmpOp::Ne,
        TokenKind::Lt => CmpOp::Lt,
        TokenKind::Gt => CmpOp::Gt,
        TokenKind::Le => CmpOp::Le,
        TokenKind::Ge => CmpOp::Ge,
        _ => return None,
    })
}

fn compare(p: &mut Parser<'_>, left: Expr, tok: Token) -> Result<Expr> {
    let op = compare_op(tok.kind).expect("registered for comparison tokens only");
    let right = p.parse_expr_bp(bp::COMPARE)?;
    // comparisons do not chain
    if compare_op(p.peek_kind()).is_some() {
        return Err(p.unexpected(vec![]));
    }
    let span = p.span_from(left.span.start);
    Ok(Expr::new(
        ExprKind::Compare {
            op,
            left: Box::new(left),
            right: Box::new(right),
        },
        span,
    ))
}

/// Comma-separated expressions up to `close`, trailing comma allowed. The
/// opening token is already consumed. Returns the items and whether a comma
/// was seen.
fn expr_list(p: &mut Parser<'_>, close: TokenKind) -> Result<(Vec<Expr>, bool)> {
    let mut items = Vec::new();
    let mut comma = false;
    while !p.at(close) {
        items.push(p.parse_expr()?);
        if p.eat(TokenKind::Comma)?.is_some() {
            comma = true;
        } else {
            break;
        }
    }
    p.expect(close)?;
    Ok((items, comma))
}

pub fn common_expressions() -> Component {
    let mut c = Component::new("CommonExpressions")
        .prefix(TokenKind::Minus, |p, t| unary(p, t, UnaryOp::Neg, bp::UNARY))
        .prefix(TokenKind::Plus, |p, t| unary(p, t, UnaryOp::Pos, bp::UNARY))
        .prefix(TokenKind::PlusPlus, |p, t| unary(p, t, UnaryOp::PreInc, bp::UNARY))
        .prefix(TokenKind::Not, |p, t| unary(p, t, UnaryOp::Not, bp::NOT))
        .prefix(TokenKind::LParen, |p, open| {
            let (mut items, comma) = expr_list(p, TokenKind::RParen)?;
            let span = p.span_from(open.pos);
            let kind = if items.len() == 1 && !comma {
                ExprKind::Paren {
                    inner: Box::new(items.pop().expect("one item")),
                }
            } else {
                ExprKind::TupleDisplay { items }
            };
            Ok(Expr::new(kind, span))
        })
        .prefix(TokenKind::LBracket, |p, open| {
            let (items, _) = expr_list(p, TokenKind::RBracket)?;
            Ok(Expr::new(ExprKind::ListDisplay { items }, p.span_from(open.pos)))
        })
        .prefix(TokenKind::LBrace, |p, open| {
            let mut entries = Vec::new();
            while !p.at(TokenKind::RBrace) {
                let key = p.parse_expr()?;
                p.expect(TokenKind::Colon)?;
                let value = p.parse_expr()?;
                entries.push(DictEntry { key, value });
                if p.eat(TokenKind::Comma)?.is_none() {
                    break;
                }
            }
            p.expect(TokenKind::RBrace)?;
            Ok(Expr::new(ExprKind::DictDisplay { entries }, p.span_from(open.pos)))
        })
        .infix(TokenKind::Or, bp::OR, |p, l, _| binary(p, l, BinOp::Or, bp::OR))
        .infix(TokenKind::And, bp::AND, |p, l, _| binary(p, l, BinOp::And, bp::AND))
        .infix(TokenKind::Plus, bp::ADDITIVE, |p, l, _| binary(p, l, BinOp::Add, bp::ADDITIVE))
        .infix(TokenKind::Minus, bp::ADDITIVE, |p, l, _| binary(p, l, BinOp::Sub, bp::ADDITIVE))
        .infix(TokenKind::Star, bp::MULTIPLICATIVE, |p, l, _| {
            binary(p, l, BinOp::Mul, bp::MULTIPLICATIVE)
        })
        .infix(TokenKind::Slash, bp::MULTIPLICATIVE, |p, l, _| {
            binary(p, l, BinOp::Div, bp::MULTIPLICATIVE)
        })
        .infix(TokenKind::DoubleSlash, bp::MULTIPLICATIVE, |p, l, _| {
            binary(p, l, BinOp::FloorDiv, bp::MULTIPLICATIVE)
        })
        .infix(TokenKind::Percent, bp::MULTIPLICATIVE, |p, l, _| {
            binary(p, l, BinOp::Mod, bp::MULTIPLICATIVE)
        })
        // right-associative; the right operand may itself be a unary expression
        .infix(TokenKind::DoubleStar, bp::POWER, |p, l, _| binary(p, l, BinOp::Pow, bp::POWER - 1))
        .infix(TokenKind::LParen, bp::POSTFIX, |p, func, _| {
            let (args, _) = expr_list(p, TokenKind::RParen)?;
            let span = p.span_from(func.span.start);
            Ok(Expr::new(
                ExprKind::Call {
                    func: Box::new(func),
                    args,
                },
                span,
            ))
        })
        .infix(TokenKind::Dot, bp::POSTFIX, |p, obj, _| {
            let name = p.expect(TokenKind::Name)?;
            let span = p.span_from(obj.span.start);
            Ok(Expr::new(
                ExprKind::Attribute {
                    obj: Box::new(obj),
                    name: name.lexeme,
                },
                span,
            ))
        })
        .infix(TokenKind::LBracket, bp::POSTFIX, |p, obj, _| {
            let index = p.parse_expr()?;
            p.expect(TokenKind::RBracket)?;
            let span = p.span_from(obj.span.start);
            Ok(Expr::new(
                ExprKind::Subscript {
                    obj: Box::new(obj),
                    index: Box::new(index),
                },
                span,
            ))
        })
        .infix(TokenKind::PlusPlus, bp::POSTFIX, |p, operand, _| {
            let span = p.span_from(operand.span.start);
            Ok(Expr::new(
                ExprKind::IncSuffix {
                    operand: Box::new(operand),
                },
                span,
            ))
        });
    for kind in [
        TokenKind::Eq,
        TokenKind::Ne,
        TokenKind::Lt,
        TokenKind::Gt,
        TokenKind::Le,
        TokenKind::Ge,
    ] {
        c = c.infix(kind, bp::COMPARE, compare);
    }
    c
}

fn is_assignable(e: &Expr) -> bool {
    match &e.kind {
        ExprKind::Name { .. } | ExprKind::Attribute { .. } | ExprKind::Subscript { .. } => true,
        ExprKind::TupleDisplay { items } | ExprKind::ListDisplay { items } => {
            items.iter().all(is_assignable)
        }
        ExprKind::Paren { inner } => is_assignable(inner),
        _ => false,
    }
}

fn assign_target(target: Expr, op_tok: &Token) -> Result<Expr> {
    if is_assignable(&target) {
        Ok(target)
    } else {
        Err(Error::Parse {
            expected: vec![],
            found: op_tok.clone(),
        })
    }
}

/// `Expression EndStmt`, or an assignment `target (= target)* = value EndStmt`
/// / `target (+=|-=) value EndStmt`. Always available to a composed language
/// as the fallback statement.
pub(super) fn expr_or_assign(p: &mut Parser<'_>) -> Result<Stmt> {
    let start = p.pos();
    let first = p.parse_expr()?;
    let kind = match p.peek_kind() {
        TokenKind::Assign => {
            let mut targets = Vec::new();
            let mut value = first;
            while p.at(TokenKind::Assign) {
                let op_tok = p.advance()?;
                targets.push(assign_target(value, &op_tok)?);
                value = p.parse_expr()?;
            }
            StmtKind::Assign {
                targets,
                op: AssignOp::Assign,
                value,
            }
        }
        TokenKind::PlusAssign | TokenKind::MinusAssign => {
            let op_tok = p.advance()?;
            let op = if op_tok.kind == TokenKind::PlusAssign {
                AssignOp::AddAssign
            } else {
                AssignOp::SubAssign
            };
            let target = assign_target(first, &op_tok)?;
            let value = p.parse_expr()?;
            StmtKind::Assign {
                targets: vec![target],
                op,
                value,
            }
        }
        _ => StmtKind::ExprStmt { expr: first },
    };
    let stmt = p.finish_stmt(kind, start);
    p.expect_end_stmt()?;
    Ok(stmt)
}

fn simple_keyword(p: &mut Parser<'_>, kind: StmtKind) -> Result<Stmt> {
    let start = p.advance()?.pos;
    let stmt = p.finish_stmt(kind, start);
    p.expect_end_stmt()?;
    Ok(stmt)
}

pub fn basic_statements() -> Component {
    Component::new("BasicStatements")
        .statement("IfStatement", TokenKind::If, |p| {
            let start = p.advance()?.pos;
            let cond = p.parse_expr()?;
            p.expect(TokenKind::Colon)?;
            let then = p.parse_block()?;
            let mut elifs = Vec::new();
            while p.eat(TokenKind::Elif)?.is_some() {
                let cond = p.parse_expr()?;
                p.expect(TokenKind::Colon)?;
                let body = p.parse_block()?;
                elifs.push(ElifClause { cond, body });
            }
            let orelse = if p.eat(TokenKind::Else)?.is_some() {
                p.expect(TokenKind::Colon)?;
                Some(p.parse_block()?)
            } else {
                None
            };
            Ok(p.finish_stmt(
                StmtKind::If {
                    cond,
                    then,
                    elifs,
                    orelse,
                },
                start,
            ))
        })
        .statement("WhileStatement", TokenKind::While, |p| {
            let start = p.advance()?.pos;
            let cond = p.parse_expr()?;
            p.expect(TokenKind::Colon)?;
            let body = p.parse_block()?;
            Ok(p.finish_stmt(StmtKind::While { cond, body }, start))
        })
        .statement("ReturnStatement", TokenKind::Return, |p| {
            let start = p.advance()?.pos;
            let value = if p.at(p.registry().bindings().end_stmt) {
                None
            } else {
                Some(p.parse_expr()?)
            };
            let stmt = p.finish_stmt(StmtKind::Return { value }, start);
            p.expect_end_stmt()?;
            Ok(stmt)
        })
        .statement("PassStatement", TokenKind::Pass, |p| simple_keyword(p, StmtKind::Pass))
        .statement("BreakStatement", TokenKind::Break, |p| simple_keyword(p, StmtKind::Break))
        .statement("ContinueStatement", TokenKind::Continue, |p| {
            simple_keyword(p, StmtKind::Continue)
        })
}

pub fn py_statements() -> Component {
    Component::new("PyStatements")
        .statement("ForStatement", TokenKind::For, |p| {
            let start = p.advance()?.pos;
            let target = p.parse_expr()?;
            let in_tok = p.expect(TokenKind::In)?;
            let target = assign_target(target, &in_tok)?;
            let iter = p.parse_expr()?;
            p.expect(TokenKind::Colon)?;
            let body = p.parse_block()?;
            Ok(p.finish_stmt(StmtKind::For { target, iter, body }, start))
        })
        .statement("FunctionDefinition", TokenKind::Def, |p| {
            let start = p.advance()?.pos;
            let name = p.expect(TokenKind::Name)?.lexeme;
            p.expect(TokenKind::LParen)?;
            let mut params = Vec::new();
            while !p.at(TokenKind::RParen) {
                params.push(p.expect(TokenKind::Name)?.lexeme);
                if p.eat(TokenKind::Comma)?.is_none() {
                    break;
                }
            }
            p.expect(TokenKind::RParen)?;
            p.expect(TokenKind::Colon)?;
            let body = p.parse_block()?;
            Ok(p.finish_stmt(StmtKind::FuncDef { name, params, body }, start))
        })
        .statement("ImportStatement", TokenKind::Import, |p| {
            let start = p.advance()?.pos;
            let mut path = vec![p.expect(TokenKind::Name)?.lexeme];
            while p.eat(TokenKind::Dot)?.is_some() {
                path.push(p.expect(TokenKind::Name)?.lexeme);
            }
            let stmt = p.finish_stmt(StmtKind::Import { path }, start);
            p.expect_end_stmt()?;
            Ok(stmt)
        })
}
