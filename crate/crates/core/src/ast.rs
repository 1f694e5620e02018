//! Mini-Python abstract syntax.
//!
//! Every node carries a [`Span`]. Structural comparison that ignores spans
//! goes through [`Module::erase_spans`]; both textual forms (`to_json`,
//! `to_sexpr`) are stable and used by golden tests.

use std::fmt::Write as _;

use serde::Serialize;

use crate::token::SourcePos;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Span {
    pub start: SourcePos,
    pub end: SourcePos,
}

impl Span {
    pub fn new(start: SourcePos, end: SourcePos) -> Self {
        Span { start, end }
    }

    pub fn to(self, other: Span) -> Span {
        Span::new(self.start, other.end)
    }

    pub fn contains(&self, inner: &Span) -> bool {
        self.start <= inner.start && inner.end <= self.end
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Module {
    pub body: Vec<Stmt>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Block {
    pub stmts: Vec<Stmt>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Stmt {
    #[serde(flatten)]
    pub kind: StmtKind,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AssignOp {
    #[serde(rename = "=")]
    Assign,
    #[serde(rename = "+=")]
    AddAssign,
    #[serde(rename = "-=")]
    SubAssign,
}

impl AssignOp {
    pub fn symbol(self) -> &'static str {
        match self {
            AssignOp::Assign => "=",
            AssignOp::AddAssign => "+=",
            AssignOp::SubAssign => "-=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ElifClause {
    pub cond: Expr,
    pub body: Block,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type")]
pub enum StmtKind {
    ExprStmt {
        expr: Expr,
    },
    Assign {
        targets: Vec<Expr>,
        op: AssignOp,
        value: Expr,
    },
    If {
        cond: Expr,
        then: Block,
        elifs: Vec<ElifClause>,
        orelse: Option<Block>,
    },
    While {
        cond: Expr,
        body: Block,
    },
    For {
        target: Expr,
        iter: Expr,
        body: Block,
    },
    FuncDef {
        name: String,
        params: Vec<String>,
        body: Block,
    },
    Return {
        value: Option<Expr>,
    },
    Pass,
    Break,
    Continue,
    Import {
        path: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Expr {
    #[serde(flatten)]
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum UnaryOp {
    #[serde(rename = "-")]
    Neg,
    #[serde(rename = "+")]
    Pos,
    #[serde(rename = "not")]
    Not,
    #[serde(rename = "++")]
    PreInc,
}

impl UnaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::Pos => "+",
            UnaryOp::Not => "not",
            UnaryOp::PreInc => "++",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BinOp {
    #[serde(rename = "or")]
    Or,
    #[serde(rename = "and")]
    And,
    #[serde(rename = "+")]
    Add,
    #[serde(rename = "-")]
    Sub,
    #[serde(rename = "*")]
    Mul,
    #[serde(rename = "/")]
    Div,
    #[serde(rename = "//")]
    FloorDiv,
    #[serde(rename = "%")]
    Mod,
    #[serde(rename = "**")]
    Pow,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Or => "or",
            BinOp::And => "and",
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::FloorDiv => "//",
            BinOp::Mod => "%",
            BinOp::Pow => "**",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CmpOp {
    #[serde(rename = "==")]
    Eq,
    #[serde(rename = "!=")]
    Ne,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "==",
            CmpOp::Ne => "!=",
            CmpOp::Lt => "<",
            CmpOp::Gt => ">",
            CmpOp::Le => "<=",
            CmpOp::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DictEntry {
    pub key: Expr,
    pub value: Expr,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type")]
pub enum ExprKind {
    Name { id: String },
    IntLit { value: String },
    FloatLit { value: String },
    /// The literal exactly as written, quotes and escapes included.
    StrLit { value: String },
    BoolLit { value: bool },
    NoneLit,
    Unary { op: UnaryOp, operand: Box<Expr> },
    IncSuffix { operand: Box<Expr> },
    Binary { op: BinOp, left: Box<Expr>, right: Box<Expr> },
    Compare { op: CmpOp, left: Box<Expr>, right: Box<Expr> },
    Call { func: Box<Expr>, args: Vec<Expr> },
    Attribute { obj: Box<Expr>, name: String },
    Subscript { obj: Box<Expr>, index: Box<Expr> },
    ListDisplay { items: Vec<Expr> },
    TupleDisplay { items: Vec<Expr> },
    DictDisplay { entries: Vec<DictEntry> },
    Paren { inner: Box<Expr> },
}

impl Module {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("AST serialization cannot fail")
    }

    pub fn to_sexpr(&self) -> String {
        let mut out = String::from("(Module");
        for s in &self.body {
            out.push(' ');
            s.write_sexpr(&mut out);
        }
        out.push(')');
        out
    }

    /// Resets every span to the default, for span-blind comparison.
    pub fn erase_spans(&mut self) {
        self.span = Span::default();
        for s in &mut self.body {
            s.erase_spans();
        }
    }

    pub fn without_spans(&self) -> Module {
        let mut m = self.clone();
        m.erase_spans();
        m
    }

    /// True when both modules are equal apart from spans.
    pub fn same_shape(&self, other: &Module) -> bool {
        self.without_spans() == other.without_spans()
    }
}

impl Block {
    fn erase_spans(&mut self) {
        self.span = Span::default();
        for s in &mut self.stmts {
            s.erase_spans();
        }
    }

    fn write_sexpr(&self, out: &mut String) {
        out.push_str("(Block");
        for s in &self.stmts {
            out.push(' ');
            s.write_sexpr(out);
        }
        out.push(')');
    }
}

impl Stmt {
    fn erase_spans(&mut self) {
        self.span = Span::default();
        match &mut self.kind {
            StmtKind::ExprStmt { expr } => expr.erase_spans(),
            StmtKind::Assign { targets, value, .. } => {
                targets.iter_mut().for_each(Expr::erase_spans);
                value.erase_spans();
            }
            StmtKind::If {
                cond,
                then,
                elifs,
                orelse,
            } => {
                cond.erase_spans();
                then.erase_spans();
                for e in elifs {
                    e.cond.erase_spans();
                    e.body.erase_spans();
                }
                if let Some(b) = orelse {
                    b.erase_spans();
                }
            }
            StmtKind::While { cond, body } => {
                cond.erase_spans();
                body.erase_spans();
            }
            StmtKind::For { target, iter, body } => {
                target.erase_spans();
                iter.erase_spans();
                body.erase_spans();
            }
            StmtKind::FuncDef { body, .. } => body.erase_spans(),
            StmtKind::Return { value } => {
                if let Some(v) = value {
                    v.erase_spans();
                }
            }
            StmtKind::Pass | StmtKind::Break | StmtKind::Continue | StmtKind::Import { .. } => {}
        }
    }

    fn write_sexpr(&self, out: &mut String) {
        match &self.kind {
            StmtKind::ExprStmt { expr } => {
                out.push_str("(ExprStmt ");
                expr.write_sexpr(out);
                out.push(')');
            }
            StmtKind::Assign { targets, op, value } => {
                let _ = write!(out, "(Assign {}", op.symbol());
                for t in targets {
                    out.push(' ');
                    t.write_sexpr(out);
                }
                out.push(' ');
                value.write_sexpr(out);
                out.push(')');
            }
            StmtKind::If {
                cond,
                then,
                elifs,
                orelse,
            } => {
                out.push_str("(If ");
                cond.write_sexpr(out);
                out.push(' ');
                then.write_sexpr(out);
                for e in elifs {
                    out.push_str(" (Elif ");
                    e.cond.write_sexpr(out);
                    out.push(' ');
                    e.body.write_sexpr(out);
                    out.push(')');
                }
                if let Some(b) = orelse {
                    out.push_str(" (Else ");
                    b.write_sexpr(out);
                    out.push(')');
                }
                out.push(')');
            }
            StmtKind::While { cond, body } => {
                out.push_str("(While ");
                cond.write_sexpr(out);
                out.push(' ');
                body.write_sexpr(out);
                out.push(')');
            }
            StmtKind::For { target, iter, body } => {
                out.push_str("(For ");
                target.write_sexpr(out);
                out.push(' ');
                iter.write_sexpr(out);
                out.push(' ');
                body.write_sexpr(out);
                out.push(')');
            }
            StmtKind::FuncDef { name, params, body } => {
                let _ = write!(out, "(FuncDef {name} ({}) ", params.join(" "));
                body.write_sexpr(out);
                out.push(')');
            }
            StmtKind::Return { value } => {
                out.push_str("(Return");
                if let Some(v) = value {
                    out.push(' ');
                    v.write_sexpr(out);
                }
                out.push(')');
            }
            StmtKind::Pass => out.push_str("(Pass)"),
            StmtKind::Break => out.push_str("(Break)"),
            StmtKind::Continue => out.push_str("(Continue)"),
            StmtKind::Import { path } => {
                let _ = write!(out, "(Import {})", path.join("."));
            }
        }
    }
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    fn erase_spans(&mut self) {
        self.span = Span::default();
        self.for_each_child_mut(Expr::erase_spans);
    }

    fn for_each_child_mut(&mut self, mut f: impl FnMut(&mut Expr)) {
        match &mut self.kind {
            ExprKind::Name { .. }
            | ExprKind::IntLit { .. }
            | ExprKind::FloatLit { .. }
            | ExprKind::StrLit { .. }
            | ExprKind::BoolLit { .. }
            | ExprKind::NoneLit => {}
            ExprKind::Unary { operand, .. } | ExprKind::IncSuffix { operand } => f(operand),
            ExprKind::Binary { left, right, .. } | ExprKind::Compare { left, right, .. } => {
                f(left);
                f(right);
            }
            ExprKind::Call { func, args } => {
                f(func);
                args.iter_mut().for_each(f);
            }
            ExprKind::Attribute { obj, .. } => f(obj),
            ExprKind::Subscript { obj, index } => {
                f(obj);
                f(index);
            }
            ExprKind::ListDisplay { items } | ExprKind::TupleDisplay { items } => {
                items.iter_mut().for_each(f)
            }
            ExprKind::DictDisplay { entries } => {
                for e in entries {
                    f(&mut e.key);
                    f(&mut e.value);
                }
            }
            ExprKind::Paren { inner } => f(inner),
        }
    }

    /// Direct subexpressions in source order.
    pub fn children(&self) -> Vec<&Expr> {
        match &self.kind {
            ExprKind::Name { .. }
            | ExprKind::IntLit { .. }
            | ExprKind::FloatLit { .. }
            | ExprKind::StrLit { .. }
            | ExprKind::BoolLit { .. }
            | ExprKind::NoneLit => vec![],
            ExprKind::Unary { operand, .. } | ExprKind::IncSuffix { operand } => vec![operand],
            ExprKind::Binary { left, right, .. } | ExprKind::Compare { left, right, .. } => {
                vec![left, right]
            }
            ExprKind::Call { func, args } => {
                let mut v: Vec<&Expr> = vec![func];
                v.extend(args.iter());
                v
            }
            ExprKind::Attribute { obj, .. } => vec![obj],
            ExprKind::Subscript { obj, index } => vec![obj, index],
            ExprKind::ListDisplay { items } | ExprKind::TupleDisplay { items } => items.iter().collect(),
            ExprKind::DictDisplay { entries } => {
                entries.iter().flat_map(|e| [&e.key, &e.value]).collect()
            }
            ExprKind::Paren { inner } => vec![inner],
        }
    }

    fn write_sexpr(&self, out: &mut String) {
        let list = |out: &mut String, head: &str, items: &[Expr]| {
            out.push('(');
            out.push_str(head);
            for i in items {
                out.push(' ');
                i.write_sexpr(out);
            }
            out.push(')');
        };
        match &self.kind {
            ExprKind::Name { id } => out.push_str(id),
            ExprKind::IntLit { value } | ExprKind::FloatLit { value } | ExprKind::StrLit { value } => {
                out.push_str(value)
            }
            ExprKind::BoolLit { value } => out.push_str(if *value { "True" } else { "False" }),
            ExprKind::NoneLit => out.push_str("None"),
            ExprKind::Unary { op, operand } => {
                let _ = write!(out, "(Unary {} ", op.symbol());
                operand.write_sexpr(out);
                out.push(')');
            }
            ExprKind::IncSuffix { operand } => {
                out.push_str("(IncSuffix ");
                operand.write_sexpr(out);
                out.push(')');
            }
            ExprKind::Binary { op, left, right } => {
                let _ = write!(out, "(Binary {} ", op.symbol());
                left.write_sexpr(out);
                out.push(' ');
                right.write_sexpr(out);
                out.push(')');
            }
            ExprKind::Compare { op, left, right } => {
                let _ = write!(out, "(Compare {} ", op.symbol());
                left.write_sexpr(out);
                out.push(' ');
                right.write_sexpr(out);
                out.push(')');
            }
            ExprKind::Call { func, args } => {
                out.push_str("(Call ");
                func.write_sexpr(out);
                for a in args {
                    out.push(' ');
                    a.write_sexpr(out);
                }
                out.push(')');
            }
            ExprKind::Attribute { obj, name } => {
                out.push_str("(Attribute ");
                obj.write_sexpr(out);
                let _ = write!(out, " {name})");
            }
            ExprKind::Subscript { obj, index } => {
                out.push_str("(Subscript ");
                obj.write_sexpr(out);
                out.push(' ');
                index.write_sexpr(out);
                out.push(')');
            }
            ExprKind::ListDisplay { items } => list(out, "List", items),
            ExprKind::TupleDisplay { items } => list(out, "Tuple", items),
            ExprKind::DictDisplay { entries } => {
                out.push_str("(Dict");
                for e in entries {
                    out.push_str(" (");
                    e.key.write_sexpr(out);
                    out.push(' ');
                    e.value.write_sexpr(out);
                    out.push(')');
                }
                out.push(')');
            }
            ExprKind::Paren { inner } => {
                out.push_str("(Paren ");
                inner.write_sexpr(out);
                out.push(')');
            }
        }
    }
}

/// Calls `f` on every expression in `m`, parents before children.
pub fn walk_exprs<'a>(m: &'a Module, f: &mut impl FnMut(&'a Expr)) {
    fn expr<'a>(e: &'a Expr, f: &mut impl FnMut(&'a Expr)) {
        f(e);
        for c in e.children() {
            expr(c, f);
        }
    }
    fn block<'a>(b: &'a Block, f: &mut impl FnMut(&'a Expr)) {
        for s in &b.stmts {
            stmt(s, f);
        }
    }
    fn stmt<'a>(s: &'a Stmt, f: &mut impl FnMut(&'a Expr)) {
        match &s.kind {
            StmtKind::ExprStmt { expr: e } => expr(e, f),
            StmtKind::Assign { targets, value, .. } => {
                targets.iter().for_each(|t| expr(t, f));
                expr(value, f);
            }
            StmtKind::If {
                cond,
                then,
                elifs,
                orelse,
            } => {
                expr(cond, f);
                block(then, f);
                for e in elifs {
                    expr(&e.cond, f);
                    block(&e.body, f);
                }
                if let Some(b) = orelse {
                    block(b, f);
                }
            }
            StmtKind::While { cond, body } => {
                expr(cond, f);
                block(body, f);
            }
            StmtKind::For { target, iter, body } => {
                expr(target, f);
                expr(iter, f);
                block(body, f);
            }
            StmtKind::FuncDef { body, .. } => block(body, f),
            StmtKind::Return { value } => {
                if let Some(v) = value {
                    expr(v, f);
                }
            }
            StmtKind::Pass | StmtKind::Break | StmtKind::Continue | StmtKind::Import { .. } => {}
        }
    }
    for s in &m.body {
        stmt(s, f);
    }
}
