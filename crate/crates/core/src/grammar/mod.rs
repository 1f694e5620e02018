//! Whitespace-insensitive grammar components and their composition.
//!
//! A [`Component`] contributes statement parsers keyed by their leading
//! token and Pratt rules for expressions. Statement components never name
//! concrete control tokens: they go through the `StartBlock` / `EndBlock` /
//! `EndStmt` extension points in [`ControlBindings`], which the composing
//! language fills in.

mod components;
mod parser;

use std::collections::HashMap;

pub use components::{
    basic_statements, basics, common_expressions, common_literals, component_by_name,
    py_statements, MINIPYTHON_COMPONENTS,
};
pub use parser::{parse_module, Parser, TokenSource, TokenVecSource};

use crate::ast::{Expr, Stmt};
use crate::error::{Error, Result};
use crate::token::{ControlTokenConfig, Token, TokenKind};

pub type StatementFn = fn(&mut Parser<'_>) -> Result<Stmt>;
pub type PrefixFn = fn(&mut Parser<'_>, Token) -> Result<Expr>;
pub type InfixFn = fn(&mut Parser<'_>, Expr, Token) -> Result<Expr>;

#[derive(Clone, Copy)]
pub struct StatementRule {
    pub name: &'static str,
    pub head: TokenKind,
    pub parse: StatementFn,
}

#[derive(Clone, Copy)]
pub struct InfixRule {
    /// Left binding power; higher binds tighter.
    pub binding_power: u8,
    pub parse: InfixFn,
}

/// A reusable slice of grammar.
#[derive(Clone)]
pub struct Component {
    pub name: &'static str,
    pub statements: Vec<StatementRule>,
    pub prefix: Vec<(TokenKind, PrefixFn)>,
    pub infix: Vec<(TokenKind, InfixRule)>,
}

impl Component {
    pub fn new(name: &'static str) -> Self {
        Component {
            name,
            statements: Vec::new(),
            prefix: Vec::new(),
            infix: Vec::new(),
        }
    }

    pub fn statement(mut self, name: &'static str, head: TokenKind, parse: StatementFn) -> Self {
        self.statements.push(StatementRule { name, head, parse });
        self
    }

    pub fn prefix(mut self, kind: TokenKind, parse: PrefixFn) -> Self {
        self.prefix.push((kind, parse));
        self
    }

    pub fn infix(mut self, kind: TokenKind, binding_power: u8, parse: InfixFn) -> Self {
        self.infix.push((
            kind,
            InfixRule {
                binding_power,
                parse,
            },
        ));
        self
    }
}

/// Concrete tokens bound to the statement components' extension points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ControlBindings {
    pub start_block: TokenKind,
    pub end_block: TokenKind,
    pub end_stmt: TokenKind,
}

impl Default for ControlBindings {
    fn default() -> Self {
        ControlBindings {
            start_block: TokenKind::BlockStart,
            end_block: TokenKind::BlockEnd,
            end_stmt: TokenKind::StmtEnd,
        }
    }
}

/// The composed grammar of one language. Immutable once built.
#[derive(Clone)]
pub struct Registry {
    components: Vec<&'static str>,
    statements: Vec<(&'static str, StatementRule)>,
    prefix: HashMap<TokenKind, PrefixFn>,
    infix: HashMap<TokenKind, InfixRule>,
    bindings: ControlBindings,
    control_tokens: ControlTokenConfig,
}

impl std::fmt::Debug for Registry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Registry")
            .field("components", &self.components)
            .field("statement_heads", &self.statement_heads())
            .field("bindings", &self.bindings)
            .finish_non_exhaustive()
    }
}

impl Registry {
    /// Composes `components` in order. Fails if two components claim the same
    /// statement head or expression rule, or if the bindings are not distinct.
    pub fn compose(
        components: impl IntoIterator<Item = Component>,
        bindings: ControlBindings,
        control_tokens: ControlTokenConfig,
    ) -> Result<Registry> {
        let ControlBindings {
            start_block,
            end_block,
            end_stmt,
        } = bindings;
        if start_block == end_block || start_block == end_stmt || end_block == end_stmt {
            return Err(Error::CompositionConflict(format!(
                "control bindings must be distinct, got {start_block}/{end_block}/{end_stmt}"
            )));
        }
        let mut reg = Registry {
            components: Vec::new(),
            statements: Vec::new(),
            prefix: HashMap::new(),
            infix: HashMap::new(),
            bindings,
            control_tokens,
        };
        let mut prefix_owner: HashMap<TokenKind, &'static str> = HashMap::new();
        let mut infix_owner: HashMap<TokenKind, &'static str> = HashMap::new();
        for c in components {
            for rule in &c.statements {
                if let Some((owner, _)) = reg.statements.iter().find(|(_, r)| r.head == rule.head) {
                    return Err(Error::CompositionConflict(format!(
                        "statement head {} claimed by both {owner} and {}",
                        rule.head, c.name
                    )));
                }
                reg.statements.push((c.name, *rule));
            }
            for &(kind, parse) in &c.prefix {
                if let Some(owner) = prefix_owner.insert(kind, c.name) {
                    return Err(Error::CompositionConflict(format!(
                        "prefix rule for {kind} defined by both {owner} and {}",
                        c.name
                    )));
                }
                reg.prefix.insert(kind, parse);
            }
            for &(kind, rule) in &c.infix {
                if let Some(owner) = infix_owner.insert(kind, c.name) {
                    return Err(Error::CompositionConflict(format!(
                        "infix rule for {kind} defined by both {owner} and {}",
                        c.name
                    )));
                }
                reg.infix.insert(kind, rule);
            }
            reg.components.push(c.name);
        }
        Ok(reg)
    }

    pub fn component_names(&self) -> &[&'static str] {
        &self.components
    }

    pub fn statement_heads(&self) -> Vec<TokenKind> {
        self.statements.iter().map(|(_, r)| r.head).collect()
    }

    pub fn statement_rule(&self, head: TokenKind) -> Option<&StatementRule> {
        self.statements
            .iter()
            .find(|(_, r)| r.head == head)
            .map(|(_, r)| r)
    }

    pub fn prefix_rule(&self, kind: TokenKind) -> Option<PrefixFn> {
        self.prefix.get(&kind).copied()
    }

    pub fn infix_rule(&self, kind: TokenKind) -> Option<InfixRule> {
        self.infix.get(&kind).copied()
    }

    pub fn bindings(&self) -> ControlBindings {
        self.bindings
    }

    pub fn control_tokens(&self) -> &ControlTokenConfig {
        &self.control_tokens
    }

    /// Whether a statement can begin with `kind`.
    pub fn starts_statement(&self, kind: TokenKind) -> bool {
        self.statement_rule(kind).is_some() || self.prefix_rule(kind).is_some()
    }
}

/// The Mini-Python composition: every bundled component, with the control
/// tokens bound to the preprocessor's BLOCK_START / BLOCK_END / STMT_END.
pub fn build_minipython_registry(cfg: &ControlTokenConfig) -> Result<Registry> {
    Registry::compose(
        MINIPYTHON_COMPONENTS.iter().map(|f| f()),
        ControlBindings::default(),
        cfg.clone(),
    )
}

/// Mini-Python minus the named components. Naming a component that is not
/// part of Mini-Python is an error.
pub fn build_registry_without(cfg: &ControlTokenConfig, excluded: &[&str]) -> Result<Registry> {
    if let Some(name) = excluded.iter().find(|n| component_by_name(n).is_none()) {
        return Err(Error::CompositionConflict(format!("no component named {name}")));
    }
    Registry::compose(
        MINIPYTHON_COMPONENTS
            .iter()
            .map(|f| f())
            .filter(|c| !excluded.contains(&c.name)),
        ControlBindings::default(),
        cfg.clone(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minipython_statement_heads() {
        let reg = build_minipython_registry(&ControlTokenConfig::default()).unwrap();
        let heads = reg.statement_heads();
        for k in [
            TokenKind::If,
            TokenKind::While,
            TokenKind::For,
            TokenKind::Def,
            TokenKind::Return,
            TokenKind::Pass,
            TokenKind::Break,
            TokenKind::Continue,
            TokenKind::Import,
        ] {
            assert!(heads.contains(&k), "missing {k}");
        }
        assert_eq!(heads.len(), 9);
        assert_eq!(
            reg.component_names(),
            &["Basics", "CommonLiterals", "CommonExpressions", "BasicStatements", "PyStatements"]
        );
    }

    #[test]
    fn duplicate_component_conflicts() {
        let err = Registry::compose(
            [basics(), basic_statements(), basic_statements()],
            ControlBindings::default(),
            ControlTokenConfig::default(),
        )
        .unwrap_err();
        match err {
            Error::CompositionConflict(msg) => assert!(msg.contains("IF"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_expression_rules_conflict() {
        let err = Registry::compose(
            [common_literals(), common_literals()],
            ControlBindings::default(),
            ControlTokenConfig::default(),
        )
        .unwrap_err();
        assert_eq!(err.code(), "CompositionConflict");
    }

    #[test]
    fn bindings_must_be_distinct() {
        let bindings = ControlBindings {
            end_block: TokenKind::BlockStart,
            ..ControlBindings::default()
        };
        assert!(Registry::compose([basics()], bindings, ControlTokenConfig::default()).is_err());
    }

    #[test]
    fn without_py_statements() {
        let reg = build_registry_without(&ControlTokenConfig::default(), &["PyStatements"]).unwrap();
        assert!(reg.statement_rule(TokenKind::For).is_none());
        assert!(reg.statement_rule(TokenKind::If).is_some());
    }
}
