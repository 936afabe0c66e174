//! The textual DSL in which scenarios define surface components, curve
//! coordinates and dilation factors.
//!
//! Grammar: `+ -` < `* /` < unary minus < `^` (right-associative),
//! parentheses, `name(arg{,arg})` calls against a fixed whitelist
//! (sin, cos, tan, sinh, cosh, tanh, exp, log, sqrt, atan, atan2),
//! named constants `pi` and `e`, whitespace insignificant. Numbers are
//! double-precision decimals.
//!
//! Parsed trees are immutable; evaluation is pure and works over any
//! [`JetNum`] scalar, so one tree serves plain values, curve jets and
//! surface jets alike.

mod parser;
mod token;

use std::fmt;

use crate::jets::{Func, JetError, JetNum};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: u32,
    pub end: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct NodeId(u32);

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum NamedConst {
    Pi,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum NodeKind {
    Number(f64),
    Constant(NamedConst),
    Var(u8),
    Neg(NodeId),
    Bin(BinOp, NodeId, NodeId),
    Call(Func, NodeId),
    Atan2(NodeId, NodeId),
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Node {
    pub(crate) kind: NodeKind,
    pub(crate) span: Span,
}

/// A parsed expression over a declared variable set. Nodes live in a flat
/// arena; children always precede parents, so evaluation is a single
/// forward pass.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    nodes: Vec<Node>,
    root: NodeId,
    variables: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    InvalidNumber(String),
    UnexpectedEnd,
    TrailingInput,
    Expected {
        what: &'static str,
        found: &'static str,
    },
    UnknownIdentifier(String),
    ArityMismatch {
        func: String,
        expected: usize,
        got: usize,
    },
    EmptyInput,
    TooDeep,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{kind} at byte {position}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::InvalidNumber(s) => write!(f, "invalid number literal `{s}`"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::TrailingInput => write!(f, "unexpected trailing input"),
            ParseErrorKind::Expected { what, found } => {
                write!(f, "expected {what}, found {found}")
            }
            ParseErrorKind::UnknownIdentifier(s) => write!(f, "unknown identifier `{s}`"),
            ParseErrorKind::ArityMismatch {
                func,
                expected,
                got,
            } => {
                write!(f, "`{func}` takes {expected} argument(s), got {got}")
            }
            ParseErrorKind::EmptyInput => write!(f, "empty expression"),
            ParseErrorKind::TooDeep => write!(f, "expression nests too deeply"),
        }
    }
}

/// Evaluation failure, carrying the span of the offending subexpression.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{source} (in expression at bytes {}..{})", span.start, span.end)]
pub struct EvalError {
    #[source]
    pub source: JetError,
    pub span: Span,
}

/// Parse `text` against a declared variable set.
pub fn parse(text: &str, variables: &[&str]) -> Result<Expr, ParseError> {
    let tokens = token::tokenize(text)?;
    if tokens.is_empty() {
        return Err(ParseError {
            kind: ParseErrorKind::EmptyInput,
            position: 0,
        });
    }
    let vars = variables.iter().map(|s| s.to_string()).collect();
    parser::Parser::new(tokens, variables, text.len()).parse(vars)
}

impl Expr {
    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    /// Evaluate with one binding per declared variable, in declaration order.
    pub fn eval<J: JetNum>(&self, bindings: &[J]) -> Result<J, EvalError> {
        assert_eq!(
            bindings.len(),
            self.variables.len(),
            "bindings must cover the declared variable set"
        );
        let mut values: Vec<J> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let err = |source| EvalError {
                source,
                span: node.span,
            };
            let v = match &node.kind {
                NodeKind::Number(x) => J::constant(*x),
                NodeKind::Constant(NamedConst::Pi) => J::constant(std::f64::consts::PI),
                NodeKind::Constant(NamedConst::E) => J::constant(std::f64::consts::E),
                NodeKind::Var(i) => bindings[*i as usize],
                NodeKind::Neg(a) => -values[a.0 as usize],
                NodeKind::Bin(op, a, b) => {
                    let (a, b) = (values[a.0 as usize], values[b.0 as usize]);
                    match op {
                        BinOp::Add => a + b,
                        BinOp::Sub => a - b,
                        BinOp::Mul => a * b,
                        BinOp::Div => a.div(b).map_err(err)?,
                        BinOp::Pow => a.pow(b).map_err(err)?,
                    }
                }
                NodeKind::Call(func, a) => values[a.0 as usize].apply(*func).map_err(err)?,
                NodeKind::Atan2(y, x) => values[y.0 as usize]
                    .atan2(values[x.0 as usize])
                    .map_err(err)?,
            };
            values.push(v);
        }
        Ok(values[self.root.0 as usize])
    }

    /// Plain-number evaluation.
    pub fn eval_f64(&self, bindings: &[f64]) -> Result<f64, EvalError> {
        self.eval::<f64>(bindings)
    }

    /// True when the whole expression is exactly one reference to `name`.
    pub fn is_bare_variable(&self, name: &str) -> bool {
        match &self.nodes[self.root.0 as usize].kind {
            NodeKind::Var(i) => self.variables[*i as usize] == name,
            _ => false,
        }
    }

    /// Structural equality, ignoring spans.
    pub fn structurally_equal(&self, other: &Expr) -> bool {
        self.variables == other.variables && node_eq(self, self.root, other, other.root)
    }

    /// Minimal-parenthesis rendering; reparsing yields a structurally
    /// identical tree.
    pub fn pretty(&self) -> String {
        let mut s = String::new();
        self.print(self.root, 0, &mut s);
        s
    }

    // Precedence levels: 0 add/sub, 1 mul/div, 2 unary minus, 3 pow, 4 atom.
    fn print(&self, id: NodeId, parent_level: u8, out: &mut String) {
        let needs_parens = match &self.nodes[id.0 as usize].kind {
            NodeKind::Number(_) | NodeKind::Constant(_) | NodeKind::Var(_) => false,
            NodeKind::Call(..) | NodeKind::Atan2(..) => false,
            NodeKind::Neg(_) => parent_level > 2,
            NodeKind::Bin(BinOp::Pow, ..) => parent_level > 3,
            NodeKind::Bin(BinOp::Mul, ..) | NodeKind::Bin(BinOp::Div, ..) => parent_level > 1,
            NodeKind::Bin(..) => parent_level > 0,
        };
        if needs_parens {
            out.push('(');
        }
        match &self.nodes[id.0 as usize].kind {
            NodeKind::Number(x) => {
                // Negative or non-finite literals cannot be re-lexed as a
                // single token, so guard them with parentheses via Neg form.
                if *x < 0.0 {
                    out.push_str(&format!("(0 - {})", -x));
                } else {
                    out.push_str(&x.to_string());
                }
            }
            NodeKind::Constant(NamedConst::Pi) => out.push_str("pi"),
            NodeKind::Constant(NamedConst::E) => out.push('e'),
            NodeKind::Var(i) => out.push_str(&self.variables[*i as usize]),
            NodeKind::Neg(a) => {
                out.push('-');
                self.print(*a, 3, out);
            }
            NodeKind::Bin(op, a, b) => {
                let (sym, left_level, right_level) = match op {
                    BinOp::Add => ("+", 0, 1),
                    // The right operand of - and / must bind tighter.
                    BinOp::Sub => ("-", 0, 1),
                    BinOp::Mul => ("*", 1, 2),
                    BinOp::Div => ("/", 1, 2),
                    // Pow is right-associative; force parens on a pow base.
                    BinOp::Pow => ("^", 4, 2),
                };
                self.print(*a, left_level, out);
                out.push_str(sym);
                self.print(*b, right_level, out);
            }
            NodeKind::Call(func, a) => {
                out.push_str(func.name());
                out.push('(');
                self.print(*a, 0, out);
                out.push(')');
            }
            NodeKind::Atan2(y, x) => {
                out.push_str("atan2(");
                self.print(*y, 0, out);
                out.push(',');
                self.print(*x, 0, out);
                out.push(')');
            }
        }
        if needs_parens {
            out.push(')');
        }
    }
}

fn node_eq(a: &Expr, ai: NodeId, b: &Expr, bi: NodeId) -> bool {
    use NodeKind::*;
    match (&a.nodes[ai.0 as usize].kind, &b.nodes[bi.0 as usize].kind) {
        (Number(x), Number(y)) => x == y || (x.is_nan() && y.is_nan()),
        (Constant(x), Constant(y)) => x == y,
        (Var(x), Var(y)) => x == y,
        (Neg(x), Neg(y)) => node_eq(a, *x, b, *y),
        (Bin(op1, l1, r1), Bin(op2, l2, r2)) => {
            op1 == op2 && node_eq(a, *l1, b, *l2) && node_eq(a, *r1, b, *r2)
        }
        (Call(f1, x), Call(f2, y)) => f1 == f2 && node_eq(a, *x, b, *y),
        (Atan2(y1, x1), Atan2(y2, x2)) => node_eq(a, *y1, b, *y2) && node_eq(a, *x1, b, *x2),
        _ => false,
    }
}
