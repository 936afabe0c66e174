//! Recursive-descent parser. Precedence, loosest to tightest:
//! `+ -` < `* /` < unary minus < `^` (right-associative).

use crate::jets::Func;

use super::token::{Tok, Token};
use super::{BinOp, Expr, NamedConst, Node, NodeId, NodeKind, ParseError, ParseErrorKind, Span};

const MAX_DEPTH: usize = 200;

pub(super) struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a [&'a str],
    nodes: Vec<Node>,
    text_len: usize,
}

impl<'a> Parser<'a> {
    pub(super) fn new(tokens: Vec<Token>, vars: &'a [&'a str], text_len: usize) -> Parser<'a> {
        Parser {
            tokens,
            pos: 0,
            vars,
            nodes: Vec::new(),
            text_len,
        }
    }

    pub(super) fn parse(mut self, variables: Vec<String>) -> Result<Expr, ParseError> {
        let root = self.expression(0)?;
        if let Some(t) = self.tokens.get(self.pos) {
            return Err(ParseError {
                kind: ParseErrorKind::TrailingInput,
                position: t.start,
            });
        }
        Ok(Expr {
            nodes: self.nodes,
            root,
            variables,
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &'static str) -> Result<Token, ParseError> {
        match self.bump() {
            Some(t) if t.tok == want => Ok(t),
            Some(t) => Err(ParseError {
                kind: ParseErrorKind::Expected {
                    what,
                    found: describe(&t.tok),
                },
                position: t.start,
            }),
            None => Err(ParseError {
                kind: ParseErrorKind::UnexpectedEnd,
                position: self.text_len,
            }),
        }
    }

    fn push(&mut self, kind: NodeKind, span: Span) -> NodeId {
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(Node { kind, span });
        id
    }

    fn span_of(&self, id: NodeId) -> Span {
        self.nodes[id.0 as usize].span
    }

    fn expression(&mut self, depth: usize) -> Result<NodeId, ParseError> {
        self.guard(depth)?;
        let mut lhs = self.term(depth + 1)?;
        while let Some(t) = self.peek() {
            let op = match t.tok {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.term(depth + 1)?;
            let span = Span {
                start: self.span_of(lhs).start,
                end: self.span_of(rhs).end,
            };
            lhs = self.push(NodeKind::Bin(op, lhs, rhs), span);
        }
        Ok(lhs)
    }

    fn term(&mut self, depth: usize) -> Result<NodeId, ParseError> {
        self.guard(depth)?;
        let mut lhs = self.unary(depth + 1)?;
        while let Some(t) = self.peek() {
            let op = match t.tok {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => break,
            };
            self.bump();
            let rhs = self.unary(depth + 1)?;
            let span = Span {
                start: self.span_of(lhs).start,
                end: self.span_of(rhs).end,
            };
            lhs = self.push(NodeKind::Bin(op, lhs, rhs), span);
        }
        Ok(lhs)
    }

    fn unary(&mut self, depth: usize) -> Result<NodeId, ParseError> {
        self.guard(depth)?;
        if let Some(t) = self.peek() {
            if t.tok == Tok::Minus {
                let start = t.start;
                self.bump();
                let inner = self.unary(depth + 1)?;
                let span = Span {
                    start: start as u32,
                    end: self.span_of(inner).end,
                };
                return Ok(self.push(NodeKind::Neg(inner), span));
            }
        }
        self.power(depth + 1)
    }

    fn power(&mut self, depth: usize) -> Result<NodeId, ParseError> {
        self.guard(depth)?;
        let base = self.atom(depth + 1)?;
        if let Some(t) = self.peek() {
            if t.tok == Tok::Caret {
                self.bump();
                // The exponent re-enters at the unary level, which yields
                // right associativity and allows 2^-3.
                let exp = self.unary(depth + 1)?;
                let span = Span {
                    start: self.span_of(base).start,
                    end: self.span_of(exp).end,
                };
                return Ok(self.push(NodeKind::Bin(BinOp::Pow, base, exp), span));
            }
        }
        Ok(base)
    }

    fn atom(&mut self, depth: usize) -> Result<NodeId, ParseError> {
        self.guard(depth)?;
        let t = match self.bump() {
            Some(t) => t,
            None => {
                return Err(ParseError {
                    kind: ParseErrorKind::UnexpectedEnd,
                    position: self.text_len,
                })
            }
        };
        let span = Span {
            start: t.start as u32,
            end: t.end as u32,
        };
        match t.tok {
            Tok::Num(v) => Ok(self.push(NodeKind::Number(v), span)),
            Tok::LParen => {
                let inner = self.expression(depth + 1)?;
                self.expect(Tok::RParen, "closing parenthesis")?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                if self.peek().map(|t| &t.tok) == Some(&Tok::LParen) {
                    self.call(&name, span, depth + 1)
                } else if let Some(idx) = self.vars.iter().position(|v| *v == name) {
                    Ok(self.push(NodeKind::Var(idx as u8), span))
                } else {
                    match name.as_str() {
                        "pi" => Ok(self.push(NodeKind::Constant(NamedConst::Pi), span)),
                        "e" => Ok(self.push(NodeKind::Constant(NamedConst::E), span)),
                        _ if Func::from_name(&name).is_some() || name == "atan2" => {
                            Err(ParseError {
                                kind: ParseErrorKind::Expected {
                                    what: "function call arguments",
                                    found: "identifier",
                                },
                                position: t.start,
                            })
                        }
                        _ => Err(ParseError {
                            kind: ParseErrorKind::UnknownIdentifier(name),
                            position: t.start,
                        }),
                    }
                }
            }
            other => Err(ParseError {
                kind: ParseErrorKind::Expected {
                    what: "expression",
                    found: describe(&other),
                },
                position: t.start,
            }),
        }
    }

    fn call(&mut self, name: &str, name_span: Span, depth: usize) -> Result<NodeId, ParseError> {
        self.expect(Tok::LParen, "opening parenthesis")?;
        let mut args = Vec::new();
        loop {
            args.push(self.expression(depth + 1)?);
            match self.bump() {
                Some(t) if t.tok == Tok::Comma => continue,
                Some(t) if t.tok == Tok::RParen => break,
                Some(t) => {
                    return Err(ParseError {
                        kind: ParseErrorKind::Expected {
                            what: "comma or closing parenthesis",
                            found: describe(&t.tok),
                        },
                        position: t.start,
                    })
                }
                None => {
                    return Err(ParseError {
                        kind: ParseErrorKind::UnexpectedEnd,
                        position: self.text_len,
                    })
                }
            }
        }
        let end = self.tokens[self.pos - 1].end as u32;
        let span = Span {
            start: name_span.start,
            end,
        };
        if name == "atan2" {
            if args.len() != 2 {
                return Err(ParseError {
                    kind: ParseErrorKind::ArityMismatch {
                        func: "atan2".to_string(),
                        expected: 2,
                        got: args.len(),
                    },
                    position: name_span.start as usize,
                });
            }
            return Ok(self.push(NodeKind::Atan2(args[0], args[1]), span));
        }
        let func = Func::from_name(name).ok_or_else(|| ParseError {
            kind: ParseErrorKind::UnknownIdentifier(name.to_string()),
            position: name_span.start as usize,
        })?;
        if args.len() != 1 {
            return Err(ParseError {
                kind: ParseErrorKind::ArityMismatch {
                    func: name.to_string(),
                    expected: 1,
                    got: args.len(),
                },
                position: name_span.start as usize,
            });
        }
        Ok(self.push(NodeKind::Call(func, args[0]), span))
    }

    fn guard(&self, depth: usize) -> Result<(), ParseError> {
        if depth > MAX_DEPTH {
            Err(ParseError {
                kind: ParseErrorKind::TooDeep,
                position: self.peek().map(|t| t.start).unwrap_or(self.text_len),
            })
        } else {
            Ok(())
        }
    }
}

fn describe(tok: &Tok) -> &'static str {
    match tok {
        Tok::Num(_) => "number",
        Tok::Ident(_) => "identifier",
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Slash => "`/`",
        Tok::Caret => "`^`",
        Tok::LParen => "`(`",
        Tok::RParen => "`)`",
        Tok::Comma => "`,`",
    }
}
