use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::exact_arith::{GaussRat, RatFunc};
use crate::jet::{CDiffOp, Chart, DiffExpr, MultiIndex};

use super::lexer::{tokenize, Tok, Token};
use super::{ParseError, ParseErrorKind, SourceSpan};

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    chart: Chart,
}

/// Value of a subexpression: linear in the jets, tagged with the span of the
/// first jet it contains (for nonlinearity diagnostics).
struct Val {
    e: DiffExpr,
    jet_span: Option<SourceSpan>,
}

impl Val {
    fn scalar(e: DiffExpr) -> Self {
        Val { e, jet_span: None }
    }

    fn has_jets(&self) -> bool {
        !self.e.is_jet_free()
    }
}

fn join(a: &SourceSpan, b: &SourceSpan) -> SourceSpan {
    SourceSpan {
        start: a.start,
        end: b.end,
        line: a.line,
        column: a.column,
    }
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let t = self.peek();
        ParseError::new(
            ParseErrorKind::Syntactic,
            t.span.clone(),
            format!("expected {expected}, found {}", t.tok.describe()),
        )
    }

    fn expect(&mut self, tok: Tok) -> Result<Token, ParseError> {
        if self.peek().tok == tok {
            Ok(self.next())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn expr(&mut self) -> Result<Val, ParseError> {
        let mut acc = self.term()?;
        loop {
            let neg = match self.peek().tok {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(acc),
            };
            self.next();
            let rhs = self.term()?;
            acc = Val {
                e: if neg {
                    acc.e.sub(&rhs.e)
                } else {
                    acc.e.add(&rhs.e)
                },
                jet_span: acc.jet_span.or(rhs.jet_span),
            };
        }
    }

    fn term(&mut self) -> Result<Val, ParseError> {
        let mut acc = self.unary()?;
        loop {
            let op = self.peek().clone();
            match op.tok {
                Tok::Star => {
                    self.next();
                    let rhs = self.unary()?;
                    acc = self.multiply(acc, rhs, &op.span)?;
                }
                Tok::Slash => {
                    self.next();
                    let start = self.peek().span.clone();
                    let rhs = self.unary()?;
                    if rhs.has_jets() {
                        return Err(ParseError::new(
                            ParseErrorKind::Nonlinearity,
                            rhs.jet_span.unwrap_or(start),
                            "division by an expression containing jet variables".into(),
                        ));
                    }
                    let inv = rhs.e.free().inv().map_err(|_| {
                        let end = self.toks[self.pos.saturating_sub(1)].span.clone();
                        ParseError::new(
                            ParseErrorKind::Syntactic,
                            join(&start, &end),
                            "division by zero".into(),
                        )
                    })?;
                    acc = Val {
                        e: acc.e.mul_coeff(&inv),
                        jet_span: acc.jet_span,
                    };
                }
                _ => return Ok(acc),
            }
        }
    }

    fn multiply(&self, a: Val, b: Val, op: &SourceSpan) -> Result<Val, ParseError> {
        match (a.has_jets(), b.has_jets()) {
            (true, true) => Err(ParseError::new(
                ParseErrorKind::Nonlinearity,
                b.jet_span.unwrap_or_else(|| op.clone()),
                "product of two jet factors".into(),
            )),
            (false, _) => Ok(Val {
                e: b.e.mul_coeff(a.e.free()),
                jet_span: b.jet_span,
            }),
            (true, false) => Ok(Val {
                e: a.e.mul_coeff(b.e.free()),
                jet_span: a.jet_span,
            }),
        }
    }

    fn unary(&mut self) -> Result<Val, ParseError> {
        match self.peek().tok {
            Tok::Minus => {
                self.next();
                let v = self.unary()?;
                Ok(Val {
                    e: v.e.neg(),
                    jet_span: v.jet_span,
                })
            }
            Tok::Plus => {
                self.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Val, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.next();
        let t = self.next();
        let exp = match &t.tok {
            Tok::Int(n) => n.to_u32().ok_or_else(|| {
                ParseError::new(
                    ParseErrorKind::Syntactic,
                    t.span.clone(),
                    format!("exponent `{n}` is too large"),
                )
            })?,
            other => {
                return Err(ParseError::new(
                    ParseErrorKind::Syntactic,
                    t.span.clone(),
                    format!(
                        "expected a nonnegative integer exponent, found {}",
                        other.describe()
                    ),
                ))
            }
        };
        if base.has_jets() {
            return match exp {
                1 => Ok(base),
                0 => Ok(Val::scalar(DiffExpr::from_free(
                    self.chart,
                    RatFunc::one(self.chart.vars()),
                ))),
                _ => Err(ParseError::new(
                    ParseErrorKind::Nonlinearity,
                    base.jet_span.unwrap_or(t.span),
                    "power of a jet factor".into(),
                )),
            };
        }
        Ok(Val::scalar(DiffExpr::from_free(
            self.chart,
            base.e.free().pow(exp),
        )))
    }

    fn index(&mut self) -> Result<u32, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => n.to_u32().ok_or_else(|| {
                ParseError::new(
                    ParseErrorKind::Syntactic,
                    t.span.clone(),
                    format!("derivative order `{n}` is too large"),
                )
            }),
            other => Err(ParseError::new(
                ParseErrorKind::Syntactic,
                t.span.clone(),
                format!("expected a derivative order, found {}", other.describe()),
            )),
        }
    }

    fn atom(&mut self) -> Result<Val, ParseError> {
        let t = self.next();
        let vars = self.chart.vars();
        match &t.tok {
            Tok::Int(n) => Ok(Val::scalar(DiffExpr::from_free(
                self.chart,
                RatFunc::constant(vars, int_const(n)),
            ))),
            Tok::LParen => {
                let v = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            Tok::Ident(name) if name == "u" => {
                let mut mi = MultiIndex::ZERO;
                let mut span = t.span.clone();
                if self.peek().tok == Tok::LBracket {
                    self.next();
                    let d1 = self.index()?;
                    self.expect(Tok::Comma)?;
                    let d2 = self.index()?;
                    let close = self.expect(Tok::RBracket)?;
                    mi = MultiIndex::new(d1, d2);
                    span = join(&span, &close.span);
                }
                Ok(Val {
                    e: DiffExpr::jet(self.chart, mi),
                    jet_span: Some(span),
                })
            }
            Tok::Ident(name) if name == "i" => Ok(Val::scalar(DiffExpr::from_free(
                self.chart,
                RatFunc::constant(vars, GaussRat::i()),
            ))),
            Tok::Ident(name) => match self.chart.axis_of(name) {
                Some(axis) => Ok(Val::scalar(DiffExpr::from_free(
                    self.chart,
                    RatFunc::var(vars, axis.index()),
                ))),
                None => {
                    let other = Chart::ALL
                        .iter()
                        .find(|c| **c != self.chart && c.axis_of(name).is_some());
                    Err(match other {
                        Some(c) => ParseError::new(
                            ParseErrorKind::ChartMismatch,
                            t.span.clone(),
                            format!("`{name}` is a {c} variable, not a {} one", self.chart),
                        ),
                        None => ParseError::new(
                            ParseErrorKind::UnknownVariable,
                            t.span.clone(),
                            format!("unknown variable `{name}` in the {} chart", self.chart),
                        ),
                    })
                }
            },
            other => Err(ParseError::new(
                ParseErrorKind::Syntactic,
                t.span.clone(),
                format!("expected an operand, found {}", other.describe()),
            )),
        }
    }
}

fn int_const(n: &BigInt) -> GaussRat {
    GaussRat::real(crate::exact_arith::BigRat::from_integer(n.clone()))
}

fn run(text: &str, chart: Chart) -> Result<Val, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        chart,
    };
    if p.peek().tok == Tok::Eof {
        return Err(p.unexpected("an expression"));
    }
    let v = p.expr()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(v)
}

/// Parses a linear differential expression in the given chart.
pub fn parse_expr(text: &str, chart: Chart) -> Result<DiffExpr, ParseError> {
    Ok(run(text, chart)?.e)
}

/// Parses an operator written as its action on `u`: `u[h,k]` stands for `D[h,k]`.
pub fn parse_op(text: &str, chart: Chart) -> Result<CDiffOp, ParseError> {
    let e = parse_expr(text, chart)?;
    if !e.free().is_zero() {
        return Err(ParseError::new(
            ParseErrorKind::Syntactic,
            super::lexer::span_at(text, 0, text.len()),
            "operator text has a term without `u`".into(),
        ));
    }
    Ok(e.as_operator().expect("free term checked"))
}

/// Parses a jet-free coefficient.
pub fn parse_coeff(text: &str, chart: Chart) -> Result<RatFunc, ParseError> {
    let v = run(text, chart)?;
    if v.has_jets() {
        return Err(ParseError::new(
            ParseErrorKind::Syntactic,
            v.jet_span
                .unwrap_or_else(|| super::lexer::span_at(text, 0, text.len())),
            "jet variable inside a coefficient".into(),
        ));
    }
    Ok(v.e.free().clone())
}
