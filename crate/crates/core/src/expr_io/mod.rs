//! Text grammar, canonical printing and JSON interchange for expressions
//! and operators.

mod lexer;
mod parser;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact_arith::RatFunc;
use crate::jet::{CDiffOp, Chart, DiffExpr, MultiIndex};

pub use parser::{parse_coeff, parse_expr, parse_op};

/// Byte range plus the 1-based line and column of its start.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParseErrorKind {
    Lexical,
    Syntactic,
    Nonlinearity,
    UnknownVariable,
    ChartMismatch,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Lexical => "lexical",
            ParseErrorKind::Syntactic => "syntactic",
            ParseErrorKind::Nonlinearity => "nonlinearity",
            ParseErrorKind::UnknownVariable => "unknown-variable",
            ParseErrorKind::ChartMismatch => "chart-mismatch",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[error("{kind} error at {}:{}: {message}", span.line, span.column)]
pub struct ParseError {
    pub span: SourceSpan,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl ParseError {
    pub fn new(kind: ParseErrorKind, span: SourceSpan, message: String) -> Self {
        ParseError {
            span,
            kind,
            message,
        }
    }

    /// Multi-line rendering with the offending range underlined.
    pub fn render(&self, text: &str) -> String {
        let line = text.lines().nth(self.span.line - 1).unwrap_or("");
        let width = text[self.span.start..self.span.end.min(text.len())]
            .chars()
            .count()
            .max(1);
        format!(
            "{self}\n  {line}\n  {}{}",
            " ".repeat(self.span.column - 1),
            "^".repeat(width)
        )
    }
}

fn coeff_factor(c: &RatFunc) -> Option<String> {
    if c.is_one() {
        return None;
    }
    let s = c.to_string();
    Some(if c.den().is_one() && c.num().num_terms() > 1 {
        format!("({s})")
    } else {
        s
    })
}

fn jet_text(mi: &MultiIndex) -> String {
    if *mi == MultiIndex::ZERO {
        "u".to_string()
    } else {
        format!("u[{},{}]", mi.d1, mi.d2)
    }
}

fn join_terms<'a>(
    free: Option<&RatFunc>,
    terms: impl Iterator<Item = (&'a MultiIndex, &'a RatFunc)>,
) -> String {
    let mut parts = Vec::new();
    if let Some(f) = free.filter(|f| !f.is_zero()) {
        parts.push(f.to_string());
    }
    for (mi, c) in terms {
        parts.push(match coeff_factor(c) {
            Some(k) => format!("{k}*{}", jet_text(mi)),
            None => jet_text(mi),
        });
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// Canonical text: free term first, then jets in multi-index order.
pub fn print_expr(e: &DiffExpr) -> String {
    join_terms(Some(e.free()), e.terms())
}

/// Canonical text of an operator by its action on `u`.
pub fn print_op(op: &CDiffOp) -> String {
    join_terms(None, op.terms())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    d1: u32,
    d2: u32,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Doc {
    kind: String,
    chart: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    free: Option<String>,
    terms: Vec<TermDoc>,
}

/// Expression or operator decoded from JSON.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Expr(DiffExpr),
    Op(CDiffOp),
}

impl Value {
    pub fn chart(&self) -> Chart {
        match self {
            Value::Expr(e) => e.chart(),
            Value::Op(o) => o.chart(),
        }
    }
}

fn term_docs<'a>(terms: impl Iterator<Item = (&'a MultiIndex, &'a RatFunc)>) -> Vec<TermDoc> {
    terms
        .map(|(mi, c)| TermDoc {
            d1: mi.d1,
            d2: mi.d2,
            coeff: c.to_string(),
        })
        .collect()
}

pub fn expr_to_json_value(e: &DiffExpr) -> serde_json::Value {
    serde_json::to_value(Doc {
        kind: "expr".into(),
        chart: e.chart().name().into(),
        free: Some(e.free().to_string()),
        terms: term_docs(e.terms()),
    })
    .expect("plain document")
}

pub fn op_to_json_value(op: &CDiffOp) -> serde_json::Value {
    serde_json::to_value(Doc {
        kind: "op".into(),
        chart: op.chart().name().into(),
        free: None,
        terms: term_docs(op.terms()),
    })
    .expect("plain document")
}

/// Compact JSON document for an expression.
pub fn expr_to_json(e: &DiffExpr) -> String {
    expr_to_json_value(e).to_string()
}

/// Compact JSON document for an operator.
pub fn op_to_json(op: &CDiffOp) -> String {
    op_to_json_value(op).to_string()
}

pub fn to_json(v: &Value) -> String {
    match v {
        Value::Expr(e) => expr_to_json(e),
        Value::Op(o) => op_to_json(o),
    }
}

fn whole(text: &str) -> SourceSpan {
    lexer::span_at(text, 0, text.len())
}

fn locate(text: &str, needle: &str) -> SourceSpan {
    match text.find(needle) {
        Some(p) => lexer::span_at(text, p, p + needle.len()),
        None => whole(text),
    }
}

fn schema(text: &str, msg: String) -> ParseError {
    ParseError::new(ParseErrorKind::Syntactic, whole(text), msg)
}

fn coeff_in(text: &str, s: &str, chart: Chart) -> Result<RatFunc, ParseError> {
    parse_coeff(s, chart).map_err(|e| {
        let quoted = serde_json::to_string(s).unwrap_or_default();
        ParseError::new(
            e.kind,
            locate(text, &quoted),
            format!("in coefficient {quoted}: {}", e.message),
        )
    })
}

/// Decodes a JSON expression or operator document.
pub fn from_json(text: &str) -> Result<Value, ParseError> {
    let doc: Doc = serde_json::from_str(text).map_err(|e| {
        let line = e.line().max(1);
        let offset: usize = text
            .split_inclusive('\n')
            .take(line - 1)
            .map(str::len)
            .sum::<usize>()
            + e.column().saturating_sub(1);
        let start = offset.min(text.len());
        let start = (0..=start)
            .rev()
            .find(|&p| text.is_char_boundary(p))
            .unwrap_or(0);
        ParseError::new(
            ParseErrorKind::Syntactic,
            lexer::span_at(text, start, start),
            format!("invalid document: {e}"),
        )
    })?;
    let chart: Chart = doc.chart.parse().map_err(|_| {
        ParseError::new(
            ParseErrorKind::UnknownVariable,
            locate(text, &format!("\"{}\"", doc.chart)),
            format!("unknown chart `{}`", doc.chart),
        )
    })?;
    let mut terms = BTreeMap::new();
    for t in &doc.terms {
        let mi = MultiIndex::new(t.d1, t.d2);
        let c = coeff_in(text, &t.coeff, chart)?;
        if terms.insert(mi, c).is_some() {
            return Err(schema(text, format!("multi-index {mi} appears twice")));
        }
    }
    match doc.kind.as_str() {
        "expr" => {
            let free = match &doc.free {
                Some(s) => coeff_in(text, s, chart)?,
                None => return Err(schema(text, "expression document lacks `free`".into())),
            };
            Ok(Value::Expr(DiffExpr::from_parts(chart, free, terms)))
        }
        "op" => {
            if doc.free.is_some() {
                return Err(schema(text, "operator document has a `free` field".into()));
            }
            Ok(Value::Op(CDiffOp::from_terms(chart, terms)))
        }
        other => Err(ParseError::new(
            ParseErrorKind::Syntactic,
            locate(text, &format!("\"{other}\"")),
            format!("unknown kind `{other}`"),
        )),
    }
}
