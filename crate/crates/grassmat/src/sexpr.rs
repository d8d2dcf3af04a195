//! S-expression text form of trace expressions.
//!
//! A term is `(* c (t w) (t w) … w_outer)` with words written as
//! space-separated letters `y3 x1 …`; `(t)` is the unit trace. A sum is
//! `(+ term term …)`, and `0` is the empty sum.

use std::fmt::Write as _;

use grassmat_core::freetrace::Term;
use grassmat_core::{Letter, Q, TraceExpression};
use num_traits::Zero;

use crate::ParseError;

pub fn parse_letter(s: &str) -> Result<Letter, ParseError> {
    let bad = || ParseError::new(format!("bad letter `{s}`"));
    let (head, idx) = s.split_at(s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
    let i: u32 = idx.parse().map_err(|_| bad())?;
    match head {
        "y" => Ok(Letter::Y(i)),
        "x" => Ok(Letter::X(i)),
        _ => Err(bad()),
    }
}

pub fn term_to_sexpr(term: &Term, c: &Q) -> String {
    let mut s = format!("(* {c}");
    for t in term.traces() {
        s.push_str(" (t");
        for l in t.letters() {
            let _ = write!(s, " {l}");
        }
        s.push(')');
    }
    for l in term.outer() {
        let _ = write!(s, " {l}");
    }
    s.push(')');
    s
}

pub fn to_sexpr(e: &TraceExpression) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = e.terms().map(|(t, c)| term_to_sexpr(t, c)).collect();
    format!("(+ {})", terms.join(" "))
}

#[derive(Clone, Debug, PartialEq)]
enum Node {
    Atom(String),
    List(Vec<Node>),
}

fn tokenize(s: &str) -> Vec<String> {
    s.replace('(', " ( ").replace(')', " ) ").split_whitespace().map(String::from).collect()
}

fn read(tokens: &[String], pos: &mut usize) -> Result<Node, ParseError> {
    let tok = tokens.get(*pos).ok_or_else(|| ParseError::new("unexpected end of input"))?;
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos).map(String::as_str) {
                    None => return Err(ParseError::new("unbalanced `(`")),
                    Some(")") => {
                        *pos += 1;
                        return Ok(Node::List(items));
                    }
                    Some(_) => items.push(read(tokens, pos)?),
                }
            }
        }
        ")" => Err(ParseError::new("unexpected `)`")),
        a => Ok(Node::Atom(a.to_string())),
    }
}

/// A parsed expression together with, for each written term, the factor its
/// coefficient picked up while being brought to canonical form (`±1`, or `0`
/// if the term vanished).
#[derive(Clone, Debug, PartialEq)]
pub struct Parsed {
    pub expression: TraceExpression,
    pub normalization: Vec<i8>,
}

fn parse_term(items: &[Node]) -> Result<(TraceExpression, i8), ParseError> {
    let coeff = match items.first() {
        Some(Node::Atom(a)) => a.parse::<Q>().map_err(|_| ParseError::new(format!("bad coefficient `{a}`")))?,
        _ => return Err(ParseError::new("term needs a coefficient after `*`")),
    };
    let mut traces = Vec::new();
    let mut outer = Vec::new();
    for it in &items[1..] {
        match it {
            Node::Atom(a) => outer.push(parse_letter(a)?),
            Node::List(l) => {
                if !matches!(l.first(), Some(Node::Atom(h)) if h == "t") {
                    return Err(ParseError::new("expected `(t …)`"));
                }
                if !outer.is_empty() {
                    return Err(ParseError::new("traces must precede the outer word"));
                }
                let w = l[1..]
                    .iter()
                    .map(|n| match n {
                        Node::Atom(a) => parse_letter(a),
                        Node::List(_) => Err(ParseError::new("nested list inside a trace")),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                traces.push(w);
            }
        }
    }
    let e = TraceExpression::monomial(coeff.clone(), &traces, &outer);
    let sign = match e.terms().next() {
        None => 0,
        Some(_) if coeff.is_zero() => 0,
        Some((_, c)) if *c == coeff => 1,
        Some(_) => -1,
    };
    Ok((e, sign))
}

pub fn parse_sexpr(s: &str) -> Result<Parsed, ParseError> {
    let tokens = tokenize(s);
    let mut pos = 0;
    let node = read(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(ParseError::new("trailing input after expression"));
    }
    let mut expression = TraceExpression::zero();
    let mut normalization = Vec::new();
    let mut add_term = |items: &[Node]| -> Result<(), ParseError> {
        let (e, sign) = parse_term(items)?;
        expression.add_scaled_assign(&e, &Q::from_integer(1.into()));
        normalization.push(sign);
        Ok(())
    };
    match &node {
        Node::Atom(a) if a == "0" => {}
        Node::List(items) => match items.first() {
            Some(Node::Atom(h)) if h == "+" => {
                for it in &items[1..] {
                    match it {
                        Node::List(t) if matches!(t.first(), Some(Node::Atom(h)) if h == "*") => add_term(&t[1..])?,
                        _ => return Err(ParseError::new("a sum holds `(* …)` terms")),
                    }
                }
            }
            Some(Node::Atom(h)) if h == "*" => add_term(&items[1..])?,
            _ => return Err(ParseError::new("expected `(+ …)` or `(* …)`")),
        },
        Node::Atom(a) => return Err(ParseError::new(format!("unexpected atom `{a}`"))),
    }
    Ok(Parsed { expression, normalization })
}
