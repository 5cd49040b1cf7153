//! A small arithmetic-expression language for configs and custom contractions.
//!
//! Expressions range over a declared variable set (`x`, `i`, `t`, `u`, `v`,
//! or `t1..t6` depending on context), support `+ - * / ^`, the functions
//! `min`, `max` (variadic) and `abs`, and numeric literals. Order predicates
//! add comparisons and `and`/`or`/`not` on top of the arithmetic layer.
//!
//! Evaluation is total on its domain; division by zero and invalid powers
//! surface as [`EvalError`] values carrying the offending input rather than
//! panicking or returning NaN.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("syntax error at column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("unknown variable `{name}` at column {col}")]
    UnknownVariable { name: String, col: usize },
    #[error("unknown function `{name}` at column {col}")]
    UnknownFunction { name: String, col: usize },
    #[error("`{name}` expects {expected} argument(s) at column {col}, got {got}")]
    Arity {
        name: String,
        expected: String,
        got: usize,
        col: usize,
    },
}

impl ParseError {
    /// Column (1-based) the error points at.
    pub fn col(&self) -> usize {
        match self {
            ParseError::Syntax { col, .. }
            | ParseError::UnknownVariable { col, .. }
            | ParseError::UnknownFunction { col, .. }
            | ParseError::Arity { col, .. } => *col,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("division by zero (numerator {numerator})")]
    DivisionByZero { numerator: f64 },
    #[error("invalid power {base}^{exponent}")]
    InvalidPower { base: f64, exponent: f64 },
    #[error("non-finite intermediate result")]
    NonFinite,
    #[error("unbound variable `{0}`")]
    Unbound(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Min,
    Max,
    Abs,
}

/// Arithmetic AST. Public so independent evaluators (test oracles) can walk it.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Num(f64),
    Var(String),
    Neg(Box<Node>),
    Bin(BinOp, Box<Node>, Box<Node>),
    Call(Func, Vec<Node>),
}

impl Node {
    pub fn eval(&self, lookup: &dyn Fn(&str) -> Option<f64>) -> Result<f64, EvalError> {
        let v = match self {
            Node::Num(n) => *n,
            Node::Var(name) => lookup(name).ok_or_else(|| EvalError::Unbound(name.clone()))?,
            Node::Neg(inner) => -inner.eval(lookup)?,
            Node::Bin(op, a, b) => {
                let x = a.eval(lookup)?;
                let y = b.eval(lookup)?;
                match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => {
                        if y == 0.0 {
                            return Err(EvalError::DivisionByZero { numerator: x });
                        }
                        x / y
                    }
                    BinOp::Pow => {
                        if x == 0.0 && y < 0.0 {
                            return Err(EvalError::DivisionByZero { numerator: 1.0 });
                        }
                        if x < 0.0 && y.fract() != 0.0 {
                            return Err(EvalError::InvalidPower {
                                base: x,
                                exponent: y,
                            });
                        }
                        x.powf(y)
                    }
                }
            }
            Node::Call(f, args) => {
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    vals.push(a.eval(lookup)?);
                }
                match f {
                    Func::Abs => vals[0].abs(),
                    Func::Min => vals.iter().copied().fold(f64::INFINITY, f64::min),
                    Func::Max => vals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                }
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::NonFinite)
        }
    }
}

/// A parsed arithmetic expression over a fixed variable set.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub node: Node,
}

impl Expr {
    pub fn parse(src: &str, allowed: &[&str]) -> Result<Expr, ParseError> {
        let toks = lex(src)?;
        let mut p = Parser {
            toks,
            pos: 0,
            allowed,
            end_col: src.chars().count() + 1,
        };
        let node = p.parse_add()?;
        p.expect_end()?;
        Ok(Expr { node })
    }

    pub fn eval(&self, lookup: &dyn Fn(&str) -> Option<f64>) -> Result<f64, EvalError> {
        self.node.eval(lookup)
    }

    /// Evaluate against a slice of `(name, value)` bindings.
    pub fn eval_with(&self, vars: &[(&str, f64)]) -> Result<f64, EvalError> {
        self.node.eval(&|name| {
            vars.iter()
                .find(|(n, _)| *n == name)
                .map(|(_, v)| *v)
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_node(f, &self.node, 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Le,
    Lt,
    Ge,
    Gt,
    Eq,
    Ne,
}

/// Boolean AST for user-declared order relations.
#[derive(Debug, Clone, PartialEq)]
pub enum PredNode {
    Cmp(CmpOp, Node, Node),
    And(Box<PredNode>, Box<PredNode>),
    Or(Box<PredNode>, Box<PredNode>),
    Not(Box<PredNode>),
}

impl PredNode {
    pub fn eval(&self, lookup: &dyn Fn(&str) -> Option<f64>) -> Result<bool, EvalError> {
        Ok(match self {
            PredNode::Cmp(op, a, b) => {
                let x = a.eval(lookup)?;
                let y = b.eval(lookup)?;
                match op {
                    CmpOp::Le => x <= y,
                    CmpOp::Lt => x < y,
                    CmpOp::Ge => x >= y,
                    CmpOp::Gt => x > y,
                    CmpOp::Eq => x == y,
                    CmpOp::Ne => x != y,
                }
            }
            PredNode::And(a, b) => a.eval(lookup)? && b.eval(lookup)?,
            PredNode::Or(a, b) => a.eval(lookup)? || b.eval(lookup)?,
            PredNode::Not(a) => !a.eval(lookup)?,
        })
    }
}

/// A binary relation on points given as a boolean expression over `x`, `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderPredicate {
    pub node: PredNode,
}

impl OrderPredicate {
    pub fn parse(src: &str) -> Result<OrderPredicate, ParseError> {
        let toks = lex(src)?;
        let mut p = Parser {
            toks,
            pos: 0,
            allowed: &["x", "y"],
            end_col: src.chars().count() + 1,
        };
        let node = p.parse_or()?;
        p.expect_end()?;
        Ok(OrderPredicate { node })
    }

    pub fn holds(&self, x: f64, y: f64) -> Result<bool, EvalError> {
        self.node.eval(&|name| match name {
            "x" => Some(x),
            "y" => Some(y),
            _ => None,
        })
    }
}

impl fmt::Display for OrderPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_pred(f, &self.node, 0)
    }
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Le,
    Lt,
    Ge,
    Gt,
    EqEq,
    Ne,
    KwAnd,
    KwOr,
    KwNot,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push((Tok::Plus, col));
                i += 1;
            }
            '-' => {
                out.push((Tok::Minus, col));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, col));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, col));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, col));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, col));
                i += 1;
            }
            ',' => {
                out.push((Tok::Comma, col));
                i += 1;
            }
            '<' => {
                if chars.get(i + 1) == Some(&'=') {
                    out.push((Tok::Le, col));
                    i += 2;
                } else {
                    out.push((Tok::Lt, col));
                    i += 1;
                }
            }
            '>' => {
                if chars.get(i + 1) == Some(&'=') {
                    out.push((Tok::Ge, col));
                    i += 2;
                } else {
                    out.push((Tok::Gt, col));
                    i += 1;
                }
            }
            '=' => {
                if chars.get(i + 1) == Some(&'=') {
                    out.push((Tok::EqEq, col));
                    i += 2;
                } else {
                    return Err(ParseError::Syntax {
                        col,
                        msg: "expected `==`".into(),
                    });
                }
            }
            '!' => {
                if chars.get(i + 1) == Some(&'=') {
                    out.push((Tok::Ne, col));
                    i += 2;
                } else {
                    return Err(ParseError::Syntax {
                        col,
                        msg: "expected `!=`".into(),
                    });
                }
            }
            _ if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        i = j;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text: String = chars[start..i].iter().collect();
                let val: f64 = text.parse().map_err(|_| ParseError::Syntax {
                    col,
                    msg: format!("bad number `{text}`"),
                })?;
                out.push((Tok::Num(val), col));
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let tok = match text.as_str() {
                    "and" => Tok::KwAnd,
                    "or" => Tok::KwOr,
                    "not" => Tok::KwNot,
                    _ => Tok::Ident(text),
                };
                out.push((tok, col));
            }
            _ => {
                return Err(ParseError::Syntax {
                    col,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    allowed: &'a [&'a str],
    end_col: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or(self.end_col)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(ParseError::Syntax {
                col: self.col(),
                msg: format!("expected {what}"),
            })
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(ParseError::Syntax {
                col: self.col(),
                msg: "trailing input".into(),
            })
        }
    }

    fn parse_or(&mut self) -> Result<PredNode, ParseError> {
        let mut lhs = self.parse_and()?;
        while self.eat(&Tok::KwOr) {
            let rhs = self.parse_and()?;
            lhs = PredNode::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_and(&mut self) -> Result<PredNode, ParseError> {
        let mut lhs = self.parse_not()?;
        while self.eat(&Tok::KwAnd) {
            let rhs = self.parse_not()?;
            lhs = PredNode::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_not(&mut self) -> Result<PredNode, ParseError> {
        if self.eat(&Tok::KwNot) {
            return Ok(PredNode::Not(Box::new(self.parse_not()?)));
        }
        // Parenthesized boolean vs parenthesized arithmetic: try boolean group.
        if self.peek() == Some(&Tok::LParen) {
            let save = self.pos;
            self.pos += 1;
            if let Ok(inner) = self.parse_or() {
                if self.eat(&Tok::RParen) {
                    return Ok(inner);
                }
            }
            self.pos = save;
        }
        self.parse_cmp()
    }

    fn parse_cmp(&mut self) -> Result<PredNode, ParseError> {
        let lhs = self.parse_add()?;
        let op = match self.peek() {
            Some(Tok::Le) => CmpOp::Le,
            Some(Tok::Lt) => CmpOp::Lt,
            Some(Tok::Ge) => CmpOp::Ge,
            Some(Tok::Gt) => CmpOp::Gt,
            Some(Tok::EqEq) => CmpOp::Eq,
            Some(Tok::Ne) => CmpOp::Ne,
            _ => {
                return Err(ParseError::Syntax {
                    col: self.col(),
                    msg: "expected comparison operator".into(),
                })
            }
        };
        self.pos += 1;
        let rhs = self.parse_add()?;
        Ok(PredNode::Cmp(op, lhs, rhs))
    }

    fn parse_add(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.parse_mul()?;
        loop {
            if self.eat(&Tok::Plus) {
                let rhs = self.parse_mul()?;
                lhs = Node::Bin(BinOp::Add, Box::new(lhs), Box::new(rhs));
            } else if self.eat(&Tok::Minus) {
                let rhs = self.parse_mul()?;
                lhs = Node::Bin(BinOp::Sub, Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn parse_mul(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.parse_unary()?;
        loop {
            if self.eat(&Tok::Star) {
                let rhs = self.parse_unary()?;
                lhs = Node::Bin(BinOp::Mul, Box::new(lhs), Box::new(rhs));
            } else if self.eat(&Tok::Slash) {
                let rhs = self.parse_unary()?;
                lhs = Node::Bin(BinOp::Div, Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn parse_unary(&mut self) -> Result<Node, ParseError> {
        if self.eat(&Tok::Minus) {
            return Ok(Node::Neg(Box::new(self.parse_unary()?)));
        }
        self.parse_pow()
    }

    fn parse_pow(&mut self) -> Result<Node, ParseError> {
        let base = self.parse_atom()?;
        if self.eat(&Tok::Caret) {
            let exp = self.parse_unary()?;
            return Ok(Node::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<Node, ParseError> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Node::Num(n)),
            Some(Tok::Ident(name)) => {
                if self.peek() == Some(&Tok::LParen) {
                    self.pos += 1;
                    let func = match name.as_str() {
                        "min" => Func::Min,
                        "max" => Func::Max,
                        "abs" => Func::Abs,
                        _ => return Err(ParseError::UnknownFunction { name, col }),
                    };
                    let mut args = vec![self.parse_add()?];
                    while self.eat(&Tok::Comma) {
                        args.push(self.parse_add()?);
                    }
                    self.expect(Tok::RParen, "`)`")?;
                    let ok = match func {
                        Func::Abs => args.len() == 1,
                        Func::Min | Func::Max => args.len() >= 2,
                    };
                    if !ok {
                        return Err(ParseError::Arity {
                            name,
                            expected: match func {
                                Func::Abs => "1".into(),
                                _ => "at least 2".into(),
                            },
                            got: args.len(),
                            col,
                        });
                    }
                    Ok(Node::Call(func, args))
                } else {
                    if !self.allowed.contains(&name.as_str()) {
                        return Err(ParseError::UnknownVariable { name, col });
                    }
                    Ok(Node::Var(name))
                }
            }
            Some(Tok::LParen) => {
                let inner = self.parse_add()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(ParseError::Syntax {
                col,
                msg: "expected a number, variable or `(`".into(),
            }),
        }
    }
}

// ---------------------------------------------------------------------------
// Canonical display
// ---------------------------------------------------------------------------

fn prec(node: &Node) -> u8 {
    match node {
        Node::Bin(BinOp::Add | BinOp::Sub, ..) => 5,
        Node::Bin(BinOp::Mul | BinOp::Div, ..) => 6,
        Node::Neg(_) => 7,
        Node::Bin(BinOp::Pow, ..) => 8,
        Node::Num(_) | Node::Var(_) | Node::Call(..) => 9,
    }
}

fn write_node(f: &mut fmt::Formatter<'_>, node: &Node, min_prec: u8) -> fmt::Result {
    let p = prec(node);
    let parens = p < min_prec;
    if parens {
        write!(f, "(")?;
    }
    match node {
        Node::Num(n) => write!(f, "{n}")?,
        Node::Var(v) => write!(f, "{v}")?,
        Node::Neg(inner) => {
            write!(f, "-")?;
            write_node(f, inner, 7)?;
        }
        Node::Bin(op, a, b) => {
            // left-associative parsing: right children at the same level
            // keep their parentheses so the AST round-trips identically
            let (sym, lp, rp) = match op {
                BinOp::Add => (" + ", 5, 6),
                BinOp::Sub => (" - ", 5, 6),
                BinOp::Mul => (" * ", 6, 7),
                BinOp::Div => (" / ", 6, 7),
                BinOp::Pow => ("^", 9, 8),
            };
            write_node(f, a, lp)?;
            write!(f, "{sym}")?;
            write_node(f, b, rp)?;
        }
        Node::Call(func, args) => {
            let name = match func {
                Func::Min => "min",
                Func::Max => "max",
                Func::Abs => "abs",
            };
            write!(f, "{name}(")?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write_node(f, a, 0)?;
            }
            write!(f, ")")?;
        }
    }
    if parens {
        write!(f, ")")?;
    }
    Ok(())
}

fn pred_prec(node: &PredNode) -> u8 {
    match node {
        PredNode::Or(..) => 1,
        PredNode::And(..) => 2,
        PredNode::Not(_) => 3,
        PredNode::Cmp(..) => 4,
    }
}

fn write_pred(f: &mut fmt::Formatter<'_>, node: &PredNode, min_prec: u8) -> fmt::Result {
    let p = pred_prec(node);
    let parens = p < min_prec;
    if parens {
        write!(f, "(")?;
    }
    match node {
        PredNode::Or(a, b) => {
            write_pred(f, a, 1)?;
            write!(f, " or ")?;
            write_pred(f, b, 2)?;
        }
        PredNode::And(a, b) => {
            write_pred(f, a, 2)?;
            write!(f, " and ")?;
            write_pred(f, b, 3)?;
        }
        PredNode::Not(a) => {
            write!(f, "not ")?;
            write_pred(f, a, 3)?;
        }
        PredNode::Cmp(op, a, b) => {
            let sym = match op {
                CmpOp::Le => "<=",
                CmpOp::Lt => "<",
                CmpOp::Ge => ">=",
                CmpOp::Gt => ">",
                CmpOp::Eq => "==",
                CmpOp::Ne => "!=",
            };
            write_node(f, a, 0)?;
            write!(f, " {sym} ")?;
            write_node(f, b, 0)?;
        }
    }
    if parens {
        write!(f, ")")?;
    }
    Ok(())
}
