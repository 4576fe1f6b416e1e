//! A small arithmetic grammar over one variable, evaluated over any
//! [`Scalar`] so that parsed curves differentiate exactly.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | atom
//! atom   := number | var | func '(' expr ')' | '(' expr ')'
//! func   := sinh | cosh | sin | cos | exp
//! ```

use std::sync::Arc;

use mannheim_core::{CurveFn, Scalar, ScalarFn, Vec3L};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{message} at offset {offset} in {input:?}")]
pub struct ParseError {
    pub input: String,
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sinh,
    Cosh,
    Sin,
    Cos,
    Exp,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn eval<S: Scalar>(&self, x: S) -> S {
        match self {
            Expr::Num(v) => S::from_f64(*v),
            Expr::Var => x,
            Expr::Neg(a) => -a.eval(x),
            Expr::Add(a, b) => a.eval(x) + b.eval(x),
            Expr::Sub(a, b) => a.eval(x) - b.eval(x),
            Expr::Mul(a, b) => a.eval(x) * b.eval(x),
            Expr::Div(a, b) => a.eval(x) / b.eval(x),
            Expr::Call(f, a) => {
                let v = a.eval(x);
                match f {
                    Func::Sinh => v.sinh(),
                    Func::Cosh => v.cosh(),
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                    Func::Exp => v.exp(),
                }
            }
        }
    }
}

/// Parses `source` with `var` as the only variable name.
pub fn parse(source: &str, var: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src: source, pos: 0, var };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != source.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    var: &'a str,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ParseError {
        ParseError { input: self.src.to_string(), offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += self.rest().chars().next().map_or(0, char::len_utf8);
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') || self.eat('−') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') || self.eat('−') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        if self.eat('(') {
            let e = self.expr()?;
            if !self.eat(')') {
                return Err(self.error("expected ')'"));
            }
            return Ok(e);
        }
        let src = self.src;
        let rest = &src[self.pos..];
        let c = rest.chars().next().ok_or_else(|| self.error("unexpected end of input"))?;
        if c.is_ascii_digit() || c == '.' {
            return self.number();
        }
        if c.is_ascii_alphabetic() {
            let len = rest.find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_')).unwrap_or(rest.len());
            let word = &rest[..len];
            let start = self.pos;
            self.pos += len;
            if word == self.var {
                return Ok(Expr::Var);
            }
            let func = match word {
                "sinh" => Func::Sinh,
                "cosh" => Func::Cosh,
                "sin" => Func::Sin,
                "cos" => Func::Cos,
                "exp" => Func::Exp,
                _ => {
                    self.pos = start;
                    return Err(self.error(&format!("unknown name '{word}'")));
                }
            };
            if !self.eat('(') {
                return Err(self.error("expected '(' after function name"));
            }
            let arg = self.expr()?;
            if !self.eat(')') {
                return Err(self.error("expected ')'"));
            }
            return Ok(Expr::Call(func, Box::new(arg)));
        }
        Err(self.error(&format!("unexpected character '{c}'")))
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let rest = self.rest();
        let bytes = rest.as_bytes();
        let mut end = 0;
        while end < bytes.len() && (bytes[end].is_ascii_digit() || bytes[end] == b'.') {
            end += 1;
        }
        if end < bytes.len() && (bytes[end] == b'e' || bytes[end] == b'E') {
            let mut k = end + 1;
            if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                k += 1;
            }
            if k < bytes.len() && bytes[k].is_ascii_digit() {
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                end = k;
            }
        }
        let v: f64 = rest[..end].parse().map_err(|_| self.error("malformed number"))?;
        self.pos += end;
        Ok(Expr::Num(v))
    }
}

/// A parsed scalar function of one variable.
#[derive(Debug, Clone)]
pub struct ExprFn(pub Arc<Expr>);

impl ScalarFn for ExprFn {
    fn eval<S: Scalar>(&self, x: S) -> S {
        self.0.eval(x)
    }
}

/// Three parsed components.
#[derive(Debug, Clone)]
pub struct ExprCurve(pub Arc<[Expr; 3]>);

impl ExprCurve {
    pub fn parse(components: &[String; 3], var: &str) -> Result<Self, ParseError> {
        Ok(Self(Arc::new([parse(&components[0], var)?, parse(&components[1], var)?, parse(&components[2], var)?])))
    }
}

impl CurveFn for ExprCurve {
    fn eval<S: Scalar>(&self, u: S) -> Vec3L<S> {
        let [a, b, c] = &*self.0;
        Vec3L::new(a.eval(u), b.eval(u), c.eval(u))
    }
}
