//! Small arithmetic language for circle Hamiltonians H(t, x).
//!
//! Grammar: sums, differences, products, quotients and integer or real powers
//! (`^`) of numbers, `x`, `t`, `pi`, parentheses and the functions `cos`,
//! `sin`, `exp`, `sqrt`. Trigonometric functions take their argument in turns:
//! `cos(e)` is cos(2 pi e), and a bare `cos` or `sin` means `cos(x)`, so
//! `2+cos` is 2 + cos(2 pi x).

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Num(f64),
    X,
    T,
    Neg(Box<Node>),
    Bin(char, Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Func {
    Cos,
    Sin,
    Exp,
    Sqrt,
}

impl Node {
    fn eval(&self, t: f64, x: f64) -> f64 {
        match self {
            Node::Num(c) => *c,
            Node::X => x,
            Node::T => t,
            Node::Neg(a) => -a.eval(t, x),
            Node::Bin(op, a, b) => {
                let (a, b) = (a.eval(t, x), b.eval(t, x));
                match op {
                    '+' => a + b,
                    '-' => a - b,
                    '*' => a * b,
                    '/' => a / b,
                    _ => a.powf(b),
                }
            }
            Node::Call(f, a) => {
                let a = a.eval(t, x);
                match f {
                    Func::Cos => (2.0 * PI * a).cos(),
                    Func::Sin => (2.0 * PI * a).sin(),
                    Func::Exp => a.exp(),
                    Func::Sqrt => a.sqrt(),
                }
            }
        }
    }

    fn uses_t(&self) -> bool {
        match self {
            Node::T => true,
            Node::Num(_) | Node::X => false,
            Node::Neg(a) | Node::Call(_, a) => a.uses_t(),
            Node::Bin(_, a, b) => a.uses_t() || b.uses_t(),
        }
    }
}

/// Parsed H(t, x).
#[derive(Clone)]
pub struct Expr {
    root: Arc<Node>,
    source: String,
}

impl std::fmt::Debug for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Expr({:?})", self.source)
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Self> {
        let tokens = tokenize(src)?;
        let mut p = Parser { tokens, pos: 0 };
        let root = p.sum()?;
        if p.pos != p.tokens.len() {
            return Err(CliError::Parse(format!("unexpected token {:?} in {src:?}", p.tokens[p.pos])));
        }
        Ok(Self { root: Arc::new(root), source: src.to_string() })
    }

    pub fn eval(&self, t: f64, x: f64) -> f64 {
        self.root.eval(t, x)
    }

    pub fn is_autonomous(&self) -> bool {
        !self.root.uses_t()
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            // exponent part such as 1e-3
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
            let s: String = chars[start..i].iter().collect();
            let v = s.parse::<f64>().map_err(|_| CliError::Parse(format!("bad number {s:?}")))?;
            out.push(Tok::Num(v));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(CliError::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Node> {
        let mut lhs = self.product()?;
        loop {
            let op = if self.eat('+') {
                '+'
            } else if self.eat('-') {
                '-'
            } else {
                return Ok(lhs);
            };
            lhs = Node::Bin(op, Box::new(lhs), Box::new(self.product()?));
        }
    }

    fn product(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat('*') {
                '*'
            } else if self.eat('/') {
                '/'
            } else {
                return Ok(lhs);
            };
            lhs = Node::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Node> {
        if self.eat('-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if self.eat('^') {
            // right associative, binds tighter than unary minus on the left
            return Ok(Node::Bin('^', Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Node::Num(v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(CliError::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let func = match name.as_str() {
                    "x" => return Ok(Node::X),
                    "t" => return Ok(Node::T),
                    "pi" => return Ok(Node::Num(PI)),
                    "cos" => Func::Cos,
                    "sin" => Func::Sin,
                    "exp" => Func::Exp,
                    "sqrt" => Func::Sqrt,
                    _ => return Err(CliError::Parse(format!("unknown name {name:?}"))),
                };
                if self.eat('(') {
                    let arg = self.sum()?;
                    if !self.eat(')') {
                        return Err(CliError::Parse("missing ')'".into()));
                    }
                    Ok(Node::Call(func, Box::new(arg)))
                } else if matches!(func, Func::Cos | Func::Sin) {
                    Ok(Node::Call(func, Box::new(Node::X)))
                } else {
                    Err(CliError::Parse(format!("{name} needs an argument")))
                }
            }
            other => Err(CliError::Parse(format!("unexpected {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_cosine_is_one_turn() {
        let e = Expr::parse("2+cos").unwrap();
        assert!(e.is_autonomous());
        assert!((e.eval(0.0, 0.25) - 2.0).abs() < 1e-15);
        assert!((e.eval(0.0, 0.5) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn precedence_and_time() {
        let e = Expr::parse("1 + 0.5*sin(2*x)*cos(t) - 2^-1 + 1e-1").unwrap();
        assert!(!e.is_autonomous());
        let want = 1.0 + 0.5 * (4.0 * PI * 0.1f64).sin() * (2.0 * PI * 0.3f64).cos() - 0.5 + 0.1;
        assert!((e.eval(0.3, 0.1) - want).abs() < 1e-15);
        assert_eq!(Expr::parse("-x^2").unwrap().eval(0.0, 3.0), -9.0);
    }

    #[test]
    fn rejects_garbage() {
        assert!(Expr::parse("2+").is_err());
        assert!(Expr::parse("foo(x)").is_err());
        assert!(Expr::parse("(1+x").is_err());
        assert!(Expr::parse("exp").is_err());
        assert!(Expr::parse("1 $ 2").is_err());
    }
}
