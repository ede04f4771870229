//! The shared expression grammar: integers, identifiers, `+ - * / ^` and
//! parentheses. Exponents are nonnegative integer literals.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' integer)?
//! atom  := integer | identifier | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::field::{BaseField, FieldElement};
use super::mpoly::MPoly;
use super::ratfunc::RationalFunction;
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Var(String, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn err(column: usize, message: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse {
        column,
        message: message.into(),
    }
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, AlgebraError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Int(digits.parse().expect("ascii digits")), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(err(col, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, AlgebraError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, AlgebraError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Op('/')) {
                let col = self.col();
                self.pos += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), col);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, AlgebraError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, AlgebraError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let e = u32::try_from(n).map_err(|_| err(col, "exponent too large"))?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            _ => Err(err(col, "expected a nonnegative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr, AlgebraError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Var(name, col))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(err(self.col(), "expected ')'"));
                }
                Ok(e)
            }
            Some(t) => Err(err(col, format!("unexpected token {t:?}"))),
            None => Err(err(col, "unexpected end of input")),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr, AlgebraError> {
    let toks = lex(s)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: s.chars().count() + 1,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(p.col(), "trailing input"));
    }
    Ok(e)
}

/// Folds an expression tree into any ring, with the caller deciding what
/// variables mean and when division is allowed.
pub fn fold<T: Clone>(
    e: &Expr,
    int: &impl Fn(&BigInt) -> T,
    var: &impl Fn(&str, usize) -> Result<T, AlgebraError>,
    ring: &impl Fn(char, T, T) -> T,
    div: &impl Fn(T, T, usize) -> Result<T, AlgebraError>,
    pow: &impl Fn(&T, u32) -> T,
) -> Result<T, AlgebraError> {
    let rec = |x: &Expr| fold(x, int, var, ring, div, pow);
    Ok(match e {
        Expr::Int(n) => int(n),
        Expr::Var(name, col) => var(name, *col)?,
        Expr::Neg(a) => ring('-', int(&BigInt::from(0)), rec(a)?),
        Expr::Add(a, b) => ring('+', rec(a)?, rec(b)?),
        Expr::Sub(a, b) => ring('-', rec(a)?, rec(b)?),
        Expr::Mul(a, b) => ring('*', rec(a)?, rec(b)?),
        Expr::Div(a, b, col) => div(rec(a)?, rec(b)?, *col)?,
        Expr::Pow(a, k) => pow(&rec(a)?, *k),
    })
}

pub fn parse_rational_function(field: BaseField, s: &str) -> Result<RationalFunction, AlgebraError> {
    let e = parse_expr(s)?;
    fold(
        &e,
        &|n| RationalFunction::constant(field.from_bigint(n)),
        &|name, col| {
            if name == "x" {
                Ok(RationalFunction::x(field))
            } else {
                Err(err(col, format!("unknown variable '{name}', only x is allowed")))
            }
        },
        &|op, a, b| match op {
            '+' => a + b,
            '-' => a - b,
            _ => a * b,
        },
        &|a, b, col| a.checked_div(&b).ok_or_else(|| err(col, "division by zero")),
        &|a, k| a.pow(k as u64),
    )
}

/// Polynomial expressions in any variables; division only by nonzero
/// constants.
pub fn parse_mpoly(field: BaseField, s: &str) -> Result<MPoly, AlgebraError> {
    let e = parse_expr(s)?;
    fold(
        &e,
        &|n| MPoly::constant(field.from_bigint(n)),
        &|name, _| Ok(MPoly::var(field, name)),
        &|op, a, b| match op {
            '+' => &a + &b,
            '-' => &a - &b,
            _ => &a * &b,
        },
        &|a, b, col| {
            let c = b
                .as_constant()
                .ok_or_else(|| err(col, "division by a nonconstant polynomial"))?;
            let inv = c.inv().ok_or_else(|| err(col, "division by zero"))?;
            Ok(a.scale(&inv))
        },
        &|a, k| a.pow(k),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_errors() {
        let q = BaseField::rationals();
        let a = parse_rational_function(q, "-x^2 + 2*x/4").unwrap();
        let b = parse_rational_function(q, "(x - 2*x^2)/2").unwrap();
        assert_eq!(a, b);
        assert!(matches!(
            parse_rational_function(q, "x + y"),
            Err(AlgebraError::Parse { column: 5, .. })
        ));
        assert!(matches!(
            parse_rational_function(q, "1/(x - x)"),
            Err(AlgebraError::Parse { column: 2, .. })
        ));
        assert!(parse_rational_function(q, "(x + 1").is_err());
        assert!(parse_rational_function(q, "x^-1").is_err());
        assert!(parse_rational_function(q, "2 x").is_err());
    }

    #[test]
    fn characteristic_applies_to_literals() {
        let f3 = BaseField::prime(3).unwrap();
        assert!(parse_rational_function(f3, "3*x").unwrap().is_zero());
        assert!(parse_rational_function(f3, "x/3").is_err());
    }
}
