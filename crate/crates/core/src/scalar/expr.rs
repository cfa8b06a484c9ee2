//! The field-element string grammar.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' exponent)?
//! atom  := number | 's' | 'q' | 'th' | 't' '[' int ',' int ']' | '(' expr ')'
//! ```
//!
//! `s` is σ, `q` is an alias for `s^4`, `th` is θ. Generators `t[i,j]`
//! (1-based) are only meaningful to callers that build linear combinations.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{Field, FieldElement};
use super::ScalarError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at line {}, column {}",
            self.message, self.line, self.column
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigRational),
    Sigma,
    Q,
    Theta,
    /// `t[i,j]` as written (1-based).
    Gen(usize, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Sym(char),
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    end: usize,
}

fn lex(src: &str) -> Result<Lexer, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            toks.push((Tok::Num(parse_decimal(&text, col)?), col));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()[],".contains(c) {
            toks.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(err(format!("unexpected character '{c}'"), col));
        }
    }
    Ok(Lexer {
        toks,
        end: chars.len() + 1,
    })
}

fn err(message: String, column: usize) -> ParseError {
    ParseError {
        message,
        line: 1,
        column,
    }
}

fn parse_decimal(text: &str, col: usize) -> Result<BigRational, ParseError> {
    let bad = || err(format!("malformed number '{text}'"), col);
    let mut parts = text.split('.');
    let int_part = parts.next().unwrap_or("");
    let frac_part = parts.next();
    if parts.next().is_some() || (int_part.is_empty() && frac_part.is_none_or(str::is_empty)) {
        return Err(bad());
    }
    let mut digits = int_part.to_string();
    let mut scale = 0u32;
    if let Some(frac) = frac_part {
        digits.push_str(frac);
        scale = frac.len() as u32;
    }
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    Ok(BigRational::new(n, BigInt::from(10).pow(scale)))
}

struct Parser {
    lx: Lexer,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.lx.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.lx
            .toks
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or(self.lx.end)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(format!("expected '{c}'"), self.col()))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
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
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let neg = self.eat('-');
        let col = self.col();
        let e = match self.peek() {
            Some(Tok::Num(n)) if n.is_integer() => {
                let v = n.to_integer();
                self.pos += 1;
                i32::try_from(v).map_err(|_| err("exponent too large".into(), col))?
            }
            _ => return Err(err("expected integer exponent".into(), col)),
        };
        if paren {
            self.expect(')')?;
        }
        Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
    }

    fn index(&mut self) -> Result<usize, ParseError> {
        let col = self.col();
        match self.peek() {
            Some(Tok::Num(n)) if n.is_integer() && n >= &BigRational::one() => {
                let v = usize::try_from(n.to_integer())
                    .map_err(|_| err("index too large".into(), col))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(err("expected a positive integer index".into(), col)),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let col = self.col();
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| err("unexpected end of input".into(), col))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(Expr::Num(n)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(id) => match id.as_str() {
                "s" => Ok(Expr::Sigma),
                "q" => Ok(Expr::Q),
                "th" => Ok(Expr::Theta),
                "t" => {
                    self.expect('[')?;
                    let i = self.index()?;
                    self.expect(',')?;
                    let j = self.index()?;
                    self.expect(']')?;
                    Ok(Expr::Gen(i, j))
                }
                other => Err(err(format!("unknown symbol '{other}'"), col)),
            },
            Tok::Sym(c) => Err(err(format!("unexpected '{c}'"), col)),
        }
    }
}

/// Parses a string in the grammar above.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        lx: lex(src)?,
        pos: 0,
    };
    let e = p.expr()?;
    if p.pos != p.lx.toks.len() {
        return Err(err("trailing input".into(), p.col()));
    }
    Ok(e)
}

/// Errors from evaluating an expression as a scalar.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ExprError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("generator t[{0},{1}] is not a scalar")]
    NotScalar(usize, usize),
}

impl Expr {
    pub fn eval_scalar(&self, field: &Field) -> Result<FieldElement, ExprError> {
        Ok(match self {
            Expr::Num(n) => field.from_rational(n.clone()),
            Expr::Sigma => field.sigma()?,
            Expr::Q => field.q()?,
            Expr::Theta => field.theta()?,
            Expr::Gen(i, j) => return Err(ExprError::NotScalar(*i, *j)),
            Expr::Neg(a) => a.eval_scalar(field)?.neg(),
            Expr::Add(a, b) => a.eval_scalar(field)?.try_add(&b.eval_scalar(field)?)?,
            Expr::Sub(a, b) => a.eval_scalar(field)?.try_sub(&b.eval_scalar(field)?)?,
            Expr::Mul(a, b) => a.eval_scalar(field)?.try_mul(&b.eval_scalar(field)?)?,
            Expr::Div(a, b) => a.eval_scalar(field)?.try_div(&b.eval_scalar(field)?)?,
            Expr::Pow(a, e) => a.eval_scalar(field)?.pow(*e)?,
        })
    }

    pub fn is_zero_literal(&self) -> bool {
        matches!(self, Expr::Num(n) if n.is_zero())
    }
}

impl Field {
    /// Parses and evaluates a field-element string in this field.
    pub fn parse(&self, src: &str) -> Result<FieldElement, ExprError> {
        parse_expr(src)?.eval_scalar(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_is_sigma_to_the_fourth() {
        let f = Field::RatFunc;
        assert_eq!(f.parse("q").unwrap(), f.parse("s^4").unwrap());
        assert_eq!(f.parse("q").unwrap().to_string(), "s^4");
    }

    #[test]
    fn precedence_and_negative_powers() {
        let f = Field::RatFunc;
        assert_eq!(f.parse("-s^2").unwrap(), -f.sigma_pow(2).unwrap());
        assert_eq!(f.parse("s^-3").unwrap(), f.sigma_pow(-3).unwrap());
        assert_eq!(f.parse("s^(-3)").unwrap(), f.sigma_pow(-3).unwrap());
        assert_eq!(f.parse("1 + 2*3 - 4/2").unwrap(), f.from_int(5));
        assert_eq!(f.parse("0.25*4").unwrap(), f.one());
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse_expr("1 + * s").unwrap_err();
        assert_eq!(e.column, 5);
        let e = parse_expr("s + x").unwrap_err();
        assert_eq!(e.column, 5);
        assert!(parse_expr("(s + 1").is_err());
        assert!(matches!(
            Field::RatFunc.parse("1/(s - s)"),
            Err(ExprError::Scalar(ScalarError::DivisionByZero))
        ));
        assert!(matches!(
            Field::RatFunc.parse("th"),
            Err(ExprError::Scalar(ScalarError::NoTheta))
        ));
    }

    #[test]
    fn generators_parse() {
        assert_eq!(
            parse_expr("t[1,2]*t[2,1]").unwrap(),
            Expr::Mul(Box::new(Expr::Gen(1, 2)), Box::new(Expr::Gen(2, 1)))
        );
        assert!(parse_expr("t[0,1]").is_err());
    }
}
