//! Element expressions such as `2*J1 + J3~` or `J2*(J3+J4)^2`.
//!
//! ```text
//! EXPR   := TERM (('+' | '-') TERM)*
//! TERM   := FACTOR ('*' FACTOR)*
//! FACTOR := INT | LABEL | '(' EXPR ')' | FACTOR '^' UINT | FACTOR '~'
//! ```
//!
//! `~` is the duality involution. Whitespace is ignored.

use num_bigint::BigInt;

use crate::element::Element;
use crate::error::{Result, RingError};
use crate::ring::RingSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Label(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Star(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Label(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((pos, Token::Int(digits.parse().expect("ascii digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Token::Label(chars[start..i].iter().map(|&(_, c)| c).collect())));
        } else if "+-*^~()".contains(c) {
            out.push((pos, Token::Sym(c)));
            i += 1;
        } else {
            return Err(RingError::Syntax { pos, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(RingError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
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

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let mut base = match self.peek().cloned() {
            Some(Token::Int(v)) => {
                self.at += 1;
                Expr::Int(v)
            }
            Some(Token::Label(s)) => {
                self.at += 1;
                Expr::Label(s)
            }
            Some(Token::Sym('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.error("expected ')'");
                }
                inner
            }
            Some(_) => return self.error("expected a number, a label or '('"),
            None => return self.error("unexpected end of input"),
        };
        loop {
            if self.eat('~') {
                base = Expr::Star(Box::new(base));
            } else if self.eat('^') {
                let Some(Token::Int(v)) = self.peek().cloned() else {
                    return self.error("expected a non-negative integer exponent");
                };
                let Ok(e) = u32::try_from(v) else {
                    return self.error("exponent too large");
                };
                self.at += 1;
                base = Expr::Pow(Box::new(base), e);
            } else {
                return Ok(base);
            }
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut parser = Parser { tokens: tokenize(src)?, at: 0, end: src.len() };
    let e = parser.expr()?;
    if parser.at < parser.tokens.len() {
        return parser.error("unexpected trailing input");
    }
    Ok(e)
}

impl Expr {
    /// Evaluates the expression in `ring`; integers denote multiples of the identity.
    pub fn eval(&self, ring: &RingSpec) -> Result<Element> {
        Ok(match self {
            Expr::Int(v) => ring.one::<BigInt>().scale(v),
            Expr::Label(s) => Element::basis(ring.lookup(s)?),
            Expr::Add(a, b) => a.eval(ring)?.add(&b.eval(ring)?),
            Expr::Sub(a, b) => a.eval(ring)?.sub(&b.eval(ring)?),
            Expr::Mul(a, b) => ring.multiply(&a.eval(ring)?, &b.eval(ring)?)?,
            Expr::Pow(a, e) => ring.pow(&a.eval(ring)?, *e)?,
            Expr::Star(a) => ring.star(&a.eval(ring)?)?,
        })
    }
}

/// Parses and evaluates `src` in `ring`.
pub fn parse_element(src: &str, ring: &RingSpec) -> Result<Element> {
    parse_expr(src)?.eval(ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::cyclic_p;

    fn z5() -> RingSpec {
        cyclic_p(5).unwrap()
    }

    #[test]
    fn evaluates_examples() {
        let r = z5();
        assert_eq!(parse_element("J2^2", &r).unwrap(), Element::from_ints([(0, 1), (2, 1)]));
        assert_eq!(parse_element("2*J1 + J3~", &r).unwrap(), Element::from_ints([(0, 2), (2, 1)]));
        assert_eq!(
            parse_element("J2*(J3+J4)", &r).unwrap(),
            Element::from_ints([(1, 1), (2, 1), (3, 1), (4, 1)])
        );
        assert_eq!(parse_element(" J2 ^ 0 - 1 ", &r).unwrap(), Element::zero());
        assert_eq!(parse_element("(J2+J3)~^2", &r).unwrap(), parse_element("(J2+J3)*(J3+J2)", &r).unwrap());
    }

    #[test]
    fn reports_errors() {
        let r = z5();
        assert_eq!(
            parse_element("J2 + * J3", &r),
            Err(RingError::Syntax { pos: 5, msg: "expected a number, a label or '('".into() })
        );
        assert!(matches!(parse_element("(J2", &r), Err(RingError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_element("J2 J3", &r), Err(RingError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_element("J2^x", &r), Err(RingError::Syntax { .. })));
        assert!(matches!(parse_element("J9", &r), Err(RingError::UnknownIndex(_))));
        assert!(matches!(parse_element("J2 $", &r), Err(RingError::Syntax { pos: 3, .. })));
    }
}
