//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr  := term (("+"|"-") term)*
//! term  := unary (("*"|"/") unary)*
//! unary := "-" unary | pow
//! pow   := atom ("^" unary)?
//! atom  := NUMBER | IDENT | FUNC "(" expr ")" | "(" expr ")"
//! ```
//!
//! `#` starts a comment that runs to the end of the line.

use num_rational::Rational64;
use thiserror::Error;

use super::expr::{Expr, Func, Node, Num, Var};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::UnknownIdentifier { offset, .. } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Num),
    Ident(String),
    Op(u8),
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_trivia(&mut self) {
        while self.pos < self.src.len() {
            match self.src[self.pos] {
                b' ' | b'\t' | b'\r' | b'\n' => self.pos += 1,
                b'#' => {
                    while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    /// Returns the next token and its starting offset.
    fn next(&mut self) -> Result<(Tok, usize), ParseError> {
        self.skip_trivia();
        let start = self.pos;
        let Some(&c) = self.src.get(self.pos) else {
            return Ok((Tok::End, start));
        };
        if c.is_ascii_digit() || c == b'.' {
            return self.number(start).map(|n| (Tok::Num(n), start));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self.src.get(self.pos).is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_') {
                self.pos += 1;
            }
            let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            return Ok((Tok::Ident(s.to_string()), start));
        }
        if b"+-*/^()".contains(&c) {
            self.pos += 1;
            return Ok((Tok::Op(c), start));
        }
        Err(ParseError::Syntax { offset: start, message: format!("unexpected character `{}`", c as char) })
    }

    fn number(&mut self, start: usize) -> Result<Num, ParseError> {
        let digits = |lx: &mut Self| {
            let s = lx.pos;
            while lx.src.get(lx.pos).is_some_and(u8::is_ascii_digit) {
                lx.pos += 1;
            }
            lx.pos - s
        };
        let int_len = digits(self);
        let mut frac_len = 0;
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            frac_len = digits(self);
        }
        if int_len + frac_len == 0 {
            return Err(ParseError::Syntax { offset: start, message: "malformed number".into() });
        }
        let mantissa_end = self.pos;
        let mut exp: i64 = 0;
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            let neg = match self.src.get(self.pos) {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                _ => false,
            };
            let es = self.pos;
            if digits(self) == 0 {
                // not an exponent after all, e.g. `2e` is a syntax error later
                self.pos = save;
            } else {
                let e: i64 = std::str::from_utf8(&self.src[es..self.pos])
                    .expect("ascii")
                    .parse()
                    .map_err(|_| ParseError::Syntax { offset: es, message: "exponent too large".into() })?;
                exp = if neg { -e } else { e };
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let mantissa: String =
            std::str::from_utf8(&self.src[start..mantissa_end]).expect("ascii").chars().filter(|c| *c != '.').collect();
        let scale = exp - frac_len as i64;
        let exact = mantissa.parse::<i64>().ok().and_then(|m| {
            let p = 10i64.checked_pow(u32::try_from(scale.unsigned_abs()).ok()?)?;
            if scale >= 0 {
                Some(Rational64::from_integer(m.checked_mul(p)?))
            } else {
                Some(Rational64::new(m, p))
            }
        });
        Ok(match exact {
            Some(r) => Num::Rat(r),
            None => Num::Real(
                text.parse::<f64>()
                    .map_err(|_| ParseError::Syntax { offset: start, message: "malformed number".into() })?,
            ),
        })
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    at: usize,
    params: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<(), ParseError> {
        let (t, at) = self.lexer.next()?;
        self.tok = t;
        self.at = at;
        Ok(())
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { offset: self.at, message: message.into() })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let first = self.term()?;
        let mut terms = vec![first];
        while let Tok::Op(op @ (b'+' | b'-')) = self.tok {
            self.bump()?;
            let rhs = self.term()?;
            terms.push(if op == b'-' { Expr::raw(Node::Neg(rhs)) } else { rhs });
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::raw(Node::Add(terms)) })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut left = self.unary()?;
        // factors of a product chain built in this loop
        let mut chain: Option<Vec<Expr>> = None;
        while let Tok::Op(op @ (b'*' | b'/')) = self.tok {
            self.bump()?;
            let rhs = self.unary()?;
            if op == b'*' {
                let mut fs = chain.take().unwrap_or_else(|| vec![left.clone()]);
                fs.push(rhs);
                left = Expr::raw(Node::Mul(fs.clone()));
                chain = Some(fs);
            } else {
                left = Expr::raw(Node::Div(left, rhs));
                chain = None;
            }
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.tok == Tok::Op(b'-') {
            self.bump()?;
            return Ok(Expr::raw(Node::Neg(self.unary()?)));
        }
        self.pow()
    }

    fn pow(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.tok == Tok::Op(b'^') {
            self.bump()?;
            let exponent = self.unary()?;
            return Ok(Expr::raw(Node::Pow(base, exponent)));
        }
        Ok(base)
    }

    fn expect_close(&mut self) -> Result<(), ParseError> {
        if self.tok != Tok::Op(b')') {
            return self.err("expected `)`");
        }
        self.bump()
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match std::mem::replace(&mut self.tok, Tok::End) {
            Tok::Num(n) => {
                self.bump()?;
                Ok(Expr::num(n))
            }
            Tok::Op(b'(') => {
                self.bump()?;
                let e = self.expr()?;
                self.expect_close()?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let at = self.at;
                self.bump()?;
                if let Some(f) = Func::from_name(&name) {
                    if self.tok != Tok::Op(b'(') {
                        return self.err(format!("expected `(` after `{name}`"));
                    }
                    self.bump()?;
                    let arg = self.expr()?;
                    self.expect_close()?;
                    return Ok(Expr::raw(Node::Func(f, arg)));
                }
                if let Some(v) = Var::from_name(&name) {
                    return Ok(Expr::var(v));
                }
                if self.params.contains(&name.as_str()) {
                    return Ok(Expr::param(&name));
                }
                Err(ParseError::UnknownIdentifier { name, offset: at })
            }
            Tok::End => self.err("unexpected end of input"),
            Tok::Op(c) => {
                self.tok = Tok::Op(c);
                self.err(format!("unexpected `{}`", c as char))
            }
        }
    }
}

/// Parses `text` with no declared parameters.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    parse_with_params(text, &[])
}

/// Parses `text`; identifiers other than `t, x, y, z` and function names must
/// appear in `params`. The returned tree is raw (unsimplified).
pub fn parse_with_params(text: &str, params: &[&str]) -> Result<Expr, ParseError> {
    let mut p = Parser { lexer: Lexer { src: text.as_bytes(), pos: 0 }, tok: Tok::End, at: 0, params };
    p.bump()?;
    let e = p.expr()?;
    if p.tok != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_shape() {
        let e = parse("2*t + x^2").unwrap();
        let expected = Expr::raw(Node::Add(vec![
            Expr::raw(Node::Mul(vec![Expr::int(2), Expr::t()])),
            Expr::raw(Node::Pow(Expr::x(), Expr::int(2))),
        ]));
        assert_eq!(e, expected);
    }

    #[test]
    fn power_is_right_associative_and_binds_over_minus() {
        let e = parse("-x^2^3").unwrap();
        let expected =
            Expr::raw(Node::Neg(Expr::raw(Node::Pow(Expr::x(), Expr::raw(Node::Pow(Expr::int(2), Expr::int(3)))))));
        assert_eq!(e, expected);
    }

    #[test]
    fn unbalanced_paren_reports_offset() {
        let err = parse("exp(2*t").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { offset: 7, .. }), "{err:?}");
    }

    #[test]
    fn unknown_identifier() {
        let err = parse("t + q").unwrap_err();
        assert_eq!(err, ParseError::UnknownIdentifier { name: "q".into(), offset: 4 });
        assert!(parse_with_params("t + q", &["q"]).is_ok());
    }

    #[test]
    fn comments_and_decimals() {
        let e = parse("0.25 * t # trailing comment").unwrap();
        assert_eq!(e.simplify(), (Expr::rat(1, 4) * Expr::t()));
        assert_eq!(parse("1e-3").unwrap().as_const(), Some(Num::Rat(Rational64::new(1, 1000))));
    }

    #[test]
    fn function_needs_parenthesis() {
        assert!(parse("exp t").is_err());
        assert!(parse("t t").is_err());
    }
}
