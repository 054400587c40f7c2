//! Polynomial text syntax: integer literals, variable names, `+ - * / ^` and
//! parentheses. Multiplication is always explicit; `/` only divides by a
//! nonzero constant.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{MPoly, Rational, VarOrder};
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn parse_err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let mut toks = Vec::new();
    let mut chars = src.char_indices().enumerate().peekable();
    while let Some((idx, (start, c))) = chars.next() {
        let col = idx + 1;
        if c.is_whitespace() {
            continue;
        }
        if c.is_ascii_digit() || c.is_ascii_alphabetic() || c == '_' {
            let mut end = start + c.len_utf8();
            let numeric = c.is_ascii_digit();
            while let Some(&(_, (i, d))) = chars.peek() {
                let more = if numeric {
                    d.is_ascii_digit()
                } else {
                    d.is_ascii_alphanumeric() || d == '_'
                };
                if !more {
                    break;
                }
                end = i + d.len_utf8();
                chars.next();
            }
            let text = &src[start..end];
            let tok = if numeric {
                Tok::Num(text.parse().unwrap())
            } else {
                Tok::Ident(text.to_string())
            };
            toks.push((tok, col));
        } else if "+-*/^()".contains(c) {
            toks.push((Tok::Op(c), col));
        } else {
            return Err(parse_err(col, format!("unexpected character `{c}`")));
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
    order: &'a VarOrder,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let col = self.col();
                let d = self.unary()?;
                match d.as_constant() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    Some(_) => return Err(parse_err(col, "division by zero")),
                    None => return Err(parse_err(col, "division by a non-constant polynomial")),
                }
            } else if matches!(
                self.peek(),
                Some(Tok::Num(_) | Tok::Ident(_)) | Some(Tok::Op('('))
            ) {
                return Err(parse_err(
                    self.col(),
                    "implicit multiplication is not allowed; use `*`",
                ));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            let col = self.col();
            match self.toks.get(self.pos) {
                Some((Tok::Num(n), _)) => {
                    let e = u32::try_from(n).map_err(|_| parse_err(col, "exponent too large"))?;
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                Some((Tok::Op('-'), _)) => {
                    Err(parse_err(col, "negative exponents are not allowed"))
                }
                _ => Err(parse_err(col, "expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly> {
        let col = self.col();
        match self.toks.get(self.pos).cloned() {
            Some((Tok::Num(n), _)) => {
                self.pos += 1;
                Ok(MPoly::constant(Rational::from_integer(n)))
            }
            Some((Tok::Ident(name), _)) => {
                self.pos += 1;
                match self.order.index_of(&name) {
                    Some(v) => Ok(MPoly::var(v)),
                    None => Err(parse_err(col, format!("unknown variable `{name}`"))),
                }
            }
            Some((Tok::Op('('), _)) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(parse_err(self.col(), "expected `)`"));
                }
                Ok(e)
            }
            Some((t, _)) => Err(parse_err(col, format!("unexpected token {}", describe(&t)))),
            None => Err(parse_err(col, "unexpected end of expression")),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("`{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Op(c) => format!("`{c}`"),
    }
}

/// Parses one polynomial over `order`. Errors report line 1 and a 1-based
/// column into `text`.
pub fn parse_poly(text: &str, order: &VarOrder) -> Result<MPoly> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end_col: text.chars().count() + 1,
        order,
    };
    if p.peek().is_none() {
        return Err(parse_err(1, "empty expression"));
    }
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        let (t, col) = &p.toks[p.pos];
        return Err(parse_err(*col, format!("unexpected token {}", describe(t))));
    }
    Ok(e)
}

/// Parses `p` or `p/q` with an optional leading sign.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (n, d) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(n) || !digits(d) {
        return domain(format!("`{text}` is not a rational number"));
    }
    let n: BigInt = n.parse().unwrap();
    let d: BigInt = d.parse().unwrap();
    if d.is_zero() {
        return domain(format!("`{text}` has a zero denominator"));
    }
    let r = Rational::new(n, d);
    Ok(if neg { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_frac;

    fn order() -> VarOrder {
        VarOrder::new(&["x", "y"]).unwrap()
    }

    #[test]
    fn parses_nested_expression() {
        let f = parse_poly("(x^5+x)*y^3 - x^3*y^2", &order()).unwrap();
        assert_eq!(f.degree(1), 3);
        assert_eq!(f.lc_in(1), parse_poly("x*(x^4+1)", &order()).unwrap());
        let g = parse_poly("  - ( x - 1 ) ^ 2 ", &order()).unwrap();
        assert_eq!(g, parse_poly("-x^2+2*x-1", &order()).unwrap());
    }

    #[test]
    fn rejects_bad_input_with_columns() {
        let err = parse_poly("2x", &order()).unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 1,
                column: 2,
                message: "implicit multiplication is not allowed; use `*`".into()
            }
        );
        assert!(matches!(
            parse_poly("x + z", &order()),
            Err(Error::Parse { column: 5, .. })
        ));
        assert!(matches!(
            parse_poly("x^-1", &order()),
            Err(Error::Parse { column: 3, .. })
        ));
        assert!(matches!(
            parse_poly("(x+1", &order()),
            Err(Error::Parse { column: 5, .. })
        ));
        assert!(matches!(
            parse_poly("x $ y", &order()),
            Err(Error::Parse { column: 3, .. })
        ));
        assert!(parse_poly("", &order()).is_err());
        assert!(parse_poly("x/y", &order()).is_err());
        assert!(parse_poly("x/0", &order()).is_err());
    }

    #[test]
    fn division_by_constants() {
        let f = parse_poly("x/2 - 1/3", &order()).unwrap();
        assert_eq!(f.eval_rational(&[rat_frac(1, 1)]).unwrap(), rat_frac(1, 6));
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat_frac(-1, 2));
        assert_eq!(parse_rational("+4").unwrap(), rat_frac(4, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a").is_err());
        assert!(parse_rational("1//2").is_err());
    }
}
