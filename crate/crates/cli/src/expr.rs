//! Expression syntax shared by all algebra contexts.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := "-" term | factor ("*" factor)*
//! factor := atom ("^" INT)?
//! atom   := RATIONAL | "p_" NAME | NAME | NAME "~" | "bar(" NAME ")"
//!         | "inv(" expr ")" | "(" expr ")"
//! ```

use crate::error::{CliError, CliResult};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use quiveralg::quiver::Quiver;
use quiveralg::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// A nonnegative rational literal.
    Scalar(Scalar),
    Vertex(String),
    Arrow(String),
    Bar(String),
    Sum(Box<Expr>, Box<Expr>),
    Diff(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Prod(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Inv(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(Scalar),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    Tilde,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn syntax(pos: usize, msg: impl Into<String>) -> CliError {
    CliError::Syntax { pos, msg: msg.into() }
}

fn lex(text: &str) -> CliResult<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let simple = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            b'~' => Some(Tok::Tilde),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            b',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((start, t));
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let end = digits(i);
            // A digit run glued to letters is a name such as a numeric vertex
            // label; only pure digit runs are numbers.
            if end < bytes.len() && (bytes[end].is_ascii_alphabetic() || bytes[end] == b'_') {
                return Err(syntax(end, "names must start with a letter"));
            }
            let num: BigInt = text[i..end].parse().expect("digit run");
            i = end;
            let mut value = Scalar::from_integer(num);
            if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                let dend = digits(i + 1);
                let den: BigInt = text[i + 1..dend].parse().expect("digit run");
                if den.is_zero() {
                    return Err(syntax(i + 1, "zero denominator"));
                }
                value /= Scalar::from_integer(den);
                i = dend;
            }
            out.push((start, Tok::Num(value)));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let mut j = i;
            while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                j += 1;
            }
            out.push((start, Tok::Name(text[i..j].to_string())));
            i = j;
        } else {
            return Err(syntax(i, format!("unexpected character `{}`", text[i..].chars().next().unwrap_or('?'))));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> CliResult<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(syntax(self.offset(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> CliResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Expr::Sum(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                lhs = Expr::Diff(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> CliResult<Expr> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.term()?)));
        }
        let mut lhs = self.factor()?;
        while self.eat(&Tok::Star) {
            lhs = Expr::Prod(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> CliResult<Expr> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let at = self.offset();
            match self.toks.get(self.pos) {
                Some((_, Tok::Num(n))) if n.is_integer() && !n.is_negative() => {
                    let k: u32 = n
                        .to_integer()
                        .try_into()
                        .map_err(|_| syntax(at, "exponent too large"))?;
                    self.pos += 1;
                    Ok(Expr::Pow(Box::new(base), k))
                }
                _ => Err(syntax(at, "expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> CliResult<Expr> {
        let at = self.offset();
        let Some((_, tok)) = self.toks.get(self.pos).cloned() else {
            return Err(syntax(at, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(Expr::Scalar(n)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Name(name) if (name == "inv" || name == "bar") && self.peek() == Some(&Tok::LParen) => {
                self.pos += 1;
                if name == "inv" {
                    let e = self.expr()?;
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(Expr::Inv(Box::new(e)))
                } else {
                    let at = self.offset();
                    let Some((_, Tok::Name(arrow))) = self.toks.get(self.pos).cloned() else {
                        return Err(syntax(at, "expected an arrow name"));
                    };
                    self.pos += 1;
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(Expr::Bar(arrow))
                }
            }
            Tok::Name(name) => {
                if let Some(v) = name.strip_prefix("p_") {
                    if v.is_empty() {
                        return Err(syntax(at, "missing vertex name after `p_`"));
                    }
                    return Ok(Expr::Vertex(v.to_string()));
                }
                if self.eat(&Tok::Tilde) {
                    Ok(Expr::Bar(name))
                } else {
                    Ok(Expr::Arrow(name))
                }
            }
            _ => Err(syntax(at, "expected a term")),
        }
    }
}

fn tokens(text: &str) -> CliResult<Parser> {
    Ok(Parser {
        toks: lex(text)?,
        pos: 0,
        end: text.len(),
    })
}

/// Parses without resolving names.
pub fn parse_syntax(text: &str) -> CliResult<Expr> {
    let mut p = tokens(text)?;
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(syntax(p.offset(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Parses and checks every name against `q`.
pub fn parse(text: &str, q: &Quiver) -> CliResult<Expr> {
    let e = parse_syntax(text)?;
    resolve(&e, q)?;
    Ok(e)
}

/// Parses `[[a, b], [c, d]]`.
pub fn parse_matrix(text: &str, q: &Quiver) -> CliResult<Vec<Vec<Expr>>> {
    let mut p = tokens(text)?;
    p.expect(Tok::LBracket, "`[`")?;
    let mut rows = Vec::new();
    loop {
        p.expect(Tok::LBracket, "`[`")?;
        let mut row = vec![p.expr()?];
        while p.eat(&Tok::Comma) {
            row.push(p.expr()?);
        }
        p.expect(Tok::RBracket, "`]`")?;
        rows.push(row);
        if !p.eat(&Tok::Comma) {
            break;
        }
    }
    p.expect(Tok::RBracket, "`]`")?;
    if p.pos != p.toks.len() {
        return Err(syntax(p.offset(), "unexpected trailing input"));
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(CliError::Usage("matrix rows have different lengths".into()));
    }
    for e in rows.iter().flatten() {
        resolve(e, q)?;
    }
    Ok(rows)
}

fn resolve(e: &Expr, q: &Quiver) -> CliResult<()> {
    match e {
        Expr::Scalar(_) => Ok(()),
        Expr::Vertex(v) => q
            .vertex(v)
            .map(|_| ())
            .map_err(|_| CliError::UnknownSymbol(format!("p_{v}"))),
        Expr::Arrow(a) | Expr::Bar(a) => q.arrow(a).map(|_| ()).map_err(|_| CliError::UnknownSymbol(a.clone())),
        Expr::Sum(x, y) | Expr::Diff(x, y) | Expr::Prod(x, y) => {
            resolve(x, q)?;
            resolve(y, q)
        }
        Expr::Neg(x) | Expr::Pow(x, _) | Expr::Inv(x) => resolve(x, q),
    }
}

/// Precedence of the outermost operator: 1 sums, 2 products and negation,
/// 3 powers, 4 atoms.
fn level(e: &Expr) -> u8 {
    match e {
        Expr::Sum(..) | Expr::Diff(..) => 1,
        Expr::Neg(_) | Expr::Prod(..) => 2,
        Expr::Pow(..) => 3,
        Expr::Scalar(s) if !s.is_integer() => 3,
        _ => 4,
    }
}

fn wrap(e: &Expr, min: u8) -> String {
    let s = print(e);
    if level(e) < min {
        format!("({s})")
    } else {
        s
    }
}

/// Prints an expression so that [`parse_syntax`] gives it back unchanged.
pub fn print(e: &Expr) -> String {
    match e {
        Expr::Scalar(s) => quiveralg::scalar::format(s),
        Expr::Vertex(v) => format!("p_{v}"),
        Expr::Arrow(a) => a.clone(),
        Expr::Bar(a) => format!("{a}~"),
        Expr::Sum(x, y) => format!("{} + {}", print(x), wrap(y, 2)),
        Expr::Diff(x, y) => format!("{} - {}", print(x), wrap(y, 2)),
        Expr::Neg(x) => format!("-{}", wrap(x, 2)),
        Expr::Prod(x, y) => {
            let left = if matches!(**x, Expr::Neg(_)) { format!("({})", print(x)) } else { wrap(x, 2) };
            format!("{}*{}", left, wrap(y, 3))
        }
        Expr::Pow(x, k) => format!("{}^{k}", wrap(x, 4)),
        Expr::Inv(x) => format!("inv({})", print(x)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use quiveralg::quiver::a2;
    use quiveralg::scalar::{frac, int};

    fn b(e: Expr) -> Box<Expr> {
        Box::new(e)
    }

    #[test]
    fn examples() {
        let e = parse_syntax("p_1 + 2*e").unwrap();
        assert_eq!(
            e,
            Expr::Sum(
                b(Expr::Vertex("1".into())),
                b(Expr::Prod(b(Expr::Scalar(int(2))), b(Expr::Arrow("e".into()))))
            )
        );
        let e = parse_syntax("inv(1 - e) * e~").unwrap();
        assert_eq!(
            e,
            Expr::Prod(
                b(Expr::Inv(b(Expr::Diff(b(Expr::Scalar(int(1))), b(Expr::Arrow("e".into())))))),
                b(Expr::Bar("e".into()))
            )
        );
        assert_eq!(parse_syntax("bar(e)").unwrap(), Expr::Bar("e".into()));
        assert_eq!(parse_syntax("3/6").unwrap(), Expr::Scalar(frac(1, 2)));
        assert!(matches!(parse("p_x", &a2()), Err(CliError::UnknownSymbol(_))));
        assert!(matches!(parse("f", &a2()), Err(CliError::UnknownSymbol(_))));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_syntax("e +"), Err(CliError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_syntax("e ) "), Err(CliError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_syntax("e^x"), Err(CliError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_syntax("e # f"), Err(CliError::Syntax { pos: 2, .. })));
    }

    #[test]
    fn printing_is_reparsable() {
        for text in ["-(a + b)*c", "a - (b - c)", "(a*b)^2", "1/2*a", "(1/2)^3", "-a^2", "(-a)*b", "p_1*e*p_2"] {
            let e = parse_syntax(text).unwrap();
            assert_eq!(parse_syntax(&print(&e)).unwrap(), e, "{text} -> {}", print(&e));
        }
        assert_eq!(print(&parse_syntax("a-(b-c)").unwrap()), "a - (b - c)");
    }
}
