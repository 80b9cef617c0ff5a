//! Polynomial expressions: `X1*(X2 - X3)^2 + 1/2*l1*X3`.
//!
//! Grammar, loosest first:
//!
//! ```text
//! sum     := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := ('+' | '-') unary | power
//! power   := atom ('^' integer)?
//! atom    := rational | identifier | '(' sum ')'
//! ```
//!
//! A rational literal is `digits` or `digits/digits`; there is no other
//! division. Identifiers are resolved by the caller.

use ccnet_core::rational::parse as parse_q;
use ccnet_core::Poly;

/// A parse failure at a 1-based character column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprError {
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for ExprError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
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
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            out.push((col, Tok::Num(chars[start..i].iter().collect())));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '.') {
                i += 1;
            }
            out.push((col, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*^()".contains(c) {
            out.push((col, Tok::Op(c)));
            i += 1;
        } else {
            return Err(ExprError { column: col, message: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    nvars: usize,
    resolve: &'a dyn Fn(&str) -> Option<usize>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(c, _)| *c)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError { column: self.column(), message: message.into() })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Poly, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ExprError> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, ExprError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, ExprError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.peek().cloned() {
            Some(Tok::Num(s)) if !s.contains('/') => {
                let e: u32 = match s.parse() {
                    Ok(e) => e,
                    Err(_) => return self.err(format!("exponent {s} is too large")),
                };
                self.pos += 1;
                Ok(base.pow(e))
            }
            _ => self.err("expected a non-negative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Poly, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                let Some(q) = parse_q(&s) else {
                    return self.err(format!("invalid rational literal {s}"));
                };
                self.pos += 1;
                Ok(Poly::constant(self.nvars, q))
            }
            Some(Tok::Ident(name)) => {
                let Some(v) = (self.resolve)(&name) else {
                    return self.err(format!("unknown variable {name}"));
                };
                self.pos += 1;
                Ok(Poly::var(self.nvars, v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of expression"),
        }
    }
}

/// Parses `src` into a polynomial in `nvars` variables.
pub fn parse_poly(src: &str, nvars: usize, resolve: &dyn Fn(&str) -> Option<usize>) -> Result<Poly, ExprError> {
    let toks = lex(src)?;
    let end = src.chars().count() + 1;
    let mut p = Parser { toks, pos: 0, end, nvars, resolve };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let poly = p.sum()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(poly)
}

/// Resolver for `X{slot}` / `X{slot}_{comp}` and `l{t}` in the layout of an
/// arity `n`, dimension `m` cell function with `p` parameters.
pub fn homogeneous_resolver(n: usize, m: usize, p: usize) -> impl Fn(&str) -> Option<usize> {
    move |name: &str| {
        if let Some(t) = name.strip_prefix('l') {
            let t: usize = t.parse().ok()?;
            return (1..=p).contains(&t).then(|| n * m + t - 1);
        }
        let rest = name.strip_prefix('X')?;
        let (slot, comp) = match rest.split_once('_') {
            Some((s, c)) if m > 1 => (s.parse::<usize>().ok()?, c.parse::<usize>().ok()?),
            None if m == 1 => (rest.parse::<usize>().ok()?, 1),
            _ => return None,
        };
        ((1..=n).contains(&slot) && (1..=m).contains(&comp)).then(|| (slot - 1) * m + comp - 1)
    }
}
