//! Closed-form λ patterns from the tables, e.g. `3^m - 2` or
//! `2^(m-1) - 1 (m even); 2^(m-2) + 1 (m odd)`.
//!
//! Expressions use integers, `m`, `p`, `+ - *`, `^` and `q_m`-style terms
//! whose index is itself an expression (`q_m`, `q_{m-1}`, `q_(m+1)`). A
//! pattern is one expression, or several separated by `;`, each tagged
//! with `(m even)` or `(m odd)`. TeX leftovers (`$`, `\cdot`, braces) and
//! the Unicode minus and middle dot are accepted.

use std::fmt;

use mazurtate_core::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn of(m: u32) -> Parity {
        if m % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Expr {
    Num(i128),
    M,
    P,
    Q(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Num(i128),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            _ if c.is_whitespace() || c == '$' || c == '\\' => {
                chars.next();
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    s.push(d);
                    chars.next();
                }
                let v = s.parse().map_err(|_| Error::Pattern(format!("number {s} is too large")))?;
                out.push(Token::Num(v));
            }
            _ if c.is_ascii_alphabetic() => {
                let mut s = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphabetic()) {
                    s.push(d);
                    chars.next();
                }
                // `\cdot` is multiplication
                out.push(if s == "cdot" { Token::Sym('*') } else { Token::Ident(s) });
            }
            '+' | '-' | '*' | '^' | '(' | ')' | '{' | '}' | '_' | ';' => {
                out.push(Token::Sym(c));
                chars.next();
            }
            '−' | '–' => {
                out.push(Token::Sym('-'));
                chars.next();
            }
            '·' | '×' => {
                out.push(Token::Sym('*'));
                chars.next();
            }
            _ => return Err(Error::Pattern(format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_at(&self, k: usize) -> Option<&Token> {
        self.tokens.get(self.pos + k)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Pattern(format!("expected {c:?}, found {}", describe(self.peek()))))
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
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let exp = self.unary()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn group(&mut self, open: char, close: char) -> Result<Expr> {
        self.expect(open)?;
        let e = self.expr()?;
        self.expect(close)?;
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Token::Num(v)) => {
                self.pos += 1;
                Ok(Expr::Num(v))
            }
            Some(Token::Sym('(')) => self.group('(', ')'),
            Some(Token::Sym('{')) => self.group('{', '}'),
            Some(Token::Ident(s)) => {
                self.pos += 1;
                match s.as_str() {
                    "m" => Ok(Expr::M),
                    "p" => Ok(Expr::P),
                    "q" => {
                        self.expect('_')?;
                        let index = match self.peek() {
                            Some(Token::Sym('{')) => self.group('{', '}')?,
                            Some(Token::Sym('(')) => self.group('(', ')')?,
                            _ => self.atom()?,
                        };
                        Ok(Expr::Q(Box::new(index)))
                    }
                    _ => Err(Error::Pattern(format!("unknown token {s:?}"))),
                }
            }
            other => Err(Error::Pattern(format!("expected a term, found {}", describe(other.as_ref())))),
        }
    }

    /// `(m even)` or `(m odd)` after a branch.
    fn parity_tag(&mut self) -> Result<Option<Parity>> {
        let is_tag = self.peek() == Some(&Token::Sym('('))
            && self.peek_at(1) == Some(&Token::Ident("m".into()))
            && matches!(self.peek_at(2), Some(Token::Ident(s)) if s == "even" || s == "odd");
        if !is_tag {
            return Ok(None);
        }
        self.pos += 2;
        let parity = match self.next() {
            Some(Token::Ident(s)) if s == "even" => Parity::Even,
            _ => Parity::Odd,
        };
        self.expect(')')?;
        Ok(Some(parity))
    }
}

fn describe(t: Option<&Token>) -> String {
    match t {
        None => "end of input".into(),
        Some(Token::Num(v)) => v.to_string(),
        Some(Token::Ident(s)) => format!("{s:?}"),
        Some(Token::Sym(c)) => format!("{c:?}"),
    }
}

/// `q_k = p^{k-1} - p^{k-2} + ...`, ending in `p - 1` for even `k` and in
/// `p^2 - p` for odd `k`, so `q_1 = 0`.
pub fn q_term(p: i128, k: i128) -> Result<i128> {
    if k < 1 {
        return Err(Error::Pattern(format!("q_{k} is undefined, the index must be at least 1")));
    }
    let overflow = || Error::Pattern(format!("q_{k} overflows at p = {p}"));
    let lowest = if k % 2 == 0 { 0 } else { 1 };
    let mut acc: i128 = 0;
    for i in lowest..k {
        let term = p.checked_pow(i as u32).ok_or_else(overflow)?;
        acc = if (k - 1 - i) % 2 == 0 { acc.checked_add(term) } else { acc.checked_sub(term) }.ok_or_else(overflow)?;
    }
    Ok(acc)
}

fn eval(e: &Expr, p: i128, m: i128) -> Result<i128> {
    let overflow = || Error::Pattern("value overflows".into());
    Ok(match e {
        Expr::Num(v) => *v,
        Expr::M => m,
        Expr::P => p,
        Expr::Q(k) => q_term(p, eval(k, p, m)?)?,
        Expr::Neg(a) => eval(a, p, m)?.checked_neg().ok_or_else(overflow)?,
        Expr::Add(a, b) => eval(a, p, m)?.checked_add(eval(b, p, m)?).ok_or_else(overflow)?,
        Expr::Sub(a, b) => eval(a, p, m)?.checked_sub(eval(b, p, m)?).ok_or_else(overflow)?,
        Expr::Mul(a, b) => eval(a, p, m)?.checked_mul(eval(b, p, m)?).ok_or_else(overflow)?,
        Expr::Pow(a, b) => {
            let exp = eval(b, p, m)?;
            let exp = u32::try_from(exp).map_err(|_| Error::Pattern(format!("negative exponent {exp}")))?;
            eval(a, p, m)?.checked_pow(exp).ok_or_else(overflow)?
        }
    })
}

/// A parsed pattern: one unconditional expression or parity branches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    branches: Vec<(Option<Parity>, Expr)>,
}

impl Pattern {
    pub fn parse(text: &str) -> Result<Pattern> {
        let mut parser = Parser {
            tokens: tokenize(text)?,
            pos: 0,
        };
        let mut branches = Vec::new();
        loop {
            let e = parser.expr()?;
            let parity = parser.parity_tag()?;
            branches.push((parity, e));
            if parser.peek().is_none() {
                break;
            }
            parser.expect(';')?;
        }
        let tagged = branches.iter().filter(|(t, _)| t.is_some()).count();
        if branches.len() > 1 && tagged != branches.len() {
            return Err(Error::Pattern("every branch of a split pattern needs (m even) or (m odd)".into()));
        }
        Ok(Pattern { branches })
    }

    pub fn evaluate(&self, p: u64, m: u32) -> Result<i128> {
        let parity = Parity::of(m);
        let (_, expr) = self
            .branches
            .iter()
            .find(|(t, _)| t.map_or(true, |t| t == parity))
            .ok_or_else(|| Error::Pattern(format!("no branch for m {parity}")))?;
        eval(expr, p as i128, m as i128)
    }
}

/// Evaluates `pattern` at prime `p` and level `m`.
pub fn predict_lambda(pattern: &str, p: u64, m: u32) -> Result<i128> {
    Pattern::parse(pattern)?.evaluate(p, m)
}
