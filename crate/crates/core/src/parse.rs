//! Parser for class expressions and K-theory expressions.
//!
//! Class expressions are evaluated in a fixed space:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' '-'? INT)?
//! atom  := INT | 'i' | '#' INT | basis-name | call | '(' expr ')'
//! ```
//!
//! Calls: `p1(e)`, `p2(e)` (pullbacks along the factors of a product),
//! `ch(k)`, `v(k)`, `td()`, `sqrttd()`, `c()`, `c1()`, `point()`, `delta()`,
//! `exp(e)`, `log(e)`, `sqrt(e)`, `inv(e)`, `tau(e)`, `vee(e)`, `weyl(e)`,
//! `col(e, n)` and `part(e, k)`.
//!
//! K-theory expressions:
//!
//! ```text
//! kexpr := kterm (('+' | '-') kterm)*
//! kterm := kpost ('*' kpost)*
//! kpost := katom ('[' '-'? INT ']')*
//! katom := 'O' ('(' expr ')')? | 'T' | 'dual' '(' kexpr ')'
//!        | 'box' '(' kexpr ',' kexpr ')' | '(' kexpr ')'
//! ```
//!
//! `a - b` stands for `a + b[1]`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::charclasses::{
    chern_character, dualize, first_chern_class, mukai_vector, series_exp, series_inverse, series_log, series_sqrt,
    sqrt_todd, tau, todd, KExpr,
};
use crate::coeffs::GaussRat;
use crate::cohomology::{diagonal_class, CohClass, Factor, SpaceRef};
use crate::error::Error;
use crate::pairing::{column_projection, weyl_operator};

/// A parse failure with the character offset where it occurred.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax { found: String, expected: Vec<String> },
    UnknownName(String),
    Math(Error),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: ", self.pos)?;
        match &self.kind {
            ParseErrorKind::Syntax { found, expected } => {
                write!(f, "found {found}, expected {}", expected.join(" or "))
            }
            ParseErrorKind::UnknownName(name) => write!(f, "unknown name `{name}`"),
            ParseErrorKind::Math(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = std::result::Result<T, ParseError>;

/// Parses a class expression on `space`.
pub fn parse_class(text: &str, space: &SpaceRef) -> PResult<CohClass> {
    let mut p = Parser::new(text);
    let v = p.expr(space)?;
    p.finish()?;
    Ok(v)
}

/// Parses a K-theory expression on `space`.
pub fn parse_kexpr(text: &str, space: &SpaceRef) -> PResult<KExpr> {
    let mut p = Parser::new(text);
    let e = p.kexpr(space)?;
    p.finish()?;
    Ok(e)
}

const MAX_EXPONENT: u64 = 1024;

const CLASS_START: &[&str] = &["number", "`i`", "basis name", "`#`", "function call", "`(`", "`-`"];

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser { chars: text.chars().collect(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn found(&mut self) -> String {
        match self.peek() {
            None => "end of input".to_string(),
            Some(c) => format!("`{c}`"),
        }
    }

    fn syntax<T>(&mut self, expected: &[&str]) -> PResult<T> {
        let found = self.found();
        Err(ParseError {
            pos: self.pos,
            kind: ParseErrorKind::Syntax { found, expected: expected.iter().map(|s| s.to_string()).collect() },
        })
    }

    fn math<T>(&self, pos: usize, e: Error) -> PResult<T> {
        Err(ParseError { pos, kind: ParseErrorKind::Math(e) })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.syntax(&[&format!("`{c}`")])
        }
    }

    fn finish(&mut self) -> PResult<()> {
        if self.peek().is_some() {
            return self.syntax(&["operator", "end of input"]);
        }
        Ok(())
    }

    fn integer(&mut self) -> PResult<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.syntax(&["integer"]);
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn signed_small(&mut self) -> PResult<i64> {
        let negative = self.eat('-');
        let start = self.pos;
        let n = self.integer()?;
        let n = n.to_i64().ok_or(ParseError {
            pos: start,
            kind: ParseErrorKind::Syntax { found: n.to_string(), expected: vec!["small integer".into()] },
        })?;
        Ok(if negative { -n } else { n })
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        if !self.chars.get(self.pos).is_some_and(|&c| is_ident_start(c)) {
            return None;
        }
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|&c| is_ident_char(c)) {
            self.pos += 1;
        }
        Some(self.chars[start..self.pos].iter().collect())
    }

    fn followed_by_paren(&self, at: usize) -> bool {
        self.chars[at..].iter().find(|c| !c.is_whitespace()) == Some(&'(')
    }

    /// Longest basis name spelled literally at the cursor, ending at a word boundary.
    fn literal_basis(&mut self, space: &SpaceRef) -> Option<usize> {
        self.skip_ws();
        let rest = &self.chars[self.pos..];
        let mut best: Option<(usize, usize)> = None;
        for (idx, e) in space.basis().iter().enumerate() {
            let name: Vec<char> = e.name.chars().collect();
            if name.is_empty() || rest.len() < name.len() || rest[..name.len()] != name[..] {
                continue;
            }
            let boundary = !(rest.get(name.len()).is_some_and(|&c| is_ident_char(c)) && is_ident_char(name[name.len() - 1]));
            if boundary && best.is_none_or(|(_, len)| name.len() > len) {
                best = Some((idx, name.len()));
            }
        }
        let (idx, len) = best?;
        // a bare identifier followed by `(` is a call, not a basis name
        if rest[..len].iter().all(|&c| is_ident_char(c)) && self.followed_by_paren(self.pos + len) {
            return None;
        }
        self.pos += len;
        Some(idx)
    }

    fn expr(&mut self, space: &SpaceRef) -> PResult<CohClass> {
        let mut acc = self.term(space)?;
        loop {
            let pos = self.pos;
            if self.eat('+') {
                let rhs = self.term(space)?;
                acc = acc.add(&rhs).or_else(|e| self.math(pos, e))?;
            } else if self.eat('-') {
                let rhs = self.term(space)?;
                acc = acc.sub(&rhs).or_else(|e| self.math(pos, e))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, space: &SpaceRef) -> PResult<CohClass> {
        let mut acc = self.unary(space)?;
        loop {
            self.skip_ws();
            let pos = self.pos;
            if self.eat('*') {
                let rhs = self.unary(space)?;
                acc = acc.mul(&rhs).or_else(|e| self.math(pos, e))?;
            } else if self.eat('/') {
                let rhs = self.unary(space)?;
                let inv = invert(&rhs).or_else(|e| self.math(pos, e))?;
                acc = acc.mul(&inv).or_else(|e| self.math(pos, e))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self, space: &SpaceRef) -> PResult<CohClass> {
        if self.eat('-') {
            Ok(self.unary(space)?.neg())
        } else if self.eat('+') {
            self.unary(space)
        } else {
            self.power(space)
        }
    }

    fn power(&mut self, space: &SpaceRef) -> PResult<CohClass> {
        let base = self.atom(space)?;
        self.skip_ws();
        let pos = self.pos;
        if !self.eat('^') {
            return Ok(base);
        }
        let n = self.signed_small()?;
        let base = if n < 0 { invert(&base).or_else(|e| self.math(pos, e))? } else { base };
        if n.unsigned_abs() > MAX_EXPONENT {
            return Err(ParseError {
                pos,
                kind: ParseErrorKind::Syntax { found: n.to_string(), expected: vec![format!("exponent of size at most {MAX_EXPONENT}")] },
            });
        }
        let exp = n.unsigned_abs() as u32;
        Ok(base.pow(exp))
    }

    fn atom(&mut self, space: &SpaceRef) -> PResult<CohClass> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr(space)?;
                self.expect(')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(CohClass::scalar(space, GaussRat::from_rational(n.into())))
            }
            Some('#') => {
                self.pos += 1;
                let start = self.pos;
                let n = self.integer()?;
                let idx = n.to_usize().filter(|&k| k < space.len());
                match idx {
                    Some(k) => Ok(CohClass::basis(space, k).expect("index checked")),
                    None => self.math(start, Error::BasisIndex { space: space.name().into(), index: n.to_usize().unwrap_or(usize::MAX) }),
                }
            }
            Some(_) => {
                if let Some(idx) = self.literal_basis(space) {
                    return Ok(CohClass::basis(space, idx).expect("index from basis"));
                }
                let start = self.pos;
                let Some(name) = self.ident() else {
                    return self.syntax(CLASS_START);
                };
                if self.peek() == Some('(') {
                    self.pos += 1;
                    let v = self.call(&name, start, space)?;
                    self.expect(')')?;
                    return Ok(v);
                }
                if name == "i" {
                    return Ok(CohClass::scalar(space, GaussRat::i()));
                }
                Err(ParseError { pos: start, kind: ParseErrorKind::UnknownName(name) })
            }
            None => self.syntax(CLASS_START),
        }
    }

    fn factor_space(&self, space: &SpaceRef, factor: Factor, pos: usize) -> PResult<SpaceRef> {
        match space.factors() {
            Some((x, y)) => Ok(if factor == Factor::First { x.clone() } else { y.clone() }),
            None => self.math(pos, Error::NotAProduct(space.name().into())),
        }
    }

    /// Evaluates a call whose opening parenthesis has been consumed.
    fn call(&mut self, name: &str, pos: usize, space: &SpaceRef) -> PResult<CohClass> {
        let lift = |r: crate::Result<CohClass>, p: &Self| r.or_else(|e| p.math(pos, e));
        match name {
            "p1" | "p2" => {
                let factor = if name == "p1" { Factor::First } else { Factor::Second };
                let inner = self.factor_space(space, factor, pos)?;
                let v = self.expr(&inner)?;
                lift(CohClass::pullback(space, factor, &v), self)
            }
            "ch" | "v" => {
                let e = self.kexpr(space)?;
                lift(if name == "ch" { chern_character(&e) } else { mukai_vector(&e) }, self)
            }
            "td" => Ok(todd(space)),
            "sqrttd" => Ok(sqrt_todd(space)),
            "c" => Ok(CohClass::tangent_chern(space)),
            "c1" => Ok(first_chern_class(space)),
            "point" => Ok(CohClass::point(space)),
            "delta" => {
                let (x, y) = match space.factors() {
                    Some(f) => f.clone(),
                    None => return self.math(pos, Error::NotAProduct(space.name().into())),
                };
                if !x.same_as(&y) {
                    return self.math(pos, Error::SpaceMismatch { expected: x.name().into(), found: y.name().into() });
                }
                lift(diagonal_class(&x), self)
            }
            "col" | "part" => {
                let v = self.expr(space)?;
                self.expect(',')?;
                let n = self.signed_small()?;
                if name == "col" {
                    Ok(column_projection(&v, n))
                } else {
                    Ok(u32::try_from(n).map_or_else(|_| CohClass::zero(space), |k| v.degree_part(k)))
                }
            }
            "exp" | "log" | "sqrt" | "inv" | "tau" | "vee" | "weyl" => {
                let v = self.expr(space)?;
                match name {
                    "exp" => lift(series_exp(&v), self),
                    "log" => lift(series_log(&v), self),
                    "sqrt" => lift(series_sqrt(&v), self),
                    "inv" => lift(invert(&v), self),
                    "tau" => Ok(tau(&v)),
                    "vee" => Ok(dualize(&v)),
                    _ => Ok(weyl_operator(&v)),
                }
            }
            _ => Err(ParseError { pos, kind: ParseErrorKind::UnknownName(name.to_string()) }),
        }
    }

    fn kexpr(&mut self, space: &SpaceRef) -> PResult<KExpr> {
        let mut acc = self.kterm(space)?;
        loop {
            let pos = self.pos;
            let negate = if self.eat('+') {
                false
            } else if self.eat('-') {
                true
            } else {
                return Ok(acc);
            };
            let mut rhs = self.kterm(space)?;
            if negate {
                rhs = KExpr::shift(rhs, 1);
            }
            acc = KExpr::sum(acc, rhs).or_else(|e| self.math(pos, e))?;
        }
    }

    fn kterm(&mut self, space: &SpaceRef) -> PResult<KExpr> {
        let mut acc = self.kpost(space)?;
        loop {
            let pos = self.pos;
            if !self.eat('*') {
                return Ok(acc);
            }
            let rhs = self.kpost(space)?;
            acc = KExpr::tensor(acc, rhs).or_else(|e| self.math(pos, e))?;
        }
    }

    fn kpost(&mut self, space: &SpaceRef) -> PResult<KExpr> {
        let mut e = self.katom(space)?;
        while self.eat('[') {
            let n = self.signed_small()?;
            self.expect(']')?;
            e = KExpr::shift(e, n);
        }
        Ok(e)
    }

    fn katom(&mut self, space: &SpaceRef) -> PResult<KExpr> {
        const EXPECTED: &[&str] = &["`O`", "`T`", "`dual(`", "`box(`", "`(`"];
        if self.eat('(') {
            let e = self.kexpr(space)?;
            self.expect(')')?;
            return Ok(e);
        }
        let start = self.pos;
        let Some(name) = self.ident() else {
            return self.syntax(EXPECTED);
        };
        match name.as_str() {
            "O" => {
                if !self.eat('(') {
                    return Ok(KExpr::structure(space));
                }
                let c1 = self.expr(space)?;
                self.expect(')')?;
                KExpr::line_bundle(c1).or_else(|e| self.math(start, e))
            }
            "T" => Ok(KExpr::tangent(space)),
            "dual" => {
                self.expect('(')?;
                let e = self.kexpr(space)?;
                self.expect(')')?;
                Ok(KExpr::dual(e))
            }
            "box" => {
                let x = self.factor_space(space, Factor::First, start)?;
                let y = self.factor_space(space, Factor::Second, start)?;
                self.expect('(')?;
                let left = self.kexpr(&x)?;
                self.expect(',')?;
                let right = self.kexpr(&y)?;
                self.expect(')')?;
                KExpr::external(space, left, right).or_else(|e| self.math(start, e))
            }
            _ => {
                self.pos = start;
                self.syntax(EXPECTED)
            }
        }
    }
}

/// `1/u` for a class whose constant term is a nonzero scalar.
fn invert(u: &CohClass) -> crate::Result<CohClass> {
    let c = u.constant_term();
    if c.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let inv_c = c.inv()?;
    Ok(series_inverse(&u.scale(&inv_c))?.scale(&inv_c))
}
