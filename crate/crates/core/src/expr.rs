//! Parser for commutative polynomial expressions over named generators and
//! central parameters.
//!
//! Grammar:
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*'? factor)*
//! factor := atom ('^' uint)?
//! atom   := rational | name | '(' expr ')'
//! ```
//! Juxtaposition multiplies, so `2xp^2` parses as `2 * x * p^2`.

use crate::coeff::CoeffPoly;
use crate::error::{AlgebraError, Result};
use crate::poisson::CPoly;
use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(Scalar),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

/// Token with its 1-based starting column.
type Spanned = (Tok, usize);

fn err(col: usize, msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse { col, msg: msg.into() }
}

fn lex(src: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        let c = chars[i];
        match c {
            c if c.is_whitespace() => {
                i += 1;
            }
            '+' => {
                toks.push((Tok::Plus, col));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, col));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, col));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, col));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, col));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let mut text: String = chars[start..i].iter().collect();
                // A '/' directly followed by digits is part of the rational.
                if i < chars.len()
                    && chars[i] == '/'
                    && chars.get(i + 1).is_some_and(|c| c.is_ascii_digit())
                {
                    text.push('/');
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    text = chars[start..i].iter().collect();
                }
                let value = scalar::parse(&text)
                    .map_err(|_| err(col, format!("bad rational '{text}'")))?;
                toks.push((Tok::Number(value), col));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Name(chars[start..i].iter().collect()), col));
            }
            other => return Err(err(col, format!("unexpected character '{other}'"))),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    end_col: usize,
    gens: &'a [String],
    params: &'a [String],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|&(_, c)| c).unwrap_or(self.end_col)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let col = self.col();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(err(col, format!("expected {what}"))),
        }
    }

    fn ngens(&self) -> usize {
        self.gens.len()
    }

    fn nparams(&self) -> usize {
        self.params.len()
    }

    /// Resolves a whole identifier as a generator or central parameter.
    fn lookup(&self, name: &str) -> Result<Option<CPoly>> {
        if let Some(i) = self.gens.iter().position(|g| g == name) {
            return Ok(Some(CPoly::generator(self.ngens(), self.nparams(), i)?));
        }
        if let Some(i) = self.params.iter().position(|p| p == name) {
            let c = CoeffPoly::param(self.nparams(), i)?;
            return Ok(Some(CPoly::constant(self.ngens(), c)));
        }
        Ok(None)
    }

    /// Splits an identifier into a sequence of known names, longest prefix
    /// first with backtracking. None when no complete split exists.
    fn segment(&self, name: &str) -> Option<Vec<CPoly>> {
        if name.is_empty() {
            return Some(Vec::new());
        }
        let mut lens: Vec<usize> = self
            .gens
            .iter()
            .chain(self.params.iter())
            .filter(|n| name.starts_with(n.as_str()))
            .map(|n| n.len())
            .collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens.dedup();
        for len in lens {
            let head = self.lookup(&name[..len]).ok()??;
            if let Some(mut rest) = self.segment(&name[len..]) {
                rest.insert(0, head);
                return Some(rest);
            }
        }
        None
    }

    fn expr(&mut self) -> Result<CPoly> {
        let negate = matches!(self.peek(), Some(Tok::Minus));
        if negate {
            self.bump();
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?)?;
                }
                // Juxtaposition: another factor begins immediately.
                Some(Tok::Number(_)) | Some(Tok::Name(_)) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<CPoly> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let col = self.col();
            match self.bump() {
                Some(Tok::Number(n)) if n.is_integer() && !scalar::is_negative(&n) => {
                    let e = u32::try_from(n.to_integer())
                        .map_err(|_| err(col, "exponent too large"))?;
                    base.pow(e)
                }
                _ => Err(err(col, "expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<CPoly> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Number(n)) => Ok(CPoly::scalar(self.ngens(), self.nparams(), n)),
            Some(Tok::Name(name)) => {
                if let Some(atom) = self.lookup(&name)? {
                    return Ok(atom);
                }
                // Juxtaposed known names lex as one identifier ("xp",
                // "x1p2"); split greedily with backtracking.
                if let Some(parts) = self.segment(&name) {
                    let mut acc = CPoly::one(self.ngens(), self.nparams());
                    for part in parts {
                        acc = acc.mul(&part)?;
                    }
                    return Ok(acc);
                }
                Err(err(col, format!("unknown name '{name}'")))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(err(col, "expected a rational, name, or '('")),
        }
    }
}

/// Parses an expression into a commutative polynomial over `gens` with
/// coefficients in the parameter ring spanned by `params`.
pub fn parse_cpoly(src: &str, gens: &[String], params: &[String]) -> Result<CPoly> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end_col: src.chars().count() + 1,
        gens,
        params,
    };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(err(p.col(), "trailing input"));
    }
    Ok(out)
}

/// Parses an expression with no generators: the result is a pure
/// coefficient polynomial in the central parameters.
pub fn parse_coeff(src: &str, params: &[String]) -> Result<CoeffPoly> {
    let p = parse_cpoly(src, &[], params)?;
    Ok(p.coeff_of(&[]))
}
