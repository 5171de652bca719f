//! Text syntax for scalars, Cuntz elements, U_q words and quantum-matrix elements.
//!
//! ```text
//! element := ['+'|'-'] term (('+'|'-') term)*
//! term    := scalar factor* | factor+
//! factor  := 's' INT ['*']            (Cuntz)     e.g. s1 s2* s1*
//!          | ('e'|'f'|'k') INT ['^-1'] (U_q words) e.g. e1 f2 k1^-1
//!          | 'u' DIGIT DIGIT            (quantum matrix) e.g. u12
//! scalar  := products/quotients of INT, q, '(' expr ')', each optionally '^' [-]INT
//! ```
//!
//! A `*` written directly after a Cuntz generator (no space) is the adjoint
//! mark; a free-standing `*` is multiplication.

use num_bigint::BigInt;

use crate::cuntz::{CuntzElement, Word};
use crate::error::{Error, Result};
use crate::qmatrix::QMatElement;
use crate::qscalar::QScalar;
use crate::uq::{LieData, UqGenerator, UqWord};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Q,
    Caret,
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Gen { letter: char, digits: String, starred: bool },
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    pos: usize,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let pos = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '^' => Some(Tok::Caret),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Spanned { tok, pos });
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push(Spanned { tok: Tok::Int(n), pos });
            continue;
        }
        if c == 'q' {
            i += 1;
            if i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                return Err(syntax(i, "unexpected character after `q`"));
            }
            out.push(Spanned { tok: Tok::Q, pos });
            continue;
        }
        if matches!(c, 's' | 'e' | 'f' | 'k' | 'u') {
            i += 1;
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(syntax(start, format!("expected an index after `{c}`")));
            }
            let digits = text[start..i].to_string();
            let starred = c == 's' && i < bytes.len() && bytes[i] == b'*';
            if starred {
                i += 1;
            }
            out.push(Spanned {
                tok: Tok::Gen { letter: c, digits, starred },
                pos,
            });
            continue;
        }
        return Err(syntax(pos, format!("unexpected character `{c}`")));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Spanned],
    at: usize,
    end: usize,
}

/// A generator token handed to the caller of the generic term parser.
#[derive(Clone, Debug)]
pub(crate) struct GenRef {
    pub letter: char,
    pub digits: String,
    pub starred: bool,
    pub inverse: bool,
    pub pos: usize,
}

impl<'a> Parser<'a> {
    fn new(toks: &'a [Spanned], end: usize) -> Self {
        Parser { toks, at: 0, end }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|s| &s.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |s| s.pos)
    }

    fn bump(&mut self) -> Option<&Spanned> {
        let t = self.toks.get(self.at);
        self.at += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.at += 1;
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected {what}")))
        }
    }

    fn scalar_expr(&mut self) -> Result<QScalar> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                -self.scalar_product()?
            }
            Some(Tok::Plus) => {
                self.at += 1;
                self.scalar_product()?
            }
            _ => self.scalar_product()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = &acc + &self.scalar_product()?;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = &acc - &self.scalar_product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_scalar_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_) | Tok::Q | Tok::LParen))
    }

    fn scalar_product(&mut self) -> Result<QScalar> {
        let mut acc = self.scalar_power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) if self.next_is_scalar_atom() => {
                    self.at += 1;
                    acc = &acc * &self.scalar_power()?;
                }
                Some(Tok::Slash) => {
                    let pos = self.pos();
                    self.at += 1;
                    let d = self.scalar_power()?;
                    let inv = d.inv().map_err(|_| syntax(pos, "division by zero"))?;
                    acc = &acc * &inv;
                }
                _ if self.starts_scalar_atom() => {
                    acc = &acc * &self.scalar_power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn next_is_scalar_atom(&self) -> bool {
        matches!(
            self.toks.get(self.at + 1).map(|s| &s.tok),
            Some(Tok::Int(_) | Tok::Q | Tok::LParen)
        )
    }

    fn scalar_power(&mut self) -> Result<QScalar> {
        let base = self.scalar_atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.at += 1;
            let pos = self.pos();
            let k = self.signed_int()?;
            return base.pow(k).map_err(|_| syntax(pos, "zero raised to a negative power"));
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            true
        } else {
            false
        };
        let pos = self.pos();
        match self.bump().map(|s| s.tok.clone()) {
            Some(Tok::Int(n)) => {
                let v: i64 = i64::try_from(n).map_err(|_| syntax(pos, "exponent too large"))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(syntax(pos, "expected an integer exponent")),
        }
    }

    fn scalar_atom(&mut self) -> Result<QScalar> {
        let pos = self.pos();
        match self.bump().map(|s| s.tok.clone()) {
            Some(Tok::Int(n)) => Ok(QScalar::from_bigint(n)),
            Some(Tok::Q) => Ok(QScalar::q()),
            Some(Tok::LParen) => {
                let v = self.scalar_expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(v)
            }
            _ => Err(syntax(pos, "expected a scalar")),
        }
    }

    fn generator(&mut self) -> Result<GenRef> {
        let pos = self.pos();
        let Some(Tok::Gen { letter, digits, starred }) = self.peek().cloned() else {
            return Err(syntax(pos, "expected a generator"));
        };
        self.at += 1;
        let mut inverse = false;
        if letter == 'k' && self.peek() == Some(&Tok::Caret) {
            self.at += 1;
            let epos = self.pos();
            if self.signed_int()? != -1 {
                return Err(syntax(epos, "only the exponent -1 is allowed on k"));
            }
            inverse = true;
        }
        Ok(GenRef { letter, digits, starred, inverse, pos })
    }

    /// One term: optional scalar prefix followed by generators.
    fn term(&mut self) -> Result<(QScalar, Vec<GenRef>)> {
        let has_scalar = self.starts_scalar_atom();
        let coeff = if has_scalar {
            self.scalar_product()?
        } else {
            QScalar::one()
        };
        let mut gens = Vec::new();
        loop {
            let star_then_gen = matches!(
                self.toks.get(self.at + 1).map(|s| &s.tok),
                Some(Tok::Gen { .. })
            );
            match self.peek() {
                Some(Tok::Gen { .. }) => gens.push(self.generator()?),
                Some(Tok::Star) if star_then_gen && (has_scalar || !gens.is_empty()) => {
                    self.at += 1;
                }
                _ => break,
            }
        }
        Ok((coeff, gens))
    }

    /// `['+'|'-'] term (('+'|'-') term)*`, consuming all input.
    fn linear(&mut self) -> Result<Vec<(QScalar, Vec<GenRef>)>> {
        let mut out = Vec::new();
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.at += 1;
                1
            }
            _ => 1,
        };
        loop {
            if self.peek().is_none() {
                return Err(syntax(self.pos(), "expected a term"));
            }
            let start = self.at;
            let (c, gens) = self.term()?;
            if self.at == start {
                return Err(syntax(self.pos(), "expected a term"));
            }
            let c = if sign < 0 { -c } else { c };
            out.push((c, gens));
            match self.peek() {
                None => return Ok(out),
                Some(Tok::Plus) => sign = 1,
                Some(Tok::Minus) => sign = -1,
                Some(_) => return Err(syntax(self.pos(), "expected `+`, `-` or end of input")),
            }
            self.at += 1;
        }
    }
}

pub(crate) fn parse_linear(text: &str) -> Result<Vec<(QScalar, Vec<GenRef>)>> {
    let toks = lex(text)?;
    let mut p = Parser::new(&toks, text.len());
    p.linear()
}

/// Parses a scalar expression in `q`.
pub fn parse_scalar(text: &str) -> Result<QScalar> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(syntax(0, "empty scalar"));
    }
    let mut p = Parser::new(&toks, text.len());
    let v = p.scalar_expr()?;
    if p.peek().is_some() {
        return Err(syntax(p.pos(), "trailing input after scalar"));
    }
    Ok(v)
}

pub(crate) fn parse_index(g: &GenRef, bound: usize) -> Result<u8> {
    let v: usize = g
        .digits
        .parse()
        .map_err(|_| syntax(g.pos, "index too large"))?;
    if v == 0 || v > bound {
        return Err(Error::IndexOutOfRange(format!(
            "`{}{}` at offset {}: index must lie in 1..={}",
            g.letter, g.digits, g.pos, bound
        )));
    }
    Ok(v as u8)
}

/// Parses a Cuntz element over `d` generators, e.g. `s1 s2* - q^-1 s2 s1*`.
pub fn parse_element(text: &str, d: usize) -> Result<CuntzElement> {
    let mut out = CuntzElement::zero(d);
    for (c, gens) in parse_linear(text)? {
        let mut term = CuntzElement::from_word(d, Word::unit(), c);
        for g in &gens {
            if g.letter != 's' {
                return Err(syntax(g.pos, format!("unexpected generator `{}` in a Cuntz element", g.letter)));
            }
            let i = parse_index(g, d)?;
            let f = if g.starred {
                CuntzElement::s_star(d, i)?
            } else {
                CuntzElement::s(d, i)?
            };
            term = term.try_mul(&f)?;
        }
        out = out.try_add(&term)?;
    }
    Ok(out)
}

/// Parses a word in `U_q(sl_n)` generators, e.g. `e1 f2 k1^-1`; `1` is the unit.
pub fn parse_uq_word(text: &str, g: &LieData) -> Result<UqWord> {
    let terms = parse_linear(text)?;
    if terms.len() != 1 {
        return Err(syntax(0, "a U_q word is a single product of generators"));
    }
    let (c, gens) = terms.into_iter().next().expect("one term");
    if !c.is_one() {
        return Err(syntax(0, "a U_q word carries no scalar coefficient"));
    }
    let mut factors = Vec::with_capacity(gens.len());
    for r in &gens {
        let i = parse_index(r, g.rank())?;
        let gen = match (r.letter, r.inverse) {
            ('e', _) => UqGenerator::e(i),
            ('f', _) => UqGenerator::f(i),
            ('k', false) => UqGenerator::k(i),
            ('k', true) => UqGenerator::k_inv(i),
            (other, _) => {
                return Err(syntax(r.pos, format!("unexpected generator `{other}` in a U_q word")))
            }
        };
        factors.push(gen);
    }
    Ok(UqWord::new(factors))
}

/// Parses a quantum-matrix element such as `u11 u22 - q^-1 u12 u21` and
/// straightens it. Generators are `u` followed by exactly two digits.
pub fn parse_qmat(text: &str, d: usize) -> Result<QMatElement> {
    let mut out = QMatElement::zero(d);
    for (c, gens) in parse_linear(text)? {
        let mut word = Vec::with_capacity(gens.len());
        for g in &gens {
            if g.letter != 'u' {
                return Err(syntax(g.pos, format!("unexpected generator `{}` in a quantum-matrix element", g.letter)));
            }
            let b = g.digits.as_bytes();
            if b.len() != 2 {
                return Err(syntax(g.pos, "quantum-matrix generators take two single-digit indices"));
            }
            let (i, j) = ((b[0] - b'0') as usize, (b[1] - b'0') as usize);
            if i == 0 || j == 0 || i > d || j > d {
                return Err(Error::IndexOutOfRange(format!(
                    "`u{}` at offset {}: indices must lie in 1..={d}",
                    g.digits, g.pos
                )));
            }
            word.push((i as u8, j as u8));
        }
        out = out.add(&QMatElement::from_word(d, &word, c)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalars() {
        let q = QScalar::q();
        assert_eq!(parse_scalar("q^-1").unwrap(), QScalar::q_pow(-1));
        assert_eq!(parse_scalar("(q - q^-1)").unwrap(), &q - &QScalar::q_pow(-1));
        assert_eq!(parse_scalar("2*q/(q^2 - 1)").unwrap().to_string(), "2*q/(q^2 - 1)");
        assert_eq!(parse_scalar("-3/(2*q)").unwrap().to_string(), "-3/(2*q)");
        assert_eq!(parse_scalar("2 q").unwrap(), &QScalar::from_int(2) * &q);
        assert!(parse_scalar("q +").is_err());
        assert!(parse_scalar("1/0").is_err());
    }

    #[test]
    fn element_examples() {
        let x = parse_element("s1 s2* - q^-1 s2 s1*", 2).unwrap();
        assert_eq!(x.num_terms(), 2);
        assert_eq!(x.coeff(&Word::new(vec![2], vec![1])), -QScalar::q_pow(-1));
        let y = parse_element("(q - q^-1) s1 s2 s1* s2*", 2).unwrap();
        assert_eq!(y.num_terms(), 1);
        assert_eq!(y.coeff(&Word::new(vec![1, 2], vec![2, 1])), &QScalar::q() - &QScalar::q_pow(-1));
        assert!(matches!(parse_element("s3", 2), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn element_with_contraction_and_unit() {
        let x = parse_element("s1* s1 - 1", 2).unwrap();
        assert!(x.is_zero());
        let y = parse_element("-2", 3).unwrap();
        assert_eq!(y.coeff(&Word::unit()), QScalar::from_int(-2));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_element("s1 + + s2", 2) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_element("s1 $", 2), Err(Error::Syntax { pos: 3, .. })));
    }

    #[test]
    fn uq_words() {
        let g = LieData::sl(3).unwrap();
        let w = parse_uq_word("e1 f2 k1^-1", &g).unwrap();
        assert_eq!(w.to_string(), "e1 f2 k1^-1");
        assert!(parse_uq_word("1", &g).unwrap().is_empty());
        assert!(matches!(parse_uq_word("e3", &g), Err(Error::IndexOutOfRange(_))));
        assert!(parse_uq_word("2 e1", &g).is_err());
        assert!(parse_uq_word("k1^2", &g).is_err());
        assert!(parse_uq_word("s1", &g).is_err());
    }

    #[test]
    fn qmat_elements() {
        let x = parse_qmat("u11 u22 - q^-1 u12 u21", 2).unwrap();
        assert_eq!(x, crate::qmatrix::qdet(2).unwrap());
        assert!(matches!(parse_qmat("u13", 2), Err(Error::IndexOutOfRange(_))));
        assert!(parse_qmat("u1", 2).is_err());
        assert!(parse_qmat("s1", 2).is_err());
    }
}
