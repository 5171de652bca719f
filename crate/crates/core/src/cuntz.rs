//! The polynomial Cuntz algebra on `d` generators.
//!
//! Every element is a finite Q(q)-combination of normal words
//! `s_mu s_nu^*`. Products are contracted with `s_i^* s_j = delta_ij`; the
//! second Cuntz relation `sum_j s_j s_j^* = 1` is used for *leveling*, which
//! rewrites `s_mu s_nu^*` as `sum_j s_{mu j} s_{nu j}^*`. Within a fixed
//! degree `|mu| - |nu|`, words of one common co-length `|nu|` are linearly
//! independent, which turns equality into a finite coefficient comparison.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::qscalar::QScalar;

/// A monomial `s_{mu_1} ... s_{mu_r} s^*_{nu_t} ... s^*_{nu_1}`.
///
/// `nu` is stored so that the adjoint simply swaps the two parts:
/// `(s_mu s_nu^*)^* = s_nu s_mu^*`. Indices are 1-based.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word {
    mu: Vec<u8>,
    nu: Vec<u8>,
}

/// One letter of a word read left to right.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Letter {
    S(u8),
    Star(u8),
}

impl Word {
    pub fn new(mu: Vec<u8>, nu: Vec<u8>) -> Self {
        Word { mu, nu }
    }

    pub fn unit() -> Self {
        Word::default()
    }

    pub fn mu(&self) -> &[u8] {
        &self.mu
    }

    pub fn nu(&self) -> &[u8] {
        &self.nu
    }

    pub fn degree(&self) -> i64 {
        self.mu.len() as i64 - self.nu.len() as i64
    }

    pub fn co_length(&self) -> usize {
        self.nu.len()
    }

    pub fn len(&self) -> usize {
        self.mu.len() + self.nu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty() && self.nu.is_empty()
    }

    pub fn max_index(&self) -> u8 {
        self.mu.iter().chain(&self.nu).copied().max().unwrap_or(0)
    }

    pub fn star(&self) -> Word {
        Word {
            mu: self.nu.clone(),
            nu: self.mu.clone(),
        }
    }

    /// Product of two words; `None` when a contraction `s_i^* s_j` with `i != j` kills it.
    pub fn mul(&self, other: &Word) -> Option<Word> {
        let t = self.nu.len();
        let a = other.mu.len();
        if t <= a {
            if self.nu[..] != other.mu[..t] {
                return None;
            }
            let mut mu = self.mu.clone();
            mu.extend_from_slice(&other.mu[t..]);
            Some(Word {
                mu,
                nu: other.nu.clone(),
            })
        } else {
            if other.mu[..] != self.nu[..a] {
                return None;
            }
            let mut nu = other.nu.clone();
            nu.extend_from_slice(&self.nu[a..]);
            Some(Word {
                mu: self.mu.clone(),
                nu,
            })
        }
    }

    /// Letters in reading order: the `s` part, then `s^*_{nu_t}, ..., s^*_{nu_1}`.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.mu
            .iter()
            .map(|&i| Letter::S(i))
            .chain(self.nu.iter().rev().map(|&i| Letter::Star(i)))
    }

    /// Inverse of [`Word::letters`] for letter sequences of shape `s..s s*..s*`.
    pub fn from_letters(letters: &[Letter]) -> Option<Word> {
        let mut mu = Vec::new();
        let mut nu = Vec::new();
        for l in letters {
            match *l {
                Letter::S(i) => {
                    if !nu.is_empty() {
                        return None;
                    }
                    mu.push(i);
                }
                Letter::Star(i) => nu.push(i),
            }
        }
        nu.reverse();
        Some(Word { mu, nu })
    }

    /// All words `s_{mu J} s_{nu J}^*` with `|J| = extra`, in lexicographic order of `J`.
    fn leveled(&self, d: usize, extra: usize) -> Vec<Word> {
        let mut out = vec![self.clone()];
        for _ in 0..extra {
            let mut next = Vec::with_capacity(out.len() * d);
            for w in &out {
                for j in 1..=d as u8 {
                    let mut mu = w.mu.clone();
                    mu.push(j);
                    let mut nu = w.nu.clone();
                    nu.push(j);
                    next.push(Word { mu, nu });
                }
            }
            out = next;
        }
        out
    }

    /// Parent of a word in a leveling family, when its last `s` and `s^*` match.
    fn family_parent(&self) -> Option<(Word, u8)> {
        match (self.mu.last(), self.nu.last()) {
            (Some(a), Some(b)) if a == b => Some((
                Word {
                    mu: self.mu[..self.mu.len() - 1].to_vec(),
                    nu: self.nu[..self.nu.len() - 1].to_vec(),
                },
                *a,
            )),
            _ => None,
        }
    }
}

impl Ord for Word {
    /// Degree first, then `mu`, then `nu` (the serialization order).
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.mu.cmp(&other.mu))
            .then_with(|| self.nu.cmp(&other.nu))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .letters()
            .map(|l| match l {
                Letter::S(i) => format!("s{i}"),
                Letter::Star(i) => format!("s{i}*"),
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// A finite Q(q)-linear combination of words. No stored coefficient is zero.
///
/// The stored terms are one representative among many; [`PartialEq`] decides
/// equality in the algebra, not equality of representatives.
#[derive(Clone)]
pub struct CuntzElement {
    d: usize,
    terms: BTreeMap<Word, QScalar>,
}

impl CuntzElement {
    pub fn zero(d: usize) -> Self {
        CuntzElement {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(d: usize) -> Self {
        Self::from_word(d, Word::unit(), QScalar::one())
    }

    pub fn from_word(d: usize, w: Word, c: QScalar) -> Self {
        let mut x = Self::zero(d);
        x.add_term(w, c);
        x
    }

    pub fn s(d: usize, i: u8) -> Result<Self> {
        Self::checked_word(d, Word::new(vec![i], vec![]))
    }

    pub fn s_star(d: usize, i: u8) -> Result<Self> {
        Self::checked_word(d, Word::new(vec![], vec![i]))
    }

    /// A single word with coefficient one after checking its indices.
    pub fn checked_word(d: usize, w: Word) -> Result<Self> {
        check_word(d, &w)?;
        Ok(Self::from_word(d, w, QScalar::one()))
    }

    pub fn from_terms(d: usize, terms: impl IntoIterator<Item = (Word, QScalar)>) -> Result<Self> {
        let mut x = Self::zero(d);
        for (w, c) in terms {
            check_word(d, &w)?;
            x.add_term(w, c);
        }
        Ok(x)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &QScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> QScalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Word, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.d);
        }
        CuntzElement {
            d: self.d,
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    fn check_same_d(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch(self.d, other.d));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_d(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&QScalar::from_int(-1)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_d(other)?;
        let mut out = Self::zero(self.d);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some(w) = a.mul(b) {
                    out.add_term(w, ca * cb);
                }
            }
        }
        Ok(out)
    }

    /// Adjoint: reverses words and swaps `s` with `s^*`; `q` is treated as real.
    pub fn star(&self) -> Self {
        CuntzElement {
            d: self.d,
            terms: self.terms.iter().map(|(w, c)| (w.star(), c.clone())).collect(),
        }
    }

    /// Largest co-length among the stored words.
    pub fn max_co_length(&self) -> usize {
        self.terms.keys().map(Word::co_length).max().unwrap_or(0)
    }

    /// Degrees `|mu| - |nu|` present in the representative.
    pub fn degrees(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.terms.keys().map(Word::degree).collect();
        ds.dedup();
        ds
    }

    /// The homogeneous component of degree `deg`.
    pub fn component(&self, deg: i64) -> Self {
        CuntzElement {
            d: self.d,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() == deg)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Rewrites every word to co-length exactly `m`.
    pub fn level(&self, m: usize) -> Result<Self> {
        let current = self.max_co_length();
        if m < current {
            return Err(Error::CoLengthTooSmall { requested: m, current });
        }
        let mut out = Self::zero(self.d);
        for (w, c) in &self.terms {
            for lw in w.leveled(self.d, m - w.co_length()) {
                out.add_term(lw, c.clone());
            }
        }
        Ok(out)
    }

    /// Levels each degree component to its own maximal co-length.
    ///
    /// The result is the canonical representative: equal elements have
    /// identical leveled forms.
    pub fn leveled(&self) -> Self {
        let mut targets: BTreeMap<i64, usize> = BTreeMap::new();
        for w in self.terms.keys() {
            let t = targets.entry(w.degree()).or_insert(0);
            *t = (*t).max(w.co_length());
        }
        let mut out = Self::zero(self.d);
        for (w, c) in &self.terms {
            let m = targets[&w.degree()];
            for lw in w.leveled(self.d, m - w.co_length()) {
                out.add_term(lw, c.clone());
            }
        }
        out
    }

    /// True when the element is zero in the algebra.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() || self.leveled().terms.is_empty()
    }

    /// Equality in the algebra, decided by leveling the difference.
    pub fn equals(&self, other: &Self) -> bool {
        match self.try_sub(other) {
            Ok(diff) => diff.is_zero(),
            Err(_) => false,
        }
    }

    /// Minimal representative: starting from the leveled form, collapses every
    /// complete family `{s_{mu j} s_{nu j}^* : j = 1..d}` carrying one common
    /// coefficient into `s_mu s_nu^*`, repeatedly.
    pub fn compact(&self) -> Self {
        let leveled = self.leveled();
        let mut out = Self::zero(self.d);
        let mut frontier: BTreeMap<Word, QScalar> = leveled.terms;
        while !frontier.is_empty() {
            let mut families: BTreeMap<Word, Vec<(u8, Word, QScalar)>> = BTreeMap::new();
            let mut next = BTreeMap::new();
            for (w, c) in frontier {
                match w.family_parent() {
                    Some((parent, j)) => families.entry(parent).or_default().push((j, w, c)),
                    None => {
                        out.terms.insert(w, c);
                    }
                }
            }
            for (parent, members) in families {
                let complete = members.len() == self.d
                    && members.iter().all(|(_, _, c)| *c == members[0].2);
                if complete {
                    next.insert(parent, members[0].2.clone());
                } else {
                    for (_, w, c) in members {
                        out.terms.insert(w, c);
                    }
                }
            }
            frontier = next;
        }
        out
    }

    /// Random element with `n_terms` words of total length at most `max_len`.
    pub fn random(d: usize, max_len: usize, n_terms: usize, rng: &mut impl Rng) -> Self {
        let mut x = Self::zero(d);
        for _ in 0..n_terms {
            let len = rng.gen_range(0..=max_len);
            let r = rng.gen_range(0..=len);
            let mu = (0..r).map(|_| rng.gen_range(1..=d as u8)).collect();
            let nu = (0..len - r).map(|_| rng.gen_range(1..=d as u8)).collect();
            x.add_term(Word::new(mu, nu), random_scalar(rng));
        }
        x
    }
}

/// Small random scalars, mostly Laurent monomials with the odd rational function.
pub fn random_scalar(rng: &mut impl Rng) -> QScalar {
    let c = QScalar::from_int(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 });
    match rng.gen_range(0..6) {
        0 | 1 => c,
        2 => &c * &QScalar::q_pow(rng.gen_range(-2..=2)),
        3 => &c * &(&QScalar::q() - &QScalar::q_pow(-1)),
        4 => &c / &(&QScalar::q() + &QScalar::from_int(1)),
        _ => &c + &QScalar::q_pow(rng.gen_range(-2..=2)),
    }
}

fn check_word(d: usize, w: &Word) -> Result<()> {
    if w.mu.iter().chain(&w.nu).any(|&i| i == 0 || i as usize > d) {
        return Err(Error::IndexOutOfRange(format!(
            "generator index in `{w}` outside 1..={d}"
        )));
    }
    Ok(())
}

impl PartialEq for CuntzElement {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Debug for CuntzElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CuntzElement(d={}, {})", self.d, self)
    }
}

impl fmt::Display for CuntzElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let neg_c = -c;
            let (negative, mag) = if is_negative_display(c) { (true, &neg_c) } else { (false, c) };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let word = w.to_string();
            if mag.is_one() {
                f.write_str(&word)?;
            } else if w.is_empty() {
                write!(f, "{}", scalar_atom(mag))?;
            } else {
                write!(f, "{} {}", scalar_atom(mag), word)?;
            }
        }
        Ok(())
    }
}

/// Whether a coefficient prints with a leading minus sign.
pub(crate) fn is_negative_display(c: &QScalar) -> bool {
    c.to_string().starts_with('-')
}

/// Scalar text safe to juxtapose with a generator factor.
pub(crate) fn scalar_atom(c: &QScalar) -> String {
    let s = c.to_string();
    if c.is_single_term() && !s.contains('/') {
        s
    } else {
        format!("({s})")
    }
}

macro_rules! element_op {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&CuntzElement> for &CuntzElement {
            type Output = CuntzElement;
            /// Panics when the generator counts differ.
            fn $m(self, rhs: &CuntzElement) -> CuntzElement {
                self.$f(rhs).expect("generator count mismatch")
            }
        }
    };
}

element_op!(Add, add, try_add);
element_op!(Sub, sub, try_sub);
element_op!(Mul, mul, try_mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn w(mu: &[u8], nu: &[u8]) -> Word {
        Word::new(mu.to_vec(), nu.to_vec())
    }

    fn el(d: usize, terms: &[(&[u8], &[u8], QScalar)]) -> CuntzElement {
        CuntzElement::from_terms(d, terms.iter().map(|(m, n, c)| (w(m, n), c.clone()))).unwrap()
    }

    fn one() -> QScalar {
        QScalar::one()
    }

    #[test]
    fn contraction_rules() {
        let d = 2;
        let s1 = CuntzElement::s(d, 1).unwrap();
        let s2 = CuntzElement::s(d, 2).unwrap();
        let s1s = CuntzElement::s_star(d, 1).unwrap();
        assert_eq!(&s1s * &s1, CuntzElement::one(d));
        assert!((&s1s * &s2).is_zero());
        let a = el(d, &[(&[1], &[2], one())]);
        let b = el(d, &[(&[2], &[1], one())]);
        let p = &a * &b;
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coeff(&w(&[1], &[1])), one());
    }

    #[test]
    fn star_of_word() {
        let x = el(3, &[(&[1, 2], &[3], one())]);
        let y = x.star();
        assert_eq!(y.coeff(&w(&[3], &[1, 2])), one());
        assert_eq!(y.to_string(), "s3 s2* s1*");
    }

    #[test]
    fn leveling_examples() {
        let d = 2;
        let l = CuntzElement::one(d).level(1).unwrap();
        assert_eq!(l.num_terms(), 2);
        assert_eq!(l.coeff(&w(&[1], &[1])), one());
        assert_eq!(l.coeff(&w(&[2], &[2])), one());
        let l = CuntzElement::s(d, 1).unwrap().level(1).unwrap();
        assert_eq!(l.coeff(&w(&[1, 1], &[1])), one());
        assert_eq!(l.coeff(&w(&[1, 2], &[2])), one());
        let x = el(d, &[(&[1], &[2], one())]);
        assert_eq!(x.level(1).unwrap().num_terms(), 1);
        assert!(matches!(x.level(0), Err(Error::CoLengthTooSmall { .. })));
    }

    #[test]
    fn equality_decisions() {
        let d = 2;
        let sum = el(d, &[(&[1], &[1], one()), (&[2], &[2], one())]);
        assert_eq!(sum, CuntzElement::one(d));
        assert_ne!(CuntzElement::s(d, 1).unwrap(), CuntzElement::s(d, 2).unwrap());
    }

    #[test]
    fn compaction() {
        let d = 2;
        let sum = el(d, &[(&[1], &[1], one()), (&[2], &[2], one())]);
        let c = sum.compact();
        assert_eq!(c.num_terms(), 1);
        assert_eq!(c.coeff(&Word::unit()), one());
        let uneven = el(d, &[(&[1], &[1], one()), (&[2], &[2], QScalar::q())]);
        let c = uneven.compact();
        assert_eq!(c.num_terms(), 2);
        assert_eq!(c.coeff(&w(&[2], &[2])), QScalar::q());
    }

    #[test]
    fn mismatched_generator_counts() {
        let a = CuntzElement::one(2);
        let b = CuntzElement::one(3);
        assert_eq!(a.try_mul(&b).unwrap_err(), Error::DimensionMismatch(2, 3));
        assert!(CuntzElement::s(2, 3).is_err());
    }
}
