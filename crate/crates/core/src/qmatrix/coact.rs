//! The coaction `omega(s_i) = sum_j s_j (x) u_ji`,
//! `omega(s_i^*) = sum_j s_j^* (x) gamma_0(u_ij)`, extended multiplicatively.
//!
//! A word `s_mu s_nu^*` is already a product of letters in normal order, so its
//! image is a sum over output words of the same shape; the second leg is the
//! product of the letter factors in reading order. The product is built one
//! letter at a time and reduced modulo `det_q - 1` after every step; states
//! with the same output prefix and remaining input merge, which keeps the
//! leveled inputs cheap.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::frt::{accumulate, frt_rules, FrtSystem, Lin, Mono};
use super::{write_signed, QMatElement, UMonomial};
use crate::cuntz::{CuntzElement, Letter, Word};
use crate::error::{Error, Result};
use crate::qscalar::QScalar;

/// An element of `O_d (x) G`, both legs in normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct CoactionElement {
    d: usize,
    terms: BTreeMap<(Word, UMonomial), QScalar>,
}

impl CoactionElement {
    pub fn zero(d: usize) -> Self {
        CoactionElement { d, terms: BTreeMap::new() }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, UMonomial), &QScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, w: Word, m: UMonomial, c: QScalar) {
        let key = (w, m);
        let v = self.terms.get(&key).cloned().unwrap_or_else(QScalar::zero) + c;
        if v.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, v);
        }
    }

    /// Second legs grouped by first-leg word.
    pub fn by_word(&self) -> BTreeMap<Word, QMatElement> {
        let mut out: BTreeMap<Word, Lin> = BTreeMap::new();
        for ((w, m), c) in &self.terms {
            out.entry(w.clone()).or_default().push((m.factors().to_vec(), c.clone()));
        }
        out.into_iter().map(|(w, l)| (w, QMatElement::from_lin(self.d, &l))).collect()
    }

    /// First legs grouped by second-leg monomial.
    pub fn by_monomial(&self) -> BTreeMap<UMonomial, CuntzElement> {
        let mut out: BTreeMap<UMonomial, CuntzElement> = BTreeMap::new();
        for ((w, m), c) in &self.terms {
            out.entry(m.clone())
                .or_insert_with(|| CuntzElement::zero(self.d))
                .add_term(w.clone(), c.clone());
        }
        out
    }

    /// `x (x) 1`.
    pub fn from_first_leg(x: &CuntzElement) -> Self {
        let mut out = CoactionElement::zero(x.d());
        for (w, c) in x.terms() {
            out.add_term(w.clone(), UMonomial::unit(), c.clone());
        }
        out
    }

    /// Equality in `O_d (x) G_reduced`: the reduced monomials form a basis of
    /// the second leg, so the first legs are compared monomial by monomial.
    pub fn equals(&self, other: &Self) -> bool {
        if self.d != other.d {
            return false;
        }
        let a = self.by_monomial();
        let b = other.by_monomial();
        let zero = CuntzElement::zero(self.d);
        a.keys()
            .chain(b.keys())
            .all(|m| a.get(m).unwrap_or(&zero).equals(b.get(m).unwrap_or(&zero)))
    }

    /// Product in `O_d (x) G`, reducing the second leg modulo `det_q - 1`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch(self.d, other.d));
        }
        let sys = frt_rules(self.d)?;
        let mut out = CoactionElement::zero(self.d);
        for ((w1, m1), c1) in &self.terms {
            for ((w2, m2), c2) in &other.terms {
                let Some(w) = w1.mul(w2) else { continue };
                let prod = sys.reduce_map(sys.mul_mono(m1.factors(), m2.factors()))?;
                let c12 = c1 * c2;
                for (m, c) in prod {
                    out.add_term(w.clone(), UMonomial::new(m), &c12 * &c);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for CoactionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed(
            f,
            self.terms.iter().map(|((w, m), c)| (format!("{w} (x) {m}"), c)),
            "",
        )
    }
}

impl fmt::Debug for CoactionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoactionElement(d={}, {})", self.d, self)
    }
}

/// `(output letter, second-leg factor)` choices for one input letter.
fn letter_image(sys: &FrtSystem, l: Letter) -> Result<Vec<(Letter, Lin)>> {
    let d = sys.d as u8;
    match l {
        Letter::S(i) => Ok((1..=d).map(|j| (Letter::S(j), vec![(vec![(j, i)], QScalar::one())])).collect()),
        Letter::Star(i) => {
            let x = sys.antipode_matrix()?;
            Ok((1..=d)
                .map(|j| (Letter::Star(j), x[i as usize - 1][j as usize - 1].to_lin()))
                .filter(|(_, lin)| !lin.is_empty())
                .collect())
        }
    }
}

type State = (Vec<Letter>, Vec<Letter>);

/// `omega(x)` with the second leg reduced modulo `det_q - 1`.
pub fn coact(x: &CuntzElement) -> Result<CoactionElement> {
    let d = x.d();
    let sys = frt_rules(d)?;
    let mut images: HashMap<Letter, Vec<(Letter, Lin)>> = HashMap::new();
    let mut states: HashMap<State, HashMap<Mono, QScalar>> = HashMap::new();
    let mut out = CoactionElement::zero(d);
    for (w, c) in x.terms() {
        let key = (Vec::new(), w.letters().collect());
        accumulate(states.entry(key).or_default(), Vec::new(), c.clone());
    }
    while !states.is_empty() {
        let mut next: HashMap<State, HashMap<Mono, QScalar>> = HashMap::new();
        for ((prefix, rest), poly) in states {
            let Some((&l, tail)) = rest.split_first() else {
                let w = Word::from_letters(&prefix).expect("coaction preserves word shape");
                for (m, c) in poly {
                    out.add_term(w.clone(), UMonomial::new(m), c);
                }
                continue;
            };
            if let std::collections::hash_map::Entry::Vacant(e) = images.entry(l) {
                e.insert(letter_image(&sys, l)?);
            }
            for (nl, factor) in &images[&l] {
                let prod = sys.mul_lin(poly.iter(), factor);
                let red = sys.reduce_map(prod)?;
                if red.is_empty() {
                    continue;
                }
                let mut np = prefix.clone();
                np.push(*nl);
                let slot = next.entry((np, tail.to_vec())).or_default();
                for (m, c) in red {
                    accumulate(slot, m, c);
                }
            }
        }
        states = next;
    }
    Ok(out)
}

/// `omega(x) = x (x) 1`, decided after leveling `x` so that the first-leg
/// words of each degree share one co-length and are linearly independent.
pub fn is_cofixed(x: &CuntzElement) -> Result<bool> {
    let xl = x.leveled();
    let image = coact(&xl)?;
    let legs = image.by_word();
    let mut words: Vec<&Word> = legs.keys().collect();
    words.extend(xl.terms().map(|(w, _)| w));
    for w in words {
        let g = legs.get(w).cloned().unwrap_or_else(|| QMatElement::zero(x.d()));
        if g != QMatElement::scalar(x.d(), xl.coeff(w)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{q_antisymmetric, theta};

    #[test]
    fn coaction_of_generator() {
        let s1 = CuntzElement::s(2, 1).unwrap();
        let c = coact(&s1).unwrap();
        assert_eq!(c.to_string(), "s1 (x) u11 + s2 (x) u21");
        let one = coact(&CuntzElement::one(2)).unwrap();
        assert_eq!(one.to_string(), "1 (x) 1");
    }

    #[test]
    fn star_times_generator_is_delta() {
        for d in 2..=3 {
            for i in 1..=d as u8 {
                for j in 1..=d as u8 {
                    let a = coact(&CuntzElement::s_star(d, i).unwrap()).unwrap();
                    let b = coact(&CuntzElement::s(d, j).unwrap()).unwrap();
                    let p = a.mul(&b).unwrap();
                    let expect = if i == j { CuntzElement::one(d) } else { CuntzElement::zero(d) };
                    assert!(p.equals(&CoactionElement::from_first_leg(&expect)), "{i},{j}: {p}");
                }
            }
        }
    }

    #[test]
    fn cofixed_examples_d2() {
        assert!(is_cofixed(&theta(2, 1).unwrap().element).unwrap());
        assert!(is_cofixed(&q_antisymmetric(2).unwrap()).unwrap());
        assert!(!is_cofixed(&CuntzElement::s(2, 1).unwrap()).unwrap());
        assert!(is_cofixed(&CuntzElement::one(2)).unwrap());
    }
}
