//! The FRT quantum-matrix bialgebra, its `SL_q` quotient, the coaction on the
//! Cuntz algebra and the duality pairing with `U_q(sl_n)`.

mod coact;
mod frt;
mod pairing;
mod sl;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

pub use coact::{coact, is_cofixed, CoactionElement};
pub use frt::{frt_rules, ConfluenceReport, FrtSystem, Gen};
pub use pairing::{
    dual_act, dual_act_many, pair_l, pair_l_product, pairing, pairing_monomial, pairing_welldefined,
    perturbed_relation_detected, rll_check, LSign, RllReport, WellDefinedReport,
};
pub use sl::{antipode_u, antipode_check, qdet, reduced_mul, sl_quotient_reduce};

use crate::cuntz::{is_negative_display, scalar_atom};
use crate::error::{Error, Result};
use crate::qscalar::QScalar;
use frt::{Lin, Mono};

/// A product `u_{i_1 j_1} ... u_{i_r j_r}`; the empty product is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UMonomial {
    factors: Vec<Gen>,
}

impl UMonomial {
    pub fn new(factors: Vec<Gen>) -> Self {
        UMonomial { factors }
    }

    pub fn unit() -> Self {
        UMonomial::default()
    }

    pub fn factors(&self) -> &[Gen] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    /// Nondecreasing in row-major order, i.e. in PBW normal form.
    pub fn is_sorted(&self) -> bool {
        self.factors.windows(2).all(|w| w[0] <= w[1])
    }

    /// Off-diagonal weight `sum (i - j)^2`.
    pub fn weight(&self) -> u32 {
        frt::weight(&self.factors)
    }
}

impl Ord for UMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.factors.len(), &self.factors).cmp(&(other.factors.len(), &other.factors))
    }
}

impl PartialOrd for UMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for UMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(|(i, j)| format!("u{i}{j}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// An element of the FRT bialgebra in PBW normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatElement {
    d: usize,
    terms: BTreeMap<UMonomial, QScalar>,
}

impl QMatElement {
    pub fn zero(d: usize) -> Self {
        QMatElement { d, terms: BTreeMap::new() }
    }

    pub fn one(d: usize) -> Self {
        Self::scalar(d, QScalar::one())
    }

    pub fn scalar(d: usize, c: QScalar) -> Self {
        let mut x = Self::zero(d);
        if !c.is_zero() {
            x.terms.insert(UMonomial::unit(), c);
        }
        x
    }

    pub fn generator(d: usize, i: u8, j: u8) -> Result<Self> {
        Self::from_word(d, &[(i, j)], QScalar::one())
    }

    /// `c` times an arbitrary word in the generators, straightened.
    pub fn from_word(d: usize, word: &[Gen], c: QScalar) -> Result<Self> {
        check_indices(d, word)?;
        let sys = frt_rules(d)?;
        let s = sys.straighten(word);
        Ok(Self::from_map(d, s).scale(&c))
    }

    /// Builds from `(monomial, coefficient)` pairs, straightening each monomial.
    pub fn from_terms(d: usize, terms: impl IntoIterator<Item = (UMonomial, QScalar)>) -> Result<Self> {
        let mut out = Self::zero(d);
        for (m, c) in terms {
            out = out.add(&Self::from_word(d, &m.factors, c)?)?;
        }
        Ok(out)
    }

    pub(crate) fn from_map(d: usize, m: HashMap<Mono, QScalar>) -> Self {
        QMatElement {
            d,
            terms: m
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (UMonomial::new(k), c))
                .collect(),
        }
    }

    pub(crate) fn from_lin(d: usize, l: &[(Mono, QScalar)]) -> Self {
        let mut acc = HashMap::new();
        for (m, c) in l {
            frt::accumulate(&mut acc, m.clone(), c.clone());
        }
        Self::from_map(d, acc)
    }

    pub(crate) fn to_lin(&self) -> Lin {
        self.terms.iter().map(|(m, c)| (m.factors.clone(), c.clone())).collect()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&UMonomial, &QScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &UMonomial) -> QScalar {
        self.terms.get(m).cloned().unwrap_or_else(QScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(&UMonomial::unit()).is_one()
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(UMonomial::degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.d);
        }
        QMatElement {
            d: self.d,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_d(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let v = out.coeff(m) + c;
            if v.is_zero() {
                out.terms.remove(m);
            } else {
                out.terms.insert(m.clone(), v);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&QScalar::from_int(-1)))
    }

    /// Product in the FRT bialgebra (no determinant reduction).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_d(other)?;
        let sys = frt_rules(self.d)?;
        let y = other.to_lin();
        Ok(Self::from_map(
            self.d,
            sys.mul_lin(self.terms.iter().map(|(m, c)| (&m.factors, c)), &y),
        ))
    }

    fn same_d(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch(self.d, other.d));
        }
        Ok(())
    }

    /// Random combination of `n_terms` words of length at most `max_deg`.
    pub fn random(d: usize, max_deg: usize, n_terms: usize, rng: &mut impl rand::Rng) -> Result<Self> {
        let mut out = Self::zero(d);
        for _ in 0..n_terms {
            let len = rng.gen_range(0..=max_deg);
            let w: Vec<Gen> = (0..len)
                .map(|_| (rng.gen_range(1..=d as u8), rng.gen_range(1..=d as u8)))
                .collect();
            out = out.add(&Self::from_word(d, &w, crate::cuntz::random_scalar(rng))?)?;
        }
        Ok(out)
    }
}

fn check_indices(d: usize, word: &[Gen]) -> Result<()> {
    for &(i, j) in word {
        if i == 0 || j == 0 || i as usize > d || j as usize > d {
            return Err(Error::IndexOutOfRange(format!("u{i}{j} outside 1..={d}")));
        }
    }
    Ok(())
}

/// `qm_mul` in free-function form.
pub fn qm_mul(x: &QMatElement, y: &QMatElement) -> Result<QMatElement> {
    x.mul(y)
}

pub(crate) fn write_signed<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a QScalar)>,
    unit_label: &str,
) -> fmt::Result {
    let mut any = false;
    for (k, (label, c)) in terms.enumerate() {
        any = true;
        let neg_c = -c;
        let (negative, mag) = if is_negative_display(c) { (true, &neg_c) } else { (false, c) };
        match (k, negative) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        if mag.is_one() {
            f.write_str(&label)?;
        } else if label == unit_label {
            f.write_str(&scalar_atom(mag))?;
        } else {
            write!(f, "{} {}", scalar_atom(mag), label)?;
        }
    }
    if !any {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for QMatElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed(f, self.terms.iter().map(|(m, c)| (m.to_string(), c)), "1")
    }
}

impl fmt::Debug for QMatElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatElement(d={}, {})", self.d, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_and_straightened_product() {
        let u21 = QMatElement::generator(2, 2, 1).unwrap();
        let u11 = QMatElement::generator(2, 1, 1).unwrap();
        assert_eq!(QMatElement::one(2).mul(&u21).unwrap(), u21);
        let p = u21.mul(&u11).unwrap();
        assert_eq!(p.num_terms(), 1);
        let (m, c) = p.terms().next().unwrap();
        assert_eq!(m.factors(), &[(1, 1), (2, 1)]);
        assert!(c.is_single_term());
    }

    #[test]
    fn display() {
        let x = QMatElement::from_word(2, &[(1, 1), (2, 2)], QScalar::one()).unwrap();
        assert_eq!(x.to_string(), "u11 u22");
        assert_eq!(QMatElement::one(2).to_string(), "1");
        assert_eq!(QMatElement::zero(2).to_string(), "0");
    }
}
