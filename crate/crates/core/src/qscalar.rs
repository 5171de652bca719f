//! The coefficient field Q(q).
//!
//! A [`QScalar`] is a reduced fraction of integer polynomials in `q`. The
//! representation is canonical: numerator and denominator are coprime in
//! Z[q] (content included) and the denominator has a positive leading
//! coefficient, so equal values are structurally identical. Laurent
//! polynomials are simply fractions whose denominator is a power of `q`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{write_laurent, Poly};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    num: Poly,
    den: Poly,
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_bigint(BigInt::from(c))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        QScalar {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_parts(Poly::constant(r.numer().clone()), Poly::constant(r.denom().clone()))
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(BigInt::one(), k)
    }

    /// `c * q^k`.
    pub fn monomial(c: BigInt, k: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if k >= 0 {
            QScalar {
                num: Poly::monomial(c, k as usize),
                den: Poly::one(),
            }
        } else {
            QScalar {
                num: Poly::constant(c),
                den: Poly::monomial(BigInt::one(), (-k) as usize),
            }
        }
    }

    /// Builds `num / den` and brings it to canonical form.
    ///
    /// Panics if `den` is zero; use [`QScalar::try_from_parts`] for a checked version.
    pub fn from_parts(num: Poly, den: Poly) -> Self {
        Self::try_from_parts(num, den).expect("zero denominator")
    }

    pub fn try_from_parts(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        if den.leading().unwrap().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Ok(QScalar { num, den })
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is `c * q^k` for an integer `c` and integer `k`.
    pub fn is_single_term(&self) -> bool {
        self.is_zero()
            || (self.num.is_monomial() && self.den.is_monomial() && self.den.leading().unwrap().is_one())
    }

    /// True when the denominator is a power of `q` (a Laurent polynomial).
    pub fn is_laurent(&self) -> bool {
        self.den.is_monomial() && self.den.leading().unwrap().is_one()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::try_from_parts(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Exact value at `q = point`.
    pub fn eval(&self, point: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::Pole(point.to_string()));
        }
        Ok(self.num.eval(point) / d)
    }

    fn add_impl(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::from_parts(self.num.add(&other.num), self.den.clone());
        }
        if self.is_laurent() && other.is_laurent() {
            let a = self.den.degree().unwrap();
            let b = other.den.degree().unwrap();
            let top = a.max(b);
            let num = self.num.shift_up(top - a).add(&other.num.shift_up(top - b));
            return Self::from_parts(num, Poly::monomial(BigInt::one(), top));
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::from_parts(num, self.den.mul(&other.den))
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        Self::from_parts(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// Laurent coefficients `(exponent, coefficient)` in descending order, when
    /// the value is a Laurent polynomial.
    fn laurent_terms(&self) -> Option<Vec<(i64, &BigInt)>> {
        if !self.is_laurent() {
            return None;
        }
        let shift = self.den.degree().unwrap() as i64;
        Some(
            self.num
                .coeffs()
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 - shift, c))
                .collect(),
        )
    }
}

/// Symmetric q-number `[m] = (q^m - q^-m) / (q - q^-1)`.
pub fn q_number(m: i64) -> QScalar {
    let num = &QScalar::q_pow(m) - &QScalar::q_pow(-m);
    let den = &QScalar::q() - &QScalar::q_pow(-1);
    &num / &den
}

/// Symmetric Gauss polynomial `[s t]_q = prod_{k=1..t} [s-k+1] / [k]`.
pub fn gauss_binomial(s: u32, t: u32) -> Result<QScalar> {
    if t > s {
        return Err(Error::IndexOutOfRange(format!(
            "gauss_binomial({s}, {t}) requires t <= s"
        )));
    }
    let mut acc = QScalar::one();
    for k in 1..=t as i64 {
        acc = &(&acc * &q_number(s as i64 - k + 1)) / &q_number(k);
    }
    Ok(acc)
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for QScalar {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(terms) = self.laurent_terms() {
            return write_laurent(f, &terms);
        }
        let terms = |p: &Poly| p.coeffs().iter().filter(|c| !c.is_zero()).count();
        let num = if terms(&self.num) > 1 {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        let den = if terms(&self.den) > 1 || (!self.den.is_constant() && !self.den.leading().unwrap().is_one()) {
            format!("({})", self.den)
        } else {
            self.den.to_string()
        };
        write!(f, "{num}/{den}")
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({})", self)
    }
}

impl Serialize for QScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        crate::parse::parse_scalar(&s).map_err(serde::de::Error::custom)
    }
}

impl Add<&QScalar> for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        self.add_impl(rhs)
    }
}

impl Sub<&QScalar> for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self.add_impl(&-rhs)
    }
}

impl Mul<&QScalar> for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        self.mul_impl(rhs)
    }
}

/// Panics on division by zero; use [`QScalar::inv`] for a checked version.
impl Div<&QScalar> for &QScalar {
    type Output = QScalar;
    fn div(self, rhs: &QScalar) -> QScalar {
        self * &rhs.inv().expect("division by zero in Q(q)")
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &QScalar) -> QScalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        *self = self.add_impl(rhs);
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, rhs: &QScalar) {
        *self = self.add_impl(&-rhs);
    }
}

impl MulAssign<&QScalar> for QScalar {
    fn mul_assign(&mut self, rhs: &QScalar) {
        *self = self.mul_impl(rhs);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QScalar {
        QScalar::q()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn int(c: i64) -> QScalar {
        QScalar::from_int(c)
    }

    #[test]
    fn additive_inverse() {
        assert!((&q() + &-q()).is_zero());
        assert_eq!(&q() + &-q(), QScalar::zero());
    }

    #[test]
    fn cancellation_to_one() {
        let a = &(&q() - &int(1)) / &(&q() + &int(1));
        let b = &int(2) / &(&q() + &int(1));
        assert!((&a + &b).is_one());
    }

    #[test]
    fn sum_of_simple_fractions() {
        let a = &int(1) / &(&q() - &int(1));
        let b = &int(1) / &(&q() + &int(1));
        let expected = &(&int(2) * &q()) / &(&(&q() * &q()) - &int(1));
        assert_eq!(&a + &b, expected);
        assert_eq!((&a + &b).eval(&rat(2, 1)).unwrap(), rat(4, 3));
        assert_eq!(expected.to_string(), "2*q/(q^2 - 1)");
    }

    #[test]
    fn inverse_and_products() {
        assert!((&q() * &QScalar::q_pow(-1)).is_one());
        let x = &(&(&q() * &q()) - &int(1)) / &q();
        let expected = &q() / &(&(&q() * &q()) - &int(1));
        assert_eq!(x.inv().unwrap(), expected);
        let prod = &(&q() - &QScalar::q_pow(-1)) * &(&q() + &QScalar::q_pow(-1));
        assert_eq!(prod, &QScalar::q_pow(2) - &QScalar::q_pow(-2));
        assert_eq!(prod.eval(&rat(2, 1)).unwrap(), rat(15, 4));
        assert_eq!(QScalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn evaluation() {
        let x = &q() + &QScalar::q_pow(-1);
        assert_eq!(x.eval(&rat(2, 1)).unwrap(), rat(5, 2));
        assert_eq!(int(1).eval(&rat(7, 3)).unwrap(), rat(1, 1));
        let y = &(&QScalar::q_pow(2) - &QScalar::q_pow(-2)) / &(&q() - &QScalar::q_pow(-1));
        assert_eq!(y.eval(&rat(3, 1)).unwrap(), rat(10, 3));
        let pole = &int(1) / &(&q() - &int(1));
        assert!(matches!(pole.eval(&rat(1, 1)), Err(Error::Pole(_))));
    }

    #[test]
    fn gauss_polynomials() {
        assert!(gauss_binomial(1, 0).unwrap().is_one());
        assert!(gauss_binomial(2, 2).unwrap().is_one());
        let g = gauss_binomial(2, 1).unwrap();
        assert_eq!(g, &q() + &QScalar::q_pow(-1));
        // independent check: evaluate the defining product at q = 2, 3
        for p in [rat(2, 1), rat(3, 1)] {
            let direct = (p.clone() * p.clone() - (p.clone() * p.clone()).recip())
                / (p.clone() - p.clone().recip());
            assert_eq!(g.eval(&p).unwrap(), direct);
        }
        assert!(gauss_binomial(1, 2).is_err());
    }

    #[test]
    fn gauss_symmetry() {
        for s in 0..=8 {
            for t in 0..=s {
                assert_eq!(gauss_binomial(s, t).unwrap(), gauss_binomial(s, s - t).unwrap());
            }
        }
    }

    #[test]
    fn canonical_display() {
        assert_eq!((&q() - &QScalar::q_pow(-1)).to_string(), "q - q^-1");
        assert_eq!((&int(1) / &int(2)).to_string(), "1/2");
        assert_eq!((&int(-3) / &(&int(2) * &q())).to_string(), "-3/(2*q)");
        assert_eq!(QScalar::zero().to_string(), "0");
    }
}
