//! Dense univariate polynomials over the integers.
//!
//! Coefficient `i` is the coefficient of `q^i`. The zero polynomial is the
//! empty vector; otherwise the last coefficient is nonzero.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// True when the polynomial has exactly one nonzero coefficient.
    pub fn is_monomial(&self) -> bool {
        match self.valuation() {
            Some(v) => v + 1 == self.coeffs.len(),
            None => false,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = other.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiply by `q^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divide by `q^k`; the caller guarantees `k <= valuation`.
    pub fn shift_down(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        debug_assert!(self.valuation().is_none_or(|v| v >= k));
        Poly {
            coeffs: self.coeffs[k.min(self.coeffs.len())..].to_vec(),
        }
    }

    /// Non-negative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        g
    }

    /// Divide every coefficient exactly by `c`.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .map(|x| {
                    debug_assert!((x % c).is_zero());
                    x / c
                })
                .collect(),
        }
    }

    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() {
            return Self::zero();
        }
        self.div_scalar_exact(&c)
    }

    /// Pseudo-remainder of `self` by `divisor`: `lc(divisor)^k * self mod divisor`.
    pub fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("pseudo_rem by zero");
        let lc = divisor.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lr = r.leading().unwrap().clone();
            // r <- lc * r - lr * q^(dr-dd) * divisor
            r = r.scale(&lc).sub(&divisor.scale(&lr).shift_up(dr - dd));
        }
        r
    }

    /// Exact division in Z[q]; panics if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        if divisor.is_one() {
            return self.clone();
        }
        if divisor.is_monomial() {
            let k = divisor.valuation().unwrap();
            return self.shift_down(k).div_scalar_exact(divisor.leading().unwrap());
        }
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.leading().unwrap();
        let mut r = self.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while let Some(dr) = r.degree() {
            assert!(dr >= dd, "inexact polynomial division");
            let (c, rem) = r.leading().unwrap().div_rem(lc);
            assert!(rem.is_zero(), "inexact polynomial division");
            quot[dr - dd] = c.clone();
            r = r.sub(&divisor.scale(&c).shift_up(dr - dd));
        }
        Self::from_coeffs(quot)
    }

    /// Greatest common divisor in Z[q], normalized to a positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.with_positive_leading();
        }
        if other.is_zero() {
            return self.with_positive_leading();
        }
        let va = self.valuation().unwrap();
        let vb = other.valuation().unwrap();
        let a = self.shift_down(va);
        let b = other.shift_down(vb);
        let ca = a.content();
        let cb = b.content();
        let c = ca.gcd(&cb);
        let prim = if a.is_constant() || b.is_constant() {
            Poly::one()
        } else {
            primitive_prs_gcd(a.div_scalar_exact(&ca), b.div_scalar_exact(&cb))
        };
        prim.scale(&c).shift_up(va.min(vb))
    }

    pub fn with_positive_leading(&self) -> Self {
        match self.leading() {
            Some(l) if l.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn eval(&self, point: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * point + BigRational::from_integer(c.clone());
        }
        acc
    }
}

fn primitive_prs_gcd(mut a: Poly, mut b: Poly) -> Poly {
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.pseudo_rem(&b);
        a = b;
        b = r.primitive_part();
    }
    a.primitive_part().with_positive_leading()
}

impl fmt::Display for Poly {
    /// Descending powers, `*` between coefficient and power, e.g. `3*q^2 - q + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(i64, &BigInt)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64, c))
            .collect();
        write_laurent(f, &terms)
    }
}

/// Writes `sum c_k q^k` for terms given in descending exponent order.
pub(crate) fn write_laurent(f: &mut impl fmt::Write, terms: &[(i64, &BigInt)]) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (idx, (exp, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if idx == 0 {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        let mag = c.abs();
        match (*exp, mag.is_one()) {
            (0, _) => write!(f, "{}", mag)?,
            (e, true) => write_power(f, e)?,
            (e, false) => {
                write!(f, "{}*", mag)?;
                write_power(f, e)?;
            }
        }
    }
    Ok(())
}

fn write_power(f: &mut impl fmt::Write, e: i64) -> fmt::Result {
    if e == 1 {
        f.write_str("q")
    } else {
        write!(f, "q^{}", e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (q^2 - 1) and (q^2 + 2q + 1) share q + 1
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
    }

    #[test]
    fn gcd_keeps_content_and_q_power() {
        let a = p(&[0, 0, 4, 4]); // 4q^2(q+1)
        let b = p(&[0, 6, 6]); // 6q(q+1)
        assert_eq!(a.gcd(&b), p(&[0, 2, 2]));
    }

    #[test]
    fn exact_division_round_trip() {
        let a = p(&[1, -3, 0, 2]);
        let b = p(&[2, 0, 5]);
        assert_eq!(a.mul(&b).div_exact(&b), a);
    }

    #[test]
    fn display_descending() {
        assert_eq!(p(&[1, -1, 3]).to_string(), "3*q^2 - q + 1");
        assert_eq!(p(&[]).to_string(), "0");
        assert_eq!(p(&[0, -1]).to_string(), "-q");
    }
}
