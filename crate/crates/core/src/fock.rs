//! An independent oracle: the Cuntz algebra acting on `l^2(N)` by d-adic digit
//! coding, with coefficients evaluated at exact rational points `q = p`.
//!
//! `s_i e_n = e_{dn + i - 1}` and `s_i^* e_m = e_{(m - i + 1)/d}` when
//! `m = i - 1 (mod d)`, else 0. Since `O_d` is simple, the representation is
//! faithful, so symbolic equality must imply equality here.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::cuntz::{CuntzElement, Letter, Word};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    d: usize,
    basis_bound: u128,
    q_points: Vec<BigRational>,
}

impl OracleConfig {
    pub fn new(d: usize, basis_bound: u128, q_points: Vec<BigRational>) -> Result<Self> {
        if q_points.is_empty() {
            return Err(Error::InvalidParameter("oracle needs at least one q point".into()));
        }
        for p in &q_points {
            if p.is_zero() || p.abs().is_one() {
                return Err(Error::InvalidParameter(format!("q point {p} must avoid 0 and +-1")));
            }
        }
        if basis_bound < d as u128 {
            return Err(Error::InvalidParameter(format!("basis bound {basis_bound} below d = {d}")));
        }
        Ok(OracleConfig { d, basis_bound, q_points })
    }

    /// `n_points` random rationals in `(1, 3)` with denominators at most 7.
    pub fn random_points(n_points: usize, rng: &mut impl Rng) -> Vec<BigRational> {
        (0..n_points)
            .map(|_| {
                let den: i64 = rng.gen_range(2..=7);
                let num: i64 = rng.gen_range(den + 1..3 * den);
                BigRational::new(BigInt::from(num), BigInt::from(den))
            })
            .collect()
    }

    /// A configuration whose basis bound covers every image produced when
    /// `x` is applied to the tested basis range.
    pub fn for_element(x: &CuntzElement, q_points: Vec<BigRational>) -> Result<Self> {
        let bound = required_bound(x)?;
        Self::new(x.d(), bound, q_points)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn basis_bound(&self) -> u128 {
        self.basis_bound
    }

    pub fn q_points(&self) -> &[BigRational] {
        &self.q_points
    }
}

/// `d^{m+1+r}` with `m` the co-length and `r` the longest `s`-part. Taken on
/// the raw terms: cancellation can make the leveled form shorter than them.
pub fn required_bound(x: &CuntzElement) -> Result<u128> {
    let m = x.max_co_length();
    let r = x.terms().map(|(w, _)| w.mu().len()).max().unwrap_or(0);
    (x.d() as u128)
        .checked_pow((m + 1 + r) as u32)
        .ok_or_else(|| Error::InvalidParameter("basis bound overflows".into()))
}

/// Image of `e_n` under the word, or `None` when it is annihilated.
pub fn rep_word(cfg: &OracleConfig, w: &Word, n: u128) -> Result<Option<u128>> {
    if n >= cfg.basis_bound {
        return Err(Error::BasisOutOfRange { index: n, bound: cfg.basis_bound });
    }
    if w.max_index() as usize > cfg.d {
        return Err(Error::IndexOutOfRange(format!("word {w} uses an index above d = {}", cfg.d)));
    }
    let d = cfg.d as u128;
    let letters: Vec<Letter> = w.letters().collect();
    let mut cur = n;
    for l in letters.into_iter().rev() {
        match l {
            Letter::S(i) => {
                cur = d * cur + (i as u128 - 1);
                if cur >= cfg.basis_bound {
                    return Err(Error::BasisOutOfRange { index: cur, bound: cfg.basis_bound });
                }
            }
            Letter::Star(i) => {
                if cur % d != i as u128 - 1 {
                    return Ok(None);
                }
                cur /= d;
            }
        }
    }
    Ok(Some(cur))
}

/// True iff `x` annihilates `e_0 .. e_{d^{m+1}-1}` at every sampled `q`.
pub fn oracle_is_zero(cfg: &OracleConfig, x: &CuntzElement) -> Result<bool> {
    if x.d() != cfg.d {
        return Err(Error::DimensionMismatch(cfg.d, x.d()));
    }
    let m = x.max_co_length();
    let range = (cfg.d as u128)
        .checked_pow(m as u32 + 1)
        .ok_or_else(|| Error::InvalidParameter("basis range overflows".into()))?;
    if range > cfg.basis_bound {
        return Err(Error::InvalidParameter(format!(
            "basis bound {} below the required range {range}",
            cfg.basis_bound
        )));
    }
    for p in &cfg.q_points {
        let coeffs: Vec<(&Word, BigRational)> = x
            .terms()
            .map(|(w, c)| c.eval(p).map(|v| (w, v)))
            .collect::<Result<_>>()?;
        for n in 0..range {
            let mut image: HashMap<u128, BigRational> = HashMap::new();
            for (w, c) in &coeffs {
                if let Some(k) = rep_word(cfg, w, n)? {
                    *image.entry(k).or_insert_with(BigRational::zero) += c;
                }
            }
            if image.values().any(|v| !v.is_zero()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `s_i^* s_j e_n = delta_ij e_n` and `sum_i s_i s_i^* e_n = e_n` for `n < N/d`.
pub fn representation_axioms_hold(cfg: &OracleConfig) -> Result<bool> {
    let d = cfg.d as u8;
    for n in 0..cfg.basis_bound / cfg.d as u128 {
        for i in 1..=d {
            for j in 1..=d {
                let k = rep_word(cfg, &Word::new(vec![j], vec![]), n)?.expect("s_j is injective");
                let img = rep_word(cfg, &Word::new(vec![], vec![i]), k)?;
                let expect = (i == j).then_some(n);
                if img != expect {
                    return Ok(false);
                }
            }
        }
        let hits: Vec<u128> = (1..=d)
            .filter_map(|i| rep_word(cfg, &Word::new(vec![i], vec![i]), n).transpose())
            .collect::<Result<_>>()?;
        if hits != vec![n] {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::theta;
    use crate::parse::parse_element;

    fn cfg(d: usize, n: u128) -> OracleConfig {
        let pts = vec![BigRational::new(3.into(), 2.into()), BigRational::new(5.into(), 3.into())];
        OracleConfig::new(d, n, pts).unwrap()
    }

    #[test]
    fn coding_rule() {
        let c = cfg(2, 64);
        assert_eq!(rep_word(&c, &Word::new(vec![1], vec![]), 0).unwrap(), Some(0));
        assert_eq!(rep_word(&c, &Word::new(vec![2], vec![]), 0).unwrap(), Some(1));
        assert_eq!(rep_word(&c, &Word::new(vec![], vec![1]), 1).unwrap(), None);
        assert!(matches!(
            rep_word(&c, &Word::new(vec![2, 2, 2, 2, 2, 2, 2], vec![]), 1),
            Err(Error::BasisOutOfRange { .. })
        ));
        assert!(representation_axioms_hold(&c).unwrap());
    }

    #[test]
    fn zero_examples() {
        let x = parse_element("s1 s1* + s2 s2*", 2).unwrap().try_sub(&CuntzElement::one(2)).unwrap();
        let c = cfg(2, 1 << 12);
        assert!(oracle_is_zero(&c, &x).unwrap());
        let t1 = theta(2, 1).unwrap().element;
        let t2 = theta(2, 2).unwrap().element;
        let lhs = t1.try_mul(&t2).unwrap().try_mul(&t1).unwrap();
        let rhs = t2.try_mul(&t1).unwrap().try_mul(&t2).unwrap();
        let diff = lhs.try_sub(&rhs).unwrap();
        let c = OracleConfig::for_element(&diff, cfg(2, 2).q_points().to_vec()).unwrap();
        assert!(oracle_is_zero(&c, &diff).unwrap());
        assert!(!oracle_is_zero(&cfg(2, 1 << 12), &parse_element("s1 - s2", 2).unwrap()).unwrap());
    }

    #[test]
    fn rejects_bad_points() {
        assert!(OracleConfig::new(2, 8, vec![BigRational::one()]).is_err());
        assert!(OracleConfig::new(2, 8, vec![]).is_err());
    }
}
