//! Quantum determinant, reduction modulo `det_q = 1`, and the antipode.
//!
//! Modulo `det_q - 1` the normal monomials are the PBW monomials that do not
//! contain every diagonal generator `u_11, ..., u_dd`. A monomial `m = D m'`
//! with `D` the diagonal product is replaced using `det_q m' = m'`: the
//! straightened `det_q m'` is `c m` plus terms of the same degree and strictly
//! larger off-diagonal weight, so the recursion terminates and the result is
//! canonical.

use std::collections::HashMap;
use std::sync::Arc;

use super::frt::{accumulate, frt_rules, FrtSystem, Gen, Lin, Mono};
use super::QMatElement;
use crate::braid::q_antisymmetric;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::qscalar::QScalar;

impl FrtSystem {
    /// `det_q`, read off the coaction of `S_q`; cached.
    pub(crate) fn qdet_lin(&self) -> Result<&Lin> {
        self.qdet
            .get_or_init(|| compute_qdet(self))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn strip_diagonal(&self, m: &[Gen]) -> Option<Mono> {
        let mut rest = m.to_vec();
        for c in 1..=self.d as u8 {
            let p = rest.iter().position(|&g| g == (c, c))?;
            rest.remove(p);
        }
        Some(rest)
    }

    /// Normal form of a PBW monomial modulo `det_q - 1`.
    pub(crate) fn reduce_mono(&self, m: &[Gen]) -> Result<Arc<Lin>> {
        let Some(rest) = self.strip_diagonal(m) else {
            return Ok(Arc::new(vec![(m.to_vec(), QScalar::one())]));
        };
        if let Some(hit) = self.red_memo.lock().expect("poisoned").get(m) {
            return Ok(hit.clone());
        }
        let qd = self.qdet_lin()?.clone();
        let mut s = self.mul_lin(qd.iter().map(|(k, c)| (k, c)), &[(rest.clone(), QScalar::one())]);
        let lead = s
            .remove(m)
            .ok_or_else(|| Error::Convention("det_q does not reach its leading monomial".into()))?;
        let mut acc: HashMap<Mono, QScalar> = HashMap::new();
        for (t, c) in self.reduce_mono(&rest)?.iter() {
            accumulate(&mut acc, t.clone(), c.clone());
        }
        for (t, ct) in s {
            for (u, cu) in self.reduce_mono(&t)?.iter() {
                accumulate(&mut acc, u.clone(), -(&ct * cu));
            }
        }
        let inv = lead.inv()?;
        let out: Lin = acc.into_iter().map(|(k, c)| (k, &c * &inv)).collect();
        let out = Arc::new(out);
        self.red_memo.lock().expect("poisoned").insert(m.to_vec(), out.clone());
        Ok(out)
    }

    pub(crate) fn reduce_map(&self, x: HashMap<Mono, QScalar>) -> Result<HashMap<Mono, QScalar>> {
        let mut acc = HashMap::new();
        for (m, c) in x {
            for (t, ct) in self.reduce_mono(&m)?.iter() {
                accumulate(&mut acc, t.clone(), &c * ct);
            }
        }
        Ok(acc)
    }

    pub(crate) fn antipode_matrix(&self) -> Result<&Vec<Vec<QMatElement>>> {
        self.antipode
            .get_or_init(|| compute_antipode(self))
            .as_ref()
            .map_err(Clone::clone)
    }
}

fn compute_qdet(sys: &FrtSystem) -> Result<Lin> {
    let d = sys.d;
    let sq = q_antisymmetric(d)?;
    // omega(s_I) = sum_J s_J (x) u_{j1 i1} ... u_{jd id}
    let leg = |j: &[u8]| -> HashMap<Mono, QScalar> {
        let mut acc = HashMap::new();
        for (w, c) in sq.terms() {
            let word: Mono = j.iter().zip(w.mu()).map(|(&a, &b)| (a, b)).collect();
            for (m, cm) in sys.straighten(&word) {
                accumulate(&mut acc, m, c * &cm);
            }
        }
        acc
    };
    let top: Vec<u8> = (1..=d as u8).collect();
    let det = leg(&top);
    let det_el = QMatElement::from_map(d, det.clone());
    // The O_d leg must be exactly S_q (x) det: check every output word.
    let total = d.pow(d as u32);
    for flat in 0..total {
        let mut j = vec![0u8; d];
        let mut f = flat;
        for slot in j.iter_mut().rev() {
            *slot = (f % d) as u8 + 1;
            f /= d;
        }
        let c = sq.coeff(&crate::cuntz::Word::new(j.clone(), vec![]));
        let g = QMatElement::from_map(d, leg(&j));
        if g != det_el.scale(&c) {
            return Err(Error::Convention(format!(
                "coaction of S_q is not proportional to S_q at output word {j:?}"
            )));
        }
    }
    let mut lin: Lin = det.into_iter().collect();
    lin.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(lin)
}

fn permutations(items: &[u8]) -> Vec<Vec<u8>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (k, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Solves `U X = I` column by column with `X_kj` supported on monomials whose
/// rows are `{1..d} \ {j}` and columns are `{1..d} \ {k}`.
fn compute_antipode(sys: &FrtSystem) -> Result<Vec<Vec<QMatElement>>> {
    let d = sys.d;
    let all: Vec<u8> = (1..=d as u8).collect();
    let mut x = vec![vec![QMatElement::zero(d); d]; d];
    for j in 1..=d as u8 {
        let rows: Vec<u8> = all.iter().copied().filter(|&r| r != j).collect();
        let mut unknowns: Vec<(u8, Mono)> = Vec::new();
        for k in 1..=d as u8 {
            let cols: Vec<u8> = all.iter().copied().filter(|&c| c != k).collect();
            for p in permutations(&cols) {
                unknowns.push((k, rows.iter().copied().zip(p).collect()));
            }
        }
        // Equation rows indexed by (i, normal monomial).
        let mut eqs: HashMap<(u8, Mono), Vec<QScalar>> = HashMap::new();
        let n = unknowns.len();
        for (col, (k, mono)) in unknowns.iter().enumerate() {
            for i in 1..=d as u8 {
                let prod = sys.mul_mono(&[(i, *k)], mono);
                for (m, c) in sys.reduce_map(prod)? {
                    let row = eqs.entry((i, m)).or_insert_with(|| vec![QScalar::zero(); n + 1]);
                    row[col] += &c;
                }
            }
        }
        let unit_row = (j, Vec::new());
        eqs.entry(unit_row.clone()).or_insert_with(|| vec![QScalar::zero(); n + 1])[n] = QScalar::one();
        let mut keys: Vec<_> = eqs.keys().cloned().collect();
        keys.sort();
        let m = Matrix::from_rows(keys.iter().map(|k| eqs[k].clone()).collect());
        let (r, pivots) = m.rref();
        if pivots.contains(&n) {
            return Err(Error::Convention(format!("U X = I has no solution in column {j}")));
        }
        let mut sol = vec![QScalar::zero(); n];
        for (row, &p) in pivots.iter().enumerate() {
            sol[p] = r.get(row, n).clone();
        }
        for (col, (k, mono)) in unknowns.iter().enumerate() {
            if !sol[col].is_zero() {
                let t = QMatElement::from_lin(d, &[(mono.clone(), sol[col].clone())]);
                let cur = &x[*k as usize - 1][j as usize - 1];
                x[*k as usize - 1][j as usize - 1] = cur.add(&t)?;
            }
        }
    }
    Ok(x)
}

/// `det_q U`, normalized so that its coefficient on `u_11 ... u_dd` is 1.
pub fn qdet(d: usize) -> Result<QMatElement> {
    let sys = frt_rules(d)?;
    Ok(QMatElement::from_lin(d, sys.qdet_lin()?))
}

/// Normal form modulo the ideal generated by `det_q - 1`.
pub fn sl_quotient_reduce(x: &QMatElement) -> Result<QMatElement> {
    let sys = frt_rules(x.d())?;
    let map = x.to_lin().into_iter().collect();
    Ok(QMatElement::from_map(x.d(), sys.reduce_map(map)?))
}

/// Product followed by reduction modulo `det_q - 1`.
pub fn reduced_mul(x: &QMatElement, y: &QMatElement) -> Result<QMatElement> {
    sl_quotient_reduce(&x.mul(y)?)
}

/// `gamma_0(u_ij) = (U^{-1})_ij` in the reduced algebra.
pub fn antipode_u(d: usize, i: u8, j: u8) -> Result<QMatElement> {
    if i == 0 || j == 0 || i as usize > d || j as usize > d {
        return Err(Error::IndexOutOfRange(format!("antipode index ({i},{j}) outside 1..={d}")));
    }
    let sys = frt_rules(d)?;
    Ok(sys.antipode_matrix()?[i as usize - 1][j as usize - 1].clone())
}

/// Both `U gamma_0(U)` and `gamma_0(U) U` equal the identity after reduction.
pub fn antipode_check(d: usize) -> Result<bool> {
    let sys = frt_rules(d)?;
    let x = sys.antipode_matrix()?;
    for i in 1..=d as u8 {
        for j in 1..=d as u8 {
            let mut left = QMatElement::zero(d);
            let mut right = QMatElement::zero(d);
            for k in 1..=d as u8 {
                let u_ik = QMatElement::generator(d, i, k)?;
                let u_kj = QMatElement::generator(d, k, j)?;
                left = left.add(&reduced_mul(&u_ik, &x[k as usize - 1][j as usize - 1])?)?;
                right = right.add(&reduced_mul(&x[i as usize - 1][k as usize - 1], &u_kj)?)?;
            }
            let expect = if i == j { QMatElement::one(d) } else { QMatElement::zero(d) };
            if left != expect || right != expect {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmatrix::UMonomial;

    #[test]
    fn qdet_d2() {
        let det = qdet(2).unwrap();
        assert_eq!(det.num_terms(), 2);
        assert!(det.coeff(&UMonomial::new(vec![(1, 1), (2, 2)])).is_one());
        assert_eq!(det.coeff(&UMonomial::new(vec![(1, 2), (2, 1)])), -QScalar::q_pow(-1));
    }

    #[test]
    fn qdet_reduces_to_one_and_is_central() {
        for d in 2..=3 {
            let det = qdet(d).unwrap();
            assert!(sl_quotient_reduce(&det).unwrap().is_one());
            for i in 1..=d as u8 {
                for j in 1..=d as u8 {
                    let u = QMatElement::generator(d, i, j).unwrap();
                    assert_eq!(det.mul(&u).unwrap(), u.mul(&det).unwrap());
                }
            }
            let u11 = QMatElement::generator(d, 1, 1).unwrap();
            assert_eq!(reduced_mul(&det, &u11).unwrap(), u11);
        }
    }

    #[test]
    fn low_degree_unchanged() {
        let x = QMatElement::from_word(3, &[(1, 1), (2, 2)], QScalar::q()).unwrap();
        assert_eq!(sl_quotient_reduce(&x).unwrap(), x);
    }

    #[test]
    fn antipode_d2_d3() {
        assert_eq!(antipode_u(2, 1, 1).unwrap(), QMatElement::generator(2, 2, 2).unwrap());
        assert!(antipode_check(2).unwrap());
        assert!(antipode_check(3).unwrap());
    }
}
