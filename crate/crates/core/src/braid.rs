//! The vector-representation R-matrix, the braid operator `sigma = P R`, the
//! embedding `eta` of matrix algebras into the Cuntz algebra, braid elements
//! `theta_i` and the q-antisymmetric tensor `S_q`.

use std::collections::BTreeMap;

use crate::cuntz::{CuntzElement, Word};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::qscalar::QScalar;
use crate::uq::{act_generator, coproduct_rep, counit, LieData};

/// An endomorphism of `V^{(x)m}`, `V = Q(q)^d`. Multi-index `(i_1..i_m)`
/// (1-based) sits at row `sum (i_k - 1) d^{m-k}`, matching [`Matrix::kron`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoMatrix {
    d: usize,
    arity: usize,
    mat: Matrix,
}

impl EndoMatrix {
    pub fn new(d: usize, arity: usize, mat: Matrix) -> Result<Self> {
        let n = d.pow(arity as u32);
        if mat.rows() != n || mat.cols() != n {
            return Err(Error::DimensionMismatch(n, mat.rows()));
        }
        Ok(EndoMatrix { d, arity, mat })
    }

    pub fn identity(d: usize, arity: usize) -> Self {
        EndoMatrix { d, arity, mat: Matrix::identity(d.pow(arity as u32)) }
    }

    /// Matrix unit `e_{ij}` on `V` (1-based).
    pub fn unit(d: usize, i: usize, j: usize) -> Self {
        EndoMatrix { d, arity: 1, mat: Matrix::unit(d, i - 1, j - 1) }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn get(&self, row: &[u8], col: &[u8]) -> &QScalar {
        self.mat.get(self.flat(row), self.flat(col))
    }

    pub fn flat(&self, idx: &[u8]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.d + (i as usize - 1))
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<u8> {
        let mut out = vec![0u8; self.arity];
        for slot in out.iter_mut().rev() {
            *slot = (flat % self.d) as u8 + 1;
            flat /= self.d;
        }
        out
    }

    pub fn mul(&self, other: &EndoMatrix) -> Result<EndoMatrix> {
        self.same_shape(other)?;
        Ok(EndoMatrix { d: self.d, arity: self.arity, mat: self.mat.mul(&other.mat) })
    }

    pub fn add(&self, other: &EndoMatrix) -> Result<EndoMatrix> {
        self.same_shape(other)?;
        Ok(EndoMatrix { d: self.d, arity: self.arity, mat: self.mat.add(&other.mat) })
    }

    pub fn sub(&self, other: &EndoMatrix) -> Result<EndoMatrix> {
        self.same_shape(other)?;
        Ok(EndoMatrix { d: self.d, arity: self.arity, mat: self.mat.sub(&other.mat) })
    }

    pub fn scale(&self, c: &QScalar) -> EndoMatrix {
        EndoMatrix { d: self.d, arity: self.arity, mat: self.mat.scale(c) }
    }

    /// `self (x) other` on `V^{(x)(m+m')}`.
    pub fn tensor(&self, other: &EndoMatrix) -> Result<EndoMatrix> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch(self.d, other.d));
        }
        Ok(EndoMatrix { d: self.d, arity: self.arity + other.arity, mat: self.mat.kron(&other.mat) })
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    fn same_shape(&self, other: &EndoMatrix) -> Result<()> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch(self.d, other.d));
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        Ok(())
    }
}

fn check_d(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("d must be at least 2, got {d}")));
    }
    Ok(())
}

/// `R = sum q e_ii(x)e_ii + sum_{i!=j} e_ii(x)e_jj + (q - q^-1) sum_{i<j} e_ij(x)e_ji`.
pub fn rmatrix(d: usize) -> Result<EndoMatrix> {
    check_d(d)?;
    let mut m = Matrix::zeros(d * d, d * d);
    let qq = &QScalar::q() - &QScalar::q_pow(-1);
    for i in 0..d {
        for j in 0..d {
            let ij = i * d + j;
            m.set(ij, ij, if i == j { QScalar::q() } else { QScalar::one() });
            if i < j {
                // e_ij (x) e_ji maps e_j (x) e_i to e_i (x) e_j
                m.set(ij, j * d + i, qq.clone());
            }
        }
    }
    EndoMatrix::new(d, 2, m)
}

/// The flip `P(v (x) w) = w (x) v`.
pub fn flip(d: usize) -> EndoMatrix {
    let mut m = Matrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            m.set(i * d + j, j * d + i, QScalar::one());
        }
    }
    EndoMatrix { d, arity: 2, mat: m }
}

pub fn sigma(d: usize) -> Result<EndoMatrix> {
    flip(d).mul(&rmatrix(d)?)
}

/// Yang-Baxter identity `R12 R13 R23 = R23 R13 R12` for an arbitrary arity-2 matrix.
pub fn ybe_holds(r: &EndoMatrix) -> Result<bool> {
    if r.arity != 2 {
        return Err(Error::ArityMismatch { expected: 2, found: r.arity });
    }
    let d = r.d;
    let id = EndoMatrix::identity(d, 1);
    let r12 = r.tensor(&id)?;
    let r23 = id.tensor(r)?;
    let p23 = id.tensor(&flip(d))?;
    let r13 = p23.mul(&r12)?.mul(&p23)?;
    let lhs = r12.mul(&r13)?.mul(&r23)?;
    let rhs = r23.mul(&r13)?.mul(&r12)?;
    Ok(lhs == rhs)
}

pub fn ybe_check(d: usize) -> Result<bool> {
    ybe_holds(&rmatrix(d)?)
}

/// `rmatrix(d)` with its `(1,2),(1,2)` entry changed; must fail every identity.
pub fn perturbed_rmatrix(d: usize) -> Result<EndoMatrix> {
    let r = rmatrix(d)?;
    let mut m = r.mat.clone();
    let v = m.get(1, 1) + &QScalar::q();
    m.set(1, 1, v);
    EndoMatrix::new(d, 2, m)
}

/// `sigma` commutes with `(pi (x) pi) Delta(a)` for every generator `a`.
pub fn intertwiner_check(d: usize) -> Result<bool> {
    let g = LieData::sl(d)?;
    let s = sigma(d)?;
    for gen in g.generators() {
        let rho = coproduct_rep(&g, gen, 2)?;
        if s.mat.mul(&rho) != rho.mul(&s.mat) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Spectral data of `sigma`: the dimensions of the `q` and `-q^-1` eigenspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeReport {
    pub minimal_polynomial_ok: bool,
    pub dim_q: usize,
    pub dim_minus_q_inv: usize,
}

/// `(sigma - q)(sigma + q^-1) = 0` with neither factor vanishing alone.
pub fn hecke_check(d: usize) -> Result<HeckeReport> {
    let s = sigma(d)?.mat;
    let n = d * d;
    let id = Matrix::identity(n);
    let a = s.sub(&id.scale(&QScalar::q()));
    let b = s.add(&id.scale(&QScalar::q_pow(-1)));
    let ok = a.mul(&b).is_zero() && !a.is_zero() && !b.is_zero();
    Ok(HeckeReport {
        minimal_polynomial_ok: ok,
        dim_q: n - a.rank(),
        dim_minus_q_inv: n - b.rank(),
    })
}

/// `eta(T) = sum_{I,J} T_{IJ} s_{i_1}..s_{i_m} s*_{j_m}..s*_{j_1}`.
pub fn eta(m: usize, t: &EndoMatrix) -> Result<CuntzElement> {
    if t.arity != m {
        return Err(Error::ArityMismatch { expected: m, found: t.arity });
    }
    let terms = t
        .mat
        .nonzero_entries()
        .map(|(r, c, v)| (Word::new(t.multi_index(r), t.multi_index(c)), v.clone()))
        .collect::<Vec<_>>();
    CuntzElement::from_terms(t.d, terms)
}

/// `theta_i`, the image of the braid generator `b_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct BraidElement {
    pub i: usize,
    pub element: CuntzElement,
}

/// `theta_i = eta(1^{(x)(i-1)} (x) sigma)`, built directly on words so no
/// `d^{2(i+1)}` matrix is formed.
pub fn theta(d: usize, i: usize) -> Result<BraidElement> {
    if i == 0 {
        return Err(Error::InvalidParameter("strand index starts at 1".into()));
    }
    let s = sigma(d)?;
    let local: Vec<(Vec<u8>, Vec<u8>, QScalar)> = s
        .mat
        .nonzero_entries()
        .map(|(r, c, v)| (s.multi_index(r), s.multi_index(c), v.clone()))
        .collect();
    let mut prefixes: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 1..i {
        prefixes = prefixes
            .into_iter()
            .flat_map(|p| {
                (1..=d as u8).map(move |l| {
                    let mut p = p.clone();
                    p.push(l);
                    p
                })
            })
            .collect();
    }
    let mut terms = BTreeMap::new();
    for p in &prefixes {
        for (r, c, v) in &local {
            let mu = [p.as_slice(), r].concat();
            let nu = [p.as_slice(), c].concat();
            terms.insert(Word::new(mu, nu), v.clone());
        }
    }
    Ok(BraidElement { i, element: CuntzElement::from_terms(d, terms)? })
}

/// Basis of `{v in H^d : e_i o v = f_i o v = 0, k_i o v = v}`.
pub fn q_antisymmetric_space(d: usize) -> Result<Vec<CuntzElement>> {
    check_d(d)?;
    let g = LieData::sl(d)?;
    // Diagonal equations first: a word is a k-eigenvector, so k_i o v = v cuts
    // the span down to the words whose k-eigenvalues are all 1.
    let mut candidates = Vec::new();
    let total = d.pow(d as u32);
    for flat in 0..total {
        let mut idx = vec![0u8; d];
        let mut f = flat;
        for slot in idx.iter_mut().rev() {
            *slot = (f % d) as u8 + 1;
            f /= d;
        }
        let w = CuntzElement::from_word(d, Word::new(idx.clone(), vec![]), QScalar::one());
        let mut weight_zero = true;
        for gen in g.generators() {
            if counit(gen).is_zero() {
                continue;
            }
            if !act_generator(&g, gen, &w)?.equals(&w) {
                weight_zero = false;
                break;
            }
        }
        if weight_zero {
            candidates.push(Word::new(idx, vec![]));
        }
    }
    // Off-diagonal equations: every e_i, f_i image must vanish.
    let mut rows: BTreeMap<(usize, Word), Vec<QScalar>> = BTreeMap::new();
    let gens: Vec<_> = g.generators().into_iter().filter(|gen| counit(*gen).is_zero()).collect();
    for (col, w) in candidates.iter().enumerate() {
        let x = CuntzElement::from_word(d, w.clone(), QScalar::one());
        for (gi, gen) in gens.iter().enumerate() {
            for (ow, c) in act_generator(&g, *gen, &x)?.terms() {
                let row = rows
                    .entry((gi, ow.clone()))
                    .or_insert_with(|| vec![QScalar::zero(); candidates.len()]);
                row[col] += c;
            }
        }
    }
    let ns = if rows.is_empty() {
        (0..candidates.len())
            .map(|k| {
                let mut v = vec![QScalar::zero(); candidates.len()];
                v[k] = QScalar::one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(rows.into_values().collect()).nullspace()
    };
    ns.into_iter()
        .map(|v| CuntzElement::from_terms(d, candidates.iter().cloned().zip(v)))
        .collect()
}

/// The unique-up-to-scale q-antisymmetric tensor, normalized so that the
/// coefficient of `s_1 s_2 ... s_d` is 1.
pub fn q_antisymmetric(d: usize) -> Result<CuntzElement> {
    let space = q_antisymmetric_space(d)?;
    if space.len() != 1 {
        return Err(Error::Convention(format!(
            "q-antisymmetric solution space has dimension {}, expected 1",
            space.len()
        )));
    }
    let v = &space[0];
    let top = Word::new((1..=d as u8).collect(), vec![]);
    let c = v.coeff(&top);
    if c.is_zero() {
        return Err(Error::Convention("q-antisymmetric tensor misses s_1..s_d".into()));
    }
    Ok(v.scale(&c.inv()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_element;
    use crate::uq::is_fixed;
    use num_rational::BigRational;

    #[test]
    fn rmatrix_d2_shape() {
        let r = rmatrix(2).unwrap();
        let q = QScalar::q();
        let diag: Vec<QScalar> = (0..4).map(|i| r.matrix().get(i, i).clone()).collect();
        assert_eq!(diag, vec![q.clone(), QScalar::one(), QScalar::one(), q.clone()]);
        let off: Vec<_> = r.matrix().nonzero_entries().filter(|(i, j, _)| i != j).collect();
        assert_eq!(off.len(), 1);
        assert_eq!(*off[0].2, &q - &QScalar::q_pow(-1));
    }

    #[test]
    fn classical_limit_is_identity() {
        for d in 2..=4 {
            let r = rmatrix(d).unwrap();
            for (i, j, v) in r.matrix().nonzero_entries() {
                let at1 = v.eval(&BigRational::from_integer(1.into())).unwrap();
                let expect = if i == j { 1 } else { 0 };
                assert_eq!(at1, BigRational::from_integer(expect.into()));
            }
        }
    }

    #[test]
    fn ybe_and_control() {
        for d in 2..=3 {
            assert!(ybe_check(d).unwrap());
            assert!(!ybe_holds(&perturbed_rmatrix(d).unwrap()).unwrap());
        }
    }

    #[test]
    fn intertwiner_and_hecke() {
        assert!(intertwiner_check(2).unwrap());
        assert!(intertwiner_check(3).unwrap());
        let h = hecke_check(2).unwrap();
        assert!(h.minimal_polynomial_ok);
        assert_eq!((h.dim_q, h.dim_minus_q_inv), (3, 1));
    }

    #[test]
    fn eta_examples() {
        let x = eta(1, &EndoMatrix::unit(2, 1, 1)).unwrap();
        assert_eq!(x, parse_element("s1 s1*", 2).unwrap());
        let one = eta(1, &EndoMatrix::identity(2, 1)).unwrap();
        assert_eq!(one, CuntzElement::one(2));
        assert!(matches!(eta(2, &EndoMatrix::identity(2, 1)), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn theta_d2_value() {
        let t = theta(2, 1).unwrap().element;
        let expect = parse_element(
            "q s1 s1 s1* s1* + q s2 s2 s2* s2* + s2 s1 s2* s1* + s1 s2 s1* s2* + (q - q^-1) s2 s1 s1* s2*",
            2,
        )
        .unwrap();
        assert_eq!(t, expect);
        let s = sigma(2).unwrap();
        assert_eq!(eta(2, &s).unwrap(), t);
    }

    #[test]
    fn eta_is_multiplicative() {
        let s = sigma(2).unwrap();
        let r = rmatrix(2).unwrap();
        let prod = s.mul(&r).unwrap();
        let lhs = eta(2, &s).unwrap().try_mul(&eta(2, &r).unwrap()).unwrap();
        assert_eq!(lhs, eta(2, &prod).unwrap());
    }

    #[test]
    fn theta_shift_matches_tensor() {
        let s = sigma(2).unwrap();
        let t2 = EndoMatrix::identity(2, 1).tensor(&s).unwrap();
        assert_eq!(eta(3, &t2).unwrap(), theta(2, 2).unwrap().element);
    }

    #[test]
    fn braid_relations_d2() {
        let t: Vec<CuntzElement> = (1..=3).map(|i| theta(2, i).unwrap().element).collect();
        let m = |a: &CuntzElement, b: &CuntzElement| a.try_mul(b).unwrap();
        assert_eq!(m(&m(&t[0], &t[1]), &t[0]), m(&m(&t[1], &t[0]), &t[1]));
        assert_eq!(m(&t[0], &t[2]), m(&t[2], &t[0]));
    }

    #[test]
    fn theta_is_fixed() {
        let g = LieData::sl(2).unwrap();
        assert!(is_fixed(&g, &theta(2, 1).unwrap().element).unwrap());
        assert!(is_fixed(&g, &theta(2, 2).unwrap().element).unwrap());
        assert!(!is_fixed(&g, &eta(2, &rmatrix(2).unwrap()).unwrap()).unwrap());
    }

    #[test]
    fn sq_values() {
        assert_eq!(q_antisymmetric(2).unwrap(), parse_element("s1 s2 - q^-1 s2 s1", 2).unwrap());
        let s3 = q_antisymmetric(3).unwrap();
        assert_eq!(s3.num_terms(), 6);
        let g = LieData::sl(3).unwrap();
        assert!(is_fixed(&g, &s3).unwrap());
    }
}
