//! `U_q(sl_n)`: generators, the vector representation, Hopf structure, and
//! the module-algebra action on the Cuntz algebra.
//!
//! Elements of `U_q` are only ever handled as words in the generators. The
//! action of a word is the composition of generator actions, and the
//! fixed-point test checks generators only: the counit is multiplicative and
//! the action is a left module action, so `a o x = eps(a) x` for all
//! generators `a` implies it for every word.

use std::fmt;

use crate::cuntz::{CuntzElement, Letter, Word};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::qscalar::{gauss_binomial, QScalar};

/// Image of a `U_q` element under the `d`-dimensional vector representation.
pub type RepMatrix = Matrix;

/// Cartan data of `sl_n`; the vector representation has dimension `d = n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieData {
    n: usize,
    cartan: Vec<Vec<i64>>,
}

impl LieData {
    pub fn sl(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("sl_n needs n >= 2, got {n}")));
        }
        let r = n - 1;
        let cartan = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        Ok(LieData { n, cartan })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the vector representation.
    pub fn d(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    /// Cartan entry `a_ij` for 1-based simple root indices.
    pub fn cartan(&self, i: u8, j: u8) -> i64 {
        self.cartan[i as usize - 1][j as usize - 1]
    }

    /// Every generator `e_i, f_i, k_i, k_i^-1`.
    pub fn generators(&self) -> Vec<UqGenerator> {
        (1..=self.rank() as u8)
            .flat_map(|i| {
                [GenKind::E, GenKind::F, GenKind::K, GenKind::KInv]
                    .into_iter()
                    .map(move |kind| UqGenerator { kind, index: i })
            })
            .collect()
    }

    /// All words of length at most `max_len` over [`LieData::generators`].
    pub fn words_up_to(&self, max_len: usize) -> Vec<UqWord> {
        let gens = self.generators();
        let mut out = vec![UqWord::unit()];
        let mut layer = vec![UqWord::unit()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for g in &gens {
                    let mut f = w.factors.clone();
                    f.push(*g);
                    next.push(UqWord { factors: f });
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    fn check_gen(&self, g: UqGenerator) -> Result<()> {
        if g.index == 0 || g.index as usize > self.rank() {
            return Err(Error::IndexOutOfRange(format!(
                "generator {g} outside 1..={}",
                self.rank()
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum GenKind {
    E,
    F,
    K,
    KInv,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct UqGenerator {
    pub kind: GenKind,
    pub index: u8,
}

impl UqGenerator {
    pub fn e(i: u8) -> Self {
        UqGenerator { kind: GenKind::E, index: i }
    }
    pub fn f(i: u8) -> Self {
        UqGenerator { kind: GenKind::F, index: i }
    }
    pub fn k(i: u8) -> Self {
        UqGenerator { kind: GenKind::K, index: i }
    }
    pub fn k_inv(i: u8) -> Self {
        UqGenerator { kind: GenKind::KInv, index: i }
    }

    pub fn counit(&self) -> QScalar {
        counit(*self)
    }
}

impl fmt::Display for UqGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::E => write!(f, "e{}", self.index),
            GenKind::F => write!(f, "f{}", self.index),
            GenKind::K => write!(f, "k{}", self.index),
            GenKind::KInv => write!(f, "k{}^-1", self.index),
        }
    }
}

/// A word `g_1 g_2 ... g_L` in the generators; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct UqWord {
    factors: Vec<UqGenerator>,
}

impl UqWord {
    pub fn new(factors: Vec<UqGenerator>) -> Self {
        UqWord { factors }
    }

    pub fn unit() -> Self {
        UqWord::default()
    }

    pub fn factors(&self) -> &[UqGenerator] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn counit(&self) -> QScalar {
        if self.factors.iter().any(|g| matches!(g.kind, GenKind::E | GenKind::F)) {
            QScalar::zero()
        } else {
            QScalar::one()
        }
    }
}

impl fmt::Display for UqWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// `pi(gen)`: `e_i -> E_{i,i+1}`, `f_i -> E_{i+1,i}`, `k_i -> diag(.., q, q^-1, ..)`.
pub fn rep_vector(g: &LieData, gen: UqGenerator) -> Result<RepMatrix> {
    g.check_gen(gen)?;
    let d = g.d();
    let i = gen.index as usize - 1;
    Ok(match gen.kind {
        GenKind::E => Matrix::unit(d, i, i + 1),
        GenKind::F => Matrix::unit(d, i + 1, i),
        GenKind::K | GenKind::KInv => {
            let s = if gen.kind == GenKind::K { 1 } else { -1 };
            let mut diag = vec![QScalar::one(); d];
            diag[i] = QScalar::q_pow(s);
            diag[i + 1] = QScalar::q_pow(-s);
            Matrix::diagonal(diag)
        }
    })
}

/// `pi(a)` for a word: the ordered product of generator images.
pub fn rep_word(g: &LieData, a: &UqWord) -> Result<RepMatrix> {
    let mut acc = Matrix::identity(g.d());
    for &gen in &a.factors {
        acc = acc.mul(&rep_vector(g, gen)?);
    }
    Ok(acc)
}

/// One tensor factor of a coproduct term; `None` is the unit.
pub type CoFactor = Option<UqGenerator>;

/// `Delta(gen)` as a list of `(left, right)` factor pairs.
pub fn coproduct_apply(gen: UqGenerator) -> Vec<(CoFactor, CoFactor)> {
    let i = gen.index;
    match gen.kind {
        GenKind::E => vec![(Some(gen), Some(UqGenerator::k(i))), (None, Some(gen))],
        GenKind::F => vec![(Some(gen), None), (Some(UqGenerator::k_inv(i)), Some(gen))],
        GenKind::K | GenKind::KInv => vec![(Some(gen), Some(gen))],
    }
}

pub fn counit(gen: UqGenerator) -> QScalar {
    match gen.kind {
        GenKind::E | GenKind::F => QScalar::zero(),
        GenKind::K | GenKind::KInv => QScalar::one(),
    }
}

/// `pi(gamma(gen))` with `gamma(e) = -e k^-1`, `gamma(f) = -k f`, `gamma(k^+-1) = k^-+1`.
pub fn antipode_rep(g: &LieData, gen: UqGenerator) -> Result<RepMatrix> {
    let i = gen.index;
    let m = match gen.kind {
        GenKind::E => rep_vector(g, gen)?.mul(&rep_vector(g, UqGenerator::k_inv(i))?),
        GenKind::F => rep_vector(g, UqGenerator::k(i))?.mul(&rep_vector(g, gen)?),
        GenKind::K => return rep_vector(g, UqGenerator::k_inv(i)),
        GenKind::KInv => return rep_vector(g, UqGenerator::k(i)),
    };
    Ok(m.scale(&QScalar::from_int(-1)))
}

/// `pi(gamma(a))` for a word: `gamma` reverses products.
pub fn antipode_rep_word(g: &LieData, a: &UqWord) -> Result<RepMatrix> {
    let mut acc = Matrix::identity(g.d());
    for &gen in a.factors.iter().rev() {
        acc = acc.mul(&antipode_rep(g, gen)?);
    }
    Ok(acc)
}

/// `pi^{(x)m} Delta^{(m-1)}(gen)`, the generator acting on `V^{(x)m}`.
pub fn coproduct_rep(g: &LieData, gen: UqGenerator, m: usize) -> Result<Matrix> {
    let d = g.d();
    let id = Matrix::identity(d);
    let p = rep_vector(g, gen)?;
    let kron_all = |fs: Vec<Matrix>| {
        fs.into_iter()
            .reduce(|a, b| a.kron(&b))
            .unwrap_or_else(|| Matrix::identity(1))
    };
    Ok(match gen.kind {
        GenKind::K | GenKind::KInv => kron_all(vec![p; m]),
        GenKind::E => {
            let k = rep_vector(g, UqGenerator::k(gen.index))?;
            let mut acc = Matrix::zeros(d.pow(m as u32), d.pow(m as u32));
            for pos in 0..m {
                let fs = (0..m)
                    .map(|t| match t.cmp(&pos) {
                        std::cmp::Ordering::Less => id.clone(),
                        std::cmp::Ordering::Equal => p.clone(),
                        std::cmp::Ordering::Greater => k.clone(),
                    })
                    .collect();
                acc = acc.add(&kron_all(fs));
            }
            acc
        }
        GenKind::F => {
            let kinv = rep_vector(g, UqGenerator::k_inv(gen.index))?;
            let mut acc = Matrix::zeros(d.pow(m as u32), d.pow(m as u32));
            for pos in 0..m {
                let fs = (0..m)
                    .map(|t| match t.cmp(&pos) {
                        std::cmp::Ordering::Less => kinv.clone(),
                        std::cmp::Ordering::Equal => p.clone(),
                        std::cmp::Ordering::Greater => id.clone(),
                    })
                    .collect();
                acc = acc.add(&kron_all(fs));
            }
            acc
        }
    })
}

/// Outcome of one named identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Default)]
pub struct RelationsReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationsReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn record(&mut self, name: String, pass: bool) {
        self.checks.push(RelationCheck { name, pass });
    }
}

/// Verifies the defining relations of `U_q(sl_n)` as matrix identities under
/// `pi` (`depth = 1`) or `(pi (x) pi) Delta` (`depth = 2`).
pub fn rep_relations_check(g: &LieData, depth: usize) -> Result<RelationsReport> {
    if !(1..=2).contains(&depth) {
        return Err(Error::InvalidParameter(format!("depth must be 1 or 2, got {depth}")));
    }
    let r = g.rank() as u8;
    let rho = |gen: UqGenerator| coproduct_rep(g, gen, depth);
    let dim = g.d().pow(depth as u32);
    let id = Matrix::identity(dim);
    let qq = &QScalar::q() - &QScalar::q_pow(-1);
    let mut report = RelationsReport::default();

    for i in 1..=r {
        let (e, f, k, ki) = (
            rho(UqGenerator::e(i))?,
            rho(UqGenerator::f(i))?,
            rho(UqGenerator::k(i))?,
            rho(UqGenerator::k_inv(i))?,
        );
        report.record(format!("k{i} k{i}^-1 = 1"), k.mul(&ki) == id && ki.mul(&k) == id);
        for j in 1..=r {
            let (ej, fj, kj) = (
                rho(UqGenerator::e(j))?,
                rho(UqGenerator::f(j))?,
                rho(UqGenerator::k(j))?,
            );
            let a = g.cartan(i, j);
            report.record(format!("k{i} k{j} = k{j} k{i}"), k.mul(&kj) == kj.mul(&k));
            report.record(
                format!("k{i} e{j} k{i}^-1 = q^{a} e{j}"),
                k.mul(&ej).mul(&ki) == ej.scale(&QScalar::q_pow(a)),
            );
            report.record(
                format!("k{i} f{j} k{i}^-1 = q^{} f{j}", -a),
                k.mul(&fj).mul(&ki) == fj.scale(&QScalar::q_pow(-a)),
            );
            let comm = e.mul(&fj).sub(&fj.mul(&e));
            let rhs = if i == j {
                k.sub(&ki).scale(&qq.inv()?)
            } else {
                Matrix::zeros(dim, dim)
            };
            report.record(format!("[e{i}, f{j}]"), comm == rhs);
            if i != j {
                let top = (1 - a) as u32;
                let serre = |x: &Matrix, y: &Matrix| -> Result<bool> {
                    let mut acc = Matrix::zeros(dim, dim);
                    for t in 0..=top {
                        let c = gauss_binomial(top, t)?;
                        let c = if t % 2 == 1 { -c } else { c };
                        let term = mat_pow(x, t, dim).mul(y).mul(&mat_pow(x, top - t, dim));
                        acc = acc.add(&term.scale(&c));
                    }
                    Ok(acc.is_zero())
                };
                report.record(format!("Serre e{i}, e{j}"), serre(&e, &ej)?);
                report.record(format!("Serre f{i}, f{j}"), serre(&f, &fj)?);
            }
        }
    }
    Ok(report)
}

fn mat_pow(m: &Matrix, k: u32, dim: usize) -> Matrix {
    (0..k).fold(Matrix::identity(dim), |acc, _| acc.mul(m))
}

/// Per-generator data used by the action on letters.
struct LetterAction {
    /// `pi(a)`; column `i` gives `a o s_i`.
    rep: Matrix,
    /// `pi(gamma(a))`; row `i` gives `a o s_i^*`.
    anti: Matrix,
}

impl LetterAction {
    fn new(g: &LieData, gen: UqGenerator) -> Result<Self> {
        Ok(LetterAction {
            rep: rep_vector(g, gen)?,
            anti: antipode_rep(g, gen)?,
        })
    }

    /// `(letter', coefficient)` pairs of `a o letter`.
    fn apply(&self, l: Letter, d: usize) -> Vec<(Letter, QScalar)> {
        match l {
            Letter::S(i) => (0..d)
                .filter_map(|j| {
                    let c = self.rep.get(j, i as usize - 1);
                    (!c.is_zero()).then(|| (Letter::S(j as u8 + 1), c.clone()))
                })
                .collect(),
            Letter::Star(i) => (0..d)
                .filter_map(|j| {
                    let c = self.anti.get(i as usize - 1, j);
                    (!c.is_zero()).then(|| (Letter::Star(j as u8 + 1), c.clone()))
                })
                .collect(),
        }
    }

    /// Eigenvalue of a diagonal generator on a letter.
    fn diagonal(&self, l: Letter) -> QScalar {
        match l {
            Letter::S(i) => self.rep.get(i as usize - 1, i as usize - 1).clone(),
            Letter::Star(i) => self.anti.get(i as usize - 1, i as usize - 1).clone(),
        }
    }
}

/// `gen o x`, extended from letters by the twisted Leibniz rule of `Delta`.
pub fn act_generator(g: &LieData, gen: UqGenerator, x: &CuntzElement) -> Result<CuntzElement> {
    if x.d() != g.d() {
        return Err(Error::DimensionMismatch(g.d(), x.d()));
    }
    g.check_gen(gen)?;
    let d = g.d();
    let this = LetterAction::new(g, gen)?;
    let mut out = CuntzElement::zero(d);
    match gen.kind {
        GenKind::K | GenKind::KInv => {
            for (w, c) in x.terms() {
                let mut coeff = c.clone();
                for l in w.letters() {
                    coeff *= &this.diagonal(l);
                }
                out.add_term(w.clone(), coeff);
            }
        }
        GenKind::E | GenKind::F => {
            // Delta^(n-1)(e) = sum_p 1..1 (x) e (x) k..k ; Delta^(n-1)(f) = sum_p k^-1..k^-1 (x) f (x) 1..1
            let (before, after) = if gen.kind == GenKind::E {
                (None, Some(LetterAction::new(g, UqGenerator::k(gen.index))?))
            } else {
                (Some(LetterAction::new(g, UqGenerator::k_inv(gen.index))?), None)
            };
            for (w, c) in x.terms() {
                let letters: Vec<Letter> = w.letters().collect();
                for p in 0..letters.len() {
                    let mut coeff = c.clone();
                    for (t, &l) in letters.iter().enumerate() {
                        let side = if t < p { &before } else if t > p { &after } else { continue };
                        if let Some(act) = side {
                            coeff *= &act.diagonal(l);
                        }
                    }
                    for (nl, nc) in this.apply(letters[p], d) {
                        let mut new_letters = letters.clone();
                        new_letters[p] = nl;
                        let nw = Word::from_letters(&new_letters).expect("shape preserved");
                        out.add_term(nw, &coeff * &nc);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `a o x` for a word `a = g_1 ... g_L`, applying `g_L` first.
pub fn act_word(g: &LieData, a: &UqWord, x: &CuntzElement) -> Result<CuntzElement> {
    let mut acc = x.clone();
    for &gen in a.factors.iter().rev() {
        acc = act_generator(g, gen, &acc)?;
    }
    Ok(acc)
}

/// True iff `gen o x = eps(gen) x` for every generator.
pub fn is_fixed(g: &LieData, x: &CuntzElement) -> Result<bool> {
    for gen in g.generators() {
        let lhs = act_generator(g, gen, x)?;
        let rhs = x.scale(&counit(gen));
        if !lhs.equals(&rhs) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuntz::Word;
    use crate::qscalar::q_number;

    fn sl(n: usize) -> LieData {
        LieData::sl(n).unwrap()
    }

    #[test]
    fn vector_rep_sl2() {
        let g = sl(2);
        let k = rep_vector(&g, UqGenerator::k(1)).unwrap();
        assert_eq!(k, Matrix::diagonal(vec![QScalar::q(), QScalar::q_pow(-1)]));
        assert_eq!(rep_vector(&g, UqGenerator::e(1)).unwrap(), Matrix::unit(2, 0, 1));
        for n in 2..=4 {
            let g = sl(n);
            for i in 1..n as u8 {
                let a = rep_vector(&g, UqGenerator::k(i)).unwrap();
                let b = rep_vector(&g, UqGenerator::k_inv(i)).unwrap();
                assert_eq!(a.mul(&b), Matrix::identity(n));
            }
        }
    }

    #[test]
    fn relations_depth_one_and_two() {
        assert!(rep_relations_check(&sl(2), 1).unwrap().all_pass());
        assert!(rep_relations_check(&sl(3), 1).unwrap().all_pass());
        assert!(rep_relations_check(&sl(2), 2).unwrap().all_pass());
    }

    #[test]
    fn serre_sl3_explicit() {
        let g = sl(3);
        let e1 = rep_vector(&g, UqGenerator::e(1)).unwrap();
        let e2 = rep_vector(&g, UqGenerator::e(2)).unwrap();
        let lhs = e1
            .mul(&e1)
            .mul(&e2)
            .sub(&e1.mul(&e2).mul(&e1).scale(&q_number(2)))
            .add(&e2.mul(&e1).mul(&e1));
        assert!(lhs.is_zero());
    }

    #[test]
    fn coproduct_and_counit() {
        let e = UqGenerator::e(1);
        assert_eq!(coproduct_apply(e), vec![(Some(e), Some(UqGenerator::k(1))), (None, Some(e))]);
        let f = UqGenerator::f(1);
        assert_eq!(coproduct_apply(f), vec![(Some(f), None), (Some(UqGenerator::k_inv(1)), Some(f))]);
        let k = UqGenerator::k(1);
        assert_eq!(coproduct_apply(k), vec![(Some(k), Some(k))]);
        assert!(counit(UqGenerator::k_inv(1)).is_one());
        assert!(counit(e).is_zero());
    }

    #[test]
    fn antipode_images() {
        let g = sl(2);
        let ge = antipode_rep(&g, UqGenerator::e(1)).unwrap();
        assert_eq!(ge, Matrix::unit(2, 0, 1).scale(&-QScalar::q()));
        assert_eq!(
            antipode_rep(&g, UqGenerator::k(1)).unwrap(),
            rep_vector(&g, UqGenerator::k_inv(1)).unwrap()
        );
    }

    #[test]
    fn action_examples() {
        let g = sl(2);
        let s1 = CuntzElement::s(2, 1).unwrap();
        let s1s = CuntzElement::s_star(2, 1).unwrap();
        let r = act_generator(&g, UqGenerator::k(1), &s1).unwrap();
        assert_eq!(r, s1.scale(&QScalar::q()));
        let r = act_generator(&g, UqGenerator::e(1), &s1s).unwrap();
        assert_eq!(r, CuntzElement::s_star(2, 2).unwrap().scale(&-QScalar::q()));
        let r = act_generator(&g, UqGenerator::e(1), &CuntzElement::one(2)).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn commutator_acts_as_q_number_quotient() {
        let g = sl(2);
        let s1 = CuntzElement::s(2, 1).unwrap();
        let ef = act_word(&g, &UqWord::new(vec![UqGenerator::e(1), UqGenerator::f(1)]), &s1).unwrap();
        let fe = act_word(&g, &UqWord::new(vec![UqGenerator::f(1), UqGenerator::e(1)]), &s1).unwrap();
        let k = act_generator(&g, UqGenerator::k(1), &s1).unwrap();
        let ki = act_generator(&g, UqGenerator::k_inv(1), &s1).unwrap();
        let qq = &QScalar::q() - &QScalar::q_pow(-1);
        let rhs = (&k - &ki).scale(&qq.inv().unwrap());
        assert_eq!(&ef - &fe, rhs);
        assert_eq!(rhs, s1);
    }

    #[test]
    fn fixed_points() {
        let g = sl(2);
        assert!(is_fixed(&g, &CuntzElement::one(2)).unwrap());
        assert!(!is_fixed(&g, &CuntzElement::s(2, 1).unwrap()).unwrap());
        let x = CuntzElement::from_word(2, Word::new(vec![1], vec![1]), QScalar::one());
        assert!(!is_fixed(&g, &x).unwrap());
    }

    #[test]
    fn dimension_mismatch() {
        let g = sl(2);
        let x = CuntzElement::s(3, 1).unwrap();
        assert!(matches!(
            act_generator(&g, UqGenerator::e(1), &x),
            Err(Error::DimensionMismatch(2, 3))
        ));
    }
}
