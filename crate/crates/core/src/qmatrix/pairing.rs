//! Duality between the quantum-matrix algebra and `U_q(sl_n)` words, the
//! coaction-derived action, and the `L^(+-)` functionals.

use std::collections::{BTreeMap, HashMap};

use super::coact::coact;
use super::frt::{frt_rules, Gen, Lin};
use super::{sl::qdet, QMatElement};
use crate::braid::{flip, rmatrix};
use crate::cuntz::CuntzElement;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::qscalar::QScalar;
use crate::uq::{rep_vector, GenKind, LieData, UqGenerator, UqWord};

type RowVec = HashMap<Vec<u8>, QScalar>;

/// `v * (pi^{(x)r} Delta^{(r-1)})(gen)` for a sparse row vector over multi-indices.
fn apply_gen(g: &LieData, v: &RowVec, gen: UqGenerator) -> Result<RowVec> {
    let p = rep_vector(g, gen)?;
    let mut out: RowVec = HashMap::new();
    let mut push = |k: Vec<u8>, c: QScalar| {
        if c.is_zero() {
            return;
        }
        let e = out.entry(k).or_insert_with(QScalar::zero);
        *e += &c;
    };
    let diag = |m: &Matrix, idx: &[u8]| -> QScalar {
        idx.iter().fold(QScalar::one(), |acc, &i| &acc * m.get(i as usize - 1, i as usize - 1))
    };
    match gen.kind {
        GenKind::K | GenKind::KInv => {
            for (idx, c) in v {
                push(idx.clone(), c * &diag(&p, idx));
            }
        }
        GenKind::E | GenKind::F => {
            // Delta^(r-1)(e) = sum_p 1..1 e k..k ; Delta^(r-1)(f) = sum_p k^-1..k^-1 f 1..1
            let (before, after) = if gen.kind == GenKind::E {
                (None, Some(rep_vector(g, UqGenerator::k(gen.index))?))
            } else {
                (Some(rep_vector(g, UqGenerator::k_inv(gen.index))?), None)
            };
            let (from, to) = if gen.kind == GenKind::E {
                (gen.index, gen.index + 1)
            } else {
                (gen.index + 1, gen.index)
            };
            for (idx, c) in v {
                for pos in 0..idx.len() {
                    if idx[pos] != from {
                        continue;
                    }
                    let mut coeff = c.clone();
                    if let Some(m) = &before {
                        coeff = &coeff * &diag(m, &idx[..pos]);
                    }
                    if let Some(m) = &after {
                        coeff = &coeff * &diag(m, &idx[pos + 1..]);
                    }
                    let mut nidx = idx.clone();
                    nidx[pos] = to;
                    push(nidx, coeff);
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// `<u_{a1 b1} ... u_{ar br}, a>` for any (not necessarily sorted) word.
pub fn pairing_monomial(d: usize, m: &[Gen], a: &UqWord) -> Result<QScalar> {
    let g = LieData::sl(d)?;
    let rows: Vec<u8> = m.iter().map(|x| x.0).collect();
    let cols: Vec<u8> = m.iter().map(|x| x.1).collect();
    let mut v: RowVec = HashMap::from([(rows, QScalar::one())]);
    for &gen in a.factors() {
        v = apply_gen(&g, &v, gen)?;
        if v.is_empty() {
            return Ok(QScalar::zero());
        }
    }
    Ok(v.remove(&cols).unwrap_or_else(QScalar::zero))
}

fn pairing_lin(d: usize, x: &[(Vec<Gen>, QScalar)], a: &UqWord) -> Result<QScalar> {
    let mut acc = QScalar::zero();
    for (m, c) in x {
        acc += &(c * &pairing_monomial(d, m, a)?);
    }
    Ok(acc)
}

/// `<x, a>`, linear in `x`; the unit pairs as `eps(a)`.
pub fn pairing(x: &QMatElement, a: &UqWord) -> Result<QScalar> {
    pairing_lin(x.d(), &x.to_lin(), a)
}

/// Outcome of pairing relation elements against generator words.
#[derive(Clone, Debug, Default)]
pub struct WellDefinedReport {
    pub relations: usize,
    pub words: usize,
    /// `(relation, word)` descriptions of nonzero pairings.
    pub failures: Vec<String>,
}

impl WellDefinedReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Raw words, not straightened: printed term by term.
fn lin_to_string(l: &Lin) -> String {
    l.iter()
        .map(|(m, c)| {
            let w: Vec<String> = m.iter().map(|(i, j)| format!("u{i}{j}")).collect();
            format!("({c}) {}", if w.is_empty() { "1".into() } else { w.join(" ") })
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Every FRT relation element and `det_q - 1` pairs to zero against all
/// words of length at most `max_len`.
pub fn pairing_welldefined(d: usize, max_len: usize) -> Result<WellDefinedReport> {
    let g = LieData::sl(d)?;
    let sys = frt_rules(d)?;
    let mut rels: Vec<Lin> = sys.relation_elements().to_vec();
    let mut det = qdet(d)?.to_lin();
    det.push((vec![], QScalar::from_int(-1)));
    rels.push(det);
    let words = g.words_up_to(max_len);
    let mut report = WellDefinedReport { relations: rels.len(), words: words.len(), failures: vec![] };
    for rel in &rels {
        for a in &words {
            let v = pairing_lin(d, rel, a)?;
            if !v.is_zero() {
                report.failures.push(format!("<{}, {a}> = {v}", lin_to_string(rel)));
            }
        }
    }
    Ok(report)
}

/// Falsifiability control: in every FRT relation, shifting the coefficient of
/// a monomial that is itself visible to words of length at most `max_len`
/// must make the relation pair nonzero. Monomials invisible at that length
/// (e.g. `u13 u31` against words of length 2) cannot be probed and are skipped.
pub fn perturbed_relation_detected(d: usize, max_len: usize) -> Result<bool> {
    let g = LieData::sl(d)?;
    let sys = frt_rules(d)?;
    let words = g.words_up_to(max_len);
    let mut probed = 0usize;
    for rel in sys.relation_elements() {
        let mut target = None;
        'terms: for (k, (m, _)) in rel.iter().enumerate() {
            for a in &words {
                if !pairing_monomial(d, m, a)?.is_zero() {
                    target = Some(k);
                    break 'terms;
                }
            }
        }
        let Some(k) = target else { continue };
        probed += 1;
        let mut bad = rel.clone();
        bad[k].1 = &bad[k].1 + &QScalar::q();
        let mut hit = false;
        for a in &words {
            if !pairing_lin(d, &bad, a)?.is_zero() {
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(probed > 0)
}

/// `a o x` recovered from the coaction: `sum x_(1) <x_(2), a>`.
pub fn dual_act(a: &UqWord, x: &CuntzElement) -> Result<CuntzElement> {
    Ok(dual_act_many(std::slice::from_ref(a), x)?.pop().expect("one word in, one result out"))
}

/// `dual_act` for several words, sharing one coaction computation.
pub fn dual_act_many(words: &[UqWord], x: &CuntzElement) -> Result<Vec<CuntzElement>> {
    let d = x.d();
    let legs = coact(x)?.by_word();
    words
        .iter()
        .map(|a| {
            let mut out = CuntzElement::zero(d);
            for (w, leg) in &legs {
                let c = pairing(leg, a)?;
                if !c.is_zero() {
                    out.add_term(w.clone(), c);
                }
            }
            Ok(out)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LSign {
    Plus,
    Minus,
}

/// `R^(+) = P R P` or `R^(-) = R^{-1}`, as a `d^2 x d^2` matrix.
fn r_sign(d: usize, s: LSign) -> Result<Matrix> {
    let r = rmatrix(d)?;
    match s {
        LSign::Plus => {
            let p = flip(d);
            Ok(p.matrix().mul(r.matrix()).mul(p.matrix()))
        }
        LSign::Minus => r
            .matrix()
            .inverse()
            .ok_or_else(|| Error::Convention("R-matrix is singular".into())),
    }
}

/// `<l^(+-)_ij, u_{a1 b1} ... u_{ar br}> = (M_1 ... M_r)_ij` with
/// `M_k[x, y] = R^(+-)[(x, a_k), (y, b_k)]`; degree 0 gives `delta_ij`.
pub fn pair_l(d: usize, sign: LSign, i: u8, j: u8, m: &[Gen]) -> Result<QScalar> {
    let r = r_sign(d, sign)?;
    Ok(pair_l_with(d, &r, i, j, m))
}

fn pair_l_with(d: usize, r: &Matrix, i: u8, j: u8, m: &[Gen]) -> QScalar {
    let mut v: Vec<QScalar> = (0..d).map(|x| if x + 1 == i as usize { QScalar::one() } else { QScalar::zero() }).collect();
    for &(a, b) in m {
        let (a, b) = (a as usize - 1, b as usize - 1);
        let mut next = vec![QScalar::zero(); d];
        for (x, vx) in v.iter().enumerate() {
            if vx.is_zero() {
                continue;
            }
            for (y, slot) in next.iter_mut().enumerate() {
                let e = r.get(x * d + a, y * d + b);
                if !e.is_zero() {
                    *slot += &(vx * e);
                }
            }
        }
        v = next;
    }
    v[j as usize - 1].clone()
}

/// `<l_1 l_2 ... l_n, m>` through the coproduct `Delta_0(u_ij) = sum_k u_ik (x) u_kj`.
pub fn pair_l_product(d: usize, factors: &[(LSign, u8, u8)], m: &[Gen]) -> Result<QScalar> {
    let mats: BTreeMap<LSign, Matrix> = [LSign::Plus, LSign::Minus]
        .into_iter()
        .map(|s| r_sign(d, s).map(|r| (s, r)))
        .collect::<Result<_>>()?;
    Ok(pair_product_with(d, &mats, factors, m))
}

impl PartialOrd for LSign {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LSign {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (*self as u8).cmp(&(*other as u8))
    }
}

fn pair_product_with(d: usize, mats: &BTreeMap<LSign, Matrix>, factors: &[(LSign, u8, u8)], m: &[Gen]) -> QScalar {
    let Some((&(s, i, j), rest)) = factors.split_first() else {
        // the empty product is the counit
        return if m.iter().all(|(a, b)| a == b) { QScalar::one() } else { QScalar::zero() };
    };
    if rest.is_empty() {
        return pair_l_with(d, &mats[&s], i, j, m);
    }
    let r = m.len();
    let mut acc = QScalar::zero();
    let total = d.pow(r as u32);
    for flat in 0..total {
        let mut c = vec![0u8; r];
        let mut f = flat;
        for slot in c.iter_mut().rev() {
            *slot = (f % d) as u8 + 1;
            f /= d;
        }
        let left: Vec<Gen> = m.iter().zip(&c).map(|(&(a, _), &ck)| (a, ck)).collect();
        let lv = pair_l_with(d, &mats[&s], i, j, &left);
        if lv.is_zero() {
            continue;
        }
        let right: Vec<Gen> = m.iter().zip(&c).map(|(&(_, b), &ck)| (ck, b)).collect();
        acc += &(&lv * &pair_product_with(d, mats, rest, &right));
    }
    acc
}

/// Outcome of the RLL relations paired against all monomials of bounded degree.
#[derive(Clone, Debug)]
pub struct RllReport {
    /// `(variant label, holds)`.
    pub variants: Vec<(String, bool)>,
    /// `L^(+-)` annihilate every FRT relation element.
    pub annihilates_relations: bool,
    /// The `L^(+)L^(+)` relation with a perturbed `R^(+)` is rejected.
    pub control_rejected: bool,
}

impl RllReport {
    pub fn pass(&self) -> bool {
        self.variants.iter().all(|v| v.1) && self.annihilates_relations && self.control_rejected
    }
}

fn all_words(d: usize, max_deg: usize) -> Vec<Vec<Gen>> {
    let gens: Vec<Gen> = (1..=d as u8).flat_map(|i| (1..=d as u8).map(move |j| (i, j))).collect();
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_deg {
        let mut next = Vec::new();
        for w in &layer {
            for &g in &gens {
                let mut w2: Vec<Gen> = w.clone();
                w2.push(g);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Checks `R L_1 L_2 = L_2 L_1 R` entrywise:
/// `sum R[(i,k),(a,b)] l_aj l'_bl = sum l'_kb l_ia R[(a,b),(j,l)]`.
fn rll_holds(d: usize, r: &Matrix, s1: LSign, s2: LSign, mats: &BTreeMap<LSign, Matrix>, words: &[Vec<Gen>]) -> bool {
    let idx = |a: usize, b: usize| a * d + b;
    for m in words {
        for i in 0..d {
            for k in 0..d {
                for j in 0..d {
                    for l in 0..d {
                        let mut lhs = QScalar::zero();
                        let mut rhs = QScalar::zero();
                        for a in 0..d {
                            for b in 0..d {
                                let x = r.get(idx(i, k), idx(a, b));
                                if !x.is_zero() {
                                    let f = [(s1, a as u8 + 1, j as u8 + 1), (s2, b as u8 + 1, l as u8 + 1)];
                                    lhs += &(x * &pair_product_with(d, mats, &f, m));
                                }
                                let y = r.get(idx(a, b), idx(j, l));
                                if !y.is_zero() {
                                    let f = [(s2, k as u8 + 1, b as u8 + 1), (s1, i as u8 + 1, a as u8 + 1)];
                                    rhs += &(&pair_product_with(d, mats, &f, m) * y);
                                }
                            }
                        }
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// RLL relations with `R^(+)` for `L^(+)L^(+)`, `L^(-)L^(-)` and the mixed
/// `L^(+)L^(-)` ordering, paired against all monomials of degree `<= max_deg`.
pub fn rll_check(d: usize, max_deg: usize) -> Result<RllReport> {
    let mats: BTreeMap<LSign, Matrix> = [LSign::Plus, LSign::Minus]
        .into_iter()
        .map(|s| r_sign(d, s).map(|r| (s, r)))
        .collect::<Result<_>>()?;
    let rp = mats[&LSign::Plus].clone();
    let words = all_words(d, max_deg);
    let variants = vec![
        ("R+ L+1 L+2 = L+2 L+1 R+".to_string(), rll_holds(d, &rp, LSign::Plus, LSign::Plus, &mats, &words)),
        ("R+ L-1 L-2 = L-2 L-1 R+".to_string(), rll_holds(d, &rp, LSign::Minus, LSign::Minus, &mats, &words)),
        ("R+ L+1 L-2 = L-2 L+1 R+".to_string(), rll_holds(d, &rp, LSign::Plus, LSign::Minus, &mats, &words)),
    ];
    let mut bad = rp.clone();
    let v = bad.get(1, 1) + &QScalar::q();
    bad.set(1, 1, v);
    let control_rejected = !rll_holds(d, &bad, LSign::Plus, LSign::Plus, &mats, &words);
    let sys = frt_rules(d)?;
    let mut annihilates = true;
    for rel in sys.relation_elements() {
        for s in [LSign::Plus, LSign::Minus] {
            for i in 1..=d as u8 {
                for j in 1..=d as u8 {
                    let mut v = QScalar::zero();
                    for (m, c) in rel {
                        v += &(c * &pair_l_with(d, &mats[&s], i, j, m));
                    }
                    annihilates &= v.is_zero();
                }
            }
        }
    }
    Ok(RllReport { variants, annihilates_relations: annihilates, control_rejected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_uq_word;
    use crate::uq::{act_word, rep_word};

    #[test]
    fn generator_pairing_is_rep() {
        let g = LieData::sl(2).unwrap();
        for gen in g.generators() {
            let a = UqWord::new(vec![gen]);
            let p = rep_word(&g, &a).unwrap();
            for i in 1..=2u8 {
                for j in 1..=2u8 {
                    assert_eq!(&pairing_monomial(2, &[(i, j)], &a).unwrap(), p.get(i as usize - 1, j as usize - 1));
                }
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let g = LieData::sl(2).unwrap();
        let k1 = parse_uq_word("k1", &g).unwrap();
        assert!(pairing_monomial(2, &[(1, 1), (2, 2)], &k1).unwrap().is_one());
        let e1 = parse_uq_word("e1", &g).unwrap();
        assert!(pairing(&QMatElement::one(2), &e1).unwrap().is_zero());
        assert!(pairing(&QMatElement::one(2), &k1).unwrap().is_one());
    }

    #[test]
    fn welldefined_d2() {
        let r = pairing_welldefined(2, 3).unwrap();
        assert!(r.pass(), "{:?}", r.failures);
        assert!(perturbed_relation_detected(2, 2).unwrap());
    }

    #[test]
    fn qdet_pairs_as_counit() {
        let g = LieData::sl(2).unwrap();
        let det = qdet(2).unwrap();
        for a in g.words_up_to(3) {
            assert_eq!(pairing(&det, &a).unwrap(), a.counit(), "{a}");
        }
    }

    #[test]
    fn dual_action_matches() {
        let g = LieData::sl(2).unwrap();
        let s1 = CuntzElement::s(2, 1).unwrap();
        for a in g.words_up_to(2) {
            assert_eq!(dual_act(&a, &s1).unwrap(), act_word(&g, &a, &s1).unwrap(), "{a}");
        }
        let x = crate::parse::parse_element("s1 s2* + q s2 s1 s1*", 2).unwrap();
        for a in g.words_up_to(2) {
            assert_eq!(dual_act(&a, &x).unwrap(), act_word(&g, &a, &x).unwrap(), "{a}");
        }
    }

    #[test]
    fn l_functionals() {
        assert!(pair_l(2, LSign::Plus, 1, 1, &[]).unwrap().is_one());
        assert!(pair_l(2, LSign::Minus, 1, 2, &[]).unwrap().is_zero());
        let rep = rll_check(2, 2).unwrap();
        assert!(rep.pass(), "{rep:?}");
    }
}
