//! Rewrite system of the FRT bialgebra and PBW straightening.
//!
//! Generators `u_ij` are ordered row-major, which is the lexicographic order on
//! `(i, j)`. Every relation of `R U_1 U_2 = U_2 U_1 R` is solved for one
//! out-of-order adjacent pair; the resulting rule rewrites it as the swapped
//! pair plus terms of strictly larger off-diagonal weight `sum (i - j)^2`.
//! Rewriting therefore either raises the weight or lowers the inversion count,
//! so straightening terminates; local confluence is checked on all overlaps.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::braid::rmatrix;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::qscalar::QScalar;

/// A generator `u_ij` as `(i, j)`, 1-based.
pub type Gen = (u8, u8);
pub(crate) type Mono = Vec<Gen>;
pub(crate) type Lin = Vec<(Mono, QScalar)>;

pub(crate) fn weight(m: &[Gen]) -> u32 {
    m.iter().map(|&(i, j)| (i as i32 - j as i32).pow(2) as u32).sum()
}

pub(crate) fn accumulate(acc: &mut HashMap<Mono, QScalar>, m: Mono, c: QScalar) {
    if c.is_zero() {
        return;
    }
    match acc.entry(m) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

/// Result of resolving the degree-3 overlaps `u_a u_b u_c`, `a > b > c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub overlaps: usize,
    pub failures: Vec<(Gen, Gen, Gen)>,
}

impl ConfluenceReport {
    pub fn confluent(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The oriented FRT relations for one `d`, with straightening caches.
pub struct FrtSystem {
    pub(crate) d: usize,
    rules: HashMap<(Gen, Gen), Vec<(Gen, Gen, QScalar)>>,
    relations: Vec<Lin>,
    confluence: ConfluenceReport,
    mul_memo: Mutex<HashMap<(Mono, Gen), Arc<Lin>>>,
    pub(crate) red_memo: Mutex<HashMap<Mono, Arc<Lin>>>,
    pub(crate) qdet: OnceLock<Result<Lin>>,
    pub(crate) antipode: OnceLock<Result<Vec<Vec<super::QMatElement>>>>,
}

impl std::fmt::Debug for FrtSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FrtSystem")
            .field("d", &self.d)
            .field("rules", &self.rules.len())
            .field("confluence", &self.confluence)
            .finish()
    }
}

static SYSTEMS: OnceLock<Mutex<HashMap<usize, Arc<FrtSystem>>>> = OnceLock::new();

/// The cached, verified rewrite system for `d`.
pub fn frt_rules(d: usize) -> Result<Arc<FrtSystem>> {
    let map = SYSTEMS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = map.lock().expect("poisoned").get(&d) {
        return Ok(s.clone());
    }
    let sys = Arc::new(FrtSystem::build(d)?);
    if !sys.confluence.confluent() {
        return Err(Error::Convention(format!(
            "FRT rewrite system for d={d} is not locally confluent: {:?}",
            sys.confluence.failures
        )));
    }
    Ok(map.lock().expect("poisoned").entry(d).or_insert(sys).clone())
}

/// The scalar relations `sum R[(i,k),(a,b)] u_aj u_bl - sum u_kb u_ia R[(a,b),(j,l)]`
/// for an arbitrary arity-2 matrix, as raw (unsorted) linear combinations.
pub(crate) fn rtt_relations(d: usize, r: &Matrix) -> Vec<Lin> {
    let idx = |a: usize, b: usize| a * d + b;
    let mut out = Vec::new();
    for i in 0..d {
        for k in 0..d {
            for j in 0..d {
                for l in 0..d {
                    let mut acc: HashMap<Mono, QScalar> = HashMap::new();
                    for a in 0..d {
                        for b in 0..d {
                            let left = r.get(idx(i, k), idx(a, b));
                            if !left.is_zero() {
                                let m = vec![(a as u8 + 1, j as u8 + 1), (b as u8 + 1, l as u8 + 1)];
                                accumulate(&mut acc, m, left.clone());
                            }
                            let right = r.get(idx(a, b), idx(j, l));
                            if !right.is_zero() {
                                let m = vec![(k as u8 + 1, b as u8 + 1), (i as u8 + 1, a as u8 + 1)];
                                accumulate(&mut acc, m, -right);
                            }
                        }
                    }
                    if !acc.is_empty() {
                        let mut lin: Lin = acc.into_iter().collect();
                        lin.sort_by(|a, b| a.0.cmp(&b.0));
                        out.push(lin);
                    }
                }
            }
        }
    }
    out
}

impl FrtSystem {
    fn build(d: usize) -> Result<Self> {
        let r = rmatrix(d)?;
        let relations = rtt_relations(d, r.matrix());
        let gens: Vec<Gen> = (1..=d as u8).flat_map(|i| (1..=d as u8).map(move |j| (i, j))).collect();
        // Columns: out-of-order pairs first so that they become pivots.
        let mut cols: Vec<(Gen, Gen)> = Vec::new();
        for &x in &gens {
            for &y in &gens {
                if x > y {
                    cols.push((x, y));
                }
            }
        }
        let n_bad = cols.len();
        for &x in &gens {
            for &y in &gens {
                if x <= y {
                    cols.push((x, y));
                }
            }
        }
        let col_of: HashMap<(Gen, Gen), usize> = cols.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let rows: Vec<Vec<QScalar>> = relations
            .iter()
            .map(|rel| {
                let mut row = vec![QScalar::zero(); cols.len()];
                for (m, c) in rel {
                    row[col_of[&(m[0], m[1])]] = c.clone();
                }
                row
            })
            .collect();
        let (rr, pivots) = Matrix::from_rows(rows).rref();
        if pivots.len() != n_bad || pivots.iter().any(|&p| p >= n_bad) {
            return Err(Error::Convention(format!(
                "FRT relations have rank {} with pivots outside the out-of-order pairs (expected {n_bad})",
                pivots.len()
            )));
        }
        let mut rules = HashMap::new();
        for (row, &p) in pivots.iter().enumerate() {
            let (x, y) = cols[p];
            let mut rhs = Vec::new();
            for (c, &(a, b)) in cols.iter().enumerate().skip(n_bad) {
                let v = rr.get(row, c);
                if !v.is_zero() {
                    rhs.push((a, b, -v));
                }
            }
            let base = weight(&[x, y]);
            let swapped = rhs.iter().any(|&(a, b, _)| (a, b) == (y, x));
            let ordered = rhs
                .iter()
                .all(|&(a, b, _)| (a, b) == (y, x) || weight(&[a, b]) > base);
            if !swapped || !ordered {
                return Err(Error::Convention(format!(
                    "rule for u{}{} u{}{} is not weight-increasing",
                    x.0, x.1, y.0, y.1
                )));
            }
            rules.insert((x, y), rhs);
        }
        let mut sys = FrtSystem {
            d,
            rules,
            relations,
            confluence: ConfluenceReport { overlaps: 0, failures: vec![] },
            mul_memo: Mutex::new(HashMap::new()),
            red_memo: Mutex::new(HashMap::new()),
            qdet: OnceLock::new(),
            antipode: OnceLock::new(),
        };
        sys.confluence = sys.check_confluence(&gens);
        Ok(sys)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Rules `u_x u_y -> sum c u_a u_b`, sorted by left side.
    pub fn rules(&self) -> Vec<((Gen, Gen), Vec<(Gen, Gen, QScalar)>)> {
        let mut v: Vec<_> = self.rules.iter().map(|(k, r)| (*k, r.clone())).collect();
        v.sort_by_key(|r| r.0);
        v
    }

    pub fn rule(&self, x: Gen, y: Gen) -> Option<&[(Gen, Gen, QScalar)]> {
        self.rules.get(&(x, y)).map(Vec::as_slice)
    }

    /// The nonzero scalar relations read off `R U_1 U_2 = U_2 U_1 R`.
    pub fn relation_elements(&self) -> &[Lin] {
        &self.relations
    }

    pub fn confluence(&self) -> &ConfluenceReport {
        &self.confluence
    }

    /// Reduces a linear combination by always rewriting the leftmost
    /// out-of-order pair; independent of the memoized straightening.
    fn reduce_leftmost(&self, start: Lin) -> BTreeMap<Mono, QScalar> {
        let mut done: BTreeMap<Mono, QScalar> = BTreeMap::new();
        let mut work = start;
        while let Some((m, c)) = work.pop() {
            match m.windows(2).position(|w| w[0] > w[1]) {
                None => {
                    let e = done.entry(m).or_insert_with(QScalar::zero);
                    *e += &c;
                }
                Some(p) => {
                    for (a, b, rc) in &self.rules[&(m[p], m[p + 1])] {
                        let mut nm = m.clone();
                        nm[p] = *a;
                        nm[p + 1] = *b;
                        work.push((nm, &c * rc));
                    }
                }
            }
        }
        done.retain(|_, c| !c.is_zero());
        done
    }

    fn check_confluence(&self, gens: &[Gen]) -> ConfluenceReport {
        let mut overlaps = 0;
        let mut failures = Vec::new();
        for &a in gens {
            for &b in gens.iter().filter(|&&b| b < a) {
                for &c in gens.iter().filter(|&&c| c < b) {
                    overlaps += 1;
                    let left: Lin = self.rules[&(a, b)]
                        .iter()
                        .map(|(x, y, k)| (vec![*x, *y, c], k.clone()))
                        .collect();
                    let right: Lin = self.rules[&(b, c)]
                        .iter()
                        .map(|(x, y, k)| (vec![a, *x, *y], k.clone()))
                        .collect();
                    if self.reduce_leftmost(left) != self.reduce_leftmost(right) {
                        failures.push((a, b, c));
                    }
                }
            }
        }
        ConfluenceReport { overlaps, failures }
    }

    /// Normal form of `m * u_g` for a sorted monomial `m`.
    pub(crate) fn mul_gen(&self, m: &[Gen], g: Gen) -> Arc<Lin> {
        match m.last() {
            None => return Arc::new(vec![(vec![g], QScalar::one())]),
            Some(&h) if h <= g => {
                let mut v = m.to_vec();
                v.push(g);
                return Arc::new(vec![(v, QScalar::one())]);
            }
            _ => {}
        }
        let key = (m.to_vec(), g);
        if let Some(hit) = self.mul_memo.lock().expect("poisoned").get(&key) {
            return hit.clone();
        }
        let (head, &h) = (&m[..m.len() - 1], m.last().expect("nonempty"));
        let mut acc: HashMap<Mono, QScalar> = HashMap::new();
        for (a, b, c) in &self.rules[&(h, g)] {
            for (s1, c1) in self.mul_gen(head, *a).iter() {
                let c01 = c * c1;
                for (s2, c2) in self.mul_gen(s1, *b).iter() {
                    accumulate(&mut acc, s2.clone(), &c01 * c2);
                }
            }
        }
        let out = Arc::new(acc.into_iter().collect::<Lin>());
        self.mul_memo.lock().expect("poisoned").insert(key, out.clone());
        out
    }

    /// Normal form of `m * rest` for a sorted `m` and an arbitrary word `rest`.
    pub(crate) fn mul_mono(&self, m: &[Gen], rest: &[Gen]) -> HashMap<Mono, QScalar> {
        let mut cur: HashMap<Mono, QScalar> = HashMap::new();
        cur.insert(m.to_vec(), QScalar::one());
        for &g in rest {
            let mut next = HashMap::new();
            for (s, c) in cur {
                for (s2, c2) in self.mul_gen(&s, g).iter() {
                    accumulate(&mut next, s2.clone(), &c * c2);
                }
            }
            cur = next;
        }
        cur
    }

    /// Normal form of an arbitrary word in the generators.
    pub(crate) fn straighten(&self, word: &[Gen]) -> HashMap<Mono, QScalar> {
        self.mul_mono(&[], word)
    }

    /// Product of two normal-form combinations.
    pub(crate) fn mul_lin<'a>(
        &self,
        x: impl IntoIterator<Item = (&'a Mono, &'a QScalar)>,
        y: &[(Mono, QScalar)],
    ) -> HashMap<Mono, QScalar> {
        let mut acc = HashMap::new();
        for (m1, c1) in x {
            for (m2, c2) in y {
                let c12 = c1 * c2;
                for (m, c) in self.mul_mono(m1, m2) {
                    accumulate(&mut acc, m, &c12 * &c);
                }
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d2_rules() {
        let s = frt_rules(2).unwrap();
        assert_eq!(s.rules().len(), 6);
        let q = QScalar::q();
        // u12 u11 = q^-1 u11 u12 or q u11 u12: a single q-power
        let r = s.rule((1, 2), (1, 1)).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].0, (1, 1));
        assert!(r[0].2.is_single_term());
        // u21 u12 commute
        assert_eq!(s.rule((2, 1), (1, 2)).unwrap(), &[((1, 2), (2, 1), QScalar::one())]);
        // u22 u11 = u11 u22 + (q^-1 - q) u12 u21 or similar
        let r = s.rule((2, 2), (1, 1)).unwrap();
        assert_eq!(r.len(), 2);
        let _ = q;
    }

    #[test]
    fn confluent_d2_d3() {
        assert!(frt_rules(2).unwrap().confluence().confluent());
        let s3 = frt_rules(3).unwrap();
        assert!(s3.confluence().confluent());
        assert_eq!(s3.confluence().overlaps, 84);
    }

    #[test]
    fn straighten_is_associative_on_small_words() {
        let s = frt_rules(2).unwrap();
        let w = [(2, 2), (2, 1), (1, 2), (1, 1)];
        let whole = s.straighten(&w);
        let left: Lin = s.straighten(&w[..2]).into_iter().collect();
        let right: Lin = s.straighten(&w[2..]).into_iter().collect();
        let prod = s.mul_lin(left.iter().map(|(m, c)| (m, c)), &right);
        assert_eq!(whole, prod);
    }
}
